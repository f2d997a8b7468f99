#include "symplat/star.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace symplat::star {

namespace {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Legendre-symbol counts of elliptic points on X_0(p).
long long nu2(long long p) {
    if (p == 2) return 1;
    return p % 4 == 1 ? 2 : 0;
}

long long nu3(long long p) {
    if (p == 3) return 1;
    return p % 3 == 1 ? 2 : 0;
}

}  // namespace

const std::vector<NewformRecord>& builtin_table() {
    static const std::vector<NewformRecord> rows = {
        {16, "16.4.e.a", "16.2.e.a", "16.e"},
        {27, "27.4.a.a", "27.2.a.a", "triv"},
        {25, "25.4.d.a", "25.2.d.a", "25.d"},
        {49, "49.4.a.a", "49.2.a.a", "triv"},
        {13, "13.4.e.a", "13.2.e.a", "13.e"},
        {24, "24.4.a.a", "24.2.a.a", "triv"},
        {18, "18.4.c.a", "18.2.c.a", "18.c"},
        {20, "20.4.a.a", "20.2.a.a", "triv"},
        {14, "14.4.a.a", "14.2.a.a", "triv"},
        {15, "15.4.a.a", "15.2.a.a", "triv"},
        {21, "21.4.a.a", "21.2.a.a", "triv"},
        {35, "35.4.a.a", "35.2.a.a", "triv"},
    };
    return rows;
}

long long genus_x0(long long p) {
    if (!is_prime(p)) throw std::invalid_argument("genus_x0: level must be prime");
    // g = 1 + mu/12 - nu2/4 - nu3/3 - cusps/2 with mu = p + 1 and two cusps.
    // Scaled by 12 to stay in integers: the numerator is always divisible.
    long long twelve_g = 12 + (p + 1) - 3 * nu2(p) - 4 * nu3(p) - 12;
    return twelve_g / 12;
}

std::string StarVerdict::describe() const {
    std::ostringstream os;
    os << "N=" << n << ": ";
    if (!satisfied) {
        os << "no qualifying divisor";
        return os.str();
    }
    os << "witness " << witness;
    os << (rule == StarRule::table_row ? " (table row)" : " (prime rule)");
    return os.str();
}

StarVerdict satisfies_star(long long n) {
    if (n < 1) throw std::invalid_argument("satisfies_star: level must be positive");
    StarVerdict v;
    v.n = n;

    static const std::vector<long long> ascending = [] {
        std::vector<long long> a;
        for (const auto& row : builtin_table()) a.push_back(row.n0);
        std::sort(a.begin(), a.end());
        return a;
    }();
    for (long long n0 : ascending)
        if (n % n0 == 0) {
            v.satisfied = true;
            v.witness = n0;
            v.rule = StarRule::table_row;
            return v;
        }

    // Smallest prime divisor admitted by the prime rule. Trial division
    // yields prime divisors in increasing order.
    long long rest = n;
    for (long long q = 2; q * q <= rest; ++q) {
        if (rest % q != 0) continue;
        if (q == 11 || q >= 17) {
            if (genus_x0(q) < 1)
                throw std::logic_error("prime rule and genus computation disagree");
            v.satisfied = true;
            v.witness = q;
            v.rule = StarRule::prime_rule;
            return v;
        }
        while (rest % q == 0) rest /= q;
    }
    if (rest > 1 && (rest == 11 || rest >= 17)) {
        if (genus_x0(rest) < 1)
            throw std::logic_error("prime rule and genus computation disagree");
        v.satisfied = true;
        v.witness = rest;
        v.rule = StarRule::prime_rule;
        return v;
    }
    return v;
}

std::vector<long long> verify_theorem_range(long long n_max, int workers) {
    if (n_max < 13) throw std::invalid_argument("verify_theorem_range: n_max must be at least 13");
    if (workers < 1) throw std::invalid_argument("verify_theorem_range: need at least one worker");

    std::vector<long long> failures;
    for (long long n = 1; n <= 12; ++n) {
        bool expect = (n == 11);
        if (satisfies_star(n).satisfied != expect) failures.push_back(n);
    }

    std::size_t shard_count = static_cast<std::size_t>(workers);
    std::vector<std::vector<long long>> found(shard_count);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < shard_count; ++w) {
        pool.emplace_back([&, w] {
            for (long long n = 13 + static_cast<long long>(w); n <= n_max;
                 n += static_cast<long long>(shard_count))
                if (!satisfies_star(n).satisfied) found[w].push_back(n);
        });
    }
    for (auto& t : pool) t.join();

    for (auto& shard : found) failures.insert(failures.end(), shard.begin(), shard.end());
    std::sort(failures.begin(), failures.end());
    return failures;
}

}  // namespace symplat::star
