// Level divisor criterion: the curated divisor table, the modular-curve genus
// rule for large primes, and the exhaustive range verification.

#include <doctest.h>

#include <set>
#include <stdexcept>

#include "symplat/star.hpp"

using namespace symplat;

TEST_CASE("modular curve genus values") {
    CHECK(star::genus_x0(2) == 0);
    CHECK(star::genus_x0(3) == 0);
    CHECK(star::genus_x0(5) == 0);
    CHECK(star::genus_x0(7) == 0);
    CHECK(star::genus_x0(13) == 0);
    CHECK(star::genus_x0(11) == 1);
    CHECK(star::genus_x0(17) == 1);
    CHECK(star::genus_x0(19) == 1);
    CHECK(star::genus_x0(23) == 2);
    CHECK(star::genus_x0(37) == 2);
    CHECK(star::genus_x0(97) == 7);
    CHECK_THROWS_AS(star::genus_x0(12), std::invalid_argument);
    CHECK_THROWS_AS(star::genus_x0(1), std::invalid_argument);
}

TEST_CASE("the divisor table lists exactly the genus-zero levels") {
    std::set<long long> table;
    for (const auto& row : star::builtin_table()) {
        CHECK(!row.f1_label.empty());
        CHECK(!row.f2_label.empty());
        table.insert(row.n0);
    }
    std::set<long long> expected{13, 14, 15, 16, 18, 20, 21, 24, 25, 27, 35, 49};
    CHECK(table == expected);
}

TEST_CASE("single level verdicts") {
    auto v26 = star::satisfies_star(26);
    CHECK(v26.satisfied);
    CHECK(v26.witness == 13);
    CHECK(v26.rule == star::StarRule::table_row);
    CHECK(v26.describe() == "N=26: witness 13 (table row)");

    auto v11 = star::satisfies_star(11);
    CHECK(v11.satisfied);
    CHECK(v11.witness == 11);
    CHECK(v11.rule == star::StarRule::prime_rule);

    auto v12 = star::satisfies_star(12);
    CHECK(!v12.satisfied);
    CHECK(v12.rule == star::StarRule::none);

    // 2^10: no table divisor beyond 16, and no qualifying prime... except 16
    auto v1024 = star::satisfies_star(1024);
    CHECK(v1024.satisfied);
    CHECK(v1024.witness == 16);

    // a prime above the table range uses the genus rule directly
    auto v101 = star::satisfies_star(101);
    CHECK(v101.satisfied);
    CHECK(v101.witness == 101);
    CHECK(v101.rule == star::StarRule::prime_rule);

    // products of small non-qualifying primes need a table divisor
    auto v30 = star::satisfies_star(30);
    CHECK(v30.satisfied);
    CHECK(v30.witness == 15);

    CHECK_THROWS_AS(star::satisfies_star(0), std::invalid_argument);
}

TEST_CASE("table rows beat the prime rule in witness priority") {
    // 13 * 17: both 13 (table) and 17 (prime rule) qualify; the table wins
    auto v = star::satisfies_star(221);
    CHECK(v.satisfied);
    CHECK(v.witness == 13);
    CHECK(v.rule == star::StarRule::table_row);
}

TEST_CASE("range verification is clean and worker-independent") {
    auto seq = star::verify_theorem_range(5000, 1);
    CHECK(seq.empty());
    auto par = star::verify_theorem_range(5000, 4);
    CHECK(par == seq);
    CHECK_THROWS_AS(star::verify_theorem_range(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(star::verify_theorem_range(100, 0), std::invalid_argument);
}

TEST_CASE("levels below thirteen split as expected") {
    for (long long n = 1; n <= 12; ++n) {
        auto v = star::satisfies_star(n);
        CHECK(v.satisfied == (n == 11));
    }
}
