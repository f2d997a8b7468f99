#pragma once

#include <string>
#include <vector>

// Divisor criterion for levels: a level N qualifies when some divisor carries
// a weight-4/weight-2 newform pair with matching central character, witnessed
// either by a built-in table row or by a prime whose modular curve has
// positive genus.

namespace symplat::star {

struct NewformRecord {
    long long n0;
    std::string f1_label;
    std::string f2_label;
    std::string nebentype_label;
};

// The twelve built-in rows, in the source order (sorted by prime
// factorization of n0). Labels are opaque provenance strings.
const std::vector<NewformRecord>& builtin_table();

// Genus of the modular curve X_0(p) for prime p, by the index / elliptic
// point / cusp count formula. Throws std::invalid_argument unless p is prime.
long long genus_x0(long long p);

enum class StarRule { none, table_row, prime_rule };

struct StarVerdict {
    long long n = 0;
    bool satisfied = false;
    long long witness = 0;  // divides n when satisfied
    StarRule rule = StarRule::none;

    std::string describe() const;
};

// Searches the divisors of n for a witness: table rows in ascending n0 order
// first, then the smallest prime divisor q with q = 11 or q >= 17. Prime
// witnesses are cross-checked against genus_x0(q) >= 1. Throws
// std::invalid_argument for n < 1.
StarVerdict satisfies_star(long long n);

// Checks that every n in {11} and [13, n_max] is satisfied and that no n in
// {1..10, 12} is. Returns the offending levels (empty on success). The
// interval is sharded across worker threads. Throws std::invalid_argument
// for n_max < 13 or workers < 1.
std::vector<long long> verify_theorem_range(long long n_max, int workers = 1);

}  // namespace symplat::star
