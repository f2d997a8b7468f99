#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symplat/isogeny.hpp"

// Breadth-first evidence for the two-sided group action on isogeny matrices.
// States are matrices with entries confined to a window [-w, w]; moves are the
// generator set from action_generators. Searches are depth-limited, so every
// produced statement ("these two matrices lie in one class") comes with an
// explicit word of generator indices that has been replayed and checked in
// exact arithmetic.

namespace symplat::orbits {

// Applies word entries (indices into gens) left to right.
IMat apply_word(std::size_t g, const std::vector<isogeny::GroupMove>& gens, const IMat& start,
                const std::vector<std::size_t>& word);

// BFS from `from` toward `to` over the level-n generators, exploring only
// matrices with entries in [-window, window], at most `depth` moves deep.
// Returns the move word on success, nullopt when the target was not reached.
std::optional<std::vector<std::size_t>> connect(std::size_t g, const Int& n, const IMat& from,
                                                const IMat& to, int64_t window, int depth);

struct CensusClass {
    IMat rep;         // lexicographically least member
    std::size_t size = 0;
    IMat congruence;  // rep's homology residue mod n
};

struct CensusReport {
    std::size_t g = 0;
    Int d;
    Int n;
    Int height_bound;
    int bfs_depth = 0;
    std::vector<CensusClass> classes;
    std::size_t certified_merges = 0;  // every merge replayed from its group word
    std::size_t max_word = 0;

    nlohmann::ordered_json to_json() const;
};

// Partitions the enumerated matrices of the given degree and height into
// classes connected by level-n moves. Each enumerated matrix floods a ball of
// radius bfs_depth inside a slightly slackened window (height_bound + 2);
// classes merge when a flood reaches an enumerated matrix or territory claimed
// by an earlier flood, so certificates can reach twice the per-flood depth.
// The class count is an upper bound for the number of orbits met by the
// height window, never claimed exact.
CensusReport orbit_census(std::size_t g, const Int& d, const Int& n, const Int& height_bound,
                          int bfs_depth, int workers = 1);

struct ReductionEvidence {
    std::size_t matrices = 0;   // enumerated matrices examined
    std::size_t classes = 0;    // distinct canonical representatives seen
    std::size_t certified = 0;  // matrices joined to their representative by a replayed word
    std::size_t max_word = 0;
    bool divisor_ok = true;     // every divisor pair satisfied d1 | d2 and d1*d2 = d

    bool complete() const { return divisor_ok && certified == matrices; }
};

// For every enumerated matrix of degree d and the given height, reduces it,
// checks the divisor pair, and certifies with a level-1 BFS word that the
// matrix reaches its canonical representative. The search window starts at
// the largest entry involved and widens twice before giving up.
ReductionEvidence reduction_evidence(std::size_t g, const Int& d, const Int& height,
                                     int depth = 14);

}  // namespace symplat::orbits
