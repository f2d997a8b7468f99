#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symplat/lattice.hpp"
#include "symplat/matrix.hpp"

namespace symplat::isogeny {

// Integer 2g x 2 matrix B with B^T J_{2g} B = d J_2 for a positive degree d.
class IsogenyMatrix {
  public:
    IsogenyMatrix(std::size_t g, IMat entries);

    std::size_t genus() const { return g_; }
    const IMat& entries() const { return m_; }
    const Int& degree() const { return degree_; }

    bool operator==(const IsogenyMatrix& o) const { return g_ == o.g_ && m_ == o.m_; }

  private:
    std::size_t g_;
    IMat m_;
    Int degree_;
};

// Degree of an arbitrary 2g x 2 matrix: the (1,2) entry of B^T J B (may be <= 0).
Int raw_degree(std::size_t g, const IMat& m);

// Column convention swap: the homology matrix is B * J_2, and back.
IMat to_homology(const IsogenyMatrix& b);
IsogenyMatrix from_homology(std::size_t g, const IMat& h);

// Coordinates of the associated vector in the rank-4g tensor lattice
// (basis order of lattice::tensor_symplectic). Its norm is 2 * degree.
std::vector<Int> tensor_vector(const IsogenyMatrix& b);
IsogenyMatrix matrix_of_vector(std::size_t g, const std::vector<Int>& v);

// Congruence datum: the residue of B * J_2 mod N, entries reduced into [0, N).
IMat congruence_class(const IsogenyMatrix& b, const Int& n);
bool congruence_check(const IsogenyMatrix& b, const Int& n, const IMat& residue);

// Residue-matrix level datum. The residue is an arbitrary 2g x 2 matrix mod n;
// scaled_symplectic_check reports whether it satisfies b^T J b == d J_2 (mod n),
// which is advisory and never enforced.
struct LevelDatum {
    Int n;
    IMat residue;
    bool scaled_symplectic_check(std::size_t g, const Int& d) const;
};

// All B with max |entry| <= height and degree d, ordered lexicographically by
// the column-major entry tuple (first column, then second).
std::vector<IsogenyMatrix> enumerate(std::size_t g, const Int& d, const Int& height,
                                     const std::optional<LevelDatum>& filter = std::nullopt,
                                     int workers = 1);

// One generator of the two-sided action: B -> m * B (left, symplectic side) or
// B -> B * m (right, SL_2 side).
struct GroupMove {
    bool left;
    IMat m;
    std::string name;
};

// Standard generator set for the action at level n (n = 1: full groups;
// n > 1: principal congruence subgroups on both sides).
std::vector<GroupMove> action_generators(std::size_t g, const Int& n);

IsogenyMatrix apply_move(const IsogenyMatrix& b, const GroupMove& mv);

// Reduction of B under the level-1 two-sided action to a canonical representative.
//
// The column lattice of B has elementary divisors d1 | d2 inside its saturation,
// and the saturated rank-2 plane carries the restricted symplectic form with
// content `pair_divisor`; d1 * d2 * pair_divisor = degree. When pair_divisor == 1
// the representative is (d1 e_1 | d2 e_{g+1}). Otherwise no representative with
// two standard-basis columns exists (the pair divisor is an invariant of the
// action), and the representative is (d1 e_1 | d2 (h0 e_2 + pair_divisor e_{g+1}))
// with gcd(h0, pair_divisor) = 1, 1 <= h0 <= pair_divisor / 2.
struct ReduceResult {
    Int d1, d2;
    Int pair_divisor;
    Int unit_residue;  // h0 above; 0 when pair_divisor == 1
    IMat rep;
    IMat gamma;  // in SL_2(Z)
    IMat delta;  // in Sp_2g(Z); delta * B * gamma == rep
    // Divisor pair (a, b) with a | b and a * b = degree: a = d1, b = degree / d1.
    std::pair<Int, Int> divisor_pair() const;
};

ReduceResult symplectic_reduce(const IsogenyMatrix& b);

bool is_symplectic(std::size_t g, const IMat& m);

}  // namespace symplat::isogeny
