#pragma once

#include <string>
#include <vector>

#include "symplat/matrix.hpp"
#include "symplat/snf.hpp"

namespace symplat::lattice {

// Integral lattice given by a symmetric nondegenerate Gram matrix.
class GramLattice {
  public:
    GramLattice(IMat gram, std::vector<std::string> labels = {});

    std::size_t rank() const { return gram_.rows(); }
    const IMat& gram() const { return gram_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Int det() const { return det_; }
    bool is_even() const;

    // Pairing of two coordinate vectors (rational coordinates allowed, for dual vectors).
    Rat pair(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
    Rat norm(const std::vector<Rat>& x) const { return pair(x, x); }

  private:
    IMat gram_;
    std::vector<std::string> labels_;
    Int det_;
};

struct SymplecticForm {
    std::size_t dim;  // 2g
    IMat j;           // [[0, I], [-I, 0]]
};

SymplecticForm standard_symplectic(std::size_t g);

struct DiscriminantGroup {
    std::vector<Int> invariant_factors;           // the factors > 1, ascending divisibility
    std::vector<std::vector<Rat>> generators;     // dual vectors, one per factor
    Int order;                                    // product of the factors
    std::string describe() const;                 // e.g. "(Z/3)^8" or "(Z/1)^0 (trivial)"
};

// Tensor product of two hyperbolic symplectic modules of ranks 2 and 2g, with the
// product pairing gamma(v (x) v', w (x) w') = omega(v,w) * omega'(v',w').
// Basis order: e(x)e'_1..e(x)e'_g, e(x)f'_1..e(x)f'_g, f(x)e'_1.., f(x)f'_1..
GramLattice tensor_symplectic(std::size_t g);

std::pair<int, int> signature(const GramLattice& lat);

GramLattice rescale(const GramLattice& lat, const Int& n);

DiscriminantGroup discriminant_group(const GramLattice& lat);

// Least N >= 1 such that N * gram^-1 has integer off-diagonal and even diagonal entries.
Int lattice_level(const GramLattice& lat);

// All cosets of the dual modulo the lattice, coordinates reduced to [0,1),
// ordered lexicographically by the exponent tuple over the invariant factors.
// Throws std::domain_error when |det| exceeds max_order.
std::vector<std::vector<Rat>> coset_representatives(const GramLattice& lat,
                                                    const Int& max_order = Int(1) << 20);

// Structured-document round trip: { "rank": n, "gram": [[...]], "labels": [...] }.
std::string to_document(const GramLattice& lat);
GramLattice from_document(const std::string& text);
GramLattice load_file(const std::string& path);
void save_file(const GramLattice& lat, const std::string& path);

}  // namespace symplat::lattice
