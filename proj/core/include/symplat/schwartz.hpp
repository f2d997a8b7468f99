#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symplat/cyclotomic.hpp"
#include "symplat/matrix.hpp"
#include "symplat/numeric.hpp"

// Locally constant compactly supported functions on Q_p^n, stored as finite
// combinations of coordinate boxes (products of cosets center + p^depth Z_p)
// with cyclotomic coefficients. All arithmetic is exact.

namespace symplat::padic {

struct Coord {
    Rat center;  // reduced modulo p^depth
    int depth;   // coset is center + p^depth Z_p; negative depths allowed
};

class Box {
  public:
    Box(Int p, std::vector<Coord> coords);

    const Int& prime() const { return p_; }
    std::size_t dim() const { return c_.size(); }
    const Coord& coord(std::size_t i) const { return c_[i]; }

    bool contains(const std::vector<Rat>& point) const;
    Rat volume() const;  // p^{-sum of depths} under the Haar measure with vol(Z_p) = 1

    bool operator==(const Box& o) const;
    bool operator<(const Box& o) const;  // lexicographic, for canonical ordering

    std::string describe() const;

    // Reduces c modulo p^depth Z_p to the canonical representative.
    static Rat reduce_center(const Int& p, const Rat& c, int depth);

  private:
    Int p_;
    std::vector<Coord> c_;
};

class Schwartz {
  public:
    struct Term {
        Cyclotomic coeff;
        Box box;
    };

    Schwartz(Int p, std::size_t dim);
    static Schwartz indicator(const Box& b);

    const Int& prime() const { return p_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Term>& terms() const { return terms_; }

    void add_term(const Cyclotomic& coeff, const Box& box);

    Schwartz operator+(const Schwartz& o) const;
    Schwartz operator-(const Schwartz& o) const;
    Schwartz scaled(const Cyclotomic& c) const;
    Schwartz scaled(const Rat& c) const;

    Cyclotomic evaluate(const std::vector<Rat>& point) const;
    Cyclotomic integral() const;
    Schwartz reflected() const;  // x -> -x

    // Rewrites the sum so the boxes are pairwise disjoint (common refinement
    // per coordinate), merging duplicates and dropping zero terms.
    Schwartz& normalize(std::size_t term_budget = 1 << 20);

    // Exact equality as functions.
    bool same_function(const Schwartz& o) const;

  private:
    Int p_;
    std::size_t dim_;
    std::vector<Term> terms_;
};

// One output coordinate of a partial Fourier transform: either a source
// coordinate passed through untouched, or the dual of an integrated source
// coordinate, paired by psi(sign * x_source * y_output).
struct FourierAxis {
    std::size_t source;
    bool dual;
    int sign;  // +1 or -1, used when dual
};
using FourierSpec = std::vector<FourierAxis>;

// Spec with every coordinate transformed, psi(+x*y) pairing, order preserved.
FourierSpec full_fourier_spec(std::size_t dim);

// Exact partial Fourier transform with self-dual Haar measure: each
// integrated coordinate 1_{c+p^k Z_p} becomes p^{-k} psi(sign*c*y) 1_{p^{-k} Z_p}(y),
// with the character factor expanded into sub-boxes where it is non-constant.
// Every source coordinate must appear exactly once in the spec.
Schwartz fourier_transform(const Schwartz& phi, const FourierSpec& spec);

// Similitude rescaling phi -> |nu|_p^{-mn/2} phi(action^{-1} x) for a monomial
// (single nonzero entry per row and column) action matrix; 2m and 2n are the
// dimensions of the two paired spaces, and mn must be even so the factor is
// rational. Throws std::domain_error otherwise.
Schwartz weil_scaling(const Schwartz& phi, const QMat& action, const Rat& nu, int m, int n);

}  // namespace symplat::padic
