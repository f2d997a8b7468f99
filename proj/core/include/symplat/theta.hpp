#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symplat/lattice.hpp"

// Positive-definite lattice point enumeration and the theta sums built on it.
// Enumeration is exact (rational arithmetic throughout); floating point only
// enters when a sum is evaluated numerically, and then with a certified
// Gaussian tail bound.

namespace symplat::theta {

struct ShortVectorList {
    // norm -> all coset vectors of that norm, in enumeration order
    std::map<Rat, std::vector<std::vector<Rat>>> by_norm;

    std::size_t total_count() const;
};

// Complete list of x in coset + Z^n with x^T gram x <= maxnorm.
// Throws std::domain_error when the form is not positive definite and
// std::runtime_error when the node budget is exhausted.
ShortVectorList short_vectors(const lattice::GramLattice& lat, const std::vector<Rat>& coset,
                              const Rat& maxnorm, std::size_t budget = 8000000);

struct QSeries {
    Int denom = 1;           // exponents are numerator / denom
    Rat prec = 0;            // exponents strictly below this bound are stored
    std::map<Int, Int> coeffs;

    Int coefficient(const Rat& exponent) const;  // zero when absent
    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;
};

// Coefficients of sum_{x in coset+L} q^{(x,x)/2} up to exponent prec. The
// denominator is the least common denominator of the exponents that occur.
QSeries theta_coset(const lattice::GramLattice& lat, const std::vector<Rat>& coset,
                    const Rat& prec, std::size_t budget = 8000000);

// sum_{x in coset+L} exp(pi i tau (x,x)) with the tail certified below
// tail_target via a volume bound on the shell counts.
std::complex<double> theta_numeric(const lattice::GramLattice& lat,
                                   const std::vector<Rat>& coset, std::complex<double> tau,
                                   double tail_target = 1e-12);

// Absolute mismatch of the two sides of the dual summation identity
//   sum_{x in L} e^{-pi t (x,x)} = covol^{-1} t^{-r/2} sum_{y in dual} e^{-pi (y,y)/t}
double poisson_check(const lattice::GramLattice& lat, double t);

// Root lattice Gram of rank 8, even unimodular.
lattice::GramLattice e8_lattice();

}  // namespace symplat::theta
