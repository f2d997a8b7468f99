#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "symplat/matrix.hpp"
#include "symplat/schwartz.hpp"

// Local building blocks at a fixed prime: the level indicator function on 2x2
// matrix coordinates, its partial Fourier transform, the Siegel-Weil integral
// into the degenerate principal series, the distinguished induced section and
// the identities tying them together, plus Whittaker torus values and the
// factored local zeta integral.

namespace symplat::padic {

// Indicator of (Z_p, Z_p; N Z_p, Z_p) in coordinates (m11, m12, m21, m22).
// Only ord_p(N) matters.
Schwartz level_indicator(const Int& p, const Int& N);

// Output coordinates (z1, w1, z2, w2): the top matrix row (x, y) is integrated
// against psi(x*w1 - y*z1), the bottom row passes through as (z2, w2).
FourierSpec matrix_polarization_spec();

// |det g|^{-1} * integral of phi(g^{-1} (x y; 0 0)) dx dy over Q_p^2 for a
// 4-coordinate phi; exact. Throws std::domain_error when g is singular.
Cyclotomic siegel_weil_section(const Schwartz& phi, const QMat& g);

// The normalized induced section at s supported on B(Q_p) K_1(N)_p with
// value 1 at the identity, evaluated through an explicit Iwasawa
// decomposition. K_1(N)_p is the usual congruence subgroup of GL_2(Z_p)
// with c = 0 and d = 1 modulo p^{ord_p N}.
class InducedSection {
  public:
    InducedSection(Int p, Int n);

    const Int& prime() const { return p_; }
    const Int& level() const { return n_; }
    int depth() const { return v_; }  // ord_p of the level

    bool in_support(const QMat& g) const;
    // Section value at s; the modulus character exponent must come out
    // integral (it always does at the default s = 1/2).
    Rat value(const QMat& g, const Rat& s = Rat(1, 2)) const;

  private:
    Int p_, n_;
    int v_;
};

struct SwProbe {
    int i;  // probe matrix [[1,0],[p^i,1]]
    Rat lhs, rhs;
};

struct SwReport {
    Int p, n;
    std::vector<SwProbe> probes;
    std::size_t translate_checks = 0;
    std::size_t invariance_checks = 0;
    bool identity_holds = false;
    bool right_invariant = false;

    bool passed() const { return identity_holds && right_invariant; }
    std::string describe() const;
};

// Compares the Siegel-Weil image of the level-indicator difference with the
// induced section on unipotent probes and random Borel translates, and
// samples right-invariance of the left side under K_1(N)_p.
SwReport verify_sw_identity(const Int& p, const Int& n, std::uint64_t seed = 1,
                            std::size_t samples = 20);

struct IntertwiningReport {
    Rat closed_form;     // value of the full integral
    Rat truncated_sum;   // finitely many valuation shells, each measured exactly
    Rat tail;            // exact geometric remainder past the last shell
    Rat w_term;          // section value at the Weyl reflection (0 in the ramified case)
    int shells;
    bool consistent;     // truncated + tail == closed form and w_term == 0
};

// The intertwining integral of the induced section at the identity, computed
// shell by shell over Q_p minus Z_p. Requires p | n.
IntertwiningReport intertwining_value(const Int& p, const Int& n, int shells = 24);

struct WhittakerNewform {
    Int p;
    int conductor;  // at least 1, so the L-factor is linear in p^{-s}
};

// coeff * p^{-half_p/2} * alpha^alpha_pow, with the square root kept formal.
struct WhittakerValue {
    Rat coeff;
    int half_p = 0;
    int alpha_pow = 0;

    bool is_zero() const { return coeff == 0; }
    std::complex<double> numeric(double p, std::complex<double> alpha) const;
    std::string to_string() const;
};

// Torus value of the normalized Whittaker newvector at diag(t, 1).
WhittakerValue whittaker_value(const WhittakerNewform& w, const Rat& t);

// The factored local zeta integral 1 / (1 - a1*a2*p^{-2}) of two conductor >= 1
// newvectors; the numerator is the constant 1, so it never vanishes where
// defined.
struct ZetaFactor {
    Int p;

    Rat evaluate(const Rat& a1, const Rat& a2) const;  // pole at a1*a2 = p^2
    std::complex<double> evaluate_numeric(std::complex<double> a1,
                                          std::complex<double> a2) const;
    std::complex<double> truncated(std::complex<double> a1, std::complex<double> a2,
                                   int terms) const;
    std::string formula() const;
};

ZetaFactor zeta_factor(const WhittakerNewform& w1, const WhittakerNewform& w2);

struct TranslateSupport {
    Cyclotomic value;   // transformed level indicator at the translated probe vector
    bool in_support;
    bool k0_condition;  // integral entries with c = 0 modulo p^{ord_p n}
    bool k1_condition;  // k0 plus d = 1 modulo p^{ord_p n}
};

// Evaluates the geometric translate of the transformed level indicator at the
// probe vector e1 (x) (0 0; 1 0) + e2 (x) (0 0; 0 -1) and reports how the
// support compares against the two congruence conditions on h1.
TranslateSupport weil_translate_support(const Int& p, const Int& n, const QMat& h1);

}  // namespace symplat::padic
