#pragma once

#include <complex>
#include <string>
#include <vector>

#include "symplat/numeric.hpp"

// Exact scalars in the group algebra of p-power roots of unity over the
// rationals. Values are kept in the canonical power basis zeta^e,
// 0 <= e < phi(p^k), with the cyclotomic relation folded in eagerly and the
// level k minimal, so equality is coefficient comparison.

namespace symplat::padic {

// Exponent of p in a nonzero integer or rational; ord of zero is +infinity,
// reported as this sentinel.
inline constexpr int kOrdInfinity = 1 << 28;

int ord(const Int& p, const Int& n);
int ord(const Int& p, const Rat& x);

// p^e as an exact rational, e of either sign.
Rat p_power(const Int& p, int e);

class Cyclotomic {
  public:
    Cyclotomic() : p_(0), k_(0), c_{Rat(0)} {}
    explicit Cyclotomic(const Int& p, const Rat& value = Rat(0)) : p_(p), k_(0), c_{value} {}

    // e^{2 pi i r}; r must have a p-power denominator.
    static Cyclotomic psi(const Int& p, const Rat& r);

    const Int& prime() const { return p_; }
    int level() const { return k_; }

    bool is_zero() const;
    bool is_rational() const { return k_ == 0; }
    Rat rational_value() const;  // throws std::domain_error when irrational

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rat& s) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    std::complex<double> to_complex() const;
    std::string to_string() const;

  private:
    Int p_;               // 0 until a genuine root of unity appears
    int k_;               // level: scalar lives in Q(zeta_{p^k})
    std::vector<Rat> c_;  // coefficients on zeta^e, e in [0, phi(p^k)); size 1 at level 0

    Cyclotomic(Int p, int k, std::vector<Rat> c) : p_(std::move(p)), k_(k), c_(std::move(c)) {}
    static Cyclotomic from_full_range(const Int& p, int k, std::vector<Rat> full);
    void compress();
};

}  // namespace symplat::padic
