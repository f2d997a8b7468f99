#include "symplat/cyclotomic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace symplat::padic {

namespace {

std::size_t phi_pk(const Int& p, int k) {
    if (k == 0) return 1;
    Int v = (p - 1) * boost::multiprecision::pow(p, static_cast<unsigned>(k - 1));
    return v.convert_to<std::size_t>();
}

std::size_t pk(const Int& p, int k) {
    return boost::multiprecision::pow(p, static_cast<unsigned>(k)).convert_to<std::size_t>();
}

}  // namespace

int ord(const Int& p, const Int& n) {
    if (p < 2) throw std::invalid_argument("ord: p must be at least 2");
    if (n == 0) return kOrdInfinity;
    int v = 0;
    Int m = n;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int ord(const Int& p, const Rat& x) {
    if (x == 0) return kOrdInfinity;
    return ord(p, numerator(x)) - ord(p, denominator(x));
}

Rat p_power(const Int& p, int e) {
    if (e >= 0) return Rat(boost::multiprecision::pow(p, static_cast<unsigned>(e)));
    return Rat(1, boost::multiprecision::pow(p, static_cast<unsigned>(-e)));
}

Cyclotomic Cyclotomic::psi(const Int& p, const Rat& r) {
    if (p < 2) throw std::invalid_argument("psi: p must be at least 2");
    Rat frac = r - Rat(floor_div(numerator(r), denominator(r)));
    Int den = denominator(frac);
    int k = ord(p, den);
    if (p_power(p, k) != Rat(den))
        throw std::invalid_argument("psi: argument denominator is not a power of p");
    if (k == 0) return Cyclotomic(p, Rat(1));
    std::vector<Rat> full(pk(p, k), Rat(0));
    full[numerator(frac).convert_to<std::size_t>()] = 1;
    return from_full_range(p, k, std::move(full));
}

Cyclotomic Cyclotomic::from_full_range(const Int& p, int k, std::vector<Rat> full) {
    const std::size_t phi = phi_pk(p, k);
    const std::size_t step = pk(p, k - 1);
    const std::size_t pp = p.convert_to<std::size_t>();
    for (std::size_t e = full.size(); e-- > phi;) {
        if (full[e] == 0) continue;
        Rat c = full[e];
        full[e] = 0;
        for (std::size_t j = 0; j + 1 < pp; ++j) full[e - phi + j * step] -= c;
    }
    full.resize(phi);
    Cyclotomic out(p, k, std::move(full));
    out.compress();
    return out;
}

void Cyclotomic::compress() {
    while (k_ > 0) {
        const std::size_t pp = p_.convert_to<std::size_t>();
        bool collapsible = true;
        for (std::size_t e = 0; e < c_.size(); ++e)
            if (e % pp != 0 && c_[e] != 0) {
                collapsible = false;
                break;
            }
        if (!collapsible) return;
        std::vector<Rat> down(phi_pk(p_, k_ - 1), Rat(0));
        for (std::size_t e = 0; e < c_.size(); e += pp) down[e / pp] = c_[e];
        c_ = std::move(down);
        --k_;
    }
}

bool Cyclotomic::is_zero() const {
    for (const Rat& c : c_)
        if (c != 0) return false;
    return true;
}

Rat Cyclotomic::rational_value() const {
    if (k_ != 0) throw std::domain_error("cyclotomic value is not rational");
    return c_[0];
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (Rat& c : out.c_) c = -c;
    return out;
}

namespace {

// Common prime for a binary operation; rational scalars carry no commitment.
Int unify_prime(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.prime() == 0) return b.prime();
    if (b.prime() == 0 || a.prime() == b.prime()) return a.prime();
    if (a.is_rational() || b.is_rational()) return a.is_rational() ? b.prime() : a.prime();
    throw std::invalid_argument("cyclotomic: operands belong to different primes");
}

}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    Int p = unify_prime(*this, o);
    int k = std::max(k_, o.k_);
    std::vector<Rat> sum(phi_pk(p, k), Rat(0));
    const std::size_t lift_a = (p == 0) ? 1 : pk(p, k - k_);
    const std::size_t lift_b = (p == 0) ? 1 : pk(p, k - o.k_);
    for (std::size_t e = 0; e < c_.size(); ++e) sum[e * lift_a] += c_[e];
    for (std::size_t e = 0; e < o.c_.size(); ++e) sum[e * lift_b] += o.c_[e];
    Cyclotomic out(p, k, std::move(sum));
    out.compress();
    return out;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    Int p = unify_prime(*this, o);
    if (k_ == 0) return o * c_[0];
    if (o.k_ == 0) return *this * o.c_[0];
    int k = std::max(k_, o.k_);
    const std::size_t n = pk(p, k);
    const std::size_t lift_a = pk(p, k - k_);
    const std::size_t lift_b = pk(p, k - o.k_);
    std::vector<Rat> full(n, Rat(0));
    for (std::size_t a = 0; a < c_.size(); ++a) {
        if (c_[a] == 0) continue;
        for (std::size_t b = 0; b < o.c_.size(); ++b) {
            if (o.c_[b] == 0) continue;
            full[(a * lift_a + b * lift_b) % n] += c_[a] * o.c_[b];
        }
    }
    return from_full_range(p, k, std::move(full));
}

Cyclotomic Cyclotomic::operator*(const Rat& s) const {
    if (s == 0) return Cyclotomic(p_, Rat(0));
    Cyclotomic out = *this;
    for (Rat& c : out.c_) c *= s;
    return out;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (k_ == 0 && o.k_ == 0) return c_[0] == o.c_[0];
    if (k_ != o.k_ || p_ != o.p_) return false;
    return c_ == o.c_;
}

std::complex<double> Cyclotomic::to_complex() const {
    if (k_ == 0) return {to_double(c_[0]), 0.0};
    const double order = to_double(Int(boost::multiprecision::pow(p_, static_cast<unsigned>(k_))));
    std::complex<double> sum = 0.0;
    for (std::size_t e = 0; e < c_.size(); ++e) {
        if (c_[e] == 0) continue;
        double arg = 2.0 * M_PI * static_cast<double>(e) / order;
        sum += to_double(c_[e]) * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return sum;
}

std::string Cyclotomic::to_string() const {
    if (k_ == 0) return symplat::to_string(c_[0]);
    std::ostringstream os;
    const std::string root = "zeta(" + symplat::to_string(Int(boost::multiprecision::pow(
                                           p_, static_cast<unsigned>(k_)))) +
                             ")";
    bool first = true;
    for (std::size_t e = 0; e < c_.size(); ++e) {
        if (c_[e] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << symplat::to_string(c_[e]);
        if (e == 1) os << "*" << root;
        if (e > 1) os << "*" << root << "^" << e;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace symplat::padic
