#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace symplat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// floor(a/b) for b != 0, rounding toward -infinity (cpp_int division truncates).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

// Largest x with x^2 <= q; requires q >= 0.
inline Int floor_sqrt(const Rat& q) {
    if (q < 0) throw std::domain_error("floor_sqrt: negative argument");
    Int x = boost::multiprecision::sqrt(numerator(q) / denominator(q));
    while (Rat(x + 1) * (x + 1) <= q) ++x;
    while (Rat(x) * x > q) --x;
    return x;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline std::string to_string(const Int& v) { return v.str(); }
inline std::string to_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& v) { return v.convert_to<double>(); }

}  // namespace symplat
