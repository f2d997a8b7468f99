#include "symplat/theta.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "symplat/matrix.hpp"
#include "symplat/numeric.hpp"

namespace symplat::theta {

namespace {

// Unit upper-triangular factorization gram = C^T D C with positive pivots,
// so the form evaluates as sum_i d_i (z_i + sum_{j>i} c_ij z_j)^2.
struct Ldl {
    std::vector<Rat> d;
    QMat c;
};

Ldl ldl_decompose(QMat a) {
    const std::size_t n = a.rows();
    Ldl out{std::vector<Rat>(n), QMat::identity(n)};
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) <= 0) throw std::domain_error("lattice form is not positive definite");
        out.d[i] = a(i, i);
        for (std::size_t j = i + 1; j < n; ++j) out.c(i, j) = a(i, j) / a(i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) a(j, k) -= out.c(i, j) * a(i, k);
    }
    return out;
}

// Largest integer m with m + off <= 0 or (m + off)^2 <= r2. The predicate is
// monotone, so a double estimate plus exact fix-up lands on the boundary; the
// caller re-checks norms exactly, so only the superset property matters here.
Int range_top(const Rat& off, const Rat& r2) {
    double est = std::sqrt(std::max(0.0, to_double(r2))) - to_double(off);
    if (!(std::abs(est) < 4.0e15))
        throw std::runtime_error("short_vectors: coordinate range overflow");
    auto ok = [&](const Int& m) {
        Rat v = Rat(m) + off;
        return v <= 0 || v * v <= r2;
    };
    Int m = static_cast<long long>(std::floor(est));
    while (ok(m + 1)) ++m;
    while (!ok(m)) --m;
    return m;
}

struct Enumerator {
    const Ldl& f;
    const std::vector<Rat>& coset;
    Rat maxnorm;
    std::size_t budget;
    std::size_t visited = 0;
    std::vector<Rat> z;
    std::function<void(const std::vector<Rat>&, const Rat&)> emit;

    Enumerator(const Ldl& f_, const std::vector<Rat>& coset_, Rat maxnorm_, std::size_t budget_)
        : f(f_), coset(coset_), maxnorm(std::move(maxnorm_)), budget(budget_),
          z(coset_.size()) {}

    // Chooses coordinate `level` with all higher coordinates of z fixed;
    // `used` is the exact norm contribution of those levels.
    void descend(std::size_t level, const Rat& used) {
        const std::size_t i = level - 1;
        Rat t = 0;
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (f.c(i, j) != 0) t += f.c(i, j) * z[j];
        const Rat off = coset[i] + t;
        const Rat rem = maxnorm - used;
        const Int hi = range_top(off, rem / f.d[i]);
        const Int lo = -range_top(-off, rem / f.d[i]);
        for (Int m = lo; m <= hi; ++m) {
            if (++visited > budget)
                throw std::runtime_error("short_vectors: enumeration budget exceeded");
            Rat v = Rat(m) + off;
            Rat q = f.d[i] * v * v;
            if (q > rem) continue;
            z[i] = Rat(m) + coset[i];
            if (i == 0)
                emit(z, used + q);
            else
                descend(i, used + q);
        }
    }
};

void enumerate_form(const QMat& gram, const std::vector<Rat>& coset, const Rat& maxnorm,
                    std::size_t budget,
                    const std::function<void(const std::vector<Rat>&, const Rat&)>& emit) {
    if (coset.size() != gram.rows())
        throw std::invalid_argument("short_vectors: coset length does not match rank");
    if (maxnorm < 0) return;
    if (gram.rows() == 0) {
        emit({}, 0);
        return;
    }
    Ldl f = ldl_decompose(gram);
    Enumerator e(f, coset, maxnorm, budget);
    e.emit = emit;
    e.descend(gram.rows(), 0);
}

// Counting geometry of a positive form: Voronoi cells have volume covol and
// sit inside covering-radius balls, so at most ball_vol(sqrt(v)+mu)/covol
// points of any lattice translate have norm <= v. The covering radius is
// bounded by the nearest-plane estimate mu^2 <= (sum of pivots)/4.
struct TailShape {
    double covol;
    double mu;
    std::size_t r;
};

TailShape tail_shape(const Ldl& f) {
    double det = 1.0, pivot_sum = 0.0;
    for (const Rat& d : f.d) {
        det *= to_double(d);
        pivot_sum += to_double(d);
    }
    return {std::sqrt(det), 0.5 * std::sqrt(pivot_sum), f.d.size()};
}

// Upper bound on sum over x in coset+Z^r with x^T G x >= cut of e^{-pi s x^T G x}.
double gaussian_tail(double cut, const TailShape& shape, double s) {
    const double rr = static_cast<double>(shape.r);
    const double ball = std::pow(M_PI, rr / 2.0) / std::tgamma(rr / 2.0 + 1.0);
    double tail = 0.0;
    for (int j = 0; j < 200000; ++j) {
        double u = cut + j;
        double count = ball * std::pow(std::sqrt(u + 1.0) + shape.mu, rr) / shape.covol;
        double term = count * std::exp(-M_PI * s * u);
        tail += term;
        double rho = std::exp(-M_PI * s) *
                     std::pow((std::sqrt(u + 2.0) + shape.mu) / (std::sqrt(u + 1.0) + shape.mu), rr);
        if (rho < 1.0 && term * rho / (1.0 - rho) < tail * 1e-6 + 1e-300) {
            tail += term * rho / (1.0 - rho);
            return tail;
        }
    }
    return HUGE_VAL;
}

// Smallest norm cutoff on a coarse grid whose certified tail drops below target.
Int certified_cutoff(const TailShape& shape, double s, double target) {
    if (!(s > 0)) throw std::domain_error("theta: evaluation point has no convergent sum");
    for (Int m = 4; m <= 65536; m += (std::max)(Int(2), Int(m / 4)))
        if (gaussian_tail(to_double(m), shape, s) < target) return m;
    throw std::runtime_error("theta: tail bound not achievable within cutoff budget");
}

}  // namespace

std::size_t ShortVectorList::total_count() const {
    std::size_t n = 0;
    for (const auto& [norm, vecs] : by_norm) n += vecs.size();
    return n;
}

ShortVectorList short_vectors(const lattice::GramLattice& lat, const std::vector<Rat>& coset,
                              const Rat& maxnorm, std::size_t budget) {
    ShortVectorList out;
    enumerate_form(to_rational(lat.gram()), coset, maxnorm, budget,
                   [&](const std::vector<Rat>& x, const Rat& n) { out.by_norm[n].push_back(x); });
    return out;
}

Int QSeries::coefficient(const Rat& exponent) const {
    Rat scaled = exponent * denom;
    if (denominator(scaled) != 1) return 0;
    auto it = coeffs.find(numerator(scaled));
    return it == coeffs.end() ? Int(0) : it->second;
}

nlohmann::ordered_json QSeries::to_json() const {
    nlohmann::ordered_json j;
    j["denom"] = denom.convert_to<std::int64_t>();
    j["prec"] = to_string(prec);
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [num, coeff] : coeffs) c[to_string(num)] = coeff.convert_to<std::int64_t>();
    j["coeffs"] = c;
    return j;
}

std::string QSeries::to_csv() const {
    std::ostringstream os;
    os << "exponent,coefficient\n" << std::setprecision(17);
    for (const auto& [num, coeff] : coeffs)
        os << to_double(Rat(num, denom)) << "," << to_string(coeff) << "\n";
    return os.str();
}

QSeries theta_coset(const lattice::GramLattice& lat, const std::vector<Rat>& coset,
                    const Rat& prec, std::size_t budget) {
    std::map<Rat, Int> counts;
    enumerate_form(to_rational(lat.gram()), coset, 2 * prec, budget,
                   [&](const std::vector<Rat>&, const Rat& n) {
                       Rat e = n / 2;
                       if (e < prec) ++counts[e];
                   });
    QSeries out;
    out.prec = prec;
    for (const auto& [e, c] : counts) out.denom = lcm(out.denom, denominator(e));
    for (const auto& [e, c] : counts) {
        Rat scaled = e * out.denom;
        if (denominator(scaled) != 1)
            throw std::logic_error("theta_coset: exponent escaped its common denominator");
        out.coeffs[numerator(scaled)] = c;
    }
    return out;
}

std::complex<double> theta_numeric(const lattice::GramLattice& lat,
                                   const std::vector<Rat>& coset, std::complex<double> tau,
                                   double tail_target) {
    if (coset.size() != lat.rank())
        throw std::invalid_argument("theta_numeric: coset length does not match rank");
    QMat gram = to_rational(lat.gram());
    Ldl f = ldl_decompose(gram);
    Int cut = certified_cutoff(tail_shape(f), tau.imag(), tail_target);
    std::complex<double> sum = 0.0;
    const std::complex<double> ipi(0.0, M_PI);
    enumerate_form(gram, coset, Rat(cut), 80000000, [&](const std::vector<Rat>&, const Rat& n) {
        sum += std::exp(ipi * tau * to_double(n));
    });
    return sum;
}

double poisson_check(const lattice::GramLattice& lat, double t) {
    if (!(t > 0)) throw std::domain_error("poisson_check: parameter must be positive");
    const std::size_t r = lat.rank();
    const std::vector<Rat> zero(r, Rat(0));
    const double target = 1e-14;

    QMat gram = to_rational(lat.gram());
    Int cut = certified_cutoff(tail_shape(ldl_decompose(gram)), t, target);
    double lhs = 0.0;
    enumerate_form(gram, zero, Rat(cut), 80000000,
                   [&](const std::vector<Rat>&, const Rat& n) { lhs += std::exp(-M_PI * t * to_double(n)); });

    QMat dual = inverse(gram);
    Int dual_cut = certified_cutoff(tail_shape(ldl_decompose(dual)), 1.0 / t, target);
    double dual_sum = 0.0;
    enumerate_form(dual, zero, Rat(dual_cut), 80000000,
                   [&](const std::vector<Rat>&, const Rat& n) { dual_sum += std::exp(-M_PI * to_double(n) / t); });

    double covol = std::sqrt(std::abs(to_double(lat.det())));
    double rhs = dual_sum / (covol * std::pow(t, static_cast<double>(r) / 2.0));
    return std::abs(lhs - rhs);
}

lattice::GramLattice e8_lattice() {
    IMat g{{2, 0, -1, 0, 0, 0, 0, 0},
           {0, 2, 0, -1, 0, 0, 0, 0},
           {-1, 0, 2, -1, 0, 0, 0, 0},
           {0, -1, -1, 2, -1, 0, 0, 0},
           {0, 0, 0, -1, 2, -1, 0, 0},
           {0, 0, 0, 0, -1, 2, -1, 0},
           {0, 0, 0, 0, 0, -1, 2, -1},
           {0, 0, 0, 0, 0, 0, -1, 2}};
    return lattice::GramLattice(g, {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"});
}

}  // namespace symplat::theta
