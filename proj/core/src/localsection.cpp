#include "symplat/localsection.hpp"

#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace symplat::padic {

Schwartz level_indicator(const Int& p, const Int& n) {
    if (n < 1) throw std::invalid_argument("level_indicator: level must be positive");
    int v = ord(p, n);
    return Schwartz::indicator(
        Box(p, {{Rat(0), 0}, {Rat(0), 0}, {Rat(0), v}, {Rat(0), 0}}));
}

FourierSpec matrix_polarization_spec() {
    return {{1, true, -1}, {0, true, +1}, {2, false, 0}, {3, false, 0}};
}

Cyclotomic siegel_weil_section(const Schwartz& phi, const QMat& g) {
    const Int& p = phi.prime();
    if (phi.dim() != 4)
        throw std::invalid_argument("siegel_weil_section: phi must have four coordinates");
    if (g.rows() != 2 || g.cols() != 2)
        throw std::invalid_argument("siegel_weil_section: g must be 2x2");
    const Rat det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    if (det == 0) throw std::domain_error("siegel_weil_section: singular matrix");
    QMat gi = inverse(g);
    const Rat alpha = gi(0, 0), gamma = gi(1, 0);

    // volume of the t-set cut out by conditions s*t in coord-coset, one
    // condition per (scale, coord) pair with nonzero scale; constant
    // conditions just gate the term
    auto variable_volume = [&](const Rat& s1, const Coord& c1, const Rat& s2,
                               const Coord& c2) -> std::optional<Rat> {
        std::vector<std::pair<Rat, int>> cosets;
        for (const auto& [s, co] : {std::pair<const Rat&, const Coord&>{s1, c1},
                                    std::pair<const Rat&, const Coord&>{s2, c2}}) {
            if (s == 0) {
                if (co.center != 0) return std::nullopt;  // 0 not in the coset
                continue;
            }
            cosets.push_back({co.center / s, co.depth - ord(p, s)});
        }
        if (cosets.empty())
            throw std::logic_error("siegel_weil_section: unconstrained integration variable");
        if (cosets.size() == 2) {
            if (cosets[0].second < cosets[1].second) std::swap(cosets[0], cosets[1]);
            if (ord(p, Rat(cosets[0].first - cosets[1].first)) < cosets[1].second)
                return std::nullopt;
        }
        return p_power(p, -cosets[0].second);
    };

    Cyclotomic total(p);
    for (const Schwartz::Term& t : phi.terms()) {
        auto vx = variable_volume(alpha, t.box.coord(0), gamma, t.box.coord(2));
        if (!vx) continue;
        auto vy = variable_volume(alpha, t.box.coord(1), gamma, t.box.coord(3));
        if (!vy) continue;
        total += t.coeff * (*vx * *vy);
    }
    return total * p_power(p, ord(p, det));
}

InducedSection::InducedSection(Int p, Int n) : p_(std::move(p)), n_(std::move(n)) {
    if (p_ < 2) throw std::invalid_argument("induced section: p must be at least 2");
    if (n_ < 1) throw std::invalid_argument("induced section: level must be positive");
    v_ = ord(p_, n_);
}

bool InducedSection::in_support(const QMat& g) const {
    if (g.rows() != 2 || g.cols() != 2)
        throw std::invalid_argument("induced section: g must be 2x2");
    if (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) == 0)
        throw std::domain_error("induced section: singular matrix");
    if (v_ == 0) return true;
    if (g(1, 1) == 0) return false;
    return ord(p_, g(1, 0)) - ord(p_, g(1, 1)) >= v_;
}

Rat InducedSection::value(const QMat& g, const Rat& s) const {
    if (!in_support(g)) return Rat(0);
    const Rat det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    const Rat c = g(1, 0), d = g(1, 1);
    int pivot;
    if (v_ >= 1 || (d != 0 && (c == 0 || ord(p_, d) <= ord(p_, c))))
        pivot = ord(p_, d);
    else
        pivot = ord(p_, c);
    const int e = ord(p_, det) - 2 * pivot;
    Rat expn = Rat(e) * (s + Rat(1, 2));
    if (denominator(expn) != 1)
        throw std::domain_error("induced section: non-integral modulus exponent at this s");
    return p_power(p_, -numerator(expn).convert_to<int>());
}

namespace {

QMat unipotent_probe(const Int& p, int i) {
    return QMat{{Rat(1), Rat(0)}, {p_power(p, i), Rat(1)}};
}

}  // namespace

SwReport verify_sw_identity(const Int& p, const Int& n, std::uint64_t seed,
                            std::size_t samples) {
    if (p < 2) throw std::invalid_argument("verify_sw_identity: p must be at least 2");
    if (n < 1 || n % p != 0)
        throw std::domain_error("verify_sw_identity: p must divide the level");
    const int v = ord(p, n);
    const Schwartz phi_n = level_indicator(p, n);
    const Schwartz phi_down = level_indicator(p, n / p);
    const InducedSection sec(p, n);
    const Rat unit_gap = Rat(1) - Rat(1, p);

    auto lhs = [&](const QMat& g) {
        Cyclotomic val =
            siegel_weil_section(phi_n, g) - siegel_weil_section(phi_down, g) * Rat(1, p);
        return val.rational_value();
    };
    auto rhs = [&](const QMat& g) { return unit_gap * sec.value(g); };

    SwReport rep;
    rep.p = p;
    rep.n = n;
    rep.identity_holds = true;

    std::vector<QMat> probes;
    for (int i = 0; i <= v + 2; ++i) probes.push_back(unipotent_probe(p, i));
    for (int i = 0; i <= v + 2; ++i) {
        SwProbe pr{i, lhs(probes[i]), rhs(probes[i])};
        if (pr.lhs != pr.rhs) rep.identity_holds = false;
        rep.probes.push_back(pr);
    }

    std::mt19937_64 rng(seed);
    auto small = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    const long long pl = p.convert_to<long long>();

    for (std::size_t trial = 0; trial < samples; ++trial) {
        Rat u = Rat(1 + small(0, static_cast<int>(pl) - 2));
        Rat w = Rat(1 + small(0, static_cast<int>(pl) - 2));
        Rat x = Rat(small(-20, 20)) * p_power(p, small(-2, 0));
        QMat b{{u * p_power(p, small(-2, 2)), x}, {Rat(0), w * p_power(p, small(-2, 2))}};
        const QMat& g = probes[trial % probes.size()];
        QMat bg = b * g;
        ++rep.translate_checks;
        if (lhs(bg) != rhs(bg)) rep.identity_holds = false;
    }

    rep.right_invariant = true;
    for (std::size_t trial = 0; trial < samples; ++trial) {
        QMat k(2, 2);
        do {
            k(0, 0) = Rat(small(-40, 40));
            k(0, 1) = Rat(small(-40, 40));
            k(1, 0) = Rat(small(-40, 40)) * Rat(n);
            k(1, 1) = Rat(1) + Rat(small(-40, 40)) * p_power(p, v);
        } while (ord(p, Rat(k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0))) != 0);
        const QMat& g = probes[trial % probes.size()];
        QMat gk = g * k;
        ++rep.invariance_checks;
        if (lhs(gk) != lhs(g)) rep.right_invariant = false;
    }
    return rep;
}

std::string SwReport::describe() const {
    std::ostringstream os;
    os << "p=" << to_string(p) << " level=" << to_string(n) << "\n";
    for (const SwProbe& pr : probes)
        os << "  probe i=" << pr.i << ": lhs=" << to_string(pr.lhs)
           << " rhs=" << to_string(pr.rhs) << (pr.lhs == pr.rhs ? " ok" : " MISMATCH") << "\n";
    os << "  translates checked: " << translate_checks
       << ", identity: " << (identity_holds ? "holds" : "fails") << "\n";
    os << "  invariance samples: " << invariance_checks
       << ", right-invariant: " << (right_invariant ? "yes" : "NO") << "\n";
    return os.str();
}

IntertwiningReport intertwining_value(const Int& p, const Int& n, int shells) {
    if (p < 2) throw std::invalid_argument("intertwining_value: p must be at least 2");
    if (n < 1 || n % p != 0)
        throw std::domain_error("intertwining_value: p must divide the level");
    if (shells < 1) throw std::invalid_argument("intertwining_value: need at least one shell");
    const int v = ord(p, n);
    const InducedSection sec(p, n);

    IntertwiningReport rep;
    rep.shells = shells;
    rep.closed_form = p_power(p, -v);
    rep.truncated_sum = 0;
    const Rat unit_volume = Rat(p - 1, p);  // multiplicative shell p^{-m} Z_p^* has volume p^m * this
    for (int m = 0; m < shells; ++m) {
        const int shell = v + m;
        Rat shell_volume = p_power(p, shell) * unit_volume;
        Rat integrand = p_power(p, -2 * shell) * sec.value(unipotent_probe(p, shell));
        rep.truncated_sum += shell_volume * integrand;
    }
    rep.tail = p_power(p, -(v + shells));
    rep.w_term = sec.value(QMat{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}});
    rep.consistent = (rep.truncated_sum + rep.tail == rep.closed_form) && rep.w_term == 0;
    return rep;
}

std::complex<double> WhittakerValue::numeric(double p, std::complex<double> alpha) const {
    return to_double(coeff) * std::pow(p, -half_p / 2.0) *
           std::pow(alpha, static_cast<double>(alpha_pow));
}

std::string WhittakerValue::to_string() const {
    if (coeff == 0) return "0";
    std::ostringstream os;
    os << symplat::to_string(coeff);
    if (half_p != 0) os << " * p^(-" << half_p << "/2)";
    if (alpha_pow != 0) os << " * alpha^" << alpha_pow;
    return os.str();
}

WhittakerValue whittaker_value(const WhittakerNewform& w, const Rat& t) {
    if (w.conductor < 1) throw std::invalid_argument("whittaker_value: conductor must be >= 1");
    if (t == 0) throw std::domain_error("whittaker_value: torus parameter must be nonzero");
    const int m = ord(w.p, t);
    if (m < 0) return {Rat(0), 0, 0};
    if (m == 0) return {Rat(1), 0, 0};
    return {Rat(1), m, m};
}

Rat ZetaFactor::evaluate(const Rat& a1, const Rat& a2) const {
    Rat q = a1 * a2 / Rat(p * p);
    if (q == 1) throw std::domain_error("zeta factor: evaluation at the pole");
    return Rat(1) / (Rat(1) - q);
}

std::complex<double> ZetaFactor::evaluate_numeric(std::complex<double> a1,
                                                  std::complex<double> a2) const {
    std::complex<double> q = a1 * a2 / std::pow(to_double(Int(p)), 2.0);
    return 1.0 / (1.0 - q);
}

std::complex<double> ZetaFactor::truncated(std::complex<double> a1, std::complex<double> a2,
                                           int terms) const {
    std::complex<double> q = a1 * a2 / std::pow(to_double(Int(p)), 2.0);
    std::complex<double> sum = 0.0, pw = 1.0;
    for (int m = 0; m <= terms; ++m) {
        sum += pw;
        pw *= q;
    }
    return sum;
}

std::string ZetaFactor::formula() const {
    return "1/(1 - a1*a2*" + to_string(p) + "^-2)";
}

ZetaFactor zeta_factor(const WhittakerNewform& w1, const WhittakerNewform& w2) {
    if (w1.p != w2.p) throw std::invalid_argument("zeta_factor: mixed primes");
    if (w1.conductor < 1 || w2.conductor < 1)
        throw std::invalid_argument("zeta_factor: conductors must be >= 1");
    return {w1.p};
}

TranslateSupport weil_translate_support(const Int& p, const Int& n, const QMat& h1) {
    if (h1.rows() != 2 || h1.cols() != 2)
        throw std::invalid_argument("weil_translate_support: h1 must be 2x2");
    const Rat det = h1(0, 0) * h1(1, 1) - h1(0, 1) * h1(1, 0);
    if (det != 1)
        throw std::invalid_argument("weil_translate_support: h1 must have determinant 1");

    Schwartz transformed = fourier_transform(level_indicator(p, n), matrix_polarization_spec());

    // probe e1 (x) (0 0; 1 0) + e2 (x) (0 0; 0 -1) in coordinates (z1,w1,z2,w2)
    const Rat uz(1), uw(0), vz(0), vw(-1);
    QMat hi = inverse(h1);
    std::vector<Rat> moved{hi(0, 0) * uz + hi(0, 1) * vz, hi(0, 0) * uw + hi(0, 1) * vw,
                           hi(1, 0) * uz + hi(1, 1) * vz, hi(1, 0) * uw + hi(1, 1) * vw};

    TranslateSupport rep{transformed.evaluate(moved), false, false, false};
    rep.in_support = !rep.value.is_zero();

    const int v = ord(p, n);
    bool integral = true;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (ord(p, h1(i, j)) < 0) integral = false;
    rep.k0_condition = integral && ord(p, h1(1, 0)) >= v;
    rep.k1_condition = rep.k0_condition && ord(p, Rat(h1(1, 1) - 1)) >= v;
    return rep;
}

}  // namespace symplat::padic
