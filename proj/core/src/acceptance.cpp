#include "symplat/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "symplat/isogeny.hpp"
#include "symplat/lattice.hpp"
#include "symplat/localsection.hpp"
#include "symplat/orbits.hpp"
#include "symplat/siegel.hpp"
#include "symplat/star.hpp"
#include "symplat/theta.hpp"

namespace symplat::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed = false;
    std::string detail;
};

isogeny::IsogenyMatrix random_isogeny(std::size_t g, std::mt19937_64& rng, int span) {
    std::uniform_int_distribution<int> pick(-span, span);
    for (;;) {
        IMat m(2 * g, 2);
        for (std::size_t i = 0; i < 2 * g; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = pick(rng);
        if (isogeny::raw_degree(g, m) > 0) return isogeny::IsogenyMatrix(g, m);
    }
}

siegel::SiegelPair random_pair(std::size_t g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::complex<double> tau(unit(rng), 0.4 + std::abs(unit(rng)));
    Eigen::MatrixXd x(g, g), a(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            a(i, j) = unit(rng);
            x(i, j) = unit(rng);
        }
    Eigen::MatrixXd xs = 0.5 * (x + x.transpose());
    Eigen::MatrixXd y = a * a.transpose() + 0.3 * Eigen::MatrixXd::Identity(g, g);
    Eigen::MatrixXcd tp = xs.cast<std::complex<double>>() +
                          std::complex<double>(0, 1) * y.cast<std::complex<double>>();
    return siegel::make_pair(tau, tp);
}

Int int_pow(Int base, std::size_t e) {
    Int r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

Outcome discriminant_groups() {
    for (std::size_t g = 1; g <= 3; ++g) {
        auto lat = lattice::tensor_symplectic(g);
        for (long n = 1; n <= 12; ++n) {
            auto disc = lattice::discriminant_group(lattice::rescale(lat, Int(n)));
            std::size_t expect = n == 1 ? 0 : 4 * g;
            if (disc.invariant_factors.size() != expect) return {false, "wrong factor count"};
            for (const Int& f : disc.invariant_factors)
                if (f != n) return {false, "unexpected invariant factor"};
            if (disc.order != int_pow(Int(n), expect)) return {false, "wrong group order"};
        }
    }
    return {true, "(Z/N)^{4g} for all g <= 3, N <= 12"};
}

Outcome signatures() {
    for (std::size_t g = 1; g <= 4; ++g) {
        auto sig = lattice::signature(lattice::tensor_symplectic(g));
        if (sig.first != int(2 * g) || sig.second != int(2 * g))
            return {false, "unexpected signature at g=" + std::to_string(g)};
    }
    return {true, "(2g,2g) for g <= 4"};
}

Outcome norm_dictionary(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t g = 1; g <= 3; ++g) {
        auto lat = lattice::tensor_symplectic(g);
        for (int trial = 0; trial < 10000; ++trial) {
            auto b = random_isogeny(g, rng, 9);
            auto v = isogeny::tensor_vector(b);
            std::vector<Rat> vr(v.begin(), v.end());
            if (lat.norm(vr) != Rat(2) * Rat(b.degree()))
                return {false, "norm mismatch at g=" + std::to_string(g)};
        }
    }
    return {true, "gamma(v,v) = 2 deg on 3x10^4 samples, exact"};
}

Outcome period_identities(std::uint64_t seed, double tol_abs, double tol_rel) {
    std::mt19937_64 rng(seed + 1);
    double worst = 0;
    for (std::size_t g = 1; g <= 2; ++g)
        for (int trial = 0; trial < 1000; ++trial) {
            auto b = random_isogeny(g, rng, 4);
            auto pair = random_pair(g, rng);
            auto r = siegel::orthogonality_identities(b, pair, tol_abs, tol_rel);
            worst = std::max(worst, r.max_rel_discrepancy);
            if (!r.identity_ok || !r.equivalent) return {false, "pairing identity violated"};
        }

    isogeny::IsogenyMatrix one(1, IMat::identity(2));
    double residual = 0;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::complex<double> tau(unit(rng), 0.5 + std::abs(unit(rng)));
        Eigen::MatrixXcd tp(1, 1);
        tp(0, 0) = siegel::matched_tau_prime(one, tau);
        auto pair = siegel::make_pair(tau, tp);
        auto r = siegel::orthogonality_identities(one, pair, tol_abs, tol_rel);
        residual = std::max(residual, r.period_max);
        if (!r.period_vanishes || !r.orthogonal) return {false, "zero case not flagged"};

        auto [b2, pair2] = siegel::embed_zero_case(one, tau, {0.25 + 0.3 * unit(rng), 1.1});
        auto r2 = siegel::orthogonality_identities(b2, pair2, tol_abs, tol_rel);
        residual = std::max(residual, r2.period_max);
        if (!r2.period_vanishes) return {false, "embedded zero case not flagged"};
    }
    if (residual >= 1e-9) return {false, "zero-case residual too large"};
    std::ostringstream os;
    os << "max rel " << worst << ", zero-case residual " << residual;
    return {true, os.str()};
}

Outcome theta_checks() {
    auto e8 = theta::e8_lattice();
    std::vector<Rat> origin(8, Rat(0));
    auto series = theta::theta_coset(e8, origin, Rat(3));
    if (series.coefficient(Rat(0)) != 1 || series.coefficient(Rat(1)) != 240 ||
        series.coefficient(Rat(2)) != 2160)
        return {false, "wrong leading coefficients"};

    std::vector<lattice::GramLattice> small = {
        lattice::GramLattice(IMat{{1}}),
        lattice::GramLattice(IMat{{6}}),
        lattice::GramLattice(IMat{{2, -1}, {-1, 2}}),
        lattice::GramLattice(IMat{{1, 0}, {0, 3}}),
        lattice::GramLattice(IMat{{2, 1, 0}, {1, 2, 1}, {0, 1, 4}}),
        lattice::GramLattice(IMat{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}),
        lattice::GramLattice(IMat{{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 5}}),
    };
    double worst_poisson = 0;
    for (const auto& lat : small)
        for (double t : {0.7, 1.0, 1.3})
            worst_poisson = std::max(worst_poisson, theta::poisson_check(lat, t));
    if (worst_poisson >= 1e-10) return {false, "dual summation residual too large"};

    std::complex<double> tau(1.0 / 3.0, 1.0);
    auto lhs = theta::theta_numeric(e8, origin, -1.0 / tau);
    auto rhs = std::pow(tau, 4) * theta::theta_numeric(e8, origin, tau);
    double s_residual = std::abs(lhs - rhs) / std::abs(rhs);
    if (s_residual >= 1e-8) return {false, "inversion residual too large"};

    std::ostringstream os;
    os << "1 + 240q + 2160q^2; dual-sum residual " << worst_poisson << "; inversion "
       << s_residual;
    return {true, os.str()};
}

Outcome section_identity() {
    std::size_t probes = 0;
    for (long p : {2L, 3L, 5L, 7L})
        for (int e = 1; e <= 3; ++e) {
            Int n = int_pow(Int(p), std::size_t(e));
            auto r = padic::verify_sw_identity(Int(p), n, 17);
            if (!r.passed()) return {false, r.describe()};
            for (const auto& probe : r.probes) {
                Rat expect = probe.i < e ? Rat(0) : Rat(p - 1, p);
                if (probe.lhs != expect || probe.rhs != expect)
                    return {false, "probe value off at p=" + std::to_string(p)};
                ++probes;
            }
        }
    return {true, std::to_string(probes) + " probe values exact, translates and "
                  "invariance sampled"};
}

Outcome intertwining_checks() {
    for (long p : {2L, 3L, 5L, 7L})
        for (int e = 1; e <= 3; ++e) {
            Int n = int_pow(Int(p), std::size_t(e));
            auto r = padic::intertwining_value(Int(p), n);
            if (r.closed_form != Rat(1, int_pow(Int(p), std::size_t(e))))
                return {false, "closed form off"};
            if (!r.consistent || r.truncated_sum + r.tail != r.closed_form)
                return {false, "shell sum disagrees with closed form"};
        }
    return {true, "closed form p^{-ord} = shell sum + tail on the full grid"};
}

Outcome whittaker_table() {
    for (long p : {2L, 3L, 5L, 7L})
        for (int conductor : {1, 2}) {
            padic::WhittakerNewform w{Int(p), conductor};
            if (!padic::whittaker_value(w, Rat(1, p)).is_zero())
                return {false, "nonzero below the identity"};
            auto v0 = padic::whittaker_value(w, Rat(1));
            if (v0.coeff != 1 || v0.half_p != 0 || v0.alpha_pow != 0)
                return {false, "identity value off"};
            auto v1 = padic::whittaker_value(w, Rat(p));
            if (v1.coeff != 1 || v1.half_p != 1 || v1.alpha_pow != 1)
                return {false, "first step off"};
            auto v2 = padic::whittaker_value(w, Rat(p * p));
            if (v2.coeff != 1 || v2.half_p != 2 || v2.alpha_pow != 2)
                return {false, "square value off"};
        }
    return {true, "0 / 1 / p^{-m/2} alpha^m cases, W(p^2) = p^{-1} alpha^2"};
}

Outcome zeta_checks() {
    double worst = 0;
    for (long p : {2L, 3L, 5L, 7L}) {
        auto zf = padic::zeta_factor({Int(p), 1}, {Int(p), 1});
        if (zf.evaluate(Rat(1), Rat(1)) * (Rat(1) - Rat(1, p * p)) != 1)
            return {false, "exact value off"};
        double root = std::sqrt(double(p));
        for (double t1 : {0.0, 1.1, 2.5, 4.0})
            for (double t2 : {0.3, 1.9, 3.7})
                for (double scale : {1.0, 0.5}) {
                    auto a1 = std::polar(root * scale, t1);
                    auto a2 = std::polar(root * scale, t2);
                    auto closed = zf.evaluate_numeric(a1, a2);
                    worst = std::max(worst, std::abs(zf.truncated(a1, a2, 40) - closed));
                    if (!(std::abs(closed) > 0.5)) return {false, "vanishing zeta factor"};
                }
    }
    if (worst >= 1e-12) return {false, "truncation error too large"};
    std::ostringstream os;
    os << "series matches closed form, worst gap " << worst << "; never zero";
    return {true, os.str()};
}

Outcome level_range(int workers) {
    auto failures = star::verify_theorem_range(100000, workers);
    if (!failures.empty())
        return {false, std::to_string(failures.size()) + " failing levels"};
    std::vector<long long> negative;
    for (long long n = 1; n <= 12; ++n)
        if (!star::satisfies_star(n).satisfied) negative.push_back(n);
    std::vector<long long> expect = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
    if (negative != expect) return {false, "unexpected negative set"};
    return {true, "no failures to 10^5; negative set exactly {1..10, 12}"};
}

Outcome reduction_evidence_checks() {
    std::size_t matrices = 0;
    for (long d = 1; d <= 4; ++d) {
        auto ev = orbits::reduction_evidence(2, Int(d), Int(2));
        if (!ev.divisor_ok) return {false, "divisor pair violated at d=" + std::to_string(d)};
        if (!ev.complete())
            return {false, "uncertified reductions at d=" + std::to_string(d)};
        matrices += ev.matrices;
    }
    return {true, std::to_string(matrices) + " matrices reduced and replayed"};
}

Outcome translate_support(std::uint64_t seed) {
    std::mt19937_64 rng(seed + 2);
    std::size_t probes = 0, k0_mismatch = 0, k1_mismatch = 0;
    auto probe = [&](const Int& p, const Int& n, const QMat& h) {
        auto t = padic::weil_translate_support(p, n, h);
        ++probes;
        if (t.in_support != t.k0_condition) ++k0_mismatch;
        if (t.in_support != t.k1_condition) ++k1_mismatch;
    };
    for (long p : {2L, 3L, 5L})
        for (int v = 1; v <= 2; ++v) {
            Int n = int_pow(Int(p), std::size_t(v));
            Rat pv(int_pow(Int(p), std::size_t(v)));
            probe(Int(p), n, QMat::identity(2));
            probe(Int(p), n, QMat{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
            probe(Int(p), n, QMat{{Rat(1), Rat(-1)}, {Rat(0), Rat(1)}});
            for (int j = 0; j <= v; ++j)
                probe(Int(p), n,
                      QMat{{Rat(1), Rat(0)}, {Rat(int_pow(Int(p), std::size_t(j))), Rat(1)}});
            probe(Int(p), n, QMat{{Rat(1), Rat(1)}, {pv, Rat(1) + pv}});
            if (p != 2)
                probe(Int(p), n, QMat{{Rat(2), Rat(1)}, {pv, (Rat(1) + pv) / 2}});
            probe(Int(p), n, QMat{{Rat(p), Rat(0)}, {Rat(0), Rat(1, p)}});
            probe(Int(p), n, QMat{{Rat(1), Rat(1, p)}, {Rat(0), Rat(1)}});
            for (int t = 0; t < 10; ++t) {
                QMat h = QMat::identity(2);
                for (int s = 0; s < 3; ++s) {
                    long num = long(rng() % 9) - 4;
                    long den = rng() % 2 == 0 ? 1 : p * p;
                    QMat e = QMat::identity(2);
                    if (rng() % 2 == 0) e(0, 1) = Rat(num * p, den);
                    else e(1, 0) = Rat(num * p, den);
                    h = h * e;
                }
                probe(Int(p), n, h);
            }
        }
    probe(Int(2), Int(4), QMat{{Rat(3), Rat(2)}, {Rat(4), Rat(3)}});
    probe(Int(2), Int(8), QMat{{Rat(3), Rat(1)}, {Rat(8), Rat(3)}});

    bool all_k0 = k0_mismatch == 0;
    bool all_k1 = k1_mismatch == 0;
    std::ostringstream os;
    if (all_k0 && !all_k1)
        os << "support = {lower-left entry divisible by the level} on all " << probes
           << " probes; the unit-residue refinement fails on " << k1_mismatch;
    else if (all_k1 && !all_k0)
        os << "support = unit-residue subgroup on all " << probes << " probes";
    else if (all_k0 && all_k1)
        os << "the two candidate groups agree on every probe";
    else
        os << "support matches neither candidate (" << k0_mismatch << "/" << k1_mismatch
           << " mismatches of " << probes << ")";
    return {all_k0 || all_k1, os.str()};
}

}  // namespace

std::vector<CriterionResult> run_all(const RunConfig& cfg) {
    cfg.validate();
    struct Entry {
        std::string name;
        double limit;  // seconds; 0 = no pinned limit
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> entries = {
        {"discriminant-groups", 1.0, [&] { return discriminant_groups(); }},
        {"signature", 0, [&] { return signatures(); }},
        {"norm-dictionary", 5.0, [&] { return norm_dictionary(cfg.seed); }},
        {"period-identities", 0,
         [&] { return period_identities(cfg.seed, cfg.tol_abs, cfg.tol_rel); }},
        {"theta-series", 0, [&] { return theta_checks(); }},
        {"section-identity", 10.0, [&] { return section_identity(); }},
        {"intertwining", 0, [&] { return intertwining_checks(); }},
        {"whittaker-table", 0, [&] { return whittaker_table(); }},
        {"zeta-factor", 0, [&] { return zeta_checks(); }},
        {"level-range", 10.0, [&] { return level_range(cfg.workers); }},
        {"reduction-evidence", 60.0, [&] { return reduction_evidence_checks(); }},
        {"translate-support", 0, [&] { return translate_support(cfg.seed); }},
    };

    std::vector<CriterionResult> results;
    int index = 1;
    for (const auto& entry : entries) {
        CriterionResult r;
        r.index = index++;
        r.name = entry.name;
        auto t0 = Clock::now();
        try {
            Outcome out = entry.fn();
            r.passed = out.passed;
            r.detail = out.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (entry.limit > 0 && r.seconds > entry.limit) {
            r.passed = false;
            r.detail += " [over the " + std::to_string(int(entry.limit)) + " s limit]";
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_report(const std::vector<CriterionResult>& results, bool with_timings) {
    std::ostringstream os;
    std::size_t ok = 0;
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << "  " << r.index << " " << r.name;
        os.precision(3);
        if (with_timings) os << "  (" << r.seconds << " s)";
        os << "  " << r.detail << "\n";
        if (r.passed) ++ok;
    }
    os << ok << "/" << results.size() << " criteria passed\n";
    return os.str();
}

}  // namespace symplat::acceptance
