// Command-line front end over the symplat library: lattice queries, isogeny
// censuses, period-geometry batteries, theta expansions, the local-section
// verification suite, level checks, and the built-in self test.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 domain error (degenerate input).

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symplat/acceptance.hpp"
#include "symplat/config.hpp"
#include "symplat/isogeny.hpp"
#include "symplat/lattice.hpp"
#include "symplat/localsection.hpp"
#include "symplat/orbits.hpp"
#include "symplat/siegel.hpp"
#include "symplat/star.hpp"
#include "symplat/theta.hpp"

using namespace symplat;
using nlohmann::ordered_json;

namespace {

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

Rat parse_rat(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: " + s);
    }
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
    return out;
}

void require_formats(const RunConfig& cfg, bool csv_ok) {
    if (cfg.format == OutputFormat::csv && !csv_ok)
        throw std::invalid_argument("this subcommand has no csv form; use text or json");
}

// ---------------------------------------------------------------- lattice --

struct LatticeArgs {
    long tensor_g = 0;
    std::string file;
    bool e8 = false;
    long rescale_n = 1;
    bool disc = false;
    bool theta = false;
    std::string prec = "3";
    std::string coset;
    std::string save;
};

int run_lattice(const RunConfig& cfg, const LatticeArgs& a, Output& out) {
    require_formats(cfg, a.theta);
    std::unique_ptr<lattice::GramLattice> lat;
    if (a.e8) lat = std::make_unique<lattice::GramLattice>(theta::e8_lattice());
    else if (!a.file.empty())
        lat = std::make_unique<lattice::GramLattice>(lattice::load_file(a.file));
    else if (a.tensor_g > 0)
        lat = std::make_unique<lattice::GramLattice>(
            lattice::tensor_symplectic(std::size_t(a.tensor_g)));
    else
        throw std::invalid_argument("lattice: need --tensor-g, --file, or --e8");
    if (a.rescale_n != 1) *lat = lattice::rescale(*lat, Int(a.rescale_n));
    if (!a.save.empty()) lattice::save_file(*lat, a.save);

    auto sig = lattice::signature(*lat);
    Int level = lattice::lattice_level(*lat);
    ordered_json doc;
    doc["rank"] = lat->rank();
    doc["signature"] = {sig.first, sig.second};
    doc["det"] = to_string(lat->det());
    doc["even"] = lat->is_even();
    doc["level"] = to_string(level);

    std::ostringstream text;
    text << "rank " << lat->rank() << ", signature (" << sig.first << "," << sig.second
         << "), det " << to_string(lat->det()) << (lat->is_even() ? ", even" : ", odd")
         << ", level " << to_string(level) << "\n";
    if (a.disc) {
        auto d = lattice::discriminant_group(*lat);
        text << d.describe() << "\n";
        doc["discriminant"] = d.describe();
        auto factors = ordered_json::array();
        for (const auto& f : d.invariant_factors) factors.push_back(to_string(f));
        doc["invariant_factors"] = factors;
    }
    if (a.theta) {
        std::vector<Rat> coset(lat->rank(), Rat(0));
        if (!a.coset.empty()) coset = parse_rat_list(a.coset);
        auto series = theta::theta_coset(*lat, coset, parse_rat(a.prec));
        if (cfg.format == OutputFormat::csv) {
            out.stream() << series.to_csv();
            return 0;
        }
        doc["theta"] = series.to_json();
        text << "theta exponent/coefficient pairs:\n";
        for (const auto& [num, c] : series.coeffs)
            text << "  " << to_string(Rat(num, series.denom)) << "  " << to_string(c) << "\n";
    }
    if (cfg.format == OutputFormat::json) out.stream() << doc.dump(2) << "\n";
    else out.stream() << text.str();
    return 0;
}

// ---------------------------------------------------------------- isogeny --

struct IsogenyArgs {
    long g = 1;
    long d = 1;
    long height = 1;
    bool census = false;
    long level = 1;
    long depth = 8;
    bool evidence = false;
};

int run_isogeny(const RunConfig& cfg, const IsogenyArgs& a, Output& out) {
    require_formats(cfg, false);
    ordered_json doc;
    std::ostringstream text;
    doc["g"] = a.g;
    doc["d"] = a.d;
    doc["height"] = a.height;

    auto mats = isogeny::enumerate(std::size_t(a.g), Int(a.d), Int(a.height), std::nullopt,
                                   cfg.workers);
    text << "matrices of degree " << a.d << ", height <= " << a.height << ": " << mats.size()
         << "\n";
    doc["count"] = mats.size();

    if (a.census) {
        auto report = orbits::orbit_census(std::size_t(a.g), Int(a.d), Int(a.level),
                                           Int(a.height), int(a.depth), cfg.workers);
        text << "census at level " << a.level << ": " << report.classes.size()
             << " classes, " << report.certified_merges << " certified merges, max word "
             << report.max_word << "\n";
        doc["census"] = report.to_json();
    }
    if (a.evidence) {
        auto ev = orbits::reduction_evidence(std::size_t(a.g), Int(a.d), Int(a.height));
        text << "reduction evidence: " << ev.certified << "/" << ev.matrices
             << " certified, divisor pairs " << (ev.divisor_ok ? "ok" : "VIOLATED")
             << ", max word " << ev.max_word << "\n";
        doc["evidence"] = {{"matrices", ev.matrices},
                           {"classes", ev.classes},
                           {"certified", ev.certified},
                           {"max_word", ev.max_word},
                           {"divisor_ok", ev.divisor_ok},
                           {"complete", ev.complete()}};
        if (!ev.complete()) {
            out.stream() << (cfg.format == OutputFormat::json ? doc.dump(2) + "\n" : text.str());
            return 1;
        }
    }
    if (cfg.format == OutputFormat::json) out.stream() << doc.dump(2) << "\n";
    else out.stream() << text.str();
    return 0;
}

// ----------------------------------------------------------------- period --

struct PeriodArgs {
    long g = 1;
    bool identity = false;
    long samples = 100;
};

int run_period(const RunConfig& cfg, const PeriodArgs& a, Output& out) {
    require_formats(cfg, false);
    if (a.g < 1 || a.g > 3) throw std::invalid_argument("period: --g must be 1..3");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto random_pair = [&](std::size_t g) {
        siegel::Complex tau(unit(rng), 0.5 + std::abs(unit(rng)));
        Eigen::MatrixXd re(g, g), raw(g, g);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) {
                re(i, j) = unit(rng);
                raw(i, j) = unit(rng);
            }
        Eigen::MatrixXd res = 0.5 * (re + re.transpose());
        Eigen::MatrixXd im = raw * raw.transpose() + 0.4 * Eigen::MatrixXd::Identity(g, g);
        Eigen::MatrixXcd tp = res.cast<siegel::Complex>() +
                              siegel::Complex(0, 1) * im.cast<siegel::Complex>();
        return siegel::make_pair(tau, tp);
    };
    auto random_b = [&](std::size_t g) {
        for (;;) {
            IMat m(2 * g, 2);
            for (std::size_t i = 0; i < 2 * g; ++i)
                for (std::size_t j = 0; j < 2; ++j) m(i, j) = int(rng() % 9) - 4;
            if (isogeny::raw_degree(g, m) > 0) return isogeny::IsogenyMatrix(g, m);
        }
    };

    ordered_json doc;
    doc["seed"] = cfg.seed;
    std::ostringstream text;
    text << "seed " << cfg.seed << "\n";
    bool ok = true;

    if (a.identity) {
        isogeny::IsogenyMatrix one(1, IMat::identity(2));
        double residual = 0;
        for (int t = 0; t < 25; ++t) {
            siegel::Complex tau(unit(rng), 0.6 + std::abs(unit(rng)));
            Eigen::MatrixXcd tp(1, 1);
            tp(0, 0) = siegel::matched_tau_prime(one, tau);
            auto rep = siegel::orthogonality_identities(one, siegel::make_pair(tau, tp),
                                                        cfg.tol_abs, cfg.tol_rel);
            residual = std::max(residual, rep.period_max);
            ok = ok && rep.period_vanishes && rep.orthogonal;
        }
        ok = ok && residual < 1e-9;
        text << "identity-isogeny battery: max residual " << residual << " (bound 1e-9) "
             << (ok ? "ok" : "FAILED") << "\n";
        doc["identity_residual"] = residual;
    }

    double worst = 0;
    for (long t = 0; t < a.samples; ++t) {
        auto b = random_b(std::size_t(a.g));
        auto pair = random_pair(std::size_t(a.g));
        auto rep = siegel::orthogonality_identities(b, pair, cfg.tol_abs, cfg.tol_rel);
        worst = std::max(worst, rep.max_rel_discrepancy);
        ok = ok && rep.identity_ok && rep.equivalent;
    }
    text << a.samples << " random samples at g=" << a.g << ": max rel discrepancy " << worst
         << " (tol " << cfg.tol_rel << ") " << (ok ? "ok" : "FAILED") << "\n";
    doc["samples"] = a.samples;
    doc["max_rel_discrepancy"] = worst;
    doc["passed"] = ok;

    if (cfg.format == OutputFormat::json) out.stream() << doc.dump(2) << "\n";
    else out.stream() << text.str();
    return ok ? 0 : 1;
}

// ------------------------------------------------------------------ theta --

struct ThetaArgs {
    bool e8 = false;
    std::string file;
    std::string diag;
    std::string coset;
    std::string prec = "3";
    std::string tau;  // "re,im" for a numeric evaluation
};

int run_theta(const RunConfig& cfg, const ThetaArgs& a, Output& out) {
    std::unique_ptr<lattice::GramLattice> lat;
    if (a.e8) lat = std::make_unique<lattice::GramLattice>(theta::e8_lattice());
    else if (!a.file.empty())
        lat = std::make_unique<lattice::GramLattice>(lattice::load_file(a.file));
    else if (!a.diag.empty()) {
        auto entries = parse_rat_list(a.diag);
        IMat gram(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (denominator(entries[i]) != 1)
                throw std::invalid_argument("theta: --diag entries must be integers");
            gram(i, i) = numerator(entries[i]);
        }
        lat = std::make_unique<lattice::GramLattice>(std::move(gram));
    } else
        throw std::invalid_argument("theta: need --e8, --file, or --diag");

    std::vector<Rat> coset(lat->rank(), Rat(0));
    if (!a.coset.empty()) {
        coset = parse_rat_list(a.coset);
        if (coset.size() != lat->rank())
            throw std::invalid_argument("theta: coset length does not match the rank");
    }

    if (!a.tau.empty()) {
        require_formats(cfg, false);
        auto parts = parse_rat_list(a.tau);
        if (parts.size() != 2) throw std::invalid_argument("theta: --tau wants re,im");
        std::complex<double> tau(to_double(parts[0]), to_double(parts[1]));
        auto value = theta::theta_numeric(*lat, coset, tau);
        if (cfg.format == OutputFormat::json) {
            ordered_json doc;
            doc["tau"] = {to_double(parts[0]), to_double(parts[1])};
            doc["value"] = {value.real(), value.imag()};
            out.stream() << doc.dump(2) << "\n";
        } else {
            out.stream() << "theta(tau) = " << value.real() << " + " << value.imag() << "i\n";
        }
        return 0;
    }

    auto series = theta::theta_coset(*lat, coset, parse_rat(a.prec));
    if (cfg.format == OutputFormat::csv) out.stream() << series.to_csv();
    else if (cfg.format == OutputFormat::json) out.stream() << series.to_json().dump(2) << "\n";
    else {
        out.stream() << "exponent  coefficient\n";
        for (const auto& [num, c] : series.coeffs)
            out.stream() << to_string(Rat(num, series.denom)) << "  " << to_string(c) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------- padic-verify --

struct PadicArgs {
    long prime = 0;
    long level = 0;
    long probe_depth = -1;
    long samples = 20;
};

int run_padic(const RunConfig& cfg, const PadicArgs& a, Output& out) {
    require_formats(cfg, false);
    if (a.prime < 2) throw std::invalid_argument("padic-verify: --prime must be at least 2");
    for (long q = 2; q * q <= a.prime; ++q)
        if (a.prime % q == 0)
            throw std::invalid_argument("padic-verify: --prime must be prime");
    if (a.level < 1) throw std::invalid_argument("padic-verify: --level must be positive");
    Int p(a.prime), n(a.level);

    auto sw = padic::verify_sw_identity(p, n, cfg.seed, std::size_t(a.samples));
    auto inter = padic::intertwining_value(p, n);
    bool ok = sw.passed() && inter.consistent;

    ordered_json doc;
    doc["seed"] = cfg.seed;
    doc["p"] = a.prime;
    doc["level"] = a.level;
    auto probes = ordered_json::array();
    for (const auto& probe : sw.probes)
        probes.push_back({{"i", probe.i},
                          {"lhs", to_string(probe.lhs)},
                          {"rhs", to_string(probe.rhs)}});
    doc["probes"] = probes;
    doc["identity_holds"] = sw.identity_holds;
    doc["right_invariant"] = sw.right_invariant;
    doc["intertwining"] = {{"closed", to_string(inter.closed_form)},
                           {"truncated", to_string(inter.truncated_sum)},
                           {"tail", to_string(inter.tail)},
                           {"w_term", to_string(inter.w_term)},
                           {"consistent", inter.consistent}};

    std::ostringstream text;
    text << "seed " << cfg.seed << "\n" << sw.describe();
    text << "intertwining value: " << to_string(inter.closed_form) << " (shells "
         << to_string(inter.truncated_sum) << " + tail " << to_string(inter.tail) << ", w-term "
         << to_string(inter.w_term) << ") " << (inter.consistent ? "consistent" : "INCONSISTENT")
         << "\n";

    if (a.probe_depth >= 0) {
        padic::InducedSection sec(p, n);
        auto section_probes = ordered_json::array();
        Rat entry(1);
        for (long i = 0; i <= a.probe_depth; ++i) {
            QMat g{{Rat(1), Rat(0)}, {entry, Rat(1)}};
            bool in = sec.in_support(g);
            text << "section probe i=" << i << ": " << (in ? "in support, value " : "outside")
                 << (in ? to_string(sec.value(g)) : std::string()) << "\n";
            section_probes.push_back(
                {{"i", i}, {"in_support", in}, {"value", in ? to_string(sec.value(g)) : "0"}});
            entry = entry * Rat(a.prime);
        }
        doc["section_probes"] = section_probes;
    }

    text << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    doc["passed"] = ok;
    if (cfg.format == OutputFormat::json) out.stream() << doc.dump(2) << "\n";
    else out.stream() << text.str();
    return ok ? 0 : 1;
}

// ------------------------------------------------------------- star-check --

struct StarArgs {
    long n = 0;
    long range = 0;
};

int run_star(const RunConfig& cfg, const StarArgs& a, Output& out) {
    if ((a.n == 0) == (a.range == 0))
        throw std::invalid_argument("star-check: pass exactly one of --n or --range");
    if (a.n != 0) {
        auto v = star::satisfies_star(a.n);
        if (cfg.format == OutputFormat::json) {
            ordered_json doc;
            doc["n"] = v.n;
            doc["satisfied"] = v.satisfied;
            doc["witness"] = v.witness;
            doc["rule"] = v.rule == star::StarRule::table_row    ? "table"
                          : v.rule == star::StarRule::prime_rule ? "prime"
                                                                 : "none";
            out.stream() << doc.dump(2) << "\n";
        } else if (cfg.format == OutputFormat::csv) {
            out.stream() << "n,satisfied,witness\n"
                         << v.n << "," << (v.satisfied ? 1 : 0) << "," << v.witness << "\n";
        } else {
            out.stream() << v.describe() << "\n";
        }
        return 0;
    }
    auto failures = star::verify_theorem_range(a.range, cfg.workers);
    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["range"] = a.range;
        doc["failures"] = failures;
        out.stream() << doc.dump(2) << "\n";
    } else if (cfg.format == OutputFormat::csv) {
        out.stream() << "failing_level\n";
        for (auto n : failures) out.stream() << n << "\n";
    } else {
        out.stream() << failures.size() << " failures\n";
        for (auto n : failures) out.stream() << "  " << n << "\n";
    }
    return failures.empty() ? 0 : 1;
}

// --------------------------------------------------------------- selftest --

int run_selftest(const RunConfig& cfg, Output& out) {
    require_formats(cfg, false);
    auto results = acceptance::run_all(cfg);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["seed"] = cfg.seed;
        auto rows = ordered_json::array();
        for (const auto& r : results)
            rows.push_back({{"index", r.index},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"detail", r.detail}});
        doc["criteria"] = rows;
        doc["passed"] = ok;
        out.stream() << doc.dump(2) << "\n";
    } else {
        out.stream() << "seed " << cfg.seed << ", workers " << cfg.workers << "\n"
                     << acceptance::format_report(results, false);
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symplat: exact workbench for symplectic tensor lattices, isogeny "
                 "matrices, theta sums, and local sections"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "text";
    app.add_option("--seed", cfg.seed, "random seed (reports log it)");
    app.add_option("--workers", cfg.workers, "worker threads");
    app.add_option("--tol-abs", cfg.tol_abs, "absolute tolerance");
    app.add_option("--tol-rel", cfg.tol_rel, "relative tolerance");
    app.add_option("--format", format, "output format: text, json, csv");
    app.add_option("--out", cfg.out_path, "write the report to a file");

    LatticeArgs lat;
    auto* c_lat = app.add_subcommand("lattice", "lattice invariants and expansions");
    c_lat->add_option("--tensor-g", lat.tensor_g, "tensor lattice of this genus");
    c_lat->add_option("--file", lat.file, "lattice document to load");
    c_lat->add_flag("--e8", lat.e8, "built-in root lattice of rank 8");
    c_lat->add_option("--rescale", lat.rescale_n, "rescale the form by N");
    c_lat->add_flag("--disc", lat.disc, "print the discriminant group");
    c_lat->add_flag("--theta", lat.theta, "print the theta expansion");
    c_lat->add_option("--prec", lat.prec, "exponent bound for --theta");
    c_lat->add_option("--coset", lat.coset, "coset offsets, comma separated rationals");
    c_lat->add_option("--save", lat.save, "write the lattice document to a file");

    IsogenyArgs iso;
    auto* c_iso = app.add_subcommand("isogeny", "enumerate and classify isogeny matrices");
    c_iso->add_option("--g", iso.g, "genus")->required();
    c_iso->add_option("--d", iso.d, "degree")->required();
    c_iso->add_option("--height", iso.height, "entry bound")->required();
    c_iso->add_flag("--census", iso.census, "run the orbit census");
    c_iso->add_option("--level", iso.level, "census congruence level");
    c_iso->add_option("--depth", iso.depth, "census search depth");
    c_iso->add_flag("--evidence", iso.evidence, "certify reductions with group words");

    PeriodArgs per;
    auto* c_per = app.add_subcommand("period", "period pairing identities");
    c_per->add_option("--g", per.g, "genus (1..3)");
    c_per->add_flag("--identity-isogeny", per.identity, "matched vanishing battery");
    c_per->add_option("--samples", per.samples, "random sample count");

    ThetaArgs th;
    auto* c_th = app.add_subcommand("theta", "theta series and sums");
    c_th->add_flag("--e8", th.e8, "built-in root lattice of rank 8");
    c_th->add_option("--file", th.file, "lattice document to load");
    c_th->add_option("--diag", th.diag, "diagonal Gram entries, comma separated");
    c_th->add_option("--coset", th.coset, "coset offsets, comma separated rationals");
    c_th->add_option("--prec", th.prec, "exponent bound");
    c_th->add_option("--tau", th.tau, "evaluate numerically at re,im");

    PadicArgs pad;
    auto* c_pad = app.add_subcommand("padic-verify", "local section verification suite");
    c_pad->add_option("--prime", pad.prime, "residue prime")->required();
    c_pad->add_option("--level", pad.level, "level (the prime must divide it)")->required();
    c_pad->add_option("--probe-depth", pad.probe_depth, "also probe the section to this depth");
    c_pad->add_option("--samples", pad.samples, "random translate sample count");

    StarArgs st;
    auto* c_st = app.add_subcommand("star-check", "level divisor criterion");
    c_st->add_option("--n", st.n, "single level to check");
    c_st->add_option("--range", st.range, "verify every level up to this bound");

    auto* c_self = app.add_subcommand("selftest", "run the full verification battery");

    // global options remain usable after the subcommand name
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        cfg.format = parse_format(format);
        cfg.validate();
        Output out;
        out.open(cfg.out_path);
        if (c_lat->parsed()) return run_lattice(cfg, lat, out);
        if (c_iso->parsed()) return run_isogeny(cfg, iso, out);
        if (c_per->parsed()) return run_period(cfg, per, out);
        if (c_th->parsed()) return run_theta(cfg, th, out);
        if (c_pad->parsed()) return run_padic(cfg, pad, out);
        if (c_st->parsed()) return run_star(cfg, st, out);
        if (c_self->parsed()) return run_selftest(cfg, out);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
