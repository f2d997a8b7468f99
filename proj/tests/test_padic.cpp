// Exact p-adic layer: cyclotomic characters, box functions and their Fourier
// transforms, the Siegel-Weil section, and the attached local invariants.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "symplat/cyclotomic.hpp"
#include "symplat/localsection.hpp"
#include "symplat/schwartz.hpp"

using namespace symplat;
using padic::Box;
using padic::Coord;
using padic::Cyclotomic;
using padic::Schwartz;

TEST_CASE("additive character relations") {
    CHECK(Cyclotomic::psi(Int(5), Rat(0)).rational_value() == 1);
    CHECK(Cyclotomic::psi(Int(5), Rat(2)).rational_value() == 1);

    // full sum over a period vanishes
    Cyclotomic sum(Int(5));
    for (int j = 0; j < 5; ++j) sum += Cyclotomic::psi(Int(5), Rat(j, 5));
    CHECK(sum.is_zero());

    // additivity at level two, and compression of p-th powers to level one
    auto a = Cyclotomic::psi(Int(5), Rat(1, 25)) * Cyclotomic::psi(Int(5), Rat(3, 25));
    CHECK(a == Cyclotomic::psi(Int(5), Rat(4, 25)));
    Cyclotomic pw = Cyclotomic::psi(Int(5), Rat(1, 25));
    auto fifth = pw * pw * pw * pw * pw;
    CHECK(fifth == Cyclotomic::psi(Int(5), Rat(1, 5)));
    CHECK(fifth.level() == 1);

    CHECK(Cyclotomic::psi(Int(2), Rat(1, 2)).rational_value() == -1);
    auto omega = Cyclotomic::psi(Int(3), Rat(1, 3)).to_complex();
    CHECK(std::abs(omega - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-12);

    CHECK_THROWS_AS(Cyclotomic::psi(Int(5), Rat(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(Cyclotomic::psi(Int(3), Rat(1, 3)).rational_value(),
                    std::domain_error);
}

TEST_CASE("box centers reduce canonically") {
    CHECK(Box::reduce_center(Int(5), Rat(7), 1) == 2);
    CHECK(Box::reduce_center(Int(5), Rat(1, 5), 1) == Rat(1, 5));
    CHECK(Box::reduce_center(Int(5), Rat(26, 5), 1) == Rat(1, 5));
    CHECK(Box::reduce_center(Int(5), Rat(3), -1) == 0);
    CHECK_THROWS_AS(Box::reduce_center(Int(5), Rat(1, 3), 1), std::invalid_argument);

    Box b(Int(5), {Coord{Rat(2), 1}, Coord{Rat(0), -2}});
    CHECK(b.volume() == 5);
    CHECK(b.contains({Rat(7), Rat(25)}));
    CHECK(!b.contains({Rat(1), Rat(0)}));
}

TEST_CASE("indicators form an exact function algebra") {
    Int p(5);
    Box unit(p, {Coord{Rat(0), 0}});
    auto phi = Schwartz::indicator(unit);
    CHECK(phi.integral().rational_value() == 1);
    CHECK(phi.evaluate({Rat(3)}).rational_value() == 1);
    CHECK(phi.evaluate({Rat(1, 5)}).is_zero());

    // splitting into residue cosets represents the same function
    Schwartz split(p, 1);
    for (int j = 0; j < 5; ++j)
        split.add_term(Cyclotomic(p, Rat(1)), Box(p, {Coord{Rat(j), 1}}));
    CHECK(split.same_function(phi));
    auto diff = split - phi;
    diff.normalize();
    CHECK(diff.terms().empty());

    // reflection swaps the nontrivial cosets
    Box one(p, {Coord{Rat(1), 1}});
    auto refl = Schwartz::indicator(one).reflected();
    CHECK(refl.evaluate({Rat(4)}).rational_value() == 1);
    CHECK(refl.evaluate({Rat(1)}).is_zero());
}

TEST_CASE("fourier transform fixtures") {
    // Z_p is self-dual
    Int p(3);
    auto phi = Schwartz::indicator(Box(p, {Coord{Rat(0), 0}}));
    auto hat = padic::fourier_transform(phi, padic::full_fourier_spec(1));
    CHECK(hat.same_function(phi));

    // a shifted coset picks up the character and spreads to the dual radius
    auto shifted = Schwartz::indicator(Box(p, {Coord{Rat(1), 1}}));
    auto shat = padic::fourier_transform(shifted, padic::full_fourier_spec(1));
    CHECK(std::abs(shat.evaluate({Rat(0)}).to_complex() - 1.0 / 3.0) < 1e-15);
    auto at_third = shat.evaluate({Rat(1, 3)}).to_complex();
    CHECK(std::abs(at_third - std::polar(1.0 / 3.0, 2.0 * M_PI / 3.0)) < 1e-12);
    CHECK(shat.evaluate({Rat(1, 9)}).is_zero());

    padic::FourierSpec bad{{0, true, 2}};
    CHECK_THROWS_AS(padic::fourier_transform(phi, bad), std::invalid_argument);
}

TEST_CASE("double transform is the reflection, and plancherel holds") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 6; ++trial) {
        Int p(trial % 2 == 0 ? 2 : 3);
        Schwartz phi(p, 2);
        for (int t = 0; t < 3; ++t) {
            std::vector<Coord> c;
            for (int i = 0; i < 2; ++i) {
                int depth = int(rng() % 3) - 1;
                Rat center = Rat(Int(rng() % 9));
                if (depth < 0) center /= Rat(p);
                c.push_back(Coord{Box::reduce_center(p, center, depth), depth});
            }
            phi.add_term(Cyclotomic(p, Rat(1 + int(rng() % 3))), Box(p, c));
        }
        auto spec = padic::full_fourier_spec(2);
        auto hat = padic::fourier_transform(phi, spec);
        CHECK(hat.evaluate({Rat(0), Rat(0)}) == phi.integral());
        auto hathat = padic::fourier_transform(hat, spec);
        CHECK(hathat.same_function(phi.reflected()));
    }
}

TEST_CASE("similitude scaling moves the support and the mass") {
    Int p(5);
    Schwartz phi(p, 4);
    std::vector<Coord> z(4, Coord{Rat(0), 0});
    phi.add_term(Cyclotomic(p, Rat(1)), Box(p, z));
    QMat act = QMat::identity(4) * Rat(5);
    auto scaled = padic::weil_scaling(phi, act, Rat(5), 2, 1);
    std::vector<Rat> five(4, Rat(5));
    CHECK(scaled.evaluate(five).rational_value() == 5);
    std::vector<Rat> one(4, Rat(1));
    CHECK(scaled.evaluate(one).is_zero());
    CHECK_THROWS_AS(padic::weil_scaling(phi, act, Rat(5), 1, 1), std::domain_error);
}

TEST_CASE("polarization spec squares to the identity on the level function") {
    for (long n : {1, 5, 25}) {
        auto phi = padic::level_indicator(Int(5), Int(n));
        auto spec = padic::matrix_polarization_spec();
        auto once = padic::fourier_transform(phi, spec);
        auto twice = padic::fourier_transform(once, spec);
        CHECK(twice.same_function(phi));
    }
}

TEST_CASE("siegel-weil section values at the distinguished probes") {
    auto phi = padic::level_indicator(Int(5), Int(5));
    CHECK(padic::siegel_weil_section(phi, QMat::identity(2)).rational_value() == 1);
    QMat sing(2, 2);
    CHECK_THROWS_AS(padic::siegel_weil_section(phi, sing), std::domain_error);

    padic::InducedSection sec(Int(5), Int(5));
    CHECK(sec.depth() == 1);
    CHECK(sec.in_support(QMat::identity(2)));
    CHECK(sec.value(QMat::identity(2)) == 1);
    QMat diag{{Rat(5), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK(sec.value(diag) == Rat(1, 5));
    QMat w{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}};
    CHECK(!sec.in_support(w));
    QMat lower{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
    CHECK(!sec.in_support(lower));
    QMat deeper{{Rat(1), Rat(0)}, {Rat(5), Rat(1)}};
    CHECK(sec.in_support(deeper));
}

TEST_CASE("section identity holds for prime powers and mixed levels") {
    for (auto [p, n] : std::vector<std::pair<long, long>>{
             {2, 2}, {2, 8}, {3, 9}, {5, 5}, {5, 50}, {3, 6}, {7, 21}}) {
        auto r = padic::verify_sw_identity(Int(p), Int(n), 1234);
        CHECK(r.passed());
        int v = 0;
        for (long m = n; m % p == 0; m /= p) ++v;
        for (const auto& probe : r.probes) {
            Rat expect = probe.i < v ? Rat(0) : Rat(p - 1, p);
            CHECK(probe.lhs == expect);
            CHECK(probe.rhs == expect);
        }
    }
    CHECK_THROWS_AS(padic::verify_sw_identity(Int(5), Int(6)), std::domain_error);
}

TEST_CASE("intertwining integral in closed form") {
    auto r = padic::intertwining_value(Int(5), Int(5));
    CHECK(r.closed_form == Rat(1, 5));
    CHECK(r.consistent);
    CHECK(r.w_term == 0);
    CHECK(r.truncated_sum + r.tail == r.closed_form);

    CHECK(padic::intertwining_value(Int(3), Int(9)).closed_form == Rat(1, 9));
    CHECK(padic::intertwining_value(Int(2), Int(8)).closed_form == Rat(1, 8));
    CHECK_THROWS_AS(padic::intertwining_value(Int(5), Int(6)), std::domain_error);
}

TEST_CASE("whittaker torus values of a conductor-one newvector") {
    padic::WhittakerNewform w{Int(5), 1};
    CHECK(padic::whittaker_value(w, Rat(1, 5)).is_zero());

    auto v1 = padic::whittaker_value(w, Rat(1));
    CHECK(v1.coeff == 1);
    CHECK(v1.half_p == 0);
    CHECK(v1.alpha_pow == 0);

    auto vp = padic::whittaker_value(w, Rat(5));
    CHECK(vp.coeff == 1);
    CHECK(vp.half_p == 1);
    CHECK(vp.alpha_pow == 1);

    auto vp2 = padic::whittaker_value(w, Rat(25));
    CHECK(vp2.half_p == 2);
    CHECK(vp2.alpha_pow == 2);

    // numeric multiplicativity across the ladder
    std::complex<double> alpha(0.3, 0.4);
    auto step = vp.numeric(5.0, alpha) / v1.numeric(5.0, alpha);
    CHECK(std::abs(step - alpha / std::sqrt(5.0)) < 1e-14);

    CHECK_THROWS_AS(padic::whittaker_value(w, Rat(0)), std::domain_error);
    padic::WhittakerNewform bad{Int(5), 0};
    CHECK_THROWS_AS(padic::whittaker_value(bad, Rat(1)), std::invalid_argument);
}

TEST_CASE("local zeta factor and its series expansion") {
    padic::WhittakerNewform w1{Int(2), 1}, w2{Int(2), 2};
    auto zf = padic::zeta_factor(w1, w2);
    CHECK(zf.evaluate(Rat(1), Rat(1)) == Rat(4, 3));
    CHECK(zf.evaluate(Rat(0), Rat(17)) == 1);
    CHECK(zf.formula() == "1/(1 - a1*a2*2^-2)");
    CHECK_THROWS_AS(zf.evaluate(Rat(2), Rat(2)), std::domain_error);

    std::complex<double> a1 = std::polar(std::sqrt(2.0), 1.1);
    std::complex<double> a2 = std::polar(std::sqrt(2.0), 2.7);
    CHECK(std::abs(zf.truncated(a1, a2, 40) - zf.evaluate_numeric(a1, a2)) < 1e-12);

    padic::WhittakerNewform other{Int(3), 1};
    CHECK_THROWS_AS(padic::zeta_factor(w1, other), std::invalid_argument);
}

TEST_CASE("translate support against the congruence conditions") {
    Int p(5), n(5);
    auto id = padic::weil_translate_support(p, n, QMat::identity(2));
    CHECK(id.in_support);
    CHECK(id.value.rational_value() == 1);
    CHECK(id.k0_condition);
    CHECK(id.k1_condition);

    QMat lower{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
    auto l = padic::weil_translate_support(p, n, lower);
    CHECK(!l.in_support);
    CHECK(!l.k0_condition);

    QMat upper{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    auto u = padic::weil_translate_support(p, n, upper);
    CHECK(u.in_support);
    CHECK(u.k0_condition);
    CHECK(u.k1_condition);

    // in K_0 but outside K_1: the support follows K_0
    QMat mixed{{Rat(2), Rat(1)}, {Rat(5), Rat(3)}};
    auto m = padic::weil_translate_support(p, n, mixed);
    CHECK(m.in_support);
    CHECK(m.k0_condition);
    CHECK(!m.k1_condition);

    QMat torus{{Rat(5), Rat(0)}, {Rat(0), Rat(1, 5)}};
    CHECK(!padic::weil_translate_support(p, n, torus).in_support);

    QMat notdet{{Rat(2), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK_THROWS_AS(padic::weil_translate_support(p, n, notdet), std::invalid_argument);
}

TEST_CASE("support equals the k0 condition over a random sweep") {
    std::mt19937_64 rng(99);
    for (long p : {2L, 3L, 5L}) {
        for (int v = 1; v <= 2; ++v) {
            Int n = 1;
            for (int i = 0; i < v; ++i) n *= p;
            for (int trial = 0; trial < 30; ++trial) {
                QMat h = QMat::identity(2);
                for (int k = 0; k < 4; ++k) {
                    QMat e = QMat::identity(2);
                    long x = long(rng() % 5) - 2;
                    if (rng() % 2) e(0, 1) = Rat(x);
                    else e(1, 0) = Rat(x * long(p));
                    h = h * e;
                }
                auto r = padic::weil_translate_support(Int(p), n, h);
                CHECK(r.in_support == r.k0_condition);
                CHECK(r.in_support == !r.value.is_zero());
            }
        }
    }
}

TEST_CASE("level indicator integral tracks the level") {
    auto phi = padic::level_indicator(Int(5), Int(50));
    CHECK(phi.integral().rational_value() == Rat(1, 25));
    CHECK_THROWS_AS(padic::level_indicator(Int(5), Int(0)), std::invalid_argument);
}
