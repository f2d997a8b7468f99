// Period geometry: transporters, negative-plane bases, and the orthogonality
// identities attached to an isogeny matrix.

#include <doctest.h>

#include <random>

#include "symplat/isogeny.hpp"
#include "symplat/siegel.hpp"

using namespace symplat;
using siegel::Complex;

namespace {

siegel::SiegelPair random_pair(std::mt19937_64& rng, std::size_t g) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Complex tau(unit(rng), 0.5 + std::abs(unit(rng)));
    Eigen::MatrixXd re(g, g), raw(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            re(i, j) = unit(rng);
            raw(i, j) = unit(rng);
        }
    Eigen::MatrixXd res = 0.5 * (re + re.transpose());
    Eigen::MatrixXd im = raw * raw.transpose() + 0.4 * Eigen::MatrixXd::Identity(g, g);
    Eigen::MatrixXcd tp = res.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
    return siegel::make_pair(tau, tp);
}

isogeny::IsogenyMatrix random_b(std::mt19937_64& rng, std::size_t g) {
    for (;;) {
        IMat m(2 * g, 2);
        for (std::size_t i = 0; i < 2 * g; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = int(rng() % 9) - 4;
        if (isogeny::raw_degree(g, m) > 0) return isogeny::IsogenyMatrix(g, m);
    }
}

}  // namespace

TEST_CASE("scalar transporter fixtures") {
    auto m = siegel::transporter_sl2(Complex(1, 2));
    CHECK(m(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(m(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(m(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m(1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    auto id = siegel::transporter_sl2(Complex(0, 1));
    CHECK((id - Eigen::Matrix2d::Identity()).norm() < 1e-12);
}

TEST_CASE("matrix transporter is symplectic and hits the target point") {
    std::mt19937_64 rng(11);
    for (std::size_t g : {1, 2, 3}) {
        auto pair = random_pair(rng, g);
        auto t = siegel::transporter_sp(pair.tau_prime);
        Eigen::MatrixXd j(2 * g, 2 * g);
        j.setZero();
        j.topRightCorner(g, g) = Eigen::MatrixXd::Identity(g, g);
        j.bottomLeftCorner(g, g) = -Eigen::MatrixXd::Identity(g, g);
        CHECK((t.transpose() * j * t - j).norm() < 1e-10);

        Eigen::MatrixXcd w = t.topLeftCorner(g, g).cast<Complex>();
        Eigen::MatrixXcd x = t.topRightCorner(g, g).cast<Complex>();
        Eigen::MatrixXcd y = t.bottomLeftCorner(g, g).cast<Complex>();
        Eigen::MatrixXcd z = t.bottomRightCorner(g, g).cast<Complex>();
        Eigen::MatrixXcd image =
            (Complex(0, 1) * w + x) * (Complex(0, 1) * y + z).inverse();
        CHECK((image - pair.tau_prime).norm() < 1e-9);
    }
}

TEST_CASE("base-point plane bases have exact gram matrices") {
    for (std::size_t g : {1, 2, 3}) {
        auto bases = siegel::n0_p0_bases(g);
        REQUIRE(bases.n0.basis.size() == 2 * g);
        auto gn = siegel::plane_gram(g, bases.n0);
        CHECK((gn + 2.0 * Eigen::MatrixXd::Identity(2 * g, 2 * g)).norm() == 0.0);
        for (const auto& p : bases.p0)
            for (const auto& n : bases.n0.basis)
                CHECK(siegel::tensor_pairing(g, n, p) == 0.0);
    }
}

TEST_CASE("the mapped plane stays negative definite of the same shape") {
    std::mt19937_64 rng(23);
    for (std::size_t g : {1, 2}) {
        auto pair = random_pair(rng, g);
        auto plane = siegel::phi_plane(pair);
        auto gram = siegel::plane_gram(g, plane);
        CHECK((gram + 2.0 * Eigen::MatrixXd::Identity(2 * g, 2 * g)).norm() < 1e-9);
    }
}

TEST_CASE("identity isogeny gives a vanishing period") {
    isogeny::IsogenyMatrix one(1, IMat::identity(2));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        Complex tau(unit(rng), 0.6 + std::abs(unit(rng)));
        Eigen::MatrixXcd tp(1, 1);
        tp(0, 0) = siegel::matched_tau_prime(one, tau);
        auto rep = siegel::orthogonality_identities(one, siegel::make_pair(tau, tp));
        CHECK(rep.identity_ok);
        CHECK(rep.period_vanishes);
        CHECK(rep.orthogonal);
        CHECK(rep.equivalent);
        CHECK(rep.period_max < 1e-9);
    }
}

TEST_CASE("scaling the matrix preserves the vanishing locus") {
    isogeny::IsogenyMatrix b(1, IMat::identity(2) * Int(3));
    CHECK(b.degree() == 9);
    Complex tau(0.3, 1.1);
    Eigen::MatrixXcd tp(1, 1);
    tp(0, 0) = siegel::matched_tau_prime(b, tau);
    auto rep = siegel::orthogonality_identities(b, siegel::make_pair(tau, tp));
    CHECK(rep.period_vanishes);
    CHECK(rep.equivalent);
}

TEST_CASE("orthogonality identities hold off the vanishing locus") {
    std::mt19937_64 rng(31);
    for (std::size_t g : {1, 2}) {
        for (int t = 0; t < 60; ++t) {
            auto b = random_b(rng, g);
            auto pair = random_pair(rng, g);
            auto rep = siegel::orthogonality_identities(b, pair);
            CHECK(rep.identity_ok);
            CHECK(rep.equivalent);
            CHECK(!rep.period_vanishes);
        }
    }
}

TEST_CASE("embedded zero cases vanish in higher genus") {
    isogeny::IsogenyMatrix one(1, IMat::identity(2));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 25; ++t) {
        Complex tau(unit(rng), 0.7 + std::abs(unit(rng)));
        Complex spectator(0.25 + 0.3 * unit(rng), 1.1);
        auto [b2, pair] = siegel::embed_zero_case(one, tau, spectator);
        auto rep = siegel::orthogonality_identities(b2, pair);
        CHECK(rep.identity_ok);
        CHECK(rep.period_vanishes);
        CHECK(rep.period_max < 1e-9);
    }
}

TEST_CASE("plane at the base point recovers the reference basis") {
    for (std::size_t g : {1, 2}) {
        Eigen::MatrixXcd tp = Complex(0, 1) * Eigen::MatrixXcd::Identity(g, g);
        auto pair = siegel::make_pair(Complex(0, 1), tp);
        auto plane = siegel::phi_plane(pair);
        auto dist = siegel::plane_distance(plane, siegel::n0_p0_bases(g).n0);
        CHECK(dist < 1e-9);
    }
}

TEST_CASE("plane distance is a pseudometric on spans") {
    std::mt19937_64 rng(47);
    auto pair = random_pair(rng, 2);
    auto other = random_pair(rng, 2);
    auto a = siegel::phi_plane(pair);
    auto b = siegel::phi_plane(other);
    CHECK(siegel::plane_distance(a, a) < 1e-12);
    CHECK(siegel::plane_distance(a, b) == doctest::Approx(siegel::plane_distance(b, a)));
    CHECK(siegel::plane_distance(a, b) > 0);
}
