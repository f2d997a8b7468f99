// Theta expansions: exact coset series, certified numeric sums, and the
// Poisson summation cross-check.

#include <doctest.h>

#include <complex>

#include "symplat/lattice.hpp"
#include "symplat/theta.hpp"

using namespace symplat;

namespace {

lattice::GramLattice diag_lattice(std::vector<int> entries) {
    IMat g(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
    return lattice::GramLattice(std::move(g));
}

std::complex<double> brute_theta(const lattice::GramLattice& lat,
                                 const std::vector<Rat>& coset,
                                 std::complex<double> tau, int box) {
    // direct box scan, rank <= 2 only; the box must cover the mass
    std::complex<double> sum = 0;
    const std::complex<double> pi_i_tau = std::complex<double>(0, 1) * M_PI * tau;
    std::size_t r = lat.rank();
    std::vector<int> idx(r, -box);
    for (;;) {
        std::vector<Rat> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = Rat(idx[i]) + coset[i];
        double q = to_double(lat.norm(v));
        sum += std::exp(pi_i_tau * q);
        std::size_t k = 0;
        while (k < r && ++idx[k] > box) idx[k++] = -box;
        if (k == r) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("e8 root lattice invariants and series head") {
    auto e8 = theta::e8_lattice();
    CHECK(e8.rank() == 8);
    CHECK(e8.det() == 1);
    CHECK(e8.is_even());

    std::vector<Rat> zero(8, Rat(0));
    auto sv = theta::short_vectors(e8, zero, Rat(2));
    CHECK(sv.by_norm.at(Rat(0)).size() == 1);
    CHECK(sv.by_norm.at(Rat(2)).size() == 240);

    auto series = theta::theta_coset(e8, zero, Rat(4));
    CHECK(series.denom == 1);
    CHECK(series.coefficient(Rat(0)) == 1);
    CHECK(series.coefficient(Rat(1)) == 240);
    CHECK(series.coefficient(Rat(2)) == 2160);
    CHECK(series.coefficient(Rat(3)) == 6720);
    CHECK(series.coefficient(Rat(1, 2)) == 0);
}

TEST_CASE("one-dimensional coset series fixtures") {
    auto l2 = diag_lattice({2});
    auto s0 = theta::theta_coset(l2, {Rat(0)}, Rat(10));
    CHECK(s0.denom == 1);
    CHECK(s0.coefficient(Rat(0)) == 1);
    CHECK(s0.coefficient(Rat(1)) == 2);
    CHECK(s0.coefficient(Rat(4)) == 2);
    CHECK(s0.coefficient(Rat(9)) == 2);
    CHECK(s0.coefficient(Rat(2)) == 0);

    auto shalf = theta::theta_coset(l2, {Rat(1, 2)}, Rat(3));
    CHECK(shalf.denom == 4);
    CHECK(shalf.coefficient(Rat(1, 4)) == 2);
    CHECK(shalf.coefficient(Rat(9, 4)) == 2);
}

TEST_CASE("short vector counts match the rank-2 box scan") {
    auto z2 = diag_lattice({1, 1});
    std::vector<Rat> zero(2, Rat(0));
    auto sv = theta::short_vectors(z2, zero, Rat(1));
    CHECK(sv.by_norm.at(Rat(0)).size() == 1);
    CHECK(sv.by_norm.at(Rat(1)).size() == 4);

    IMat g{{2, 1}, {1, 4}};
    lattice::GramLattice skew(std::move(g));
    auto all = theta::short_vectors(skew, zero, Rat(20));
    std::size_t brute = 0;
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b) {
            Rat n = Rat(2 * a * a + 2 * a * b + 4 * b * b);
            if (n <= 20) ++brute;
        }
    CHECK(all.total_count() == brute);
}

TEST_CASE("series evaluation agrees with the certified numeric sum") {
    auto l2 = diag_lattice({2});
    std::vector<Rat> coset{Rat(1, 2)};
    std::complex<double> tau(0.0, 2.0);
    auto series = theta::theta_coset(l2, coset, Rat(8));
    std::complex<double> from_series = 0;
    for (const auto& [num, c] : series.coeffs) {
        double e = to_double(Rat(num, series.denom));
        from_series += to_double(Rat(c)) *
                       std::exp(std::complex<double>(0, 2) * M_PI * tau * e);
    }
    auto numeric = theta::theta_numeric(l2, coset, tau);
    CHECK(std::abs(numeric - from_series) < 1e-10);
    CHECK(std::abs(numeric - brute_theta(l2, coset, tau, 12)) < 1e-10);
}

TEST_CASE("numeric sum matches the box scan off the imaginary axis") {
    auto z2 = diag_lattice({1, 1});
    std::vector<Rat> coset{Rat(1, 3), Rat(2, 7)};
    std::complex<double> tau(0.4, 0.9);
    auto numeric = theta::theta_numeric(z2, coset, tau);
    CHECK(std::abs(numeric - brute_theta(z2, coset, tau, 14)) < 1e-9);
}

TEST_CASE("periodicity in tau with the lattice level") {
    auto l2 = diag_lattice({2});
    CHECK(lattice::lattice_level(l2) == 4);
    std::vector<Rat> coset{Rat(1, 2)};
    std::complex<double> tau(0.3, 1.0);
    auto a = theta::theta_numeric(l2, coset, tau);
    auto b = theta::theta_numeric(l2, coset, tau + 4.0);
    CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("poisson summation residuals stay at machine precision") {
    auto z1 = diag_lattice({1});
    CHECK(theta::poisson_check(z1, 1.0) < 1e-12);
    auto d2 = diag_lattice({1, 3});
    CHECK(theta::poisson_check(d2, 0.7) < 1e-10);
    CHECK(theta::poisson_check(lattice::rescale(d2, Int(3)), 1.3) < 1e-10);
    CHECK(theta::poisson_check(theta::e8_lattice(), 1.0) < 1e-10);
}

TEST_CASE("modular inversion on the self-dual lattice") {
    auto e8 = theta::e8_lattice();
    std::vector<Rat> zero(8, Rat(0));
    std::complex<double> tau(1.0 / 3.0, 1.0);
    auto lhs = theta::theta_numeric(e8, zero, -1.0 / tau);
    auto rhs = std::pow(tau / std::complex<double>(0, 1), 4.0) *
               theta::theta_numeric(e8, zero, tau);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-8);
}

TEST_CASE("coset symmetry and integer shifts") {
    IMat g{{2, 1}, {1, 4}};
    lattice::GramLattice lat(std::move(g));
    std::vector<Rat> coset{Rat(1, 3), Rat(2, 7)};
    std::vector<Rat> minus{Rat(-1, 3), Rat(-2, 7)};
    std::vector<Rat> shifted{Rat(4, 3), Rat(2, 7)};
    auto a = theta::theta_coset(lat, coset, Rat(6));
    auto b = theta::theta_coset(lat, minus, Rat(6));
    auto c = theta::theta_coset(lat, shifted, Rat(6));
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.denom == b.denom);
    CHECK(a.coeffs == c.coeffs);
    CHECK(a.coefficient(Rat(0)) == 0);
    std::vector<Rat> zero{Rat(0), Rat(0)};
    CHECK(theta::theta_coset(lat, zero, Rat(6)).coefficient(Rat(0)) == 1);
}

TEST_CASE("degenerate input and exhausted budgets are rejected") {
    IMat g{{0}};
    CHECK_THROWS_AS(lattice::GramLattice(std::move(g)), std::domain_error);
    auto e8 = theta::e8_lattice();
    std::vector<Rat> z(8, Rat(0));
    CHECK_THROWS_AS(theta::theta_coset(e8, z, Rat(40), 5), std::runtime_error);
    CHECK_THROWS_AS(theta::theta_numeric(e8, z, std::complex<double>(0, -1)),
                    std::domain_error);
}
