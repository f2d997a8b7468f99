// Isogeny matrices: degrees, the norm dictionary, symplectic reduction, and
// the two-sided group action with its certified censuses.

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "symplat/isogeny.hpp"
#include "symplat/lattice.hpp"
#include "symplat/orbits.hpp"

using namespace symplat;
using isogeny::IsogenyMatrix;

namespace {

IMat basis_matrix(std::size_t g, int col0, int col1) {
    // columns picked from the standard basis, indexed 0..4g-1
    IMat m(2 * g, 2);
    m(col0 % (2 * g), 0) = 1;
    m(col1 % (2 * g), 1) = 1;
    return m;
}

}  // namespace

TEST_CASE("degree and the antisymmetry residue") {
    // columns e1, e3 in genus 2 pair to the identity degree
    IMat m(4, 2);
    m(0, 0) = 1;
    m(2, 1) = 1;
    IsogenyMatrix b(2, m);
    CHECK(b.degree() == 1);

    // raw_degree is defined for every integer matrix, sign included
    IMat junk{{3, 1}, {0, 2}, {5, -1}, {2, 2}};
    CHECK(isogeny::raw_degree(2, junk) == -12);
    IMat swapped{{1, 3}, {2, 0}, {-1, 5}, {2, 2}};
    CHECK(isogeny::raw_degree(2, swapped) == 12);
    IsogenyMatrix jb(2, swapped);
    CHECK(jb.degree() == 12);
    CHECK_THROWS_AS(IsogenyMatrix(2, junk), std::domain_error);

    IMat neg(2, 2);
    neg(0, 0) = 1;
    neg(1, 1) = -1;
    CHECK_THROWS_AS(IsogenyMatrix(1, neg), std::domain_error);
}

TEST_CASE("homology coordinates round-trip") {
    IMat m{{1, 2}, {3, 4}, {5, 6}, {7, 8}};
    if (isogeny::raw_degree(2, m) <= 0) m(0, 0) = 11;
    REQUIRE(isogeny::raw_degree(2, m) > 0);
    IsogenyMatrix b(2, m);
    auto h = isogeny::to_homology(b);
    auto back = isogeny::from_homology(2, h);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(back.entries()(i, j) == m(i, j));
}

TEST_CASE("tensor vectors have norm twice the degree") {
    std::mt19937_64 rng(42);
    auto lat1 = lattice::tensor_symplectic(1);
    auto lat2 = lattice::tensor_symplectic(2);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t g = 1 + (trial & 1);
        const auto& lat = g == 1 ? lat1 : lat2;
        IMat m(2 * g, 2);
        for (std::size_t i = 0; i < 2 * g; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = int(rng() % 7) - 3;
        Int d = isogeny::raw_degree(g, m);
        if (d <= 0) continue;
        IsogenyMatrix b(g, m);
        auto v = isogeny::tensor_vector(b);
        std::vector<Rat> vq(v.begin(), v.end());
        CHECK(lat.norm(vq) == Rat(2 * d));
        auto back = isogeny::matrix_of_vector(g, v);
        for (std::size_t i = 0; i < 2 * g; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(back.entries()(i, j) == m(i, j));
    }
}

TEST_CASE("symplectic reduction fixtures") {
    // plain basis pair reduces to itself
    IsogenyMatrix b1(2, basis_matrix(2, 0, 2));
    auto r1 = isogeny::symplectic_reduce(b1);
    CHECK(r1.d1 == 1);
    CHECK(r1.d2 == 1);
    CHECK(r1.pair_divisor == 1);
    CHECK(r1.divisor_pair() == std::pair<Int, Int>(Int(1), Int(1)));

    // doubling scales both divisors
    IsogenyMatrix b2(2, basis_matrix(2, 0, 2) * Int(2));
    auto r2 = isogeny::symplectic_reduce(b2);
    CHECK(r2.d1 == 2);
    CHECK(r2.d2 == 2);

    // the pair divisor can be strictly finer than the elementary divisors:
    // columns e1 and e2 + 2 f1 have unimodular column lattice but pairing 2
    IMat m3(4, 2);
    m3(0, 0) = 1;
    m3(1, 1) = 1;
    m3(2, 1) = 2;
    IsogenyMatrix b3(2, m3);
    auto r3 = isogeny::symplectic_reduce(b3);
    CHECK(r3.d1 == 1);
    CHECK(r3.d2 == 1);
    CHECK(r3.pair_divisor == 2);
    CHECK(r3.unit_residue == 1);
    CHECK(r3.divisor_pair() == std::pair<Int, Int>(Int(1), Int(2)));
}

TEST_CASE("reduction invariants survive random group words") {
    std::mt19937_64 rng(7);
    auto moves = isogeny::action_generators(2, Int(1));
    for (int trial = 0; trial < 200; ++trial) {
        IMat m(4, 2);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = int(rng() % 5) - 2;
        Int d = isogeny::raw_degree(2, m);
        if (d <= 0) continue;
        IsogenyMatrix b(2, m);
        auto base = isogeny::symplectic_reduce(b);
        CHECK(base.d1 * base.d2 * base.pair_divisor == d);
        CHECK(isogeny::is_symplectic(2, base.delta));
        CHECK(det_bareiss(base.gamma) == 1);

        IsogenyMatrix moved = b;
        for (int k = 0; k < 6; ++k)
            moved = isogeny::apply_move(moved, moves[rng() % moves.size()]);
        CHECK(moved.degree() == d);
        auto after = isogeny::symplectic_reduce(moved);
        CHECK(after.d1 == base.d1);
        CHECK(after.d2 == base.d2);
        CHECK(after.pair_divisor == base.pair_divisor);
    }
}

TEST_CASE("enumeration matches a brute-force determinant scan") {
    auto listed = isogeny::enumerate(1, Int(1), Int(1));
    long brute = 0;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                for (int d = -1; d <= 1; ++d)
                    if (a * d - b * c == 1) ++brute;
    CHECK(long(listed.size()) == brute);

    auto parallel = isogeny::enumerate(1, Int(1), Int(1), std::nullopt, 4);
    REQUIRE(parallel.size() == listed.size());
    for (std::size_t i = 0; i < listed.size(); ++i)
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c)
                CHECK(parallel[i].entries()(r, c) == listed[i].entries()(r, c));
}

TEST_CASE("level filter keeps only matrices with the residue datum") {
    isogeny::LevelDatum datum{Int(2), IMat::identity(2)};
    auto filtered = isogeny::enumerate(1, Int(1), Int(3), datum);
    CHECK(!filtered.empty());
    for (const auto& b : filtered)
        CHECK(isogeny::congruence_check(b, datum.n, datum.residue));
    auto all = isogeny::enumerate(1, Int(1), Int(3));
    CHECK(filtered.size() < all.size());
}

TEST_CASE("orbit census finds a single class for the basic strata") {
    auto rep = orbits::orbit_census(1, Int(1), Int(1), Int(1), 6, 2);
    CHECK(rep.classes.size() == 1);
    auto rep2 = orbits::orbit_census(1, Int(1), Int(1), Int(2), 8, 2);
    CHECK(rep2.classes.size() == 1);
    auto j = rep2.to_json();
    CHECK(j.contains("classes"));
}

TEST_CASE("reduction evidence certifies whole degree strata") {
    for (int d = 1; d <= 3; ++d) {
        auto ev = orbits::reduction_evidence(2, Int(d), Int(1));
        CHECK(ev.divisor_ok);
        CHECK(ev.complete());
        CHECK(ev.certified == ev.matrices);
        CHECK(ev.matrices > 0);
    }
}
