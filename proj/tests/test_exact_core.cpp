// Exact arithmetic, Smith normal form, and the symplectic tensor lattice.

#include <doctest.h>

#include <set>

#include "symplat/lattice.hpp"
#include "symplat/matrix.hpp"
#include "symplat/numeric.hpp"
#include "symplat/snf.hpp"

using namespace symplat;

TEST_CASE("floor division and square roots") {
    CHECK(floor_div(Int(7), Int(2)) == 3);
    CHECK(floor_div(Int(-7), Int(2)) == -4);
    CHECK(mod_floor(Int(-7), Int(2)) == 1);
    CHECK(floor_sqrt(Rat(49)) == 7);
    CHECK(floor_sqrt(Rat(50)) == 7);
    CHECK(floor_sqrt(Rat(1, 2)) == 0);
    CHECK_THROWS_AS(floor_sqrt(Rat(-1)), std::domain_error);
    CHECK(to_string(Rat(3, 6)) == "1/2");
    CHECK(to_string(Rat(4, 2)) == "2");
}

TEST_CASE("matrix product and determinant stay exact") {
    IMat a{{3, 1}, {4, 2}};
    IMat b{{1, 0}, {-2, 1}};
    IMat ab = a * b;
    CHECK(ab(0, 0) == 1);
    CHECK(ab(1, 0) == 0);
    // 40-digit entries would overflow any fixed-width type
    IMat big(2, 2);
    Int huge = Int("1000000000000000000000000000000000000000");
    big(0, 0) = huge;
    big(1, 1) = huge;
    CHECK(det_bareiss(big) == huge * huge);
}

TEST_CASE("smith normal form of a full-rank fixture") {
    IMat a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    auto s = smith_normal_form(a);
    REQUIRE(s.divisors.size() == 3);
    CHECK(s.divisors[0] == 2);
    CHECK(s.divisors[1] == 6);
    CHECK(s.divisors[2] == 12);
    CHECK(det_bareiss(s.u) * det_bareiss(s.u) == 1);
    CHECK(det_bareiss(s.v) * det_bareiss(s.v) == 1);
    IMat uav = s.u * a * s.v;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(uav(i, j) == s.d(i, j));
}

TEST_CASE("smith normal form handles rank deficiency and zero") {
    IMat a{{1, 2}, {2, 4}};
    auto s = smith_normal_form(a);
    REQUIRE(s.divisors.size() == 1);
    CHECK(s.divisors[0] == 1);
    IMat z(2, 2);
    CHECK(smith_normal_form(z).divisors.empty());
}

TEST_CASE("tensor lattice shape and pairing table") {
    for (std::size_t g : {1, 2, 3}) {
        auto lat = lattice::tensor_symplectic(g);
        CHECK(lat.rank() == 4 * g);
        CHECK(lat.is_even());
        Int d = lat.det();
        CHECK((d == 1 || d == -1));
        auto sig = lattice::signature(lat);
        CHECK(sig.first == int(2 * g));
        CHECK(sig.second == int(2 * g));
        // hyperbolic pairs: e tensor e'_k with f tensor f'_k, and
        // e tensor f'_k with f tensor e'_k carrying the sign
        std::vector<Rat> basis(4 * g, Rat(0));
        for (std::size_t k = 0; k < g; ++k) {
            std::vector<Rat> a(4 * g, Rat(0)), b(4 * g, Rat(0));
            a[k] = 1;
            b[3 * g + k] = 1;
            CHECK(lat.pair(a, b) == 1);
            a[k] = 0;
            a[g + k] = 1;
            b[3 * g + k] = 0;
            b[2 * g + k] = 1;
            CHECK(lat.pair(a, b) == -1);
        }
    }
}

TEST_CASE("discriminant group of the rescaled tensor lattice") {
    auto lat = lattice::tensor_symplectic(2);
    auto d0 = lattice::discriminant_group(lat);
    CHECK(d0.order == 1);
    CHECK(d0.describe() == "(Z/1)^0 (trivial)");

    auto l3 = lattice::rescale(lat, Int(3));
    auto d3 = lattice::discriminant_group(l3);
    CHECK(d3.order == 6561);
    CHECK(d3.invariant_factors.size() == 8);
    for (const auto& f : d3.invariant_factors) CHECK(f == 3);
    CHECK(d3.describe() == "(Z/3)^8");

    auto l6 = lattice::rescale(lattice::tensor_symplectic(1), Int(6));
    auto d6 = lattice::discriminant_group(l6);
    CHECK(d6.order == 1296);
    for (const auto& f : d6.invariant_factors) CHECK(f == 6);
}

TEST_CASE("lattice level of rescalings") {
    auto lat = lattice::tensor_symplectic(2);
    CHECK(lattice::lattice_level(lat) == 1);
    CHECK(lattice::lattice_level(lattice::rescale(lat, Int(3))) == 3);
    CHECK(lattice::lattice_level(lattice::rescale(lat, Int(4))) == 4);
}

TEST_CASE("coset representatives enumerate the discriminant group") {
    auto l2 = lattice::rescale(lattice::tensor_symplectic(1), Int(2));
    auto reps = lattice::coset_representatives(l2);
    CHECK(reps.size() == 16);
    std::set<std::vector<Rat>> distinct(reps.begin(), reps.end());
    CHECK(distinct.size() == 16);
}

TEST_CASE("lattice documents round-trip") {
    auto lat = lattice::rescale(lattice::tensor_symplectic(1), Int(5));
    auto doc = lattice::to_document(lat);
    auto back = lattice::from_document(doc);
    CHECK(back.rank() == lat.rank());
    CHECK(back.det() == lat.det());
    for (std::size_t i = 0; i < lat.rank(); ++i)
        for (std::size_t j = 0; j < lat.rank(); ++j)
            CHECK(back.gram()(i, j) == lat.gram()(i, j));
    CHECK_THROWS_AS(lattice::from_document("not json"), std::invalid_argument);
    CHECK_THROWS_AS(lattice::from_document("{\"rank\": 2}"), std::invalid_argument);
}

TEST_CASE("degenerate grams are rejected where signatures are needed") {
    QMat g{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
    CHECK_THROWS_AS(symmetric_signature(g), std::domain_error);
}
