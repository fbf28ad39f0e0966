#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tensym/tensor.hpp"

using tensym::DenseTensor;
using tensym::FactorShape;
using tensym::Rank1Tensor;
using tensym::Rational;

namespace {

std::vector<Rational> v2(int a, int b) { return {Rational(a), Rational(b)}; }

Rank1Tensor six(std::array<std::array<int, 2>, 6> f) {
    std::vector<std::vector<Rational>> factors;
    for (const auto& x : f) factors.push_back(v2(x[0], x[1]));
    return Rank1Tensor(FactorShape({2, 2, 2, 2, 2, 2}), std::move(factors));
}

} // namespace

TEST_CASE("flatten and unflatten are inverse, last factor fastest") {
    const FactorShape shape({2, 3, 4});
    CHECK(shape.total() == 24);
    std::size_t flat = 0;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t c = 0; c < 4; ++c, ++flat) {
                const std::size_t multi[3] = {a, b, c};
                CHECK(shape.flatten(multi) == flat);
                CHECK(shape.unflatten(flat) == std::vector<std::size_t>{a, b, c});
            }
    CHECK_THROWS_AS(shape.flatten(std::vector<std::size_t>{2, 0, 0}), tensym::DimensionError);
    CHECK_THROWS_AS(FactorShape({2, 0}), tensym::DimensionError);
}

TEST_CASE("rank-1 expansion matches the outer product by hand") {
    const Rank1Tensor t(FactorShape({2, 2}), {v2(1, 2), v2(3, 4)});
    const DenseTensor d = t.expand();
    CHECK(d.entries() == std::vector<Rational>{Rational(3), Rational(4), Rational(6), Rational(8)});
    CHECK_THROWS_AS(Rank1Tensor(FactorShape({2, 2}), {v2(0, 0), v2(3, 4)}),
                    tensym::ValidationError);
    CHECK_THROWS_AS(Rank1Tensor(FactorShape({2, 2}), {v2(1, 0)}), tensym::DimensionError);
}

TEST_CASE("structure tensor has one 1 per (i,j,k) at the matrix-unit indices") {
    const DenseTensor s = tensym::structure_tensor(2, 2, 2);
    CHECK(s.shape() == FactorShape({4, 4, 4}));
    Rational total;
    for (const Rational& x : s.entries()) {
        CHECK((x.is_zero() || x.is_one()));
        total += x;
    }
    CHECK(total == Rational(8));
    // Example: i=0, j=1, k=0 puts a 1 at (e01, e10, e00).
    const std::size_t idx[3] = {1, 2, 0};
    CHECK(s.at(idx).is_one());

    const DenseTensor s234 = tensym::structure_tensor(2, 3, 4);
    CHECK(s234.shape() == FactorShape({6, 12, 8}));
    Rational total234;
    for (const Rational& x : s234.entries()) total234 += x;
    CHECK(total234 == Rational(24));
}

TEST_CASE("mu form converts to structure form and back") {
    for (auto [m, n, p] : {std::array<std::size_t, 3>{2, 2, 2}, {2, 3, 4}, {3, 2, 5}}) {
        const DenseTensor s = tensym::structure_tensor(m, n, p);
        const DenseTensor mu = tensym::mu_structure_tensor(m, n, p);
        CHECK(tensym::mu_to_structure(mu, m, n, p) == s);
        CHECK(tensym::structure_to_mu(s, m, n, p) == mu);
        CHECK(tensym::mu_to_structure(tensym::structure_to_mu(s, m, n, p), m, n, p) == s);
    }
}

TEST_CASE("delta products: eight ones, and the two named regroupings") {
    const DenseTensor d246 = tensym::delta_product(2, 4, 6);
    const DenseTensor d624 = tensym::delta_product(6, 2, 4);
    const DenseTensor d462 = tensym::delta_product(4, 6, 2);
    for (const DenseTensor* t : {&d246, &d624, &d462}) {
        Rational total;
        for (const Rational& x : t->entries()) total += x;
        CHECK(total == Rational(8));
    }
    // Pairing positions 1-6, 3-2, 5-4 reproduces the regrouped S(2,2,2).
    CHECK(d624 == tensym::reshape_3to6(tensym::structure_tensor(2, 2, 2)));
    // Pairing within each V (x) V* slot gives the full diagonal.
    std::vector<std::size_t> idx = {1, 1, 0, 0, 1, 1};
    CHECK(d246.at(idx).is_one());
    idx = {1, 0, 0, 0, 1, 1};
    CHECK(d246.at(idx).is_zero());
    CHECK_FALSE(d246 == d624);
    CHECK_FALSE(d246 == d462);
    CHECK_FALSE(d624 == d462);
    CHECK_THROWS_AS(tensym::delta_product(2, 4, 5), tensym::DimensionError);
}

TEST_CASE("reshape between three and six factors is a flat relabelling") {
    const DenseTensor s = tensym::structure_tensor(2, 2, 2);
    const DenseTensor six_ = tensym::reshape_3to6(s);
    CHECK(six_.entries() == s.entries());
    CHECK(tensym::reshape_6to3(six_) == s);
    // Index correspondence: (2*i1+j1, 2*i2+j2, 2*i3+j3) <-> (i1,j1,i2,j2,i3,j3).
    const std::size_t three[3] = {1, 2, 0};
    const std::size_t sixidx[6] = {0, 1, 1, 0, 0, 0};
    CHECK(s.at(three) == six_.at(sixidx));
}

TEST_CASE("pairing and line representatives") {
    CHECK(tensym::pairing(v2(1, 2), v2(3, 4)) == Rational(11));
    CHECK(tensym::line_representative(v2(0, -2)) == v2(0, 1));
    CHECK(tensym::line_representative(std::vector<Rational>{Rational(-3), Rational(6)}) ==
          std::vector<Rational>{Rational(1), Rational(-2)});
    CHECK_THROWS_AS(tensym::line_representative(v2(0, 0)), tensym::ValidationError);
}

TEST_CASE("regularity checks each of the three conditions") {
    // A known regular element.
    const Rank1Tensor good = six({{{1, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 1}, {1, -1}}});
    CHECK(tensym::is_regular_element(good));
    // Scaling one factor changes the tensor and breaks the -1 product.
    const Rank1Tensor scaled = six({{{2, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 1}, {1, -1}}});
    CHECK_FALSE(tensym::is_regular_element(scaled));
    // Permuting the even factors keeps the line sets but breaks orthogonality.
    const Rank1Tensor swapped = six({{{1, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 1}, {1, -1}}});
    CHECK_FALSE(tensym::is_regular_element(swapped));
    // A line outside the required configuration fails condition 1.
    const Rank1Tensor off = six({{{1, 0}, {1, 0}, {1, 2}, {0, 1}, {0, 1}, {1, -1}}});
    CHECK_FALSE(tensym::is_regular_element(off));
    CHECK_THROWS_AS(tensym::is_regular_element(Rank1Tensor(FactorShape({2, 2}), {v2(1, 0), v2(1, 0)})),
                    tensym::DimensionError);
}

TEST_CASE("adjacency counts differing factor lines") {
    const Rank1Tensor a = six({{{1, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 1}, {1, -1}}});
    const Rank1Tensor a_scaled = six({{{3, 0}, {1, 0}, {1, 1}, {0, 2}, {0, 1}, {1, -1}}});
    const Rank1Tensor one_off = six({{{0, 1}, {1, 0}, {1, 1}, {0, 1}, {0, 1}, {1, -1}}});
    const Rank1Tensor two_off = six({{{0, 1}, {1, 1}, {1, 1}, {0, 1}, {0, 1}, {1, -1}}});
    CHECK_FALSE(tensym::are_adjacent(a, a));
    CHECK_FALSE(tensym::are_adjacent(a, a_scaled)); // same lines, just rescaled
    CHECK(tensym::are_adjacent(a, one_off));
    CHECK_FALSE(tensym::are_adjacent(a, two_off));
}

TEST_CASE("multiset comparison of dense tensors") {
    const DenseTensor s = tensym::structure_tensor(2, 2, 2);
    const DenseTensor d = tensym::reshape_6to3(tensym::delta_product(2, 4, 6));
    CHECK(tensym::same_multiset({s, d}, {d, s}));
    CHECK_FALSE(tensym::same_multiset({s, s}, {d, s}));
    CHECK_FALSE(tensym::same_multiset({s}, {s, s}));
}
