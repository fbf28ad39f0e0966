#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tensym/linalg.hpp"
#include "tensym/prng.hpp"

using tensym::ExactMatrix;
using tensym::Rational;
using tensym::Subspace;

namespace {

ExactMatrix random_matrix(std::size_t r, std::size_t c, tensym::SplitMix64& rng) {
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Rational(rng.next_int(-4, 4));
    return m;
}

} // namespace

TEST_CASE("rref of a dependent set drops to the canonical basis") {
    // Rows e11+e22, e11, e22 of a 2x2 space: rank 2, canonical rows e11, e22.
    const ExactMatrix m = ExactMatrix::from_ints({{1, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 0, 1}});
    const auto [red, rk] = tensym::rref(m);
    CHECK(rk == 2);
    CHECK(red == ExactMatrix::from_ints({{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}));
}

TEST_CASE("rref is idempotent and rank matches the transpose") {
    tensym::SplitMix64 rng(11);
    for (int it = 0; it < 50; ++it) {
        const std::size_t r = 1 + rng.next_int(0, 5), c = 1 + rng.next_int(0, 5);
        const ExactMatrix m = random_matrix(r, c, rng);
        const auto [red, rk] = tensym::rref(m);
        const auto [red2, rk2] = tensym::rref(red);
        CHECK(red == red2);
        CHECK(rk == rk2);
        CHECK(rk == tensym::rank(m.transpose()));
    }
}

TEST_CASE("inverse round trips and rejects singular input") {
    tensym::SplitMix64 rng(13);
    int invertible_seen = 0;
    for (int it = 0; it < 60; ++it) {
        const std::size_t n = 1 + rng.next_int(0, 3);
        const ExactMatrix m = random_matrix(n, n, rng);
        if (!tensym::is_invertible(m)) {
            CHECK_THROWS_AS(tensym::inverse(m), tensym::ValidationError);
            continue;
        }
        ++invertible_seen;
        CHECK(m * tensym::inverse(m) == ExactMatrix::identity(n));
        CHECK(tensym::inverse(m) * m == ExactMatrix::identity(n));
    }
    CHECK(invertible_seen > 10);
}

TEST_CASE("matrix product agrees with manual 2x2 and respects shapes") {
    const ExactMatrix a = ExactMatrix::from_ints({{1, 2}, {3, 4}});
    const ExactMatrix b = ExactMatrix::from_ints({{5, 6}, {7, 8}});
    CHECK(a * b == ExactMatrix::from_ints({{19, 22}, {43, 50}}));
    CHECK_THROWS_AS(a * ExactMatrix(3, 2), tensym::DimensionError);
    CHECK_THROWS_AS(a + ExactMatrix(3, 2), tensym::DimensionError);
    CHECK(a.apply(std::vector<Rational>{Rational(1), Rational(-1)}) ==
          std::vector<Rational>{Rational(-1), Rational(-1)});
}

TEST_CASE("span is invariant under row operations and scaling") {
    tensym::SplitMix64 rng(17);
    for (int it = 0; it < 40; ++it) {
        std::vector<std::vector<Rational>> vecs;
        const std::size_t ambient = 4;
        for (int v = 0; v < 3; ++v) {
            std::vector<Rational> x(ambient);
            for (auto& e : x) e = Rational(rng.next_int(-3, 3));
            vecs.push_back(x);
        }
        const Subspace s = Subspace::span(vecs, ambient);
        // Scale a vector, add one to another: the span must not move.
        auto mutated = vecs;
        for (std::size_t j = 0; j < ambient; ++j) {
            mutated[0][j] *= Rational(3);
            mutated[1][j] += mutated[2][j];
        }
        CHECK(Subspace::span(mutated, ambient) == s);
        for (const auto& v : vecs) CHECK(s.contains(v));
    }
}

TEST_CASE("subspace sum and containment") {
    const std::size_t ambient = 3;
    auto line = [&](int a, int b, int c) {
        return Subspace::span({{Rational(a), Rational(b), Rational(c)}}, ambient);
    };
    const Subspace e1 = line(1, 0, 0), e2 = line(0, 1, 0);
    const Subspace plane = e1 + e2;
    CHECK(plane.dim() == 2);
    CHECK(plane.contains(e1));
    CHECK(plane.contains(line(1, 5, 0)));
    CHECK_FALSE(plane.contains(line(0, 0, 1)));
    CHECK(Subspace::zero(ambient).dim() == 0);
    CHECK((plane + plane) == plane);
}

TEST_CASE("is_independent distinguishes line families") {
    const std::size_t ambient = 4;
    auto line = [&](int a, int b, int c, int d) {
        return Subspace::span({{Rational(a), Rational(b), Rational(c), Rational(d)}}, ambient);
    };
    // e11, e11-e12, e21-e22 are independent; e11, e22, e11+e22 are not.
    CHECK(tensym::is_independent({line(1, 0, 0, 0), line(1, -1, 0, 0), line(0, 0, 1, -1)}));
    CHECK_FALSE(tensym::is_independent({line(1, 0, 0, 0), line(0, 0, 0, 1), line(1, 0, 0, 1)}));
    CHECK(tensym::is_independent({}));
    CHECK_THROWS_AS(tensym::is_independent({line(1, 0, 0, 0) + line(0, 1, 0, 0)}),
                    tensym::DimensionError);
}
