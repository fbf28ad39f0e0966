#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "tensym/engine.hpp"
#include "tensym/prng.hpp"

using tensym::CheckedInt64;
using tensym::OperationCounter;
using tensym::Rational;
using tensym::RingMatrix;

namespace {

RingMatrix<long long> random_ll(std::size_t r, std::size_t c, tensym::SplitMix64& rng) {
    RingMatrix<long long> m(r, c);
    for (auto& x : m.data()) x = rng.next_int(-9, 9);
    return m;
}

RingMatrix<double> random_f64(std::size_t r, std::size_t c, tensym::SplitMix64& rng) {
    RingMatrix<double> m(r, c);
    for (auto& x : m.data()) x = rng.next_unit() * 2.0 - 1.0;
    return m;
}

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

double max_rel_err(const RingMatrix<double>& got, const RingMatrix<double>& want) {
    double worst = 0.0, scale = 1.0;
    for (const double v : want.data()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < got.data().size(); ++i)
        worst = std::max(worst, std::abs(got.data()[i] - want.data()[i]) / scale);
    return worst;
}

} // namespace

TEST_CASE("naive multiply: exact result and cubic operation count") {
    RingMatrix<long long> a(2, 2), b(2, 2);
    a.data() = {1, 2, 3, 4};
    b.data() = {5, 6, 7, 8};
    OperationCounter ops;
    const auto c = tensym::naive_multiply(a, b, ops);
    CHECK(c.data() == std::vector<long long>{19, 22, 43, 50});
    CHECK(ops.mults == 8);
    CHECK(ops.adds == 4);

    tensym::SplitMix64 rng(7);
    for (const std::size_t n : {2u, 3u, 5u, 8u}) {
        OperationCounter k;
        tensym::naive_multiply(random_ll(n, n, rng), random_ll(n, n, rng), k);
        CHECK(k.mults == n * n * n);
        CHECK(k.adds == n * n * (n - 1));
    }
    // Rectangular: r*c*k multiplications, r*c*(k-1) additions.
    OperationCounter k;
    tensym::naive_multiply(random_ll(2, 5, rng), random_ll(5, 3, rng), k);
    CHECK(k.mults == 30);
    CHECK(k.adds == 2 * 3 * 4);

    CHECK_THROWS_AS(tensym::naive_multiply(random_ll(2, 3, rng), random_ll(2, 3, rng), k),
                    tensym::DimensionError);
}

TEST_CASE("recursive multiply on powers of two: 7^n products, 6(7^n-4^n) additions") {
    tensym::SplitMix64 rng(11);
    for (unsigned n = 1; n <= 4; ++n) {
        const std::size_t size = 1u << n;
        const auto a = random_ll(size, size, rng);
        const auto b = random_ll(size, size, rng);
        OperationCounter naive_ops, fast_ops;
        const auto want = tensym::naive_multiply(a, b, naive_ops);
        const auto got = tensym::strassen_multiply(a, b, 1, fast_ops);
        CHECK(got.data() == want.data());
        CHECK(fast_ops.mults == pow_u64(7, n));
        CHECK(fast_ops.adds == 6 * (pow_u64(7, n) - pow_u64(4, n)));
    }
}

TEST_CASE("cutoff trades recursion depth for base-case work") {
    tensym::SplitMix64 rng(13);
    // On 2^n with cutoff 2^k the recursion bottoms out k levels up:
    // 7^(n-k) base products of size 2^k, each at (2^k)^3 multiplications.
    for (unsigned n = 2; n <= 4; ++n)
        for (unsigned k = 1; k < n; ++k) {
            const std::size_t size = 1u << n;
            const auto a = random_ll(size, size, rng);
            const auto b = random_ll(size, size, rng);
            OperationCounter ops, ref;
            const auto got = tensym::strassen_multiply(a, b, 1u << k, ops);
            CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
            CHECK(ops.mults == pow_u64(7, n - k) * pow_u64(8, k));
        }
    // Cutoff at or above the size degenerates to the schoolbook product.
    OperationCounter ops;
    tensym::strassen_multiply(random_ll(8, 8, rng), random_ll(8, 8, rng), 8, ops);
    CHECK(ops.mults == 512);
    CHECK_THROWS_AS(
        tensym::strassen_multiply(random_ll(2, 2, rng), random_ll(2, 2, rng), 0, ops),
        tensym::DimensionError);
}

TEST_CASE("padding handles arbitrary rectangular shapes") {
    tensym::SplitMix64 rng(17);
    // 3x3 pads to 4x4: two levels of recursion.
    {
        const auto a = random_ll(3, 3, rng);
        const auto b = random_ll(3, 3, rng);
        OperationCounter ops, ref;
        const auto got = tensym::strassen_multiply(a, b, 1, ops);
        CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
        CHECK(ops.mults == 49);
    }
    // Rectangular operands pad to the largest dimension's power of two.
    {
        const auto a = random_ll(2, 3, rng);
        const auto b = random_ll(3, 5, rng);
        OperationCounter ops, ref;
        const auto got = tensym::strassen_multiply(a, b, 1, ops);
        CHECK(got.rows() == 2);
        CHECK(got.cols() == 5);
        CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
        CHECK(ops.mults == pow_u64(7, 3));
    }
    // Degenerate 1x1.
    {
        RingMatrix<long long> a(1, 1), b(1, 1);
        a.data() = {6};
        b.data() = {7};
        OperationCounter ops;
        CHECK(tensym::strassen_multiply(a, b, 1, ops).data() == std::vector<long long>{42});
        CHECK(ops.mults == 1);
    }
}

TEST_CASE("rational entries go through the same engine") {
    tensym::SplitMix64 rng(19);
    for (const std::size_t n : {3u, 6u, 9u}) {
        RingMatrix<Rational> a(n, n), b(n, n);
        for (auto& x : a.data()) x = Rational(rng.next_int(-5, 5), rng.next_int(1, 4));
        for (auto& x : b.data()) x = Rational(rng.next_int(-5, 5), rng.next_int(1, 4));
        OperationCounter ops, ref;
        CHECK(tensym::strassen_multiply(a, b, 2, ops).data() ==
              tensym::naive_multiply(a, b, ref).data());
    }
}

TEST_CASE("floating point agrees with the schoolbook product to near roundoff") {
    tensym::SplitMix64 rng(23);
    for (const std::size_t n : {15u, 32u, 70u}) {
        const auto a = random_f64(n, n, rng);
        const auto b = random_f64(n, n, rng);
        OperationCounter ops, ref;
        const auto got = tensym::strassen_multiply(a, b, 8, ops);
        const auto want = tensym::naive_multiply(a, b, ref);
        CHECK(max_rel_err(got, want) < 1e-9);
    }
}

TEST_CASE("checked integers trap overflow instead of wrapping") {
    const CheckedInt64 big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * CheckedInt64(4), tensym::OverflowError);
    CHECK_THROWS_AS(big + big, tensym::OverflowError);
    CHECK((CheckedInt64(6) * CheckedInt64(7)).v == 42);
    CHECK((CheckedInt64(6) - CheckedInt64(7)).v == -1);
    CHECK_THROWS_AS(tensym::ring_scale(Rational(1, 2), CheckedInt64(3)),
                    tensym::ValidationError);
    CHECK(tensym::ring_scale(Rational(-2), CheckedInt64(3)).v == -6);

    RingMatrix<CheckedInt64> a(2, 2), b(2, 2);
    for (auto& x : a.data()) x = CheckedInt64(std::int64_t{3} << 31);
    for (auto& x : b.data()) x = CheckedInt64(std::int64_t{3} << 31);
    OperationCounter ops;
    CHECK_THROWS_AS(tensym::naive_multiply(a, b, ops), tensym::OverflowError);
}

TEST_CASE("parallel recursion returns identical counts and entries") {
    tensym::SplitMix64 rng(29);
    const auto a = random_ll(16, 16, rng);
    const auto b = random_ll(16, 16, rng);
    OperationCounter seq_ops, par_ops;
    const auto seq = tensym::strassen_multiply(a, b, 2, seq_ops, false);
    const auto par = tensym::strassen_multiply(a, b, 2, par_ops, true);
    CHECK(seq.data() == par.data());
    CHECK(seq_ops == par_ops);
}

TEST_CASE("driving the engine from a stored scheme") {
    const auto strassen = tensym::strassen_algorithm();
    const auto naive222 = tensym::naive_algorithm(2, 2, 2);
    tensym::SplitMix64 rng(31);

    // One application of the 8-term scheme costs 8 block products.
    {
        const auto a = random_ll(2, 2, rng);
        const auto b = random_ll(2, 2, rng);
        OperationCounter ops, ref;
        const auto got = tensym::algorithm_multiply(naive222, a, b, ops);
        CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
        CHECK(ops.mults == 8);
    }
    // Non-recursive: the seven blocks multiply by the schoolbook rule.
    {
        const auto a = random_ll(4, 4, rng);
        const auto b = random_ll(4, 4, rng);
        OperationCounter ops, ref;
        const auto got = tensym::algorithm_multiply(strassen, a, b, ops);
        CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
        CHECK(ops.mults == 7 * 8);
    }
    // Recursive: the scheme applies to its own block products.
    {
        const auto a = random_ll(4, 4, rng);
        const auto b = random_ll(4, 4, rng);
        OperationCounter ops, ref;
        tensym::AlgorithmMultiplyOptions opt;
        opt.recursive = true;
        opt.cutoff = 1;
        const auto got = tensym::algorithm_multiply(strassen, a, b, ops, opt);
        CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
        CHECK(ops.mults == 49);
    }
    // A rectangular scheme splits rectangular operands.
    {
        const auto a = random_ll(4, 6, rng);
        const auto b = random_ll(6, 4, rng);
        OperationCounter ops, ref;
        const auto got =
            tensym::algorithm_multiply(tensym::naive_algorithm(2, 3, 2), a, b, ops);
        CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
    }
    // Sizes that do not divide evenly are padded, then cropped.
    {
        const auto a = random_ll(5, 5, rng);
        const auto b = random_ll(5, 5, rng);
        OperationCounter ops, ref;
        const auto got = tensym::algorithm_multiply(strassen, a, b, ops);
        CHECK(got.rows() == 5);
        CHECK(got.data() == tensym::naive_multiply(a, b, ref).data());
    }
    {
        OperationCounter ops;
        CHECK_THROWS_AS(
            tensym::algorithm_multiply(strassen, random_ll(2, 3, rng), random_ll(2, 3, rng), ops),
            tensym::DimensionError);
    }
}

TEST_CASE("benchmark harness produces well-formed tables") {
    tensym::BenchConfig cfg;
    cfg.sizes = {8, 16};
    cfg.methods = {"naive", "strassen"};
    cfg.cutoffs = {1};
    cfg.trials = 1;
    cfg.ring = tensym::BenchRing::f64;
    cfg.seed = 3;
    const auto report = tensym::run_bench(cfg);
    // One row per method x cutoff x size; naive ignores cutoffs.
    REQUIRE(report.rows.size() == 4);
    for (const auto& row : report.rows) {
        if (row.method == "strassen" && row.size == 8) CHECK(row.mults == 343);
        if (row.method == "naive" && row.size == 8) CHECK(row.mults == 512);
        if (row.method == "naive") CHECK(row.cutoff == 0);
    }
    // Counter slopes between the two power-of-two sizes are exact.
    for (const auto& s : report.slopes) {
        if (s.method == "strassen") CHECK(s.mult_slope == doctest::Approx(std::log2(7.0)));
        if (s.method == "naive") CHECK(s.mult_slope == doctest::Approx(3.0));
    }
    const std::string csv = tensym::bench_csv(report);
    CHECK(csv.find("size,method,cutoff,ring,trials,median_ns,mults,adds") == 0);

    CHECK(tensym::bench_ring_from_string("rational") == tensym::BenchRing::rational);
    CHECK(tensym::to_string(tensym::BenchRing::i64) == "i64");
    CHECK_THROWS_AS(tensym::bench_ring_from_string("f32"), tensym::ParseError);
    CHECK_THROWS_AS(tensym::run_bench(tensym::BenchConfig{}), tensym::ValidationError);
    tensym::BenchConfig bad = cfg;
    bad.methods = {"winograd"};
    CHECK_THROWS_AS(tensym::run_bench(bad), tensym::ParseError);
}

TEST_CASE("integer ring benches run on the exact path") {
    tensym::BenchConfig cfg;
    cfg.sizes = {4};
    cfg.methods = {"strassen"};
    cfg.cutoffs = {2};
    cfg.trials = 2;
    cfg.ring = tensym::BenchRing::i64;
    const auto report = tensym::run_bench(cfg);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].mults == 7 * 8);
    CHECK(report.rows[0].trials == 2);

    cfg.ring = tensym::BenchRing::rational;
    CHECK(tensym::run_bench(cfg).rows[0].mults == 7 * 8);
}
