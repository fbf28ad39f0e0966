#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "tensym/bilinear.hpp"
#include "tensym/prng.hpp"

using tensym::BilinearAlgorithm;
using tensym::DenseTensor;
using tensym::Rational;

TEST_CASE("the seven-term scheme is a decomposition of S(2,2,2)") {
    const BilinearAlgorithm alg = tensym::strassen_algorithm();
    CHECK(alg.term_count() == 7);
    CHECK(alg.m() == 2);
    CHECK(tensym::verify(alg));
    // Dropping any single term breaks the identity.
    for (std::size_t skip = 0; skip < 7; ++skip) {
        std::vector<tensym::Rank1Tensor> fewer;
        for (std::size_t i = 0; i < 7; ++i)
            if (i != skip) fewer.push_back(alg.terms()[i]);
        CHECK_FALSE(tensym::verify(BilinearAlgorithm(2, 2, 2, fewer)));
    }
}

TEST_CASE("naive schemes verify for assorted shapes") {
    for (auto [m, n, p] : {std::array<std::size_t, 3>{1, 1, 1}, {2, 2, 2}, {2, 3, 4}, {3, 3, 3}}) {
        const BilinearAlgorithm alg = tensym::naive_algorithm(m, n, p);
        CHECK(alg.term_count() == m * n * p);
        CHECK(tensym::verify(alg));
    }
}

TEST_CASE("execute_bilinear multiplies exactly like the definition") {
    const BilinearAlgorithm strassen = tensym::strassen_algorithm();
    tensym::SplitMix64 rng(23);
    for (int it = 0; it < 50; ++it) {
        std::vector<long long> a(4), b(4);
        for (auto& x : a) x = rng.next_int(-99, 99);
        for (auto& x : b) x = rng.next_int(-99, 99);
        const auto got = tensym::execute_bilinear<long long>(strassen, a, b);
        // Row-major 2x2 schoolbook.
        const std::vector<long long> want = {
            a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
        CHECK(got == want);
    }
}

TEST_CASE("execute_bilinear calls the multiplier once per term") {
    const BilinearAlgorithm strassen = tensym::strassen_algorithm();
    const std::vector<long long> a = {1, 2, 3, 4}, b = {5, 6, 7, 8};
    int calls = 0;
    const auto got = tensym::execute_bilinear<long long>(
        strassen, a, b, [&calls](long long x, long long y) {
            ++calls;
            return x * y;
        });
    CHECK(calls == 7);
    CHECK(got == std::vector<long long>{19, 22, 43, 50});

    calls = 0;
    const BilinearAlgorithm naive = tensym::naive_algorithm(2, 2, 2);
    tensym::execute_bilinear<long long>(naive, a, b, [&calls](long long x, long long y) {
        ++calls;
        return x * y;
    });
    CHECK(calls == 8);
}

TEST_CASE("execute_bilinear works over rationals and rectangular shapes") {
    const BilinearAlgorithm alg = tensym::naive_algorithm(2, 3, 2);
    std::vector<Rational> a(6), b(6);
    tensym::SplitMix64 rng(29);
    for (auto& x : a) x = Rational(tensym::BigInt(rng.next_int(-9, 9)), tensym::BigInt(rng.next_int(1, 5)));
    for (auto& x : b) x = Rational(tensym::BigInt(rng.next_int(-9, 9)), tensym::BigInt(rng.next_int(1, 5)));
    const auto got = tensym::execute_bilinear<Rational>(alg, a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) {
            Rational want;
            for (std::size_t j = 0; j < 3; ++j) want += a[i * 3 + j] * b[j * 2 + k];
            CHECK(got[i * 2 + k] == want);
        }
    CHECK_THROWS_AS(tensym::execute_bilinear<Rational>(alg, std::vector<Rational>(5), b),
                    tensym::DimensionError);
}

TEST_CASE("extended family: eight members, zero sum, six regular terms") {
    const tensym::ExtendedAlgorithm ext = tensym::extended_strassen();
    CHECK(ext.member_count() == 8);
    CHECK(ext.members_sum_to_zero());
    CHECK(ext.regular_terms().size() == 6);
    for (const auto& t : ext.regular_terms()) CHECK(tensym::is_regular_element(t));

    // Member 0 is the negated regrouped target, member 1 the full diagonal.
    CHECK(ext.members()[0] == -tensym::reshape_3to6(tensym::structure_tensor(2, 2, 2)));
    CHECK(ext.members()[1] == tensym::delta_product(2, 4, 6));

    // The six regular members are exactly the regrouped non-identity terms
    // of the seven-term scheme.
    std::vector<DenseTensor> regrouped;
    const auto terms = tensym::strassen_algorithm().terms();
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        regrouped.push_back(tensym::reshape_3to6(terms[i].expand()));
    std::vector<DenseTensor> members(ext.members().begin() + 2, ext.members().end());
    CHECK(tensym::same_multiset(regrouped, members));
}

TEST_CASE("json round trip preserves the scheme exactly") {
    const BilinearAlgorithm alg = tensym::strassen_algorithm();
    const nlohmann::json doc = tensym::algorithm_to_json(alg);
    CHECK(doc["space"] == "smnp");
    CHECK(doc["terms"].size() == 7);
    const BilinearAlgorithm back = tensym::algorithm_from_json(doc);
    CHECK(tensym::verify(back));
    CHECK(tensym::algorithm_checksum(back) == tensym::algorithm_checksum(alg));

    const auto path = std::filesystem::temp_directory_path() / "tensym_roundtrip.json";
    tensym::save_algorithm(alg, path);
    const BilinearAlgorithm loaded = tensym::load_algorithm(path);
    CHECK(tensym::algorithm_checksum(loaded) == tensym::algorithm_checksum(alg));
    std::filesystem::remove(path);
}

TEST_CASE("json parsing rejects malformed documents") {
    nlohmann::json doc = tensym::algorithm_to_json(tensym::strassen_algorithm());
    nlohmann::json bad = doc;
    bad["space"] = "other";
    CHECK_THROWS_AS(tensym::algorithm_from_json(bad), tensym::ParseError);
    bad = doc;
    bad["terms"][0]["u"] = {"1", "0", "0"};
    CHECK_THROWS_AS(tensym::algorithm_from_json(bad), tensym::ParseError);
    bad = doc;
    bad["terms"][0]["u"][0] = "1.5";
    CHECK_THROWS_AS(tensym::algorithm_from_json(bad), tensym::ParseError);
    bad = doc;
    bad.erase("m");
    CHECK_THROWS_AS(tensym::algorithm_from_json(bad), tensym::ParseError);
    // Unknown keys are tolerated.
    nlohmann::json extra = doc;
    extra["comment"] = "anything";
    CHECK(tensym::verify(tensym::algorithm_from_json(extra)));
}

TEST_CASE("checksums are stable and collision-averse for small edits") {
    const BilinearAlgorithm a = tensym::strassen_algorithm();
    const BilinearAlgorithm b = tensym::strassen_algorithm();
    CHECK(tensym::algorithm_checksum(a) == tensym::algorithm_checksum(b));
    CHECK(tensym::algorithm_checksum(a) != tensym::algorithm_checksum(tensym::naive_algorithm(2, 2, 2)));
}

TEST_CASE("fractional coefficients refuse to run over an integer ring") {
    // A 1x1x1 "scheme" with coefficient 1/2 on each side still verifies
    // (1/2 * 1/2 * 4 = 1) but cannot execute over long long.
    using tensym::FactorShape;
    using tensym::Rank1Tensor;
    std::vector<Rank1Tensor> terms;
    terms.emplace_back(FactorShape({1, 1, 1}),
                       std::vector<std::vector<Rational>>{
                           {Rational(tensym::BigInt(1), tensym::BigInt(2))},
                           {Rational(tensym::BigInt(1), tensym::BigInt(2))},
                           {Rational(4)}});
    const BilinearAlgorithm alg(1, 1, 1, terms);
    CHECK(tensym::verify(alg));
    const std::vector<long long> one = {1};
    CHECK_THROWS_AS(tensym::execute_bilinear<long long>(alg, one, one),
                    tensym::ValidationError);
    const std::vector<Rational> rone = {Rational(1)};
    CHECK(tensym::execute_bilinear<Rational>(alg, rone, rone) ==
          std::vector<Rational>{Rational(1)});
}
