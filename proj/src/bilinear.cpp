#include "tensym/bilinear.hpp"

#include <fstream>

#include "tensym/errors.hpp"

namespace tensym {

BilinearAlgorithm::BilinearAlgorithm(std::size_t m, std::size_t n, std::size_t p,
                                     std::vector<Rank1Tensor> terms)
    : m_(m), n_(n), p_(p), shape_({m * n, n * p, p * m}), terms_(std::move(terms)),
      target_(structure_tensor(m, n, p)) {
    for (const Rank1Tensor& t : terms_)
        if (!(t.shape() == shape_))
            throw DimensionError("BilinearAlgorithm: term shape does not match [mn, np, pm]");
}

bool verify(const BilinearAlgorithm& alg) {
    DenseTensor sum(alg.shape());
    for (const Rank1Tensor& t : alg.terms()) sum += t.expand();
    return sum == alg.target();
}

namespace {

std::vector<Rational> vec_of(std::initializer_list<int> xs) {
    return std::vector<Rational>(xs.begin(), xs.end());
}

Rank1Tensor m2_term(std::initializer_list<int> u, std::initializer_list<int> v,
                    std::initializer_list<int> w) {
    return Rank1Tensor(FactorShape({4, 4, 4}), {vec_of(u), vec_of(v), vec_of(w)});
}

} // namespace

BilinearAlgorithm strassen_algorithm() {
    // Coordinates on M_2 are (e11, e12, e21, e22). Terms are numbered the way
    // the symmetry tests expect: the first six form a single orbit of the
    // order-36 group, the seventh (the identity-ish term e (x) e (x) e with
    // e = e11 + e22) is a fixed point.
    std::vector<Rank1Tensor> terms;
    terms.push_back(m2_term({1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, -1})); // a11 (b12+b22)
    terms.push_back(m2_term({-1, 1, 0, 0}, {0, 0, 0, 1}, {1, 0, 1, 0})); // (a12-a11) b22
    terms.push_back(m2_term({0, 0, 1, -1}, {1, 0, 0, 0}, {0, 1, 0, 1})); // (a21-a22) b11
    terms.push_back(m2_term({0, 0, 0, 1}, {1, 0, 1, 0}, {-1, 1, 0, 0})); // a22 (b11+b21)
    terms.push_back(m2_term({1, 0, 1, 0}, {-1, 1, 0, 0}, {0, 0, 0, 1})); // (a11+a21)(b12-b11)
    terms.push_back(m2_term({0, 1, 0, 1}, {0, 0, 1, -1}, {1, 0, 0, 0})); // (a12+a22)(b21-b22)
    terms.push_back(m2_term({1, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}));  // (a11+a22)(b11+b22)
    return BilinearAlgorithm(2, 2, 2, std::move(terms));
}

BilinearAlgorithm naive_algorithm(std::size_t m, std::size_t n, std::size_t p) {
    if (m == 0 || n == 0 || p == 0) throw DimensionError("naive_algorithm: zero dimension");
    std::vector<Rank1Tensor> terms;
    terms.reserve(m * n * p);
    const FactorShape shape({m * n, n * p, p * m});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < p; ++k) {
                std::vector<Rational> u(m * n), v(n * p), w(p * m);
                u[i * n + j] = 1;
                v[j * p + k] = 1;
                w[k * m + i] = 1;
                terms.emplace_back(shape, std::vector<std::vector<Rational>>{u, v, w});
            }
    return BilinearAlgorithm(m, n, p, std::move(terms));
}

ExtendedAlgorithm::ExtendedAlgorithm(std::vector<DenseTensor> special_members,
                                     std::vector<Rank1Tensor> regular_terms)
    : shape_({2, 2, 2, 2, 2, 2}), members_(std::move(special_members)),
      regular_terms_(std::move(regular_terms)) {
    for (const DenseTensor& t : members_)
        if (!(t.shape() == shape_))
            throw DimensionError("ExtendedAlgorithm: member shape must be [2,2,2,2,2,2]");
    for (const Rank1Tensor& t : regular_terms_) {
        if (!(t.shape() == shape_))
            throw DimensionError("ExtendedAlgorithm: term shape must be [2,2,2,2,2,2]");
        members_.push_back(t.expand());
    }
}

bool ExtendedAlgorithm::members_sum_to_zero() const {
    DenseTensor sum(shape_);
    for (const DenseTensor& t : members_) sum += t;
    return sum.is_zero();
}

ExtendedAlgorithm extended_strassen() {
    // Regrouping the seven-term scheme over V (x) V* factors and moving the
    // target and the identity-like term to the left yields a zero sum:
    //   -S + delta(x)delta(x)delta + (six regular rank-1 members) = 0.
    // Factor order is x1,x2,x3,x4,x5,x6 with odd positions in V and even in
    // V*; each member below is the 3-factor term s_i with every matrix unit
    // e_ij split into e_i (x) e^j.
    const FactorShape shape({2, 2, 2, 2, 2, 2});
    auto vec2 = [](int a, int b) { return std::vector<Rational>{Rational(a), Rational(b)}; };
    std::vector<Rank1Tensor> regulars;
    auto add = [&](std::array<std::array<int, 2>, 6> f) {
        std::vector<std::vector<Rational>> factors;
        for (const auto& v : f) factors.push_back(vec2(v[0], v[1]));
        regulars.emplace_back(shape, std::move(factors));
    };
    add({{{1, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 1}, {1, -1}}});   // e11 (x) (e12+e22) (x) (e21-e22)
    add({{{1, 0}, {1, -1}, {0, 1}, {0, 1}, {1, 1}, {-1, 0}}});  // (e12-e11) (x) e22 (x) (e11+e21)
    add({{{0, 1}, {1, -1}, {1, 0}, {1, 0}, {1, 1}, {0, 1}}});   // (e21-e22) (x) e11 (x) (e12+e22)
    add({{{0, 1}, {0, 1}, {1, 1}, {1, 0}, {1, 0}, {-1, 1}}});   // e22 (x) (e11+e21) (x) (e12-e11)
    add({{{1, 1}, {1, 0}, {1, 0}, {-1, 1}, {0, 1}, {0, 1}}});   // (e11+e21) (x) (e12-e11) (x) e22
    add({{{1, 1}, {0, 1}, {0, 1}, {1, -1}, {1, 0}, {1, 0}}});   // (e12+e22) (x) (e21-e22) (x) e11

    std::vector<DenseTensor> specials;
    specials.push_back(-reshape_3to6(structure_tensor(2, 2, 2)));
    specials.push_back(delta_product(2, 4, 6));
    return ExtendedAlgorithm(std::move(specials), std::move(regulars));
}

nlohmann::json algorithm_to_json(const BilinearAlgorithm& alg) {
    nlohmann::json doc;
    doc["m"] = alg.m();
    doc["n"] = alg.n();
    doc["p"] = alg.p();
    doc["space"] = "smnp";
    nlohmann::json terms = nlohmann::json::array();
    for (const Rank1Tensor& t : alg.terms()) {
        nlohmann::json term;
        const char* names[3] = {"u", "v", "w"};
        for (std::size_t f = 0; f < 3; ++f) {
            nlohmann::json coords = nlohmann::json::array();
            for (const Rational& x : t.factor(f)) coords.push_back(x.str());
            term[names[f]] = std::move(coords);
        }
        terms.push_back(std::move(term));
    }
    doc["terms"] = std::move(terms);
    return doc;
}

namespace {

std::vector<Rational> parse_coords(const nlohmann::json& arr, std::size_t expected,
                                   const char* what) {
    if (!arr.is_array() || arr.size() != expected)
        throw ParseError(std::string("algorithm: '") + what + "' must be an array of " +
                         std::to_string(expected) + " rational strings");
    std::vector<Rational> out;
    out.reserve(expected);
    for (const auto& item : arr) {
        if (!item.is_string())
            throw ParseError(std::string("algorithm: '") + what + "' entries must be strings");
        out.push_back(Rational::parse(item.get<std::string>()));
    }
    return out;
}

std::size_t parse_dim(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned() || doc[key].get<std::size_t>() == 0)
        throw ParseError(std::string("algorithm: '") + key + "' must be a positive integer");
    return doc[key].get<std::size_t>();
}

} // namespace

BilinearAlgorithm algorithm_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("algorithm: document must be a JSON object");
    const std::size_t m = parse_dim(doc, "m");
    const std::size_t n = parse_dim(doc, "n");
    const std::size_t p = parse_dim(doc, "p");
    if (!doc.contains("space") || doc["space"] != "smnp")
        throw ParseError("algorithm: missing or unsupported 'space' tag (want \"smnp\")");
    if (!doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("algorithm: 'terms' must be an array");
    const FactorShape shape({m * n, n * p, p * m});
    std::vector<Rank1Tensor> terms;
    for (const auto& term : doc["terms"]) {
        if (!term.is_object() || !term.contains("u") || !term.contains("v") || !term.contains("w"))
            throw ParseError("algorithm: each term needs 'u', 'v' and 'w'");
        std::vector<std::vector<Rational>> factors;
        factors.push_back(parse_coords(term["u"], m * n, "u"));
        factors.push_back(parse_coords(term["v"], n * p, "v"));
        factors.push_back(parse_coords(term["w"], p * m, "w"));
        terms.emplace_back(shape, std::move(factors));
    }
    return BilinearAlgorithm(m, n, p, std::move(terms));
}

void save_algorithm(const BilinearAlgorithm& alg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("save_algorithm: cannot open " + path.string());
    out << algorithm_to_json(alg).dump(2) << '\n';
    if (!out) throw ValidationError("save_algorithm: write failed for " + path.string());
}

BilinearAlgorithm load_algorithm(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("load_algorithm: cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("load_algorithm: invalid JSON in " + path.string() + ": " + e.what());
    }
    return algorithm_from_json(doc);
}

std::uint64_t algorithm_checksum(const BilinearAlgorithm& alg) {
    const std::string blob = algorithm_to_json(alg).dump();
    std::uint64_t h = 14695981039346656037ULL; // FNV-1a 64-bit offset basis
    for (unsigned char c : blob) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

long long ring_scale(const Rational& c, long long x) {
    if (!c.is_integer())
        throw ValidationError("ring_scale: fractional coefficient over an integer ring");
    return c.numerator().convert_to<long long>() * x;
}

} // namespace tensym
