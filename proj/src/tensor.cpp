#include "tensym/tensor.hpp"

#include <algorithm>

#include "tensym/errors.hpp"

namespace tensym {

FactorShape::FactorShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (std::size_t d : dims_) {
        if (d == 0) throw DimensionError("FactorShape: zero factor dimension");
        total_ *= d;
    }
}

std::size_t FactorShape::flatten(std::span<const std::size_t> multi) const {
    if (multi.size() != dims_.size()) throw DimensionError("flatten: wrong index count");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (multi[i] >= dims_[i]) throw DimensionError("flatten: index out of range");
        flat = flat * dims_[i] + multi[i];
    }
    return flat;
}

std::vector<std::size_t> FactorShape::unflatten(std::size_t flat) const {
    if (flat >= total_) throw DimensionError("unflatten: index out of range");
    std::vector<std::size_t> multi(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
        multi[i] = flat % dims_[i];
        flat /= dims_[i];
    }
    return multi;
}

DenseTensor::DenseTensor(FactorShape shape) : shape_(std::move(shape)), e_(shape_.total()) {}

DenseTensor::DenseTensor(FactorShape shape, std::vector<Rational> entries)
    : shape_(std::move(shape)), e_(std::move(entries)) {
    if (e_.size() != shape_.total()) throw DimensionError("DenseTensor: entry count mismatch");
}

bool DenseTensor::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rational& x) { return x.is_zero(); });
}

DenseTensor DenseTensor::operator-() const {
    DenseTensor t(shape_);
    for (std::size_t k = 0; k < e_.size(); ++k) t.e_[k] = -e_[k];
    return t;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& o) {
    if (!(shape_ == o.shape_)) throw DimensionError("tensor +: shape mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& o) {
    if (!(shape_ == o.shape_)) throw DimensionError("tensor -: shape mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
}

DenseTensor operator*(const Rational& c, DenseTensor t) {
    for (Rational& x : t.e_) x *= c;
    return t;
}

bool operator<(const DenseTensor& a, const DenseTensor& b) {
    if (a.shape_.dims() != b.shape_.dims()) return a.shape_.dims() < b.shape_.dims();
    for (std::size_t k = 0; k < a.e_.size(); ++k)
        if (a.e_[k] != b.e_[k]) return a.e_[k] < b.e_[k];
    return false;
}

Rank1Tensor::Rank1Tensor(FactorShape shape, std::vector<std::vector<Rational>> factors)
    : shape_(std::move(shape)), factors_(std::move(factors)) {
    if (factors_.size() != shape_.factor_count())
        throw DimensionError("Rank1Tensor: factor count mismatch");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].size() != shape_.dim(i))
            throw DimensionError("Rank1Tensor: factor length mismatch");
        if (std::all_of(factors_[i].begin(), factors_[i].end(),
                        [](const Rational& x) { return x.is_zero(); }))
            throw ValidationError("Rank1Tensor: zero factor");
    }
}

DenseTensor Rank1Tensor::expand() const {
    DenseTensor t(shape_);
    const std::size_t total = shape_.total();
    for (std::size_t flat = 0; flat < total; ++flat) {
        // Peel indices off the flat position, last factor fastest.
        std::size_t rest = flat;
        Rational prod(1);
        for (std::size_t i = factors_.size(); i-- > 0 && !prod.is_zero();) {
            prod *= factors_[i][rest % shape_.dim(i)];
            rest /= shape_.dim(i);
        }
        t[flat] = std::move(prod);
    }
    return t;
}

bool same_multiset(std::vector<DenseTensor> a, std::vector<DenseTensor> b) {
    if (a.size() != b.size()) return false;
    auto lt = [](const DenseTensor& x, const DenseTensor& y) { return x < y; };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    return a == b;
}

DenseTensor structure_tensor(std::size_t m, std::size_t n, std::size_t p) {
    if (m == 0 || n == 0 || p == 0) throw DimensionError("structure_tensor: zero dimension");
    DenseTensor t(FactorShape({m * n, n * p, p * m}));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < p; ++k) {
                const std::size_t idx[3] = {i * n + j, j * p + k, k * m + i};
                t.at(idx) = 1;
            }
    return t;
}

DenseTensor mu_structure_tensor(std::size_t m, std::size_t n, std::size_t p) {
    if (m == 0 || n == 0 || p == 0) throw DimensionError("mu_structure_tensor: zero dimension");
    DenseTensor t(FactorShape({m * n, n * p, m * p}));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < p; ++k) {
                const std::size_t idx[3] = {i * n + j, j * p + k, i * p + k};
                t.at(idx) = 1;
            }
    return t;
}

namespace {

DenseTensor transpose_third(const DenseTensor& t, std::size_t m, std::size_t n, std::size_t p,
                            bool from_mu, const char* what) {
    if (!(t.shape() == FactorShape({m * n, n * p, m * p})))
        throw DimensionError(std::string(what) + ": shape mismatch");
    DenseTensor out(FactorShape({m * n, n * p, p * m}));
    for (std::size_t a = 0; a < m * n; ++a)
        for (std::size_t b = 0; b < n * p; ++b)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t k = 0; k < p; ++k) {
                    const std::size_t src[3] = {a, b, from_mu ? i * p + k : k * m + i};
                    const std::size_t dst[3] = {a, b, from_mu ? k * m + i : i * p + k};
                    out.at(dst) = t.at(src);
                }
    return out;
}

} // namespace

DenseTensor mu_to_structure(const DenseTensor& t, std::size_t m, std::size_t n, std::size_t p) {
    return transpose_third(t, m, n, p, true, "mu_to_structure");
}

DenseTensor structure_to_mu(const DenseTensor& t, std::size_t m, std::size_t n, std::size_t p) {
    // [mn, np, pm] and [mn, np, mp] coincide as sizes; the third coordinate
    // is read as e_ki and rewritten as e_ik.
    return transpose_third(t, m, n, p, false, "structure_to_mu");
}

DenseTensor delta_product(std::size_t i1, std::size_t i2, std::size_t i3) {
    std::array<std::size_t, 3> targets = {i1, i2, i3};
    std::array<std::size_t, 3> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<std::size_t, 3>{2, 4, 6})
        throw DimensionError("delta_product: pairing must be a permutation of (2,4,6)");
    DenseTensor t(FactorShape({2, 2, 2, 2, 2, 2}));
    for (std::size_t flat = 0; flat < 64; ++flat) {
        const auto idx = t.shape().unflatten(flat);
        bool one = true;
        for (std::size_t q = 0; q < 3; ++q) {
            // 1-based positions 1,3,5 pair with targets[q].
            if (idx[2 * q] != idx[targets[q] - 1]) {
                one = false;
                break;
            }
        }
        if (one) t[flat] = 1;
    }
    return t;
}

DenseTensor reshape_3to6(const DenseTensor& t) {
    if (!(t.shape() == FactorShape({4, 4, 4})))
        throw DimensionError("reshape_3to6: expected shape [4,4,4]");
    return DenseTensor(FactorShape({2, 2, 2, 2, 2, 2}), t.entries());
}

DenseTensor reshape_6to3(const DenseTensor& t) {
    if (!(t.shape() == FactorShape({2, 2, 2, 2, 2, 2})))
        throw DimensionError("reshape_6to3: expected shape [2,2,2,2,2,2]");
    return DenseTensor(FactorShape({4, 4, 4}), t.entries());
}

Rational pairing(std::span<const Rational> x, std::span<const Rational> y) {
    if (x.size() != y.size()) throw DimensionError("pairing: length mismatch");
    Rational s;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

std::vector<Rational> line_representative(std::span<const Rational> v) {
    std::vector<Rational> out(v.begin(), v.end());
    for (const Rational& x : out) {
        if (x.is_zero()) continue;
        const Rational inv = Rational(1) / x;
        for (Rational& y : out) y *= inv;
        return out;
    }
    throw ValidationError("line_representative: zero vector");
}

namespace {

// Canonical line sets for the regularity check, as representatives.
std::vector<std::vector<Rational>> sorted_lines(const Rank1Tensor& t, std::size_t first) {
    std::vector<std::vector<Rational>> lines;
    for (std::size_t i = first; i < 6; i += 2) lines.push_back(line_representative(t.factor(i)));
    std::sort(lines.begin(), lines.end());
    return lines;
}

} // namespace

bool is_regular_element(const Rank1Tensor& t) {
    if (!(t.shape() == FactorShape({2, 2, 2, 2, 2, 2})))
        throw DimensionError("is_regular_element: expected shape [2,2,2,2,2,2]");

    // Condition 1: the odd factors span <e1>,<e2>,<e1+e2> and the even
    // factors span <e^1>,<e^2>,<e^1-e^2>, in some order.
    const std::vector<std::vector<Rational>> odd_expected = {
        {Rational(0), Rational(1)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)}};
    const std::vector<std::vector<Rational>> even_expected = {
        {Rational(0), Rational(1)}, {Rational(1), Rational(-1)}, {Rational(1), Rational(0)}};
    if (sorted_lines(t, 0) != odd_expected) return false;
    if (sorted_lines(t, 1) != even_expected) return false;

    // Condition 2: (x1,x4) = (x3,x6) = (x5,x2) = 0.
    if (!pairing(t.factor(0), t.factor(3)).is_zero()) return false;
    if (!pairing(t.factor(2), t.factor(5)).is_zero()) return false;
    if (!pairing(t.factor(4), t.factor(1)).is_zero()) return false;

    // Condition 3: (x1,x2)(x3,x4)(x5,x6) = -1.
    const Rational prod = pairing(t.factor(0), t.factor(1)) * pairing(t.factor(2), t.factor(3)) *
                          pairing(t.factor(4), t.factor(5));
    return prod == Rational(-1);
}

bool are_adjacent(const Rank1Tensor& u, const Rank1Tensor& v) {
    if (!(u.shape() == v.shape())) throw DimensionError("are_adjacent: shape mismatch");
    std::size_t differing = 0;
    for (std::size_t i = 0; i < u.factor_count(); ++i)
        if (line_representative(u.factor(i)) != line_representative(v.factor(i))) ++differing;
    return differing == 1;
}

} // namespace tensym
