#include "tensym/linalg.hpp"

#include <utility>

#include "tensym/errors.hpp"

namespace tensym {

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionError("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

ExactMatrix ExactMatrix::from_ints(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<Rational>> conv;
    conv.reserve(rows.size());
    for (const auto& row : rows) conv.emplace_back(row.begin(), row.end());
    return from_rows(conv);
}

std::vector<Rational> ExactMatrix::row(std::size_t i) const {
    return {e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Rational> ExactMatrix::col(std::size_t j) const {
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool ExactMatrix::is_zero() const {
    for (const Rational& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

ExactMatrix ExactMatrix::operator-() const {
    ExactMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
    return m;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix +: shape mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix -: shape mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix *: inner dimension mismatch");
    ExactMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Rational& bkj = b.at(k, j);
                if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
            }
        }
    return c;
}

ExactMatrix operator*(const Rational& c, ExactMatrix m) {
    for (Rational& x : m.e_) x *= c;
    return m;
}

std::vector<Rational> ExactMatrix::apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw DimensionError("matrix apply: vector length mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rational& a = at(i, j);
            if (!a.is_zero()) out[i] += a * v[j];
        }
    return out;
}

bool operator<(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    for (std::size_t k = 0; k < a.e_.size(); ++k) {
        if (a.e_[k] != b.e_[k]) return a.e_[k] < b.e_[k];
    }
    return false;
}

std::pair<ExactMatrix, std::size_t> rref(const ExactMatrix& m) {
    ExactMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows && a.at(sel, col).is_zero()) ++sel;
        if (sel == rows) continue;
        if (sel != pivot_row)
            for (std::size_t j = col; j < cols; ++j) std::swap(a.at(sel, j), a.at(pivot_row, j));
        const Rational inv_pivot = Rational(1) / a.at(pivot_row, col);
        for (std::size_t j = col; j < cols; ++j) a.at(pivot_row, j) *= inv_pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || a.at(i, col).is_zero()) continue;
            const Rational f = a.at(i, col);
            for (std::size_t j = col; j < cols; ++j) a.at(i, j) -= f * a.at(pivot_row, j);
        }
        ++pivot_row;
    }
    return {std::move(a), pivot_row};
}

std::size_t rank(const ExactMatrix& m) { return rref(m).second; }

bool is_invertible(const ExactMatrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

ExactMatrix inverse(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("inverse: matrix not square");
    const std::size_t n = m.rows();
    // Reduce [m | I]; the right half becomes the inverse.
    ExactMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto [red, rk] = rref(aug);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (red.at(i, j) != Rational(i == j ? 1 : 0))
                throw ValidationError("inverse: matrix is singular");
    ExactMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = red.at(i, n + j);
    return inv;
}

Subspace Subspace::zero(std::size_t ambient_dim) {
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = ExactMatrix(0, ambient_dim);
    return s;
}

Subspace Subspace::span(const std::vector<std::vector<Rational>>& vectors,
                        std::size_t ambient_dim) {
    ExactMatrix m(vectors.size(), ambient_dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient_dim) throw DimensionError("span: vector length mismatch");
        for (std::size_t j = 0; j < ambient_dim; ++j) m.at(i, j) = vectors[i][j];
    }
    return row_span(m);
}

Subspace Subspace::row_span(const ExactMatrix& m) {
    auto [red, rk] = rref(m);
    Subspace s;
    s.ambient_ = m.cols();
    s.basis_ = ExactMatrix(rk, m.cols());
    for (std::size_t i = 0; i < rk; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s.basis_.at(i, j) = red.at(i, j);
    return s;
}

bool Subspace::contains(std::span<const Rational> v) const {
    if (v.size() != ambient_) throw DimensionError("contains: vector length mismatch");
    // Reduce v against the RREF basis; membership iff the residue is zero.
    std::vector<Rational> r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::size_t lead = 0;
        while (lead < ambient_ && basis_.at(i, lead).is_zero()) ++lead;
        if (lead == ambient_ || r[lead].is_zero()) continue;
        const Rational f = r[lead]; // pivot entry is 1
        for (std::size_t j = lead; j < ambient_; ++j) r[j] -= f * basis_.at(i, j);
    }
    for (const Rational& x : r)
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("contains: ambient dimension mismatch");
    for (std::size_t i = 0; i < other.basis_.rows(); ++i) {
        const auto row = other.basis_.row(i);
        if (!contains(row)) return false;
    }
    return true;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw DimensionError("subspace +: ambient dimension mismatch");
    ExactMatrix stacked(a.dim() + b.dim(), a.ambient_);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.ambient_; ++j) stacked.at(i, j) = a.basis_.at(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < a.ambient_; ++j) stacked.at(a.dim() + i, j) = b.basis_.at(i, j);
    return Subspace::row_span(stacked);
}

bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    return a.basis_ < b.basis_;
}

bool is_independent(const std::vector<Subspace>& lines) {
    if (lines.empty()) return true;
    const std::size_t ambient = lines[0].ambient_dim();
    ExactMatrix stacked(lines.size(), ambient);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].ambient_dim() != ambient)
            throw DimensionError("is_independent: ambient dimension mismatch");
        if (lines[i].dim() != 1) throw DimensionError("is_independent: entry is not a line");
        for (std::size_t j = 0; j < ambient; ++j) stacked.at(i, j) = lines[i].basis().at(0, j);
    }
    return rank(stacked) == lines.size();
}

} // namespace tensym
