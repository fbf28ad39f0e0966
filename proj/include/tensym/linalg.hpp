#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tensym/rational.hpp"

namespace tensym {

/// Dense matrix over Rational, row-major. Small sizes only (the library
/// works with matrices up to 64x64), so no effort is spent on sparsity.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static ExactMatrix identity(std::size_t n);
    /// Throws DimensionError if the rows are ragged.
    static ExactMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    /// Convenience for literals in tests and generator tables.
    static ExactMatrix from_ints(std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    std::vector<Rational> row(std::size_t i) const;
    std::vector<Rational> col(std::size_t j) const;

    ExactMatrix transpose() const;
    bool is_zero() const;

    ExactMatrix operator-() const;
    ExactMatrix& operator+=(const ExactMatrix& o);
    ExactMatrix& operator-=(const ExactMatrix& o);
    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const Rational& c, ExactMatrix m);
    /// Matrix-vector product.
    std::vector<Rational> apply(std::span<const Rational> v) const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    /// Lexicographic order on (rows, cols, entries); lets matrices key a std::map.
    friend bool operator<(const ExactMatrix& a, const ExactMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
};

/// Reduced row echelon form: pivots are 1, alone in their column, zero rows
/// at the bottom. Returns the reduced matrix and its rank.
std::pair<ExactMatrix, std::size_t> rref(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

bool is_invertible(const ExactMatrix& m);

/// Throws ValidationError on non-square or singular input.
ExactMatrix inverse(const ExactMatrix& m);

/// Linear subspace of Q^n, stored as the RREF basis of its row span. Two
/// subspaces are equal iff their canonical bases are equal entrywise.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient_dim);
    /// Span of the given vectors, each of length ambient_dim.
    static Subspace span(const std::vector<std::vector<Rational>>& vectors,
                         std::size_t ambient_dim);
    /// Span of the rows of a matrix.
    static Subspace row_span(const ExactMatrix& m);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    /// RREF basis, one vector per row; dim() rows, ambient_dim() columns.
    const ExactMatrix& basis() const { return basis_; }

    bool contains(std::span<const Rational> v) const;
    bool contains(const Subspace& other) const;

    /// Subspace sum (span of the union of bases).
    friend Subspace operator+(const Subspace& a, const Subspace& b);

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator<(const Subspace& a, const Subspace& b);

private:
    std::size_t ambient_ = 0;
    ExactMatrix basis_; // RREF, no zero rows
};

/// True iff the given 1-dimensional subspaces are linearly independent as a
/// family (the dimension of their sum equals their count). Throws
/// DimensionError if any entry is not a line or ambient dims differ.
bool is_independent(const std::vector<Subspace>& lines);

} // namespace tensym
