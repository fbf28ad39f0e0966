#pragma once

#include <cstdint>
#include <future>
#include <string>
#include <vector>

#include "tensym/bilinear.hpp"
#include "tensym/errors.hpp"
#include "tensym/rational.hpp"

namespace tensym {

/// Tally of scalar ring operations actually executed. Multiplications and
/// additions are counted separately (a subtraction counts as an addition);
/// copies, negations and comparisons are free. Counting never depends on the
/// values in the matrices, only on their shapes, so counts are reproducible.
struct OperationCounter {
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;

    OperationCounter& operator+=(const OperationCounter& o) {
        mults += o.mults;
        adds += o.adds;
        return *this;
    }
    friend bool operator==(const OperationCounter&, const OperationCounter&) = default;
};

/// int64 with overflow trapping: arithmetic throws OverflowError instead of
/// wrapping, so large integer benchmarks fail loudly rather than silently.
struct CheckedInt64 {
    std::int64_t v = 0;

    CheckedInt64() = default;
    CheckedInt64(std::int64_t x) : v(x) {}

    friend CheckedInt64 operator+(CheckedInt64 a, CheckedInt64 b) {
        CheckedInt64 r;
        if (__builtin_add_overflow(a.v, b.v, &r.v)) throw OverflowError("CheckedInt64: + overflow");
        return r;
    }
    friend CheckedInt64 operator-(CheckedInt64 a, CheckedInt64 b) {
        CheckedInt64 r;
        if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw OverflowError("CheckedInt64: - overflow");
        return r;
    }
    friend CheckedInt64 operator*(CheckedInt64 a, CheckedInt64 b) {
        CheckedInt64 r;
        if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw OverflowError("CheckedInt64: * overflow");
        return r;
    }
    friend bool operator==(CheckedInt64, CheckedInt64) = default;
};

inline CheckedInt64 ring_scale(const Rational& c, CheckedInt64 x) {
    if (!c.is_integer())
        throw ValidationError("ring_scale: fractional coefficient over an integer ring");
    return CheckedInt64(c.numerator().convert_to<std::int64_t>()) * x;
}

/// Dense row-major matrix over a ring scalar S (Rational, CheckedInt64 or
/// double in practice).
template <typename S>
class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    S& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    std::vector<S>& data() { return e_; }
    const std::vector<S>& data() const { return e_; }

    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> e_;
};

/// Schoolbook product. Costs exactly r*c*k multiplications and r*c*(k-1)
/// additions for (r x k) * (k x c); inner products accumulate left to right.
template <typename S>
RingMatrix<S> naive_multiply(const RingMatrix<S>& a, const RingMatrix<S>& b,
                             OperationCounter& counter) {
    if (a.cols() != b.rows()) throw DimensionError("naive_multiply: inner dimension mismatch");
    RingMatrix<S> c(a.rows(), b.cols());
    const std::size_t k = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (k == 0) continue;
            S acc = a.at(i, 0) * b.at(0, j);
            for (std::size_t t = 1; t < k; ++t) acc = acc + a.at(i, t) * b.at(t, j);
            c.at(i, j) = std::move(acc);
        }
    counter.mults += static_cast<std::uint64_t>(a.rows()) * b.cols() * k;
    if (k > 0) counter.adds += static_cast<std::uint64_t>(a.rows()) * b.cols() * (k - 1);
    return c;
}

namespace detail {

template <typename S>
RingMatrix<S> block(const RingMatrix<S>& m, std::size_t r0, std::size_t c0, std::size_t h) {
    RingMatrix<S> out(h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
    return out;
}

template <typename S>
void place(RingMatrix<S>& m, const RingMatrix<S>& b, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(r0 + i, c0 + j) = b.at(i, j);
}

template <typename S>
void place_padded(RingMatrix<S>& dst, const RingMatrix<S>& src) {
    for (std::size_t i = 0; i < src.rows(); ++i)
        for (std::size_t j = 0; j < src.cols(); ++j) dst.at(i, j) = src.at(i, j);
}

template <typename S>
RingMatrix<S> add(const RingMatrix<S>& a, const RingMatrix<S>& b, OperationCounter& counter) {
    RingMatrix<S> c(a.rows(), a.cols());
    for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] = a.data()[k] + b.data()[k];
    counter.adds += c.data().size();
    return c;
}

template <typename S>
RingMatrix<S> sub(const RingMatrix<S>& a, const RingMatrix<S>& b, OperationCounter& counter) {
    RingMatrix<S> c(a.rows(), a.cols());
    for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] = a.data()[k] - b.data()[k];
    counter.adds += c.data().size();
    return c;
}

/// Seven-product recursion on square power-of-two matrices.
template <typename S>
RingMatrix<S> strassen_rec(const RingMatrix<S>& a, const RingMatrix<S>& b, std::size_t cutoff,
                           OperationCounter& counter, int parallel_depth) {
    const std::size_t n = a.rows();
    if (n <= cutoff) return naive_multiply(a, b, counter);
    const std::size_t h = n / 2;
    const RingMatrix<S> a11 = block(a, 0, 0, h), a12 = block(a, 0, h, h);
    const RingMatrix<S> a21 = block(a, h, 0, h), a22 = block(a, h, h, h);
    const RingMatrix<S> b11 = block(b, 0, 0, h), b12 = block(b, 0, h, h);
    const RingMatrix<S> b21 = block(b, h, 0, h), b22 = block(b, h, h, h);

    // Operand combinations: 10 block additions.
    const RingMatrix<S> l1 = a11;                     // a11
    const RingMatrix<S> r1 = add(b12, b22, counter);  // b12+b22
    const RingMatrix<S> l2 = sub(a11, a12, counter);  // a11-a12
    const RingMatrix<S> r2 = b22;
    const RingMatrix<S> l3 = sub(a22, a21, counter);  // a22-a21
    const RingMatrix<S> r3 = b11;
    const RingMatrix<S> l4 = a22;
    const RingMatrix<S> r4 = add(b11, b21, counter);  // b11+b21
    const RingMatrix<S> l5 = add(a11, a22, counter);  // a11+a22
    const RingMatrix<S> r5 = add(b11, b22, counter);  // b11+b22
    const RingMatrix<S> l6 = add(a11, a21, counter);  // a11+a21
    const RingMatrix<S> r6 = sub(b11, b12, counter);  // b11-b12
    const RingMatrix<S> l7 = add(a12, a22, counter);  // a12+a22
    const RingMatrix<S> r7 = sub(b21, b22, counter);  // b21-b22

    RingMatrix<S> p[7];
    if (parallel_depth > 0) {
        OperationCounter cs[7];
        std::future<RingMatrix<S>> fut[7];
        const RingMatrix<S>* ls[7] = {&l1, &l2, &l3, &l4, &l5, &l6, &l7};
        const RingMatrix<S>* rs[7] = {&r1, &r2, &r3, &r4, &r5, &r6, &r7};
        for (int q = 0; q < 7; ++q)
            fut[q] = std::async(std::launch::async, [&, q] {
                return strassen_rec(*ls[q], *rs[q], cutoff, cs[q], parallel_depth - 1);
            });
        for (int q = 0; q < 7; ++q) {
            p[q] = fut[q].get();
            counter += cs[q];
        }
    } else {
        p[0] = strassen_rec(l1, r1, cutoff, counter, 0);
        p[1] = strassen_rec(l2, r2, cutoff, counter, 0);
        p[2] = strassen_rec(l3, r3, cutoff, counter, 0);
        p[3] = strassen_rec(l4, r4, cutoff, counter, 0);
        p[4] = strassen_rec(l5, r5, cutoff, counter, 0);
        p[5] = strassen_rec(l6, r6, cutoff, counter, 0);
        p[6] = strassen_rec(l7, r7, cutoff, counter, 0);
    }

    // Output combinations: 8 block additions.
    // c11 = p5 + p7 - p2 - p4 ; c12 = p1 - p2 ; c21 = p4 - p3 ;
    // c22 = p5 - p1 - p3 - p6   (p_i one-based).
    const RingMatrix<S> c11 = sub(sub(add(p[4], p[6], counter), p[1], counter), p[3], counter);
    const RingMatrix<S> c12 = sub(p[0], p[1], counter);
    const RingMatrix<S> c21 = sub(p[3], p[2], counter);
    const RingMatrix<S> c22 = sub(sub(sub(p[4], p[0], counter), p[2], counter), p[5], counter);

    RingMatrix<S> c(n, n);
    place(c, c11, 0, 0);
    place(c, c12, 0, h);
    place(c, c21, h, 0);
    place(c, c22, h, h);
    return c;
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p *= 2;
    return p;
}

} // namespace detail

/// Strassen's recursion with padding: operands are embedded into the next
/// power-of-two square, recursed on with naive products at or below `cutoff`,
/// and the result is cropped back. Counts include the work done on padding
/// zeros, so for a 2^k square input with cutoff 1 they are exactly 7^k
/// multiplications and 6*(7^k - 4^k) additions. With parallel = true the
/// seven top-level products run concurrently (counts unchanged).
template <typename S>
RingMatrix<S> strassen_multiply(const RingMatrix<S>& a, const RingMatrix<S>& b,
                                std::size_t cutoff, OperationCounter& counter,
                                bool parallel = false) {
    if (a.cols() != b.rows()) throw DimensionError("strassen_multiply: inner dimension mismatch");
    if (cutoff == 0) throw DimensionError("strassen_multiply: cutoff must be at least 1");
    const std::size_t rows = a.rows(), cols = b.cols();
    if (rows == 0 || cols == 0 || a.cols() == 0) return RingMatrix<S>(rows, cols);
    const std::size_t n = detail::next_pow2(std::max({rows, a.cols(), cols}));
    RingMatrix<S> pa(n, n), pb(n, n);
    detail::place_padded(pa, a);
    detail::place_padded(pb, b);
    const RingMatrix<S> pc = detail::strassen_rec(pa, pb, cutoff, counter, parallel ? 1 : 0);
    RingMatrix<S> c(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) c.at(i, j) = pc.at(i, j);
    return c;
}

struct AlgorithmMultiplyOptions {
    /// Recurse on blocks with the same scheme while the block size is a
    /// power of m (square schemes only); otherwise blocks multiply naively.
    bool recursive = false;
    /// Blocks of this size or smaller multiply naively.
    std::size_t cutoff = 1;
};

/// Runs a verified bilinear scheme once at the block level: A is split into
/// m x n blocks, B into n x p blocks (padded to fit), each of the scheme's
/// terms costs one block product, and the products are recombined through
/// the w coordinates. Additions cover operand/output combinations,
/// including accumulation into zero-initialized blocks.
template <typename S>
RingMatrix<S> algorithm_multiply(const BilinearAlgorithm& alg, const RingMatrix<S>& a,
                                 const RingMatrix<S>& b, OperationCounter& counter,
                                 AlgorithmMultiplyOptions opts = {}) {
    if (a.cols() != b.rows()) throw DimensionError("algorithm_multiply: inner dimension mismatch");
    const std::size_t m = alg.m(), n = alg.n(), p = alg.p();
    if (a.rows() == 0 || a.cols() == 0 || b.cols() == 0)
        return RingMatrix<S>(a.rows(), b.cols());

    auto ceil_div = [](std::size_t x, std::size_t d) { return (x + d - 1) / d; };
    std::size_t s = std::max({ceil_div(a.rows(), m), ceil_div(a.cols(), n), ceil_div(b.cols(), p),
                              std::size_t{1}});
    if (opts.recursive && m == n && n == p && m >= 2) {
        std::size_t power = 1;
        while (power < s) power *= m; // round up so every level splits evenly
        s = power;
    }

    RingMatrix<S> pa(m * s, n * s), pb(n * s, p * s);
    detail::place_padded(pa, a);
    detail::place_padded(pb, b);

    auto grab = [s](const RingMatrix<S>& src, std::size_t bi, std::size_t bj) {
        return detail::block(src, bi * s, bj * s, s);
    };

    std::vector<RingMatrix<S>> cblocks(m * p, RingMatrix<S>(s, s));
    auto combine = [&](const RingMatrix<S>& src, std::span<const Rational> coeffs,
                       std::size_t cols_of) {
        RingMatrix<S> acc(s, s);
        for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
            const Rational& c = coeffs[idx];
            if (c.is_zero()) continue;
            const RingMatrix<S> blk = grab(src, idx / cols_of, idx % cols_of);
            if (c.is_one())
                acc = detail::add(acc, blk, counter);
            else if (c == Rational(-1))
                acc = detail::sub(acc, blk, counter);
            else {
                RingMatrix<S> scaled(s, s);
                for (std::size_t k = 0; k < scaled.data().size(); ++k)
                    scaled.data()[k] = ring_scale(c, blk.data()[k]);
                counter.mults += scaled.data().size();
                acc = detail::add(acc, scaled, counter);
            }
        }
        return acc;
    };

    const bool recurse = opts.recursive && m == n && n == p && s > opts.cutoff && s % m == 0;
    for (const Rank1Tensor& term : alg.terms()) {
        const RingMatrix<S> left = combine(pa, term.factor(0), n);
        const RingMatrix<S> right = combine(pb, term.factor(1), p);
        const RingMatrix<S> prod = recurse
                                       ? algorithm_multiply(alg, left, right, counter, opts)
                                       : naive_multiply(left, right, counter);
        const auto& w = term.factor(2);
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t i = 0; i < m; ++i) {
                const Rational& c = w[k * m + i];
                if (c.is_zero()) continue;
                RingMatrix<S>& dst = cblocks[i * p + k];
                if (c.is_one())
                    dst = detail::add(dst, prod, counter);
                else if (c == Rational(-1))
                    dst = detail::sub(dst, prod, counter);
                else {
                    RingMatrix<S> scaled(s, s);
                    for (std::size_t q = 0; q < scaled.data().size(); ++q)
                        scaled.data()[q] = ring_scale(c, prod.data()[q]);
                    counter.mults += scaled.data().size();
                    dst = detail::add(dst, scaled, counter);
                }
            }
    }

    RingMatrix<S> full(m * s, p * s);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < p; ++k) detail::place(full, cblocks[i * p + k], i * s, k * s);
    RingMatrix<S> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c.at(i, j) = full.at(i, j);
    return c;
}

/// Ring tags used by the bench harness and reports.
enum class BenchRing { rational, i64, f64 };
std::string to_string(BenchRing r);
BenchRing bench_ring_from_string(const std::string& s);

struct BenchConfig {
    std::vector<std::size_t> sizes;
    std::vector<std::string> methods = {"strassen"}; // "strassen" and/or "naive"
    std::vector<std::size_t> cutoffs = {64};
    BenchRing ring = BenchRing::f64;
    std::size_t trials = 3;
    std::uint64_t seed = 1;
    bool parallel = false;
};

struct BenchRow {
    std::size_t size = 0;
    std::string method;
    std::size_t cutoff = 0; // 0 when the method ignores it (naive)
    BenchRing ring = BenchRing::f64;
    std::size_t trials = 0;
    std::uint64_t median_ns = 0;
    std::uint64_t mults = 0;
    std::uint64_t adds = 0;
};

/// log(m2/m1) / log(s2/s1) between two measurements; the counter slope of
/// Strassen between power-of-two sizes approaches log2(7) ~ 2.807.
struct BenchSlope {
    std::size_t from_size = 0;
    std::size_t to_size = 0;
    std::string method;
    std::size_t cutoff = 0;
    double mult_slope = 0.0;
    double time_slope = 0.0;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchRow> rows;
    std::vector<BenchSlope> slopes;
};

/// Multiplies seeded random matrices for every size/method/cutoff cell,
/// recording the median wall time and the exact operation counts (identical
/// across trials by construction).
BenchReport run_bench(const BenchConfig& config);

/// "size,method,cutoff,ring,trials,median_ns,mults,adds" rows, one line per
/// cell, followed by "# slope ..." comment lines for consecutive sizes.
std::string bench_csv(const BenchReport& report);

} // namespace tensym
