#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tensym/tensor.hpp"

namespace tensym {

/// Bilinear matrix multiplication scheme for (m x n) * (n x p): a list of
/// rank-1 terms u (x) v (x) w whose sum is intended to be the structure
/// tensor S(m,n,p). u reads the left matrix (coordinates on M_{m,n}), v the
/// right (M_{n,p}), and w writes the product transposed (M_{p,m}); the term
/// count is the number of ring multiplications the scheme costs.
class BilinearAlgorithm {
public:
    BilinearAlgorithm(std::size_t m, std::size_t n, std::size_t p,
                      std::vector<Rank1Tensor> terms);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t p() const { return p_; }
    const FactorShape& shape() const { return shape_; }
    const std::vector<Rank1Tensor>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    const DenseTensor& target() const { return target_; }

private:
    std::size_t m_, n_, p_;
    FactorShape shape_;
    std::vector<Rank1Tensor> terms_;
    DenseTensor target_;
};

/// True iff the terms sum exactly to the target tensor.
bool verify(const BilinearAlgorithm& alg);

/// The seven-product 2x2 scheme, signs chosen so that every read/write
/// coefficient is +-1 and the term set is closed under the order-36
/// symmetry group constructed in segre.hpp.
BilinearAlgorithm strassen_algorithm();

/// The mnp-term textbook scheme e_ij (x) e_jk (x) e_ki.
BilinearAlgorithm naive_algorithm(std::size_t m, std::size_t n, std::size_t p);

/// The seven-product scheme written as a zero-sum family on
/// (V (x) V*)^(x3) regrouped to six factors: -S(2,2,2), the full diagonal
/// delta (x) delta (x) delta (which absorbs the identity term), and the six
/// regular rank-1 members. The eight members sum to zero, and the six
/// regular members each satisfy is_regular_element.
class ExtendedAlgorithm {
public:
    ExtendedAlgorithm(std::vector<DenseTensor> special_members,
                      std::vector<Rank1Tensor> regular_terms);

    const FactorShape& shape() const { return shape_; }
    /// All members in order: the special (non-regular) ones first, then the
    /// expansions of the regular terms.
    const std::vector<DenseTensor>& members() const { return members_; }
    const std::vector<Rank1Tensor>& regular_terms() const { return regular_terms_; }
    std::size_t member_count() const { return members_.size(); }

    bool members_sum_to_zero() const;

private:
    FactorShape shape_;
    std::vector<DenseTensor> members_;
    std::vector<Rank1Tensor> regular_terms_;
};

ExtendedAlgorithm extended_strassen();

/// JSON round-trip. The document stores m, n, p, the coordinate space tag
/// "smnp" and the terms as arrays of rational strings:
///   {"m":2,"n":2,"p":2,"space":"smnp",
///    "terms":[{"u":[...],"v":[...],"w":[...]}, ...]}
/// from_json checks shape, space tag and factor lengths; whether the terms
/// actually sum to the target stays the caller's question (run verify()).
/// Unknown keys are ignored on input and never produced on output.
nlohmann::json algorithm_to_json(const BilinearAlgorithm& alg);
BilinearAlgorithm algorithm_from_json(const nlohmann::json& doc);
void save_algorithm(const BilinearAlgorithm& alg, const std::filesystem::path& path);
BilinearAlgorithm load_algorithm(const std::filesystem::path& path);

/// FNV-1a over the canonical JSON serialization; stable across runs and
/// platforms. Reports embed this so transformed outputs can cite the exact
/// builtin they came from.
std::uint64_t algorithm_checksum(const BilinearAlgorithm& alg);

/// Scales a ring value by an exact rational coefficient. execute_bilinear
/// only needs this for coefficients other than 0 and +-1; add an overload
/// (found by ADL) to run schemes with fractional coefficients over a custom
/// ring.
inline Rational ring_scale(const Rational& c, const Rational& x) { return c * x; }
inline double ring_scale(const Rational& c, double x) { return c.to_double() * x; }
long long ring_scale(const Rational& c, long long x); // throws on fractional c

namespace detail {

template <typename R>
R linear_combination(std::span<const Rational> coeffs, std::span<const R> values) {
    R acc{};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Rational& c = coeffs[i];
        if (c.is_zero()) continue;
        if (c.is_one())
            acc = acc + values[i];
        else if (c == Rational(-1))
            acc = acc - values[i];
        else
            acc = acc + ring_scale(c, values[i]);
    }
    return acc;
}

} // namespace detail

/// Evaluates the scheme on flat row-major matrices a (m x n) and b (n x p)
/// over any commutative ring R: value-initialized R{} must be the zero and
/// +,- must work. Calls `mul` exactly term_count() times; all other ring
/// work is additions and coefficient scalings. Returns the m x p product,
/// row-major.
template <typename R, typename Mul>
std::vector<R> execute_bilinear(const BilinearAlgorithm& alg, std::span<const R> a,
                                std::span<const R> b, Mul&& mul) {
    const std::size_t m = alg.m(), n = alg.n(), p = alg.p();
    if (a.size() != m * n) throw DimensionError("execute_bilinear: left operand size");
    if (b.size() != n * p) throw DimensionError("execute_bilinear: right operand size");
    std::vector<R> c(m * p, R{});
    for (const Rank1Tensor& term : alg.terms()) {
        const R left = detail::linear_combination<R>(term.factor(0), a);
        const R right = detail::linear_combination<R>(term.factor(1), b);
        const R prod = mul(left, right);
        // w holds coordinates on M_{p,m}: entry (k,i) contributes to c_ik.
        const auto& w = term.factor(2);
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t i = 0; i < m; ++i) {
                const Rational& coeff = w[k * m + i];
                if (coeff.is_zero()) continue;
                R& dst = c[i * p + k];
                if (coeff.is_one())
                    dst = dst + prod;
                else if (coeff == Rational(-1))
                    dst = dst - prod;
                else
                    dst = dst + ring_scale(coeff, prod);
            }
    }
    return c;
}

template <typename R>
std::vector<R> execute_bilinear(const BilinearAlgorithm& alg, std::span<const R> a,
                                std::span<const R> b) {
    return execute_bilinear(alg, a, b, [](const R& x, const R& y) { return x * y; });
}

} // namespace tensym
