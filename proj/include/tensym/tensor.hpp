#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tensym/linalg.hpp"
#include "tensym/rational.hpp"

namespace tensym {

/// Factor dimensions of a tensor product space V_1 x ... x V_k.
///
/// Flat indexing is row-major: the last factor varies fastest. With this
/// convention a matrix unit e_ij in a d1 x d2 matrix space sits at flat index
/// i*d2 + j (0-based), and regrouping a [4,4,4] tensor over 2x2 matrix spaces
/// into [2,2,2,2,2,2] is a pure relabelling of the same flat buffer.
class FactorShape {
public:
    FactorShape() = default;
    explicit FactorShape(std::vector<std::size_t> dims);

    std::size_t factor_count() const { return dims_.size(); }
    std::size_t dim(std::size_t i) const { return dims_[i]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total() const { return total_; }

    std::size_t flatten(std::span<const std::size_t> multi) const;
    std::vector<std::size_t> unflatten(std::size_t flat) const;

    friend bool operator==(const FactorShape& a, const FactorShape& b) {
        return a.dims_ == b.dims_;
    }

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

/// Dense tensor with exact rational entries, flat row-major storage.
class DenseTensor {
public:
    DenseTensor() = default;
    explicit DenseTensor(FactorShape shape);
    DenseTensor(FactorShape shape, std::vector<Rational> entries);

    const FactorShape& shape() const { return shape_; }
    const std::vector<Rational>& entries() const { return e_; }

    Rational& operator[](std::size_t flat) { return e_[flat]; }
    const Rational& operator[](std::size_t flat) const { return e_[flat]; }
    Rational& at(std::span<const std::size_t> multi) { return e_[shape_.flatten(multi)]; }
    const Rational& at(std::span<const std::size_t> multi) const {
        return e_[shape_.flatten(multi)];
    }

    bool is_zero() const;

    DenseTensor operator-() const;
    DenseTensor& operator+=(const DenseTensor& o);
    DenseTensor& operator-=(const DenseTensor& o);
    friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
    friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
    friend DenseTensor operator*(const Rational& c, DenseTensor t);

    friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
        return a.shape_ == b.shape_ && a.e_ == b.e_;
    }
    /// Lexicographic on (dims, entries); used to sort tensors for multiset
    /// comparison.
    friend bool operator<(const DenseTensor& a, const DenseTensor& b);

private:
    FactorShape shape_;
    std::vector<Rational> e_;
};

/// Decomposable (rank <= 1) tensor u_1 (x) ... (x) u_k, kept in factored form.
/// Every factor must be a nonzero vector of the right length.
class Rank1Tensor {
public:
    Rank1Tensor(FactorShape shape, std::vector<std::vector<Rational>> factors);

    const FactorShape& shape() const { return shape_; }
    std::size_t factor_count() const { return factors_.size(); }
    const std::vector<Rational>& factor(std::size_t i) const { return factors_[i]; }
    const std::vector<std::vector<Rational>>& factors() const { return factors_; }

    DenseTensor expand() const;

private:
    FactorShape shape_;
    std::vector<std::vector<Rational>> factors_;
};

/// True iff the two lists contain the same tensors with the same
/// multiplicities, in any order.
bool same_multiset(std::vector<DenseTensor> a, std::vector<DenseTensor> b);

/// Matrix multiplication tensor S(m,n,p) = sum_{i,j,k} e_ij (x) e_jk (x) e_ki
/// in M_{m,n} (x) M_{n,p} (x) M_{p,m}, shape [mn, np, pm].
DenseTensor structure_tensor(std::size_t m, std::size_t n, std::size_t p);

/// The variant sum_{i,j,k} e_ij (x) e_jk (x) e_ik with the third factor in
/// M_{m,p}, shape [mn, np, mp].
DenseTensor mu_structure_tensor(std::size_t m, std::size_t n, std::size_t p);

/// Reindexes the third factor by transposing its matrix coordinates.
/// mu_to_structure reads the third factor as M_{m,p} (entry e_ik at i*p+k)
/// and rewrites it as M_{p,m} (e_ki at k*m+i), carrying the mu form of the
/// multiplication tensor to the structure form; structure_to_mu inverts it.
DenseTensor mu_to_structure(const DenseTensor& t, std::size_t m, std::size_t n, std::size_t p);
DenseTensor structure_to_mu(const DenseTensor& t, std::size_t m, std::size_t n, std::size_t p);

/// Six-factor tensor on [2,2,2,2,2,2] determined by a perfect matching of
/// positions: position 1 pairs with i1, 3 with i2, 5 with i3, where
/// (i1,i2,i3) is a permutation of (2,4,6) (1-based). The entry at a 0/1 index
/// tuple is 1 when every paired pair of indices agrees, else 0. The matching
/// (2,4,6) gives delta (x) delta (x) delta; (6,2,4) gives the regrouped
/// S(2,2,2).
DenseTensor delta_product(std::size_t i1, std::size_t i2, std::size_t i3);

/// Regroups [4,4,4] (three 2x2 matrix spaces) as [2,2,2,2,2,2] (row index,
/// column index per space). Flat buffers coincide; only the shape changes.
DenseTensor reshape_3to6(const DenseTensor& t);
DenseTensor reshape_6to3(const DenseTensor& t);

/// Bilinear dot product sum_i x_i y_i (the pairing of V with its dual in
/// coordinates).
Rational pairing(std::span<const Rational> x, std::span<const Rational> y);

/// Scales a nonzero vector so its first nonzero entry is 1; lines then
/// compare by vector equality. Throws ValidationError on the zero vector.
std::vector<Rational> line_representative(std::span<const Rational> v);

/// Checks the three regularity conditions for a rank-1 tensor on
/// [2,2,2,2,2,2] with factors x1..x6 (odd positions in V, even in V*):
///  1. {<x1>,<x3>,<x5>} = {<e1>,<e2>,<e1+e2>} and
///     {<x2>,<x4>,<x6>} = {<e^1>,<e^2>,<e^1-e^2>};
///  2. (x1,x4) = (x3,x6) = (x5,x2) = 0;
///  3. (x1,x2)(x3,x4)(x5,x6) = -1.
/// Conditions 2 and 3 are invariant under scaling factors within a term, so
/// the check is well-defined on the underlying point of the Segre variety.
bool is_regular_element(const Rank1Tensor& t);

/// True iff the factor lines of u and v differ in exactly one position.
/// Shapes must agree. Proportional tensors (all lines equal) are not
/// adjacent.
bool are_adjacent(const Rank1Tensor& u, const Rank1Tensor& v);

} // namespace tensym
