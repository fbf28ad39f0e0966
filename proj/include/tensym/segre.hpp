#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tensym/bilinear.hpp"
#include "tensym/linalg.hpp"
#include "tensym/tensor.hpp"

namespace tensym {

/// Invertible linear map of a tensor product space assembled from a factor
/// permutation tau and one invertible matrix per factor: factor i of the
/// input is sent through maps[i] and lands at position tau(i) of the output.
/// Such maps compose, invert, and act on both rank-1 and dense tensors.
///
/// Different (tau, maps) pairs can describe the same linear map (scalars
/// slide between factors), so equality goes through a canonical form: the
/// induced matrix on the fully flattened space.
class SegreMap {
public:
    SegreMap(FactorShape shape, std::vector<std::size_t> perm, std::vector<ExactMatrix> maps,
             std::string label = "");

    static SegreMap identity(const FactorShape& shape);

    const FactorShape& shape() const { return shape_; }
    /// tau as a 0-based permutation: factor i lands at position perm()[i].
    const std::vector<std::size_t>& perm() const { return perm_; }
    const std::vector<ExactMatrix>& maps() const { return maps_; }
    /// Generator word ("e" for the identity); informational only.
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    Rank1Tensor apply(const Rank1Tensor& t) const;
    DenseTensor apply_dense(const DenseTensor& t) const;

    /// The induced matrix on the flattened space (total x total); column
    /// shape_.flatten(I) is the image of the basis tensor with index I. This
    /// is the canonical form: two SegreMaps are the same group element iff
    /// their induced matrices are equal.
    ExactMatrix induced() const;

private:
    FactorShape shape_;
    std::vector<std::size_t> perm_;
    std::vector<ExactMatrix> maps_;
    std::string label_;
};

/// g after h. Shapes must agree.
SegreMap compose(const SegreMap& g, const SegreMap& h);

SegreMap inverse(const SegreMap& g);

/// Linear-map equality (via canonical forms), not tuple equality.
bool same_element(const SegreMap& g, const SegreMap& h);

bool is_identity(const SegreMap& g);

/// True iff g fixes t exactly.
bool is_automorphism_of(const SegreMap& g, const DenseTensor& t);

/// Finite group generated by SegreMaps, closed by breadth-first products.
/// Elements carry shortest-found generator words. Element 0 is the identity.
class GroupClosure {
public:
    /// Throws ClosureCapError if the closure exceeds `cap` elements and
    /// ValidationError on empty or shape-mismatched generators.
    static GroupClosure close(const std::vector<SegreMap>& generators, std::size_t cap = 10000);

    std::size_t order() const { return elements_.size(); }
    const std::vector<SegreMap>& elements() const { return elements_; }
    const SegreMap& element(std::size_t i) const { return elements_[i]; }

    /// Index of the element equal to g; throws ValidationError if g is not
    /// in the group.
    std::size_t index_of(const SegreMap& g) const;
    bool contains(const SegreMap& g) const;

    /// Index of elements[i] composed after elements[j].
    std::size_t product(std::size_t i, std::size_t j) const;
    std::size_t inverse_of(std::size_t i) const;
    std::size_t element_order(std::size_t i) const;

    /// Multiset of element orders, as order -> count.
    std::map<std::size_t, std::size_t> order_histogram() const;
    std::vector<std::size_t> center() const;
    /// Order of the quotient by the commutator subgroup.
    std::size_t abelianization_order() const;

private:
    GroupClosure() = default;
    std::vector<SegreMap> elements_;
    std::map<std::vector<Rational>, std::size_t> index_; // canonical signature -> index
    mutable std::vector<std::vector<std::size_t>> table_; // lazy multiplication table
    void build_table() const;
};

/// Orbit partition of `items` under the group action (dense images compared
/// exactly). Orbits are listed by smallest member index, indices ascending.
/// Throws ValidationError if the action leaves the set (the set must be
/// closed under the group for a partition to make sense).
std::vector<std::vector<std::size_t>> orbits(const GroupClosure& group,
                                             const std::vector<DenseTensor>& items);

/// Generators of the symmetry group of the seven-term 2x2 scheme acting on
/// [4,4,4]:
///   A1  cycles the three factors (x,y,z) -> (y,z,x);
///   A2  swaps the last two factors and twists each by the involution
///       e11 <-> e22, e12 -> -e12, e21 -> -e21;
///   B1, B2  conjugate all three factors by T1 = [[0,-1],[1,-1]] (order 3)
///       and T2 = [[0,1],[1,0]] (order 2).
/// The closure has order 36 and is isomorphic to S3 x S3.
std::vector<SegreMap> strassen_group_generators();

/// Generators of the extended symmetry group on [2,2,2,2,2,2], acting on the
/// eight-member zero-sum family of extended_strassen(). B1x/B2x are the
/// conjugations above split over V and V* factors; A2x twists by
/// phi/psi = [[0,-1],[1,0]] while reversing the three matrix slots; A3x
/// reverses factors 2..6 and negates one factor. The closure has order 72.
std::vector<SegreMap> extended_group_generators();

/// The isotropy map (X, Y, Z) -> (P X Q^-1, Q Y R^-1, R Z P^-1) of
/// M_{m,n} x M_{n,p} x M_{p,m} as a SegreMap. Fixes S(m,n,p) for every
/// invertible P, Q, R; throws ValidationError when a matrix is singular or
/// sized wrong.
SegreMap sandwich(const ExactMatrix& P, const ExactMatrix& Q, const ExactMatrix& R,
                  std::size_t m, std::size_t n, std::size_t p);

/// Applies g to every term of the scheme. Requires g to fix the target
/// tensor (throws ValidationError otherwise), so the result is again a valid
/// algorithm with the same term count.
BilinearAlgorithm transform_algorithm(const SegreMap& g, const BilinearAlgorithm& alg);

} // namespace tensym
