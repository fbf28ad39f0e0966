#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tensym/bilinear.hpp"
#include "tensym/linalg.hpp"
#include "tensym/tensor.hpp"

namespace tensym {

/// Span of the slices of t seen by the factors in `kept` (0-based, strictly
/// increasing, nonempty): one vector in the tensor product of the kept
/// factors per assignment of the complementary indices. This is the column
/// space of the unfolding of t whose rows are kept-factor indices, so its
/// dimension is the flattening rank. Lower bounds on tensor rank fall out:
/// no decomposition of t can use fewer terms than this dimension.
Subspace quasiprojection(const DenseTensor& t, std::span<const std::size_t> kept);

std::size_t flattening_rank(const DenseTensor& t, std::span<const std::size_t> kept);

/// Per-factor flattening ranks [rank factor 1, ..., rank factor k] of t.
std::vector<std::size_t> flattening_profile(const DenseTensor& t);

/// Quasiprojection of each term of the scheme onto one factor (0-based).
/// Terms are rank-1, so each entry is the line spanned by that term's
/// factor vector.
std::vector<Subspace> term_quasiprojection_profile(const BilinearAlgorithm& alg,
                                                   std::size_t factor);

/// Index triples {i < j < k} of terms whose factor lines on `factor` are
/// linearly dependent. For schemes whose term lines are pairwise distinct
/// and pairwise independent these are the minimal dependencies.
std::vector<std::array<std::size_t, 3>> dependent_triples(const BilinearAlgorithm& alg,
                                                          std::size_t factor);

/// Dimension of the space of d x d matrices mapping every given line into
/// itself (each line an 1-dimensional Subspace of Q^d). Scalars always
/// qualify, so the result is >= 1; equality means the line family pins every
/// such matrix to a scalar.
std::size_t line_preserving_matrix_dim(const std::vector<Subspace>& lines);

} // namespace tensym
