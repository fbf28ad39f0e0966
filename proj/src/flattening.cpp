#include "tensym/flattening.hpp"

#include <algorithm>

#include "tensym/errors.hpp"

namespace tensym {

namespace {

struct Unfolding {
    std::vector<std::size_t> kept;       // strictly increasing factor positions
    std::vector<std::size_t> dropped;    // complement
    std::size_t kept_total = 1;          // product of kept dims
    std::size_t dropped_total = 1;
};

Unfolding split_factors(const FactorShape& shape, std::span<const std::size_t> kept) {
    if (kept.empty()) throw DimensionError("quasiprojection: empty factor set");
    Unfolding u;
    u.kept.assign(kept.begin(), kept.end());
    for (std::size_t q = 0; q < u.kept.size(); ++q) {
        if (u.kept[q] >= shape.factor_count())
            throw DimensionError("quasiprojection: factor index out of range");
        if (q > 0 && u.kept[q] <= u.kept[q - 1])
            throw DimensionError("quasiprojection: factors must be strictly increasing");
        u.kept_total *= shape.dim(u.kept[q]);
    }
    for (std::size_t i = 0; i < shape.factor_count(); ++i)
        if (std::find(u.kept.begin(), u.kept.end(), i) == u.kept.end()) {
            u.dropped.push_back(i);
            u.dropped_total *= shape.dim(i);
        }
    return u;
}

} // namespace

Subspace quasiprojection(const DenseTensor& t, std::span<const std::size_t> kept) {
    const FactorShape& shape = t.shape();
    const Unfolding u = split_factors(shape, kept);

    // Row r of the slice matrix is the vector seen by the kept factors when
    // the dropped factors are frozen at the r-th assignment.
    ExactMatrix slices(u.dropped_total, u.kept_total);
    std::vector<std::size_t> multi(shape.factor_count(), 0);
    for (std::size_t r = 0; r < u.dropped_total; ++r) {
        std::size_t rest = r;
        for (std::size_t q = u.dropped.size(); q-- > 0;) {
            multi[u.dropped[q]] = rest % shape.dim(u.dropped[q]);
            rest /= shape.dim(u.dropped[q]);
        }
        for (std::size_t c = 0; c < u.kept_total; ++c) {
            std::size_t crest = c;
            for (std::size_t q = u.kept.size(); q-- > 0;) {
                multi[u.kept[q]] = crest % shape.dim(u.kept[q]);
                crest /= shape.dim(u.kept[q]);
            }
            slices.at(r, c) = t.at(multi);
        }
    }
    return Subspace::row_span(slices);
}

std::size_t flattening_rank(const DenseTensor& t, std::span<const std::size_t> kept) {
    return quasiprojection(t, kept).dim();
}

std::vector<std::size_t> flattening_profile(const DenseTensor& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.shape().factor_count(); ++i) {
        const std::size_t kept[1] = {i};
        out.push_back(flattening_rank(t, kept));
    }
    return out;
}

std::vector<Subspace> term_quasiprojection_profile(const BilinearAlgorithm& alg,
                                                   std::size_t factor) {
    if (factor >= 3) throw DimensionError("term_quasiprojection_profile: factor out of range");
    std::vector<Subspace> out;
    out.reserve(alg.term_count());
    const std::size_t kept[1] = {factor};
    for (const Rank1Tensor& t : alg.terms()) out.push_back(quasiprojection(t.expand(), kept));
    return out;
}

std::vector<std::array<std::size_t, 3>> dependent_triples(const BilinearAlgorithm& alg,
                                                          std::size_t factor) {
    const std::vector<Subspace> lines = term_quasiprojection_profile(alg, factor);
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            for (std::size_t k = j + 1; k < lines.size(); ++k)
                if (!is_independent({lines[i], lines[j], lines[k]})) out.push_back({i, j, k});
    return out;
}

std::size_t line_preserving_matrix_dim(const std::vector<Subspace>& lines) {
    if (lines.empty()) throw ValidationError("line_preserving_matrix_dim: no lines");
    const std::size_t d = lines[0].ambient_dim();
    // Unknown matrix M (d*d entries, row-major). "M maps <v> into <v>" is the
    // vanishing of all 2x2 minors [ (Mv)_a v_b - (Mv)_b v_a ], linear in M.
    std::vector<std::vector<Rational>> rows;
    for (const Subspace& line : lines) {
        if (line.ambient_dim() != d)
            throw DimensionError("line_preserving_matrix_dim: ambient dimension mismatch");
        if (line.dim() != 1) throw DimensionError("line_preserving_matrix_dim: entry not a line");
        const std::vector<Rational> v = line.basis().row(0);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) {
                std::vector<Rational> row(d * d);
                for (std::size_t j = 0; j < d; ++j) {
                    row[a * d + j] += v[j] * v[b];
                    row[b * d + j] -= v[j] * v[a];
                }
                rows.push_back(std::move(row));
            }
    }
    ExactMatrix constraints = ExactMatrix::from_rows(rows);
    return d * d - rank(constraints);
}

} // namespace tensym
