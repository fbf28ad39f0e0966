#include "tensym/segre.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "tensym/errors.hpp"

namespace tensym {

SegreMap::SegreMap(FactorShape shape, std::vector<std::size_t> perm,
                   std::vector<ExactMatrix> maps, std::string label)
    : shape_(std::move(shape)), perm_(std::move(perm)), maps_(std::move(maps)),
      label_(std::move(label)) {
    const std::size_t k = shape_.factor_count();
    if (perm_.size() != k || maps_.size() != k)
        throw DimensionError("SegreMap: need one permutation entry and one matrix per factor");
    std::vector<bool> seen(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        if (perm_[i] >= k || seen[perm_[i]])
            throw ValidationError("SegreMap: perm is not a permutation");
        seen[perm_[i]] = true;
        if (shape_.dim(perm_[i]) != shape_.dim(i))
            throw DimensionError("SegreMap: perm moves a factor to a different dimension");
        if (maps_[i].rows() != shape_.dim(i) || maps_[i].cols() != shape_.dim(i))
            throw DimensionError("SegreMap: factor matrix has wrong size");
        if (!is_invertible(maps_[i])) throw ValidationError("SegreMap: factor matrix is singular");
    }
}

SegreMap SegreMap::identity(const FactorShape& shape) {
    std::vector<std::size_t> perm(shape.factor_count());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<ExactMatrix> maps;
    maps.reserve(shape.factor_count());
    for (std::size_t i = 0; i < shape.factor_count(); ++i)
        maps.push_back(ExactMatrix::identity(shape.dim(i)));
    return SegreMap(shape, std::move(perm), std::move(maps), "e");
}

Rank1Tensor SegreMap::apply(const Rank1Tensor& t) const {
    if (!(t.shape() == shape_)) throw DimensionError("SegreMap::apply: shape mismatch");
    std::vector<std::vector<Rational>> out(shape_.factor_count());
    for (std::size_t i = 0; i < shape_.factor_count(); ++i)
        out[perm_[i]] = maps_[i].apply(t.factor(i));
    return Rank1Tensor(shape_, std::move(out));
}

DenseTensor SegreMap::apply_dense(const DenseTensor& t) const {
    if (!(t.shape() == shape_)) throw DimensionError("SegreMap::apply_dense: shape mismatch");
    const std::size_t k = shape_.factor_count();
    // Contract each factor through its matrix, then permute positions.
    DenseTensor cur = t;
    for (std::size_t f = 0; f < k; ++f) {
        DenseTensor next(shape_);
        const std::size_t d = shape_.dim(f);
        // Stride arithmetic: flat = hi * (d * lo_size) + a * lo_size + lo.
        std::size_t lo_size = 1;
        for (std::size_t i = f + 1; i < k; ++i) lo_size *= shape_.dim(i);
        const std::size_t hi_size = shape_.total() / (d * lo_size);
        for (std::size_t hi = 0; hi < hi_size; ++hi)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t lo = 0; lo < lo_size; ++lo) {
                    Rational acc;
                    for (std::size_t a = 0; a < d; ++a) {
                        const Rational& coeff = maps_[f].at(j, a);
                        if (coeff.is_zero()) continue;
                        acc += coeff * cur[(hi * d + a) * lo_size + lo];
                    }
                    next[(hi * d + j) * lo_size + lo] = std::move(acc);
                }
        cur = std::move(next);
    }
    bool trivial = true;
    for (std::size_t i = 0; i < k; ++i) trivial = trivial && perm_[i] == i;
    if (trivial) return cur;
    DenseTensor out(shape_);
    std::vector<std::size_t> dst(k);
    for (std::size_t flat = 0; flat < shape_.total(); ++flat) {
        const auto src = shape_.unflatten(flat);
        for (std::size_t i = 0; i < k; ++i) dst[perm_[i]] = src[i];
        out.at(dst) = cur[flat];
    }
    return out;
}

ExactMatrix SegreMap::induced() const {
    const std::size_t total = shape_.total();
    const std::size_t k = shape_.factor_count();
    std::vector<std::size_t> inv(k);
    for (std::size_t i = 0; i < k; ++i) inv[perm_[i]] = i;
    ExactMatrix m(total, total);
    for (std::size_t col = 0; col < total; ++col) {
        const auto I = shape_.unflatten(col);
        // Image of basis tensor e_I, built as an iterated Kronecker column:
        // position j of the image carries maps[inv(j)] applied to e_{I[inv(j)]}.
        std::vector<Rational> acc{Rational(1)};
        for (std::size_t j = 0; j < k; ++j) {
            const ExactMatrix& mat = maps_[inv[j]];
            const std::size_t d = shape_.dim(j);
            std::vector<Rational> next(acc.size() * d);
            for (std::size_t a = 0; a < acc.size(); ++a) {
                if (acc[a].is_zero()) continue;
                for (std::size_t b = 0; b < d; ++b) {
                    const Rational& coeff = mat.at(b, I[inv[j]]);
                    if (!coeff.is_zero()) next[a * d + b] = acc[a] * coeff;
                }
            }
            acc = std::move(next);
        }
        for (std::size_t row = 0; row < total; ++row)
            if (!acc[row].is_zero()) m.at(row, col) = std::move(acc[row]);
    }
    return m;
}

namespace {

// Canonical signature: the permutation followed by the factor maps with the
// scalar slack pinned down (first nonzero entry of every map except the last
// is scaled to 1, the extracted scalars are pushed into the last map). Two
// SegreMaps of the same shape induce equal linear maps iff their signatures
// agree, because a nontrivial factor permutation is never itself a pure
// per-factor map when all dimensions are >= 2.
std::vector<Rational> signature(const SegreMap& g) {
    const std::size_t k = g.shape().factor_count();
    std::vector<Rational> sig;
    for (std::size_t i = 0; i < k; ++i) sig.emplace_back(static_cast<long long>(g.perm()[i]));
    Rational carried(1);
    for (std::size_t i = 0; i < k; ++i) {
        const ExactMatrix& m = g.maps()[i];
        Rational scale(1);
        if (i + 1 < k) {
            // Pin to the first nonzero entry, even when it is already 1:
            // scanning further would make the form depend on later entries
            // and split scalar-equivalent maps.
            bool found = false;
            for (std::size_t r = 0; r < m.rows() && !found; ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (!m.at(r, c).is_zero()) {
                        scale = Rational(1) / m.at(r, c);
                        carried /= scale;
                        found = true;
                        break;
                    }
        } else {
            scale = carried;
        }
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) sig.push_back(scale * m.at(r, c));
    }
    return sig;
}

bool all_dims_at_least_two(const FactorShape& shape) {
    for (std::size_t d : shape.dims())
        if (d < 2) return false;
    return true;
}

} // namespace

SegreMap compose(const SegreMap& g, const SegreMap& h) {
    if (!(g.shape() == h.shape())) throw DimensionError("compose: shape mismatch");
    const std::size_t k = g.shape().factor_count();
    std::vector<std::size_t> perm(k);
    std::vector<ExactMatrix> maps;
    maps.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        perm[i] = g.perm()[h.perm()[i]];
        maps.push_back(g.maps()[h.perm()[i]] * h.maps()[i]);
    }
    std::string label;
    if (g.label() == "e")
        label = h.label();
    else if (h.label() == "e")
        label = g.label();
    else if (!g.label().empty() && !h.label().empty())
        label = g.label() + "*" + h.label();
    return SegreMap(g.shape(), std::move(perm), std::move(maps), std::move(label));
}

SegreMap inverse(const SegreMap& g) {
    const std::size_t k = g.shape().factor_count();
    std::vector<std::size_t> perm(k);
    std::vector<ExactMatrix> maps(k);
    for (std::size_t i = 0; i < k; ++i) {
        perm[g.perm()[i]] = i;
        maps[g.perm()[i]] = tensym::inverse(g.maps()[i]);
    }
    return SegreMap(g.shape(), std::move(perm), std::move(maps));
}

bool same_element(const SegreMap& g, const SegreMap& h) {
    if (!(g.shape() == h.shape())) return false;
    if (all_dims_at_least_two(g.shape())) return signature(g) == signature(h);
    return g.induced() == h.induced(); // degenerate dims: permutation not recoverable
}

bool is_identity(const SegreMap& g) {
    return same_element(g, SegreMap::identity(g.shape()));
}

bool is_automorphism_of(const SegreMap& g, const DenseTensor& t) {
    return g.apply_dense(t) == t;
}

GroupClosure GroupClosure::close(const std::vector<SegreMap>& generators, std::size_t cap) {
    if (generators.empty()) throw ValidationError("close: no generators");
    const FactorShape shape = generators[0].shape();
    for (const SegreMap& g : generators)
        if (!(g.shape() == shape)) throw DimensionError("close: generator shape mismatch");

    GroupClosure gc;
    auto add = [&gc](SegreMap g) -> bool {
        auto sig = signature(g);
        if (gc.index_.contains(sig)) return false;
        gc.index_.emplace(std::move(sig), gc.elements_.size());
        gc.elements_.push_back(std::move(g));
        return true;
    };

    add(SegreMap::identity(shape));
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t at = frontier.front();
        frontier.pop_front();
        for (const SegreMap& gen : generators) {
            SegreMap next = compose(gen, gc.elements_[at]);
            if (add(std::move(next))) {
                if (gc.elements_.size() > cap)
                    throw ClosureCapError("close: closure exceeded cap of " + std::to_string(cap));
                frontier.push_back(gc.elements_.size() - 1);
            }
        }
    }
    return gc;
}

std::size_t GroupClosure::index_of(const SegreMap& g) const {
    auto it = index_.find(signature(g));
    if (it == index_.end()) throw ValidationError("index_of: element not in group");
    return it->second;
}

bool GroupClosure::contains(const SegreMap& g) const {
    return index_.contains(signature(g));
}

void GroupClosure::build_table() const {
    if (!table_.empty()) return;
    const std::size_t n = elements_.size();
    table_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table_[i][j] = index_.at(signature(compose(elements_[i], elements_[j])));
}

std::size_t GroupClosure::product(std::size_t i, std::size_t j) const {
    build_table();
    return table_[i][j];
}

std::size_t GroupClosure::inverse_of(std::size_t i) const {
    build_table();
    for (std::size_t j = 0; j < elements_.size(); ++j)
        if (table_[i][j] == 0) return j;
    throw ValidationError("inverse_of: no inverse found (table corrupt)");
}

std::size_t GroupClosure::element_order(std::size_t i) const {
    build_table();
    std::size_t at = i, ord = 1;
    while (at != 0) {
        at = table_[at][i];
        ++ord;
        if (ord > elements_.size()) throw ValidationError("element_order: not a group");
    }
    return ord;
}

std::map<std::size_t, std::size_t> GroupClosure::order_histogram() const {
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t i = 0; i < elements_.size(); ++i) ++hist[element_order(i)];
    return hist;
}

std::vector<std::size_t> GroupClosure::center() const {
    build_table();
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        bool central = true;
        for (std::size_t j = 0; j < elements_.size() && central; ++j)
            central = table_[i][j] == table_[j][i];
        if (central) z.push_back(i);
    }
    return z;
}

std::size_t GroupClosure::abelianization_order() const {
    build_table();
    const std::size_t n = elements_.size();
    // Normal closure of the commutators; for a finite group the set of all
    // commutators already generates, and closing under products suffices.
    std::vector<bool> in(n, false);
    std::deque<std::size_t> work;
    auto push = [&](std::size_t x) {
        if (!in[x]) {
            in[x] = true;
            work.push_back(x);
        }
    };
    push(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            push(table_[table_[i][j]][inverse_of(table_[j][i])]); // [i,j] = ij(ji)^-1
    // Close under multiplication.
    std::vector<std::size_t> members;
    while (!work.empty()) {
        const std::size_t x = work.front();
        work.pop_front();
        members.push_back(x);
        for (std::size_t y : members) {
            push(table_[x][y]);
            push(table_[y][x]);
        }
    }
    const std::size_t commutator_order = members.size();
    if (n % commutator_order != 0)
        throw ValidationError("abelianization_order: commutator subgroup does not divide");
    return n / commutator_order;
}

std::vector<std::vector<std::size_t>> orbits(const GroupClosure& group,
                                             const std::vector<DenseTensor>& items) {
    const std::size_t n = items.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (const SegreMap& g : group.elements()) {
            const DenseTensor image = g.apply_dense(items[i]);
            std::size_t j = 0;
            while (j < n && !(items[j] == image)) ++j;
            if (j == n)
                throw ValidationError("orbits: group action leaves the given set");
            const std::size_t ri = find(i), rj = find(j);
            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < n; ++i) buckets[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(buckets.size());
    for (auto& [root, members] : buckets) out.push_back(std::move(members));
    return out;
}

namespace {

// Matrix of X -> T X T^-1 on 2x2 matrices in coordinates (e11,e12,e21,e22).
ExactMatrix conjugation_on_m2(const ExactMatrix& t) {
    const ExactMatrix ti = inverse(t);
    ExactMatrix m(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            // Image of e_ij is (col i of T) (row j of T^-1).
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b)
                    m.at(a * 2 + b, i * 2 + j) = t.at(a, i) * ti.at(j, b);
        }
    return m;
}

const ExactMatrix kT1 = ExactMatrix::from_ints({{0, -1}, {1, -1}});
const ExactMatrix kT2 = ExactMatrix::from_ints({{0, 1}, {1, 0}});
// Dual-side companions (T^-1)^T, so that pairings are preserved.
const ExactMatrix kT1Star = ExactMatrix::from_ints({{-1, -1}, {1, 0}});
const ExactMatrix kT2Star = kT2;

} // namespace

std::vector<SegreMap> strassen_group_generators() {
    const FactorShape shape({4, 4, 4});
    const ExactMatrix i4 = ExactMatrix::identity(4);
    // rho: e11 <-> e22, e12 -> -e12, e21 -> -e21. Conjugation by the Weyl
    // flip combined with a determinant twist; an involution.
    ExactMatrix rho(4, 4);
    rho.at(3, 0) = 1;
    rho.at(1, 1) = -1;
    rho.at(2, 2) = -1;
    rho.at(0, 3) = 1;

    std::vector<SegreMap> gens;
    gens.emplace_back(shape, std::vector<std::size_t>{2, 0, 1},
                      std::vector<ExactMatrix>{i4, i4, i4}, "A1");
    gens.emplace_back(shape, std::vector<std::size_t>{0, 2, 1},
                      std::vector<ExactMatrix>{rho, rho, rho}, "A2");
    const ExactMatrix c1 = conjugation_on_m2(kT1);
    const ExactMatrix c2 = conjugation_on_m2(kT2);
    gens.emplace_back(shape, std::vector<std::size_t>{0, 1, 2},
                      std::vector<ExactMatrix>{c1, c1, c1}, "B1");
    gens.emplace_back(shape, std::vector<std::size_t>{0, 1, 2},
                      std::vector<ExactMatrix>{c2, c2, c2}, "B2");
    return gens;
}

std::vector<SegreMap> extended_group_generators() {
    const FactorShape shape({2, 2, 2, 2, 2, 2});
    const ExactMatrix i2 = ExactMatrix::identity(2);
    // phi: V -> V* and psi: V* -> V share the coordinate matrix [[0,-1],[1,0]];
    // psi(phi(x)) = -x, and the six sign flips cancel across the factors.
    const ExactMatrix phi = ExactMatrix::from_ints({{0, -1}, {1, 0}});

    std::vector<SegreMap> gens;
    // A2x: reverse the three V (x) V* slots pairwise and exchange V with V*
    // through phi/psi.
    gens.emplace_back(shape, std::vector<std::size_t>{1, 0, 5, 4, 3, 2},
                      std::vector<ExactMatrix>{phi, phi, phi, phi, phi, phi}, "A2x");
    // A3x: keep factor 1, reverse factors 2..6, negate factor 1.
    gens.emplace_back(shape, std::vector<std::size_t>{0, 5, 4, 3, 2, 1},
                      std::vector<ExactMatrix>{-i2, i2, i2, i2, i2, i2}, "A3x");
    gens.emplace_back(shape, std::vector<std::size_t>{0, 1, 2, 3, 4, 5},
                      std::vector<ExactMatrix>{kT1, kT1Star, kT1, kT1Star, kT1, kT1Star}, "B1x");
    gens.emplace_back(shape, std::vector<std::size_t>{0, 1, 2, 3, 4, 5},
                      std::vector<ExactMatrix>{kT2, kT2Star, kT2, kT2Star, kT2, kT2Star}, "B2x");
    return gens;
}

SegreMap sandwich(const ExactMatrix& P, const ExactMatrix& Q, const ExactMatrix& R,
                  std::size_t m, std::size_t n, std::size_t p) {
    auto check = [](const ExactMatrix& x, std::size_t d, const char* name) {
        if (x.rows() != d || x.cols() != d)
            throw DimensionError(std::string("sandwich: ") + name + " has wrong size");
        if (!is_invertible(x))
            throw ValidationError(std::string("sandwich: ") + name + " is singular");
    };
    check(P, m, "P");
    check(Q, n, "Q");
    check(R, p, "R");
    const ExactMatrix Qi = inverse(Q), Ri = inverse(R), Pi = inverse(P);

    // X -> A X B as a matrix on row-major coordinates of M_{r,c}.
    auto two_sided = [](const ExactMatrix& A, const ExactMatrix& B, std::size_t r,
                        std::size_t c) {
        ExactMatrix out(r * c, r * c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < c; ++b)
                        out.at(a * c + b, i * c + j) = A.at(a, i) * B.at(j, b);
        return out;
    };

    const FactorShape shape({m * n, n * p, p * m});
    std::vector<ExactMatrix> maps;
    maps.push_back(two_sided(P, Qi, m, n));
    maps.push_back(two_sided(Q, Ri, n, p));
    maps.push_back(two_sided(R, Pi, p, m));
    SegreMap g(shape, {0, 1, 2}, std::move(maps));
    if (!is_automorphism_of(g, structure_tensor(m, n, p)))
        throw ValidationError("sandwich: construction does not fix the structure tensor");
    return g;
}

BilinearAlgorithm transform_algorithm(const SegreMap& g, const BilinearAlgorithm& alg) {
    if (!(g.shape() == alg.shape()))
        throw DimensionError("transform_algorithm: map shape does not match algorithm");
    if (!is_automorphism_of(g, alg.target()))
        throw ValidationError("transform_algorithm: map does not fix the target tensor");
    std::vector<Rank1Tensor> terms;
    terms.reserve(alg.term_count());
    for (const Rank1Tensor& t : alg.terms()) terms.push_back(g.apply(t));
    return BilinearAlgorithm(alg.m(), alg.n(), alg.p(), std::move(terms));
}

} // namespace tensym
