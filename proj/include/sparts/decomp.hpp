#pragma once
/**
 * Decomposable forms held as factored objects over a number field K:
 * validated factorizations c * prod l_i^{e_i} of integer forms, the
 * relation graph on the factor set with triangular connectedness, the
 * effective solvability conditions, the finiteness criterion quantified
 * over Galois-proper subsets, non-vanishing over the rationals, critical
 * subsets and the invariant c(F) on rational subspaces, dependence graphs
 * with rank chains, and discriminant-form construction from embedding data.
 *
 * Everything is exact: ranks and memberships run over K via Gaussian
 * elimination on rational-vector coefficients; subspace sums and
 * intersections use echelonized row spaces.
 */

#include "sparts/multipoly.hpp"
#include "sparts/numfield.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sparts {

namespace detail {

using KVec = std::vector<FieldElement>;
using KMat = std::vector<KVec>;

/// Scale so the first non-zero coefficient becomes 1; the representative of
/// the proportionality class of a non-zero coefficient vector.
inline KVec normalize_form(const NumberField& K, const KVec& coeffs) {
    for (const FieldElement& c : coeffs) {
        if (!K.is_zero(c)) {
            FieldElement s = K.inverse(c);
            KVec out;
            out.reserve(coeffs.size());
            for (const FieldElement& x : coeffs) out.push_back(K.mul(s, x));
            return out;
        }
    }
    SPARTS_INVARIANT(false, "normalization of an identically zero form");
    return coeffs;
}

inline bool proportional(const NumberField& K, const KVec& a, const KVec& b) {
    if (a.size() != b.size()) return false;
    return normalize_form(K, a) == normalize_form(K, b);
}

/// Sparse polynomial over K used only to expand products of linear forms.
using KTerms = std::map<std::vector<unsigned>, FieldElement>;

inline KTerms kterms_multiply_linear(const NumberField& K, const KTerms& terms,
                                     const KVec& form) {
    KTerms out;
    const unsigned m = static_cast<unsigned>(form.size());
    for (const auto& [e, val] : terms) {
        for (unsigned j = 0; j < m; ++j) {
            if (K.is_zero(form[j])) continue;
            std::vector<unsigned> e2 = e;
            ++e2[j];
            FieldElement add = K.mul(val, form[j]);
            auto it = out.find(e2);
            if (it == out.end())
                out.emplace(std::move(e2), std::move(add));
            else
                it->second = K.add(it->second, add);
        }
    }
    return out;
}

inline void kterms_drop_zeros(const NumberField& K, KTerms& terms) {
    for (auto it = terms.begin(); it != terms.end();)
        it = K.is_zero(it->second) ? terms.erase(it) : std::next(it);
}

/// Rank of a rational matrix by exact Gaussian elimination.
inline unsigned rational_rank(std::vector<std::vector<Rat>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    unsigned rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            Rat f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

/// Echelon basis of the row space; zero rows dropped.
inline KMat row_space_basis(const NumberField& K, KMat rows) {
    unsigned rank = gauss_rank_over_K(K, rows);
    rows.resize(rank);
    return rows;
}

inline KMat subspace_sum(const NumberField& K, KMat a, const KMat& b) {
    a.insert(a.end(), b.begin(), b.end());
    return row_space_basis(K, std::move(a));
}

/// Basis of the intersection of two row spaces: echelonize [a|a; b|0] and
/// read off the right halves of rows whose left half vanished.
inline KMat subspace_intersection(const NumberField& K, const KMat& a, const KMat& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t m = a[0].size();
    KMat wide;
    wide.reserve(a.size() + b.size());
    for (const KVec& row : a) {
        KVec w = row;
        w.insert(w.end(), row.begin(), row.end());
        wide.push_back(std::move(w));
    }
    const FieldElement zero = K.zero();
    for (const KVec& row : b) {
        KVec w = row;
        w.insert(w.end(), m, zero);
        wide.push_back(std::move(w));
    }
    unsigned rank = gauss_rank_over_K(K, wide);
    KMat inter;
    for (unsigned r = 0; r < rank; ++r) {
        bool left_zero = true;
        for (std::size_t c = 0; c < m && left_zero; ++c)
            left_zero = K.is_zero(wide[r][c]);
        if (left_zero) inter.emplace_back(wide[r].begin() + static_cast<long>(m), wide[r].end());
    }
    return inter;
}

/// Whether target lies in the K-span of the rows.
inline bool in_span(const NumberField& K, const KMat& rows, const KVec& target) {
    KMat base = rows;
    unsigned r0 = gauss_rank_over_K(K, base);
    KMat ext = rows;
    ext.push_back(target);
    unsigned r1 = gauss_rank_over_K(K, ext);
    return r0 == r1;
}

/// Union-find over a fixed vertex count.
class DisjointSets {
public:
    explicit DisjointSets(unsigned n) : parent_(n) {
        for (unsigned i = 0; i < n; ++i) parent_[i] = i;
    }
    unsigned find(unsigned x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(unsigned a, unsigned b) { parent_[find(a)] = find(b); }

    /// Component ids renumbered 0..k-1 in order of first appearance.
    std::pair<std::vector<unsigned>, unsigned> components() {
        std::vector<unsigned> id(parent_.size());
        std::map<unsigned, unsigned> seen;
        for (unsigned i = 0; i < parent_.size(); ++i) {
            unsigned root = find(i);
            auto [it, fresh] = seen.emplace(root, static_cast<unsigned>(seen.size()));
            id[i] = it->second;
            (void)fresh;
        }
        return {std::move(id), static_cast<unsigned>(seen.size())};
    }

private:
    std::vector<unsigned> parent_;
};

}  // namespace detail

/// One linear factor together with its multiplicity in the factorization.
struct WeightedForm {
    LinearFormK form;
    unsigned multiplicity;
};

/**
 * A decomposable integer form F = c * prod l_i^{e_i} over a number field
 * with a validated automorphism group. Construction proves: the expansion
 * over K reproduces the integer form exactly; the factor set is closed
 * under every automorphism up to proportionality; multiplicities are
 * constant on Galois orbits; and the factors are pairwise non-proportional.
 */
class DecomposableForm {
public:
    DecomposableForm(NumberField field, AutomorphismGroup group, Rat constant,
                     std::vector<WeightedForm> factors, MultiPoly integer_form)
        : field_(std::move(field)),
          group_(std::move(group)),
          constant_(std::move(constant)),
          factors_(std::move(factors)),
          integer_form_(std::move(integer_form)) {
        SPARTS_CHECK(constant_ != 0, "constant factor must be non-zero");
        SPARTS_CHECK(!factors_.empty(), "a factorization needs at least one linear factor");
        SPARTS_CHECK(group_.images.size() == field_.degree(),
                     "automorphism group does not match the field");
        vars_ = static_cast<unsigned>(factors_.front().form.vars());
        SPARTS_CHECK(integer_form_.vars() == vars_,
                     "integer form and factors disagree on the variable count");
        degree_ = 0;
        for (const WeightedForm& wf : factors_) {
            SPARTS_CHECK(wf.form.vars() == vars_, "factors disagree on the variable count");
            SPARTS_CHECK(wf.multiplicity >= 1, "multiplicities must be positive");
            degree_ += wf.multiplicity;
        }
        for (std::size_t i = 0; i < factors_.size(); ++i)
            for (std::size_t j = i + 1; j < factors_.size(); ++j)
                SPARTS_CHECK(!detail::proportional(field_, factors_[i].form.coeffs(),
                                                   factors_[j].form.coeffs()),
                             "proportional pair of factors");
        verify_expansion();
        build_orbit_maps();
    }

    const NumberField& field() const { return field_; }
    const AutomorphismGroup& group() const { return group_; }
    const Rat& constant() const { return constant_; }
    const std::vector<WeightedForm>& factors() const { return factors_; }
    const MultiPoly& integer_form() const { return integer_form_; }
    unsigned vars() const { return vars_; }
    unsigned degree() const { return degree_; }
    unsigned factor_count() const { return static_cast<unsigned>(factors_.size()); }

    /// Index permutation of the factor set under group element g.
    const std::vector<unsigned>& orbit_map(unsigned g) const { return orbit_maps_[g]; }

    /// c * prod l_i(x)^{e_i} computed in K; equals the integer form at x.
    FieldElement evaluate_factored(const std::vector<Int>& x) const {
        SPARTS_CHECK(x.size() == vars_, "evaluation arity mismatch");
        FieldElement result = field_.from_rat(constant_);
        for (const WeightedForm& wf : factors_) {
            FieldElement v = field_.zero();
            for (unsigned j = 0; j < vars_; ++j)
                v = field_.add(v, field_.scale(Rat(x[j]), wf.form.coeffs()[j]));
            for (unsigned e = 0; e < wf.multiplicity; ++e) result = field_.mul(result, v);
        }
        return result;
    }

private:
    void verify_expansion() const {
        detail::KTerms expansion;
        expansion.emplace(std::vector<unsigned>(vars_, 0), field_.from_rat(constant_));
        for (const WeightedForm& wf : factors_)
            for (unsigned e = 0; e < wf.multiplicity; ++e)
                expansion = detail::kterms_multiply_linear(field_, expansion,
                                                           wf.form.coeffs());
        detail::kterms_drop_zeros(field_, expansion);
        detail::KTerms expected;
        for (const auto& [e, c] : integer_form_.terms())
            expected.emplace(e, field_.from_rat(Rat(c)));
        SPARTS_CHECK(expansion == expected,
                     "factorization does not expand to the supplied integer form");
    }

    void build_orbit_maps() {
        const unsigned r = factor_count();
        orbit_maps_.reserve(group_.images.size());
        for (const FieldElement& sigma : group_.images) {
            std::vector<unsigned> map(r, r);
            for (unsigned i = 0; i < r; ++i) {
                detail::KVec image;
                image.reserve(vars_);
                for (const FieldElement& c : factors_[i].form.coeffs())
                    image.push_back(field_.apply(sigma, c));
                for (unsigned j = 0; j < r; ++j) {
                    if (detail::proportional(field_, image, factors_[j].form.coeffs())) {
                        map[i] = j;
                        break;
                    }
                }
                SPARTS_CHECK(map[i] < r, "Galois image of a factor is not in the factor set");
                SPARTS_CHECK(factors_[map[i]].multiplicity == factors_[i].multiplicity,
                             "Galois action does not preserve multiplicities");
            }
            std::vector<bool> hit(r, false);
            for (unsigned i = 0; i < r; ++i) hit[map[i]] = true;
            for (unsigned i = 0; i < r; ++i)
                SPARTS_INVARIANT(hit[i], "Galois action permutes the factor set");
            orbit_maps_.push_back(std::move(map));
        }
    }

    NumberField field_;
    AutomorphismGroup group_;
    Rat constant_;
    std::vector<WeightedForm> factors_;
    MultiPoly integer_form_;
    unsigned vars_ = 0;
    unsigned degree_ = 0;
    std::vector<std::vector<unsigned>> orbit_maps_;
};

/// Validation gate: every DecomposableForm is checked on construction.
inline DecomposableForm validate_factorization(NumberField field, AutomorphismGroup group,
                                               Rat constant,
                                               std::vector<WeightedForm> factors,
                                               MultiPoly integer_form) {
    return DecomposableForm(std::move(field), std::move(group), std::move(constant),
                            std::move(factors), std::move(integer_form));
}

namespace detail {

constexpr unsigned kSubsetCap = 16;

inline void check_subset_cap(unsigned r) {
    if (r > kSubsetCap)
        throw budget_error("factor count exceeds the subset enumeration cap of 16");
}

inline std::vector<unsigned> mask_to_indices(std::uint32_t mask) {
    std::vector<unsigned> out;
    for (unsigned i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u) out.push_back(i);
    return out;
}

/// Image of an index subset under a factor permutation.
inline std::uint32_t map_mask(const std::vector<unsigned>& perm, std::uint32_t mask) {
    std::uint32_t out = 0;
    for (unsigned i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u) out |= (std::uint32_t{1} << perm[i]);
    return out;
}

/// M is Galois-proper when every automorphism maps it to itself or to a
/// disjoint set.
inline bool gal_proper_mask(const DecomposableForm& F, std::uint32_t mask) {
    for (unsigned g = 0; g < F.group().images.size(); ++g) {
        std::uint32_t img = map_mask(F.orbit_map(g), mask);
        if (img != mask && (img & mask) != 0) return false;
    }
    return true;
}

/// Memoized restricted ranks of factor subsets; rows are the factors
/// restricted to a subspace (or the plain coefficient rows).
class SubsetRanks {
public:
    SubsetRanks(const NumberField& K, KMat rows)
        : K_(K), rows_(std::move(rows)),
          memo_(std::size_t{1} << rows_.size(), -1) {}

    unsigned rank(std::uint32_t mask) {
        int& slot = memo_[mask];
        if (slot >= 0) return static_cast<unsigned>(slot);
        KMat sub;
        for (unsigned i = 0; i < rows_.size(); ++i)
            if (mask & (std::uint32_t{1} << i)) sub.push_back(rows_[i]);
        unsigned r = gauss_rank_over_K(K_, sub);
        slot = static_cast<int>(r);
        return r;
    }

    const KMat& rows() const { return rows_; }

private:
    const NumberField& K_;
    KMat rows_;
    std::vector<int> memo_;
};

/// Factor coefficient rows restricted to the subspace spanned by the given
/// rational basis (columns become the basis directions). Validates the
/// basis by the same rules as restricted ranks.
inline KMat restricted_rows(const DecomposableForm& F,
                            const std::vector<std::vector<Rat>>& basis) {
    std::vector<LinearFormK> none;
    rank_over_K(F.field(), none, basis);  // validates shape and independence
    SPARTS_CHECK(basis[0].size() == F.vars(),
                 "subspace basis and form disagree on the variable count");
    KMat rows;
    rows.reserve(F.factor_count());
    for (const WeightedForm& wf : F.factors()) {
        KVec row;
        row.reserve(basis.size());
        for (const auto& a : basis) {
            FieldElement e = F.field().zero();
            for (unsigned j = 0; j < F.vars(); ++j)
                if (a[j] != 0) e = F.field().add(e, F.field().scale(a[j], wf.form.coeffs()[j]));
            row.push_back(std::move(e));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline unsigned subset_weight(const DecomposableForm& F, std::uint32_t mask) {
    unsigned w = 0;
    for (unsigned i = 0; i < F.factor_count(); ++i)
        if (mask & (std::uint32_t{1} << i)) w += F.factors()[i].multiplicity;
    return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Relation graph on the factor set

struct FactorGraph {
    std::vector<std::pair<unsigned, unsigned>> edges;  // i < j
    std::vector<unsigned> component;                   // per factor, ids 0..k-1
    unsigned component_count = 0;
    bool triangularly_connected = false;
};

/**
 * Edge {l, l'} when a third factor l'' lies in their span; for pairwise
 * non-proportional factors the witnessing relation automatically has all
 * three coefficients non-zero (a zero coefficient would force two of the
 * forms proportional). Components by union-find; the graph is triangularly
 * connected when it has one component and at least three vertices.
 */
inline FactorGraph factor_graph(const DecomposableForm& F) {
    const unsigned r = F.factor_count();
    FactorGraph g;
    detail::DisjointSets dsu(r);
    for (unsigned i = 0; i < r; ++i) {
        for (unsigned j = i + 1; j < r; ++j) {
            bool edge = false;
            for (unsigned k = 0; k < r && !edge; ++k) {
                if (k == i || k == j) continue;
                detail::KMat span_rows = {F.factors()[i].form.coeffs(),
                                          F.factors()[j].form.coeffs()};
                edge = detail::in_span(F.field(), span_rows, F.factors()[k].form.coeffs());
            }
            if (edge) {
                g.edges.emplace_back(i, j);
                dsu.unite(i, j);
            }
        }
    }
    auto [ids, count] = dsu.components();
    g.component = std::move(ids);
    g.component_count = count;
    g.triangularly_connected = (count == 1 && r >= 3);
    return g;
}

// ---------------------------------------------------------------------------
// Effective solvability conditions

struct EffectiveConditions {
    bool full_rank = false;            // the factor set has rank m over K
    bool components_span_last = false; // one component, or X_m lies in every
                                       // component's span
    unsigned component_count = 0;
};

inline EffectiveConditions check_effective_conditions(const DecomposableForm& F) {
    EffectiveConditions out;
    std::vector<LinearFormK> forms;
    forms.reserve(F.factor_count());
    for (const WeightedForm& wf : F.factors()) forms.push_back(wf.form);
    out.full_rank = (rank_over_K(F.field(), forms) == F.vars());

    FactorGraph g = factor_graph(F);
    out.component_count = g.component_count;
    if (g.component_count == 1) {
        out.components_span_last = true;
        return out;
    }
    // X_m must be a K-linear combination of the factors in every component.
    detail::KVec last(F.vars(), F.field().zero());
    last[F.vars() - 1] = F.field().one();
    out.components_span_last = true;
    for (unsigned comp = 0; comp < g.component_count && out.components_span_last; ++comp) {
        detail::KMat rows;
        for (unsigned i = 0; i < F.factor_count(); ++i)
            if (g.component[i] == comp) rows.push_back(F.factors()[i].form.coeffs());
        out.components_span_last = detail::in_span(F.field(), rows, last);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finiteness criterion

/**
 * True iff the factor set has full rank m and, for every Galois-proper
 * subset M with {} != M != L_F, the space sum_sigma [sigma(M)] cap
 * [L_F \ sigma(M)] contains some form from the search set (the factors
 * plus any extra forms supplied). Orbit images are deduplicated before
 * summing; repeated terms cannot change a sum of subspaces.
 */
inline bool check_finiteness_condition(const DecomposableForm& F,
                                       const std::vector<LinearFormK>& extra_forms = {}) {
    const unsigned r = F.factor_count();
    detail::check_subset_cap(r);
    for (const LinearFormK& f : extra_forms)
        SPARTS_CHECK(f.vars() == F.vars(), "extra forms must share the variable count");

    std::vector<LinearFormK> all;
    all.reserve(r);
    for (const WeightedForm& wf : F.factors()) all.push_back(wf.form);
    if (rank_over_K(F.field(), all) != F.vars()) return false;

    std::vector<detail::KVec> search;
    for (const LinearFormK& f : all) search.push_back(f.coeffs());
    for (const LinearFormK& f : extra_forms) search.push_back(f.coeffs());

    const std::uint32_t full = (std::uint32_t{1} << r) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (!detail::gal_proper_mask(F, mask)) continue;
        std::vector<std::uint32_t> images;
        for (unsigned g = 0; g < F.group().images.size(); ++g) {
            std::uint32_t img = detail::map_mask(F.orbit_map(g), mask);
            if (std::find(images.begin(), images.end(), img) == images.end())
                images.push_back(img);
        }
        detail::KMat space;
        for (std::uint32_t img : images) {
            detail::KMat inside, outside;
            for (unsigned i = 0; i < r; ++i) {
                if (img & (std::uint32_t{1} << i))
                    inside.push_back(F.factors()[i].form.coeffs());
                else
                    outside.push_back(F.factors()[i].form.coeffs());
            }
            detail::KMat inter = detail::subspace_intersection(F.field(), inside, outside);
            space = detail::subspace_sum(F.field(), std::move(space), inter);
        }
        bool hit = false;
        for (const detail::KVec& cand : search) {
            if (detail::in_span(F.field(), space, cand)) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Non-vanishing over the rationals

/// True iff no factor has a non-zero rational zero: for each factor the
/// rational kernel, cut out by one equation per field basis coordinate,
/// must be the origin.
inline bool check_nonvanishing(const DecomposableForm& F) {
    const unsigned d = F.field().degree();
    for (const WeightedForm& wf : F.factors()) {
        std::vector<std::vector<Rat>> rows(d, std::vector<Rat>(F.vars(), Rat(0)));
        for (unsigned j = 0; j < F.vars(); ++j)
            for (unsigned b = 0; b < d; ++b) rows[b][j] = wf.form.coeffs()[j][b];
        if (detail::rational_rank(std::move(rows)) < F.vars()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Critical subsets and q-values on a rational subspace

struct SubsetReport {
    std::vector<unsigned> subset;  // sorted factor indices
    bool gal_proper = false;
    unsigned rank_on_subspace = 0;
    std::optional<Rat> q_value;    // weight / rank; absent when the rank is 0
    bool critical = false;
    bool minimal_critical = false;
};

struct QValuesResult {
    std::vector<SubsetReport> reports;  // all non-empty subsets, (size, lex) order
    Rat q_full_set;                     // q of the whole factor set
    std::optional<Rat> q_proper_max;    // max q over subsets of rank < dim D
    std::string diagnostic;             // set when q_proper_max is absent
    std::vector<std::vector<unsigned>> critical_sets;
    std::vector<std::vector<unsigned>> minimal_critical_sets;
};

/**
 * Enumerates every non-empty subset M of the factor set over the subspace
 * spanned by the given basis: restricted rank, q = (sum of multiplicities)
 * / rank, criticality (q maximal among all non-empty subsets), and
 * inclusion-minimal critical sets. Subsets of restricted rank 0 are
 * reported but excluded from the maximisation. Two structural facts are
 * re-checked on every run: distinct minimal critical sets are disjoint,
 * and the union of two disjoint critical sets is critical.
 */
inline QValuesResult q_values(const DecomposableForm& F,
                              const std::vector<std::vector<Rat>>& subspace_basis) {
    const unsigned r = F.factor_count();
    detail::check_subset_cap(r);
    SPARTS_CHECK(subspace_basis.size() >= 2, "the subspace must have dimension at least 2");
    const unsigned dim = static_cast<unsigned>(subspace_basis.size());

    detail::SubsetRanks ranks(F.field(), detail::restricted_rows(F, subspace_basis));
    const std::uint32_t full = (std::uint32_t{1} << r) - 1;
    SPARTS_CHECK(ranks.rank(full) >= 1,
                 "every factor vanishes identically on the subspace");

    QValuesResult out;
    out.q_full_set = Rat(Int(detail::subset_weight(F, full)), Int(ranks.rank(full)));

    std::optional<Rat> qmax;           // over all non-empty subsets of rank >= 1
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        unsigned rk = ranks.rank(mask);
        if (rk == 0) continue;
        Rat q(Int(detail::subset_weight(F, mask)), Int(rk));
        if (!qmax || q > *qmax) qmax = q;
        if (rk < dim) {
            if (!out.q_proper_max || q > *out.q_proper_max) out.q_proper_max = q;
        }
    }
    if (!out.q_proper_max)
        out.diagnostic = "no subset has restricted rank below the subspace dimension";

    std::vector<std::uint32_t> critical_masks;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        SubsetReport rep;
        rep.subset = detail::mask_to_indices(mask);
        rep.gal_proper = detail::gal_proper_mask(F, mask);
        rep.rank_on_subspace = ranks.rank(mask);
        if (rep.rank_on_subspace >= 1) {
            rep.q_value = Rat(Int(detail::subset_weight(F, mask)),
                              Int(rep.rank_on_subspace));
            rep.critical = (*rep.q_value == *qmax);
            if (rep.critical) critical_masks.push_back(mask);
        }
        out.reports.push_back(std::move(rep));
    }
    std::sort(out.reports.begin(), out.reports.end(),
              [](const SubsetReport& a, const SubsetReport& b) {
                  if (a.subset.size() != b.subset.size())
                      return a.subset.size() < b.subset.size();
                  return a.subset < b.subset;
              });

    // Minimal critical sets: no critical proper subset.
    std::vector<std::uint32_t> minimal_masks;
    for (std::uint32_t m1 : critical_masks) {
        bool minimal = true;
        for (std::uint32_t m2 : critical_masks) {
            if (m2 != m1 && (m2 & m1) == m2) {
                minimal = false;
                break;
            }
        }
        if (minimal) minimal_masks.push_back(m1);
    }
    for (SubsetReport& rep : out.reports) {
        if (!rep.critical) continue;
        std::uint32_t mask = 0;
        for (unsigned i : rep.subset) mask |= (std::uint32_t{1} << i);
        rep.minimal_critical =
            std::find(minimal_masks.begin(), minimal_masks.end(), mask) != minimal_masks.end();
    }
    for (std::uint32_t m : critical_masks)
        out.critical_sets.push_back(detail::mask_to_indices(m));
    for (std::uint32_t m : minimal_masks)
        out.minimal_critical_sets.push_back(detail::mask_to_indices(m));

    // Structural re-checks (bounded so the cap case stays tractable).
    if (critical_masks.size() <= 512) {
        for (std::size_t i = 0; i < minimal_masks.size(); ++i)
            for (std::size_t j = i + 1; j < minimal_masks.size(); ++j)
                SPARTS_INVARIANT((minimal_masks[i] & minimal_masks[j]) == 0,
                                 "distinct minimal critical sets must be disjoint");
        for (std::size_t i = 0; i < critical_masks.size(); ++i) {
            for (std::size_t j = i + 1; j < critical_masks.size(); ++j) {
                if ((critical_masks[i] & critical_masks[j]) != 0) continue;
                std::uint32_t u = critical_masks[i] | critical_masks[j];
                Rat q(Int(detail::subset_weight(F, u)), Int(ranks.rank(u)));
                SPARTS_INVARIANT(q == *qmax,
                                 "the union of disjoint critical sets must be critical");
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The subspace invariant c(F)

struct SubspaceScore {
    std::vector<std::vector<Rat>> basis;
    std::optional<Rat> ratio;          // q_proper_max * dim / deg, when defined
    std::vector<unsigned> witness_subset;
};

struct COfFResult {
    Rat value;                  // best ratio over the pool
    bool exact = false;         // true in two variables, where the pool is complete
    std::size_t witness_index = 0;
    std::vector<SubspaceScore> scores;
};

/**
 * max over the subspace pool of q_D(F) * dim D / deg F. The pool always
 * contains the full space and every coordinate subspace of dimension >= 2;
 * extra user subspaces are appended. In two variables the full space is
 * the only subspace of dimension >= 2, so the value is exact; otherwise it
 * is a certified lower bound.
 */
inline COfFResult c_of_F(const DecomposableForm& F,
                         const std::vector<std::vector<std::vector<Rat>>>& user_pool = {}) {
    const unsigned m = F.vars();
    SPARTS_CHECK(m >= 2, "the subspace invariant needs at least two variables");

    std::vector<std::vector<std::vector<Rat>>> pool;
    {
        std::vector<std::vector<Rat>> fullspace;
        for (unsigned i = 0; i < m; ++i) {
            std::vector<Rat> e(m, Rat(0));
            e[i] = 1;
            fullspace.push_back(std::move(e));
        }
        pool.push_back(std::move(fullspace));
    }
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m) - 1; ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<std::vector<Rat>> basis;
        for (unsigned i = 0; i < m; ++i) {
            if (!(mask & (std::uint32_t{1} << i))) continue;
            std::vector<Rat> e(m, Rat(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        pool.push_back(std::move(basis));
    }
    for (const auto& basis : user_pool) {
        SPARTS_CHECK(basis.size() >= 2, "pool subspaces must have dimension at least 2");
        pool.push_back(basis);
    }

    COfFResult out;
    out.exact = (m == 2);
    bool have = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        SubspaceScore score;
        score.basis = pool[i];
        QValuesResult q = q_values(F, pool[i]);
        if (q.q_proper_max) {
            score.ratio = *q.q_proper_max * Rat(Int(pool[i].size()), Int(F.degree()));
            for (const SubsetReport& rep : q.reports) {
                if (rep.q_value && rep.rank_on_subspace < pool[i].size() &&
                    *rep.q_value == *q.q_proper_max) {
                    score.witness_subset = rep.subset;
                    break;
                }
            }
            if (!have || *score.ratio > out.value) {
                out.value = *score.ratio;
                out.witness_index = i;
                have = true;
            }
        }
        out.scores.push_back(std::move(score));
    }
    SPARTS_CHECK(have, "no pool subspace admits a subset of deficient rank");
    return out;
}

// ---------------------------------------------------------------------------
// Dependence graph on a subspace

struct DependenceGraph {
    std::vector<std::vector<unsigned>> minimal_dependent_sets;  // (size, lex) order
    std::vector<std::pair<unsigned, unsigned>> edges;
    std::vector<unsigned> component;
    unsigned component_count = 0;
    bool connected = false;
};

/**
 * Inclusion-minimal subsets that become linearly dependent when restricted
 * to the subspace (rank = size - 1, every proper subset independent), the
 * graph joining factors that share such a set, and its connectivity.
 * Factors vanishing identically on the subspace are rejected by index.
 */
inline DependenceGraph dependence_graph(const DecomposableForm& F,
                                        const std::vector<std::vector<Rat>>& subspace_basis) {
    const unsigned r = F.factor_count();
    detail::check_subset_cap(r);
    SPARTS_CHECK(subspace_basis.size() >= 2, "the subspace must have dimension at least 2");
    detail::KMat rows = detail::restricted_rows(F, subspace_basis);
    for (unsigned i = 0; i < r; ++i) {
        bool zero = true;
        for (const FieldElement& e : rows[i])
            if (!F.field().is_zero(e)) {
                zero = false;
                break;
            }
        SPARTS_CHECK(!zero, "factor " + std::to_string(i) +
                                " vanishes identically on the subspace");
    }
    detail::SubsetRanks ranks(F.field(), std::move(rows));

    DependenceGraph out;
    const std::uint32_t full = (std::uint32_t{1} << r) - 1;
    std::vector<std::uint32_t> circuits;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const unsigned size = static_cast<unsigned>(std::popcount(mask));
        if (size < 2) continue;
        if (ranks.rank(mask) >= size) continue;  // independent
        bool minimal = true;
        for (unsigned i = 0; i < r && minimal; ++i) {
            if (!(mask & (std::uint32_t{1} << i))) continue;
            std::uint32_t sub = mask & ~(std::uint32_t{1} << i);
            minimal = ranks.rank(sub) == static_cast<unsigned>(std::popcount(sub));
        }
        if (!minimal) continue;
        SPARTS_INVARIANT(ranks.rank(mask) == size - 1,
                         "a minimal dependent set has rank one less than its size");
        circuits.push_back(mask);
    }

    detail::DisjointSets dsu(r);
    std::vector<std::vector<bool>> edge_seen(r, std::vector<bool>(r, false));
    for (std::uint32_t mask : circuits) {
        std::vector<unsigned> idx = detail::mask_to_indices(mask);
        out.minimal_dependent_sets.push_back(idx);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                if (!edge_seen[idx[a]][idx[b]]) {
                    edge_seen[idx[a]][idx[b]] = true;
                    out.edges.emplace_back(idx[a], idx[b]);
                }
                dsu.unite(idx[a], idx[b]);
            }
    }
    std::sort(out.minimal_dependent_sets.begin(), out.minimal_dependent_sets.end(),
              [](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    std::sort(out.edges.begin(), out.edges.end());
    auto [ids, count] = dsu.components();
    out.component = std::move(ids);
    out.component_count = count;
    out.connected = (count == 1);
    return out;
}

// ---------------------------------------------------------------------------
// Rank chains

struct RankChain {
    std::vector<std::vector<unsigned>> sets;  // the chosen minimal dependent sets
    std::vector<unsigned> union_ranks;        // restricted rank after each step
};

/**
 * Greedy chain of minimal dependent sets: the first one contains the seed
 * factor and has restricted rank >= 2; each later one meets the union so
 * far and raises its restricted rank; the chain stops when the union's
 * rank reaches the subspace dimension. Guarded by the finiteness
 * criterion, whose truth makes every step possible; a missing step under
 * a verified guard is a bug and aborts with the search state.
 */
inline RankChain rank_chain(const DecomposableForm& F,
                            const std::vector<std::vector<Rat>>& subspace_basis,
                            unsigned seed) {
    const unsigned r = F.factor_count();
    SPARTS_CHECK(seed < r, "seed factor index out of range");
    SPARTS_CHECK(check_finiteness_condition(F),
                 "the finiteness criterion fails; chain construction is not guaranteed");
    const unsigned dim = static_cast<unsigned>(subspace_basis.size());

    DependenceGraph graph = dependence_graph(F, subspace_basis);
    detail::SubsetRanks ranks(F.field(), detail::restricted_rows(F, subspace_basis));

    auto to_mask = [](const std::vector<unsigned>& idx) {
        std::uint32_t m = 0;
        for (unsigned i : idx) m |= (std::uint32_t{1} << i);
        return m;
    };

    RankChain chain;
    std::uint32_t covered = 0;
    for (const auto& circuit : graph.minimal_dependent_sets) {
        std::uint32_t mask = to_mask(circuit);
        if ((mask & (std::uint32_t{1} << seed)) && ranks.rank(mask) >= 2) {
            chain.sets.push_back(circuit);
            covered = mask;
            break;
        }
    }
    if (chain.sets.empty()) {
        std::ostringstream dump;
        dump << "no minimal dependent set of rank >= 2 contains seed " << seed
             << " among " << graph.minimal_dependent_sets.size() << " sets";
        invariant_failure(dump.str().c_str());
    }
    chain.union_ranks.push_back(ranks.rank(covered));

    while (chain.union_ranks.back() < dim) {
        bool advanced = false;
        for (const auto& circuit : graph.minimal_dependent_sets) {
            std::uint32_t mask = to_mask(circuit);
            if ((mask & covered) == 0) continue;
            unsigned next = ranks.rank(covered | mask);
            if (next > chain.union_ranks.back()) {
                chain.sets.push_back(circuit);
                covered |= mask;
                chain.union_ranks.push_back(next);
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            std::ostringstream dump;
            dump << "rank chain stalled at rank " << chain.union_ranks.back() << " of "
                 << dim << " after " << chain.sets.size() << " sets";
            invariant_failure(dump.str().c_str());
        }
    }
    SPARTS_INVARIANT(chain.union_ranks.back() == dim, "chain ends at the full rank");
    SPARTS_INVARIANT(chain.sets.size() <= dim - 1,
                     "chain length stays below the subspace dimension");
    return chain;
}

// ---------------------------------------------------------------------------
// Discriminant forms from embedding data

/**
 * Given, for a degree-n field inside the normal closure K, the images
 * sigma_i(omega_j) of basis elements omega_2..omega_n under the n
 * embeddings, builds prod_{i<j} (l_i - l_j)^2 with l_i = sum_j
 * sigma_i(omega_j) X_j. The expansion must come out as an integer form or
 * the embedding data is inconsistent; the result passes through full
 * factorization validation (including Galois symmetry).
 */
inline DecomposableForm discriminant_form(const NumberField& K, const AutomorphismGroup& group,
                                          const std::vector<std::vector<FieldElement>>& images) {
    const std::size_t n = images.size();
    SPARTS_CHECK(n >= 2, "a discriminant form needs at least two embeddings");
    const std::size_t m = images[0].size();
    SPARTS_CHECK(m >= 1, "a discriminant form needs at least one basis element");
    for (const auto& row : images)
        SPARTS_CHECK(row.size() == m, "embedding rows must share one length");

    std::vector<WeightedForm> factors;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<FieldElement> diff;
            diff.reserve(m);
            for (std::size_t v = 0; v < m; ++v)
                diff.push_back(K.sub(images[i][v], images[j][v]));
            bool zero = true;
            for (const FieldElement& e : diff)
                if (!K.is_zero(e)) {
                    zero = false;
                    break;
                }
            SPARTS_CHECK(!zero, "two embeddings agree on every basis element");
            factors.push_back(WeightedForm{LinearFormK(K, std::move(diff)), 2});
        }
    }

    detail::KTerms expansion;
    expansion.emplace(std::vector<unsigned>(m, 0), K.one());
    for (const WeightedForm& wf : factors)
        for (unsigned e = 0; e < wf.multiplicity; ++e)
            expansion = detail::kterms_multiply_linear(K, expansion, wf.form.coeffs());
    detail::kterms_drop_zeros(K, expansion);

    MultiPoly::Terms int_terms;
    for (const auto& [e, c] : expansion) {
        for (std::size_t b = 1; b < c.size(); ++b)
            SPARTS_CHECK(c[b] == 0,
                         "discriminant expansion is irrational: embedding data inconsistent");
        SPARTS_CHECK(denominator(c[0]) == 1,
                     "discriminant expansion is non-integral: embedding data inconsistent");
        int_terms.emplace(e, Int(numerator(c[0])));
    }
    MultiPoly integer_form(static_cast<unsigned>(m), std::move(int_terms));
    SPARTS_INVARIANT(integer_form.total_degree() ==
                         static_cast<unsigned>(n * (n - 1)),
                     "a discriminant form has degree n(n-1)");
    return DecomposableForm(K, group, Rat(1), std::move(factors), std::move(integer_form));
}

}  // namespace sparts
