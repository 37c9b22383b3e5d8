#pragma once

#include "kt/complex.hpp"
#include "kt/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

// Per-block cohomology of a complex. δ preserves weight and lowers antifield
// number by 1, so each (antifield number n, weight d) slice is a
// finite-dimensional block and H(n,d) = ker δ|(n,d) / im δ|(n+1,d).
//
// Blocks are computed per connected component of the support graph on the
// (n−1,d) ∪ (n,d) ∪ (n+1,d) monomial bases. The block matrices carry
// component-disjoint row/column supports, so the unique RREF of the whole
// block equals the union of the per-component RREFs; results (dimensions and
// reduced representatives) are identical to the dense route, which stays
// available as block_matrix for direct use and cross-checking.

namespace kt {

struct CohomologyRow {
    int antifield_number = 0;
    int weight = 0;
    std::size_t dim_chain = 0;
    std::size_t dim_kernel = 0;
    std::size_t dim_image_from_above = 0;
    std::size_t dim_h = 0;
    std::vector<Polynomial> representatives; // filled on request, RREF-reduced
};

struct CohomologyTable {
    std::vector<CohomologyRow> rows; // (n, d) lexicographic

    const CohomologyRow* find(int n, int d) const
    {
        for (const CohomologyRow& r : rows)
            if (r.antifield_number == n && r.weight == d)
                return &r;
        return nullptr;
    }
};

namespace detail {

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

inline std::map<Monomial, std::size_t> index_of(const std::vector<Monomial>& basis)
{
    std::map<Monomial, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        idx.emplace(basis[i], i);
    return idx;
}

// δ applied to each domain monomial, expressed over the target basis. Every
// image term must land in the target basis (the enumeration is closed).
inline std::vector<SparseColumn> delta_columns(const Complex& c,
                                               const std::vector<Monomial>& domain,
                                               const std::map<Monomial, std::size_t>& target_index)
{
    std::vector<SparseColumn> cols(domain.size());
    for (std::size_t j = 0; j < domain.size(); ++j) {
        const Polynomial d = apply_delta(c, domain[j]);
        for (const auto& [m, coeff] : d.terms()) {
            auto it = target_index.find(m);
            if (it == target_index.end())
                throw std::logic_error("differential image left the enumerated block");
            cols[j].emplace_back(it->second, coeff);
        }
    }
    return cols;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

// Matrix of δ restricted to the (n,d) block: columns indexed by the (n,d)
// basis, rows by the (n−1,d) basis.
inline Matrix block_matrix(const Complex& c, int n, int d)
{
    const auto rows_basis = enumerate_basis(c.table(), n - 1, d);
    const auto cols_basis = enumerate_basis(c.table(), n, d);
    const auto row_index = detail::index_of(rows_basis);
    const auto cols = detail::delta_columns(c, cols_basis, row_index);

    Matrix m(rows_basis.size(), cols_basis.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, coeff] : cols[j])
            m.at(i, j) = coeff;
    return m;
}

inline CohomologyRow cohomology(const Complex& c, int n, int d, bool want_representatives = false)
{
    c.require_nilpotent();

    const GeneratorTable& t = c.table();
    const auto below = enumerate_basis(t, n - 1, d);
    const auto mid = enumerate_basis(t, n, d);
    const auto above = enumerate_basis(t, n + 1, d);

    CohomologyRow row;
    row.antifield_number = n;
    row.weight = d;
    row.dim_chain = mid.size();
    if (mid.empty())
        return row;

    const auto below_index = detail::index_of(below);
    const auto mid_index = detail::index_of(mid);
    const auto cols_n = detail::delta_columns(c, mid, below_index);
    const auto cols_up = detail::delta_columns(c, above, mid_index);

    // Nodes: below ⊔ mid ⊔ above; edges from the nonzero entries of both maps.
    const std::size_t nb = below.size();
    const std::size_t nm = mid.size();
    detail::UnionFind uf(nb + nm + above.size());
    for (std::size_t j = 0; j < cols_n.size(); ++j)
        for (const auto& [i, coeff] : cols_n[j])
            uf.unite(nb + j, i);
    for (std::size_t j = 0; j < cols_up.size(); ++j)
        for (const auto& [i, coeff] : cols_up[j])
            uf.unite(nb + nm + j, nb + i);

    struct Component {
        std::vector<std::size_t> mid_cols;  // ascending global mid indices
        std::vector<std::size_t> rows;      // ascending global below indices
        std::vector<std::size_t> up_cols;   // ascending global above indices
    };
    std::map<std::size_t, Component> components;
    for (std::size_t i = 0; i < nb; ++i)
        components[uf.find(i)].rows.push_back(i);
    for (std::size_t j = 0; j < nm; ++j)
        components[uf.find(nb + j)].mid_cols.push_back(j);
    for (std::size_t j = 0; j < above.size(); ++j)
        components[uf.find(nb + nm + j)].up_cols.push_back(j);

    std::vector<std::pair<std::size_t, Polynomial>> reps; // keyed by global pivot column
    for (auto& [root, comp] : components) {
        if (comp.mid_cols.empty())
            continue;
        const std::size_t cw = comp.mid_cols.size();

        std::map<std::size_t, std::size_t> row_local;
        for (std::size_t i = 0; i < comp.rows.size(); ++i)
            row_local.emplace(comp.rows[i], i);
        std::map<std::size_t, std::size_t> col_local;
        for (std::size_t j = 0; j < cw; ++j)
            col_local.emplace(comp.mid_cols[j], j);

        Matrix a(comp.rows.size(), cw);
        for (std::size_t j = 0; j < cw; ++j)
            for (const auto& [i, coeff] : cols_n[comp.mid_cols[j]])
                a.at(row_local.at(i), j) = coeff;

        const auto kernel = kernel_basis(a);
        row.dim_kernel += kernel.size();

        // Image of δ from the block above, written over this component's
        // columns and reduced to a canonical row basis.
        Matrix image(comp.up_cols.size(), cw);
        for (std::size_t u = 0; u < comp.up_cols.size(); ++u)
            for (const auto& [i, coeff] : cols_up[comp.up_cols[u]])
                image.at(u, col_local.at(i)) = coeff;
        const RrefResult image_rref = rref(image);
        row.dim_image_from_above += image_rref.rank;

        // Exactness is not assumed: check im ⊆ ker entry by entry.
        for (std::size_t i = 0; i < image_rref.rank; ++i) {
            if (!is_zero(mat_vec(a, image_rref.reduced.row(i))))
                throw std::logic_error("image of δ escapes the kernel: δ² ≠ 0 on the block");
        }

        if (want_representatives && kernel.size() > image_rref.rank) {
            Matrix stacked(image_rref.rank + kernel.size(), cw);
            for (std::size_t i = 0; i < image_rref.rank; ++i)
                for (std::size_t j = 0; j < cw; ++j)
                    stacked.at(i, j) = image_rref.reduced.at(i, j);
            for (std::size_t k = 0; k < kernel.size(); ++k)
                for (std::size_t j = 0; j < cw; ++j)
                    stacked.at(image_rref.rank + k, j) = kernel[k][j];

            std::vector<bool> image_pivot(cw, false);
            for (std::size_t p : image_rref.pivot_columns)
                image_pivot[p] = true;

            const RrefResult all = rref(stacked);
            for (std::size_t i = 0; i < all.rank; ++i) {
                const std::size_t p = all.pivot_columns[i];
                if (image_pivot[p])
                    continue;
                Polynomial rep;
                for (std::size_t j = 0; j < cw; ++j)
                    if (all.reduced.at(i, j) != 0)
                        rep.add_term(mid[comp.mid_cols[j]], all.reduced.at(i, j));
                reps.emplace_back(comp.mid_cols[p], std::move(rep));
            }
        }
    }

    row.dim_h = row.dim_kernel - row.dim_image_from_above;
    if (want_representatives) {
        std::sort(reps.begin(), reps.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [pivot, rep] : reps)
            row.representatives.push_back(std::move(rep));
    }
    return row;
}

// Weight-d blocks vanish once |n| exceeds d times the extreme generator
// degree; this exact window makes whole-column scans finite.
inline std::pair<int, int> block_window(const Complex& c, int d)
{
    const int lo = d * std::min(0, c.table().min_antifield_number());
    const int hi = d * std::max(0, c.table().max_antifield_number());
    return {lo, hi};
}

// Rows for min(0, most negative generator degree) ≤ n ≤ max_n, 0 ≤ d ≤ max_d.
inline CohomologyTable cohomology_table(const Complex& c, int max_n, int max_d,
                                        bool want_representatives = false)
{
    c.require_nilpotent();
    CohomologyTable table;
    const int n_lo = std::min(0, c.table().min_antifield_number());
    for (int n = n_lo; n <= max_n; ++n)
        for (int d = 0; d <= max_d; ++d)
            table.rows.push_back(cohomology(c, n, d, want_representatives));
    return table;
}

struct EulerCheckResult {
    long long chain_euler = 0;
    long long cohomology_euler = 0;
    bool equal = false;
};

// Alternating sums of chain dimensions and cohomology dimensions over one
// weight column. They agree for any finite exact window; the default window
// is the automatic one, an explicit window must contain every nonzero block.
inline EulerCheckResult euler_check(const Complex& c, int d)
{
    c.require_nilpotent();
    const auto [lo, hi] = block_window(c, d);
    EulerCheckResult res;
    for (int n = lo; n <= hi; ++n) {
        const CohomologyRow row = cohomology(c, n, d);
        const long long sign = (n % 2 == 0) ? 1 : -1;
        res.chain_euler += sign * static_cast<long long>(row.dim_chain);
        res.cohomology_euler += sign * static_cast<long long>(row.dim_h);
    }
    res.equal = res.chain_euler == res.cohomology_euler;
    return res;
}

inline EulerCheckResult euler_check(const Complex& c, int d, int window_lo, int window_hi)
{
    const auto [lo, hi] = block_window(c, d);
    for (int n = lo; n <= hi; ++n) {
        if (n >= window_lo && n <= window_hi)
            continue;
        if (!enumerate_basis(c.table(), n, d).empty())
            throw std::invalid_argument("euler_check: window too small, nonzero block at n=" +
                                        std::to_string(n));
    }
    return euler_check(c, d);
}

// Bosonic minus fermionic generator count.
inline int grassmann_number(const Complex& c)
{
    int g = 0;
    for (const Generator& gen : c.table())
        g += gen.parity == Parity::boson ? 1 : -1;
    return g;
}

} // namespace kt
