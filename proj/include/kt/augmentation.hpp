#pragma once

#include "kt/cohomology.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Identity detection and antifield synthesis. An identity at level ℓ is a
// weight-1 cocycle among the level-ℓ generators that is not already a
// boundary; each one gets a fresh level-(ℓ+1) generator whose differential is
// exactly that cocycle.

namespace kt {

struct IdentitySet {
    int level = 0;
    std::vector<Monomial> basis; // the (level, 1) monomials the coordinates refer to
    std::vector<Vector> rows;    // independent, each annihilated by the block matrix

    bool empty() const { return rows.empty(); }
};

// Left null space of the weight-1 part of δ at the given level, quotiented by
// the image of δ from level+1 so that already-killed directions are excluded.
// Rows come out RREF-reduced, hence deterministic.
inline IdentitySet find_identities(const Complex& c, int level)
{
    c.require_nilpotent();

    IdentitySet ids;
    ids.level = level;
    ids.basis = enumerate_basis(c.table(), level, 1);
    if (ids.basis.empty())
        return ids;

    const Matrix m = block_matrix(c, level, 1);
    const Matrix u = block_matrix(c, level + 1, 1);
    const std::size_t n = ids.basis.size();

    const auto kernel = kernel_basis(m);
    if (kernel.empty())
        return ids;

    Matrix image(u.cols(), n);
    for (std::size_t j = 0; j < u.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            image.at(j, i) = u.at(i, j);
    const RrefResult image_rref = rref(image);

    Matrix stacked(image_rref.rank + kernel.size(), n);
    for (std::size_t i = 0; i < image_rref.rank; ++i)
        for (std::size_t j = 0; j < n; ++j)
            stacked.at(i, j) = image_rref.reduced.at(i, j);
    for (std::size_t k = 0; k < kernel.size(); ++k)
        for (std::size_t j = 0; j < n; ++j)
            stacked.at(image_rref.rank + k, j) = kernel[k][j];

    std::vector<bool> image_pivot(n, false);
    for (std::size_t p : image_rref.pivot_columns)
        image_pivot[p] = true;

    const RrefResult all = rref(stacked);
    for (std::size_t i = 0; i < all.rank; ++i) {
        if (image_pivot[all.pivot_columns[i]])
            continue;
        ids.rows.push_back(all.reduced.row(i));
    }
    return ids;
}

// One generator per identity row, at level+1, with parity opposite to the
// generators the row mixes. Names are "<prefix><level+1>_<ordinal>".
inline Complex augment_once(const Complex& c, const IdentitySet& ids, std::string_view name_prefix = "theta")
{
    if (ids.empty())
        throw std::invalid_argument("augment_once: empty identity set");
    if (ids.basis != enumerate_basis(c.table(), ids.level, 1))
        throw std::invalid_argument("augment_once: stale identity set (basis changed)");

    const Matrix m = block_matrix(c, ids.level, 1);
    for (const Vector& r : ids.rows) {
        if (r.size() != ids.basis.size())
            throw std::invalid_argument("augment_once: identity row has wrong length");
        if (!is_zero(mat_vec(m, r)))
            throw std::invalid_argument("augment_once: stale identity set (row not in the kernel)");
    }

    GeneratorTable table = c.table();
    DifferentialRule rule = c.delta();
    for (std::size_t k = 0; k < ids.rows.size(); ++k) {
        const Vector& r = ids.rows[k];

        Polynomial image;
        Parity image_parity = Parity::boson;
        bool saw_term = false;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] == 0)
                continue;
            const Parity p = parity(table, ids.basis[i]);
            if (!saw_term) {
                image_parity = p;
                saw_term = true;
            } else if (p != image_parity) {
                throw std::invalid_argument("augment_once: identity row mixes parities");
            }
            image.add_term(ids.basis[i], r[i]);
        }
        if (!saw_term)
            throw std::invalid_argument("augment_once: zero identity row");

        std::string name = std::string(name_prefix) + std::to_string(ids.level + 1) + "_" + std::to_string(k);
        if (table.find(name))
            throw std::invalid_argument("augment_once: generator name \"" + name + "\" already taken");
        const GenId id = table.add(std::move(name), ids.level + 1, opposite(image_parity), 1);
        rule.set(id, std::move(image));
    }
    return Complex(std::move(table), std::move(rule));
}

struct AugmentationRound {
    int level = 0;                               // level the identities act at
    std::vector<std::string> added_generators;   // name (parity) in id order
    std::vector<std::string> identities;         // the killed cocycles, display form
};

struct AugmentationReport {
    std::vector<AugmentationRound> rounds;
    bool terminated = false;
    std::vector<std::string> notes;
};

struct ResolveResult {
    Complex complex;
    AugmentationReport report;
};

// Repeatedly finds identities (lowest level first, level 0 excluded — H⁰ is
// the answer, not a defect) and augments, until no level has identities left
// or the next generator would exceed max_level. Each round strictly shrinks
// the total weight-1 cohomology, so the loop terminates.
inline ResolveResult resolve(const Complex& c, int max_level, std::string_view name_prefix = "theta")
{
    c.require_nilpotent();

    Complex current = c;
    AugmentationReport report;
    for (;;) {
        IdentitySet ids;
        bool found = false;
        const int lo = current.table().min_antifield_number();
        const int hi = current.table().max_antifield_number();
        for (int level = lo; level <= hi && !found; ++level) {
            if (level == 0)
                continue;
            ids = find_identities(current, level);
            found = !ids.empty();
        }
        if (!found) {
            report.terminated = true;
            break;
        }
        if (ids.level + 1 > max_level) {
            report.terminated = false;
            report.notes.push_back("identities remain at level " + std::to_string(ids.level) +
                                   " but max level " + std::to_string(max_level) + " is reached");
            break;
        }

        AugmentationRound round;
        round.level = ids.level;
        for (const Vector& r : ids.rows) {
            Polynomial p;
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i] != 0)
                    p.add_term(ids.basis[i], r[i]);
            round.identities.push_back(to_string(current.table(), p));
        }

        const std::size_t before = current.table().size();
        current = augment_once(current, ids, name_prefix);
        for (std::size_t i = before; i < current.table().size(); ++i) {
            const Generator& g = current.table().gen(static_cast<GenId>(i));
            round.added_generators.push_back(g.name + " (" + std::string(to_string(g.parity)) + ")");
        }
        if (ids.level < 1)
            report.notes.push_back("level " + std::to_string(ids.level) +
                                   " identities: ghost-sector cohomology killed by level-" +
                                   std::to_string(ids.level + 1) + " generators");
        report.rounds.push_back(std::move(round));
    }
    return ResolveResult{std::move(current), std::move(report)};
}

struct OffendingBlock {
    int antifield_number = 0;
    int weight = 0;
    std::size_t dim_h = 0;
};

struct AcyclicityReport {
    bool acyclic = false;
    std::vector<OffendingBlock> offending; // (n, d) lexicographic
    std::size_t constants_dim = 0;         // H at (0,0), reported separately
};

// Acyclic iff every block with 1 ≤ n ≤ max_n and weight ≤ max_d vanishes,
// together with every negative block in the automatic window when the complex
// carries ghosts.
inline AcyclicityReport verify_acyclic(const Complex& c, int max_n, int max_d)
{
    c.require_nilpotent();

    AcyclicityReport report;
    const bool has_ghosts = c.table().min_antifield_number() < 0;
    for (int d = 0; d <= max_d; ++d) {
        const int lo = has_ghosts ? block_window(c, d).first : 1;
        for (int n = lo; n <= max_n; ++n) {
            if (n == 0)
                continue;
            const CohomologyRow row = cohomology(c, n, d);
            if (row.dim_h > 0)
                report.offending.push_back(OffendingBlock{n, d, row.dim_h});
        }
    }
    std::sort(report.offending.begin(), report.offending.end(), [](const auto& a, const auto& b) {
        return std::pair(a.antifield_number, a.weight) < std::pair(b.antifield_number, b.weight);
    });
    report.acyclic = report.offending.empty();
    report.constants_dim = cohomology(c, 0, 0).dim_h;
    return report;
}

} // namespace kt
