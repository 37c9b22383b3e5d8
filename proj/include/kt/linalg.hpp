#pragma once

#include "kt/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

// Dense exact rational linear algebra. Rank decisions downstream (cohomology
// dimensions) rely on these routines being exact, so no floating point appears
// anywhere. Pivoting is deterministic: first nonzero entry in column order.

namespace kt {

using Vector = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols)
    {
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c)
                throw std::invalid_argument("ragged initializer rows");
            std::size_t j = 0;
            for (long long v : row)
                m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
    }

    Vector row(std::size_t r) const
    {
        return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline Matrix transpose(const Matrix& m)
{
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t.at(j, i) = m.at(i, j);
    return t;
}

inline Vector mat_vec(const Matrix& m, const Vector& v)
{
    if (v.size() != m.cols())
        throw std::invalid_argument("mat_vec: dimension mismatch");
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational acc;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && v[j] != 0)
                acc += m.at(i, j) * v[j];
        out[i] = std::move(acc);
    }
    return out;
}

inline Vector vec_mat(const Vector& v, const Matrix& m)
{
    if (v.size() != m.rows())
        throw std::invalid_argument("vec_mat: dimension mismatch");
    Vector out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational acc;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (v[i] != 0 && m.at(i, j) != 0)
                acc += v[i] * m.at(i, j);
        out[j] = std::move(acc);
    }
    return out;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& f = a.at(i, k);
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b.at(k, j) != 0)
                    out.at(i, j) += f * b.at(k, j);
        }
    return out;
}

inline bool is_zero(const Vector& v)
{
    for (const Rational& x : v)
        if (x != 0)
            return false;
    return true;
}

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank = 0;
};

// Unique reduced row-echelon form via Gauss–Jordan. The inner elimination only
// walks the pivot row's nonzero columns, which keeps the sparse-structured
// blocks produced upstream cheap without changing the result.
inline RrefResult rref(const Matrix& m)
{
    RrefResult res;
    res.reduced = m;
    Matrix& a = res.reduced;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    std::size_t row = 0;
    std::vector<std::size_t> support; // nonzero columns of the current pivot row
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pr = row;
        while (pr < rows && a.at(pr, col) == 0)
            ++pr;
        if (pr == rows)
            continue;
        a.swap_rows(pr, row);

        if (a.at(row, col) != 1) {
            const Rational inv = a.at(row, col);
            for (std::size_t j = col; j < cols; ++j)
                if (a.at(row, j) != 0)
                    a.at(row, j) /= inv;
        }

        // Rows at or below `row` are zero in every earlier column, so the
        // pivot row's support starts at `col`.
        support.clear();
        for (std::size_t j = col; j < cols; ++j)
            if (a.at(row, j) != 0)
                support.push_back(j);

        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row)
                continue;
            const Rational f = a.at(r, col);
            if (f == 0)
                continue;
            for (std::size_t j : support)
                a.at(r, j) -= f * a.at(row, j);
        }

        res.pivot_columns.push_back(col);
        ++row;
    }
    res.rank = res.pivot_columns.size();
    return res;
}

inline std::size_t rank(const Matrix& m)
{
    return rref(m).rank;
}

// Basis of { v : m·v = 0 }, one vector per free column in column order. The
// free coordinate is set to 1, pivot coordinates read off the RREF.
inline std::vector<Vector> kernel_basis(const Matrix& m)
{
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivot_columns)
        is_pivot[p] = true;

    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
            v[r.pivot_columns[i]] = -r.reduced.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Basis of { r : r·m = 0 }.
inline std::vector<Vector> left_kernel_basis(const Matrix& m)
{
    return kernel_basis(transpose(m));
}

// True iff v is a rational linear combination of the basis vectors.
inline bool in_span(const std::vector<Vector>& basis, const Vector& v)
{
    if (basis.empty())
        return is_zero(v);
    const std::size_t n = basis.front().size();
    for (const Vector& b : basis)
        if (b.size() != n)
            throw std::invalid_argument("in_span: basis vectors of unequal length");
    if (v.size() != n)
        throw std::invalid_argument("in_span: vector length does not match basis");

    Matrix b(basis.size(), n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            b.at(i, j) = basis[i][j];
    const RrefResult r = rref(b);

    Vector rem = v;
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
        const Rational f = rem[r.pivot_columns[i]];
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            if (r.reduced.at(i, j) != 0)
                rem[j] -= f * r.reduced.at(i, j);
    }
    return is_zero(rem);
}

} // namespace kt
