#pragma once

// Exact sparse linear algebra over Q.
//
// Elimination is integer preserving: each row is scaled to a primitive integer
// vector, and a row update  r <- p*r - c*pivot  is followed by division by the
// content.  Pivots are chosen column by column (first column with a nonzero
// entry among the unused rows, then the smallest row index), so results are
// deterministic.

#include "ribsyz/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ribsyz {

/// Sorted by index, no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

struct Triplet {
    std::size_t row;
    std::size_t col;
    Rational value;
};

inline SparseVector to_sparse(const RationalVector& dense)
{
    SparseVector out;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (!is_zero(dense[i])) {
            out.emplace_back(i, dense[i]);
        }
    }
    return out;
}

inline RationalVector to_dense(const SparseVector& v, std::size_t n)
{
    RationalVector out(n);
    for (const auto& [i, x] : v) {
        if (i >= n) {
            throw std::out_of_range("sparse index beyond dense length");
        }
        out[i] = x;
    }
    return out;
}

/// Accumulates (index, value) contributions; zeros are dropped on extraction.
class SparseAccumulator {
public:
    void add(std::size_t i, const Rational& x)
    {
        if (is_zero(x)) {
            return;
        }
        auto [it, inserted] = entries_.try_emplace(i, x);
        if (!inserted) {
            it->second += x;
        }
    }

    SparseVector take()
    {
        SparseVector out;
        for (auto& [i, x] : entries_) {
            if (!is_zero(x)) {
                out.emplace_back(i, std::move(x));
            }
        }
        entries_.clear();
        return out;
    }

private:
    std::map<std::size_t, Rational> entries_;
};

class SparseMatrixQ {
public:
    SparseMatrixQ() = default;

    SparseMatrixQ(std::size_t rows, std::size_t cols, const std::vector<Triplet>& entries)
        : rows_(rows), cols_(cols), data_(rows)
    {
        std::vector<SparseAccumulator> acc(rows);
        for (const auto& t : entries) {
            if (t.row >= rows || t.col >= cols) {
                throw std::out_of_range("matrix entry (" + std::to_string(t.row) + ", "
                                        + std::to_string(t.col) + ") out of range");
            }
            acc[t.row].add(t.col, t.value);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            data_[r] = acc[r].take();
        }
    }

    static SparseMatrixQ from_rows(const std::vector<RationalVector>& rows, std::size_t cols)
    {
        std::vector<Triplet> entries;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) {
                throw std::invalid_argument("ragged rows");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                if (!is_zero(rows[r][c])) {
                    entries.push_back({r, c, rows[r][c]});
                }
            }
        }
        return SparseMatrixQ(rows.size(), cols, entries);
    }

    /// Columns given as sparse vectors of length `height`.
    static SparseMatrixQ from_columns(const std::vector<SparseVector>& columns, std::size_t height)
    {
        std::vector<Triplet> entries;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            for (const auto& [r, x] : columns[c]) {
                entries.push_back({r, c, x});
            }
        }
        return SparseMatrixQ(height, columns.size(), entries);
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const SparseVector& row(std::size_t r) const { return data_.at(r); }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    Rational at(std::size_t r, std::size_t c) const
    {
        const auto& v = data_.at(r);
        auto it = std::lower_bound(v.begin(), v.end(), c,
                                   [](const auto& e, std::size_t key) { return e.first < key; });
        return (it != v.end() && it->first == c) ? it->second : Rational(0);
    }

    SparseMatrixQ transpose() const
    {
        std::vector<Triplet> entries;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (const auto& [c, x] : data_[r]) {
                entries.push_back({c, r, x});
            }
        }
        return SparseMatrixQ(cols_, rows_, entries);
    }

    RationalVector apply(const RationalVector& v) const
    {
        if (v.size() != cols_) {
            throw std::invalid_argument("dimension mismatch in matrix-vector product");
        }
        RationalVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (const auto& [c, x] : data_[r]) {
                out[r] += x * v[c];
            }
        }
        return out;
    }

    friend SparseMatrixQ operator*(const SparseMatrixQ& a, const SparseMatrixQ& b)
    {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("dimension mismatch in matrix product");
        }
        std::vector<Triplet> entries;
        for (std::size_t r = 0; r < a.rows_; ++r) {
            SparseAccumulator acc;
            for (const auto& [m, x] : a.data_[r]) {
                for (const auto& [c, y] : b.data_[m]) {
                    acc.add(c, x * y);
                }
            }
            for (auto& [c, x] : acc.take()) {
                entries.push_back({r, c, std::move(x)});
            }
        }
        return SparseMatrixQ(a.rows_, b.cols_, entries);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVector> data_;
};

struct Pivot {
    std::size_t row; ///< original row index of the pivot row
    std::size_t col;
};

/// Reduced row echelon form: rows()[i] has a 1 at pivots()[i].col and zeros in
/// every other pivot column.
class ReducedForm {
public:
    ReducedForm(std::size_t cols, std::vector<Pivot> pivots, std::vector<SparseVector> rows)
        : cols_(cols), pivots_(std::move(pivots)), rows_(std::move(rows))
    {
    }

    std::size_t rank() const noexcept { return pivots_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<Pivot>& pivots() const noexcept { return pivots_; }
    const std::vector<SparseVector>& rows() const noexcept { return rows_; }

private:
    std::size_t cols_;
    std::vector<Pivot> pivots_;
    std::vector<SparseVector> rows_;
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

inline IntRow primitive_integer_row(const SparseVector& v)
{
    Integer den = 1;
    for (const auto& [c, x] : v) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    IntRow out;
    out.reserve(v.size());
    Integer content = 0;
    for (const auto& [c, x] : v) {
        Integer z = x.get_num() * (den / x.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
        out.emplace_back(c, std::move(z));
    }
    if (content > 1) {
        for (auto& [c, z] : out) {
            mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), content.get_mpz_t());
        }
    }
    return out;
}

/// row <- p*row - c*pivot, where p and c are the entries at the pivot column,
/// followed by removal of the content.
inline void eliminate(IntRow& row, const IntRow& pivot, std::size_t col)
{
    const Integer& p = pivot.front().second;
    Integer c;
    for (const auto& [j, z] : row) {
        if (j == col) {
            c = z;
            break;
        }
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), c.get_mpz_t());
    const Integer pf = p / g;
    const Integer cf = c / g;

    IntRow out;
    out.reserve(row.size() + pivot.size());
    auto a = row.begin();
    auto b = pivot.begin();
    Integer content = 0;
    auto push = [&](std::size_t j, Integer z) {
        if (z != 0) {
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
            out.emplace_back(j, std::move(z));
        }
    };
    while (a != row.end() || b != pivot.end()) {
        if (b == pivot.end() || (a != row.end() && a->first < b->first)) {
            push(a->first, pf * a->second);
            ++a;
        } else if (a == row.end() || b->first < a->first) {
            push(b->first, -cf * b->second);
            ++b;
        } else {
            push(a->first, pf * a->second - cf * b->second);
            ++a;
            ++b;
        }
    }
    if (content > 1) {
        for (auto& [j, z] : out) {
            mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), content.get_mpz_t());
        }
    }
    row = std::move(out);
}

/// a <- a - f*b on rational sparse rows.
inline void axpy(SparseVector& a, const Rational& f, const SparseVector& b)
{
    SparseVector out;
    out.reserve(a.size() + b.size());
    auto x = a.begin();
    auto y = b.begin();
    while (x != a.end() || y != b.end()) {
        if (y == b.end() || (x != a.end() && x->first < y->first)) {
            out.push_back(std::move(*x));
            ++x;
        } else if (x == a.end() || y->first < x->first) {
            out.emplace_back(y->first, -f * y->second);
            ++y;
        } else {
            Rational v = x->second - f * y->second;
            if (!is_zero(v)) {
                out.emplace_back(x->first, std::move(v));
            }
            ++x;
            ++y;
        }
    }
    a = std::move(out);
}

inline const Rational* find_entry(const SparseVector& v, std::size_t col)
{
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto& e, std::size_t key) { return e.first < key; });
    return (it != v.end() && it->first == col) ? &it->second : nullptr;
}

} // namespace detail

inline ReducedForm reduce(const SparseMatrixQ& m)
{
    std::vector<detail::IntRow> work(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        work[r] = detail::primitive_integer_row(m.row(r));
    }
    std::vector<bool> used(m.rows(), false);
    std::vector<Pivot> pivots;
    std::vector<detail::IntRow> pivot_rows;

    // Every unused row has had all earlier columns eliminated, so its first
    // stored entry is its leading entry.
    for (std::size_t col = 0; col < m.cols(); ++col) {
        std::size_t chosen = m.rows();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (!used[r] && !work[r].empty() && work[r].front().first == col) {
                chosen = r;
                break;
            }
        }
        if (chosen == m.rows()) {
            continue;
        }
        used[chosen] = true;
        for (std::size_t r = chosen + 1; r < m.rows(); ++r) {
            if (!used[r] && !work[r].empty() && work[r].front().first == col) {
                detail::eliminate(work[r], work[chosen], col);
            }
        }
        pivots.push_back({chosen, col});
        pivot_rows.push_back(std::move(work[chosen]));
    }

    // Back substitution in Q.
    std::vector<SparseVector> rows(pivot_rows.size());
    for (std::size_t i = 0; i < pivot_rows.size(); ++i) {
        const Integer& lead = pivot_rows[i].front().second;
        for (const auto& [c, z] : pivot_rows[i]) {
            Rational q(z, lead);
            q.canonicalize();
            rows[i].emplace_back(c, std::move(q));
        }
    }
    for (std::size_t i = rows.size(); i-- > 0;) {
        const std::size_t col = pivots[i].col;
        for (std::size_t j = 0; j < i; ++j) {
            if (const Rational* f = detail::find_entry(rows[j], col)) {
                const Rational factor = *f;
                detail::axpy(rows[j], factor, rows[i]);
            }
        }
    }
    return ReducedForm(m.cols(), std::move(pivots), std::move(rows));
}

inline std::size_t rank(const SparseMatrixQ& m)
{
    return reduce(m).rank();
}

/// Basis of {v : M v = 0}, one vector per free column in increasing order.
inline std::vector<RationalVector> kernel_basis(const ReducedForm& rf)
{
    std::vector<bool> is_pivot(rf.cols(), false);
    for (const auto& p : rf.pivots()) {
        is_pivot[p.col] = true;
    }
    std::vector<RationalVector> out;
    for (std::size_t f = 0; f < rf.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        RationalVector v(rf.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < rf.rank(); ++i) {
            if (const Rational* x = detail::find_entry(rf.rows()[i], f)) {
                v[rf.pivots()[i].col] = -*x;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<RationalVector> kernel_basis(const SparseMatrixQ& m)
{
    return kernel_basis(reduce(m));
}

/// Coefficients c with sum_i c_i * columns[i] = target, or nullopt when target
/// is outside the span.  Free coefficients are set to zero.
inline std::optional<RationalVector> solve_in_span(const std::vector<RationalVector>& columns,
                                                   const RationalVector& target)
{
    const std::size_t n = target.size();
    std::vector<Triplet> entries;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != n) {
            throw std::invalid_argument("solve_in_span: column " + std::to_string(c) + " has length "
                                        + std::to_string(columns[c].size()) + ", target has "
                                        + std::to_string(n));
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (!is_zero(columns[c][r])) {
                entries.push_back({r, c, columns[c][r]});
            }
        }
    }
    const std::size_t aug = columns.size();
    for (std::size_t r = 0; r < n; ++r) {
        if (!is_zero(target[r])) {
            entries.push_back({r, aug, target[r]});
        }
    }
    const ReducedForm rf = reduce(SparseMatrixQ(n, aug + 1, entries));
    RationalVector coeffs(aug);
    for (std::size_t i = 0; i < rf.rank(); ++i) {
        if (rf.pivots()[i].col == aug) {
            return std::nullopt;
        }
        if (const Rational* x = detail::find_entry(rf.rows()[i], aug)) {
            coeffs[rf.pivots()[i].col] = *x;
        }
    }
    return coeffs;
}

/// Echelon basis that grows one vector at a time.  Each stored vector has a
/// leading 1 and vanishes at the leading positions of the vectors stored
/// before it, so a single ordered sweep reduces a candidate completely.
class IncrementalBasis {
public:
    std::size_t rank() const noexcept { return basis_.size(); }

    /// The reduction of v modulo the current span (empty iff v is in the span).
    SparseVector residual(SparseVector v) const
    {
        for (const auto& [lead, b] : basis_) {
            if (const Rational* x = detail::find_entry(v, lead)) {
                const Rational f = *x;
                detail::axpy(v, f, b);
            }
        }
        return v;
    }

    bool contains(const SparseVector& v) const { return residual(v).empty(); }

    /// Adds v if it is independent of the current span; reports whether it was.
    bool insert(SparseVector v)
    {
        v = residual(std::move(v));
        if (v.empty()) {
            return false;
        }
        const Rational lead = v.front().second;
        for (auto& [c, x] : v) {
            x /= lead;
        }
        const std::size_t col = v.front().first;
        basis_.emplace_back(col, std::move(v));
        return true;
    }

private:
    std::vector<std::pair<std::size_t, SparseVector>> basis_;
};

/// Scans columns in order and keeps those that raise the rank.
inline std::vector<std::size_t> greedy_max_independent(const std::vector<SparseVector>& columns)
{
    IncrementalBasis basis;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (basis.insert(columns[i])) {
            kept.push_back(i);
        }
    }
    return kept;
}

inline std::vector<std::size_t> greedy_max_independent(const std::vector<RationalVector>& columns)
{
    std::vector<SparseVector> sparse;
    sparse.reserve(columns.size());
    for (const auto& c : columns) {
        sparse.push_back(to_sparse(c));
    }
    return greedy_max_independent(sparse);
}

} // namespace ribsyz
