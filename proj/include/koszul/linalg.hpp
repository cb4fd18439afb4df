// Exact rational linear algebra: sparse row reduction to reduced row
// echelon form with pivots in declared column order, affine solving and
// canonical nullspace bases.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "koszul/rational.hpp"

namespace koszul {

// Sorted sparse row; column `ncols` holds the inhomogeneous right side.
using SparseRow = std::vector<std::pair<int, Rational>>;

inline void row_axpy(SparseRow& dst, const Rational& c, const SparseRow& src) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    auto it = dst.begin();
    auto jt = src.begin();
    while (it != dst.end() || jt != src.end()) {
        if (jt == src.end() || (it != dst.end() && it->first < jt->first)) {
            out.push_back(*it++);
        } else if (it == dst.end() || jt->first < it->first) {
            Rational v = c * jt->second;
            if (!is_zero(v)) out.emplace_back(jt->first, v);
            ++jt;
        } else {
            Rational v = it->second + c * jt->second;
            if (!is_zero(v)) out.emplace_back(it->first, v);
            ++it;
            ++jt;
        }
    }
    dst = std::move(out);
}

struct RowEchelon {
    int ncols = 0;                    // unknown count (rhs column excluded)
    std::vector<SparseRow> rows;      // RREF rows, pivot columns increasing
    std::vector<int> pivot_cols;      // per row
    std::optional<int> conflict_tag;  // tag of a row reduced to 0 = nonzero

    bool consistent() const { return !conflict_tag.has_value(); }
    int rank() const { return static_cast<int>(rows.size()); }

    bool is_pivot(int col) const {
        return std::binary_search(pivot_cols.begin(), pivot_cols.end(), col);
    }
};

// Reduce tagged rows (column index `ncols` = right-hand side) to RREF.
// Deterministic: pivots take the leftmost available column, preferring the
// sparsest candidate row, ties resolved by insertion order.
class RowReducer {
  public:
    explicit RowReducer(int ncols) : ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Returns false when the row exposes an inconsistency.
    bool add_row(SparseRow row, int tag) {
        reduce_against_pivots(row);
        if (row.empty()) return true;
        if (row.front().first == ncols_) {
            if (!conflict_) conflict_ = tag;
            return false;
        }
        normalize(row);
        int col = row.front().first;
        // Clear this column from existing pivot rows.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            auto it = find_col(rows_[r], col);
            if (it != rows_[r].end()) row_axpy(rows_[r], -it->second, row);
        }
        insert_sorted(std::move(row), col, tag);
        return true;
    }

    RowEchelon finish() const {
        RowEchelon e;
        e.ncols = ncols_;
        e.rows = rows_;
        e.pivot_cols = pivot_cols_;
        e.conflict_tag = conflict_;
        return e;
    }

  private:
    static SparseRow::iterator find_col(SparseRow& row, int col) {
        auto it = std::lower_bound(
            row.begin(), row.end(), col,
            [](const auto& a, int c) { return a.first < c; });
        if (it != row.end() && it->first == col) return it;
        return row.end();
    }

    void reduce_against_pivots(SparseRow& row) {
        // Pivot rows are kept mutually reduced, so one pass suffices.
        for (std::size_t r = 0; r < rows_.size() && !row.empty(); ++r) {
            auto it = find_col(row, pivot_cols_[r]);
            if (it != row.end()) row_axpy(row, -it->second, rows_[r]);
        }
    }

    static void normalize(SparseRow& row) {
        Rational lead = row.front().second;
        for (auto& [c, v] : row) v /= lead;
    }

    void insert_sorted(SparseRow row, int col, int tag) {
        auto pos = std::lower_bound(pivot_cols_.begin(), pivot_cols_.end(), col);
        std::size_t idx = static_cast<std::size_t>(pos - pivot_cols_.begin());
        pivot_cols_.insert(pos, col);
        rows_.insert(rows_.begin() + idx, std::move(row));
        tags_.insert(tags_.begin() + idx, tag);
    }

    int ncols_;
    std::vector<SparseRow> rows_;
    std::vector<int> pivot_cols_;
    std::vector<int> tags_;
    std::optional<int> conflict_;
};

// Affine solution set of the reduced system: a particular solution (free
// unknowns zero) plus a canonical nullspace basis, one vector per free
// column in column order.
struct SolutionSpace {
    bool consistent = false;
    std::optional<int> conflict_tag;
    int ncols = 0;
    std::vector<Rational> particular;
    std::vector<int> free_cols;
    std::vector<std::vector<Rational>> null_basis;

    int dimension() const { return static_cast<int>(null_basis.size()); }
};

inline SolutionSpace solve_from_echelon(const RowEchelon& e) {
    SolutionSpace s;
    s.ncols = e.ncols;
    if (!e.consistent()) {
        s.consistent = false;
        s.conflict_tag = e.conflict_tag;
        return s;
    }
    s.consistent = true;
    s.particular.assign(e.ncols, 0);
    for (int r = 0; r < e.rank(); ++r) {
        for (const auto& [c, v] : e.rows[r])
            if (c == e.ncols) s.particular[e.pivot_cols[r]] = v;
    }
    for (int c = 0; c < e.ncols; ++c)
        if (!e.is_pivot(c)) s.free_cols.push_back(c);
    for (int free_col : s.free_cols) {
        std::vector<Rational> v(e.ncols, 0);
        v[free_col] = 1;
        for (int r = 0; r < e.rank(); ++r) {
            for (const auto& [c, val] : e.rows[r])
                if (c == free_col) v[e.pivot_cols[r]] = -val;
        }
        s.null_basis.push_back(std::move(v));
    }
    return s;
}

}  // namespace koszul
