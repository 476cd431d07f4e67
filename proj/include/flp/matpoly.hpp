#pragma once
// Polynomial matrices and their minor-based invariants.

#include <cstddef>
#include <span>
#include <vector>

#include "flp/grobner.hpp"
#include "flp/polyring.hpp"

namespace flp {

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);
    static PolyMatrix from_rows(const std::vector<std::vector<Polynomial>>& rows, std::size_t nvars);
    static PolyMatrix identity(std::size_t n, std::size_t nvars);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nvars() const noexcept { return nvars_; }

    Polynomial& at(std::size_t i, std::size_t j) { return entries_.at(i * cols_ + j); }
    const Polynomial& at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }

    ModuleElement row(std::size_t i) const;
    std::vector<ModuleElement> row_elements() const;
    PolyMatrix transpose() const;
    PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
    PolyMatrix select_rows(std::span<const std::size_t> rows) const;

    bool is_zero() const;
    bool operator==(const PolyMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t nvars_ = 0;
    std::vector<Polynomial> entries_;
};

PolyMatrix matrix_from_elements(std::span<const ModuleElement> rows, std::size_t cols, std::size_t nvars);

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b);

// Laplace expansion memoized on column subsets.
Polynomial det(const PolyMatrix& m);
// Fraction-free (Bareiss) elimination; cross-check path.
Polynomial det_bareiss(const PolyMatrix& m);

std::size_t rank(const PolyMatrix& m);
std::size_t rank_bareiss(const PolyMatrix& m);

// All C(l,i) C(m,i) minors, row index sets outer, column index sets inner,
// both in lexicographic order.
std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t i);

Polynomial d_i(const PolyMatrix& m, std::size_t i);

struct MinorReport {
    std::size_t level = 0;
    std::vector<Polynomial> minors;   // a_1..a_beta
    Polynomial d;                     // monic gcd
    std::vector<Polynomial> reduced;  // b_j = a_j / d
};

MinorReport minor_report(const PolyMatrix& m, std::size_t i);

struct ColumnReducedMinors {
    std::size_t r = 0;
    std::vector<std::size_t> columns;  // chosen full-column-rank column set
    std::vector<Polynomial> values;    // c_1..c_xi, xi = C(l, r)
};

// Reduced r x r minors of a full-column-rank l x r submatrix (first such
// column set in lexicographic order).  Requires rank(m) == r < rows.
ColumnReducedMinors column_reduced_minors(const PolyMatrix& m, std::size_t r);
// Same quantity computed from an explicit column set.
ColumnReducedMinors column_reduced_minors_for(const PolyMatrix& m, std::span<const std::size_t> columns);

// Every k-subset of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k);

std::string to_string(const PolyMatrix& m, std::span<const std::string> names = {});

}  // namespace flp
