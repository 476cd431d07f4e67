#include "flp/matpoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace flp {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), entries_(rows * cols, Polynomial(nvars)) {}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Polynomial>>& rows, std::size_t nvars) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    PolyMatrix m(rows.size(), cols, nvars);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorKind::invalid_argument, "matrix rows have different lengths");
        for (std::size_t j = 0; j < cols; ++j) {
            if (rows[i][j].nvars() != nvars) fail(ErrorKind::invalid_argument, "matrix entry has wrong variable count");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
    PolyMatrix m(n, n, nvars);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(nvars, 1);
    return m;
}

ModuleElement PolyMatrix::row(std::size_t i) const {
    if (i >= rows_) fail(ErrorKind::invalid_argument, "row index out of range");
    return ModuleElement(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<ModuleElement> PolyMatrix::row_elements() const {
    std::vector<ModuleElement> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(cols_, rows_, nvars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

PolyMatrix PolyMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    PolyMatrix s(rows.size(), cols.size(), nvars_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = at(rows[i], cols[j]);
    return s;
}

PolyMatrix PolyMatrix::select_rows(std::span<const std::size_t> rows) const {
    std::vector<std::size_t> cols(cols_);
    for (std::size_t j = 0; j < cols_; ++j) cols[j] = j;
    return submatrix(rows, cols);
}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool PolyMatrix::operator==(const PolyMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && nvars_ == other.nvars_ && entries_ == other.entries_;
}

PolyMatrix matrix_from_elements(std::span<const ModuleElement> rows, std::size_t cols, std::size_t nvars) {
    PolyMatrix m(rows.size(), cols, nvars);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) fail(ErrorKind::invalid_argument, "row has wrong length");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::invalid_argument, "mat_mul: inner dimensions differ");
    if (a.nvars() != b.nvars()) fail(ErrorKind::invalid_argument, "mat_mul: different variable counts");
    PolyMatrix c(a.rows(), b.cols(), a.nvars());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Polynomial s(a.nvars());
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                s += mul(a.at(i, k), b.at(k, j));
            }
            c.at(i, j) = std::move(s);
        }
    }
    return c;
}

namespace {

class LaplaceDet {
public:
    explicit LaplaceDet(const PolyMatrix& m) : m_(m) {}

    Polynomial operator()(std::size_t row, std::uint64_t mask) {
        if (row == m_.rows()) return Polynomial::constant(m_.nvars(), 1);
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
        Polynomial acc(m_.nvars());
        int sign = 1;
        for (std::size_t j = 0; j < m_.cols(); ++j) {
            if (!(mask & (std::uint64_t{1} << j))) continue;
            const Polynomial& a = m_.at(row, j);
            if (!a.is_zero()) {
                Polynomial sub = (*this)(row + 1, mask & ~(std::uint64_t{1} << j));
                if (!sub.is_zero()) {
                    Polynomial term = mul(a, sub);
                    if (sign > 0) acc += term;
                    else acc -= term;
                }
            }
            sign = -sign;
        }
        memo_.emplace(mask, acc);
        return acc;
    }

private:
    const PolyMatrix& m_;
    std::unordered_map<std::uint64_t, Polynomial> memo_;
};

}  // namespace

Polynomial det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::invalid_argument, "det: matrix is not square");
    if (m.rows() > 63) fail(ErrorKind::invalid_argument, "det: matrix too large for cofactor expansion");
    if (m.rows() == 0) return Polynomial::constant(m.nvars(), 1);
    LaplaceDet laplace(m);
    return laplace(0, (std::uint64_t{1} << m.rows()) - 1);
}

namespace {

// Fraction-free row echelon form; returns rank and the sign of the row
// permutation.  For square full-rank input the last pivot is the determinant.
std::size_t bareiss_echelon(PolyMatrix& a, int& sign) {
    const std::size_t rows = a.rows(), cols = a.cols();
    Polynomial prev = Polynomial::constant(a.nvars(), 1);
    std::size_t r = 0;
    sign = 1;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && a.at(p, col).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Polynomial num = mul(a.at(r, col), a.at(i, j)) - mul(a.at(i, col), a.at(r, j));
                a.at(i, j) = exact_divide(num, prev);
            }
            a.at(i, col) = Polynomial(a.nvars());
        }
        prev = a.at(r, col);
        ++r;
    }
    return r;
}

}  // namespace

Polynomial det_bareiss(const PolyMatrix& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::invalid_argument, "det: matrix is not square");
    if (m.rows() == 0) return Polynomial::constant(m.nvars(), 1);
    PolyMatrix a = m;
    int sign = 1;
    if (bareiss_echelon(a, sign) < m.rows()) return Polynomial(m.nvars());
    const Polynomial& last = a.at(m.rows() - 1, m.cols() - 1);
    return sign > 0 ? last : -last;
}

std::size_t rank_bareiss(const PolyMatrix& m) {
    PolyMatrix a = m;
    int sign = 1;
    return bareiss_echelon(a, sign);
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t i) {
    if (i == 0 || i > std::min(m.rows(), m.cols())) fail(ErrorKind::invalid_argument, "minors: size out of range");
    std::vector<Polynomial> out;
    const auto row_sets = index_subsets(m.rows(), i);
    const auto col_sets = index_subsets(m.cols(), i);
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) out.push_back(det(m.submatrix(rs, cs)));
    return out;
}

std::size_t rank(const PolyMatrix& m) {
    std::size_t r = 0;
    const std::size_t top = std::min(m.rows(), m.cols());
    for (std::size_t i = 1; i <= top; ++i) {
        bool found = false;
        for (const auto& rs : index_subsets(m.rows(), i)) {
            for (const auto& cs : index_subsets(m.cols(), i)) {
                if (!det(m.submatrix(rs, cs)).is_zero()) {
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) break;
        r = i;
    }
    return r;
}

Polynomial d_i(const PolyMatrix& m, std::size_t i) {
    auto ms = minors(m, i);
    if (std::all_of(ms.begin(), ms.end(), [](const Polynomial& p) { return p.is_zero(); }))
        fail(ErrorKind::invalid_argument, "d_i: all minors vanish (i exceeds the rank)");
    return gcd(ms);
}

MinorReport minor_report(const PolyMatrix& m, std::size_t i) {
    MinorReport rep;
    rep.level = i;
    rep.minors = minors(m, i);
    rep.d = gcd(rep.minors);
    for (const auto& a : rep.minors) rep.reduced.push_back(exact_divide(a, rep.d));
    return rep;
}

ColumnReducedMinors column_reduced_minors_for(const PolyMatrix& m, std::span<const std::size_t> columns) {
    const std::size_t r = columns.size();
    if (r == 0 || r > m.rows()) fail(ErrorKind::invalid_argument, "column_reduced_minors: bad column set");
    std::vector<std::size_t> all_rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) all_rows[i] = i;
    PolyMatrix sub = m.submatrix(all_rows, columns);
    std::vector<Polynomial> vals = minors(sub, r);
    if (std::all_of(vals.begin(), vals.end(), [](const Polynomial& p) { return p.is_zero(); }))
        fail(ErrorKind::invalid_argument, "column_reduced_minors: column set is not of full column rank");
    Polynomial g = gcd(vals);
    for (auto& v : vals) v = exact_divide(v, g);
    // Overall scale: first nonzero value gets leading coefficient 1.
    auto first = std::find_if(vals.begin(), vals.end(), [](const Polynomial& p) { return !p.is_zero(); });
    Rational inv = 1 / first->leading_term().coeff;
    for (auto& v : vals) v = v.scaled(inv);
    ColumnReducedMinors out;
    out.r = r;
    out.columns.assign(columns.begin(), columns.end());
    out.values = std::move(vals);
    return out;
}

ColumnReducedMinors column_reduced_minors(const PolyMatrix& m, std::size_t r) {
    if (r == 0) fail(ErrorKind::invalid_argument, "column_reduced_minors: rank must be positive");
    if (r > m.rows()) fail(ErrorKind::invalid_argument, "column_reduced_minors: r exceeds the row count");
    std::vector<std::size_t> all_rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) all_rows[i] = i;
    for (const auto& cs : index_subsets(m.cols(), r)) {
        PolyMatrix sub = m.submatrix(all_rows, cs);
        if (rank(sub) == r) return column_reduced_minors_for(m, cs);
    }
    fail(ErrorKind::invalid_argument, "column_reduced_minors: no full-column-rank submatrix with r columns");
}

std::string to_string(const PolyMatrix& m, std::span<const std::string> names) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m.at(i, j), names);
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace flp
