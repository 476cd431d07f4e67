#include <algorithm>

#include "doctest.h"
#include "test_support.hpp"

using namespace flp;
using namespace flp::testing;

namespace {

bool same_up_to_sign(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] && a[i] != -b[i]) return false;
    return true;
}

// Unordered comparison up to sign/constant, for sets stated without order.
bool same_set_up_to_constant(std::vector<Polynomial> a, std::vector<Polynomial> b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        auto it = std::find_if(b.begin(), b.end(), [&](const Polynomial& q) { return associated(p, q); });
        if (it == b.end()) return false;
        b.erase(it);
    }
    return true;
}

}  // namespace

TEST_CASE("matrix basics") {
    const PolyMatrix F = example1();
    CHECK(F.rows() == 3);
    CHECK(F.cols() == 3);
    CHECK(F.transpose().transpose() == F);
    CHECK(F.transpose().at(0, 2) == F.at(2, 0));
    const std::vector<std::size_t> rows{0, 2};
    const std::vector<std::size_t> cols{1};
    const PolyMatrix s = F.submatrix(rows, cols);
    CHECK(s.rows() == 2);
    CHECK(s.at(1, 0) == F.at(2, 1));
    CHECK(F.select_rows(rows).row(1) == F.row(2));
    CHECK(mat_mul(PolyMatrix::identity(3, N), F) == F);
    CHECK(PolyMatrix(2, 2, N).is_zero());
    CHECK(matrix_from_elements(F.row_elements(), 3, N) == F);
}

TEST_CASE("determinants agree with Bareiss elimination") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const PolyMatrix m = random_matrix(rng, n, n, 2, 2);
        CHECK(det(m) == det_bareiss(m));
    }
    const PolyMatrix v = mat({{one, z1, z1 * z1}, {one, z2, z2 * z2}, {one, z3, z3 * z3}});
    CHECK(det(v) == (z2 - z1) * (z3 - z1) * (z3 - z2));
    CHECK(det(example1()).is_zero());
    CHECK(det(example2()).is_zero());
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const PolyMatrix a = random_matrix(rng, 3, 3, 1, 2);
        const PolyMatrix b = random_matrix(rng, 3, 3, 1, 2);
        CHECK(det(mat_mul(a, b)) == det(a) * det(b));
    }
}

TEST_CASE("rank") {
    CHECK(rank(example1()) == 2);
    CHECK(rank(example2()) == 2);
    CHECK(rank_bareiss(example1()) == 2);
    CHECK(rank(PolyMatrix(3, 2, N)) == 0);
    CHECK(rank(PolyMatrix::identity(3, N)) == 3);
    std::mt19937 rng(8);
    for (int trial = 0; trial < 15; ++trial) {
        const PolyMatrix g = random_matrix(rng, 4, 2, 1, 2);
        const PolyMatrix f = random_matrix(rng, 2, 3, 1, 2);
        const PolyMatrix p = mat_mul(g, f);
        CHECK(rank(p) == rank_bareiss(p));
        CHECK(rank(p) <= 2);
    }
}

TEST_CASE("minors are listed row sets outer, column sets inner") {
    const PolyMatrix m = mat({{z1, z2, z3}, {one, c(2), c(3)}});
    const auto ms = minors(m, 2);
    REQUIRE(ms.size() == 3);
    CHECK(ms[0] == c(2) * z1 - z2);
    CHECK(ms[1] == c(3) * z1 - z3);
    CHECK(ms[2] == c(3) * z2 - c(2) * z3);
    CHECK(minors(m, 1).size() == 6);
    CHECK(index_subsets(4, 2).size() == 6);
    CHECK(index_subsets(4, 2).front() == std::vector<std::size_t>{0, 1});
    CHECK(index_subsets(4, 2).back() == std::vector<std::size_t>{2, 3});
}

TEST_CASE("d_i of the worked examples") {
    CHECK(d_i(example1(), 2) == z1 * z2 - z2);
    CHECK(d_i(example2(), 2) == z1 * z2 * z3);
    CHECK(d_i(example1(), 1) == one);
    CHECK_THROWS_AS(d_i(example1(), 3), Error);
    const MinorReport r = minor_report(example2(), 2);
    CHECK(r.level == 2);
    CHECK(r.minors.size() == 9);
    CHECK(r.d == z1 * z2 * z3);
    for (std::size_t j = 0; j < r.minors.size(); ++j) CHECK(r.reduced[j] * r.d == r.minors[j]);
}

TEST_CASE("column reduced minors of the worked examples") {
    const auto c1 = column_reduced_minors(example1(), 2);
    CHECK(c1.r == 2);
    CHECK(same_set_up_to_constant(c1.values, {one, z2, -z1}));
    const auto c2 = column_reduced_minors(example2(), 2);
    CHECK(same_set_up_to_constant(c2.values, {z3, z1 * z2, z1}));
    // first nonzero value has leading coefficient 1
    CHECK(c1.values.front().leading_term().coeff == 1);
}

TEST_CASE("column reduced minors do not depend on the column choice") {
    const PolyMatrix F = example2();
    std::vector<std::vector<Polynomial>> found;
    for (const auto& cols : index_subsets(3, 2)) {
        const std::vector<std::size_t> all{0, 1, 2};
        if (rank(F.submatrix(all, cols)) != 2) continue;
        found.push_back(column_reduced_minors_for(F, cols).values);
    }
    REQUIRE(found.size() >= 2);
    for (const auto& v : found) CHECK(same_up_to_sign(v, found.front()));
}

TEST_CASE("column reduced minors need a rank deficient input") {
    CHECK_THROWS_AS(column_reduced_minors(example1(), 3), Error);
}

TEST_CASE("printing matrices") {
    const PolyMatrix m = mat({{z1, zero}, {one, -z2}});
    CHECK(to_string(m) == "[[z1, 0], [1, -z2]]");
}
