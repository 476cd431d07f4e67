#include "doctest.h"
#include "test_support.hpp"

using namespace flp;
using namespace flp::testing;

namespace {

ModuleElement el(std::vector<Polynomial> v) { return v; }

ModuleOrder order_of(ModuleOrder::Kind kind, MonomialOrder base, bool reverse) {
    ModuleOrder o;
    o.kind = kind;
    o.base = base;
    o.reverse_positions = reverse;
    return o;
}

}  // namespace

TEST_CASE("reduced basis of a textbook ideal") {
    // <x^2 - y, x y - 1> under lex: {x - y^2, y^3 - 1}
    std::vector<Polynomial> gens{z1 * z1 - z2, z1 * z2 - one};
    const IdealGB gb = ideal_reduced_gb(gens, MonomialOrder::lex());
    REQUIRE(gb.generators.size() == 2);
    CHECK(gb.generators[0] == z1 - z2 * z2);
    CHECK(gb.generators[1] == z2 * z2 * z2 - one);
    CHECK(buchberger_certify(gb));
    CHECK(gb.reduced);
}

TEST_CASE("unit and zero ideals") {
    std::vector<Polynomial> unit{z1, z1 + one};
    CHECK(ideal_reduced_gb(unit).is_unit());
    std::vector<Polynomial> minors{one, z2, -z1};
    CHECK(ideal_reduced_gb(minors).is_unit());
    std::vector<Polynomial> zeros{zero, zero};
    CHECK(ideal_reduced_gb(zeros).is_zero());
    std::vector<Polynomial> ex2{z3, -z1 * z2, -z1};
    const IdealGB g = ideal_reduced_gb(ex2);
    REQUIRE(g.generators.size() == 2);
    CHECK(g.generators[0] == z1);
    CHECK(g.generators[1] == z3);
}

TEST_CASE("ideal membership by normal form") {
    std::vector<Polynomial> gens{z1 * z1 - z2, z1 * z2 - one};
    const IdealGB gb = ideal_reduced_gb(gens);
    CHECK(normal_form((z1 * z1 - z2) * (z3 + c(4)) + (z1 * z2 - one) * z1, gb).is_zero());
    CHECK_FALSE(normal_form(z1 + one, gb).is_zero());
}

TEST_CASE("a non-basis fails certification") {
    std::vector<Polynomial> gens{z1 * z1 - z2, z1 * z2 - one};
    CHECK_FALSE(buchberger_certify(IdealGB{gens, MonomialOrder::lex(), false}));
    std::vector<ModuleElement> mgens{el({z1, z2}), el({z2, z1})};
    CHECK_FALSE(buchberger_certify(as_basis(mgens, 2, N)));
}

TEST_CASE("reduced basis idempotence on random ideals") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Polynomial> gens;
        const int count = 1 + trial % 3;
        for (int i = 0; i < count; ++i) gens.push_back(random_poly(rng, 2, 3));
        const auto order = trial % 2 ? MonomialOrder::lex() : MonomialOrder::degrevlex();
        const IdealGB gb = ideal_reduced_gb(gens, order);
        CHECK(buchberger_certify(gb));
        const IdealGB again = ideal_reduced_gb(gb.generators, order);
        CHECK(again.generators == gb.generators);
        for (const auto& g : gens) CHECK(normal_form(g, gb).is_zero());
    }
}

TEST_CASE("reduced basis idempotence on random modules") {
    std::mt19937 rng(77);
    const ModuleOrder orders[] = {
        {},
        order_of(ModuleOrder::Kind::term_over_position, MonomialOrder::degrevlex(), false),
        order_of(ModuleOrder::Kind::position_over_term, MonomialOrder::lex(), true),
    };
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ModuleElement> gens;
        const std::size_t m = 2 + trial % 2;
        for (int i = 0; i < 2; ++i) {
            ModuleElement v;
            for (std::size_t j = 0; j < m; ++j) v.push_back(random_poly(rng, 2, 2));
            gens.push_back(std::move(v));
        }
        const ModuleOrder& order = orders[trial % 3];
        const SubmoduleGB gb = module_reduced_gb(gens, m, N, order);
        CHECK(buchberger_certify(gb));
        const SubmoduleGB again = module_reduced_gb(gb.generators, m, N, order);
        CHECK(again.generators == gb.generators);
        for (const auto& g : gens) CHECK(is_member(g, gb));
    }
}

TEST_CASE("module membership and lifting") {
    const PolyMatrix F = example1();
    const auto rows = F.row_elements();
    const SubmoduleGB gb = module_reduced_gb(rows, 3, N);
    CHECK(buchberger_certify(gb));
    // the third row is z1 * row1 + z2 * row2 + ... up to membership
    CHECK(is_member(rows[2], gb));
    CHECK_FALSE(is_member(unit_element(3, N, 0), gb));

    const ModuleElement v = add(scale(rows[0], z3 - one), scale(rows[1], z1 * z2));
    const auto lambda = lift(v, rows, N);
    REQUIRE(lambda.size() == rows.size());
    ModuleElement back = zero_element(3, N);
    for (std::size_t i = 0; i < rows.size(); ++i) back = add(back, scale(rows[i], lambda[i]));
    CHECK(back == v);

    CHECK_THROWS_AS(lift(unit_element(3, N, 2), rows, N), Error);
}

TEST_CASE("lifter reuse matches single lifts") {
    std::mt19937 rng(9);
    const PolyMatrix F = example2();
    const auto rows = F.row_elements();
    Lifter lifter(rows, 3, N);
    for (int trial = 0; trial < 10; ++trial) {
        ModuleElement v = zero_element(3, N);
        for (const auto& r : rows) v = add(v, scale(r, random_poly(rng, 1, 2)));
        const auto lambda = lifter.lift(v);
        ModuleElement back = zero_element(3, N);
        for (std::size_t i = 0; i < rows.size(); ++i) back = add(back, scale(rows[i], lambda[i]));
        CHECK(back == v);
    }
}

TEST_CASE("intersection of ideals and modules") {
    // <z1> ∩ <z2> = <z1 z2>
    std::vector<ModuleElement> a{el({z1})};
    std::vector<ModuleElement> b{el({z2})};
    const SubmoduleGB i = module_intersect(module_reduced_gb(a, 1, N), module_reduced_gb(b, 1, N));
    REQUIRE(i.generators.size() == 1);
    CHECK(i.generators[0][0] == z1 * z2);

    // rows of example 1 meet z2 R^3
    const auto rows = example1().row_elements();
    std::vector<ModuleElement> scaled{el({z2, zero, zero}), el({zero, z2, zero}), el({zero, zero, z2})};
    const SubmoduleGB K = module_reduced_gb(rows, 3, N);
    const SubmoduleGB S = module_reduced_gb(scaled, 3, N);
    const SubmoduleGB meet = module_intersect(K, S);
    CHECK(buchberger_certify(meet));
    for (const auto& g : meet.generators) {
        CHECK(is_member(g, K));
        CHECK(is_member(g, S));
    }
    // z2 * row1 lies in both
    CHECK(is_member(scale(rows[0], z2), meet));
}

TEST_CASE("module helpers") {
    CHECK(is_zero_element(zero_element(3, N)));
    CHECK_FALSE(is_zero_element(unit_element(3, N, 1)));
    CHECK(unit_element(3, N, 1)[1] == one);
    CHECK(scale(el({z1, one}), z2) == el({z1 * z2, z2}));
    CHECK(add(el({z1, one}), el({one, z2})) == el({z1 + one, z2 + one}));
}
