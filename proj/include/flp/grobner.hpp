#pragma once
/*
 * Buchberger engine for ideals of Q[z] and submodules of the free row
 * module Q[z]^{1 x m}.
 *
 * Module orders extend a base monomial order.  The default is
 * position-over-term with e_1 > e_2 > ... > e_m.  Trailing "tag" variables
 * can be ranked above everything else, which turns the order into an
 * elimination order for those variables (used for intersections).
 */

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "flp/polyring.hpp"

namespace flp {

// A row vector in Q[z]^{1 x m}.
using ModuleElement = std::vector<Polynomial>;

struct ModuleOrder {
    enum class Kind { position_over_term, term_over_position };

    MonomialOrder base = MonomialOrder::degrevlex();
    Kind kind = Kind::position_over_term;
    bool reverse_positions = false;  // e_m > ... > e_1
    std::size_t tag_vars = 0;        // trailing variables eliminated first

    // Positive iff (pa, a) > (pb, b).
    int compare(std::size_t pa, const Monomial& a, std::size_t pb, const Monomial& b) const;

    bool operator==(const ModuleOrder&) const = default;
};

struct IdealGB {
    std::vector<Polynomial> generators;
    MonomialOrder order;
    bool reduced = false;

    bool is_unit() const { return generators.size() == 1 && generators.front().is_constant(); }
    bool is_zero() const { return generators.empty(); }
};

struct SubmoduleGB {
    std::size_t rank_m = 0;  // ambient free module rank
    std::size_t nvars = 0;
    std::vector<ModuleElement> generators;
    ModuleOrder order;
    bool reduced = false;

    bool is_zero() const { return generators.empty(); }
};

IdealGB ideal_reduced_gb(std::span<const Polynomial> gens, const MonomialOrder& order = MonomialOrder::degrevlex());

SubmoduleGB module_reduced_gb(std::span<const ModuleElement> gens, std::size_t rank_m, std::size_t nvars,
                              const ModuleOrder& order = {});

// Remainder of v modulo gb; zero iff v lies in the module.
ModuleElement normal_form(const ModuleElement& v, const SubmoduleGB& gb);
Polynomial normal_form(const Polynomial& p, const IdealGB& gb);

bool is_member(const ModuleElement& v, const SubmoduleGB& gb);
bool is_zero_element(const ModuleElement& v);

// Coefficients lambda with v = sum lambda_i gens[i].  Throws not_member
// when v is outside the module.
std::vector<Polynomial> lift(const ModuleElement& v, std::span<const ModuleElement> gens, std::size_t nvars,
                             const ModuleOrder& order = {});

// Reusable lifting context: one Groebner basis of the graph module serves
// many right-hand sides.
class Lifter {
public:
    Lifter(std::span<const ModuleElement> gens, std::size_t rank_m, std::size_t nvars, const ModuleOrder& order = {});
    ~Lifter();
    Lifter(Lifter&&) noexcept;
    Lifter& operator=(Lifter&&) noexcept;

    std::vector<Polynomial> lift(const ModuleElement& v) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

SubmoduleGB module_intersect(const SubmoduleGB& a, const SubmoduleGB& b);

// True iff every S-pair of the basis reduces to zero.
bool buchberger_certify(const SubmoduleGB& gb);
bool buchberger_certify(const IdealGB& gb);

// Raw generator lists packaged as an uncompleted basis (for certification
// tests and for callers that already hold a basis).
SubmoduleGB as_basis(std::vector<ModuleElement> gens, std::size_t rank_m, std::size_t nvars,
                     const ModuleOrder& order = {});

// Helpers.
ModuleElement zero_element(std::size_t m, std::size_t nvars);
ModuleElement unit_element(std::size_t m, std::size_t nvars, std::size_t pos);
ModuleElement scale(const ModuleElement& v, const Polynomial& p);
ModuleElement add(const ModuleElement& a, const ModuleElement& b);

}  // namespace flp
