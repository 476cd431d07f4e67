#pragma once
/*
 * Exact multivariate polynomials over Q.
 *
 * A Polynomial lives in Q[z_1..z_n] for a fixed ambient count n.  Terms are
 * kept in canonical form: sorted descending under degree reverse
 * lexicographic order (z_1 > z_2 > ... > z_n), no duplicate monomials and
 * no zero coefficients.  Other orders are applied on demand by the
 * division and Groebner routines.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "flp/error.hpp"

namespace flp {

using Rational = mpq_class;

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps);

    std::size_t size() const noexcept { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

    void set(std::size_t i, std::uint32_t e);

    bool divides(const Monomial& other) const;
    bool coprime(const Monomial& other) const;

    Monomial operator*(const Monomial& other) const;
    // Requires this->divides(num).
    Monomial quotient_of(const Monomial& num) const;
    Monomial lcm(const Monomial& other) const;

    // Monomial with `extra` trailing zero exponents.
    Monomial extended(std::size_t extra) const;
    Monomial truncated(std::size_t nvars) const;

    bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
    std::strong_ordering operator<=>(const Monomial& other) const { return exps_ <=> other.exps_; }

private:
    std::vector<std::uint32_t> exps_;
    std::uint32_t degree_ = 0;
};

class MonomialOrder {
public:
    enum class Kind { lex, degrevlex, elimination };

    static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
    static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, 0); }
    // The first `block` variables form a degrevlex block ranked above the rest.
    static MonomialOrder elimination(std::size_t block) { return MonomialOrder(Kind::elimination, block); }

    MonomialOrder() = default;

    Kind kind() const noexcept { return kind_; }
    std::size_t block() const noexcept { return block_; }

    // Three-way comparison over the first `count` variables (all when count
    // exceeds the monomial size).  Positive means a > b.
    int compare(const Monomial& a, const Monomial& b, std::size_t count = SIZE_MAX) const;

    std::string name() const;

    bool operator==(const MonomialOrder&) const = default;

private:
    MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

    Kind kind_ = Kind::degrevlex;
    std::size_t block_ = 0;
};

// Positive iff a > b; both helpers work on [lo, hi).
int compare_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi);
int compare_degrevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi);

struct Term {
    Monomial mono;
    Rational coeff;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(const Monomial& m, const Rational& c);
    // Canonicalizes: sorts, merges duplicates, drops zeros.
    static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

    std::size_t nvars() const noexcept { return nvars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || terms_.front().mono.is_one(); }
    bool is_one() const;

    // Leading term in the canonical (degrevlex) order.  Requires nonzero.
    const Term& leading_term() const;
    Term leading_term(const MonomialOrder& order) const;
    Rational constant_term() const;

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial scaled(const Rational& c) const;
    Polynomial shifted(const Monomial& m) const;

    // Leading coefficient (canonical order) scaled to 1; zero stays zero.
    Polynomial monic() const;

    // Same polynomial in a ring with `extra` more trailing variables.
    Polynomial extended(std::size_t extra) const;

    bool operator==(const Polynomial& other) const;

private:
    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned exponent);

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

// Multivariate division: p = sum q_i d_i + r, no term of r divisible by any
// leading monomial of the divisors under `order`.
DivisionResult divrem(const Polynomial& p, std::span<const Polynomial> divisors,
                      const MonomialOrder& order = MonomialOrder::degrevlex());

// Exact quotient p / d; throws not_member when d does not divide p.
Polynomial exact_divide(const Polynomial& p, const Polynomial& d);
bool divides(const Polynomial& d, const Polynomial& p);

Polynomial partial_derivative(const Polynomial& p, std::size_t var_index);

// Monic gcd of all inputs.  Built on the Groebner engine: lcm(a, b) spans
// <a> ∩ <b>, and gcd = a b / lcm.
Polynomial gcd(std::span<const Polynomial> ps);
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);

bool is_squarefree(const Polynomial& p);

// p and q differ by a nonzero rational factor.
bool associated(const Polynomial& p, const Polynomial& q);

// Rendering with the given variable names (z1..zn when empty).
std::string to_string(const Polynomial& p, std::span<const std::string> names = {});
std::vector<std::string> default_variable_names(std::size_t nvars);

}  // namespace flp
