#pragma once
/*
 * FLP factorization of a rank-deficient polynomial matrix F (l x m, rank
 * r < l): every F = G * F1 with F1 factor left prime, found by scanning the
 * divisors f of d_r(F) and testing the module quotients of rho(F) for
 * freeness.
 *
 * When the column reduced minors of F generate the unit ideal the quotient
 * is rho(F) : f and survivors are filtered by divisibility of f; otherwise
 * the quotient is rho(F) : <f c_1, ..., f c_k> and survivors are filtered by
 * module inclusion, with d_r(G) computed afterwards.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flp/divisors.hpp"
#include "flp/matpoly.hpp"
#include "flp/modquot.hpp"

namespace flp {

enum class Branch { unit_ideal, proper_ideal };

std::string to_string(Branch b);

struct FlpOptions {
    bool all_factorizations = false;  // skip the maximality filter
    bool force_proper_ideal_branch = false;
    MonomialOrder order = MonomialOrder::degrevlex();
    std::optional<std::vector<Polynomial>> factors;  // irreducible factors of d_r(F), validated
    FactorLimits factor_limits;
    FreeBasisOptions basis_options;
};

struct FlpFactorization {
    PolyMatrix G;   // l x r
    PolyMatrix F1;  // r x m
    Polynomial f;   // d_r(G) as computed, monic
    Polynomial requested;  // the divisor whose quotient produced F1
    Polynomial d_r_of_G;
    bool verified = false;  // F = G F1 and d_r(G) d_r(F1) = d_r(F) up to a constant
};

struct CandidateTrace {
    std::size_t index = 0;  // position in the divisor lattice
    Polynomial divisor;
    QuotientResult quotient;
    FreenessCertificate certificate;
    bool free = false;
    bool selected = false;  // made it into W
};

struct FlpRun {
    PolyMatrix F;
    std::size_t rank = 0;
    Polynomial d_r;
    ColumnReducedMinors column_minors;
    IdealGB minor_ideal;  // reduced basis of <c_1, ..., c_k>
    Branch branch = Branch::unit_ideal;
    DivisorLattice lattice;
    std::vector<CandidateTrace> trace;
    std::vector<FlpFactorization> W;
};

// Rejects rank 0, full row rank and non-square-free d_r(F) with precondition
// errors.
FlpRun flp_run(const PolyMatrix& F, const FlpOptions& options = {});
std::vector<FlpFactorization> flp_factorize(const PolyMatrix& F, const FlpOptions& options = {});

// Factorization with d_r(G) = f, if the quotient for f is free.  f must
// divide d_r(F).
std::optional<FlpFactorization> factorize_wrt(const PolyMatrix& F, const Polynomial& f,
                                              const FlpOptions& options = {});

// Whether the trace entry survives the maximality filter of its run.
bool is_flp_in_W(const FlpRun& run, std::size_t trace_index);

// Right-prime counterpart on the transpose.  Each result satisfies
// F = F1 * G with F1 (l x r) factor right prime and G (r x m).
FlpRun frp_run(const PolyMatrix& F, const FlpOptions& options = {});
std::vector<FlpFactorization> frp_factorize(const PolyMatrix& F, const FlpOptions& options = {});

// F = G F1 exactly, and d_r(G) d_r(F1) = d_r(F) up to a constant.
bool check_factorization(const PolyMatrix& F, const PolyMatrix& G, const PolyMatrix& F1);

}  // namespace flp
