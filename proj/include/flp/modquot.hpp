#pragma once
/*
 * Module quotients K : f and K : J, inclusion tests, the column reduced
 * minor freeness certificate, free basis extraction and left factor
 * solving.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flp/grobner.hpp"
#include "flp/matpoly.hpp"

namespace flp {

struct QuotientResult {
    SubmoduleGB source;
    std::vector<Polynomial> divisor;  // f, or the ideal generators
    SubmoduleGB quotient;             // reduced basis of K : divisor
    PolyMatrix generators;            // non-redundant generating system
};

// Row module of a matrix as a reduced basis.
SubmoduleGB row_module(const PolyMatrix& m, const ModuleOrder& order = {});

QuotientResult quotient_by_poly(const SubmoduleGB& K, const Polynomial& f);
// Uses only the nonzero generators; the result is the intersection of the
// single-polynomial quotients.
QuotientResult quotient_by_ideal(const SubmoduleGB& K, std::span<const Polynomial> gens);

// Drops elements that lie in the module of the remaining ones, scanning
// from the back.  Zero and duplicate elements go first.
std::vector<ModuleElement> prune_generators(std::vector<ModuleElement> gens, std::size_t rank_m, std::size_t nvars,
                                            const ModuleOrder& order = {});

struct FreenessCertificate {
    PolyMatrix generators;
    std::size_t rank = 0;
    ColumnReducedMinors minors;  // {1} when the generators have full row rank
    IdealGB minors_gb;
    bool full_row_rank = false;
    bool free = false;
};

// Verdict free iff the generators have full row rank, or their r x r column
// reduced minors generate the unit ideal.
FreenessCertificate freeness_check(const PolyMatrix& gens, std::size_t r);

struct FreeBasis {
    PolyMatrix basis;  // r x m, rows independent, same module as the generators
};

struct FreeBasisOptions {
    std::size_t recombination_attempts = 100;
    std::size_t column_reduction_steps = 16;
    std::uint32_t seed = 20200917u;
};

// Bounded search: full row rank shortcut, redundancy pruning, r-subsets of
// the generators and of alternative reduced bases, elementary column
// reduction of the maximal minors, then seeded constant recombinations.  Throws extraction_exhausted when all of it fails.
FreeBasis free_basis(const PolyMatrix& gens, std::size_t r, const FreenessCertificate& cert,
                     const FreeBasisOptions& options = {});

// G with F = G * basis.  Throws not_member when a row of F is outside the
// row module of the basis.
PolyMatrix solve_left_factor(const PolyMatrix& F, const FreeBasis& basis);
PolyMatrix solve_left_factor(const PolyMatrix& F, const PolyMatrix& basis);

bool module_subset(const SubmoduleGB& a, const SubmoduleGB& b);
bool module_equal(const SubmoduleGB& a, const SubmoduleGB& b);
bool module_proper_subset(const SubmoduleGB& a, const SubmoduleGB& b);
// Canonical comparison of two reduced bases under the same order.
bool same_reduced_basis(const SubmoduleGB& a, const SubmoduleGB& b);

}  // namespace flp
