#pragma once
// Irreducible factors of a square-free polynomial over Q and its divisor lattice.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "flp/polyring.hpp"

namespace flp {

struct FactorLimits {
    std::size_t max_image_degree = 4096;   // Kronecker image degree
    std::size_t max_modular_factors = 18;  // recombination is exponential in this
    std::size_t max_substitution_retries = 8;
    std::uint64_t seed = 0x5eed;
};

// Irreducible factors over Q, each monic, sorted descending by leading
// monomial.  Throws factorization_incomplete when a bound is hit and
// invalid_argument when d is zero or not square-free.
std::vector<Polynomial> irreducible_factors(const Polynomial& d, const FactorLimits& limits = {});

// Checks externally supplied factors against d: nonconstant, pairwise
// non-associate, product equal to d up to a constant.  Irreducibility is
// not checked.  Returns the normalized, sorted list.
std::vector<Polynomial> validate_factors(const Polynomial& d, const std::vector<Polynomial>& factors);

struct DivisorLattice {
    Polynomial d;                      // monic
    std::vector<Polynomial> factors;   // p_1..p_t
    std::vector<Polynomial> divisors;  // 2^t subset products, bitmask ascending
    std::vector<std::uint64_t> masks;  // factor subset of each divisor

    std::size_t index_of(const Polynomial& f) const;  // throws when absent
};

DivisorLattice enumerate_divisors(const std::vector<Polynomial>& factors, std::size_t nvars);

struct MultipleSet {
    Polynomial base;
    std::vector<Polynomial> members;
    std::vector<std::size_t> indices;  // positions in the lattice
};

MultipleSet multiples_of(const DivisorLattice& lattice, const Polynomial& f);

}  // namespace flp
