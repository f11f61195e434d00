#pragma once

#include <stdexcept>
#include <vector>

#include "symseek/coeffpoly.hpp"

namespace symseek {

struct BudgetExhausted : std::runtime_error {
    BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Graded: deglex over all symbols.  Elimination: block order putting the
// undetermined coefficients (A/B/C) ahead of the parameters, deglex inside
// each block; a basis under it exposes the param-only ideal.
enum class TermOrder { Graded, Elimination };

bool symmono_less(const SymMono& a, const SymMono& b, TermOrder order);

struct GroebnerBudget {
    size_t max_basis_size = 400;
    size_t max_pairs = 50000;
};

// Leading term of f under the order (f nonzero).
const std::pair<const SymMono, Rat>& lead_term(const CoeffPoly& f, TermOrder order);

// Full reduction of f modulo the set; result has no term divisible by any
// basis leading monomial.
CoeffPoly reduce_mod(const CoeffPoly& f, const std::vector<CoeffPoly>& basis,
                     TermOrder order);

// Buchberger with the product and chain criteria; returns the reduced basis
// (monic-content-normalized, sorted).
std::vector<CoeffPoly> groebner_basis(std::vector<CoeffPoly> gens, TermOrder order,
                                      const GroebnerBudget& budget = {});

}  // namespace symseek
