#pragma once

#include <optional>
#include <set>

#include "symseek/detsys.hpp"
#include "symseek/groebner.hpp"

namespace symseek {

struct Inconsistent : std::runtime_error {
    Inconsistent(const std::string& what) : std::runtime_error(what) {}
};

// Value of an assigned symbol, a fraction in the remaining symbols.
struct SymFrac {
    CoeffPoly num;
    CoeffPoly den;

    SymFrac() : num(), den(Rat(1)) {}
    SymFrac(CoeffPoly n, CoeffPoly d);
    static SymFrac constant(const Rat& r) { return SymFrac(CoeffPoly(r), CoeffPoly(Rat(1))); }
    bool is_zero() const { return num.is_zero(); }
    std::string str() const;
};

struct Assignment {
    std::map<uint32_t, SymFrac> values;           // assigned symbol -> value
    std::set<uint32_t> free_syms;                  // unassigned non-param symbols
    std::vector<CoeffPoly> constraints;            // param relations (= 0)
    std::vector<CoeffPoly> nonvanish;              // param quantities assumed != 0
    bool unresolved_algebraic = false;
    std::vector<CoeffPoly> unresolved_relations;   // defining relations of the extension

    std::string key() const;  // canonical branch key (sorting / dedup)
};

struct SolveBudget {
    int max_case_splits = 20000;
    size_t max_groebner_basis_size = 400;
    double timeout_seconds = 60.0;
};

enum class SolveMode { NonParametric, Parametric };

struct SolveOutcome {
    std::vector<Assignment> branches;
    bool exhausted = false;  // budget hit before the search space was covered
    int splits_used = 0;
};

// Pre-pass only: constant*s = 0, s^k = 0, single-symbol linear elimination,
// to a fixed point.  Throws Inconsistent on a nonzero constant equation.
std::pair<AlgSystem, Assignment> propagate_linear(const AlgSystem& sys);

// Full branch search.  NonParametric: parameters are generic (any nonzero
// polynomial purely in parameters is invertible); stops at the first pivot
// that yields branches.  Parametric: parameters are unknowns; branches carry
// constraints, and all pivots are aggregated.  nonzero_params are symbol
// codes declared nonzero (side conditions); pivots overrides the automatic
// pivot order when non-empty.
SolveOutcome solve_system(const AlgSystem& sys, const SolveBudget& budget,
                          SolveMode mode,
                          const std::set<uint32_t>& nonzero_params = {},
                          const std::vector<Sym>& pivots = {});

// Substitute an assignment into a candidate polynomial; remaining free
// symbols stay symbolic.  The result is (poly, constant-in-xyz denominator).
FracS eval_candidate(const PolyS& cand, const Assignment& asg);

}  // namespace symseek
