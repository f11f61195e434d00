#pragma once

#include <optional>

#include "symseek/solve.hpp"
#include "symseek/verify.hpp"

namespace symseek {

enum class StrategyKind { NuLinear, MonomialSeed, QDividesN, QEqualsUN, NOfXOnly, CommonFactor, Base };

struct StrategySpec {
    StrategyKind kind = StrategyKind::Base;
    Var u = Var::Z;  // only for QEqualsUN

    std::string id() const;  // "base", "q-div-n", "q-u-n:z", ...
};

// CLI identifier -> spec; "auto" is handled by the caller.
std::optional<StrategySpec> strategy_from_id(const std::string& id);

struct SigmaResult {
    FracS sigma;
    StrategySpec strategy;
    Assignment assignment;
    double elapsed = 0.0;  // seconds since the strategy run started
    bool verified = false;
};

// Per-degree bookkeeping of the base loop.
struct DegreeAttempt {
    uint32_t n = 0;
    size_t branches = 0;
    bool trivial_only = true;
};

struct SearchReport {
    std::optional<SigmaResult> result;
    std::vector<DegreeAttempt> attempts;  // base / n-of-x degree loop only
    bool budget_exhausted = false;        // some solve hit its budget
    bool inapplicable = false;            // strategy precondition failed
    bool exhaustive = false;              // NotFound is a proof within the bounds
    std::vector<Assignment> unresolved;   // branches needing an algebraic extension
    std::vector<std::pair<std::string, double>> timings;  // (strategy id, seconds)
};

struct SearchBudget {
    uint32_t n_max = 7;
    double timeout_seconds = 60.0;
    SolveBudget solve;                     // split / groebner caps per attempt
    std::set<uint32_t> nonzero_params;     // declared side conditions
};

// Polynomial canonical functions: sigma = -D_x[nu]/nu with nu a generic
// polynomial turns the determining PDE into the linear equation
// D_x^2 nu = phi_z D_x nu + phi_y nu, solved degree by degree.  Cheap, and
// it reproduces the tabulated sigma whenever the table's nu is polynomial.
SearchReport run_nu_linear(const Ode2& ode, const SearchBudget& budget);

// Base semi-algorithm: degree loop n = 1..n_max with the Theorem-5 bounds
// (p_c picks up the M-excess offset), linear prefilter applied when
// N_y != 0 and N_z != 0.
SearchReport run_asymm(const Ode2& ode, const SearchBudget& budget);

// q_c fixed to N and to each divisor of N found by trial division;
// p_c generic at the Theorem-7 bound.  Exhaustive for this sigma shape.
SearchReport run_q_divides_n(const Ode2& ode, const SearchBudget& budget);

// q_c = u*N, bound shifted by one.
SearchReport run_q_equals_uN(const Ode2& ode, Var u, const SearchBudget& budget);

// Requires N = N(x); q_c generic in (x, y) only.
SearchReport run_n_of_x(const Ode2& ode, const SearchBudget& budget);

// p_c on the monomial support of M and of M_z, q_c paired cheaply
// (N, generic of low degree, divisor times generic linear/quadratic).
SearchReport run_monomial_seed(const Ode2& ode, const SearchBudget& budget);

// q_c = d * q_m for each divisor d of N and generic q_m of degree 1..3.
SearchReport run_common_factor(const Ode2& ode, const SearchBudget& budget);

// Scheduler: NuLinear -> MonomialSeed -> QDividesN -> QEqualsUN(z, x, y) ->
// NOfXOnly -> CommonFactor -> Base, cheap fixed slices first, Base gets the
// remainder.
SearchReport run_auto(const Ode2& ode, const SearchBudget& budget);

// Linear prefilter (Theorem 6, condition 1): solve
// q_c*N_y - p_c*N_z - N*P_c = 0 for the a/b symbols in terms of the c's and
// return the reduced candidates.  nullopt when inapplicable (N_y = 0 or
// N_z = 0) or when the only solution is p_c = q_c = 0.
struct PrefilterResult {
    Assignment partial;
    PolyS pc;
    PolyS qc;
};
std::optional<PrefilterResult> run_prefilter_11(const Ode2& ode, const PolyS& pc,
                                                const PolyS& qc);

// Divisors of N assembled from its monomial part, linear factors found by
// rational-root extraction, and the remaining cofactor.  N itself comes
// first; 1 is included.
std::vector<PolyS> divisors_of_N(const Ode2& ode);

// -- parametric analysis ---------------------------------------------------

struct ParamBranch {
    std::vector<CoeffPoly> constraints;  // param relations (= 0)
    std::vector<CoeffPoly> nonvanish;    // assumed != 0 along the branch
    FracS sigma;
    Assignment assignment;
    bool unresolved_algebraic = false;
    std::vector<CoeffPoly> relations;    // defining relations when unresolved
};

struct ParamReport {
    std::vector<ParamBranch> branches;       // carry parameter constraints
    std::vector<ParamBranch> unconstrained;  // symmetries valid for generic params
    bool budget_exhausted = false;
    uint32_t degree = 0;  // candidate degree at which branches were found
};

// Treat the ODE parameters as unknowns: base candidates, Parametric solve,
// branches aggregated across pivots; each sigma is verified modulo the
// branch constraints.  Stops at the first degree producing branches.
ParamReport run_parametric(const Ode2& ode, const SearchBudget& budget);

// Exact verification modulo a parameter ideal: the residual numerator must
// reduce to zero against a Groebner basis of the constraints.
bool verify_sigma_mod(const FracS& sigma, const Ode2& ode,
                      const std::vector<CoeffPoly>& constraints);
bool sigma_equal_mod(const FracS& a, const FracS& b,
                     const std::vector<CoeffPoly>& constraints);

}  // namespace symseek
