#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "symseek/ratfun.hpp"

namespace symseek {

struct SyntaxError : std::runtime_error {
    size_t pos;
    SyntaxError(const std::string& what, size_t p)
        : std::runtime_error(what + " (at position " + std::to_string(p) + ")"),
          pos(p) {}
};

struct NotRational : std::runtime_error {
    NotRational(const std::string& what) : std::runtime_error(what) {}
};

enum class BoundKind { Balanced, Excess };

struct DegreeReport {
    uint32_t deg_M = 0;
    uint32_t deg_N = 0;
    BoundKind kind = BoundKind::Balanced;
    uint32_t offset = 0;  // deg_M - deg_N - 1 when Excess
};

// y'' = M/N with M, N polynomial in (x, y, z=y').  Parameters appear as
// symbolic coefficients inside M and N.  When params is empty, M and N are
// kept coprime over Rat with monic-positive N; otherwise only rational
// content is stripped (no parametric gcd).
struct Ode2 {
    PolyS M;
    PolyS N;
    std::vector<std::string> params;

    FracS phi() const { return FracS(M, N); }
    bool operator==(const Ode2& o) const {
        return M == o.M && N == o.N && params == o.params;
    }
};

// Parse a bare expression in the grammar: x, y, y' (alias z), integer
// literals, parameter identifiers, + - * / ^ (non-negative integer
// exponents), parentheses.  Parameter names encountered are added to params.
FracS parse_expression(const std::string& text, std::set<std::string>* params = nullptr);

// Parse "y'' = <expr>".
Ode2 parse_ode(const std::string& text);

// Build the canonical Ode2 from an unreduced fraction.
Ode2 make_ode(const FracS& f, const std::set<std::string>& params);

// Canonical rendering "y'' = (M)/(N)"; parse_ode(render(ode)) == ode.
std::string render(const Ode2& ode);

// Cartan vector field: D_x f = f_x + z f_y + (M/N) f_z.
FracS apply_Dx(const FracS& f, const Ode2& ode);
RatFun apply_Dx(const RatFun& f, const Ode2& ode);

// Formal partial derivative of an unreduced fraction.
FracS frac_partial(const FracS& f, Var v);

DegreeReport degree_report(const Ode2& ode);

// {"M": "...", "N": "...", "params": [...]}
std::string ode_to_json(const Ode2& ode);
Ode2 ode_from_json(const std::string& text);

}  // namespace symseek
