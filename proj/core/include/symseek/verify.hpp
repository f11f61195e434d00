#pragma once

#include "symseek/ode.hpp"

namespace symseek {

struct NotDarbouxRepresentable : std::runtime_error {
    NotDarbouxRepresentable(const std::string& what) : std::runtime_error(what) {}
};

// F = e^R * prod f_i^{c_i}; closed under logarithmic differentiation:
// logderiv(F) = D_x R + sum c_i D_x(f_i)/f_i is rational even for
// fractional exponents.
struct DarbouxFunction {
    FracS R;
    std::vector<std::pair<PolyS, Rat>> factors;
};

// Text form: exp(R) * f1^c1 * ... * fk^ck.  The exp part is optional, the
// exponents are rational literals (parenthesized when signed or fractional),
// R and f_i follow the ODE expression grammar.
DarbouxFunction parse_darboux(const std::string& text,
                              std::set<std::string>* params = nullptr);

FracS logderiv(const DarbouxFunction& F, const Ode2& ode);

// Residual of the determining PDE: D_x sigma - sigma^2 - phi_z sigma + phi_y.
bool verify_sigma(const FracS& sigma, const Ode2& ode, FracS* residual = nullptr);
bool verify_sigma(const RatFun& sigma, const Ode2& ode, RatFun* residual = nullptr);

// sigma = -logderiv(nu).
bool verify_nu(const DarbouxFunction& nu, const FracS& sigma, const Ode2& ode);

// D_x I = 0, i.e. logderiv(I) = 0.
bool verify_first_integral(const DarbouxFunction& I, const Ode2& ode);

// Log-derivative -sigma - phi_z that any integrating factor paired with
// sigma must have.
FracS mu_log_derivative(const FracS& sigma, const Ode2& ode);

// Probabilistic pre-filter: evaluates the residual numerator at seeded
// pseudo-random rational points.  false implies verify_sigma is false.
bool numeric_spotcheck(const FracS& sigma, const Ode2& ode, int trials,
                       uint64_t seed);

// Canonical equality of two sigma candidates as rational functions
// (cross-multiplication; parameters stay symbolic).
bool sigma_equal(const FracS& a, const FracS& b);

}  // namespace symseek
