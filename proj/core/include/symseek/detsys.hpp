#pragma once

#include <vector>

#include "symseek/ode.hpp"

namespace symseek {

// System AE: coefficients of the determining identity, each equation = 0.
struct AlgSystem {
    std::vector<CoeffPoly> equations;  // normalized, deduplicated, in source order
    std::vector<Sym> unknowns;         // A-symbols, B-symbols, then Params
};

// All monomials of total degree <= n in the selected variables, ordered by
// ascending degree and descending grevlex within a degree (so the constant
// gets index 0, then x, y, z, x^2, ...).
std::vector<Mono> monomials_up_to(uint32_t n, bool use_x, bool use_y, bool use_z);

// Generic polynomial with a fresh undetermined coefficient per monomial.
PolyS generic_poly(uint32_t n, bool use_x, bool use_y, bool use_z, SymKind kind,
                   uint32_t start_index = 0, std::vector<Sym>* out_syms = nullptr);
PolyS generic_poly_on(const std::vector<Mono>& support, SymKind kind,
                      uint32_t start_index = 0, std::vector<Sym>* out_syms = nullptr);

// Left-hand side of the cleared-denominator determining identity:
//   p^2 N^2 + pq N M_z - pq M N_z - q^2 N M_y + q^2 M N_y
//   - q p_x N^2 - z q p_y N^2 - q p_z N M
//   + p q_x N^2 + z p q_y N^2 + p q_z N M  =  0
PolyS build_determining_identity(const Ode2& ode, const PolyS& p_c, const PolyS& q_c);

// One equation per monomial with nonzero coefficient, deduplicated up to
// constant scaling, in ascending monomial order.
AlgSystem extract_system(const PolyS& identity);

// Ordered text dump, one equation per line.
std::string dump_system(const AlgSystem& sys);

}  // namespace symseek
