#pragma once

#include <map>
#include <string>

#include "symseek/coeffpoly.hpp"
#include "symseek/mono.hpp"
#include "symseek/rat.hpp"

namespace symseek {

inline bool coeff_is_zero(const Rat& c) { return rat_is_zero(c); }
inline bool coeff_is_zero(const CoeffPoly& c) { return c.is_zero(); }

// Sparse polynomial in (x, y, z) over an exact coefficient ring
// (Rat, or CoeffPoly when undetermined symbols / parameters are present).
template <class C>
struct Polynomial {
    std::map<Mono, C> t;

    Polynomial() = default;
    explicit Polynomial(const C& c) {
        if (!coeff_is_zero(c)) t.emplace(Mono::one(), c);
    }
    static Polynomial term(const Mono& m, const C& c) {
        Polynomial p;
        if (!coeff_is_zero(c)) p.t.emplace(m, c);
        return p;
    }
    static Polynomial variable(Var v) { return term(Mono::var(v), C(1)); }

    bool is_zero() const { return t.empty(); }
    // Degree of the zero polynomial is reported as 0.
    uint32_t deg() const {
        uint32_t d = 0;
        for (auto& [m, c] : t) d = std::max(d, m.deg());
        return d;
    }
    uint32_t deg_of(Var v) const {
        uint32_t d = 0;
        for (auto& [m, c] : t) d = std::max(d, m[v]);
        return d;
    }
    bool depends_on(Var v) const { return deg_of(v) > 0; }
    size_t nterms() const { return t.size(); }

    void add_term(const Mono& m, const C& c) {
        if (coeff_is_zero(c)) return;
        auto it = t.find(m);
        if (it == t.end()) {
            t.emplace(m, c);
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) t.erase(it);
        }
    }

    // Leading term under grevlex.
    const std::pair<const Mono, C>& lead() const { return *t.rbegin(); }

    Polynomial operator-() const {
        Polynomial r;
        for (auto& [m, c] : t) r.t.emplace(m, -c);
        return r;
    }
    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (auto& [m, c] : o.t) r.add_term(m, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (auto& [m, c] : o.t) r.add_term(m, -c);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        for (auto& [m, c] : o.t) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (auto& [m, c] : o.t) add_term(m, -c);
        return *this;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r;
        for (auto& [m1, c1] : t)
            for (auto& [m2, c2] : o.t) r.add_term(m1 * m2, c1 * c2);
        return r;
    }
    Polynomial scaled(const C& c) const {
        Polynomial r;
        if (coeff_is_zero(c)) return r;
        for (auto& [m, k] : t) {
            C v = k * c;
            if (!coeff_is_zero(v)) r.t.emplace(m, v);
        }
        return r;
    }
    Polynomial mul_mono(const Mono& m) const {
        Polynomial r;
        for (auto& [mm, c] : t) r.t.emplace(m * mm, c);
        return r;
    }

    // Formal partial derivative.
    Polynomial partial(Var v) const {
        Polynomial r;
        int vi = static_cast<int>(v);
        for (auto& [m, c] : t) {
            uint32_t k = m.e[vi];
            if (k == 0) continue;
            Mono d = m;
            d.e[vi] = k - 1;
            r.add_term(d, c * C(static_cast<long>(k)));
        }
        return r;
    }

    bool operator==(const Polynomial& o) const { return t == o.t; }
    bool operator!=(const Polynomial& o) const { return t != o.t; }
};

using PolyQ = Polynomial<Rat>;   // plain rational coefficients
using PolyS = Polynomial<CoeffPoly>;  // symbolic coefficients

// -- conversions ----------------------------------------------------------

PolyS lift(const PolyQ& p);
// Fails (nullopt) if any coefficient still carries symbols.
std::optional<PolyQ> drop_syms(const PolyS& p);

// -- PolyQ-only algebra (module arith) ------------------------------------

// Greatest common divisor, normalized so the leading coefficient is 1.
// gcd(a, 0) = normalized a; gcd(0, 0) = 0.
PolyQ poly_gcd(const PolyQ& a, const PolyQ& b);

// True iff b = a * h exactly; h returned through quot when non-null.
bool poly_divides(const PolyQ& a, const PolyQ& b, PolyQ* quot = nullptr);

// Divide every coefficient by the rational content and normalize the sign
// of the leading coefficient to +1; zero stays zero.
PolyQ poly_primitive(const PolyQ& a);

// Rendering in the global monomial order (descending).
std::string poly_str(const PolyQ& p);
std::string poly_str(const PolyS& p);

// Evaluate at exact rational points (params via their interned code).
Rat poly_eval(const PolyQ& p, const Rat& x, const Rat& y, const Rat& z);
Rat poly_eval(const PolyS& p, const Rat& x, const Rat& y, const Rat& z,
              const std::map<uint32_t, Rat>& symvals);

}  // namespace symseek
