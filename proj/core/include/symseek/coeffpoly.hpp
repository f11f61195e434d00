#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symseek/rat.hpp"
#include "symseek/symbols.hpp"

namespace symseek {

// Power product of undetermined symbols, sorted by symbol code.
struct SymMono {
    std::vector<std::pair<uint32_t, uint32_t>> f;  // (sym code, exponent)

    static SymMono one() { return {}; }
    static SymMono var(Sym s, uint32_t k = 1) { return SymMono{{{s.code, k}}}; }

    bool is_one() const { return f.empty(); }
    uint32_t deg() const;
    uint32_t deg_of(Sym s) const;
    bool contains(Sym s) const { return deg_of(s) > 0; }

    SymMono operator*(const SymMono& o) const;
    bool divides(const SymMono& o) const;
    SymMono quotient_into(const SymMono& o) const;  // o / *this
    SymMono lcm(const SymMono& o) const;
    SymMono pow(uint32_t k) const;

    bool operator==(const SymMono& o) const { return f == o.f; }
    bool operator!=(const SymMono& o) const { return f != o.f; }
    // deglex, lower symbol code = bigger variable
    bool operator<(const SymMono& o) const;

    std::string str() const;
};

// Polynomial in the undetermined symbols with exact rational coefficients.
// This is the coefficient ring of the determining identity and the element
// type of the algebraic systems AE.
struct CoeffPoly {
    std::map<SymMono, Rat> t;

    CoeffPoly() = default;
    explicit CoeffPoly(const Rat& c) {
        if (!rat_is_zero(c)) t.emplace(SymMono::one(), c);
    }
    explicit CoeffPoly(long c) : CoeffPoly(Rat(c)) {}
    static CoeffPoly var(Sym s) {
        CoeffPoly p;
        p.t.emplace(SymMono::var(s), Rat(1));
        return p;
    }
    static CoeffPoly term(const SymMono& m, const Rat& c) {
        CoeffPoly p;
        if (!rat_is_zero(c)) p.t.emplace(m, c);
        return p;
    }

    bool is_zero() const { return t.empty(); }
    bool is_constant() const {
        return t.empty() || (t.size() == 1 && t.begin()->first.is_one());
    }
    // Only meaningful when is_constant().
    Rat constant_value() const {
        return t.empty() ? Rat(0) : t.begin()->second;
    }
    // True when every symbol occurring is a Param.
    bool params_only() const;

    uint32_t deg() const;
    uint32_t deg_of(Sym s) const;
    bool contains(Sym s) const { return deg_of(s) > 0; }
    std::set<Sym> syms() const;

    void add_term(const SymMono& m, const Rat& c);

    CoeffPoly operator-() const;
    CoeffPoly operator+(const CoeffPoly& o) const;
    CoeffPoly operator-(const CoeffPoly& o) const;
    CoeffPoly operator*(const CoeffPoly& o) const;
    CoeffPoly& operator+=(const CoeffPoly& o);
    CoeffPoly& operator-=(const CoeffPoly& o);
    CoeffPoly operator*(const Rat& c) const;

    bool operator==(const CoeffPoly& o) const { return t == o.t; }
    bool operator!=(const CoeffPoly& o) const { return t != o.t; }
    bool operator<(const CoeffPoly& o) const { return t < o.t; }

    // Leading term under the storage order (deglex).
    const std::pair<const SymMono, Rat>& lead() const { return *t.rbegin(); }

    // Coefficients of this viewed as a univariate polynomial in s;
    // result[k] is the coefficient of s^k and does not contain s.
    std::vector<CoeffPoly> by_powers_of(Sym s) const;

    // Substitute s := num/den; returns the numerator after clearing den^k
    // where k = deg_of(s).  den must not contain s.
    CoeffPoly substituted(Sym s, const CoeffPoly& num, const CoeffPoly& den) const;

    // Divide by the rational content and make the leading coefficient
    // positive.  Canonical representative up to constant scaling.
    CoeffPoly normalized() const;

    // Evaluate given values for every symbol that occurs.
    Rat eval(const std::map<uint32_t, Rat>& vals) const;

    // Exact polynomial square root, if one exists.
    std::optional<CoeffPoly> sqrt_exact() const;

    std::string str() const;
};

}  // namespace symseek
