#include "symseek/poly.hpp"

namespace symseek {

PolyS lift(const PolyQ& p) {
    PolyS r;
    for (auto& [m, c] : p.t) r.t.emplace(m, CoeffPoly(c));
    return r;
}

std::optional<PolyQ> drop_syms(const PolyS& p) {
    PolyQ r;
    for (auto& [m, c] : p.t) {
        if (!c.is_constant()) return std::nullopt;
        r.t.emplace(m, c.constant_value());
    }
    return r;
}

PolyQ poly_primitive(const PolyQ& a) {
    if (a.is_zero()) return a;
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : a.t) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(a.lead().second) < 0) content = -content;
    PolyQ r;
    for (auto& [m, c] : a.t) r.t.emplace(m, Rat(c / content));
    return r;
}

std::string poly_str(const PolyQ& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.t.rbegin(); it != p.t.rend(); ++it) {
        const Rat& c = it->second;
        bool neg = sgn(c) < 0;
        Rat ac = abs(c);
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        bool unit_mono = it->first == Mono::one();
        if (unit_mono) {
            s += rat_to_string(ac);
        } else if (ac == 1) {
            s += it->first.str();
        } else {
            s += rat_to_string(ac) + "*" + it->first.str();
        }
    }
    return s;
}

std::string poly_str(const PolyS& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.t.rbegin(); it != p.t.rend(); ++it) {
        const CoeffPoly& c = it->second;
        bool unit_mono = it->first == Mono::one();
        // single-term coefficients carry their sign out front
        bool single = c.t.size() == 1;
        bool neg = single && sgn(c.t.begin()->second) < 0;
        std::string cs = neg ? (-c).str() : c.str();
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        if (unit_mono) {
            s += single ? cs : "(" + cs + ")";
        } else if (cs == "1") {
            s += it->first.str();
        } else {
            s += (single ? cs : "(" + cs + ")") + "*" + it->first.str();
        }
    }
    return s;
}

Rat poly_eval(const PolyQ& p, const Rat& x, const Rat& y, const Rat& z) {
    Rat acc(0);
    const Rat* v[3] = {&x, &y, &z};
    for (auto& [m, c] : p.t) {
        Rat t = c;
        for (int i = 0; i < 3; ++i)
            for (uint32_t k = 0; k < m.e[i]; ++k) t *= *v[i];
        acc += t;
    }
    return acc;
}

Rat poly_eval(const PolyS& p, const Rat& x, const Rat& y, const Rat& z,
              const std::map<uint32_t, Rat>& symvals) {
    Rat acc(0);
    const Rat* v[3] = {&x, &y, &z};
    for (auto& [m, c] : p.t) {
        Rat t = c.eval(symvals);
        for (int i = 0; i < 3; ++i)
            for (uint32_t k = 0; k < m.e[i]; ++k) t *= *v[i];
        acc += t;
    }
    return acc;
}

}  // namespace symseek
