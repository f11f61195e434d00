#include <cassert>
#include <stdexcept>
#include <vector>

#include "symseek/poly.hpp"

// Multivariate GCD over the rationals: clear denominators, then recursive
// content / primitive-part reduction with a subresultant PRS in the
// innermost variable.  Degrees in this problem stay small (<= ~7), so the
// classic scheme is entirely adequate.

namespace symseek {
namespace {

// Dense recursive integer polynomial.  level 0..2 = variable (x, y, z);
// level 3 = integer constant.
struct RP {
    int level = 3;
    Int val = 0;                // level == 3
    std::vector<RP> coef;       // level < 3, coef[k] is at level+1

    bool is_zero() const {
        if (level == 3) return sgn(val) == 0;
        return coef.empty();
    }
    int degree() const { return level == 3 ? 0 : static_cast<int>(coef.size()) - 1; }
    void trim() {
        while (!coef.empty() && coef.back().is_zero()) coef.pop_back();
    }
};

RP rp_const(int level, const Int& v) {
    RP r;
    if (level == 3) {
        r.level = 3;
        r.val = v;
        return r;
    }
    r.level = level;
    if (sgn(v) != 0) r.coef.push_back(rp_const(level + 1, v));
    return r;
}

RP rp_zero(int level) {
    RP r;
    r.level = level;
    return r;
}

// lift a level-(l+1) value to level l (degree 0)
RP rp_lift(int level, const RP& inner) {
    RP r;
    r.level = level;
    if (!inner.is_zero()) r.coef.push_back(inner);
    return r;
}

RP rp_add(const RP& a, const RP& b);
RP rp_neg(const RP& a) {
    RP r = a;
    if (r.level == 3) {
        r.val = -r.val;
    } else {
        for (auto& c : r.coef) c = rp_neg(c);
    }
    return r;
}

RP rp_add(const RP& a, const RP& b) {
    assert(a.level == b.level);
    if (a.level == 3) {
        RP r;
        r.level = 3;
        r.val = a.val + b.val;
        return r;
    }
    RP r;
    r.level = a.level;
    size_t n = std::max(a.coef.size(), b.coef.size());
    for (size_t i = 0; i < n; ++i) {
        if (i < a.coef.size() && i < b.coef.size())
            r.coef.push_back(rp_add(a.coef[i], b.coef[i]));
        else if (i < a.coef.size())
            r.coef.push_back(a.coef[i]);
        else
            r.coef.push_back(b.coef[i]);
    }
    r.trim();
    return r;
}

RP rp_sub(const RP& a, const RP& b) { return rp_add(a, rp_neg(b)); }

RP rp_mul(const RP& a, const RP& b) {
    assert(a.level == b.level);
    if (a.level == 3) {
        RP r;
        r.level = 3;
        r.val = a.val * b.val;
        return r;
    }
    RP r;
    r.level = a.level;
    if (a.coef.empty() || b.coef.empty()) return r;
    r.coef.assign(a.coef.size() + b.coef.size() - 1, rp_zero(a.level + 1));
    for (size_t i = 0; i < a.coef.size(); ++i)
        for (size_t j = 0; j < b.coef.size(); ++j)
            r.coef[i + j] = rp_add(r.coef[i + j], rp_mul(a.coef[i], b.coef[j]));
    r.trim();
    return r;
}

RP rp_pow(const RP& a, int k) {
    RP r = rp_const(a.level, 1);
    for (int i = 0; i < k; ++i) r = rp_mul(r, a);
    return r;
}

// exact division; returns false if not exact
bool rp_divexact(const RP& a, const RP& b, RP& out) {
    assert(a.level == b.level);
    if (b.is_zero()) return false;
    if (a.level == 3) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.val.get_mpz_t(), b.val.get_mpz_t());
        if (sgn(r) != 0) return false;
        out.level = 3;
        out.val = q;
        out.coef.clear();
        return true;
    }
    RP rem = a;
    RP quot = rp_zero(a.level);
    quot.coef.assign(a.coef.size(), rp_zero(a.level + 1));
    while (!rem.is_zero()) {
        int d = rem.degree() - b.degree();
        if (d < 0) return false;
        RP qc;
        if (!rp_divexact(rem.coef.back(), b.coef.back(), qc)) return false;
        // rem -= qc * X^d * b
        RP t = rp_zero(a.level);
        t.coef.assign(d + 1, rp_zero(a.level + 1));
        t.coef[d] = qc;
        quot.coef[d] = rp_add(quot.coef[d], qc);
        rem = rp_sub(rem, rp_mul(t, b));
    }
    quot.trim();
    out = quot;
    return true;
}

RP rp_gcd(const RP& a, const RP& b);

// gcd of all coefficients (a value one level deeper)
RP rp_content(const RP& a) {
    assert(a.level < 3);
    RP g = rp_zero(a.level + 1);
    for (auto& c : a.coef) g = rp_gcd(g, c);
    return g;
}

// pseudo-remainder of a by b in the top variable, scaled by the full
// lb^(deg a - deg b + 1) so the subresultant divisions stay exact
RP rp_prem(RP a, const RP& b) {
    int db = b.degree();
    const RP& lb = b.coef.back();
    int e = a.degree() - db + 1;
    while (!a.is_zero() && a.degree() >= db) {
        --e;
        int d = a.degree() - db;
        RP la = a.coef.back();
        // a = a*lb - la * X^d * b
        RP scaled = rp_zero(a.level);
        scaled.coef.assign(a.coef.size(), rp_zero(a.level + 1));
        for (size_t i = 0; i < a.coef.size(); ++i)
            scaled.coef[i] = rp_mul(a.coef[i], lb);
        RP t = rp_zero(a.level);
        t.coef.assign(d + 1, rp_zero(a.level + 1));
        t.coef[d] = la;
        a = rp_sub(scaled, rp_mul(t, b));
        a.trim();
    }
    while (e-- > 0) {
        for (auto& c : a.coef) c = rp_mul(c, lb);
    }
    return a;
}

RP rp_abs(const RP& a) {
    if (a.level == 3) {
        RP r = a;
        r.val = abs(r.val);
        return r;
    }
    // flip sign so the leading (innermost leading) coefficient is positive
    const RP* p = &a;
    while (p->level < 3) {
        if (p->coef.empty()) return a;
        p = &p->coef.back();
    }
    return sgn(p->val) < 0 ? rp_neg(a) : a;
}

RP rp_gcd(const RP& a, const RP& b) {
    assert(a.level == b.level);
    if (a.is_zero()) return rp_abs(b);
    if (b.is_zero()) return rp_abs(a);
    if (a.level == 3) {
        RP r;
        r.level = 3;
        mpz_gcd(r.val.get_mpz_t(), a.val.get_mpz_t(), b.val.get_mpz_t());
        return r;
    }
    RP ca = rp_content(a), cb = rp_content(b);
    RP ppa, ppb;
    if (!rp_divexact(a, rp_lift(a.level, ca), ppa) ||
        !rp_divexact(b, rp_lift(b.level, cb), ppb))
        throw std::logic_error("content division failed");
    RP d = rp_gcd(ca, cb);

    RP u = ppa, v = ppb;
    if (u.degree() < v.degree()) std::swap(u, v);
    // subresultant PRS
    RP g = rp_const(a.level + 1, 1), h = rp_const(a.level + 1, 1);
    while (true) {
        int delta = u.degree() - v.degree();
        RP rem = rp_prem(u, v);
        if (rem.is_zero()) break;
        if (rem.degree() == 0) {
            // gcd of primitive parts is a content-level value; pp is 1
            v = rp_const(a.level, 1);
            break;
        }
        RP divisor = rp_lift(a.level, rp_mul(g, rp_pow(h, delta)));
        RP next;
        if (!rp_divexact(rem, divisor, next))
            throw std::logic_error("subresultant division failed");
        u = v;
        v = next;
        g = u.coef.back();
        if (delta == 0) {
            // h unchanged
        } else {
            RP gd = rp_pow(g, delta);
            if (delta == 1) {
                h = gd;
            } else {
                RP hh;
                if (!rp_divexact(gd, rp_pow(h, delta - 1), hh))
                    throw std::logic_error("h update failed");
                h = hh;
            }
        }
    }
    // primitive part of v times d
    RP cv = rp_content(v);
    RP ppv;
    if (!rp_divexact(v, rp_lift(a.level, cv), ppv))
        throw std::logic_error("pp division failed");
    return rp_abs(rp_mul(ppv, rp_lift(a.level, d)));
}

// ---- conversions ---------------------------------------------------------

RP to_rp(const PolyQ& p) {
    // clear denominators first
    Int den_lcm = 1;
    for (auto& [m, c] : p.t)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    RP r = rp_zero(0);
    for (auto& [m, c] : p.t) {
        Int ic = c.get_num() * (den_lcm / c.get_den());
        // build monomial as nested dense poly
        RP term = rp_const(3, ic);
        for (int lvl = 2; lvl >= 0; --lvl) {
            RP up = rp_zero(lvl);
            up.coef.assign(m.e[lvl] + 1, rp_zero(lvl + 1));
            up.coef[m.e[lvl]] = term;
            up.trim();
            term = up;
        }
        r = rp_add(r, term);
    }
    return r;
}

void from_rp(const RP& p, Mono m, int lvl, PolyQ& out) {
    if (p.level == 3) {
        if (sgn(p.val) != 0) out.add_term(m, Rat(p.val));
        return;
    }
    for (size_t k = 0; k < p.coef.size(); ++k) {
        Mono mm = m;
        mm.e[lvl] = static_cast<uint32_t>(k);
        from_rp(p.coef[k], mm, lvl + 1, out);
    }
}

}  // namespace

PolyQ poly_gcd(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() && b.is_zero()) return PolyQ();
    PolyQ g;
    if (a.is_zero()) {
        g = b;
    } else if (b.is_zero()) {
        g = a;
    } else {
        RP ra = to_rp(a), rb = to_rp(b);
        PolyQ out;
        from_rp(rp_gcd(ra, rb), Mono::one(), 0, out);
        g = out;
    }
    // canonical leading coefficient +1
    if (g.is_zero()) return g;
    Rat lc = g.lead().second;
    PolyQ r;
    for (auto& [m, c] : g.t) r.t.emplace(m, Rat(c / lc));
    return r;
}

bool poly_divides(const PolyQ& a, const PolyQ& b, PolyQ* quot) {
    if (a.is_zero()) throw std::invalid_argument("division by zero polynomial");
    PolyQ rem = b, q;
    const auto& [lm, lc] = a.lead();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.lead();
        if (!lm.divides(rm)) return false;
        Mono qm = lm.quotient_into(rm);
        Rat qc = rc / lc;
        q.add_term(qm, qc);
        rem -= a.mul_mono(qm).scaled(qc);
    }
    if (quot) *quot = q;
    return true;
}

}  // namespace symseek
