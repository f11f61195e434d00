#include "symseek/coeffpoly.hpp"

#include <algorithm>

namespace symseek {

uint32_t SymMono::deg() const {
    uint32_t d = 0;
    for (auto& [s, k] : f) d += k;
    return d;
}

uint32_t SymMono::deg_of(Sym s) const {
    for (auto& [c, k] : f)
        if (c == s.code) return k;
    return 0;
}

SymMono SymMono::operator*(const SymMono& o) const {
    SymMono r;
    size_t i = 0, j = 0;
    while (i < f.size() || j < o.f.size()) {
        if (j == o.f.size() || (i < f.size() && f[i].first < o.f[j].first)) {
            r.f.push_back(f[i++]);
        } else if (i == f.size() || o.f[j].first < f[i].first) {
            r.f.push_back(o.f[j++]);
        } else {
            r.f.emplace_back(f[i].first, f[i].second + o.f[j].second);
            ++i, ++j;
        }
    }
    return r;
}

bool SymMono::divides(const SymMono& o) const {
    size_t j = 0;
    for (auto& [s, k] : f) {
        while (j < o.f.size() && o.f[j].first < s) ++j;
        if (j == o.f.size() || o.f[j].first != s || o.f[j].second < k) return false;
    }
    return true;
}

SymMono SymMono::quotient_into(const SymMono& o) const {
    SymMono r;
    size_t i = 0;
    for (auto& [s, k] : o.f) {
        uint32_t sub = 0;
        while (i < f.size() && f[i].first < s) ++i;
        if (i < f.size() && f[i].first == s) sub = f[i].second;
        if (k > sub) r.f.emplace_back(s, k - sub);
    }
    return r;
}

SymMono SymMono::lcm(const SymMono& o) const {
    SymMono r;
    size_t i = 0, j = 0;
    while (i < f.size() || j < o.f.size()) {
        if (j == o.f.size() || (i < f.size() && f[i].first < o.f[j].first)) {
            r.f.push_back(f[i++]);
        } else if (i == f.size() || o.f[j].first < f[i].first) {
            r.f.push_back(o.f[j++]);
        } else {
            r.f.emplace_back(f[i].first, std::max(f[i].second, o.f[j].second));
            ++i, ++j;
        }
    }
    return r;
}

SymMono SymMono::pow(uint32_t k) const {
    SymMono r;
    if (k == 0) return r;
    r = *this;
    for (auto& [s, e] : r.f) e *= k;
    return r;
}

bool SymMono::operator<(const SymMono& o) const {
    uint32_t da = deg(), db = o.deg();
    if (da != db) return da < db;
    // lex on (code asc): larger exponent on a smaller code wins
    size_t i = 0, j = 0;
    while (i < f.size() && j < o.f.size()) {
        if (f[i].first != o.f[j].first) return f[i].first > o.f[j].first;
        if (f[i].second != o.f[j].second) return f[i].second < o.f[j].second;
        ++i, ++j;
    }
    return i == f.size() && j != o.f.size();
}

std::string SymMono::str() const {
    std::string s;
    for (auto& [c, k] : f) {
        if (!s.empty()) s += "*";
        s += Sym{c}.name();
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------

bool CoeffPoly::params_only() const {
    for (auto& [m, c] : t)
        for (auto& [sc, k] : m.f)
            if (Sym{sc}.kind() != SymKind::Param) return false;
    return true;
}

uint32_t CoeffPoly::deg() const {
    uint32_t d = 0;
    for (auto& [m, c] : t) d = std::max(d, m.deg());
    return d;
}

uint32_t CoeffPoly::deg_of(Sym s) const {
    uint32_t d = 0;
    for (auto& [m, c] : t) d = std::max(d, m.deg_of(s));
    return d;
}

std::set<Sym> CoeffPoly::syms() const {
    std::set<Sym> r;
    for (auto& [m, c] : t)
        for (auto& [sc, k] : m.f) r.insert(Sym{sc});
    return r;
}

void CoeffPoly::add_term(const SymMono& m, const Rat& c) {
    if (rat_is_zero(c)) return;
    auto it = t.find(m);
    if (it == t.end()) {
        t.emplace(m, c);
    } else {
        it->second += c;
        if (rat_is_zero(it->second)) t.erase(it);
    }
}

CoeffPoly CoeffPoly::operator-() const {
    CoeffPoly r;
    for (auto& [m, c] : t) r.t.emplace(m, -c);
    return r;
}

CoeffPoly CoeffPoly::operator+(const CoeffPoly& o) const {
    CoeffPoly r = *this;
    for (auto& [m, c] : o.t) r.add_term(m, c);
    return r;
}

CoeffPoly CoeffPoly::operator-(const CoeffPoly& o) const {
    CoeffPoly r = *this;
    for (auto& [m, c] : o.t) r.add_term(m, -c);
    return r;
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& o) {
    for (auto& [m, c] : o.t) add_term(m, c);
    return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& o) {
    for (auto& [m, c] : o.t) add_term(m, -c);
    return *this;
}

CoeffPoly CoeffPoly::operator*(const CoeffPoly& o) const {
    CoeffPoly r;
    for (auto& [m1, c1] : t)
        for (auto& [m2, c2] : o.t) r.add_term(m1 * m2, c1 * c2);
    return r;
}

CoeffPoly CoeffPoly::operator*(const Rat& c) const {
    CoeffPoly r;
    if (rat_is_zero(c)) return r;
    for (auto& [m, k] : t) r.t.emplace(m, k * c);
    return r;
}

std::vector<CoeffPoly> CoeffPoly::by_powers_of(Sym s) const {
    std::vector<CoeffPoly> out(deg_of(s) + 1);
    for (auto& [m, c] : t) {
        uint32_t k = m.deg_of(s);
        SymMono rest = SymMono::var(s, k).quotient_into(m);
        out[k].add_term(rest, c);
    }
    return out;
}

CoeffPoly CoeffPoly::substituted(Sym s, const CoeffPoly& num, const CoeffPoly& den) const {
    auto parts = by_powers_of(s);
    uint32_t k = static_cast<uint32_t>(parts.size()) - 1;
    // sum parts[i] * num^i * den^(k-i)
    std::vector<CoeffPoly> npow(k + 1), dpow(k + 1);
    npow[0] = CoeffPoly(Rat(1));
    dpow[0] = CoeffPoly(Rat(1));
    for (uint32_t i = 1; i <= k; ++i) {
        npow[i] = npow[i - 1] * num;
        dpow[i] = dpow[i - 1] * den;
    }
    CoeffPoly r;
    for (uint32_t i = 0; i <= k; ++i) {
        if (parts[i].is_zero()) continue;
        r += parts[i] * npow[i] * dpow[k - i];
    }
    return r;
}

CoeffPoly CoeffPoly::normalized() const {
    if (t.empty()) return {};
    // content = gcd of numerators / lcm of denominators, sign from lead
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : t) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                c.get_den().get_mpz_t());
    }
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(lead().second) < 0) content = -content;
    CoeffPoly r;
    for (auto& [m, c] : t) r.t.emplace(m, Rat(c / content));
    return r;
}

Rat CoeffPoly::eval(const std::map<uint32_t, Rat>& vals) const {
    Rat acc(0);
    for (auto& [m, c] : t) {
        Rat v = c;
        for (auto& [sc, k] : m.f) {
            auto it = vals.find(sc);
            Rat base = (it == vals.end()) ? Rat(0) : it->second;
            for (uint32_t i = 0; i < k; ++i) v *= base;
        }
        acc += v;
    }
    return acc;
}

std::optional<CoeffPoly> CoeffPoly::sqrt_exact() const {
    if (is_zero()) return CoeffPoly();
    auto& [lm, lc] = lead();
    auto sc = rat_sqrt(lc);
    if (!sc) return std::nullopt;
    bool even = true;
    for (auto& [s, k] : lm.f) even = even && (k % 2 == 0);
    if (!even) return std::nullopt;
    SymMono half;
    for (auto& [s, k] : lm.f) half.f.emplace_back(s, k / 2);
    CoeffPoly root = CoeffPoly::term(half, *sc);
    // refine from the leading term down; each correction must be a
    // strictly smaller monomial than the root's lead
    for (int guard = 0; guard < 4096; ++guard) {
        CoeffPoly rem = *this - root * root;
        if (rem.is_zero()) return root;
        auto& [rm, rc] = rem.lead();
        // next correction t satisfies 2*lead(root)*t = lead(rem)
        if (!half.divides(rm)) return std::nullopt;
        SymMono tm = half.quotient_into(rm);
        if (!(tm < half)) return std::nullopt;
        root.add_term(tm, rc / (Rat(2) * *sc));
    }
    return std::nullopt;
}

std::string CoeffPoly::str() const {
    if (t.empty()) return "0";
    std::string s;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const Rat& c = it->second;
        bool neg = sgn(c) < 0;
        Rat ac = abs(c);
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        std::string cs = rat_to_string(ac);
        if (it->first.is_one()) {
            s += cs;
        } else if (ac == 1) {
            s += it->first.str();
        } else {
            s += cs + "*" + it->first.str();
        }
    }
    return s;
}

}  // namespace symseek
