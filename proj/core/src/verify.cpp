#include "symseek/verify.hpp"

#include <random>

namespace symseek {

namespace {

// split on top-level '*' (paren depth 0)
std::vector<std::string> split_product(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '*' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

Rat parse_rat_literal(std::string s) {
    s = trim(s);
    if (!s.empty() && s.front() == '(' && s.back() == ')')
        s = trim(s.substr(1, s.size() - 2));
    if (s.empty()) throw NotDarbouxRepresentable("empty exponent");
    return rat_from_string(s);
}

// find the top-level '^' separating base from exponent (rightmost)
size_t find_top_caret(const std::string& s) {
    int depth = 0;
    for (size_t i = s.size(); i-- > 0;) {
        if (s[i] == ')') ++depth;
        if (s[i] == '(') --depth;
        if (s[i] == '^' && depth == 0) return i;
    }
    return std::string::npos;
}

}  // namespace

DarbouxFunction parse_darboux(const std::string& text, std::set<std::string>* params) {
    DarbouxFunction F;
    F.R = FracS(Rat(0));
    for (auto& piece_raw : split_product(text)) {
        std::string piece = trim(piece_raw);
        if (piece.empty()) throw NotDarbouxRepresentable("empty factor");
        if (piece.rfind("exp", 0) == 0) {
            std::string rest = trim(piece.substr(3));
            if (rest.empty() || rest.front() != '(' || rest.back() != ')')
                throw NotDarbouxRepresentable("malformed exp factor");
            F.R = F.R + parse_expression(rest.substr(1, rest.size() - 2), params);
            continue;
        }
        Rat expo(1);
        std::string base = piece;
        size_t caret = find_top_caret(piece);
        if (caret != std::string::npos) {
            std::string es = piece.substr(caret + 1);
            // integer exponents on a variable inside the base are handled by
            // the expression parser; treat '^' as factor exponent only when
            // the base is parenthesized or the exponent is not plain digits
            std::string bs = trim(piece.substr(0, caret));
            std::string et = trim(es);
            bool plain_int = !et.empty() && et.find_first_not_of("0123456789") == std::string::npos;
            bool paren_base = !bs.empty() && bs.front() == '(' && bs.back() == ')';
            if (paren_base || !plain_int) {
                base = bs;
                expo = parse_rat_literal(et);
            }
        }
        FracS b = parse_expression(base, params);
        if (b.num.is_zero()) throw NotDarbouxRepresentable("zero factor");
        if (!(b.num == lift(PolyQ(Rat(1)))))
            F.factors.emplace_back(b.num, expo);
        if (!(b.den == lift(PolyQ(Rat(1)))))
            F.factors.emplace_back(b.den, -expo);
    }
    return F;
}

FracS logderiv(const DarbouxFunction& F, const Ode2& ode) {
    FracS acc = apply_Dx(F.R, ode);
    for (auto& [f, c] : F.factors) {
        FracS ff(f, lift(PolyQ(Rat(1))));
        FracS term = apply_Dx(ff, ode) / ff;
        acc = acc + FracS(term.num.scaled(CoeffPoly(c)), term.den);
        acc = acc.reduced();
    }
    return acc;
}

bool verify_sigma(const FracS& sigma, const Ode2& ode, FracS* residual) {
    // cleared-denominator form of D_x sigma - sigma^2 - phi_z sigma + phi_y
    // with sigma = p/q, phi = M/N: everything below is polynomial, no gcd
    const PolyS& p = sigma.num;
    const PolyS& q = sigma.den;
    const PolyS& M = ode.M;
    const PolyS& N = ode.N;
    PolyS z = lift(PolyQ::variable(Var::Z));
    auto ndx = [&](const PolyS& f) {  // N * D_x f, polynomial for polynomial f
        return N * (f.partial(Var::X) + z * f.partial(Var::Y)) +
               M * f.partial(Var::Z);
    };
    PolyS r = N * (q * ndx(p) - p * ndx(q)) - (N * N) * (p * p) -
              (M.partial(Var::Z) * N - M * N.partial(Var::Z)) * (p * q) +
              (M.partial(Var::Y) * N - M * N.partial(Var::Y)) * (q * q);
    if (residual) *residual = FracS(r, (N * N) * (q * q)).reduced();
    return r.is_zero();
}

bool verify_sigma(const RatFun& sigma, const Ode2& ode, RatFun* residual) {
    FracS r;
    bool ok = verify_sigma(FracS::from(sigma), ode, &r);
    if (residual) *residual = r.to_ratfun();
    return ok;
}

bool verify_nu(const DarbouxFunction& nu, const FracS& sigma, const Ode2& ode) {
    FracS ld = logderiv(nu, ode);
    return (ld + sigma).num.is_zero();
}

bool verify_first_integral(const DarbouxFunction& I, const Ode2& ode) {
    return logderiv(I, ode).num.is_zero();
}

FracS mu_log_derivative(const FracS& sigma, const Ode2& ode) {
    FracS r = -sigma - frac_partial(ode.phi(), Var::Z);
    return r.reduced();
}

bool numeric_spotcheck(const FracS& sigma, const Ode2& ode, int trials,
                       uint64_t seed) {
    FracS r;
    verify_sigma(sigma, ode, &r);
    if (r.num.is_zero()) return true;

    // collect every symbol (parameters) in play
    std::set<uint32_t> codes;
    for (auto& [m, c] : r.num.t)
        for (auto s : c.syms()) codes.insert(s.code);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dn(-1000000, 1000000);
    std::uniform_int_distribution<long> dd(1, 1000000);
    auto draw = [&] { return Rat(dn(rng), dd(rng)); };

    for (int t = 0; t < trials; ++t) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Rat x = draw(), y = draw(), z = draw();
            std::map<uint32_t, Rat> vals;
            for (auto c : codes) vals[c] = draw();
            if (rat_is_zero(poly_eval(r.den, x, y, z, vals))) continue;
            if (rat_is_zero(poly_eval(ode.N, x, y, z, vals))) continue;
            if (!rat_is_zero(poly_eval(r.num, x, y, z, vals))) return false;
            break;
        }
    }
    return true;
}

bool sigma_equal(const FracS& a, const FracS& b) { return a.equals(b); }

}  // namespace symseek
