#include "symseek/ode.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace symseek {

namespace {

// recursive-descent parser over the shared expression grammar
class Parser {
  public:
    Parser(const std::string& s, std::set<std::string>* params)
        : s_(s), params_(params) {}

    FracS parse_full() {
        FracS v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return v;
    }

    // for "y'' = <expr>"
    FracS parse_ode_text() {
        skip_ws();
        if (!eat('y') || !eat('\'') || !eat('\''))
            throw SyntaxError("expected y''", pos_);
        skip_ws();
        if (!eat('=')) throw SyntaxError("expected '='", pos_);
        FracS v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return v;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;
    std::set<std::string>* params_;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    // ASCII '-' or UTF-8 minus sign
    bool eat_minus() {
        skip_ws();
        if (eat('-')) return true;
        if (pos_ + 2 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xE2 &&
            static_cast<unsigned char>(s_[pos_ + 1]) == 0x88 &&
            static_cast<unsigned char>(s_[pos_ + 2]) == 0x92) {
            pos_ += 3;
            return true;
        }
        return false;
    }

    FracS expr() {
        FracS v = term();
        while (true) {
            skip_ws();
            if (eat('+')) {
                v = v + term();
            } else if (eat_minus()) {
                v = v - term();
            } else {
                return v;
            }
        }
    }

    FracS term() {
        FracS v = unary();
        while (true) {
            skip_ws();
            if (eat('*')) {
                v = v * unary();
            } else if (eat('/')) {
                FracS d = unary();
                if (d.num.is_zero()) throw ZeroDenominator();
                v = v / d;
            } else {
                return v;
            }
        }
    }

    FracS unary() {
        skip_ws();
        if (eat('+')) return unary();
        if (eat_minus()) return -unary();
        return power();
    }

    FracS power() {
        FracS base = atom();
        skip_ws();
        if (!eat('^')) return base;
        long e = exponent();
        FracS r(Rat(1));
        for (long i = 0; i < e; ++i) r = r * base;
        return r;
    }

    long exponent() {
        skip_ws();
        bool paren = eat('(');
        skip_ws();
        if (eat_minus()) throw SyntaxError("negative exponent not allowed", pos_);
        size_t start = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw SyntaxError("expected integer exponent", pos_);
        long e = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            e = e * 10 + (s_[pos_] - '0');
            if (e > 1000) throw SyntaxError("exponent too large", start);
            ++pos_;
        }
        if (paren) {
            skip_ws();
            if (!eat(')')) throw SyntaxError("expected ')' after exponent", pos_);
        }
        return e;
    }

    FracS atom() {
        skip_ws();
        size_t start = pos_;
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            FracS v = expr();
            skip_ws();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                digits += s_[pos_++];
            return FracS(Rat(rat_from_string(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                name += s_[pos_++];
            if (name == "y" && pos_ < s_.size() && s_[pos_] == '\'') {
                ++pos_;
                return FracS(lift(PolyQ::variable(Var::Z)), lift(PolyQ(Rat(1))));
            }
            if (pos_ < s_.size() && s_[pos_] == '(')
                throw NotRational("function call '" + name + "(...)' is not rational");
            if (name == "x") return FracS(lift(PolyQ::variable(Var::X)), lift(PolyQ(Rat(1))));
            if (name == "y") return FracS(lift(PolyQ::variable(Var::Y)), lift(PolyQ(Rat(1))));
            if (name == "z") return FracS(lift(PolyQ::variable(Var::Z)), lift(PolyQ(Rat(1))));
            if (params_) params_->insert(name);
            CoeffPoly cp = CoeffPoly::term(SymMono::var(Sym::param(name), 1), Rat(1));
            PolyS p;
            p.t.emplace(Mono::one(), cp);
            return FracS(p, lift(PolyQ(Rat(1))));
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
};

Rat rational_content(const PolyS& p) {
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : p.t)
        for (auto& [sm, r] : c.t) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), r.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.get_den().get_mpz_t());
        }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

Rat lead_sign_rat(const PolyS& p) {
    return Rat(sgn(p.lead().second.lead().second) < 0 ? -1 : 1);
}

}  // namespace

FracS parse_expression(const std::string& text, std::set<std::string>* params) {
    return Parser(text, params).parse_full();
}

Ode2 make_ode(const FracS& f, const std::set<std::string>& params) {
    if (f.den.is_zero()) throw ZeroDenominator();
    Ode2 ode;
    ode.params.assign(params.begin(), params.end());
    if (f.num.is_zero()) {
        ode.M = PolyS();
        ode.N = lift(PolyQ(Rat(1)));
        return ode;
    }
    auto n = drop_syms(f.num);
    auto d = drop_syms(f.den);
    if (n && d) {
        RatFun r = ratfun_normalize(*n, *d);
        ode.M = lift(r.num);
        ode.N = lift(r.den);
    } else {
        Rat c = rational_content(f.den) * lead_sign_rat(f.den);
        Rat inv = Rat(1) / c;
        ode.M = f.num.scaled(CoeffPoly(inv));
        ode.N = f.den.scaled(CoeffPoly(inv));
        // also strip the residual shared rational content of M
        // (keeps e.g. (2x)/(2) out of canonical form)
        Rat cm = rational_content(ode.M);
        Rat cn = rational_content(ode.N);
        Int g;
        mpz_gcd(g.get_mpz_t(), cm.get_num().get_mpz_t(), cn.get_num().get_mpz_t());
        Int l;
        mpz_lcm(l.get_mpz_t(), cm.get_den().get_mpz_t(), cn.get_den().get_mpz_t());
        Rat shared(g, l);
        shared.canonicalize();
        if (!rat_is_zero(shared) && shared != 1) {
            Rat si = Rat(1) / shared;
            ode.M = ode.M.scaled(CoeffPoly(si));
            ode.N = ode.N.scaled(CoeffPoly(si));
        }
    }
    return ode;
}

Ode2 parse_ode(const std::string& text) {
    std::set<std::string> params;
    FracS f = Parser(text, &params).parse_ode_text();
    return make_ode(f, params);
}

std::string render(const Ode2& ode) {
    std::string m = poly_str(ode.M);
    if (ode.N == lift(PolyQ(Rat(1)))) return "y'' = (" + m + ")";
    return "y'' = (" + m + ")/(" + poly_str(ode.N) + ")";
}

FracS frac_partial(const FracS& f, Var v) {
    // d(n/d) = (n' d - n d')/d^2
    return FracS(f.num.partial(v) * f.den - f.num * f.den.partial(v), f.den * f.den);
}

FracS apply_Dx(const FracS& f, const Ode2& ode) {
    FracS z(lift(PolyQ::variable(Var::Z)), lift(PolyQ(Rat(1))));
    FracS r = frac_partial(f, Var::X) + z * frac_partial(f, Var::Y) +
              ode.phi() * frac_partial(f, Var::Z);
    return r.reduced();
}

RatFun apply_Dx(const RatFun& f, const Ode2& ode) {
    return apply_Dx(FracS::from(f), ode).to_ratfun();
}

DegreeReport degree_report(const Ode2& ode) {
    DegreeReport r;
    r.deg_M = ode.M.deg();
    r.deg_N = ode.N.deg();
    if (r.deg_M <= r.deg_N + 1) {
        r.kind = BoundKind::Balanced;
        r.offset = 0;
    } else {
        r.kind = BoundKind::Excess;
        r.offset = r.deg_M - r.deg_N - 1;
    }
    return r;
}

std::string ode_to_json(const Ode2& ode) {
    nlohmann::json j;
    j["M"] = poly_str(ode.M);
    j["N"] = poly_str(ode.N);
    j["params"] = ode.params;
    return j.dump();
}

Ode2 ode_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::set<std::string> params;
    FracS m = parse_expression(j.at("M").get<std::string>(), &params);
    FracS n = parse_expression(j.at("N").get<std::string>(), &params);
    for (auto& p : j.value("params", std::vector<std::string>{})) params.insert(p);
    return make_ode(m / n, params);
}

}  // namespace symseek
