#include "symseek/ratfun.hpp"

namespace symseek {

RatFun ratfun_normalize(const PolyQ& num, const PolyQ& den) {
    if (den.is_zero()) throw ZeroDenominator();
    if (num.is_zero()) {
        RatFun r;
        r.num = PolyQ();
        r.den = PolyQ(Rat(1));
        return r;
    }
    PolyQ g = poly_gcd(num, den);
    PolyQ n, d;
    poly_divides(g, num, &n);
    poly_divides(g, den, &d);
    Rat lc = d.lead().second;
    RatFun r;
    r.num = n.scaled(Rat(1) / lc);
    r.den = d.scaled(Rat(1) / lc);
    return r;
}

RatFun::RatFun(PolyQ n, PolyQ d) { *this = ratfun_normalize(n, d); }

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num = -r.num;
    return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
    return ratfun_normalize(num * o.den + o.num * den, den * o.den);
}

RatFun RatFun::operator-(const RatFun& o) const {
    return ratfun_normalize(num * o.den - o.num * den, den * o.den);
}

RatFun RatFun::operator*(const RatFun& o) const {
    return ratfun_normalize(num * o.num, den * o.den);
}

RatFun RatFun::operator/(const RatFun& o) const {
    return ratfun_normalize(num * o.den, den * o.num);
}

std::string RatFun::str() const {
    if (num.is_zero()) return "0";
    if (den == PolyQ(Rat(1))) {
        if (num.nterms() == 1) return poly_str(num);
        return "(" + poly_str(num) + ")";
    }
    std::string ns = num.nterms() == 1 ? poly_str(num) : "(" + poly_str(num) + ")";
    std::string ds = den.nterms() == 1 ? poly_str(den) : "(" + poly_str(den) + ")";
    return ns + "/" + ds;
}

// ---------------------------------------------------------------------------

FracS::FracS(PolyS n, PolyS d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw ZeroDenominator();
}

FracS FracS::operator-() const {
    FracS r = *this;
    r.num = -r.num;
    return r;
}

FracS FracS::operator+(const FracS& o) const {
    return FracS(num * o.den + o.num * den, den * o.den);
}

FracS FracS::operator-(const FracS& o) const {
    return FracS(num * o.den - o.num * den, den * o.den);
}

FracS FracS::operator*(const FracS& o) const {
    return FracS(num * o.num, den * o.den);
}

FracS FracS::operator/(const FracS& o) const {
    if (o.num.is_zero()) throw ZeroDenominator();
    return FracS(num * o.den, den * o.num);
}

bool FracS::equals(const FracS& o) const {
    return (num * o.den - o.num * den).is_zero();
}

FracS FracS::reduced() const {
    auto n = drop_syms(num);
    auto d = drop_syms(den);
    if (n && d) {
        RatFun r = ratfun_normalize(*n, *d);
        return FracS(lift(r.num), lift(r.den));
    }
    if (num.is_zero()) return FracS(PolyS(), lift(PolyQ(Rat(1))));
    // symbolic coefficients: only a shared rational content may be stripped,
    // anything one-sided would change the value of the fraction
    Int num_gcd = 0, den_lcm = 1;
    for (auto* p : {&num, &den})
        for (auto& [m, c] : p->t)
            for (auto& [sm, r] : c.t) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                        r.get_num().get_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                        r.get_den().get_mpz_t());
            }
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    Rat inv = Rat(1) / content;
    PolyS sn, sd;
    for (auto& [m, c] : num.t) sn.t.emplace(m, c * inv);
    for (auto& [m, c] : den.t) sd.t.emplace(m, c * inv);
    return FracS(std::move(sn), std::move(sd));
}

RatFun FracS::to_ratfun() const {
    auto n = drop_syms(num);
    auto d = drop_syms(den);
    if (!n || !d)
        throw std::logic_error("fraction still carries symbolic coefficients");
    return ratfun_normalize(*n, *d);
}

std::string FracS::str() const {
    if (num.is_zero()) return "0";
    std::string ns = num.nterms() == 1 ? poly_str(num) : "(" + poly_str(num) + ")";
    if (den == lift(PolyQ(Rat(1)))) return ns;
    std::string ds = den.nterms() == 1 ? poly_str(den) : "(" + poly_str(den) + ")";
    return ns + "/" + ds;
}

}  // namespace symseek
