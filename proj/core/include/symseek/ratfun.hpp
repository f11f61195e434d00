#pragma once

#include <stdexcept>
#include <string>

#include "symseek/poly.hpp"

namespace symseek {

struct ZeroDenominator : std::runtime_error {
    ZeroDenominator() : std::runtime_error("zero denominator") {}
};

// Coprime-normalized rational function over Rat coefficients.
// Canonical form: gcd(num, den) = 1 and the denominator is monic under
// grevlex, so equal rational functions compare equal term by term.
struct RatFun {
    PolyQ num;
    PolyQ den;

    RatFun() : den(PolyQ(Rat(1))) {}
    RatFun(PolyQ n, PolyQ d);  // normalizes
    explicit RatFun(const Rat& c) : RatFun(PolyQ(c), PolyQ(Rat(1))) {}

    bool is_zero() const { return num.is_zero(); }

    RatFun operator-() const;
    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;

    bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    std::string str() const;
};

RatFun ratfun_normalize(const PolyQ& num, const PolyQ& den);

// Fraction of symbolic-coefficient polynomials. Kept unreduced except for
// integer content (no parametric gcd); zero test and equality go through
// the numerator / cross-multiplication, which is exact.
struct FracS {
    PolyS num;
    PolyS den;

    FracS() : den(lift(PolyQ(Rat(1)))) {}
    FracS(PolyS n, PolyS d);
    explicit FracS(const Rat& c) : FracS(lift(PolyQ(c)), lift(PolyQ(Rat(1)))) {}
    static FracS from(const RatFun& f) { return FracS(lift(f.num), lift(f.den)); }

    bool is_zero() const { return num.is_zero(); }

    FracS operator-() const;
    FracS operator+(const FracS& o) const;
    FracS operator-(const FracS& o) const;
    FracS operator*(const FracS& o) const;
    FracS operator/(const FracS& o) const;

    // Equality as rational functions: num*o.den == o.num*den.
    bool equals(const FracS& o) const;

    // Reduce via PolyQ gcd when no symbols are present, otherwise strip
    // rational content from both sides.
    FracS reduced() const;
    // Requires no symbolic coefficients.
    RatFun to_ratfun() const;

    std::string str() const;
};

}  // namespace symseek
