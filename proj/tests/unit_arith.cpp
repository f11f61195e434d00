#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "symseek/ode.hpp"

using namespace symseek;

namespace {

PolyQ P(const std::string& s) {
    FracS f = parse_expression(s);
    auto n = drop_syms(f.num);
    auto d = drop_syms(f.den);
    REQUIRE(n);
    REQUIRE(d);
    REQUIRE(d->nterms() == 1);
    REQUIRE(d->lead().first == Mono::one());
    return n->scaled(Rat(1) / d->lead().second);
}

PolyQ random_poly(std::mt19937_64& rng, int max_deg, int terms) {
    std::uniform_int_distribution<int> de(0, max_deg);
    std::uniform_int_distribution<long> dc(-6, 6);
    PolyQ p;
    for (int i = 0; i < terms; ++i) {
        Mono m = Mono::one();
        m.e[0] = de(rng);
        m.e[1] = de(rng);
        m.e[2] = de(rng);
        p.add_term(m, Rat(dc(rng)));
    }
    return p;
}

// naive term-by-term expansion, the multiplication oracle
PolyQ naive_mul(const PolyQ& a, const PolyQ& b) {
    PolyQ r;
    for (auto& [m1, c1] : a.t)
        for (auto& [m2, c2] : b.t) {
            Mono m = Mono::one();
            for (int i = 0; i < 3; ++i) m.e[i] = m1.e[i] + m2.e[i];
            r.add_term(m, c1 * c2);
        }
    return r;
}

}  // namespace

TEST_CASE("poly add/sub/mul basics") {
    CHECK(P("x*y + 1") + PolyQ() == P("x*y + 1"));
    CHECK(P("x + y") * P("x - y") == P("x^2 - y^2"));
    CHECK(P("x^2*y - 1") * P("x^2*y - 1") == P("x^4*y^2 - 2*x^2*y + 1"));
}

TEST_CASE("multiplication against the naive expansion oracle") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        PolyQ a = random_poly(rng, 3, 4);
        PolyQ b = random_poly(rng, 3, 4);
        CHECK(a * b == naive_mul(a, b));
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        PolyQ a = random_poly(rng, 3, 3);
        PolyQ b = random_poly(rng, 3, 3);
        PolyQ c = random_poly(rng, 3, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("formal partial derivatives") {
    CHECK(P("x^2*y - 1").partial(Var::Y) == P("x^2"));
    CHECK(P("z^3").partial(Var::Z) == P("3*z^2"));
    // Kamke 78 numerator -(y-1)*z has no x dependence
    CHECK(P("-(y-1)*z").partial(Var::X) == PolyQ());
}

TEST_CASE("partials commute") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        PolyQ p = random_poly(rng, 4, 5);
        for (Var u : {Var::X, Var::Y, Var::Z})
            for (Var v : {Var::X, Var::Y, Var::Z})
                CHECK(p.partial(u).partial(v) == p.partial(v).partial(u));
    }
}

TEST_CASE("gcd examples") {
    PolyQ g = P("x^2*y - 1");
    CHECK(poly_gcd(g, g) == g);
    CHECK(poly_gcd(P("x*(y-1)"), P("y*(y-1)")) == P("y - 1"));
    // gcd of 2xy(xz - y) and 2x^2y is xy up to normalization
    PolyQ got = poly_gcd(P("2*x*y*(x*z - y)"), P("2*x^2*y"));
    CHECK(got == P("x*y"));
}

TEST_CASE("gcd recovers a planted common factor") {
    // oracle: build a = g*a1, b = g*b1 from small factors found by trial
    // division, then gcd(a, b) must be divisible by g and divide both inputs
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        PolyQ g = random_poly(rng, 2, 3);
        PolyQ a1 = random_poly(rng, 2, 3);
        PolyQ b1 = random_poly(rng, 2, 3);
        if (g.is_zero() || a1.is_zero() || b1.is_zero()) continue;
        PolyQ a = g * a1, b = g * b1;
        PolyQ d = poly_gcd(a, b);
        REQUIRE(!d.is_zero());
        CHECK(poly_divides(d, a));
        CHECK(poly_divides(d, b));
        CHECK(poly_divides(g, d));
    }
}

TEST_CASE("gcd(a*g, b*g) is an associate of gcd(a,b)*g") {
    std::mt19937_64 rng(19);
    int done = 0;
    for (int i = 0; done < 50 && i < 500; ++i) {
        PolyQ a = random_poly(rng, 2, 3);
        PolyQ b = random_poly(rng, 2, 3);
        PolyQ g = random_poly(rng, 2, 2);
        if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
        if (poly_gcd(a, b) != PolyQ(Rat(1))) continue;  // want coprime a, b
        ++done;
        PolyQ lhs = poly_gcd(a * g, b * g);
        PolyQ rhs = poly_gcd(g, g);  // normalized g
        CHECK(lhs == rhs);
    }
    CHECK(done == 50);
}

TEST_CASE("poly_divides") {
    PolyQ q;
    CHECK(poly_divides(P("y-1"), P("y^2-1"), &q));
    CHECK(q == P("y+1"));
    CHECK(!poly_divides(P("x"), P("x^2*y - 1")));
}

TEST_CASE("ratfun_normalize canonical form") {
    PolyQ p = P("x^2 - y"), q = P("x*z + 3");
    RatFun a(p, q);
    RatFun b(p.scaled(Rat(2)), q.scaled(Rat(2)));
    CHECK(a.num == b.num);
    CHECK(a.den == b.den);
    PolyQ g = P("y + 2");
    RatFun c(p * g, q * g);
    CHECK(c.num == a.num);
    CHECK(c.den == a.den);
    // monic denominator
    CHECK(a.den.lead().second == Rat(1));
}

TEST_CASE("ratfun_normalize is a congruence") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        PolyQ n1 = random_poly(rng, 2, 3);
        PolyQ d1 = random_poly(rng, 2, 3);
        PolyQ n2 = random_poly(rng, 2, 3);
        PolyQ d2 = random_poly(rng, 2, 3);
        if (d1.is_zero() || d2.is_zero()) continue;
        RatFun a(n1, d1), b(n2, d2);
        bool same_ratfun = a.num == b.num && a.den == b.den;
        bool cross_equal = n1 * d2 == n2 * d1;
        CHECK(same_ratfun == cross_equal);
    }
}

TEST_CASE("worked-example sigma normalizes to the canonical form") {
    RatFun s(P("-x^2*(z-1)"), P("x^2*y - 1"));
    RatFun t(P("-3*x^2*(z-1)"), P("3*(x^2*y - 1)"));
    CHECK(s.num == t.num);
    CHECK(s.den == t.den);
    CHECK(s.str() == "(-x^2*z + x^2)/(x^2*y - 1)");
}

TEST_CASE("zero denominator is rejected") {
    CHECK_THROWS_AS(RatFun(P("x"), PolyQ()), ZeroDenominator);
}
