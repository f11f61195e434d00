#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "symseek/strategies.hpp"

using namespace symseek;

namespace {

PolyS P(const std::string& s) {
    FracS f = parse_expression(s);
    auto d = drop_syms(f.den);
    REQUIRE(d);
    REQUIRE(d->nterms() == 1);
    REQUIRE(d->lead().first == Mono::one());
    return f.num.scaled(CoeffPoly(Rat(1) / d->lead().second));
}

PolyS random_polyS(std::mt19937_64& rng, int max_deg, int terms) {
    std::uniform_int_distribution<int> de(0, max_deg);
    std::uniform_int_distribution<long> dc(-5, 5);
    PolyQ p;
    for (int i = 0; i < terms; ++i) {
        Mono m = Mono::one();
        m.e[0] = de(rng);
        m.e[1] = de(rng);
        m.e[2] = de(rng);
        p.add_term(m, Rat(dc(rng)));
    }
    return lift(p);
}

// substitute the assignment into a CoeffPoly until no assigned symbol is left
CoeffPoly apply_assignment(CoeffPoly e, const Assignment& asg) {
    for (int pass = 0; pass < 8; ++pass) {
        bool touched = false;
        for (auto& [code, val] : asg.values) {
            Sym s{code};
            if (e.contains(s)) {
                e = e.substituted(s, val.num, val.den);
                touched = true;
            }
        }
        if (!touched) return e;
    }
    FAIL("assignment did not stabilize");
    return e;
}

}  // namespace

TEST_CASE("monomials_up_to counts and ordering") {
    auto m3 = monomials_up_to(3, true, true, true);
    CHECK(m3.size() == 20);  // C(6,3)
    CHECK(m3[0] == Mono::one());
    for (size_t i = 1; i < m3.size(); ++i) {
        uint32_t da = m3[i - 1].e[0] + m3[i - 1].e[1] + m3[i - 1].e[2];
        uint32_t db = m3[i].e[0] + m3[i].e[1] + m3[i].e[2];
        CHECK(da <= db);
    }
    auto mxy = monomials_up_to(2, true, true, false);
    CHECK(mxy.size() == 6);
    for (auto& m : mxy) CHECK(m.e[2] == 0);
}

TEST_CASE("generic_poly allocates one fresh symbol per monomial") {
    std::vector<Sym> syms;
    PolyS p = generic_poly(2, true, true, true, SymKind::A, 0, &syms);
    CHECK(syms.size() == 10);
    CHECK(p.nterms() == 10);
    std::set<Sym> seen;
    for (auto& s : syms) {
        CHECK(s.kind() == SymKind::A);
        seen.insert(s);
    }
    CHECK(seen.size() == syms.size());
}

TEST_CASE("determining identity vanishes exactly for a true sigma") {
    Ode2 ode = parse_ode(
        "y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)");
    PolyS p = P("-x^2*(z-1)");
    PolyS q = P("x^2*y-1");
    CHECK(build_determining_identity(ode, p, q).is_zero());
    CHECK(!build_determining_identity(ode, p + P("1"), q).is_zero());
    CHECK(!build_determining_identity(ode, p, q + P("x")).is_zero());
}

TEST_CASE("identity is invariant under common factors: I(g*p, g*q) = g^2*I(p,q)") {
    std::mt19937_64 rng(41);
    Ode2 ode = parse_ode("y'' = (y^2 - x*y' + 1)/(x*y - y')");
    int done = 0;
    for (int i = 0; done < 100 && i < 400; ++i) {
        PolyS p = random_polyS(rng, 2, 3);
        PolyS q = random_polyS(rng, 2, 3);
        PolyS g = random_polyS(rng, 1, 2);
        if (p.is_zero() || q.is_zero() || g.is_zero()) continue;
        ++done;
        PolyS lhs = build_determining_identity(ode, g * p, g * q);
        PolyS rhs = g * g * build_determining_identity(ode, p, q);
        CHECK(lhs == rhs);
    }
    CHECK(done == 100);
}

TEST_CASE("identity is homogeneous of degree two in (p, q)") {
    std::mt19937_64 rng(43);
    Ode2 ode = parse_ode("y'' = y'^2/y + x");
    for (int i = 0; i < 50; ++i) {
        PolyS p = random_polyS(rng, 2, 3);
        PolyS q = random_polyS(rng, 2, 3);
        Rat c(7, 3);
        PolyS lhs = build_determining_identity(ode, p.scaled(CoeffPoly(c)),
                                               q.scaled(CoeffPoly(c)));
        PolyS rhs =
            build_determining_identity(ode, p, q).scaled(CoeffPoly(c * c));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("extract_system deduplicates scaled equations") {
    // (2*a0) * x + (3*a0) * y: two monomials, one equation class
    PolyS id = lift(PolyQ::variable(Var::X)).scaled(CoeffPoly::var(Sym::a(0)) * Rat(2)) +
               lift(PolyQ::variable(Var::Y)).scaled(CoeffPoly::var(Sym::a(0)) * Rat(3));
    AlgSystem sys = extract_system(id);
    CHECK(sys.equations.size() == 1);
    CHECK(sys.equations[0] == CoeffPoly::var(Sym::a(0)));
    REQUIRE(sys.unknowns.size() == 1);
    CHECK(sys.unknowns[0] == Sym::a(0));
}

TEST_CASE("propagate_linear handles the three pre-pass rules") {
    AlgSystem sys;
    sys.unknowns = {Sym::a(0), Sym::a(1), Sym::a(2), Sym::a(3)};
    CoeffPoly a0 = CoeffPoly::var(Sym::a(0));
    CoeffPoly a1 = CoeffPoly::var(Sym::a(1));
    CoeffPoly a2 = CoeffPoly::var(Sym::a(2));
    CoeffPoly a3 = CoeffPoly::var(Sym::a(3));
    sys.equations = {a0 * Rat(2),            // constant * symbol
                     a1 * a1,                // power of a symbol
                     a2 - CoeffPoly(Rat(3)), // linear, one symbol
                     a3 - a2};               // resolves after a2
    auto [rest, asg] = propagate_linear(sys);
    CHECK(rest.equations.empty());
    auto val = [&](Sym s) {
        auto it = asg.values.find(s.code);
        REQUIRE(it != asg.values.end());
        REQUIRE(it->second.den == CoeffPoly(Rat(1)));
        return it->second.num;
    };
    CHECK(val(Sym::a(0)).is_zero());
    CHECK(val(Sym::a(1)).is_zero());
    CHECK(val(Sym::a(2)) == CoeffPoly(Rat(3)));
    CHECK(val(Sym::a(3)) == CoeffPoly(Rat(3)));
}

TEST_CASE("propagate_linear reports inconsistency") {
    AlgSystem sys;
    sys.unknowns = {Sym::a(0)};
    sys.equations = {CoeffPoly::var(Sym::a(0)), CoeffPoly::var(Sym::a(0)) - CoeffPoly(Rat(1))};
    CHECK_THROWS_AS(propagate_linear(sys), Inconsistent);
}

TEST_CASE("solve_system branches satisfy the input equations") {
    AlgSystem sys;
    sys.unknowns = {Sym::a(0), Sym::a(1), Sym::b(0)};
    CoeffPoly a0 = CoeffPoly::var(Sym::a(0));
    CoeffPoly a1 = CoeffPoly::var(Sym::a(1));
    CoeffPoly b0 = CoeffPoly::var(Sym::b(0));
    sys.equations = {a0 * a1, a0 + a1 - b0};
    SolveOutcome out = solve_system(sys, SolveBudget{}, SolveMode::NonParametric);
    CHECK(!out.exhausted);
    REQUIRE(!out.branches.empty());
    for (auto& br : out.branches)
        for (auto& e : sys.equations)
            CHECK(apply_assignment(e, br).is_zero());
}

TEST_CASE("generic parameters kill params-only equations") {
    Sym k = Sym::param("ds_k");
    AlgSystem sys;
    sys.unknowns = {Sym::a(0), k};
    // a0 = 0 forced, then the residual equation k = 0 is unsatisfiable for
    // generic k, so no branch survives
    sys.equations = {CoeffPoly::var(Sym::a(0)),
                     CoeffPoly::var(k) * CoeffPoly::var(Sym::a(0)) + CoeffPoly::var(k)};
    SolveOutcome out = solve_system(sys, SolveBudget{}, SolveMode::NonParametric);
    CHECK(out.branches.empty());
}

TEST_CASE("parametric mode turns the same system into a constraint branch") {
    Sym k = Sym::param("ds_k2");
    AlgSystem sys;
    sys.unknowns = {Sym::a(0), k};
    sys.equations = {CoeffPoly::var(Sym::a(0)),
                     CoeffPoly::var(k) * CoeffPoly::var(Sym::a(0)) + CoeffPoly::var(k)};
    SolveOutcome out = solve_system(sys, SolveBudget{}, SolveMode::Parametric);
    bool constrained = false;
    for (auto& br : out.branches) {
        CoeffPoly r = apply_assignment(sys.equations[1], br);
        if (!br.constraints.empty() || r.is_zero()) constrained = true;
    }
    CHECK(constrained);
}

TEST_CASE("eval_candidate substitutes an assignment into a candidate") {
    Assignment asg;
    asg.values[Sym::a(0).code] = SymFrac::constant(Rat(2));
    asg.values[Sym::a(1).code] =
        SymFrac(CoeffPoly::var(Sym::a(2)), CoeffPoly(Rat(3)));
    asg.free_syms = {Sym::a(2).code};
    PolyS cand = lift(PolyQ::variable(Var::X)).scaled(CoeffPoly::var(Sym::a(0))) +
                 lift(PolyQ::variable(Var::Y)).scaled(CoeffPoly::var(Sym::a(1)));
    FracS got = eval_candidate(cand, asg);
    // 2*x + (a2/3)*y, up to the cleared constant denominator
    PolyS want = lift(PolyQ::variable(Var::X)).scaled(CoeffPoly(Rat(2))) +
                 lift(PolyQ::variable(Var::Y))
                     .scaled(CoeffPoly::var(Sym::a(2)) * Rat(1, 3));
    CHECK(got.equals(FracS(want, lift(PolyQ(Rat(1))))));
}

TEST_CASE("base loop finds the worked-example sigma at degree three") {
    Ode2 ode = parse_ode(
        "y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)");
    SearchBudget budget;
    budget.n_max = 3;
    budget.timeout_seconds = 60.0;
    SearchReport rep = run_asymm(ode, budget);
    REQUIRE(rep.result.has_value());
    FracS expected = parse_expression("(-x^2*(y'-1))/(x^2*y-1)");
    CHECK(sigma_equal(rep.result->sigma, expected));
    CHECK(rep.result->verified);
    // degrees one and two only admit the trivial p = 0 solution
    REQUIRE(rep.attempts.size() >= 2);
    CHECK(rep.attempts[0].n == 1);
    CHECK(rep.attempts[0].trivial_only);
    CHECK(rep.attempts[1].n == 2);
    CHECK(rep.attempts[1].trivial_only);
}

TEST_CASE("prefilter leaves a true sigma reachable") {
    Ode2 ode = parse_ode(
        "y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)");
    std::vector<Sym> as, bs;
    PolyS pc = generic_poly(3, true, true, true, SymKind::A, 0, &as);
    PolyS qc = generic_poly(3, true, true, true, SymKind::B, 0, &bs);
    auto pf = run_prefilter_11(ode, pc, qc);
    REQUIRE(pf.has_value());
    CHECK(!pf->pc.is_zero());
    CHECK(!pf->qc.is_zero());
}

TEST_CASE("divisors_of_N includes 1 and N itself") {
    Ode2 ode = parse_ode("y'' = y/((x^2*y-1)*x^2)");
    auto divs = divisors_of_N(ode);
    REQUIRE(divs.size() >= 2);
    CHECK(divs.front() == ode.N);
    bool has_one = false;
    for (auto& d : divs) {
        auto q = drop_syms(d);
        if (q && q->nterms() == 1 && q->lead().first == Mono::one() &&
            q->lead().second == Rat(1))
            has_one = true;
    }
    CHECK(has_one);
}
