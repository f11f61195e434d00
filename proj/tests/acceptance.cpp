// End-to-end acceptance suite.  One line per criterion; exit code is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "symseek/corpus.hpp"
#include "symseek/groebner.hpp"

using namespace symseek;

namespace {

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
    std::printf("criterion %d: %-4s %s%s%s\n", idx, ok ? "PASS" : "FAIL", what,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string data(const char* name) {
    return std::string(SYMSEEK_DATA_DIR) + "/" + name;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ---- criterion 1: worked example ------------------------------------------

void criterion_worked_example() {
    auto t0 = std::chrono::steady_clock::now();
    Ode2 ode = parse_ode(
        "y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)");
    SearchBudget budget;
    budget.n_max = 3;
    budget.timeout_seconds = 60.0;
    SearchReport rep = run_asymm(ode, budget);
    double dt = seconds_since(t0);

    bool ok = rep.result.has_value();
    std::string detail;
    if (ok) {
        FracS expected = parse_expression("(-x^2*(y'-1))/(x^2*y-1)");
        ok = sigma_equal(rep.result->sigma, expected) && rep.result->verified;
        if (!ok) detail = "wrong sigma: " + rep.result->sigma.str();
    } else {
        detail = "no sigma found";
    }
    if (ok && rep.attempts.size() >= 2) {
        bool trivial12 = rep.attempts[0].n == 1 && rep.attempts[0].trivial_only &&
                         rep.attempts[1].n == 2 && rep.attempts[1].trivial_only;
        if (!trivial12) {
            ok = false;
            detail = "degrees 1 and 2 were not trivial-only";
        }
    } else if (ok) {
        ok = false;
        detail = "missing degree attempts";
    }
    if (ok && dt > 60.0) {
        ok = false;
        detail = "took " + std::to_string(dt) + "s";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", dt);
    report(1, "worked example, trivial-only at degrees 1-2", ok,
           detail.empty() ? std::string(buf) : detail);
}

// ---- criteria 2 and 4: corpora ---------------------------------------------

void criterion_corpus(int idx, const char* file, size_t expect_total,
                      size_t min_match, const char* what) {
    std::string detail;
    bool ok = true;
    size_t match = 0, verified_diff = 0, bad = 0;
    try {
        auto entries = load_corpus(data(file), false);
        SearchBudget budget;
        budget.timeout_seconds = 60.0;
        auto reports = run_corpus(entries, budget, 1, "*");
        if (reports.size() != expect_total) {
            ok = false;
            detail = "unexpected corpus size";
        }
        for (auto& r : reports) {
            if (r.status == RunStatus::Match) {
                ++match;
            } else if (r.status == RunStatus::VerifiedDifferent) {
                ++verified_diff;
            } else {
                ++bad;
                detail += (detail.empty() ? "" : ", ") + r.id + ": " +
                          status_name(r.status);
            }
            if (r.elapsed > 60.5) {
                ok = false;
                detail += (detail.empty() ? "" : ", ") + r.id + " over budget";
            }
        }
        if (match < min_match || bad > 0) ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu Match, %zu VerifiedDifferent, %zu other",
                      match, verified_diff, bad);
        if (detail.empty()) detail = buf;
        else detail = std::string(buf) + "; " + detail;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(idx, what, ok, detail);
}

// ---- criterion 3: canonical functions of every table row ------------------

void criterion_nu_table() {
    bool ok = true;
    std::string detail;
    size_t checked = 0;
    try {
        auto entries = load_corpus(data("kamke.json"), false);
        for (auto& e : entries) {
            if (e.expected_nu.empty()) continue;
            Ode2 ode = e.ode();
            FracS sigma = parse_expression(e.expected_sigma);
            DarbouxFunction nu = parse_darboux(e.expected_nu);
            if (!verify_sigma(sigma, ode) || !verify_nu(nu, sigma, ode)) {
                ok = false;
                detail += (detail.empty() ? "" : ", ") + e.id;
            }
            ++checked;
        }
        if (checked == 0) ok = false;
        if (detail.empty()) detail = std::to_string(checked) + " rows verified";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(3, "nu verifies against sigma for every table row", ok, detail);
}

// ---- criterion 5: first integrals ------------------------------------------

void criterion_first_integrals() {
    struct Case {
        const char* ode;
        const char* fi;
    } cases[] = {
        {"y'' = -(x^2*y*y'-x^2*y'^2-x*y^3-x*y^2*y'-x*y'^2+y^3+y^2*y'+2*y*y'^2-y'^2)"
         "/(y*(x^2-y))",
         "exp(x) * (x*y'-y^2) * (x*y-y')^(-1)"},
        {"y'' = -(x*y*y'-2*x*y'^2+y*y'-y'^2-y+2*y')/(x*y-1)",
         "exp(-x) * (y-y') * (x*y'-1)^(-1)"},
        {"y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)",
         "exp(1/x) * (x^2*y-y') * (y'-1)^(-1)"},
    };
    bool ok = true;
    std::string detail;
    int i = 0;
    for (auto& c : cases) {
        ++i;
        try {
            Ode2 ode = parse_ode(c.ode);
            DarbouxFunction I = parse_darboux(c.fi);
            if (!verify_first_integral(I, ode)) {
                ok = false;
                detail += (detail.empty() ? "case " : ", case ") + std::to_string(i);
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
    }
    if (detail.empty()) detail = "3 first integrals verified";
    report(5, "first integrals are exact invariants", ok, detail);
}

// ---- criterion 6: Helmholtz branch analysis --------------------------------

void criterion_helmholtz() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        Ode2 ode = parse_ode("y'' = a*y' + b*y - c*y^2");
        SearchBudget budget;
        budget.timeout_seconds = 300.0;
        budget.nonzero_params = {Sym::param("c").code};
        ParamReport rep = run_parametric(ode, budget);

        CoeffPoly A = CoeffPoly::var(Sym::param("a"));
        CoeffPoly B = CoeffPoly::var(Sym::param("b"));
        CoeffPoly minus = (A * A * Rat(6) - B * Rat(25)).normalized();  // b = +6/25 a^2
        CoeffPoly plus = (A * A * Rat(6) + B * Rat(25)).normalized();   // b = -6/25 a^2
        FracS scas2 = parse_expression(
            "(12*a^4-200*a^2*c*y+625*c^2*y^2-250*a*c*y')"
            "/(5*(12*a^3-50*a*c*y+125*c*y'))");
        FracS scas3 =
            parse_expression("(4*a^2*y+25*c*y^2-10*a*y')/(-5*(2*a*y-5*y'))");

        if (rep.branches.size() != 2) {
            ok = false;
            detail = "expected exactly 2 constrained branches, got " +
                     std::to_string(rep.branches.size());
        } else {
            bool saw_minus = false, saw_plus = false;
            for (auto& br : rep.branches) {
                if (br.unresolved_algebraic || br.constraints.size() != 1) {
                    ok = false;
                    detail = "unexpected branch shape";
                    break;
                }
                CoeffPoly con = br.constraints[0].normalized();
                if (con == minus) {
                    saw_minus = sigma_equal_mod(br.sigma, scas2, br.constraints);
                } else if (con == plus) {
                    saw_plus = sigma_equal_mod(br.sigma, scas3, br.constraints);
                } else {
                    ok = false;
                    detail = "unexpected constraint " + con.str();
                }
            }
            if (ok && !(saw_minus && saw_plus)) {
                ok = false;
                detail = "branch sigmas do not match the closed forms";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double dt = seconds_since(t0);
    if (ok && dt > 300.0) {
        ok = false;
        detail = "took " + std::to_string(dt) + "s";
    }
    if (detail.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "both resonant branches found, %.2fs", dt);
        detail = buf;
    }
    report(6, "Helmholtz parametric branches b = +-(6/25)a^2", ok, detail);
}

// ---- criterion 7: property suites ------------------------------------------

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

bool prop_common_factor() {
    std::mt19937_64 rng(101);
    Ode2 ode = parse_ode("y'' = (y^2 - x*y' + 1)/(x*y - y')");
    int done = 0;
    for (int i = 0; done < 100 && i < 500; ++i) {
        PolyS p = random_polyS(rng, 2, 3);
        PolyS q = random_polyS(rng, 2, 3);
        PolyS g = random_polyS(rng, 1, 2);
        if (p.is_zero() || q.is_zero() || g.is_zero()) continue;
        ++done;
        if (build_determining_identity(ode, g * p, g * q) !=
            g * g * build_determining_identity(ode, p, q))
            return false;
    }
    return done == 100;
}

bool prop_homogeneity() {
    std::mt19937_64 rng(103);
    Ode2 ode = parse_ode("y'' = y'^2/y + x");
    for (int i = 0; i < 50; ++i) {
        PolyS p = random_polyS(rng, 2, 3);
        PolyS q = random_polyS(rng, 2, 3);
        Rat c(5, 2);
        if (build_determining_identity(ode, p.scaled(CoeffPoly(c)),
                                       q.scaled(CoeffPoly(c))) !=
            build_determining_identity(ode, p, q).scaled(CoeffPoly(c * c)))
            return false;
    }
    return true;
}

bool prop_groebner() {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<long> dc(-3, 3);
    std::uniform_int_distribution<int> dv(1, 3);
    int done = 0;
    for (int trial = 0; done < 50 && trial < 300; ++trial) {
        std::vector<CoeffPoly> gens;
        for (int g = 0; g < 2; ++g) {
            CoeffPoly p;
            for (int t = 0; t < 2; ++t) {
                SymMono m = SymMono::var(Sym::a(dv(rng))) *
                            SymMono::var(Sym::a(dv(rng)));
                p += CoeffPoly::term(m, Rat(dc(rng)));
            }
            p += CoeffPoly::term(SymMono::var(Sym::a(dv(rng))), Rat(dc(rng)));
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.size() < 2) continue;
        ++done;
        auto basis = groebner_basis(gens, TermOrder::Graded);
        // the ideal membership half of correctness: generators reduce to zero
        for (auto& g : gens)
            if (!reduce_mod(g, basis, TermOrder::Graded).is_zero()) return false;
        // S-polynomial closure: every pairwise S-poly reduces to zero
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j) {
                auto& [mi, ci] = lead_term(basis[i], TermOrder::Graded);
                auto& [mj, cj] = lead_term(basis[j], TermOrder::Graded);
                SymMono l = mi.lcm(mj);
                CoeffPoly s =
                    CoeffPoly::term(mi.quotient_into(l), Rat(1) / ci) * basis[i] -
                    CoeffPoly::term(mj.quotient_into(l), Rat(1) / cj) * basis[j];
                if (!reduce_mod(s, basis, TermOrder::Graded).is_zero())
                    return false;
            }
    }
    return done == 50;
}

bool prop_derivation() {
    std::mt19937_64 rng(109);
    Ode2 ode = parse_ode("y'' = (y^2 - x*y')/(x^2*y - 1)");
    std::uniform_int_distribution<int> de(0, 2);
    std::uniform_int_distribution<long> dc(-4, 4);
    auto poly = [&](int terms) {
        PolyQ p;
        for (int i = 0; i < terms; ++i) {
            Mono m = Mono::one();
            m.e[0] = de(rng);
            m.e[1] = de(rng);
            m.e[2] = de(rng);
            p.add_term(m, Rat(dc(rng)));
        }
        return p;
    };
    auto small = [&](PolyQ p) {
        // clamp to degree <= 1 so RatFun gcds stay cheap
        PolyQ q;
        for (auto& [m, c] : p.t) {
            Mono mm = Mono::one();
            if (m.e[0]) mm.e[0] = 1;
            else if (m.e[1]) mm.e[1] = 1;
            else if (m.e[2]) mm.e[2] = 1;
            q.add_term(mm, c);
        }
        return q;
    };
    for (int i = 0; i < 100; ++i) {
        PolyQ d1 = small(poly(2)), d2 = small(poly(2));
        if (d1.is_zero()) d1 = PolyQ(Rat(1));
        if (d2.is_zero()) d2 = PolyQ(Rat(1));
        RatFun f(poly(3), d1), g(poly(3), d2);
        if (apply_Dx(f * g, ode) != apply_Dx(f, ode) * g + f * apply_Dx(g, ode))
            return false;
        if (apply_Dx(f + g, ode) != apply_Dx(f, ode) + apply_Dx(g, ode))
            return false;
    }
    return true;
}

bool prop_parser_roundtrip() {
    for (const char* file : {"kamke.json", "nonlocal.json", "oscillators.json"}) {
        auto entries = load_corpus(data(file), false);
        for (auto& e : entries) {
            Ode2 ode = e.ode();
            if (!(parse_ode(render(ode)) == ode)) return false;
        }
    }
    return true;
}

void criterion_properties() {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    struct {
        const char* name;
        bool (*run)();
    } suites[] = {
        {"common-factor", prop_common_factor},
        {"homogeneity", prop_homogeneity},
        {"groebner", prop_groebner},
        {"derivation", prop_derivation},
        {"parser-roundtrip", prop_parser_roundtrip},
    };
    for (auto& s : suites) {
        bool r = false;
        try {
            r = s.run();
        } catch (const std::exception& e) {
            detail = std::string(s.name) + ": " + e.what();
        }
        if (!r) {
            ok = false;
            if (detail.empty()) detail = std::string(s.name) + " failed";
        }
    }
    double dt = seconds_since(t0);
    if (ok && dt > 600.0) {
        ok = false;
        detail = "took " + std::to_string(dt) + "s";
    }
    if (detail.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "5 suites, %.2fs", dt);
        detail = buf;
    }
    report(7, "algebraic property suites", ok, detail);
}

// ---- criterion 8: algebraic-extension branches -----------------------------

void criterion_unresolved() {
    bool ok = false;
    std::string detail;
    try {
        Ode2 ode = parse_ode("y'' = -e*(1-y^2)*y'-y-a*y*y'-b*y^2-g*y^3");
        SearchBudget budget;
        budget.timeout_seconds = 300.0;
        budget.nonzero_params = {Sym::param("e").code};
        ParamReport rep = run_parametric(ode, budget);
        for (auto& br : rep.branches) {
            if (br.unresolved_algebraic && !br.relations.empty()) {
                ok = true;
                detail = "relations: ";
                for (auto& r : br.relations) {
                    if (detail.size() > 11) detail += ", ";
                    detail += r.str() + " = 0";
                }
                break;
            }
        }
        if (!ok) detail = "no unresolved-algebraic branch reported";
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(8, "irrational parameter branches flagged as UnresolvedAlgebraic", ok,
           detail);
}

}  // namespace

int main() {
    criterion_worked_example();
    criterion_corpus(2, "kamke.json", 37, 30,
                     "Kamke corpus: >=30 Match, rest VerifiedDifferent");
    criterion_nu_table();
    criterion_corpus(4, "nonlocal.json", 7, 7, "nonlocal corpus: 7/7 Match");
    criterion_first_integrals();
    criterion_helmholtz();
    criterion_properties();
    criterion_unresolved();
    std::printf("%s (%d failure%s)\n", failures == 0 ? "ALL PASS" : "FAILED",
                failures, failures == 1 ? "" : "s");
    return failures;
}
