#include "symseek/strategies.hpp"

#include <algorithm>
#include <chrono>

namespace symseek {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Ctx {
    const Ode2& ode;
    const SearchBudget& budget;
    SearchReport& rep;
    Clock::time_point start;
    Clock::time_point deadline;

    double remaining() const {
        return std::chrono::duration<double>(deadline - Clock::now()).count();
    }
};

Ctx make_ctx(const Ode2& ode, const SearchBudget& budget, SearchReport& rep) {
    auto start = Clock::now();
    return Ctx{ode, budget, rep, start,
               start + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(budget.timeout_seconds))};
}

// Gauge choices for the projective scaling freedom left in a branch:
// one free symbol set to 1 with the rest 0, then all of them 1.
std::vector<std::map<uint32_t, SymFrac>> gauge_choices(const std::set<uint32_t>& frees) {
    std::vector<std::map<uint32_t, SymFrac>> out;
    if (frees.empty()) {
        out.push_back({});
        return out;
    }
    for (uint32_t pick : frees) {
        std::map<uint32_t, SymFrac> g;
        for (uint32_t s : frees)
            g[s] = SymFrac::constant(s == pick ? Rat(1) : Rat(0));
        out.push_back(std::move(g));
    }
    if (frees.size() > 1) {
        std::map<uint32_t, SymFrac> g;
        for (uint32_t s : frees) g[s] = SymFrac::constant(Rat(1));
        out.push_back(std::move(g));
    }
    return out;
}

Assignment with_gauge(const Assignment& br, const std::map<uint32_t, SymFrac>& g) {
    Assignment ext = br;
    for (auto& [s, v] : g) {
        ext.values[s] = v;
        ext.free_syms.erase(s);
    }
    return ext;
}

// Free symbols surviving in an evaluated candidate.  Unknowns that never met
// an equation are not in br.free_syms but still need a gauge value.
void collect_frees(const FracS& f, std::set<uint32_t>& out) {
    for (auto& [m, c] : f.num.t)
        for (Sym s : c.syms())
            if (!s.is_param()) out.insert(s.code);
}

// One candidate shape: build the identity, extract, solve, gauge-fix and
// verify.  Returns the first verified nontrivial sigma.
std::optional<SigmaResult> try_candidates(Ctx& ctx, const PolyS& pc, const PolyS& qc,
                                          const StrategySpec& spec,
                                          DegreeAttempt* da = nullptr) {
    double rem = ctx.remaining();
    if (rem <= 0) {
        ctx.rep.budget_exhausted = true;
        return std::nullopt;
    }
    AlgSystem sys = extract_system(build_determining_identity(ctx.ode, pc, qc));

    SolveBudget sb = ctx.budget.solve;
    sb.timeout_seconds = rem;
    SolveOutcome out =
        solve_system(sys, sb, SolveMode::NonParametric, ctx.budget.nonzero_params);
    ctx.rep.budget_exhausted = ctx.rep.budget_exhausted || out.exhausted;
    if (da) da->branches += out.branches.size();

    for (const Assignment& br : out.branches) {
        if (br.unresolved_algebraic) {
            ctx.rep.unresolved.push_back(br);
            continue;
        }
        std::set<uint32_t> frees = br.free_syms;
        collect_frees(eval_candidate(pc, br), frees);
        collect_frees(eval_candidate(qc, br), frees);
        for (auto& g : gauge_choices(frees)) {
            Assignment ext = with_gauge(br, g);
            FracS p = eval_candidate(pc, ext);
            FracS q = eval_candidate(qc, ext);
            if (p.num.is_zero() || q.num.is_zero()) continue;
            FracS sigma = (p / q).reduced();
            if (sigma.num.is_zero()) continue;
            if (da) da->trivial_only = false;
            if (!numeric_spotcheck(sigma, ctx.ode, 3, 0x5eed)) continue;
            if (!verify_sigma(sigma, ctx.ode)) continue;
            return SigmaResult{sigma, spec, ext, seconds_since(ctx.start), true};
        }
    }
    return std::nullopt;
}

PolyS generic_xyz(uint32_t n, SymKind kind) {
    return generic_poly(n, true, true, true, kind);
}

// -- divisor machinery ------------------------------------------------------

std::vector<Rat> specialize_univariate(const PolyQ& K, Var v, const Rat& s1,
                                       const Rat& s2) {
    std::vector<Rat> c(K.deg_of(v) + 1, Rat(0));
    for (auto& [m, r] : K.t) {
        Rat val = r;
        int slot = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == static_cast<int>(v)) continue;
            const Rat& s = (slot++ == 0) ? s1 : s2;
            for (uint32_t k = 0; k < m.e[i]; ++k) val *= s;
        }
        c[m.e[static_cast<int>(v)]] += val;
    }
    return c;
}

void positive_divisors(const Int& n, std::vector<Int>& out) {
    Int v = abs(n);
    if (v == 0) return;
    if (!v.fits_slong_p() || v > 1000000000000L) {
        for (long d : {1L, 2L, 3L, 4L, 5L, 6L}) out.emplace_back(d);
        return;
    }
    long lv = v.get_si();
    for (long d = 1; d * d <= lv && d <= 1000000; ++d) {
        if (lv % d) continue;
        out.emplace_back(d);
        out.emplace_back(lv / d);
    }
}

// Rational root candidates p/q of the univariate with coefficients c.
std::vector<Rat> root_candidates(const std::vector<Rat>& c) {
    size_t lo = 0, hi = c.size();
    while (lo < hi && rat_is_zero(c[lo])) ++lo;
    while (hi > lo && rat_is_zero(c[hi - 1])) --hi;
    if (hi - lo < 2) return {};
    Int den_lcm = 1;
    for (size_t i = lo; i < hi; ++i)
        den_lcm = lcm(den_lcm, Int(c[i].get_den()));
    Int trail = Int(c[lo].get_num()) * (den_lcm / Int(c[lo].get_den()));
    Int lead = Int(c[hi - 1].get_num()) * (den_lcm / Int(c[hi - 1].get_den()));
    std::vector<Int> ps, qs;
    positive_divisors(trail, ps);
    positive_divisors(lead, qs);
    std::vector<Rat> roots;
    for (auto& p : ps)
        for (auto& q : qs) {
            Rat r(p, q);
            r.canonicalize();
            roots.push_back(r);
            roots.push_back(-r);
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

struct FactorList {
    uint32_t mono_exp[3] = {0, 0, 0};
    std::vector<std::pair<PolyQ, uint32_t>> linear;  // factor, multiplicity
    std::optional<PolyQ> cofactor;                   // leftover, deg >= 1
    std::optional<PolyS> cofactor_s;                 // parametric leftover
};

FactorList factor_N(const Ode2& ode) {
    FactorList fl;
    // monomial content
    uint32_t me[3] = {~0u, ~0u, ~0u};
    for (auto& [m, c] : ode.N.t)
        for (int i = 0; i < 3; ++i) me[i] = std::min(me[i], m.e[i]);
    for (int i = 0; i < 3; ++i) fl.mono_exp[i] = me[i];
    PolyS K;
    for (auto& [m, c] : ode.N.t) {
        Mono mm = m;
        for (int i = 0; i < 3; ++i) mm.e[i] -= me[i];
        K.t.emplace(mm, c);
    }
    if (K.deg() == 0) return fl;

    auto Kq = drop_syms(K);
    if (!Kq) {
        fl.cofactor_s = K;
        return fl;
    }
    PolyQ work = *Kq;
    const std::pair<Rat, Rat> points[] = {
        {Rat(2), Rat(3)}, {Rat(3), Rat(5)}, {Rat(5), Rat(7)}, {Rat(-2), Rat(7)}};
    bool progress = true;
    while (progress && work.deg() >= 1) {
        progress = false;
        for (Var v : {Var::X, Var::Y, Var::Z}) {
            if (work.deg_of(v) == 0) continue;
            std::vector<Rat> cands;
            for (auto& [s1, s2] : points) {
                for (auto& r : root_candidates(specialize_univariate(work, v, s1, s2)))
                    cands.push_back(r);
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            for (auto& r : cands) {
                PolyQ lin = PolyQ::variable(v) - PolyQ(r);
                PolyQ quot;
                uint32_t mult = 0;
                while (poly_divides(lin, work, &quot)) {
                    work = quot;
                    ++mult;
                }
                if (mult) {
                    fl.linear.emplace_back(lin, mult);
                    progress = true;
                }
            }
        }
    }
    if (work.deg() >= 1) fl.cofactor = poly_primitive(work);
    return fl;
}

}  // namespace

std::vector<PolyS> divisors_of_N(const Ode2& ode) {
    FactorList fl = factor_N(ode);
    std::vector<std::pair<PolyQ, uint32_t>> base;  // param-free factors
    for (Var v : {Var::X, Var::Y, Var::Z}) {
        uint32_t e = fl.mono_exp[static_cast<int>(v)];
        if (e) base.emplace_back(PolyQ::variable(v), e);
    }
    for (auto& [f, m] : fl.linear) base.emplace_back(f, m);
    if (fl.cofactor) base.emplace_back(*fl.cofactor, 1);

    std::vector<PolyS> out;
    std::vector<std::string> seen;
    auto push = [&](const PolyS& d) {
        std::string s = poly_str(d);
        if (std::find(seen.begin(), seen.end(), s) != seen.end()) return;
        seen.push_back(s);
        out.push_back(d);
    };

    std::vector<PolyQ> combos{PolyQ(Rat(1))};
    for (auto& [f, mult] : base) {
        std::vector<PolyQ> next;
        for (auto& c : combos) {
            PolyQ acc = c;
            next.push_back(acc);
            for (uint32_t k = 0; k < mult && next.size() < 256; ++k) {
                acc = acc * f;
                next.push_back(acc);
            }
        }
        combos = std::move(next);
        if (combos.size() >= 256) break;
    }
    std::vector<PolyS> divisors;
    for (auto& c : combos) {
        divisors.push_back(lift(c));
        if (fl.cofactor_s) divisors.push_back(lift(c) * *fl.cofactor_s);
    }
    std::stable_sort(divisors.begin(), divisors.end(),
                     [](const PolyS& a, const PolyS& b) {
                         if (a.deg() != b.deg()) return a.deg() < b.deg();
                         if (a.nterms() != b.nterms()) return a.nterms() < b.nterms();
                         return poly_str(a) < poly_str(b);
                     });
    push(ode.N);
    for (auto& d : divisors) push(d);
    return out;
}

std::string StrategySpec::id() const {
    switch (kind) {
        case StrategyKind::NuLinear: return "nu-linear";
        case StrategyKind::MonomialSeed: return "seed-monomials";
        case StrategyKind::QDividesN: return "q-div-n";
        case StrategyKind::QEqualsUN:
            return std::string("q-u-n:") + (u == Var::X ? "x" : u == Var::Y ? "y" : "z");
        case StrategyKind::NOfXOnly: return "n-of-x";
        case StrategyKind::CommonFactor: return "common-factor";
        case StrategyKind::Base: return "base";
    }
    return "base";
}

std::optional<StrategySpec> strategy_from_id(const std::string& id) {
    if (id == "nu-linear") return StrategySpec{StrategyKind::NuLinear};
    if (id == "base") return StrategySpec{StrategyKind::Base};
    if (id == "q-div-n") return StrategySpec{StrategyKind::QDividesN};
    if (id == "n-of-x") return StrategySpec{StrategyKind::NOfXOnly};
    if (id == "seed-monomials") return StrategySpec{StrategyKind::MonomialSeed};
    if (id == "common-factor") return StrategySpec{StrategyKind::CommonFactor};
    if (id == "q-u-n:x") return StrategySpec{StrategyKind::QEqualsUN, Var::X};
    if (id == "q-u-n:y") return StrategySpec{StrategyKind::QEqualsUN, Var::Y};
    if (id == "q-u-n:z") return StrategySpec{StrategyKind::QEqualsUN, Var::Z};
    return std::nullopt;
}

std::optional<PrefilterResult> run_prefilter_11(const Ode2& ode, const PolyS& pc,
                                                const PolyS& qc) {
    PolyS Ny = ode.N.partial(Var::Y);
    PolyS Nz = ode.N.partial(Var::Z);
    if (Ny.is_zero() || Nz.is_zero()) return std::nullopt;

    uint32_t degP = std::max(pc.deg(), qc.deg());
    PolyS Pc = generic_poly(degP, true, true, true, SymKind::C);
    PolyS ident = qc * Ny - pc * Nz - ode.N * Pc;
    AlgSystem sys = extract_system(ident);

    Assignment asg;
    std::vector<CoeffPoly> eqs = sys.equations;
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < eqs.size(); ++i) {
            CoeffPoly& eq = eqs[i];
            if (eq.is_zero()) continue;
            // pick an eliminable symbol, preferring a's, then b's, then c's
            std::optional<Sym> best;
            CoeffPoly best_coef, best_rest;
            for (Sym s : eq.syms()) {
                if (s.is_param()) continue;
                auto pw = eq.by_powers_of(s);
                if (pw.size() != 2) continue;
                if (!pw[1].is_constant() && !pw[1].params_only()) continue;
                if (best && !(s.kind() < best->kind() ||
                              (s.kind() == best->kind() && s.code < best->code)))
                    continue;
                // prefer purely constant coefficients within a kind
                if (best && s.kind() == best->kind() && !pw[1].is_constant() &&
                    best_coef.is_constant())
                    continue;
                best = s;
                best_coef = pw[1];
                best_rest = pw[0];
            }
            if (!best) continue;
            asg.values[best->code] = SymFrac(-best_rest, best_coef);
            for (auto& e : eqs)
                if (!e.is_zero() && e.contains(*best))
                    e = e.substituted(*best, -best_rest, best_coef);
            eq = CoeffPoly();
            progress = true;
        }
    }

    FracS rp = eval_candidate(pc, asg);
    FracS rq = eval_candidate(qc, asg);
    if (rp.num.is_zero() || rq.num.is_zero()) return std::nullopt;
    for (auto& [m, c] : rp.num.t)
        for (Sym s : c.syms())
            if (!s.is_param()) asg.free_syms.insert(s.code);
    for (auto& [m, c] : rq.num.t)
        for (Sym s : c.syms())
            if (!s.is_param()) asg.free_syms.insert(s.code);
    return PrefilterResult{asg, rp.num, rq.num};
}

SearchReport run_asymm(const Ode2& ode, const SearchBudget& budget) {
    SearchReport rep;
    Ctx ctx = make_ctx(ode, budget, rep);
    StrategySpec spec{StrategyKind::Base};
    DegreeReport dr = degree_report(ode);
    uint32_t off = dr.kind == BoundKind::Excess ? dr.offset : 0;

    for (uint32_t n = 1; n <= budget.n_max; ++n) {
        if (ctx.remaining() <= 0) {
            rep.budget_exhausted = true;
            break;
        }
        PolyS pc = generic_xyz(n + off, SymKind::A);
        PolyS qc = generic_xyz(n, SymKind::B);
        DegreeAttempt da{n, 0, true};

        std::optional<SigmaResult> r;
        if (auto pf = run_prefilter_11(ode, pc, qc))
            r = try_candidates(ctx, pf->pc, pf->qc, spec, &da);
        if (!r) r = try_candidates(ctx, pc, qc, spec, &da);

        rep.attempts.push_back(da);
        if (r) {
            rep.result = std::move(r);
            break;
        }
    }
    rep.exhaustive = !rep.budget_exhausted;
    rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
    return rep;
}

namespace {

// Theorem-7 bound on deg p for q | N.
uint32_t q_div_n_bound(const DegreeReport& dr) {
    return dr.deg_M <= dr.deg_N + 1 ? dr.deg_N : dr.deg_M - 1;
}

// repeated-factor part of N for the N_y = 0 refinement
std::optional<PolyQ> repeated_part(const Ode2& ode) {
    auto Nq = drop_syms(ode.N);
    if (!Nq || Nq->deg() == 0) return std::nullopt;
    PolyQ g = poly_gcd(*Nq, poly_gcd(Nq->partial(Var::X), Nq->partial(Var::Z)));
    if (g.deg() == 0) return std::nullopt;
    return g;
}

}  // namespace

SearchReport run_nu_linear(const Ode2& ode, const SearchBudget& budget) {
    SearchReport rep;
    Ctx ctx = make_ctx(ode, budget, rep);
    StrategySpec spec{StrategyKind::NuLinear};
    const PolyS& M = ode.M;
    const PolyS& N = ode.N;
    PolyS z = lift(PolyQ::variable(Var::Z));
    auto ndx = [&](const PolyS& f) {  // N * D_x f for polynomial f
        return N * (f.partial(Var::X) + z * f.partial(Var::Y)) +
               M * f.partial(Var::Z);
    };
    PolyS phiz_n = M.partial(Var::Z) * N - M * N.partial(Var::Z);  // phi_z * N^2
    PolyS phiy_n = M.partial(Var::Y) * N - M * N.partial(Var::Y);  // phi_y * N^2

    uint32_t cap = std::min<uint32_t>(budget.n_max, 4);
    for (uint32_t n = 1; n <= cap; ++n) {
        if (ctx.remaining() <= 0) {
            rep.budget_exhausted = true;
            break;
        }
        PolyS nu = generic_poly(n, true, true, true, SymKind::A);
        PolyS w = ndx(nu);
        // (D_x^2 nu - phi_z D_x nu - phi_y nu) * N^3, linear in the a's
        PolyS ident = N * ndx(w) - w * ndx(N) - phiz_n * w - phiy_n * (N * nu);
        AlgSystem sys = extract_system(ident);

        SolveBudget sb = ctx.budget.solve;
        sb.timeout_seconds = ctx.remaining();
        SolveOutcome out = solve_system(sys, sb, SolveMode::NonParametric,
                                        ctx.budget.nonzero_params);
        rep.budget_exhausted = rep.budget_exhausted || out.exhausted;
        DegreeAttempt da{n, out.branches.size(), true};

        for (const Assignment& br : out.branches) {
            if (br.unresolved_algebraic) {
                rep.unresolved.push_back(br);
                continue;
            }
            std::set<uint32_t> frees = br.free_syms;
            collect_frees(eval_candidate(nu, br), frees);
            for (auto& g : gauge_choices(frees)) {
                Assignment ext = with_gauge(br, g);
                FracS nuv = eval_candidate(nu, ext);
                if (nuv.num.is_zero()) continue;
                FracS sigma = FracS(-ndx(nuv.num), N * nuv.num).reduced();
                if (sigma.num.is_zero()) continue;
                da.trivial_only = false;
                if (!verify_sigma(sigma, ctx.ode)) continue;
                rep.result =
                    SigmaResult{sigma, spec, ext, seconds_since(ctx.start), true};
                break;
            }
            if (rep.result) break;
        }
        rep.attempts.push_back(da);
        if (rep.result) break;
    }
    rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
    return rep;
}

SearchReport run_q_divides_n(const Ode2& ode, const SearchBudget& budget) {
    SearchReport rep;
    Ctx ctx = make_ctx(ode, budget, rep);
    StrategySpec spec{StrategyKind::QDividesN};
    DegreeReport dr = degree_report(ode);
    uint32_t bound = q_div_n_bound(dr);

    for (const PolyS& d : divisors_of_N(ode)) {
        PolyS pc = generic_xyz(bound, SymKind::A);
        if (auto r = try_candidates(ctx, pc, d, spec)) {
            rep.result = std::move(r);
            break;
        }
        if (ctx.remaining() <= 0) break;
    }
    // N_y = 0 with a square factor: N's repeated part divides p
    if (!rep.result && !ode.N.depends_on(Var::Y)) {
        if (auto g = repeated_part(ode)) {
            if (g->deg() <= bound) {
                PolyS pc = lift(*g) * generic_xyz(bound - g->deg(), SymKind::A);
                if (auto r = try_candidates(ctx, pc, ode.N, spec))
                    rep.result = std::move(r);
            }
        }
    }
    rep.exhaustive = !rep.budget_exhausted;
    rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
    return rep;
}

SearchReport run_q_equals_uN(const Ode2& ode, Var u, const SearchBudget& budget) {
    SearchReport rep;
    Ctx ctx = make_ctx(ode, budget, rep);
    StrategySpec spec{StrategyKind::QEqualsUN, u};
    DegreeReport dr = degree_report(ode);
    uint32_t bound = q_div_n_bound(dr) + 1;

    PolyS qc = PolyS::variable(u) * ode.N;
    PolyS pc = generic_xyz(bound, SymKind::A);
    if (auto r = try_candidates(ctx, pc, qc, spec)) rep.result = std::move(r);
    rep.exhaustive = !rep.budget_exhausted;
    rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
    return rep;
}

SearchReport run_n_of_x(const Ode2& ode, const SearchBudget& budget) {
    SearchReport rep;
    Ctx ctx = make_ctx(ode, budget, rep);
    StrategySpec spec{StrategyKind::NOfXOnly};
    if (ode.N.depends_on(Var::Y) || ode.N.depends_on(Var::Z)) {
        rep.inapplicable = true;
        return rep;
    }
    DegreeReport dr = degree_report(ode);
    uint32_t off = dr.kind == BoundKind::Excess ? dr.offset : 0;

    for (uint32_t n = 1; n <= budget.n_max; ++n) {
        if (ctx.remaining() <= 0) {
            rep.budget_exhausted = true;
            break;
        }
        PolyS pc = generic_xyz(n + off, SymKind::A);
        PolyS qc = generic_poly(n, true, true, false, SymKind::B);
        DegreeAttempt da{n, 0, true};
        auto r = try_candidates(ctx, pc, qc, spec, &da);
        rep.attempts.push_back(da);
        if (r) {
            rep.result = std::move(r);
            break;
        }
    }
    rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
    return rep;
}

SearchReport run_monomial_seed(const Ode2& ode, const SearchBudget& budget) {
    SearchReport rep;
    Ctx ctx = make_ctx(ode, budget, rep);
    StrategySpec spec{StrategyKind::MonomialSeed};

    std::vector<std::vector<Mono>> supports;
    auto support_of = [](const PolyS& p) {
        std::vector<Mono> s;
        for (auto& [m, c] : p.t) s.push_back(m);
        return s;
    };
    std::vector<Mono> s1 = support_of(ode.M);
    std::vector<Mono> s2 = support_of(ode.M.partial(Var::Z));
    if (!s1.empty()) supports.push_back(s1);
    if (!s2.empty() && s2 != s1) supports.push_back(s2);

    std::vector<PolyS> divs = divisors_of_N(ode);
    for (auto& sup : supports) {
        PolyS pc = generic_poly_on(sup, SymKind::A);
        std::vector<PolyS> qcs;
        qcs.push_back(ode.N);
        qcs.push_back(generic_xyz(1, SymKind::B));
        qcs.push_back(generic_xyz(2, SymKind::B));
        for (auto& d : divs)
            if (d.deg() >= 1 && !(d == ode.N))
                qcs.push_back(d * generic_xyz(1, SymKind::B));
        for (auto& d : divs)
            if (d.deg() >= 1 && !(d == ode.N))
                qcs.push_back(d * generic_xyz(2, SymKind::B));
        for (auto& qc : qcs) {
            if (auto r = try_candidates(ctx, pc, qc, spec)) {
                rep.result = std::move(r);
                rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
                return rep;
            }
            if (ctx.remaining() <= 0) break;
        }
    }
    rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
    return rep;
}

SearchReport run_common_factor(const Ode2& ode, const SearchBudget& budget) {
    SearchReport rep;
    Ctx ctx = make_ctx(ode, budget, rep);
    StrategySpec spec{StrategyKind::CommonFactor};
    DegreeReport dr = degree_report(ode);
    uint32_t off = dr.kind == BoundKind::Excess ? dr.offset : 0;

    std::vector<PolyS> divs = divisors_of_N(ode);
    for (uint32_t m = 1; m <= 3 && !rep.result; ++m) {
        for (auto& d : divs) {
            if (d.deg() < 1) continue;
            PolyS qc = d * generic_xyz(m, SymKind::B);
            PolyS pc = generic_xyz(d.deg() + m + off, SymKind::A);
            if (auto r = try_candidates(ctx, pc, qc, spec)) {
                rep.result = std::move(r);
                break;
            }
            if (ctx.remaining() <= 0) break;
        }
        if (ctx.remaining() <= 0) break;
    }
    rep.timings.emplace_back(spec.id(), seconds_since(ctx.start));
    return rep;
}

SearchReport run_auto(const Ode2& ode, const SearchBudget& budget) {
    SearchReport rep;
    auto start = Clock::now();
    auto total = budget.timeout_seconds;
    auto remaining = [&] { return total - seconds_since(start); };

    auto merge = [&](SearchReport&& sub, bool take_attempts = false) {
        for (auto& t : sub.timings) rep.timings.push_back(t);
        for (auto& u : sub.unresolved) rep.unresolved.push_back(std::move(u));
        if (take_attempts) rep.attempts = std::move(sub.attempts);
        if (sub.result) {
            rep.result = std::move(sub.result);
            rep.result->elapsed = seconds_since(start);
            return true;
        }
        return false;
    };
    auto stage = [&](double cap, auto&& fn) {
        if (rep.result || remaining() <= 0) return;
        SearchBudget sub = budget;
        sub.timeout_seconds = std::min(cap, remaining());
        merge(fn(sub), false);
    };

    stage(10.0, [&](const SearchBudget& b) { return run_nu_linear(ode, b); });
    stage(5.0, [&](const SearchBudget& b) { return run_monomial_seed(ode, b); });
    stage(10.0, [&](const SearchBudget& b) { return run_q_divides_n(ode, b); });
    for (Var u : {Var::Z, Var::X, Var::Y})
        stage(5.0, [&](const SearchBudget& b) { return run_q_equals_uN(ode, u, b); });
    if (!ode.N.depends_on(Var::Y) && !ode.N.depends_on(Var::Z))
        stage(15.0, [&](const SearchBudget& b) { return run_n_of_x(ode, b); });
    stage(30.0, [&](const SearchBudget& b) { return run_common_factor(ode, b); });
    if (!rep.result && remaining() > 0) {
        SearchBudget sub = budget;
        sub.timeout_seconds = remaining();
        merge(run_asymm(ode, sub), true);
    }
    if (!rep.result && remaining() <= 0) rep.budget_exhausted = true;
    return rep;
}

// -- parametric analysis ----------------------------------------------------

namespace {

bool reduces_to_zero(const PolyS& P, const std::vector<CoeffPoly>& gb) {
    for (auto& [m, c] : P.t)
        if (!reduce_mod(c, gb, TermOrder::Graded).is_zero()) return false;
    return true;
}

std::vector<CoeffPoly> constraint_basis(const std::vector<CoeffPoly>& constraints) {
    return groebner_basis(constraints, TermOrder::Graded);
}

SymMono pb_mono_content(const CoeffPoly& c) {
    SymMono g = c.t.begin()->first;
    for (auto& [m, r] : c.t) {
        SymMono next;
        size_t j = 0;
        for (auto& [s, k] : g.f) {
            while (j < m.f.size() && m.f[j].first < s) ++j;
            if (j < m.f.size() && m.f[j].first == s)
                next.f.emplace_back(s, std::min(k, m.f[j].second));
        }
        g = next;
        if (g.is_one()) break;
    }
    return g;
}

CoeffPoly pb_divide_mono(const CoeffPoly& c, const SymMono& m) {
    CoeffPoly r;
    for (auto& [mm, cc] : c.t) r.t.emplace(m.quotient_into(mm), cc);
    return r;
}

// Strip factors that are declared nonzero from a constraint's monomial part.
CoeffPoly strip_nonzero(const CoeffPoly& c, const std::set<uint32_t>& nz) {
    if (c.is_zero()) return c;
    SymMono g = pb_mono_content(c);
    SymMono keep;
    for (auto& [code, k] : g.f)
        if (!nz.count(code)) keep.f.emplace_back(code, k);
    SymMono drop = keep.quotient_into(g);
    if (drop.is_one()) return c.normalized();
    return pb_divide_mono(c, drop).normalized();
}

// Multiplicative split: symbol factors from the monomial content, plus a
// difference-of-squares split for binomials.  The product of the returned
// factors has the same zero set as c (nonzero-declared symbols removed).
std::vector<CoeffPoly> constraint_factors(const CoeffPoly& c,
                                          const std::set<uint32_t>& nz) {
    std::vector<CoeffPoly> out;
    if (c.is_zero()) return out;
    SymMono g = pb_mono_content(c);
    for (auto& [code, k] : g.f)
        if (!nz.count(code)) out.push_back(CoeffPoly::var(Sym{code}));
    CoeffPoly rest = pb_divide_mono(c, g).normalized();
    if (rest.is_constant()) return out;
    if (rest.t.size() == 2) {
        auto it = rest.t.begin();
        auto jt = std::next(it);
        const auto& [m1, c1] = *it;
        const auto& [m2, c2] = *jt;
        if (sgn(c1) * sgn(c2) < 0) {
            CoeffPoly pos = CoeffPoly::term(sgn(c1) > 0 ? m1 : m2, abs(Rat(sgn(c1) > 0 ? c1 : c2)));
            CoeffPoly neg = CoeffPoly::term(sgn(c1) > 0 ? m2 : m1, abs(Rat(sgn(c1) > 0 ? c2 : c1)));
            auto A = pos.sqrt_exact();
            auto B = neg.sqrt_exact();
            if (A && B) {
                out.push_back((*A - *B).normalized());
                out.push_back((*A + *B).normalized());
                return out;
            }
        }
    }
    out.push_back(rest);
    return out;
}

SymMono pb_mono_gcd(const SymMono& a, const SymMono& b) {
    SymMono r;
    size_t j = 0;
    for (auto& [s, k] : a.f) {
        while (j < b.f.size() && b.f[j].first < s) ++j;
        if (j < b.f.size() && b.f[j].first == s)
            r.f.emplace_back(s, std::min(k, b.f[j].second));
    }
    return r;
}

// Canonical representative of sigma on the branch: coefficients reduced
// modulo the constraint basis, shared monomial and rational content
// stripped.  Returns nullopt when the denominator vanishes on the branch.
std::optional<FracS> sigma_on_branch(const FracS& s,
                                     const std::vector<CoeffPoly>& gb) {
    if (gb.empty()) return s.reduced();
    PolyS n, d;
    for (auto& [m, c] : s.num.t) {
        CoeffPoly r = reduce_mod(c, gb, TermOrder::Graded);
        if (!r.is_zero()) n.t.emplace(m, r);
    }
    for (auto& [m, c] : s.den.t) {
        CoeffPoly r = reduce_mod(c, gb, TermOrder::Graded);
        if (!r.is_zero()) d.t.emplace(m, r);
    }
    if (d.is_zero()) return std::nullopt;
    if (n.is_zero()) return FracS(PolyS(), lift(PolyQ(Rat(1))));
    std::optional<SymMono> g;
    for (auto* p : {&n, &d})
        for (auto& [m, c] : p->t) {
            SymMono mc = pb_mono_content(c);
            g = g ? pb_mono_gcd(*g, mc) : mc;
            if (g->is_one()) break;
        }
    if (g && !g->is_one()) {
        for (auto* p : {&n, &d})
            for (auto& [m, c] : p->t) c = pb_divide_mono(c, *g);
    }
    return FracS(std::move(n), std::move(d)).reduced();
}

// Eliminate leftover candidate symbols from the constraints: a constraint
// linear in a non-param symbol with a params-only coefficient pins that
// symbol.  Returns false when mixed constraints remain unresolved.
bool resolve_mixed_constraints(Assignment& asg, std::vector<CoeffPoly>& cons,
                               std::vector<CoeffPoly>& nonvanish,
                               const std::set<uint32_t>& nz) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < cons.size(); ++i) {
            CoeffPoly& e = cons[i];
            if (e.is_zero() || e.params_only()) continue;
            for (Sym s : e.syms()) {
                if (s.is_param()) continue;
                if (e.deg_of(s) != 1) continue;
                auto parts = e.by_powers_of(s);
                if (!parts[1].params_only()) continue;
                SymFrac v(-parts[0], parts[1]);
                for (auto& [code, val] : asg.values) {
                    uint32_t d1 = val.num.deg_of(s), d2 = val.den.deg_of(s);
                    if (d1 == 0 && d2 == 0) continue;
                    CoeffPoly nn = val.num.substituted(s, v.num, v.den);
                    CoeffPoly nd = val.den.substituted(s, v.num, v.den);
                    for (uint32_t k = d1; k < d2; ++k) nn = nn * v.den;
                    for (uint32_t k = d2; k < d1; ++k) nd = nd * v.den;
                    val = SymFrac(nn, nd);
                }
                asg.values.insert_or_assign(s.code, v);
                asg.free_syms.erase(s.code);
                CoeffPoly den = parts[1].normalized();
                if (!den.is_constant() &&
                    std::find(nonvanish.begin(), nonvanish.end(), den) ==
                        nonvanish.end())
                    nonvanish.push_back(den);
                for (auto& cc : cons)
                    if (!cc.is_zero() && cc.contains(s))
                        cc = strip_nonzero(cc.substituted(s, v.num, v.den), nz);
                progress = true;
                break;
            }
            if (progress) break;
        }
    }
    std::vector<CoeffPoly> kept;
    for (auto& c : cons) {
        if (c.is_zero()) continue;
        if (!c.params_only()) return false;
        kept.push_back(c.normalized());
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    cons = std::move(kept);
    return true;
}

}  // namespace

bool verify_sigma_mod(const FracS& sigma, const Ode2& ode,
                      const std::vector<CoeffPoly>& constraints) {
    FracS r;
    if (verify_sigma(sigma, ode, &r)) return true;
    if (constraints.empty()) return false;
    return reduces_to_zero(r.num, constraint_basis(constraints));
}

bool sigma_equal_mod(const FracS& a, const FracS& b,
                     const std::vector<CoeffPoly>& constraints) {
    PolyS diff = a.num * b.den - b.num * a.den;
    if (diff.is_zero()) return true;
    if (constraints.empty()) return false;
    return reduces_to_zero(diff, constraint_basis(constraints));
}

ParamReport run_parametric(const Ode2& ode, const SearchBudget& budget) {
    ParamReport rep;
    auto start = Clock::now();
    DegreeReport dr = degree_report(ode);
    uint32_t off = dr.kind == BoundKind::Excess ? dr.offset : 0;

    for (uint32_t n = 1; n <= budget.n_max; ++n) {
        double rem = budget.timeout_seconds - seconds_since(start);
        if (rem <= 0) {
            rep.budget_exhausted = true;
            break;
        }
        PolyS pc = generic_xyz(n + off, SymKind::A);
        PolyS qc = generic_xyz(n, SymKind::B);
        AlgSystem sys = extract_system(build_determining_identity(ode, pc, qc));

        SolveBudget sb = budget.solve;
        sb.timeout_seconds = rem;
        SolveOutcome out =
            solve_system(sys, sb, SolveMode::Parametric, budget.nonzero_params);
        rep.budget_exhausted = rep.budget_exhausted || out.exhausted;

        const std::set<uint32_t>& nz = budget.nonzero_params;
        std::vector<ParamBranch> found;
        for (const Assignment& br : out.branches) {
            if (br.unresolved_algebraic) {
                ParamBranch pb;
                pb.constraints = br.constraints;
                pb.nonvanish = br.nonvanish;
                pb.assignment = br;
                pb.unresolved_algebraic = true;
                pb.relations = br.unresolved_relations;
                found.push_back(std::move(pb));
                continue;
            }
            Assignment asg = br;
            // param eliminations are already folded into the constraints;
            // keep the parameters symbolic in the assignment
            for (auto it = asg.values.begin(); it != asg.values.end();)
                it = Sym{it->first}.is_param() ? asg.values.erase(it)
                                               : std::next(it);
            std::vector<CoeffPoly> cons;
            for (auto& c : br.constraints) {
                CoeffPoly s = strip_nonzero(c, nz);
                if (!s.is_zero()) cons.push_back(s);
            }
            std::vector<CoeffPoly> nonvanish = br.nonvanish;
            if (!resolve_mixed_constraints(asg, cons, nonvanish, nz)) {
                if (std::getenv("SYMSEEK_PARAM_DEBUG"))
                    fprintf(stderr, "param: branch dropped (mixed constraints)\n");
                continue;
            }
            if (std::getenv("SYMSEEK_PARAM_DEBUG")) {
                fprintf(stderr, "param: branch cons:");
                for (auto& c : cons) fprintf(stderr, " [%s]", c.str().c_str());
                fprintf(stderr, "\n");
            }

            FracS sigma;
            Assignment picked;
            bool have_sigma = false;
            for (auto& g : gauge_choices(asg.free_syms)) {
                Assignment ext = with_gauge(asg, g);
                FracS p = eval_candidate(pc, ext);
                FracS q = eval_candidate(qc, ext);
                if (std::getenv("SYMSEEK_PARAM_DEBUG"))
                    fprintf(stderr, "param:   gauge p=%s q=%s\n",
                            p.str().c_str(), q.str().c_str());
                if (p.num.is_zero() || q.num.is_zero()) continue;
                FracS s = (p / q).reduced();
                if (s.num.is_zero()) continue;
                if (!verify_sigma_mod(s, ode, cons)) {
                    if (std::getenv("SYMSEEK_PARAM_DEBUG"))
                        fprintf(stderr, "param:   verify failed for %s\n",
                                s.str().c_str());
                    continue;
                }
                sigma = s;
                picked = ext;
                have_sigma = true;
                break;
            }
            if (std::getenv("SYMSEEK_PARAM_DEBUG"))
                fprintf(stderr, "param: sigma %s\n",
                        have_sigma ? sigma.str().c_str() : "(none)");
            if (!have_sigma) continue;

            // split into codimension-one components: a factor of some
            // constraint that divides all of them cuts out a component
            std::vector<std::vector<CoeffPoly>> pieces;
            if (cons.empty()) {
                pieces.push_back({});
            } else {
                std::vector<CoeffPoly> factors;
                for (auto& c : cons)
                    for (auto& f : constraint_factors(c, nz)) {
                        CoeffPoly fn = f.normalized();
                        if (std::find(factors.begin(), factors.end(), fn) ==
                            factors.end())
                            factors.push_back(fn);
                    }
                for (auto& f : factors) {
                    std::vector<CoeffPoly> single{f};
                    bool covers = true;
                    for (auto& c : cons)
                        if (!reduce_mod(c, single, TermOrder::Graded).is_zero()) {
                            covers = false;
                            break;
                        }
                    if (covers) pieces.push_back(single);
                }
                if (pieces.empty()) pieces.push_back(cons);
            }

            for (auto& piece : pieces) {
                ParamBranch pb;
                pb.nonvanish = nonvanish;
                pb.sigma = sigma;
                pb.assignment = picked;
                if (!piece.empty()) {
                    std::vector<CoeffPoly> gb = constraint_basis(piece);
                    bool bad = false;
                    for (auto& g : gb)
                        if (g.is_constant() && !g.is_zero()) bad = true;
                    for (auto& nv : nonvanish)
                        if (reduce_mod(nv, gb, TermOrder::Graded).is_zero())
                            bad = true;
                    for (auto code : nz)
                        if (reduce_mod(CoeffPoly::var(Sym{code}), gb,
                                       TermOrder::Graded)
                                .is_zero())
                            bad = true;
                    if (std::getenv("SYMSEEK_PARAM_DEBUG")) {
                        fprintf(stderr, "param:   piece%s:", bad ? " (bad)" : "");
                        for (auto& g : gb) fprintf(stderr, " [%s]", g.str().c_str());
                        fprintf(stderr, "\n");
                    }
                    if (bad) continue;
                    for (auto& g : gb) g = g.normalized();
                    std::sort(gb.begin(), gb.end());
                    auto sb2 = sigma_on_branch(sigma, gb);
                    if (!sb2) continue;  // sigma singular on this component
                    pb.sigma = *sb2;
                    pb.constraints = std::move(gb);
                }
                found.push_back(std::move(pb));
            }
        }
        if (!found.empty()) {
            auto ckey = [](const std::vector<CoeffPoly>& cs) {
                std::vector<std::string> ss;
                for (auto& c : cs) ss.push_back(c.str());
                std::sort(ss.begin(), ss.end());
                return ss;
            };
            std::vector<ParamBranch> uniq;
            for (auto& pb : found) {
                bool dup = false;
                for (auto& u : uniq) {
                    if (pb.unresolved_algebraic != u.unresolved_algebraic) continue;
                    if (ckey(pb.constraints) != ckey(u.constraints)) continue;
                    if (pb.unresolved_algebraic ||
                        sigma_equal_mod(pb.sigma, u.sigma, u.constraints)) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) uniq.push_back(std::move(pb));
            }
            // drop refinements: branch i is redundant when some branch j has
            // a smaller constraint ideal and the sigmas agree on branch i
            std::vector<bool> keep(uniq.size(), true);
            for (size_t i = 0; i < uniq.size(); ++i) {
                bool refined = false;
                for (size_t j = 0; j < uniq.size() && !refined; ++j) {
                    if (i == j || uniq[i].unresolved_algebraic ||
                        uniq[j].unresolved_algebraic)
                        continue;
                    if (ckey(uniq[i].constraints) == ckey(uniq[j].constraints))
                        continue;
                    bool contained = true;
                    if (!uniq[j].constraints.empty()) {
                        if (uniq[i].constraints.empty()) continue;
                        for (auto& c : uniq[j].constraints)
                            if (!reduce_mod(c, uniq[i].constraints,
                                            TermOrder::Graded)
                                     .is_zero()) {
                                contained = false;
                                break;
                            }
                    }
                    if (contained &&
                        sigma_equal_mod(uniq[i].sigma, uniq[j].sigma,
                                        uniq[i].constraints)) {
                        refined = true;
                        if (std::getenv("SYMSEEK_PARAM_DEBUG"))
                            fprintf(stderr, "param:   drop %zu by %zu (sigma_j=%s)\n",
                                    i, j, uniq[j].sigma.str().c_str());
                    }
                }
                if (std::getenv("SYMSEEK_PARAM_DEBUG") && refined) {
                    fprintf(stderr, "param:   refined away:");
                    for (auto& c : uniq[i].constraints)
                        fprintf(stderr, " [%s]", c.str().c_str());
                    fprintf(stderr, " sigma=%s\n", uniq[i].sigma.str().c_str());
                }
                keep[i] = !refined;
            }
            std::vector<ParamBranch> kept;
            for (size_t i = 0; i < uniq.size(); ++i)
                if (keep[i]) kept.push_back(std::move(uniq[i]));
            for (auto& pb : kept) {
                if (pb.constraints.empty() && !pb.unresolved_algebraic)
                    rep.unconstrained.push_back(std::move(pb));
                else
                    rep.branches.push_back(std::move(pb));
            }
            rep.degree = n;
            break;
        }
    }
    return rep;
}

}  // namespace symseek
