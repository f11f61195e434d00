#include "symseek/solve.hpp"

#include <algorithm>
#include <chrono>

namespace symseek {

namespace {

CoeffPoly cp_pow(const CoeffPoly& a, uint32_t k) {
    CoeffPoly r(Rat(1));
    for (uint32_t i = 0; i < k; ++i) r = r * a;
    return r;
}

Rat signed_content(const CoeffPoly& c) {
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [m, r] : c.t) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), r.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.get_den().get_mpz_t());
    }
    Rat r(num_gcd, den_lcm);
    r.canonicalize();
    if (sgn(c.lead().second) < 0) r = -r;
    return r;
}

SymMono symmono_gcd(const SymMono& a, const SymMono& b) {
    SymMono r;
    size_t j = 0;
    for (auto& [s, k] : a.f) {
        while (j < b.f.size() && b.f[j].first < s) ++j;
        if (j < b.f.size() && b.f[j].first == s)
            r.f.emplace_back(s, std::min(k, b.f[j].second));
    }
    return r;
}

SymMono monomial_content(const CoeffPoly& c) {
    SymMono g = c.t.begin()->first;
    for (auto& [m, r] : c.t) {
        g = symmono_gcd(g, m);
        if (g.is_one()) break;
    }
    return g;
}

CoeffPoly divide_by_mono(const CoeffPoly& c, const SymMono& m) {
    CoeffPoly r;
    for (auto& [mm, cc] : c.t) r.t.emplace(m.quotient_into(mm), cc);
    return r;
}

}  // namespace

SymFrac::SymFrac(CoeffPoly n, CoeffPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw ZeroDenominator();
    if (num.is_zero()) {
        den = CoeffPoly(Rat(1));
        return;
    }
    SymMono g = symmono_gcd(monomial_content(num), monomial_content(den));
    if (!g.is_one()) {
        num = divide_by_mono(num, g);
        den = divide_by_mono(den, g);
    }
    Rat c = signed_content(den);
    Rat inv = Rat(1) / c;
    num = num * inv;
    den = den * inv;
}

std::string SymFrac::str() const {
    if (num.is_zero()) return "0";
    if (den.is_constant() && den.constant_value() == 1) return num.str();
    std::string ns = num.t.size() == 1 ? num.str() : "(" + num.str() + ")";
    std::string ds = den.t.size() == 1 ? den.str() : "(" + den.str() + ")";
    return ns + "/" + ds;
}

std::string Assignment::key() const {
    std::string k;
    for (auto& [code, v] : values) {
        k += Sym{code}.name();
        k += "=";
        k += v.str();
        k += ";";
    }
    k += "|C:";
    for (auto& c : constraints) {
        k += c.str();
        k += ";";
    }
    k += "|U:";
    for (auto& c : unresolved_relations) {
        k += c.str();
        k += ";";
    }
    if (unresolved_algebraic) k += "!";
    return k;
}

namespace {

struct State {
    std::vector<CoeffPoly> eqs;
    std::map<uint32_t, SymFrac> values;
    std::set<uint32_t> remaining;  // unassigned non-param symbols
    std::set<uint32_t> remaining_params;
    std::vector<CoeffPoly> constraints;
    std::vector<CoeffPoly> nonvanish;
};

struct Ctx {
    SolveMode mode;
    const std::set<uint32_t>* nonzero;
    std::chrono::steady_clock::time_point deadline;
    int max_splits;
    GroebnerBudget gb_budget;
    int splits = 0;
    bool exhausted = false;
    std::vector<Assignment> out;
    std::set<std::string> seen_keys;
};

void sort_unique(std::vector<CoeffPoly>& eqs) {
    std::sort(eqs.begin(), eqs.end());
    eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
}

// substitute s := v into every stored object of the state
bool assign(State& st, Sym s, const SymFrac& v, Ctx& ctx) {
    if (ctx.nonzero->count(s.code) && v.is_zero()) return false;
    for (auto& [code, val] : st.values) {
        uint32_t d1 = val.num.deg_of(s), d2 = val.den.deg_of(s);
        if (d1 == 0 && d2 == 0) continue;
        CoeffPoly nn = val.num.substituted(s, v.num, v.den);
        CoeffPoly nd = val.den.substituted(s, v.num, v.den);
        if (d2 > d1) nn = nn * cp_pow(v.den, d2 - d1);
        if (d1 > d2) nd = nd * cp_pow(v.den, d1 - d2);
        if (nd.is_zero()) return false;
        val = SymFrac(nn, nd);
    }
    st.values.insert_or_assign(s.code, v);
    st.remaining.erase(s.code);
    st.remaining_params.erase(s.code);
    std::vector<CoeffPoly> next;
    for (auto& e : st.eqs) {
        CoeffPoly e2 = e.substituted(s, v.num, v.den).normalized();
        if (!e2.is_zero()) next.push_back(e2);
    }
    sort_unique(next);
    st.eqs = std::move(next);
    if (s.is_param()) {
        for (auto* list : {&st.constraints, &st.nonvanish}) {
            std::vector<CoeffPoly> nl;
            for (auto& c : *list)
                nl.push_back(c.substituted(s, v.num, v.den).normalized());
            *list = std::move(nl);
        }
    }
    return true;
}

// symbols of a monomial that may consistently be set to zero
std::vector<Sym> zeroable_syms(const SymMono& m, const Ctx& ctx) {
    std::vector<Sym> out;
    for (auto& [code, k] : m.f) {
        Sym s{code};
        if (s.is_param()) {
            if (ctx.mode == SolveMode::Parametric && !ctx.nonzero->count(code))
                out.push_back(s);
        } else {
            out.push_back(s);
        }
    }
    return out;
}

bool coeff_invertible(const CoeffPoly& a, const Ctx& ctx) {
    if (a.is_constant()) return true;
    if (!a.params_only()) return false;
    if (ctx.mode == SolveMode::NonParametric) return true;
    // parametric: invertible if it is a monomial in declared-nonzero params
    if (a.t.size() == 1) {
        for (auto& [code, k] : a.t.begin()->first.f)
            if (!ctx.nonzero->count(code)) return false;
        return true;
    }
    return false;
}

enum class Step { Progress, Stuck, Dead };

// apply one deterministic non-splitting rule
Step simplify_once(State& st, Ctx& ctx) {
    for (size_t i = 0; i < st.eqs.size(); ++i) {
        const CoeffPoly& e = st.eqs[i];
        if (e.is_constant()) return Step::Dead;
        if (e.params_only()) {
            if (ctx.mode == SolveMode::NonParametric) return Step::Dead;
            if (e.t.size() == 1) {
                auto z = zeroable_syms(e.t.begin()->first, ctx);
                if (z.empty()) return Step::Dead;
                if (z.size() == 1)
                    return assign(st, z[0], SymFrac(), ctx) ? Step::Progress
                                                            : Step::Dead;
                continue;  // split candidate
            }
            CoeffPoly c = e.normalized();
            st.eqs.erase(st.eqs.begin() + i);
            for (auto& nv : st.nonvanish)
                if (nv == c) return Step::Dead;
            if (std::find(st.constraints.begin(), st.constraints.end(), c) ==
                st.constraints.end())
                st.constraints.push_back(c);
            return Step::Progress;
        }
        if (e.t.size() == 1) {
            auto z = zeroable_syms(e.t.begin()->first, ctx);
            if (z.empty()) return Step::Dead;
            if (z.size() == 1)
                return assign(st, z[0], SymFrac(), ctx) ? Step::Progress : Step::Dead;
        }
    }
    // linear elimination, constant coefficients first
    for (int pass = 0; pass < 2; ++pass) {
        for (auto& e : st.eqs) {
            for (auto s : e.syms()) {
                if (s.is_param() && ctx.mode == SolveMode::NonParametric) continue;
                if (e.deg_of(s) != 1) continue;
                auto parts = e.by_powers_of(s);
                const CoeffPoly& A = parts[1];
                if (pass == 0 ? !A.is_constant() : !coeff_invertible(A, ctx)) continue;
                return assign(st, s, SymFrac(-parts[0], A), ctx) ? Step::Progress
                                                                 : Step::Dead;
            }
        }
    }
    return Step::Stuck;
}

void emit(const State& st, Ctx& ctx) {
    // trivial filter: at least one non-param symbol must be nonzero
    bool nontrivial = false;
    for (auto& [code, v] : st.values)
        if (!Sym{code}.is_param() && !v.is_zero()) nontrivial = true;
    if (!st.remaining.empty()) nontrivial = true;  // free symbols count
    if (!nontrivial) return;

    Assignment a;
    a.values = st.values;
    a.free_syms = st.remaining;
    a.constraints = st.constraints;
    a.nonvanish = st.nonvanish;
    // fold parameter eliminations into constraint form p*den - num = 0
    for (auto& [code, v] : st.values) {
        Sym s{code};
        if (!s.is_param()) continue;
        CoeffPoly rel = (CoeffPoly::var(s) * v.den - v.num).normalized();
        if (!rel.is_zero()) a.constraints.push_back(rel);
    }
    // a constraint that is a pure monomial in nonzero params kills the branch
    for (auto& c : a.constraints) {
        if (c.is_constant()) return;
        if (c.t.size() == 1) {
            bool all_nonzero = true;
            for (auto& [code, k] : c.t.begin()->first.f)
                if (!ctx.nonzero->count(code)) all_nonzero = false;
            if (all_nonzero) return;
        }
    }
    if (ctx.seen_keys.insert(a.key()).second) ctx.out.push_back(a);
}

void emit_unresolved(const State& st, Ctx& ctx,
                     const std::vector<CoeffPoly>& relations) {
    Assignment a;
    a.values = st.values;
    a.free_syms = st.remaining;
    a.constraints = st.constraints;
    a.nonvanish = st.nonvanish;
    a.unresolved_algebraic = true;
    a.unresolved_relations = relations;
    if (ctx.seen_keys.insert(a.key()).second) ctx.out.push_back(a);
}

void explore(State st, Ctx& ctx, bool groebner_done) {
    if (std::chrono::steady_clock::now() > ctx.deadline || ctx.splits > ctx.max_splits) {
        ctx.exhausted = true;
        return;
    }
    while (true) {
        Step r = simplify_once(st, ctx);
        if (r == Step::Dead) return;
        if (r == Step::Stuck) break;
    }
    if (st.eqs.empty()) {
        emit(st, ctx);
        return;
    }

    // 1. zero products: a single-term equation splits over its symbols
    for (auto& e : st.eqs) {
        if (e.t.size() != 1) continue;
        auto z = zeroable_syms(e.t.begin()->first, ctx);
        if (z.size() < 2) continue;
        ctx.splits += static_cast<int>(z.size()) - 1;
        for (auto s : z) {
            State br = st;
            if (assign(br, s, SymFrac(), ctx)) explore(std::move(br), ctx, groebner_done);
        }
        return;
    }
    // 2. factorable equation: common monomial content
    for (size_t i = 0; i < st.eqs.size(); ++i) {
        SymMono g = monomial_content(st.eqs[i]);
        auto z = zeroable_syms(g, ctx);
        if (z.empty()) continue;
        CoeffPoly rest = divide_by_mono(st.eqs[i], g);
        ctx.splits += static_cast<int>(z.size());
        for (auto s : z) {
            State br = st;
            if (assign(br, s, SymFrac(), ctx)) explore(std::move(br), ctx, groebner_done);
        }
        State br = st;
        br.eqs[i] = rest.normalized();
        sort_unique(br.eqs);
        explore(std::move(br), ctx, groebner_done);
        return;
    }
    // 3. quadratic in one symbol with exact-square discriminant
    for (auto& e : st.eqs) {
        for (auto s : e.syms()) {
            if (s.is_param() && ctx.mode == SolveMode::NonParametric) continue;
            if (e.deg_of(s) != 2) continue;
            auto parts = e.by_powers_of(s);
            const CoeffPoly& A = parts[2];
            const CoeffPoly& B = parts[1];
            const CoeffPoly& C = parts[0];
            if (!coeff_invertible(A, ctx)) continue;
            CoeffPoly D = B * B - A * C * Rat(4);
            if (D.is_zero()) {
                State br = st;
                if (assign(br, s, SymFrac(-B, A * Rat(2)), ctx))
                    explore(std::move(br), ctx, groebner_done);
                return;
            }
            auto root = D.sqrt_exact();
            if (root) {
                ctx.splits += 1;
                for (int sign : {+1, -1}) {
                    State br = st;
                    CoeffPoly n = (sign > 0) ? *root - B : -*root - B;
                    if (assign(br, s, SymFrac(n, A * Rat(2)), ctx))
                        explore(std::move(br), ctx, groebner_done);
                }
                return;
            }
            if (D.params_only()) {
                // root lives in an algebraic extension of the parameters
                emit_unresolved(st, ctx, {e, D});
                return;
            }
        }
    }
    // 4. parametric: linear with a parameter-polynomial coefficient
    if (ctx.mode == SolveMode::Parametric) {
        for (auto& e : st.eqs) {
            for (auto s : e.syms()) {
                if (e.deg_of(s) != 1) continue;
                auto parts = e.by_powers_of(s);
                const CoeffPoly& A = parts[1];
                if (!A.params_only() || A.is_constant()) continue;
                ctx.splits += 1;
                {
                    State br = st;  // degenerate case A = 0
                    br.eqs.push_back(A.normalized());
                    sort_unique(br.eqs);
                    explore(std::move(br), ctx, groebner_done);
                }
                {
                    State br = st;  // generic case A != 0
                    CoeffPoly nv = A.normalized();
                    if (std::find(br.nonvanish.begin(), br.nonvanish.end(), nv) ==
                        br.nonvanish.end())
                        br.nonvanish.push_back(nv);
                    if (assign(br, s, SymFrac(-parts[0], A), ctx))
                        explore(std::move(br), ctx, groebner_done);
                }
                return;
            }
        }
    }
    // 5. Groebner fallback, once per chain
    if (!groebner_done) {
        try {
            auto basis = groebner_basis(st.eqs, TermOrder::Graded, ctx.gb_budget);
            for (auto& b : basis)
                if (b.is_constant()) return;
            if (basis != st.eqs) {
                st.eqs = std::move(basis);
                explore(std::move(st), ctx, true);
                return;
            }
        } catch (const BudgetExhausted&) {
            ctx.exhausted = true;
            return;
        }
    }
    if (std::getenv("SYMSEEK_SOLVE_DEBUG")) {
        fprintf(stderr, "stall: eqs=%zu remaining=%zu\n", st.eqs.size(),
                st.remaining.size());
        for (size_t i = 0; i < st.eqs.size() && i < 12; ++i)
            fprintf(stderr, "  %s\n", st.eqs[i].str().c_str());
    }
    ctx.exhausted = true;  // stalled: coverage incomplete
}

bool quadratic_homogeneous(const std::vector<CoeffPoly>& eqs) {
    for (auto& e : eqs)
        for (auto& [m, c] : e.t) {
            uint32_t d = 0;
            for (auto& [code, k] : m.f)
                if (!Sym{code}.is_param()) d += k;
            if (d != 2) return false;
        }
    return true;
}

}  // namespace

std::pair<AlgSystem, Assignment> propagate_linear(const AlgSystem& sys) {
    std::vector<CoeffPoly> eqs;
    for (auto& e : sys.equations) {
        CoeffPoly n = e.normalized();
        if (!n.is_zero()) eqs.push_back(n);
    }
    Assignment partial;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < eqs.size() && !changed; ++i) {
            const CoeffPoly& e = eqs[i];
            if (e.is_constant()) throw Inconsistent("nonzero constant equation");
            Sym target{0};
            SymFrac value;
            bool found = false;
            if (e.t.size() == 1) {
                // c * s^k = 0 with a single symbol
                auto& m = e.t.begin()->first;
                if (m.f.size() == 1 && !Sym{m.f[0].first}.is_param()) {
                    target = Sym{m.f[0].first};
                    value = SymFrac();
                    found = true;
                }
            }
            if (!found) {
                auto syms = e.syms();
                if (syms.size() == 1 && !syms.begin()->is_param() &&
                    e.deg_of(*syms.begin()) == 1) {
                    auto parts = e.by_powers_of(*syms.begin());
                    target = *syms.begin();
                    value = SymFrac(-parts[0], parts[1]);
                    found = true;
                }
            }
            if (!found) continue;
            changed = true;
            std::vector<CoeffPoly> next;
            for (auto& q : eqs) {
                CoeffPoly q2 = q.substituted(target, value.num, value.den).normalized();
                if (!q2.is_zero()) next.push_back(q2);
            }
            sort_unique(next);
            eqs = std::move(next);
            for (auto& [code, v] : partial.values) {
                uint32_t d1 = v.num.deg_of(target), d2 = v.den.deg_of(target);
                if (d1 == 0 && d2 == 0) continue;
                CoeffPoly nn = v.num.substituted(target, value.num, value.den);
                CoeffPoly nd = v.den.substituted(target, value.num, value.den);
                if (d2 > d1) nn = nn * cp_pow(value.den, d2 - d1);
                if (d1 > d2) nd = nd * cp_pow(value.den, d1 - d2);
                v = SymFrac(nn, nd);
            }
            partial.values.insert_or_assign(target.code, value);
        }
    }
    AlgSystem reduced;
    reduced.equations = eqs;
    for (auto s : sys.unknowns)
        if (!partial.values.count(s.code)) reduced.unknowns.push_back(s);
    for (auto s : reduced.unknowns)
        if (!s.is_param()) partial.free_syms.insert(s.code);
    return {reduced, partial};
}

SolveOutcome solve_system(const AlgSystem& sys, const SolveBudget& budget,
                          SolveMode mode, const std::set<uint32_t>& nonzero_params,
                          const std::vector<Sym>& pivots) {
    Ctx ctx;
    ctx.mode = mode;
    ctx.nonzero = &nonzero_params;
    ctx.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget.timeout_seconds));
    ctx.max_splits = budget.max_case_splits;
    ctx.gb_budget.max_basis_size = budget.max_groebner_basis_size;

    State base;
    for (auto& e : sys.equations) {
        CoeffPoly n = e.normalized();
        if (!n.is_zero()) base.eqs.push_back(n);
    }
    sort_unique(base.eqs);
    for (auto s : sys.unknowns) {
        if (s.is_param())
            base.remaining_params.insert(s.code);
        else
            base.remaining.insert(s.code);
    }

    bool homogeneous = quadratic_homogeneous(base.eqs) && !base.remaining.empty();
    if (!homogeneous && pivots.empty()) {
        explore(base, ctx, false);
    } else {
        std::vector<Sym> order = pivots;
        if (order.empty()) {
            // B-symbols first, low index (low-degree monomial) first, then A, C
            std::vector<Sym> bs, as, cs;
            for (auto s : sys.unknowns) {
                if (s.kind() == SymKind::B) bs.push_back(s);
                if (s.kind() == SymKind::A) as.push_back(s);
                if (s.kind() == SymKind::C) cs.push_back(s);
            }
            auto asc = [](std::vector<Sym>& v) {
                std::sort(v.begin(), v.end(),
                          [](Sym a, Sym b) { return a.index() < b.index(); });
            };
            asc(bs), asc(as), asc(cs);
            order.insert(order.end(), bs.begin(), bs.end());
            order.insert(order.end(), as.begin(), as.end());
            order.insert(order.end(), cs.begin(), cs.end());
        }
        std::vector<Sym> usable;
        for (auto s : order)
            if (base.remaining.count(s.code)) usable.push_back(s);
        auto global_deadline = ctx.deadline;
        for (size_t i = 0; i < usable.size(); ++i) {
            auto now = std::chrono::steady_clock::now();
            if (now > global_deadline) {
                ctx.exhausted = true;
                break;
            }
            // time-slice the remaining budget over the remaining pivots so a
            // dead pivot cannot starve the rest
            auto slice = (global_deadline - now) / (usable.size() - i);
            ctx.deadline = now + slice;
            bool was_exhausted = ctx.exhausted;
            ctx.exhausted = false;
            State st = base;
            size_t before = ctx.out.size();
            if (assign(st, usable[i], SymFrac::constant(Rat(1)), ctx))
                explore(std::move(st), ctx, false);
            ctx.exhausted = ctx.exhausted || was_exhausted;
            if (mode == SolveMode::NonParametric && ctx.out.size() > before) break;
        }
        ctx.deadline = global_deadline;
    }
    std::sort(ctx.out.begin(), ctx.out.end(),
              [](const Assignment& a, const Assignment& b) { return a.key() < b.key(); });
    return {std::move(ctx.out), ctx.exhausted, ctx.splits};
}

FracS eval_candidate(const PolyS& cand, const Assignment& asg) {
    PolyS P = cand;
    CoeffPoly D(Rat(1));
    // values may reference each other's symbols; iterate to a fixed point
    bool changed = true;
    int passes = 0;
    while (changed) {
        if (++passes > 64) {
            if (std::getenv("SYMSEEK_SOLVE_DEBUG")) {
                fprintf(stderr, "cyclic assignment:\n");
                for (auto& [code, v] : asg.values)
                    fprintf(stderr, "  %s := (%s)/(%s)\n", Sym{code}.name().c_str(),
                            v.num.str().c_str(), v.den.str().c_str());
            }
            throw std::logic_error("eval_candidate: cyclic assignment");
        }
        changed = false;
        for (auto& [code, v] : asg.values) {
            Sym s{code};
            uint32_t k = 0;
            for (auto& [m, c] : P.t) k = std::max(k, c.deg_of(s));
            if (k == 0) continue;
            PolyS Q;
            for (auto& [m, c] : P.t) {
                CoeffPoly c2 = c.substituted(s, v.num, v.den);
                c2 = c2 * cp_pow(v.den, k - c.deg_of(s));
                Q.add_term(m, c2);
            }
            P = std::move(Q);
            D = D * cp_pow(v.den, k);
            changed = true;
        }
    }
    PolyS dp;
    dp.t.emplace(Mono::one(), D);
    return FracS(P, dp);
}

}  // namespace symseek
