#include "symseek/groebner.hpp"

#include <algorithm>

namespace symseek {

namespace {

// split into (non-param part, param part)
std::pair<SymMono, SymMono> split_blocks(const SymMono& m) {
    SymMono ab, par;
    for (auto& [c, k] : m.f) {
        if (Sym{c}.kind() == SymKind::Param)
            par.f.emplace_back(c, k);
        else
            ab.f.emplace_back(c, k);
    }
    return {ab, par};
}

}  // namespace

bool symmono_less(const SymMono& a, const SymMono& b, TermOrder order) {
    if (order == TermOrder::Graded) return a < b;
    auto [aa, ap] = split_blocks(a);
    auto [ba, bp] = split_blocks(b);
    if (aa != ba) return aa < ba;
    return ap < bp;
}

const std::pair<const SymMono, Rat>& lead_term(const CoeffPoly& f, TermOrder order) {
    if (order == TermOrder::Graded) return *f.t.rbegin();
    auto best = f.t.begin();
    for (auto it = std::next(f.t.begin()); it != f.t.end(); ++it)
        if (symmono_less(best->first, it->first, order)) best = it;
    return *best;
}

CoeffPoly reduce_mod(const CoeffPoly& f, const std::vector<CoeffPoly>& basis,
                     TermOrder order) {
    CoeffPoly rem;
    CoeffPoly work = f;
    while (!work.is_zero()) {
        auto& [wm, wc] = lead_term(work, order);
        bool reduced = false;
        for (auto& g : basis) {
            if (g.is_zero()) continue;
            auto& [gm, gc] = lead_term(g, order);
            if (!gm.divides(wm)) continue;
            SymMono q = gm.quotient_into(wm);
            Rat scale = wc / gc;
            // work -= scale * q * g
            for (auto& [m, c] : g.t) work.add_term(q * m, -(scale * c));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(wm, wc);
            CoeffPoly next;
            for (auto& [m, c] : work.t)
                if (!(m == wm)) next.t.emplace(m, c);
            work = next;
        }
    }
    return rem;
}

std::vector<CoeffPoly> groebner_basis(std::vector<CoeffPoly> gens, TermOrder order,
                                      const GroebnerBudget& budget) {
    std::vector<CoeffPoly> basis;
    for (auto& g : gens) {
        CoeffPoly n = g.normalized();
        if (!n.is_zero()) basis.push_back(n);
    }
    if (basis.empty()) return basis;

    struct Pair {
        size_t i, j;
        SymMono lcm;
    };
    std::vector<Pair> pairs;
    auto add_pairs_for = [&](size_t j) {
        auto& [lmj, _] = lead_term(basis[j], order);
        for (size_t i = 0; i < j; ++i) {
            auto& [lmi, __] = lead_term(basis[i], order);
            pairs.push_back({i, j, lmi.lcm(lmj)});
        }
    };
    for (size_t j = 0; j < basis.size(); ++j) add_pairs_for(j);

    size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > budget.max_pairs)
            throw BudgetExhausted("groebner: pair limit exceeded");
        // normal selection: smallest lcm first
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k)
            if (symmono_less(pairs[k].lcm, pairs[best].lcm, order)) best = k;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + best);

        auto& [lmi, lci] = lead_term(basis[pr.i], order);
        auto& [lmj, lcj] = lead_term(basis[pr.j], order);
        // product criterion
        if (pr.lcm == lmi * lmj) continue;
        // chain criterion: some k with lm_k | lcm and both pairs already gone
        bool chained = false;
        for (size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            auto& [lmk, _] = lead_term(basis[k], order);
            if (!lmk.divides(pr.lcm)) continue;
            bool ik_present = false, jk_present = false;
            for (auto& p : pairs) {
                if ((p.i == std::min(pr.i, k) && p.j == std::max(pr.i, k))) ik_present = true;
                if ((p.i == std::min(pr.j, k) && p.j == std::max(pr.j, k))) jk_present = true;
            }
            if (!ik_present && !jk_present) chained = true;
        }
        if (chained) continue;

        // S-polynomial
        SymMono qi = lmi.quotient_into(pr.lcm);
        SymMono qj = lmj.quotient_into(pr.lcm);
        CoeffPoly s;
        for (auto& [m, c] : basis[pr.i].t) s.add_term(qi * m, c / lci);
        for (auto& [m, c] : basis[pr.j].t) s.add_term(qj * m, -(c / lcj));
        CoeffPoly r = reduce_mod(s, basis, order).normalized();
        if (r.is_zero()) continue;
        basis.push_back(r);
        if (basis.size() > budget.max_basis_size)
            throw BudgetExhausted("groebner: basis size limit exceeded");
        add_pairs_for(basis.size() - 1);
    }

    // interreduce to the reduced basis
    // drop elements whose lead is divisible by another lead
    std::vector<CoeffPoly> kept;
    for (size_t i = 0; i < basis.size(); ++i) {
        auto& [lmi, _] = lead_term(basis[i], order);
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            auto& [lmj, __] = lead_term(basis[j], order);
            if (lmj.divides(lmi)) {
                if (!(lmi == lmj) || j < i) redundant = true;
            }
        }
        if (!redundant) kept.push_back(basis[i]);
    }
    // full tail reduction
    std::vector<CoeffPoly> reduced;
    for (size_t i = 0; i < kept.size(); ++i) {
        std::vector<CoeffPoly> others;
        for (size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        CoeffPoly r = reduce_mod(kept[i], others, order).normalized();
        if (!r.is_zero()) reduced.push_back(r);
    }
    std::sort(reduced.begin(), reduced.end());
    return reduced;
}

}  // namespace symseek
