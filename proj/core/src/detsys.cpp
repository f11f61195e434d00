#include "symseek/detsys.hpp"

#include <algorithm>
#include <set>

namespace symseek {

std::vector<Mono> monomials_up_to(uint32_t n, bool use_x, bool use_y, bool use_z) {
    std::vector<Mono> out;
    for (uint32_t d = 0; d <= n; ++d) {
        std::vector<Mono> level;
        for (uint32_t i = 0; i <= d; ++i)
            for (uint32_t j = 0; i + j <= d; ++j) {
                uint32_t k = d - i - j;
                if ((i && !use_x) || (j && !use_y) || (k && !use_z)) continue;
                Mono m;
                m.e = {i, j, k};
                level.push_back(m);
            }
        std::sort(level.begin(), level.end(),
                  [](const Mono& a, const Mono& b) { return b < a; });
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

PolyS generic_poly_on(const std::vector<Mono>& support, SymKind kind,
                      uint32_t start_index, std::vector<Sym>* out_syms) {
    PolyS p;
    uint32_t idx = start_index;
    for (auto& m : support) {
        Sym s = Sym::make(kind, idx++);
        if (out_syms) out_syms->push_back(s);
        p.add_term(m, CoeffPoly::var(s));
    }
    return p;
}

PolyS generic_poly(uint32_t n, bool use_x, bool use_y, bool use_z, SymKind kind,
                   uint32_t start_index, std::vector<Sym>* out_syms) {
    return generic_poly_on(monomials_up_to(n, use_x, use_y, use_z), kind,
                           start_index, out_syms);
}

PolyS build_determining_identity(const Ode2& ode, const PolyS& p, const PolyS& q) {
    const PolyS& M = ode.M;
    const PolyS& N = ode.N;
    PolyS My = M.partial(Var::Y), Mz = M.partial(Var::Z);
    PolyS Ny = N.partial(Var::Y), Nz = N.partial(Var::Z);
    PolyS N2 = N * N, NM = N * M;
    PolyS pq = p * q;
    PolyS z = lift(PolyQ::variable(Var::Z));

    PolyS r = p * p * N2;
    r += pq * (N * Mz - M * Nz);
    r += q * q * (M * Ny - N * My);
    r += N2 * (p * q.partial(Var::X) - q * p.partial(Var::X));
    r += z * N2 * (p * q.partial(Var::Y) - q * p.partial(Var::Y));
    r += NM * (p * q.partial(Var::Z) - q * p.partial(Var::Z));
    return r;
}

AlgSystem extract_system(const PolyS& identity) {
    AlgSystem sys;
    std::set<CoeffPoly> seen;
    std::set<Sym> syms;
    for (auto& [m, c] : identity.t) {
        CoeffPoly n = c.normalized();
        if (n.is_zero()) continue;
        for (auto s : n.syms()) syms.insert(s);
        if (seen.insert(n).second) sys.equations.push_back(n);
    }
    // unknowns grouped by kind, index order within a kind
    std::vector<Sym> order(syms.begin(), syms.end());
    std::stable_sort(order.begin(), order.end(), [](Sym a, Sym b) {
        if (a.kind() != b.kind()) return a.kind() < b.kind();
        return a.index() < b.index();
    });
    sys.unknowns = order;
    return sys;
}

std::string dump_system(const AlgSystem& sys) {
    std::string out;
    for (auto& e : sys.equations) {
        out += e.str();
        out += "\n";
    }
    return out;
}

}  // namespace symseek
