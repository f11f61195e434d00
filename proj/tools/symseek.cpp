#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "symseek/corpus.hpp"

using namespace symseek;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitParse = 1;
constexpr int kExitBudget = 2;
constexpr int kExitNotFound = 3;

double default_timeout() {
    if (const char* env = std::getenv("SYMSEEK_TIMEOUT")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 60.0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string symmetry_rendering(const std::string& sigma) {
    // X = e^{-Intx(sigma)} (d_y - sigma d_y'); the integral stays formal
    return "exp(-Intx(" + sigma + ")) * (d/dy - (" + sigma + ") * d/dy')";
}

SearchReport run_with(const Ode2& ode, const StrategySpec& spec,
                      const SearchBudget& budget) {
    switch (spec.kind) {
        case StrategyKind::NuLinear: return run_nu_linear(ode, budget);
        case StrategyKind::MonomialSeed: return run_monomial_seed(ode, budget);
        case StrategyKind::QDividesN: return run_q_divides_n(ode, budget);
        case StrategyKind::QEqualsUN: return run_q_equals_uN(ode, spec.u, budget);
        case StrategyKind::NOfXOnly: return run_n_of_x(ode, budget);
        case StrategyKind::CommonFactor: return run_common_factor(ode, budget);
        case StrategyKind::Base: return run_asymm(ode, budget);
    }
    throw std::logic_error("unknown strategy");
}

std::string constraints_str(const std::vector<CoeffPoly>& cs) {
    std::string s;
    for (auto& c : cs) {
        if (!s.empty()) s += ", ";
        s += c.str() + " = 0";
    }
    return s;
}

int cmd_solve(const std::string& ode_text, uint32_t max_degree,
              const std::string& strategy, double timeout,
              const std::string& format, bool parametric,
              const std::vector<std::string>& nonzero) {
    Ode2 ode;
    try {
        ode = parse_ode(ode_text);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }

    SearchBudget budget;
    budget.n_max = max_degree;
    budget.timeout_seconds = timeout;
    for (auto& name : nonzero) budget.nonzero_params.insert(Sym::param(name).code);

    if (parametric) {
        ParamReport rep = run_parametric(ode, budget);
        bool any = !rep.branches.empty() || !rep.unconstrained.empty();
        if (format == "json") {
            nlohmann::json j;
            j["degree"] = rep.degree;
            j["budget_exhausted"] = rep.budget_exhausted;
            auto dump_branch = [](const ParamBranch& pb) {
                nlohmann::json b;
                b["sigma"] = pb.unresolved_algebraic ? "" : pb.sigma.str();
                b["constraints"] = nlohmann::json::array();
                for (auto& c : pb.constraints) b["constraints"].push_back(c.str());
                b["nonvanish"] = nlohmann::json::array();
                for (auto& c : pb.nonvanish) b["nonvanish"].push_back(c.str());
                b["unresolved_algebraic"] = pb.unresolved_algebraic;
                b["relations"] = nlohmann::json::array();
                for (auto& c : pb.relations) b["relations"].push_back(c.str());
                return b;
            };
            j["branches"] = nlohmann::json::array();
            for (auto& pb : rep.branches) j["branches"].push_back(dump_branch(pb));
            j["unconstrained"] = nlohmann::json::array();
            for (auto& pb : rep.unconstrained)
                j["unconstrained"].push_back(dump_branch(pb));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "parametric analysis at candidate degree " << rep.degree
                      << "\n";
            for (auto& pb : rep.unconstrained) {
                std::cout << "generic parameters:\n  sigma = " << pb.sigma.str()
                          << "\n  symmetry = " << symmetry_rendering(pb.sigma.str())
                          << "\n";
            }
            for (auto& pb : rep.branches) {
                if (pb.unresolved_algebraic) {
                    std::cout << "branch (UnresolvedAlgebraic):\n  relations: "
                              << constraints_str(pb.relations) << "\n";
                    continue;
                }
                std::cout << "branch [" << constraints_str(pb.constraints) << "]";
                if (!pb.nonvanish.empty()) {
                    std::cout << " (nonzero:";
                    for (auto& nv : pb.nonvanish) std::cout << " " << nv.str();
                    std::cout << ")";
                }
                std::cout << "\n  sigma = " << pb.sigma.str()
                          << "\n  symmetry = " << symmetry_rendering(pb.sigma.str())
                          << "\n";
            }
        }
        if (any) return kExitFound;
        return rep.budget_exhausted ? kExitBudget : kExitNotFound;
    }

    SearchReport rep;
    if (strategy == "auto") {
        rep = run_auto(ode, budget);
    } else {
        auto spec = strategy_from_id(strategy);
        if (!spec) {
            std::cerr << "unknown strategy: " << strategy << "\n";
            return kExitParse;
        }
        rep = run_with(ode, *spec, budget);
    }

    if (!rep.result) {
        if (format == "json") {
            nlohmann::json j;
            j["found"] = false;
            j["budget_exhausted"] = rep.budget_exhausted;
            j["max_degree"] = max_degree;
            std::cout << j.dump(2) << "\n";
        } else if (rep.budget_exhausted) {
            std::cout << "budget exhausted before the search completed\n";
        } else {
            std::cout << "no rational sigma up to degree " << max_degree << "\n";
        }
        return rep.budget_exhausted ? kExitBudget : kExitNotFound;
    }

    const SigmaResult& res = *rep.result;
    std::string sig = res.sigma.str();
    if (format == "json") {
        nlohmann::json j;
        j["found"] = true;
        j["sigma"] = sig;
        j["symmetry"] = symmetry_rendering(sig);
        j["strategy"] = res.strategy.id();
        j["elapsed"] = res.elapsed;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "sigma    = " << sig << "\n"
                  << "symmetry = " << symmetry_rendering(sig) << "\n"
                  << "strategy = " << res.strategy.id() << "\n"
                  << "elapsed  = " << res.elapsed << "s\n";
    }
    return kExitFound;
}

int cmd_verify(const std::string& kind, const std::string& ode_text,
               const std::string& expr, const std::string& sigma_text) {
    try {
        Ode2 ode = parse_ode(ode_text);
        if (kind == "sigma") {
            FracS sigma = parse_expression(expr);
            FracS residual;
            if (verify_sigma(sigma, ode, &residual)) {
                std::cout << "sigma verifies\n";
                return 0;
            }
            std::cout << "residual = " << residual.str() << "\n";
            return 1;
        }
        if (kind == "nu") {
            DarbouxFunction nu = parse_darboux(expr);
            FracS sigma = parse_expression(sigma_text);
            if (verify_nu(nu, sigma, ode)) {
                std::cout << "nu verifies\n";
                return 0;
            }
            std::cout << "logderiv(nu) + sigma = "
                      << (logderiv(nu, ode) + sigma).reduced().str() << "\n";
            return 1;
        }
        if (kind == "fi") {
            DarbouxFunction I = parse_darboux(expr);
            if (verify_first_integral(I, ode)) {
                std::cout << "first integral verifies\n";
                return 0;
            }
            std::cout << "logderiv(I) = " << logderiv(I, ode).reduced().str()
                      << "\n";
            return 1;
        }
        std::cerr << "unknown verify kind: " << kind << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_corpus(const std::string& path, int jobs, const std::string& filter,
               double timeout, const std::string& format) {
    std::vector<CorpusEntry> entries;
    try {
        entries = load_corpus(path, true);
    } catch (const std::exception& e) {
        std::cerr << "corpus error: " << e.what() << "\n";
        return 1;
    }
    SearchBudget budget;
    budget.timeout_seconds = timeout;
    auto reports = run_corpus(entries, budget, jobs, filter);
    bool ok = true;
    if (format == "json") {
        std::cout << reports_to_json(reports) << "\n";
        for (auto& r : reports)
            if (r.status == RunStatus::NotFound || r.status == RunStatus::Error)
                ok = false;
    } else {
        for (auto& r : reports) {
            std::printf("%-20s %-18s %-16s %7.2fs  %s\n", r.id.c_str(),
                        status_name(r.status), r.strategy.c_str(), r.elapsed,
                        r.status == RunStatus::Error ? r.message.c_str()
                                                     : r.sigma.c_str());
            if (r.status == RunStatus::NotFound || r.status == RunStatus::Error)
                ok = false;
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational 2ODE Lie symmetry search"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "find a rational sigma for an ODE");
    std::string ode_text, ode_file, strategy = "auto", format = "text";
    std::vector<std::string> params, nonzero;
    uint32_t max_degree = 7;
    double timeout = default_timeout();
    solve->add_option("ode", ode_text, "ODE text, e.g. \"y'' = y'/x\"");
    solve->add_option("--file", ode_file, "read the ODE from a file");
    solve->add_option("--max-degree", max_degree, "degree cap for the base loop")
        ->default_val(7);
    solve->add_option("--strategy", strategy,
                      "auto, base, nu-linear, q-div-n, q-u-n:x|y|z, n-of-x, "
                      "seed-monomials, common-factor");
    solve->add_option("--timeout", timeout, "budget in seconds");
    solve->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    solve->add_option("--params", params,
                      "treat these symbols as parameters and run the "
                      "parametric branch analysis")
        ->delimiter(',');
    solve->add_option("--nonzero", nonzero, "declared nonzero parameters")
        ->delimiter(',');

    // verify
    auto* verify = app.add_subcommand("verify", "verify sigma / nu / fi exactly");
    std::string vkind, vode, vexpr, vsigma;
    verify->add_option("kind", vkind, "sigma, nu or fi")->required();
    verify->add_option("ode", vode, "ODE text")->required();
    verify->add_option("expr", vexpr, "expression to verify")->required();
    verify->add_option("sigma", vsigma, "sigma (for kind = nu)");

    // corpus
    auto* corpus = app.add_subcommand("corpus", "run a regression corpus");
    std::string cpath, cfilter = "*", cformat = "text";
    int cjobs = 1;
    corpus->add_option("file", cpath, "corpus JSON file")->required();
    corpus->add_option("--jobs", cjobs, "parallel workers");
    corpus->add_option("--filter", cfilter, "glob on entry ids");
    corpus->add_option("--format", cformat, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    double ctimeout = default_timeout();
    corpus->add_option("--timeout", ctimeout, "per-entry budget in seconds");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        try {
            if (!ode_file.empty()) ode_text = read_file(ode_file);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitParse;
        }
        if (ode_text.empty()) {
            std::cerr << "no ODE given\n";
            return kExitParse;
        }
        return cmd_solve(ode_text, max_degree, strategy, timeout, format,
                         !params.empty(), nonzero);
    }
    if (verify->parsed()) return cmd_verify(vkind, vode, vexpr, vsigma);
    if (corpus->parsed()) return cmd_corpus(cpath, cjobs, cfilter, ctimeout, cformat);
    return 0;
}
