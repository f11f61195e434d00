#include <benchmark/benchmark.h>

#include "symseek/strategies.hpp"

using namespace symseek;

namespace {

PolyQ dense_poly(int deg, uint64_t seed) {
    PolyQ p;
    uint64_t s = seed;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j)
            for (int k = 0; i + j + k <= deg; ++k) {
                s = s * 6364136223846793005ull + 1442695040888963407ull;
                long c = static_cast<long>((s >> 33) % 19) - 9;
                if (c == 0) continue;
                Mono m = Mono::one();
                m.e[0] = i;
                m.e[1] = j;
                m.e[2] = k;
                p.add_term(m, Rat(c));
            }
    return p;
}

void BM_poly_mul(benchmark::State& state) {
    PolyQ a = dense_poly(static_cast<int>(state.range(0)), 1);
    PolyQ b = dense_poly(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_poly_mul)->Arg(3)->Arg(5)->Arg(7);

void BM_poly_gcd(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    PolyQ g = dense_poly(d, 3);
    PolyQ a = g * dense_poly(d, 4);
    PolyQ b = g * dense_poly(d, 5);
    for (auto _ : state) benchmark::DoNotOptimize(poly_gcd(a, b));
}
BENCHMARK(BM_poly_gcd)->Arg(1)->Arg(2)->Arg(3);

void BM_verify_sigma(benchmark::State& state) {
    Ode2 ode = parse_ode(
        "y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)");
    FracS sigma = parse_expression("(-x^2*(y'-1))/(x^2*y-1)");
    for (auto _ : state) benchmark::DoNotOptimize(verify_sigma(sigma, ode));
}
BENCHMARK(BM_verify_sigma);

void BM_worked_example_solve(benchmark::State& state) {
    Ode2 ode = parse_ode(
        "y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)");
    SearchBudget budget;
    budget.n_max = 3;
    budget.timeout_seconds = 60.0;
    for (auto _ : state) {
        SearchReport rep = run_asymm(ode, budget);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_worked_example_solve)->Unit(benchmark::kMillisecond);

void BM_determining_identity(benchmark::State& state) {
    Ode2 ode = parse_ode(
        "y'' = (y'-1)*(x^4*y'+2*x^3*y-x^2*y+y')/((x^2*y-1)*x^2)");
    uint32_t n = static_cast<uint32_t>(state.range(0));
    PolyS pc = generic_poly(n, true, true, true, SymKind::A);
    PolyS qc = generic_poly(n, true, true, true, SymKind::B);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_determining_identity(ode, pc, qc));
}
BENCHMARK(BM_determining_identity)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
