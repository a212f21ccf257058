#include <benchmark/benchmark.h>

#include "perfgap/arith.hpp"
#include "perfgap/decider.hpp"
#include "perfgap/mersenne.hpp"
#include "perfgap/rn_solver.hpp"

namespace {

using namespace perfgap;

void BM_LucasLehmer(benchmark::State& state) {
    const auto p = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lucas_lehmer(p));
}
BENCHMARK(BM_LucasLehmer)->Arg(127)->Arg(521)->Arg(2203)->Arg(4423);

// Semiprimes with balanced factors, past the trial-division bound.
void BM_FactorizeSemiprime(benchmark::State& state) {
    const BigInt p("1000000007");
    const BigInt q(state.range(0) == 0 ? "998244353" : "1000000000039");
    const BigInt n = p * q;
    for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_FactorizeSemiprime)->Arg(0)->Arg(1);

void BM_Sieve(benchmark::State& state) {
    const RNEquation eq(11, -5);
    const auto m = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sieve(eq, m, 3));
}
BENCHMARK(BM_Sieve)->Arg(8)->Arg(13)->Arg(1024)->Arg(65536);

void BM_DirectSearch(benchmark::State& state) {
    const RNEquation eq(1, 7);
    for (auto _ : state) benchmark::DoNotOptimize(direct_search(eq, 0, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_DirectSearch)->Arg(200)->Arg(2000);

void BM_Decide(benchmark::State& state) {
    const BigInt delta(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(decide(delta));
}
BENCHMARK(BM_Decide)->Arg(3)->Arg(15)->Arg(55)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
