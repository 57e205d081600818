#include <benchmark/benchmark.h>

#include "msets/asymptotics.hpp"
#include "msets/ek.hpp"
#include "msets/lfun.hpp"
#include "msets/races.hpp"
#include "msets/sieve.hpp"
#include "msets/tau.hpp"

namespace {

using namespace msets;

void BM_PrimesUpTo(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        PrimeTable t = primes_up_to(n);
        benchmark::DoNotOptimize(t.primes.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PrimesUpTo)->Arg(1 << 20)->Arg(1 << 24);

void BM_CharTableBuild(benchmark::State& state) {
    SetDescriptor d = builtin_descriptor("sum2sq");
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        CharTable t = build_char_table(d, n);
        benchmark::DoNotOptimize(t.words().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_CharTableBuild)->Arg(1 << 20)->Arg(1 << 23);

void BM_TauSieve(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        TauTable t = tau_mod_sieve(691, n);
        benchmark::DoNotOptimize(t.residues().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_TauSieve)->Arg(1 << 16)->Arg(1 << 18);

void BM_HurwitzZeta(benchmark::State& state) {
    PrecisionContext ctx;
    ddouble s(2.0), q = ddouble(1.0) / 4.0;
    for (auto _ : state) benchmark::DoNotOptimize(hurwitz_zeta(s, q, ctx));
}
BENCHMARK(BM_HurwitzZeta);

void BM_LLogDerivAt1(benchmark::State& state) {
    PrecisionContext ctx;
    for (auto _ : state) benchmark::DoNotOptimize(l_log_deriv_at_1(-4, ctx));
}
BENCHMARK(BM_LLogDerivAt1);

void BM_EkQuadratic(benchmark::State& state) {
    PrecisionContext ctx;
    for (auto _ : state) benchmark::DoNotOptimize(ek_quadratic(-4, ctx).value);
}
BENCHMARK(BM_EkQuadratic);

void BM_PartialSum(benchmark::State& state) {
    SetDescriptor d = builtin_descriptor("quadsem:-4");
    const std::uint64_t x = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ek_partial_sum(d, x).value);
}
BENCHMARK(BM_PartialSum)->Arg(1 << 20);

void BM_RaceScan(benchmark::State& state) {
    SetDescriptor a = builtin_descriptor("sum2sq");
    SetDescriptor b = builtin_descriptor("hex");
    const std::uint64_t x = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(race(a, b, x).min_margin);
}
BENCHMARK(BM_RaceScan)->Arg(1 << 20);

} // namespace

BENCHMARK_MAIN();
