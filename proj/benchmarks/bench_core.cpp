#include <benchmark/benchmark.h>

#include "seqper/bernoulli.hpp"
#include "seqper/frobenius.hpp"
#include "seqper/mhs.hpp"
#include "seqper/zeta.hpp"

using namespace seqper;

namespace {

std::shared_ptr<const PrimeWindow> window(u64 lo, u64 hi) {
    return std::make_shared<const PrimeWindow>(sieve_primes(lo, hi));
}

void BM_Sieve(benchmark::State& state) {
    const u64 hi = u64(state.range(0));
    for (auto _ : state) {
        PrimeWindow w = sieve_primes(5, hi);
        benchmark::DoNotOptimize(w.primes.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sieve)->Range(1 << 12, 1 << 22)->Complexity();

void BM_MhsWindow(benchmark::State& state) {
    auto w = window(5, u64(state.range(0)));
    Composition s{{1, 2}};
    for (auto _ : state) {
        SeqElement seq = mhs_window(s, w, 4);
        benchmark::DoNotOptimize(seq.entries().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MhsWindow)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_MhsFastSinglePrime(benchmark::State& state) {
    const u64 p = 9973;
    Composition s{{1, 1, 1}};
    for (auto _ : state) {
        PadicValue v = mhs_fast(s, p, 4);
        benchmark::DoNotOptimize(v.mantissa());
    }
}
BENCHMARK(BM_MhsFastSinglePrime);

void BM_ZetaTable(benchmark::State& state) {
    const u64 p = u64(state.range(0));
    for (auto _ : state) {
        PadicZetaTable t = zeta_table(p, 6);
        benchmark::DoNotOptimize(t.entries.data());
    }
}
BENCHMARK(BM_ZetaTable)->Arg(97)->Arg(499)->Arg(1999);

void BM_BernoulliResidue(benchmark::State& state) {
    const u64 p = u64(state.range(0));
    for (auto _ : state) {
        u64 r = bernoulli_mod_p(p - 3, p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_BernoulliResidue)->Arg(101)->Arg(1009)->Arg(9973);

void BM_EllipticWindow(benchmark::State& state) {
    auto w = window(5, u64(state.range(0)));
    for (auto _ : state) {
        EllipticResult e = elliptic_ap(-1, 0, w, 2);
        benchmark::DoNotOptimize(e.char_polys.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EllipticWindow)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

void BM_BinomialCentral(benchmark::State& state) {
    const u64 p = u64(state.range(0));
    IntPoly two_x = IntPoly::parse("2x");
    IntPoly x = IntPoly::parse("x");
    for (auto _ : state) {
        PadicValue v = binomial_padic(two_x, x, p, 3);
        benchmark::DoNotOptimize(v.mantissa());
    }
}
BENCHMARK(BM_BinomialCentral)->Arg(101)->Arg(1009)->Arg(9973);

void BM_WieferichWindow(benchmark::State& state) {
    PrimeWindow w = sieve_primes(3, u64(state.range(0)));
    for (auto _ : state) {
        auto found = wieferich_search(Rational(2), w);
        benchmark::DoNotOptimize(found.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WieferichWindow)->RangeMultiplier(4)->Range(4000, 64000)->Complexity();

} // namespace

BENCHMARK_MAIN();
