#include "imdd/bias.hpp"
#include "imdd/link.hpp"
#include "imdd/power.hpp"
#include "imdd/waveform.hpp"

#include <benchmark/benchmark.h>

using namespace imdd;

namespace {

void BM_Eval(benchmark::State& state) {
    const auto family = static_cast<PulseFamily>(state.range(0));
    double x = 0.1234;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_normalized(family, 0.35, x));
        x += 1e-3;
    }
    state.SetLabel(std::string(to_string(family)));
}
BENCHMARK(BM_Eval)->DenseRange(0, 8);

void BM_FoldedSums(benchmark::State& state) {
    const PulseSpec p(static_cast<PulseFamily>(state.range(0)), 0.3);
    const auto k = truncation_depth(p, 1e-8);
    for (auto _ : state) benchmark::DoNotOptimize(folded_sums_at_depth(p, 0.37, k));
    state.SetLabel(p.label() + " K=" + std::to_string(k));
}
BENCHMARK(BM_FoldedSums)->Arg(0)->Arg(2)->Arg(7)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_RequiredBias(benchmark::State& state) {
    const PulseSpec p(static_cast<PulseFamily>(state.range(0)), 0.6);
    const auto ook = Constellation::ook();
    for (auto _ : state) benchmark::DoNotOptimize(required_bias(p, ook));
    state.SetLabel(p.label());
}
BENCHMARK(BM_RequiredBias)->Arg(0)->Arg(1)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GainSweepRrc(benchmark::State& state) {
    SweepRequest r;
    r.scenario = Scenario::EqualSer;
    r.families = {PulseFamily::RRC};
    for (double a = 0.3; a <= 1.0001; a += 0.05) r.alphas.push_back(a);
    r.receivers = {Receiver::MatchedFilter};
    for (auto _ : state) benchmark::DoNotOptimize(sweep(r));
}
BENCHMARK(BM_GainSweepRrc)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
    const PulseSpec p(PulseFamily::RC, 0.6);
    const auto c = Constellation::ook();
    SynthesisOptions o;
    o.guard = support_symbols(p);
    o.mu = 0.185;
    const auto sym = random_symbols(c, static_cast<std::size_t>(state.range(0)) + 2 * o.guard, 1);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(p, c, sym, o));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Synthesize)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
    LinkConfig cfg{PulseSpec(PulseFamily::RRC, 0.5), Constellation::pam(4)};
    cfg.receiver = state.range(0) ? Receiver::MatchedFilter : Receiver::Sampling;
    if (cfg.receiver == Receiver::Sampling) cfg.pulse = PulseSpec(PulseFamily::RC, 0.5);
    cfg.n0 = 1.0;
    cfg.amp_a = amplitude_for_ser(cfg, 1e-2);
    for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_ser(cfg, 100000));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
