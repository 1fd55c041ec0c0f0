#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hwm/analytic.hpp"
#include "hwm/maxdist.hpp"
#include "hwm/mc.hpp"
#include "hwm/quadrature.hpp"

namespace {

const hwm::MarketParams kMkt{0.05, 0.0, 0.10};
const hwm::ContractTerms kTerms{0.08, 10.0, 1.0, 120, hwm::Compounding::Continuous};
const hwm::MaxDistParams kDist = hwm::MaxDistParams::from_market(kMkt, 0.08, 10.0);

void BM_MaxCdf(benchmark::State& state) {
    double h = 0.0;
    for (auto _ : state) {
        h += 1e-6;
        benchmark::DoNotOptimize(hwm::max_cdf(0.2 + h, kDist));
    }
}
BENCHMARK(BM_MaxCdf);

void BM_MaxPdf(benchmark::State& state) {
    double h = 0.0;
    for (auto _ : state) {
        h += 1e-6;
        benchmark::DoNotOptimize(hwm::max_pdf(0.2 + h, kDist));
    }
}
BENCHMARK(BM_MaxPdf);

void BM_ClosedForm(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hwm::closed_form_value(1.0, 1.0, kMkt, 0.08, 10.0, 0.01));
    }
}
BENCHMARK(BM_ClosedForm);

void BM_OraclePrice(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(hwm::oracle_price(hwm::ContractState::issue(), kMkt,
                                                   kTerms, hwm::QuadratureSpec{}));
    }
}
BENCHMARK(BM_OraclePrice);

void BM_PayoffRecursion(benchmark::State& state) {
    std::vector<double> ratios(120);
    hwm::PathRng rng(7, 0);
    double level = 1.0;
    for (auto& r : ratios) {
        level *= std::exp(0.01 * rng.normal());
        r = level;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(hwm::payoff_recursion(
            ratios, 0.08, 10.0 / 120, hwm::Compounding::Continuous, 1.0, 1.0));
    }
}
BENCHMARK(BM_PayoffRecursion);

void BM_McPricePerPath(benchmark::State& state) {
    hwm::SimulationSpec spec;
    spec.n_paths = 20000;
    spec.seed = 1;
    spec.n_threads = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hwm::mc_price(hwm::ContractState::issue(), kMkt, kTerms, spec));
    }
    state.SetItemsProcessed(state.iterations() * spec.n_paths);
}
BENCHMARK(BM_McPricePerPath)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
