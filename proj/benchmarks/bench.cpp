#include <benchmark/benchmark.h>

#include "systolica/chart.hpp"
#include "systolica/constructors.hpp"
#include "systolica/measures.hpp"
#include "systolica/orbits.hpp"
#include "systolica/revolution.hpp"

namespace {

systolica::Profile bench_profile() {
    systolica::RandomProfileParams params;
    params.e = 2;
    params.seed = 1;
    return systolica::random_admissible_profile(params);
}

void BM_ProfileEvaluate(benchmark::State& state) {
    const systolica::Profile p = bench_profile();
    double k = p.k_minus();
    const double step = (p.k_plus() - p.k_minus()) / 1024.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p.evaluate(k));
        k += step;
        if (k >= p.k_plus()) k = p.k_minus();
    }
}
BENCHMARK(BM_ProfileEvaluate);

void BM_Systole_Random(benchmark::State& state) {
    const systolica::Profile p = bench_profile();
    for (auto _ : state)
        benchmark::DoNotOptimize(systolica::systole(p).value);
}
BENCHMARK(BM_Systole_Random)->Unit(benchmark::kMillisecond);

void BM_ContactVolume(benchmark::State& state) {
    const systolica::Profile p = bench_profile();
    for (auto _ : state)
        benchmark::DoNotOptimize(systolica::contact_volume(p));
}
BENCHMARK(BM_ContactVolume)->Unit(benchmark::kMicrosecond);

void BM_IntegrateReturn(benchmark::State& state) {
    const systolica::Profile p = bench_profile();
    const systolica::ChartContactForm form =
        systolica::build_chart_form(p, systolica::ChartId::plus);
    for (auto _ : state)
        benchmark::DoNotOptimize(systolica::integrate_return(form, 0.37).return_time);
}
BENCHMARK(BM_IntegrateReturn)->Unit(benchmark::kMicrosecond);

void BM_ClairautData(benchmark::State& state) {
    const systolica::RevolutionMetric m = systolica::round_sphere_metric();
    for (auto _ : state)
        benchmark::DoNotOptimize(systolica::clairaut_data(m, 0.5).delta_theta);
}
BENCHMARK(BM_ClairautData)->Unit(benchmark::kMicrosecond);

void BM_ClosedGeodesics(benchmark::State& state) {
    const systolica::RevolutionMetric m = systolica::round_sphere_metric();
    for (auto _ : state)
        benchmark::DoNotOptimize(systolica::closed_geodesics(m, 3).size());
}
BENCHMARK(BM_ClosedGeodesics)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
