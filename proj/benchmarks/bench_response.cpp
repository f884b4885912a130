#include <benchmark/benchmark.h>

#include "lambdacool/backaction.hpp"
#include "lambdacool/presets.hpp"
#include "lambdacool/sweep.hpp"

using namespace lambdacool;
namespace ls = lambdacool::sweep;

namespace {

AngularFrequency hz(double f) { return AngularFrequency::from_hz(f); }
AngularFrequency rad(double w) { return AngularFrequency::from_rad_per_s(w); }

const double gamma_e = two_pi * 6.07e6;

EitMediumParams eit_medium() {
    return EitMediumParams::all_ground(1e8, rad(6.0 * gamma_e), hz(100e3), rad(gamma_e),
                                       hz(100.0), rad(500.0 * gamma_e));
}

RirMediumParams rir_medium() {
    return RirMediumParams::make(1e8, rad(2.6 * gamma_e), hz(250e3), rad(-15.0 * gamma_e),
                                 hz(3.77e3), hz(10e3), 21e-6, rad(gamma_e),
                                 speed_of_light / (two_pi * 600e9));
}

} // namespace

static void ChiEit(benchmark::State& state) {
    const auto medium = eit_medium();
    double delta = -two_pi * 600e3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chi_eit(medium, TwoPhotonDetuning{rad(delta)}));
        delta += 1.0;
    }
}
BENCHMARK(ChiEit);

static void ChiRir(benchmark::State& state) {
    const auto medium = rir_medium();
    const auto grid = thermal_distribution(medium.temperature, medium.omega_r,
                                           GridSpec{0.0, static_cast<int>(state.range(0)) | 1});
    double delta = -two_pi * 300e3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chi_rir(medium, grid, rad(delta)));
        delta += 1.0;
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ChiRir)->RangeMultiplier(4)->Range(257, 16385 + 2)->Complexity(benchmark::oN);

static void FeedbackCoolingPoint(benchmark::State& state) {
    EitFeedbackSystem s;
    s.cavity_m = OpticalCavityParams::from_power(hz(240e3), hz(120e3), rad(0.0), 200e-9, 780e-9);
    s.cavity_a = OpticalCavityParams::from_drive(hz(70e6), hz(70e6), rad(0.0), 0.0);
    s.medium = eit_medium();
    s.mech = MechanicalParams::make(hz(300e3), 5e7, hz(200.0), 300.0);
    s.j = CouplingJ::feedback(s.cavity_a.kappa_in, s.cavity_m.kappa_in);
    double dtilde = -two_pi * 600e3;
    for (auto _ : state) {
        OperatingPoint pt;
        pt.delta_cm_tilde = pt.delta_ca = pt.delta_two_photon = rad(dtilde);
        pt.topology = Topology::Feedback;
        benchmark::DoNotOptimize(evaluate_eit_feedback(s, pt));
        dtilde += 10.0;
    }
}
BENCHMARK(FeedbackCoolingPoint);

static void OptimizedOperatingPoint(benchmark::State& state) {
    auto config = ls::preset_config(ls::Figure::Fig8);
    ls::apply_override(config, "sweep.axis1.param", "");
    const auto resolved = ls::resolve_system(config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_n_min(
            [&](AngularFrequency d) { return ls::evaluate_point(config, resolved, d, false); },
            hz(300e3)));
    }
}
BENCHMARK(OptimizedOperatingPoint);

BENCHMARK_MAIN();
