#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "lambdacool/oracle.hpp"

using namespace lambdacool;
namespace orc = lambdacool::oracle;
using cd = std::complex<double>;

namespace {

AngularFrequency hz(double f) { return AngularFrequency::from_hz(f); }
AngularFrequency rad(double w) { return AngularFrequency::from_rad_per_s(w); }

const double gamma_e = two_pi * 6.07e6;

EitMediumParams fig3_medium(double e_a_hz) {
    return EitMediumParams::all_ground(1e8, rad(6.0 * gamma_e), hz(e_a_hz), rad(gamma_e),
                                       hz(100.0), rad(500.0 * gamma_e));
}

RirMediumParams fig5_medium() {
    return RirMediumParams::make(1e8, rad(2.6 * gamma_e), hz(500e3), rad(-15.0 * gamma_e),
                                 hz(3.77e3), hz(10e3), 21e-6, rad(gamma_e), 0.5e-3);
}

} // namespace

TEST_CASE("decoupled cavity relaxes to 2 eta / kappa with dark atoms") {
    const double kappa = two_pi * 5e6;
    auto medium = EitMediumParams::all_ground(1e8, rad(0.0), rad(0.0), rad(gamma_e), hz(100.0),
                                              rad(10.0 * gamma_e));
    auto cavity = OpticalCavityParams::from_drive(rad(kappa), rad(kappa / 2.0), rad(0.0), 1e4);
    const auto run = orc::integrate_eit(cavity, medium, TwoPhotonDetuning{rad(0.0)},
                                        orc::EitState{{}, {}, {}, {}, 1e8, 0.0});
    CHECK(run.stats.converged);
    CHECK(std::abs(run.steady.a - cd(2e4 / kappa, 0.0)) <= 1e-6 * 2e4 / kappa);
    CHECK(std::abs(run.steady.sigma_ge) == 0.0);
    CHECK(std::abs(run.steady.sigma_gm) == 0.0);
}

TEST_CASE("time-domain EIT steady state matches the closed-form response"
          * doctest::timeout(300)) {
    // Fig. 3/4 medium with a weak coupling field; this is the stiffest
    // configuration in the suite (Delta_a = 500 gamma_e), so only a few
    // detunings are scanned here. Broad random-parameter coverage runs in
    // the acceptance suite and `lambdacool oracle-check`.
    const auto medium = fig3_medium(1e3);
    const double kappa = two_pi * 70e6;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 3; ++k) {
        const double delta = u(rng) * two_pi * 450e3;
        auto cavity = OpticalCavityParams::from_drive(rad(kappa), rad(kappa / 2.0), rad(delta),
                                                      1e-4 * kappa);
        const TwoPhotonDetuning tp{rad(delta)};
        const auto closed = eit_cavity_field(cavity, medium, tp);
        const auto run = orc::integrate_eit(cavity, medium, tp,
                                            orc::EitState{{}, {}, {}, {}, 1e8, 0.0});
        CHECK(run.stats.converged);
        CHECK(std::abs(run.steady.a - closed) <= 1e-6 * std::abs(closed));
    }
}

TEST_CASE("off-equilibrium initial coherences reach the same fixed point") {
    const double kappa = two_pi * 10e6;
    auto medium = EitMediumParams::all_ground(1e6, rad(2.0 * gamma_e), hz(5e3), rad(gamma_e),
                                              hz(500.0), rad(10.0 * gamma_e));
    auto cavity =
        OpticalCavityParams::from_drive(rad(kappa), rad(kappa / 2.0), rad(0.1 * kappa), 1e3);
    const TwoPhotonDetuning tp{hz(120e3)};
    const auto from_zero =
        orc::integrate_eit(cavity, medium, tp, orc::EitState{{}, {}, {}, {}, 1e6, 0.0});
    orc::EitState kicked;
    kicked.n_ground = 1e6;
    kicked.sigma_ge = cd(0.1e6, -0.05e6);
    kicked.sigma_gm = cd(-0.1e6, 0.1e6);
    kicked.sigma_em = cd(0.02e6, 0.02e6);
    const auto from_kick = orc::integrate_eit(cavity, medium, tp, kicked);
    CHECK(std::abs(from_zero.steady.a - from_kick.steady.a) <=
          1e-8 * std::abs(from_zero.steady.a));
    CHECK(std::abs(from_zero.steady.sigma_gm - from_kick.steady.sigma_gm) <=
          1e-8 * std::abs(from_zero.steady.sigma_gm));
}

TEST_CASE("doubling the drive doubles the steady field in the linear regime") {
    const double kappa = two_pi * 10e6;
    const auto medium = EitMediumParams::all_ground(1e6, rad(2.0 * gamma_e), hz(5e3),
                                                    rad(gamma_e), hz(500.0),
                                                    rad(10.0 * gamma_e));
    const TwoPhotonDetuning tp{hz(80e3)};
    auto cavity1 =
        OpticalCavityParams::from_drive(rad(kappa), rad(kappa / 2.0), rad(0.0), 500.0);
    auto cavity2 =
        OpticalCavityParams::from_drive(rad(kappa), rad(kappa / 2.0), rad(0.0), 1000.0);
    const auto r1 = orc::integrate_eit(cavity1, medium, tp,
                                       orc::EitState{{}, {}, {}, {}, 1e6, 0.0});
    const auto r2 = orc::integrate_eit(cavity2, medium, tp,
                                       orc::EitState{{}, {}, {}, {}, 1e6, 0.0});
    CHECK(std::abs(r2.steady.a - 2.0 * r1.steady.a) <= 1e-10 * std::abs(r2.steady.a));
}

TEST_CASE("halving the maximum step leaves the steady state unchanged") {
    const double kappa = two_pi * 10e6;
    const auto medium = EitMediumParams::all_ground(1e6, rad(2.0 * gamma_e), hz(5e3),
                                                    rad(gamma_e), hz(500.0),
                                                    rad(10.0 * gamma_e));
    const TwoPhotonDetuning tp{hz(80e3)};
    auto cavity =
        OpticalCavityParams::from_drive(rad(kappa), rad(kappa / 2.0), rad(0.0), 500.0);
    orc::EitOracleOptions opt;
    const auto coarse = orc::integrate_eit(cavity, medium, tp,
                                           orc::EitState{{}, {}, {}, {}, 1e6, 0.0}, opt);
    opt.base.max_step = 0.5 * 0.95 / (gamma_e * 500.0 + 0.5 * gamma_e);
    const auto fine = orc::integrate_eit(cavity, medium, tp,
                                         orc::EitState{{}, {}, {}, {}, 1e6, 0.0}, opt);
    CHECK(std::abs(coarse.steady.a - fine.steady.a) <=
          1e-8 * std::abs(fine.steady.a));
}

TEST_CASE("adiabatic field option agrees with the full integration") {
    const double kappa = two_pi * 40e6; // fast cavity
    const auto medium = EitMediumParams::all_ground(1e6, rad(2.0 * gamma_e), hz(5e3),
                                                    rad(gamma_e), hz(500.0),
                                                    rad(10.0 * gamma_e));
    const TwoPhotonDetuning tp{hz(50e3)};
    auto cavity =
        OpticalCavityParams::from_drive(rad(kappa), rad(kappa / 2.0), rad(0.0), 500.0);
    orc::EitOracleOptions opt;
    const auto full = orc::integrate_eit(cavity, medium, tp,
                                         orc::EitState{{}, {}, {}, {}, 1e6, 0.0}, opt);
    opt.adiabatic_field = true;
    const auto slaved = orc::integrate_eit(cavity, medium, tp,
                                           orc::EitState{{}, {}, {}, {}, 1e6, 0.0}, opt);
    CHECK(std::abs(full.steady.a - slaved.steady.a) <= 1e-6 * std::abs(full.steady.a));
}

TEST_CASE("dark RIR medium stays thermal") {
    auto medium = fig5_medium();
    medium.rabi_control = rad(0.0);
    medium.beta = 0.0;
    const auto grid = orc::oracle_grid(medium, 2);
    auto initial = orc::thermal_rir_state(medium, grid, cd(1e-4, 0.0));
    const auto run = orc::integrate_rir(medium, grid, initial, hz(-100e3));
    CHECK(run.stats.converged);
    for (std::size_t k = 0; k < grid.p_values.size(); ++k) {
        CHECK(std::abs(run.steady.zeta_plus[k]) == 0.0);
        CHECK(run.steady.populations[k] ==
              doctest::Approx(medium.n_atoms * grid.weights[k]).epsilon(1e-12));
    }
}

TEST_CASE("integrated coherences match the closed steady-state forms per node") {
    const auto medium = fig5_medium();
    const auto grid = orc::oracle_grid(medium, 2);
    const cd field(3e-5, 1.5e-5); // weak fixed field, linear-response regime
    auto initial = orc::thermal_rir_state(medium, grid, field);
    const auto delta = hz(-120e3);
    const auto run = orc::integrate_rir(medium, grid, initial, delta);
    CHECK(run.stats.converged);

    std::vector<cd> zp, zm;
    orc::steady_coherences(medium, grid, field, run.steady.populations, delta, zp, zm);
    double zeta_scale = 0.0;
    for (std::size_t k = 0; k < zp.size(); ++k)
        zeta_scale = std::max({zeta_scale, std::abs(zp[k]), std::abs(zm[k])});
    for (std::size_t k = 0; k < zp.size(); ++k) {
        // per grid point, relative to the coherence scale (edge nodes carry
        // gaussian-dead amplitudes)
        CHECK(std::abs(run.steady.zeta_plus[k] - zp[k]) <= 1e-8 * zeta_scale);
        CHECK(std::abs(run.steady.zeta_minus[k] - zm[k]) <= 1e-8 * zeta_scale);
    }
}

TEST_CASE("population total is conserved through the driven evolution") {
    const auto medium = fig5_medium();
    const auto grid = orc::oracle_grid(medium, 2);
    auto initial = orc::thermal_rir_state(medium, grid, cd(5e-5, -2e-5));
    const auto run = orc::integrate_rir(medium, grid, initial, hz(-130e3));
    CHECK(std::abs(orc::total_population(run.steady) - medium.n_atoms) <=
          1e-9 * medium.n_atoms);
}

TEST_CASE("overdamped momentum coherences wipe out the medium response") {
    auto fast = RirMediumParams::make(1e8, rad(2.6 * gamma_e), hz(500e3), rad(-15.0 * gamma_e),
                                      hz(3.77e3), hz(10e3 * 1e4), 21e-6, rad(gamma_e), 0.5e-3);
    const auto slow = fig5_medium();
    const auto grid_fast = orc::oracle_grid(fast, 2);
    const auto grid_slow = orc::oracle_grid(slow, 2);
    const cd field(1e-5, 0.0);
    const auto delta = hz(-120e3);
    auto run_fast = orc::integrate_rir(fast, grid_fast, orc::thermal_rir_state(fast, grid_fast, field), delta);
    auto run_slow = orc::integrate_rir(slow, grid_slow, orc::thermal_rir_state(slow, grid_slow, field), delta);
    const auto chi_fast = orc::chi_rir_from_state(fast, run_fast.steady);
    const auto chi_slow = orc::chi_rir_from_state(slow, run_slow.steady);
    const double bg = std::pow(fast.rabi_single_atom.rad_per_s(), 2) * fast.n_atoms /
                      fast.delta_a.rad_per_s();
    CHECK(std::abs(chi_fast.im) < 1e-3 * std::abs(chi_slow.im));
    CHECK(std::abs(chi_fast.re - bg) < 1e-2 * std::abs(chi_slow.re - bg));
}

TEST_CASE("contracting the closed-form coherences reproduces chi_rir exactly") {
    const auto medium = fig5_medium();
    const auto grid = orc::oracle_grid(medium, 2);
    const cd field(0.7, -0.2);
    for (double d_hz : {-300e3, -130e3, -40e3, 55e3, 210e3}) {
        const auto delta = hz(d_hz);
        auto state = orc::thermal_rir_state(medium, grid, field);
        orc::steady_coherences(medium, grid, field, state.populations, delta, state.zeta_plus,
                               state.zeta_minus);
        const auto contracted = orc::chi_rir_from_state(medium, state);
        const auto direct = chi_rir(medium, grid, delta);
        const double scale = std::hypot(direct.re, direct.im);
        CHECK(std::hypot(contracted.re - direct.re, contracted.im - direct.im) <= 1e-10 * scale);
    }
}

TEST_CASE("strong fixed field departs from the thermal-pinned closed form") {
    const auto medium = fig5_medium();
    const auto grid = orc::oracle_grid(medium, 2);
    const auto delta = hz(-100e3);
    const auto closed = chi_rir(medium, grid, delta);
    const double scale = std::hypot(closed.re, closed.im);

    const auto rel_at = [&](cd field) {
        auto initial = orc::thermal_rir_state(medium, grid, field);
        const auto run = orc::integrate_rir(medium, grid, initial, delta);
        const auto chi = orc::chi_rir_from_state(medium, run.steady);
        return std::hypot(chi.re - closed.re, chi.im - closed.im) / scale;
    };
    const double weak = rel_at(cd(1e-5, 0.0));
    const double strong = rel_at(cd(0.05, 0.0));
    CHECK(weak < 1e-6);
    CHECK(strong > 1e-3); // population depletion: outside the linear regime
    CHECK(strong > 100.0 * weak);
}
