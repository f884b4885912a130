// Acceptance gate: every release-blocking criterion evaluated at its stated
// tolerance, one pass/fail line each. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <random>
#include <cstdio>
#include <sstream>
#include <string>

#include "lambdacool/oracle.hpp"
#include "lambdacool/presets.hpp"
#include "lambdacool/sweep.hpp"

using namespace lambdacool;
namespace ls = lambdacool::sweep;

namespace {

int failures = 0;

void report(int id, const char* label, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, label,
                detail.c_str());
    if (!pass)
        ++failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

double column(const ls::SweepTable& t, std::size_t row, const std::string& name) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        if (t.columns[c] == name)
            return std::strtod(t.rows[row][c].c_str(), nullptr);
    return std::nan("");
}

struct Optima {
    ls::RunConfig config;
    CoolingOptimum hybrid;
    CoolingOptimum bare;
    double xi = 0.0;
};

Optima optimize_preset(ls::Figure figure, double kappa_cm_hz) {
    Optima out;
    out.config = ls::preset_config(figure);
    ls::apply_override(out.config, "cavity_m.kappa_hz", ls::format_double(kappa_cm_hz));
    ls::apply_override(out.config, "sweep.axis1.param", "");
    const auto resolved = ls::resolve_system(out.config);
    const auto omega_m = AngularFrequency::from_hz(out.config.mech.omega_m_hz);
    out.hybrid = minimize_n_min(
        [&](AngularFrequency d) { return ls::evaluate_point(out.config, resolved, d, false); },
        omega_m, out.config.run.xi_window, out.config.run.scan_points);
    out.bare = minimize_n_min(
        [&](AngularFrequency d) { return ls::evaluate_point(out.config, resolved, d, true); },
        omega_m, out.config.run.xi_window, out.config.run.scan_points);
    out.xi = improvement_factor(out.bare.result.n_min, out.hybrid.result.n_min);
    return out;
}

// 1. gamma_mech * n_bath = 2 pi x 125 kHz within 2%
void criterion_1() {
    const auto mech =
        MechanicalParams::make(AngularFrequency::from_hz(300e3), 5e7,
                               AngularFrequency::from_hz(200.0), 300.0);
    const double product_hz = mech.gamma_mech.rad_per_s() * mech.n_bath / two_pi;
    const bool pass = std::abs(product_hz - 125e3) <= 0.02 * 125e3;
    report(1, "ground-state threshold arithmetic", pass,
           fmt("gamma_m * n_bath = 2 pi x %.2f kHz", product_hz / 1e3));
}

// 2. EIT feedback, near-resolved regime: n_min < 1 in (-omega_m, 0), xi in [1.5, 2.5]
void criterion_2() {
    const auto o = optimize_preset(ls::Figure::Fig8, 240e3);
    const double omega_m = two_pi * 300e3;
    const double dt = o.hybrid.delta_cm_tilde.rad_per_s();
    const bool pass = o.hybrid.result.n_min < 1.0 && dt > -omega_m && dt < 0.0 &&
                      o.xi >= 1.5 && o.xi <= 2.5;
    report(2, "EIT feedback near-resolved regime", pass,
           fmt("n_min = %.3f at Dtilde = %.2f omega_m, xi = %.2f", o.hybrid.result.n_min,
               dt / omega_m, o.xi));
}

// 3. EIT feedback, Doppler regime: xi in [2.2, 3.8], damping maximum on the blue side
void criterion_3() {
    const auto o = optimize_preset(ls::Figure::Fig8, 3.6e6);
    const auto resolved = ls::resolve_system(o.config);
    const auto best_gamma = maximize_gamma_opt(
        [&](AngularFrequency d) { return ls::evaluate_point(o.config, resolved, d, false); },
        AngularFrequency::from_hz(300e3));
    const bool pass = o.xi >= 2.2 && o.xi <= 3.8 && best_gamma.delta_cm_tilde.rad_per_s() > 0.0;
    report(3, "EIT feedback Doppler regime", pass,
           fmt("xi = %.2f, Gamma_opt max at Dtilde = %+.2f omega_m", o.xi,
               best_gamma.delta_cm_tilde.rad_per_s() / (two_pi * 300e3)));
}

// 4. xi(kappa_cm) sweep: max xi >= 30 and a ground-state window near the border
void criterion_4() {
    auto config = ls::preset_config(ls::Figure::Fig10);
    const auto table = ls::run_sweep(config);
    double max_xi = 0.0;
    bool window = false;
    double window_kappa = 0.0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        max_xi = std::max(max_xi, column(table, r, "xi"));
        const double kappa = column(table, r, "cavity_m.kappa_hz");
        if (column(table, r, "n_min_hybrid") < 1.0 && kappa > 5e4 && kappa < 1e6) {
            window = true;
            window_kappa = kappa;
        }
    }
    const bool pass = max_xi >= 30.0 && window;
    report(4, "EIT feedback improvement sweep", pass,
           fmt("max xi = %.1f; ground-state window near kappa_cm = 2 pi x %.0f kHz", max_xi,
               window_kappa / 1e3));
}

// 5. RIR cascade: n_min(hybrid)/n_min(bare) <= 1e-2 at the optimum near -omega_m
void criterion_5() {
    const auto o = optimize_preset(ls::Figure::Fig11, 240e3);
    const double ratio = o.hybrid.result.n_min / o.bare.result.n_min;
    const double dt_over_wm = o.hybrid.delta_cm_tilde.rad_per_s() / (two_pi * 300e3);
    const bool pass = ratio <= 1e-2 && dt_over_wm > -1.5 && dt_over_wm < -0.5;
    report(5, "RIR cascade phonon-number reduction", pass,
           fmt("n_min %.3f vs bare %.1f (ratio %.2e) at Dtilde = %.2f omega_m",
               o.hybrid.result.n_min, o.bare.result.n_min, ratio, dt_over_wm));
}

// 6. RIR susceptibility: contiguous gain band below zero, antisymmetric, Im(0) = 0
void criterion_6() {
    const double ge = two_pi * 6.07e6;
    const auto medium = RirMediumParams::make(
        1e8, AngularFrequency::from_rad_per_s(2.6 * ge), AngularFrequency::from_hz(500e3),
        AngularFrequency::from_rad_per_s(-15.0 * ge), AngularFrequency::from_hz(3.77e3),
        AngularFrequency::from_hz(10e3), 21e-6, AngularFrequency::from_rad_per_s(ge), 0.5e-3);
    const auto grid = default_grid(medium);

    bool contiguous = true;
    double peak = 0.0;
    for (double d_hz = -250e3; d_hz <= -10e3; d_hz += 2e3) {
        const double im = chi_rir(medium, grid, AngularFrequency::from_hz(d_hz)).im;
        peak = std::max(peak, std::abs(im));
        if (im >= 0.0)
            contiguous = false;
    }
    double worst_sym = 0.0;
    for (double d_hz = 2e3; d_hz <= 250e3; d_hz += 2e3) {
        const double plus = chi_rir(medium, grid, AngularFrequency::from_hz(d_hz)).im;
        const double minus = chi_rir(medium, grid, AngularFrequency::from_hz(-d_hz)).im;
        worst_sym = std::max(worst_sym, std::abs(plus + minus));
    }
    const double at_zero = std::abs(chi_rir(medium, grid, AngularFrequency{}).im);
    const bool pass = contiguous && worst_sym < 1e-9 * peak && at_zero < 1e-9 * peak;
    report(6, "RIR susceptibility gain structure", pass,
           fmt("gain band contiguous, max |Im(d)+Im(-d)| = %.1e peak, Im(0) = %.1e peak",
               worst_sym / peak, at_zero / peak));
}

// 7. oracle equivalence at 20 random points per scheme, 1e-6, under 5 minutes
void criterion_7() {
    const auto start = std::chrono::steady_clock::now();
    const auto outcome = oracle::verify_oracle_equivalence(20, 20250808, 1e-6);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = outcome.failed == 0 && seconds < 300.0;
    report(7, "time-domain oracle equivalence", pass,
           fmt("%d points, worst rel %.2e, %.1f s", outcome.checked, outcome.worst_rel,
               seconds));
}

// 8. bare reduction: J = 0 equals the textbook sideband-cooling rate to 1%
void criterion_8() {
    const auto mech = MechanicalParams::make(AngularFrequency::from_hz(300e3), 5e7,
                                             AngularFrequency::from_hz(200.0), 300.0);
    const double omega_m = mech.omega_m.rad_per_s();
    const double kappa = omega_m / 100.0;
    auto cavity = OpticalCavityParams::from_drive(
        AngularFrequency::from_rad_per_s(kappa), AngularFrequency::from_rad_per_s(kappa / 2.0),
        AngularFrequency{}, 1.0);
    OperatingPoint pt;
    pt.delta_cm_tilde = AngularFrequency::from_rad_per_s(-omega_m);
    pt.topology = Topology::Bare;
    const auto r = cascade_cooling(mech, cavity, std::complex<double>(100.0, 0.0), pt);
    const double g_sq =
        std::pow(mech.g0.rad_per_s() * std::abs(r.field_c), 2);
    const double textbook = 4.0 * g_sq / kappa;
    const double rel = std::abs(r.gamma_opt.rad_per_s() - textbook) / textbook;
    report(8, "textbook resolved-sideband reduction", rel < 0.01,
           fmt("Gamma_opt deviates %.4f%% from 4 g^2 / kappa", 100.0 * rel));
}

// 9. property suites at their module tolerances
void criterion_9() {
    std::ostringstream notes;
    bool pass = true;

    { // passivity of Im[chi_EIT]
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double ge = two_pi * 6.07e6;
        for (int i = 0; i < 10000 && pass; ++i) {
            EitMediumParams m;
            m.n_atoms = m.n_ground = std::pow(10.0, 4.0 + 6.0 * u(rng));
            m.rabi_control = AngularFrequency::from_rad_per_s(ge * 10.0 * u(rng));
            m.rabi_single_atom = AngularFrequency::from_hz(1e3 + 500e3 * u(rng));
            m.gamma_e = AngularFrequency::from_rad_per_s(ge * (0.1 + 2.0 * u(rng)));
            m.gamma_gm = AngularFrequency::from_rad_per_s(two_pi * 1e4 * u(rng));
            m.delta_a = AngularFrequency::from_rad_per_s(ge * 1000.0 * (u(rng) - 0.5));
            const auto chi = chi_eit(
                m, TwoPhotonDetuning{AngularFrequency::from_rad_per_s(two_pi * 4e6 * (u(rng) - 0.5))});
            if (chi.im < 0.0)
                pass = false;
        }
        notes << "passivity ";
    }

    { // decomposition identity at machine precision
        auto config = ls::preset_config(ls::Figure::Fig8);
        ls::apply_override(config, "sweep.axis1.param", "");
        const auto resolved = ls::resolve_system(config);
        for (int i = -20; i <= 20 && pass; ++i) {
            const auto r = ls::evaluate_point(config, resolved,
                                              AngularFrequency::from_hz(i * 30e3), false);
            if (r.gamma_opt.rad_per_s() !=
                r.gamma_anti_stokes.rad_per_s() - r.gamma_stokes.rad_per_s())
                pass = false;
        }
        notes << "decomposition ";
    }

    { // determinism: identical config gives byte-identical CSV
        auto config = ls::preset_config(ls::Figure::Fig5);
        ls::apply_override(config, "sweep.axis1.points", "101");
        std::ostringstream a, b;
        ls::write_csv(a, ls::run_sweep(config, 1), false);
        ls::write_csv(b, ls::run_sweep(config, 4), false);
        if (a.str() != b.str())
            pass = false;
        notes << "determinism ";
    }

    { // grid convergence under doubling
        const double ge = two_pi * 6.07e6;
        const auto medium = RirMediumParams::make(
            1e8, AngularFrequency::from_rad_per_s(2.6 * ge), AngularFrequency::from_hz(500e3),
            AngularFrequency::from_rad_per_s(-15.0 * ge), AngularFrequency::from_hz(3.77e3),
            AngularFrequency::from_hz(10e3), 21e-6, AngularFrequency::from_rad_per_s(ge),
            0.5e-3);
        const std::vector<double> probes = {-two_pi * 130e3, two_pi * 60e3};
        const auto grid = make_converged_grid(medium, probes, 1e-6);
        const auto finer = thermal_distribution(medium.temperature, medium.omega_r,
                                                GridSpec{grid.p_max, 2 * grid.n_points - 1});
        for (double d : probes) {
            const auto c1 = chi_rir(medium, grid, AngularFrequency::from_rad_per_s(d));
            const auto c2 = chi_rir(medium, finer, AngularFrequency::from_rad_per_s(d));
            if (std::hypot(c1.re - c2.re, c1.im - c2.im) > 1e-6 * std::hypot(c2.re, c2.im))
                pass = false;
        }
        notes << "grid-convergence";
    }

    report(9, "property suites", pass, notes.str());
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
