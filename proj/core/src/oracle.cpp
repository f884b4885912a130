#include "lambdacool/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace lambdacool::oracle {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

double state_norm(const State& y) {
    double s = 0.0;
    for (const auto& v : y)
        s += std::norm(v);
    return std::sqrt(s);
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

// Statically dispatched so the small EIT system inlines the right-hand side.
template <class F>
IntegrationStats integrate_adaptive_impl(const F& rhs, State& y, double rate_scale,
                                         const IntegratorOptions& options,
                                         const std::function<void(double, const State&)>& sample) {
    const std::size_t n = y.size();
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y_try(n), y_new(n);

    double t = 0.0;
    rhs(t, y, k1);

    // Explicit stepping must keep the fastest mode where |R(i h w)| <= 1
    // (h w < 0.997 for this tableau) even long after it has decayed, or the
    // controller parks the step at the boundary and the dead modes buzz at
    // their error floor forever.
    const double h_stability = 0.95 / rate_scale;
    double h = std::min(1.0 / (10.0 * rate_scale), h_stability);
    h = std::min(h, options.max_step);
    h = std::min(h, options.t_end > 0.0 ? options.t_end : h);

    IntegrationStats stats;
    int since_check = 0;
    if (sample)
        sample(t, y);

    // Steady-state detection compares the coarse-grained drift between
    // checkpoints against the state scale; the instantaneous derivative near
    // a stiff fixed point is dominated by controller noise and never settles.
    State y_checkpoint = y;
    double t_checkpoint = t;
    const double initial_norm = state_norm(y);
    const auto steady = [&]() {
        if (t <= t_checkpoint)
            return false;
        const double dt = t - t_checkpoint;
        const double glob = 1e-9 * state_norm(y) + 1e-300;
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double drift = std::abs(y[i] - y_checkpoint[i]) / dt;
            if (drift > options.steady_rel * rate_scale * (std::abs(y[i]) + glob)) {
                ok = false;
                break;
            }
        }
        y_checkpoint = y;
        t_checkpoint = t;
        return ok;
    };

    while (stats.steps_accepted + stats.steps_rejected < options.max_steps) {
        if (options.t_end > 0.0 && t + h > options.t_end)
            h = options.t_end - t;

        for (std::size_t i = 0; i < n; ++i)
            y_try[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, y_try, k2);
        for (std::size_t i = 0; i < n; ++i)
            y_try[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, y_try, k3);
        for (std::size_t i = 0; i < n; ++i)
            y_try[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, y_try, k4);
        for (std::size_t i = 0; i < n; ++i)
            y_try[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, y_try, k5);
        for (std::size_t i = 0; i < n; ++i)
            y_try[i] =
                y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, y_try, k6);
        for (std::size_t i = 0; i < n; ++i)
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, y_new, k7);

        const bool have_floor = options.abs_floor.size() == n;
        const double abs_tol = options.abs_tol_scale * (state_norm(y) + 1e-300);
        double err_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cd err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                e7 * k7[i]);
            const double floor = have_floor ? options.abs_floor[i] : abs_tol;
            const double tol =
                floor + options.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double r = std::abs(err) / (tol + 1e-300);
            err_sq += r * r;
        }
        const double err_norm = std::sqrt(err_sq / static_cast<double>(n));

        if (err_norm <= 1.0) {
            t += h;
            y.swap(y_new);
            k1.swap(k7); // FSAL
            ++stats.steps_accepted;
            if (sample)
                sample(t, y);

            if (++since_check >= options.check_every) {
                since_check = 0;
                if (steady()) {
                    stats.t_reached = t;
                    stats.converged = true;
                    return stats;
                }
                if (state_norm(y) > 1e9 * (initial_norm + 1.0))
                    throw NoConvergence("integrate_adaptive: state diverging (linear "
                                        "instability at these parameters)");
            }
            if (options.t_end > 0.0 && t >= options.t_end) {
                if (steady()) {
                    stats.t_reached = t;
                    stats.converged = true;
                    return stats;
                }
                throw NoConvergence("integrate_adaptive: no steady state by t_end");
            }
        } else {
            ++stats.steps_rejected;
        }

        const double factor =
            std::clamp(0.9 * std::pow(std::max(err_norm, 1e-10), -0.2), 0.2, 5.0);
        h = std::min({h * factor, options.max_step, h_stability});
    }
    throw NoConvergence("integrate_adaptive: step budget exhausted");
}

} // namespace

IntegrationStats integrate_adaptive(const Rhs& rhs, State& y, double rate_scale,
                                    const IntegratorOptions& options,
                                    const std::function<void(double, const State&)>& sample) {
    return integrate_adaptive_impl(rhs, y, rate_scale, options, sample);
}

// ---- EIT ------------------------------------------------------------------

namespace {

// Rotating-frame equations of motion for (a, sigma_ge, sigma_gm, sigma_em).
// delta_c enters as Delta_a - delta. Populations are parameters.
struct EitRhs {
    double delta_ca, half_kappa, eta;
    double delta_a, delta, delta_c;
    double half_ge, half_gm;
    double omega, e_a;
    double n_g, n_m;
    bool adiabatic_field;

    void operator()(double, const State& y, State& dydt) const {
        cd a = y[0];
        const cd u = y[1], v = y[2], w = y[3];
        if (adiabatic_field)
            a = (eta - I * e_a * u) / (-I * delta_ca + half_kappa);
        dydt[0] = adiabatic_field
                      ? cd{0.0, 0.0}
                      : (I * delta_ca - half_kappa) * a + eta - I * e_a * u;
        dydt[1] = (I * delta_a - half_ge) * u - I * e_a * n_g * a - I * omega * v;
        dydt[2] = (I * delta - half_gm) * v - I * omega * u + I * e_a * a * w;
        dydt[3] = (-I * delta_c - half_ge) * w + I * omega * n_m + I * e_a * std::conj(a) * v;
    }
};

} // namespace

EitRun integrate_eit(const OpticalCavityParams& cavity, const EitMediumParams& medium,
                     TwoPhotonDetuning delta, const EitState& initial,
                     const EitOracleOptions& options) {
    EitRhs rhs;
    rhs.delta_ca = cavity.detuning.rad_per_s();
    rhs.half_kappa = 0.5 * cavity.kappa.rad_per_s();
    rhs.eta = cavity.drive;
    rhs.delta_a = medium.delta_a.rad_per_s();
    rhs.delta = delta.delta.rad_per_s();
    rhs.delta_c = rhs.delta_a - rhs.delta;
    rhs.half_ge = 0.5 * medium.gamma_e.rad_per_s();
    rhs.half_gm = 0.5 * medium.gamma_gm.rad_per_s();
    rhs.omega = medium.rabi_control.rad_per_s();
    rhs.e_a = medium.rabi_single_atom.rad_per_s();
    rhs.n_g = initial.n_ground;
    rhs.n_m = initial.n_meta;
    rhs.adiabatic_field = options.adiabatic_field;

    const double rate_scale =
        std::max({rhs.half_kappa + std::abs(rhs.delta_ca), rhs.half_ge + std::abs(rhs.delta_a),
                  rhs.half_gm + std::abs(rhs.delta), rhs.omega});

    IntegratorOptions opt = options.base;
    if (opt.t_end == 0.0) {
        // slowest relaxation: the Raman coherence, decaying at gamma_gm/2
        // plus the control-induced optical pumping rate
        const double pump = rhs.omega * rhs.omega * rhs.half_ge /
                            (rhs.delta_a * rhs.delta_a + rhs.half_ge * rhs.half_ge);
        const double slowest =
            std::min({std::max(rhs.half_gm + pump, 1e-12 * rate_scale), rhs.half_kappa,
                      rhs.half_ge});
        opt.t_end = 60.0 / slowest;
    }
    if (opt.abs_floor.empty()) {
        const double a_scale =
            std::max({std::abs(initial.a), rhs.eta / rhs.half_kappa, 1e-300});
        const double atom_scale =
            rhs.e_a * (rhs.n_g + rhs.n_m + 1.0) * a_scale / rhs.half_ge;
        opt.abs_floor = {1e-9 * a_scale, 1e-9 * atom_scale, 1e-9 * atom_scale,
                         1e-9 * atom_scale};
    }

    State y{initial.a, initial.sigma_ge, initial.sigma_gm, initial.sigma_em};

    EitRun run;
    std::function<void(double, const State&)> sampler;
    double next_sample = 0.0;
    double sample_dt = 0.0;
    if (options.trajectory_samples > 0) {
        sample_dt = opt.t_end / options.trajectory_samples;
        sampler = [&](double t, const State& s) {
            if (t >= next_sample) {
                EitState e;
                e.a = s[0];
                e.sigma_ge = s[1];
                e.sigma_gm = s[2];
                e.sigma_em = s[3];
                e.n_ground = rhs.n_g;
                e.n_meta = rhs.n_m;
                run.trajectory.emplace_back(t, e);
                next_sample += sample_dt;
            }
        };
    }

    run.stats = integrate_adaptive_impl(rhs, y, rate_scale, opt, sampler);
    run.steady.a = options.adiabatic_field
                       ? (rhs.eta - I * rhs.e_a * y[1]) / (-I * rhs.delta_ca + rhs.half_kappa)
                       : y[0];
    run.steady.sigma_ge = y[1];
    run.steady.sigma_gm = y[2];
    run.steady.sigma_em = y[3];
    run.steady.n_ground = initial.n_ground;
    run.steady.n_meta = initial.n_meta;
    return run;
}

// ---- RIR ------------------------------------------------------------------

MomentumGrid oracle_grid(const RirMediumParams& medium, int per_unit, double p_max) {
    if (per_unit < 1)
        throw ValidationError("per_unit", "must be >= 1");
    const double sigma = thermal_sigma_p(medium.temperature, medium.omega_r);
    if (p_max == 0.0)
        p_max = 8.0 * sigma;
    const int half = static_cast<int>(std::ceil(p_max * per_unit));
    const double snapped = static_cast<double>(half) / per_unit;
    return thermal_distribution(medium.temperature, medium.omega_r,
                                GridSpec{snapped, 2 * half + 1});
}

RirState thermal_rir_state(const RirMediumParams& medium, const MomentumGrid& grid,
                           std::complex<double> field) {
    RirState s;
    s.a = field;
    s.populations.resize(grid.weights.size());
    for (std::size_t i = 0; i < grid.weights.size(); ++i)
        s.populations[i] = medium.n_atoms * grid.weights[i];
    s.zeta_plus.assign(grid.weights.size(), cd{0.0, 0.0});
    s.zeta_minus.assign(grid.weights.size(), cd{0.0, 0.0});
    return s;
}

namespace {

int unit_stride(const MomentumGrid& grid) {
    const double h = grid.spacing();
    const double stride = 1.0 / h;
    const int m = static_cast<int>(std::lround(stride));
    if (m < 1 || std::abs(stride - m) > 1e-9)
        throw ValidationError("grid", "oracle grid spacing must divide the recoil unit");
    return m;
}

struct RirRhs {
    const RirMediumParams* medium;
    const MomentumGrid* grid;
    cd field;
    int stride;
    double delta = 0.0;
    std::vector<double> pi_th;

    // layout: [0, n) populations (real, stored in complex slots),
    // [n, 2n) zeta_plus, [2n, 3n) zeta_minus
    void operator()(double, const State& y, State& dydt) const {
        const std::size_t n = grid->p_values.size();
        const double be = medium->beta * medium->rabi_single_atom.rad_per_s();
        const double gamma_coh = medium->gamma_coh.rad_per_s();
        const double gamma_pop = medium->gamma_pop.rad_per_s();
        const double omega_r = medium->omega_r.rad_per_s();

        for (std::size_t k = 0; k < n; ++k) {
            const double p = grid->p_values[k];
            const cd zp = y[n + k];
            const cd zm = y[2 * n + k];
            const double pi_k = y[k].real();
            const double pi_up = k + stride < n ? y[k + stride].real() : 0.0;
            const double pi_dn = k >= static_cast<std::size_t>(stride)
                                     ? y[k - stride].real()
                                     : 0.0;

            // real by construction: i x + conj(i x) = -2 Im[x]
            const double drive_term = -2.0 * be * std::imag(field * (zp - std::conj(zm)));
            dydt[k] = drive_term - gamma_pop * (pi_k - pi_th[k]);

            const double d_plus = delta + 4.0 * omega_r * (2.0 * p + 1.0);
            const double d_minus = delta + 4.0 * omega_r * (2.0 * p - 1.0);
            dydt[n + k] = -(I * d_plus + gamma_coh) * zp -
                          I * be * std::conj(field) * (pi_up - pi_k);
            dydt[2 * n + k] = (I * d_minus - gamma_coh) * zm - I * be * field * (pi_dn - pi_k);
        }
    }
};

} // namespace

RirRun integrate_rir(const RirMediumParams& medium, const MomentumGrid& grid,
                     const RirState& initial, AngularFrequency delta,
                     const RirOracleOptions& options) {
    const std::size_t n = grid.p_values.size();
    if (initial.populations.size() != n || initial.zeta_plus.size() != n ||
        initial.zeta_minus.size() != n)
        throw ValidationError("initial", "state size does not match the grid");

    RirRhs rhs;
    rhs.medium = &medium;
    rhs.grid = &grid;
    rhs.field = initial.a;
    rhs.stride = unit_stride(grid);
    rhs.delta = delta.rad_per_s();
    rhs.pi_th.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        rhs.pi_th[k] = medium.n_atoms * grid.weights[k];

    State y(3 * n);
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = initial.populations[k];
        y[n + k] = initial.zeta_plus[k];
        y[2 * n + k] = initial.zeta_minus[k];
    }

    const double omega_r = medium.omega_r.rad_per_s();
    const double freq_span = std::abs(rhs.delta) + 4.0 * omega_r * (2.0 * grid.p_max + 1.0);
    const double rate_scale =
        std::max({freq_span + medium.gamma_coh.rad_per_s(), medium.gamma_pop.rad_per_s()});

    IntegratorOptions opt = options.base;
    if (opt.t_end == 0.0) {
        const double slowest =
            std::min(medium.gamma_coh.rad_per_s(), medium.gamma_pop.rad_per_s());
        opt.t_end = 60.0 / slowest;
    }
    if (opt.abs_floor.empty()) {
        double pop_scale = 1e-300;
        for (std::size_t k = 0; k < n; ++k)
            pop_scale = std::max(pop_scale, std::abs(initial.populations[k]));
        const double be = std::abs(medium.beta) * medium.rabi_single_atom.rad_per_s();
        const double zeta_scale = std::max(
            be * std::abs(initial.a) * pop_scale / medium.gamma_coh.rad_per_s(), 1e-300);
        opt.abs_floor.assign(3 * n, 1e-9 * zeta_scale);
        for (std::size_t k = 0; k < n; ++k)
            opt.abs_floor[k] = 1e-9 * pop_scale;
    }

    RirRun run;
    std::function<void(double, const State&)> sampler;
    double next_sample = 0.0;
    double sample_dt = 0.0;
    if (options.trajectory_samples > 0) {
        sample_dt = opt.t_end / options.trajectory_samples;
        sampler = [&](double t, const State& s) {
            if (t >= next_sample) {
                run.trajectory.emplace_back(t, s);
                next_sample += sample_dt;
            }
        };
    }

    run.stats = integrate_adaptive_impl(rhs, y, rate_scale, opt, sampler);

    run.steady.a = initial.a;
    run.steady.populations.resize(n);
    run.steady.zeta_plus.resize(n);
    run.steady.zeta_minus.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        run.steady.populations[k] = y[k].real();
        run.steady.zeta_plus[k] = y[n + k];
        run.steady.zeta_minus[k] = y[2 * n + k];
    }
    return run;
}

void steady_coherences(const RirMediumParams& medium, const MomentumGrid& grid,
                       std::complex<double> field, std::span<const double> populations,
                       AngularFrequency delta, std::vector<std::complex<double>>& zeta_plus,
                       std::vector<std::complex<double>>& zeta_minus) {
    const double delta_rad_s = delta.rad_per_s();
    const std::size_t n = grid.p_values.size();
    const int stride = unit_stride(grid);
    const double be = medium.beta * medium.rabi_single_atom.rad_per_s();
    const double gamma = medium.gamma_coh.rad_per_s();
    const double omega_r = medium.omega_r.rad_per_s();
    zeta_plus.resize(n);
    zeta_minus.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double p = grid.p_values[k];
        const double pi_k = populations[k];
        const double pi_up = k + stride < n ? populations[k + stride] : 0.0;
        const double pi_dn =
            k >= static_cast<std::size_t>(stride) ? populations[k - stride] : 0.0;
        const double d_plus = delta_rad_s + 4.0 * omega_r * (2.0 * p + 1.0);
        const double d_minus = delta_rad_s + 4.0 * omega_r * (2.0 * p - 1.0);
        zeta_plus[k] = -I * be * std::conj(field) * (pi_up - pi_k) / (I * d_plus + gamma);
        zeta_minus[k] = I * be * field * (pi_dn - pi_k) / (I * d_minus - gamma);
    }
}

ComplexSusceptibility chi_rir_from_state(const RirMediumParams& medium, const RirState& state) {
    const double e_a = medium.rabi_single_atom.rad_per_s();
    cd sum{0.0, 0.0};
    for (const auto& z : state.zeta_minus)
        sum += z;
    const cd chi = e_a * e_a * medium.n_atoms / medium.delta_a.rad_per_s() +
                   medium.beta * e_a * sum / state.a;
    return {chi.real(), chi.imag()};
}

double total_population(const RirState& state) {
    double s = 0.0;
    for (double p : state.populations)
        s += p;
    return s;
}

EquivalenceOutcome verify_oracle_equivalence(int points_per_scheme, unsigned seed,
                                             double tolerance) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    const double ge = two_pi * 6.07e6;

    EquivalenceOutcome out;
    auto record = [&](const char* scheme, int k, double rel, const std::string& error) {
        ++out.checked;
        out.residuals.push_back(rel);
        out.worst_rel = std::max(out.worst_rel, rel);
        if (!error.empty() || !(rel < tolerance)) {
            ++out.failed;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s point %d: %s (rel %.3e)", scheme, k,
                          error.empty() ? "deviation above tolerance" : error.c_str(), rel);
            out.failures.emplace_back(buf);
        }
    };

    for (int k = 0; k < points_per_scheme; ++k) {
        const double kappa = two_pi * uniform(2e6, 40e6);
        const double delta_ca = uniform(-0.4, 0.4) * kappa;
        const double n = uniform(1e5, 1e7);
        const double omega = uniform(1.0, 5.0) * ge;
        const double delta_a = uniform(5.0, 15.0) * ge * (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        const double gamma_gm = two_pi * uniform(100.0, 2000.0);
        const double delta = uniform(-1.0, 1.0) * two_pi * 1e6;
        const double e_a = two_pi * uniform(1e3, 2e4);

        auto medium = EitMediumParams::all_ground(
            n, AngularFrequency::from_rad_per_s(omega), AngularFrequency::from_rad_per_s(e_a),
            AngularFrequency::from_rad_per_s(ge), AngularFrequency::from_rad_per_s(gamma_gm),
            AngularFrequency::from_rad_per_s(delta_a));
        // weak drive: the bilinear terms must stay far below the linear ones
        const double eta = 1e-3 * kappa / std::max(1.0, e_a * std::sqrt(n) / ge);
        auto cavity = OpticalCavityParams::from_drive(
            AngularFrequency::from_rad_per_s(kappa),
            AngularFrequency::from_rad_per_s(0.5 * kappa),
            AngularFrequency::from_rad_per_s(delta_ca), eta);
        const TwoPhotonDetuning tp{AngularFrequency::from_rad_per_s(delta)};
        const auto closed = eit_cavity_field(cavity, medium, tp);
        try {
            const auto run = integrate_eit(cavity, medium, tp, EitState{{}, {}, {}, {}, n, 0.0});
            record("eit", k, std::abs(run.steady.a - closed) / std::abs(closed), "");
        } catch (const Error& e) {
            record("eit", k, 1.0, e.what());
        }
    }

    for (int k = 0; k < points_per_scheme; ++k) {
        const double omega_r = two_pi * uniform(2e3, 6e3);
        const double gamma_coh = two_pi * uniform(5e3, 2e4);
        const double temperature = uniform(5e-6, 40e-6);
        const double omega = uniform(1.0, 3.0) * ge;
        const double delta_a = -uniform(10.0, 20.0) * ge;
        const double delta = two_pi * uniform(-3e5, 3e5);

        auto medium = RirMediumParams::make(
            uniform(1e6, 1e8), AngularFrequency::from_rad_per_s(omega),
            AngularFrequency::from_rad_per_s(two_pi * 5e5),
            AngularFrequency::from_rad_per_s(delta_a),
            AngularFrequency::from_rad_per_s(omega_r),
            AngularFrequency::from_rad_per_s(gamma_coh), temperature,
            AngularFrequency::from_rad_per_s(ge), 0.5e-3);

        const auto grid = oracle_grid(medium, 2);
        // linear response: populations stay thermal while
        // (beta E |a|)^2 << gamma_coh gamma_pop
        const double be = std::abs(medium.beta) * medium.rabi_single_atom.rad_per_s();
        const double cap =
            3e-4 * std::sqrt(medium.gamma_coh.rad_per_s() * medium.gamma_pop.rad_per_s()) / be;
        const double phase = uniform(0.0, two_pi);
        const std::complex<double> field =
            uniform(0.1, 1.0) * cap * std::complex<double>{std::cos(phase), std::sin(phase)};
        auto initial = thermal_rir_state(medium, grid, field);
        try {
            const auto run =
                integrate_rir(medium, grid, initial, AngularFrequency::from_rad_per_s(delta));
            const auto chi_oracle = chi_rir_from_state(medium, run.steady);
            const auto chi_closed =
                chi_rir(medium, grid, AngularFrequency::from_rad_per_s(delta));
            const double scale = std::hypot(chi_closed.re, chi_closed.im);
            record("rir", k,
                   std::hypot(chi_oracle.re - chi_closed.re, chi_oracle.im - chi_closed.im) /
                       scale,
                   "");
        } catch (const Error& e) {
            record("rir", k, 1.0, e.what());
        }
    }
    return out;
}

} // namespace lambdacool::oracle
