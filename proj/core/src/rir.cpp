#include "lambdacool/rir.hpp"

#include <algorithm>
#include <cmath>

namespace lambdacool {

RirMediumParams RirMediumParams::make(double n_atoms, AngularFrequency rabi_control,
                                      AngularFrequency rabi_single_atom, AngularFrequency delta_a,
                                      AngularFrequency omega_r, AngularFrequency gamma_coh,
                                      double temperature_k, AngularFrequency gamma_e,
                                      double medium_length_m, AngularFrequency gamma_pop) {
    RirMediumParams m;
    m.n_atoms = n_atoms;
    m.rabi_control = rabi_control;
    m.rabi_single_atom = rabi_single_atom;
    m.delta_a = delta_a;
    m.beta = rabi_control.rad_per_s() / delta_a.rad_per_s();
    m.omega_r = omega_r;
    m.gamma_coh = gamma_coh;
    m.gamma_pop = gamma_pop.rad_per_s() > 0.0
                      ? gamma_pop
                      : AngularFrequency::from_rad_per_s(gamma_coh.rad_per_s() / 10.0);
    m.temperature = temperature_k;
    m.gamma_e = gamma_e;
    m.medium_length = medium_length_m;
    m.kappa_a = AngularFrequency::from_rad_per_s(speed_of_light / medium_length_m);
    return validate_rir(m);
}

RirMediumParams validate_rir(const RirMediumParams& params) {
    if (params.n_atoms < 0.0)
        throw ValidationError("n_atoms", "must be >= 0");
    if (params.delta_a.rad_per_s() == 0.0)
        throw ValidationError("delta_a", "must be nonzero");
    const double beta_expected = params.rabi_control.rad_per_s() / params.delta_a.rad_per_s();
    if (params.beta != beta_expected)
        throw ValidationError("beta", "must equal Omega / Delta_a");
    if (params.omega_r.rad_per_s() <= 0.0)
        throw ValidationError("omega_r", "must be > 0");
    if (params.gamma_coh.rad_per_s() <= 0.0)
        throw ValidationError("gamma_coh", "must be > 0");
    if (params.temperature <= 0.0)
        throw ValidationError("temperature", "must be > 0");
    if (params.medium_length <= 0.0)
        throw ValidationError("medium_length", "must be > 0");
    const double kappa_expected = speed_of_light / params.medium_length;
    if (std::abs(params.kappa_a.rad_per_s() - kappa_expected) > 1e-12 * kappa_expected)
        throw ValidationError("kappa_a", "must equal c / medium_length");
    return params;
}

double thermal_sigma_p(double temperature_k, AngularFrequency omega_r) {
    return std::sqrt(k_boltzmann * temperature_k / (8.0 * hbar * omega_r.rad_per_s()));
}

MomentumGrid thermal_distribution(double temperature_k, AngularFrequency omega_r,
                                  const GridSpec& spec) {
    if (temperature_k <= 0.0)
        throw ValidationError("temperature", "must be > 0");
    const double sigma = thermal_sigma_p(temperature_k, omega_r);

    double p_max = spec.p_max;
    if (p_max == 0.0)
        p_max = 8.0 * sigma;
    else if (p_max < 6.0 * sigma)
        throw GridTooNarrow("thermal_distribution: grid must cover at least 6 sigma_p");

    int n = spec.n_points;
    if (n == 0)
        n = std::max(257, 2 * static_cast<int>(std::ceil(16.0 * p_max)) + 1);
    if (n < 3 || n % 2 == 0)
        throw ValidationError("n_points", "must be odd and >= 3");

    MomentumGrid grid;
    grid.p_max = p_max;
    grid.n_points = n;
    grid.sigma_p = sigma;
    grid.p_values.resize(n);
    grid.weights.resize(n);

    const int mid = (n - 1) / 2;
    const double h = p_max / mid;
    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        // p built from the index offset so the grid is symmetric to the bit
        const double p = h * (k - mid);
        grid.p_values[k] = p;
        double w = std::exp(-p * p * inv_two_sigma_sq);
        if (k == 0 || k == n - 1)
            w *= 0.5; // trapezoid ends
        grid.weights[k] = w;
        sum += w;
    }
    // symmetric pairwise normalization keeps weight(p) == weight(-p) exactly
    for (auto& w : grid.weights)
        w /= sum;
    return grid;
}

MomentumGrid default_grid(const RirMediumParams& medium) {
    const double sigma = thermal_sigma_p(medium.temperature, medium.omega_r);
    const double p_max = 8.0 * sigma;
    // frequency step between adjacent Lorentzians: 8 omega_r * dp
    const double dp_max = medium.gamma_coh.rad_per_s() / (32.0 * medium.omega_r.rad_per_s());
    const double dp = std::min(dp_max, sigma / 16.0);
    int n = 2 * static_cast<int>(std::ceil(p_max / dp)) + 1;
    n = std::max(n, 257);
    return thermal_distribution(medium.temperature, medium.omega_r, GridSpec{p_max, n});
}

ComplexSusceptibility chi_rir(const RirMediumParams& medium, const MomentumGrid& grid,
                              AngularFrequency delta) {
    const double e_a = medium.rabi_single_atom.rad_per_s();
    const double n = medium.n_atoms;
    const double background = e_a * e_a * n / medium.delta_a.rad_per_s();

    const double be = medium.beta * e_a;
    const double amp = be * be * n;
    const double gamma = medium.gamma_coh.rad_per_s();
    const double gamma_sq = gamma * gamma;
    const double omega_r = medium.omega_r.rad_per_s();
    const double d = delta.rad_per_s();

    double sum_disp = 0.0;
    double sum_abs = 0.0;
    const std::size_t count = grid.p_values.size();
    for (std::size_t k = 0; k < count; ++k) {
        const double p = grid.p_values[k];
        const double w = grid.weights[k];
        const double d_plus = d + 4.0 * omega_r * (2.0 * p + 1.0);
        const double d_minus = d + 4.0 * omega_r * (2.0 * p - 1.0);
        const double l_plus = 1.0 / (gamma_sq + d_plus * d_plus);
        const double l_minus = 1.0 / (gamma_sq + d_minus * d_minus);
        sum_disp += w * (d_plus * l_plus - d_minus * l_minus);
        sum_abs += w * (l_plus - l_minus);
    }

    ComplexSusceptibility chi;
    chi.re = background + amp * sum_disp;
    chi.im = -amp * gamma * sum_abs;
    return chi;
}

ComplexSusceptibility chi_rir_shifted(const RirMediumParams& medium, const MomentumGrid& grid,
                                      AngularFrequency delta, AngularFrequency shift) {
    return chi_rir(medium, grid, delta + shift);
}

MomentumGrid make_converged_grid(const RirMediumParams& medium,
                                 std::span<const double> probe_deltas_rad_s, double rel_tol) {
    MomentumGrid grid = default_grid(medium);
    for (int iter = 0; iter < 12; ++iter) {
        MomentumGrid finer = thermal_distribution(medium.temperature, medium.omega_r,
                                                  GridSpec{grid.p_max, 2 * grid.n_points - 1});
        double worst = 0.0;
        for (double d : probe_deltas_rad_s) {
            const auto delta = AngularFrequency::from_rad_per_s(d);
            const auto a = chi_rir(medium, grid, delta);
            const auto b = chi_rir(medium, finer, delta);
            const double scale = std::hypot(b.re, b.im);
            if (scale == 0.0)
                continue;
            worst = std::max(worst, std::hypot(a.re - b.re, a.im - b.im) / scale);
        }
        if (worst < rel_tol)
            return grid;
        grid = std::move(finer);
    }
    throw GridTooCoarse("make_converged_grid: chi did not converge under refinement");
}

std::complex<double> rir_medium_field(const RirMediumParams& medium, const MomentumGrid& grid,
                                      double drive, AngularFrequency delta,
                                      AngularFrequency cavity_detuning) {
    return effective_cavity_response(cavity_detuning, medium.kappa_a,
                                     chi_rir(medium, grid, delta), drive);
}

} // namespace lambdacool
