#include "lambdacool/eit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lambdacool {

EitMediumParams EitMediumParams::all_ground(double n_atoms, AngularFrequency rabi_control,
                                            AngularFrequency rabi_single_atom,
                                            AngularFrequency gamma_e, AngularFrequency gamma_gm,
                                            AngularFrequency delta_a) {
    EitMediumParams m;
    m.n_atoms = n_atoms;
    m.n_ground = n_atoms;
    m.n_meta = 0.0;
    m.rabi_control = rabi_control;
    m.rabi_single_atom = rabi_single_atom;
    m.gamma_e = gamma_e;
    m.gamma_gm = gamma_gm;
    m.delta_a = delta_a;
    m.delta_c = delta_a; // reference point: two-photon resonance
    return validate_eit(m);
}

EitMediumParams validate_eit(const EitMediumParams& params) {
    if (params.n_atoms < 0.0 || params.n_ground < 0.0 || params.n_meta < 0.0)
        throw ValidationError("n_atoms", "populations must be >= 0");
    const double n_sum = params.n_ground + params.n_meta;
    if (std::abs(n_sum - params.n_atoms) > 1e-12 * std::max(1.0, params.n_atoms))
        throw ValidationError("n_atoms", "N must equal N_g + N_m");
    if (params.gamma_e.rad_per_s() <= 0.0)
        throw ValidationError("gamma_e", "must be > 0");
    if (params.gamma_gm.rad_per_s() < 0.0)
        throw ValidationError("gamma_gm", "must be >= 0");
    if (params.n_meta != 0.0 && !params.use_general_form)
        throw ValidationError("n_meta", "N_m != 0 requires use_general_form");
    return params;
}

namespace {

// Explicit Re/Im pair for N_g = N (widetext form following the steady-state
// elimination of the coherences).
ComplexSusceptibility chi_eit_widetext(const EitMediumParams& m, double delta) {
    const double e_sq_n = m.rabi_single_atom.rad_per_s() * m.rabi_single_atom.rad_per_s() *
                          m.n_ground;
    if (e_sq_n == 0.0)
        return {0.0, 0.0};

    const double da = m.delta_a.rad_per_s();
    const double ge = m.gamma_e.rad_per_s();
    const double gm = m.gamma_gm.rad_per_s();
    const double om_sq = m.rabi_control.rad_per_s() * m.rabi_control.rad_per_s();

    const double delta_term = delta * delta + 0.25 * gm * gm;
    const double d = (da * da + 0.25 * ge * ge) * delta_term + om_sq * om_sq -
                     2.0 * om_sq * (da * delta - 0.25 * ge * gm);
    if (std::abs(d) < 1e-300)
        throw DegenerateDenominator("chi_eit: denominator underflow");

    ComplexSusceptibility chi;
    chi.re = -e_sq_n * (da * delta_term - om_sq * delta) / d;
    chi.im = e_sq_n * (0.5 * ge * delta_term + 0.5 * om_sq * gm) / d;
    return chi;
}

// Full complex expression including the metastable population N_m. The
// overall sign is fixed so that the N_g-only limit reproduces the widetext
// pair (passive medium, Im >= 0).
ComplexSusceptibility chi_eit_full(const EitMediumParams& m, double delta) {
    using cd = std::complex<double>;
    const cd i(0.0, 1.0);
    const double e_sq = m.rabi_single_atom.rad_per_s() * m.rabi_single_atom.rad_per_s();
    const double da = m.delta_a.rad_per_s();
    const double dc = da - delta;
    const double ge = m.gamma_e.rad_per_s();
    const double gm = m.gamma_gm.rad_per_s();
    const double om = m.rabi_control.rad_per_s();

    const cd raman = delta + i * 0.5 * gm;
    const cd denom = da + i * 0.5 * ge - om * om / raman;
    if (std::abs(denom) < 1e-300)
        throw DegenerateDenominator("chi_eit: denominator underflow");
    const cd pop = m.n_ground + om * om * m.n_meta / ((dc - i * 0.5 * ge) * raman);
    const cd chi = -e_sq * pop / denom;
    return {chi.real(), chi.imag()};
}

} // namespace

ComplexSusceptibility chi_eit(const EitMediumParams& medium, TwoPhotonDetuning delta) {
    if (medium.n_atoms == 0.0)
        return {0.0, 0.0};
    if (medium.use_general_form)
        return chi_eit_full(medium, delta.delta.rad_per_s());
    return chi_eit_widetext(medium, delta.delta.rad_per_s());
}

ComplexSusceptibility chi_eit_shifted(const EitMediumParams& medium, TwoPhotonDetuning delta,
                                      AngularFrequency shift) {
    EitMediumParams shifted = medium;
    shifted.delta_a = medium.delta_a + shift;
    return chi_eit(shifted, TwoPhotonDetuning{delta.delta + shift});
}

std::complex<double> eit_cavity_field(const OpticalCavityParams& cavity,
                                      const EitMediumParams& medium, TwoPhotonDetuning delta) {
    return effective_cavity_response(cavity.detuning, cavity.kappa, chi_eit(medium, delta),
                                     cavity.drive);
}

namespace {

double locked_intensity(const OpticalCavityParams& cavity, const EitMediumParams& medium,
                        double detuning) {
    OpticalCavityParams c = cavity;
    c.detuning = AngularFrequency::from_rad_per_s(detuning);
    const auto field =
        eit_cavity_field(c, medium, TwoPhotonDetuning{AngularFrequency::from_rad_per_s(detuning)});
    return std::norm(field);
}

// Bisect for intensity(x) = target between x_lo (above target) and x_hi
// (below target).
double bisect_half_crossing(const OpticalCavityParams& cavity, const EitMediumParams& medium,
                            double x_above, double x_below, double target) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (x_above + x_below);
        if (locked_intensity(cavity, medium, mid) >= target)
            x_above = mid;
        else
            x_below = mid;
        if (std::abs(x_above - x_below) < 1e-12 * (std::abs(x_above) + std::abs(x_below) + 1.0))
            break;
    }
    return 0.5 * (x_above + x_below);
}

} // namespace

EitLinewidth eit_effective_linewidth(const OpticalCavityParams& cavity,
                                     const EitMediumParams& medium) {
    const double kappa = cavity.kappa.rad_per_s();

    // Coarse scan over +-2 kappa, then refine around the peak until its
    // position moves by < 0.1%.
    double lo = -2.0 * kappa;
    double hi = 2.0 * kappa;
    const int n = 2001;
    double peak_x = 0.0;
    double peak_i = -1.0;
    for (int pass = 0; pass < 60; ++pass) {
        double best_x = lo;
        double best_i = -1.0;
        const double step = (hi - lo) / (n - 1);
        for (int k = 0; k < n; ++k) {
            const double x = lo + k * step;
            const double v = locked_intensity(cavity, medium, x);
            if (v > best_i) {
                best_i = v;
                best_x = x;
            }
        }
        const bool settled =
            pass > 0 && std::abs(best_x - peak_x) <= 1e-3 * (std::abs(best_x) + step);
        peak_x = best_x;
        peak_i = best_i;
        if (settled)
            break;
        const double width = (hi - lo) / 16.0;
        lo = best_x - width;
        hi = best_x + width;
    }

    // Walk outward from the peak until the intensity drops below half.
    const double half = 0.5 * peak_i;
    double right = peak_x;
    double step = kappa / 1e6;
    bool bracketed = false;
    for (int it = 0; it < 400; ++it) {
        const double x = right + step;
        if (locked_intensity(cavity, medium, x) < half) {
            bracketed = true;
            break;
        }
        right = x;
        step *= 1.5;
    }
    if (!bracketed)
        throw GridTooCoarse("eit_effective_linewidth: right half-maximum not bracketed");
    const double x_right = bisect_half_crossing(cavity, medium, right, right + step, half);

    double left = peak_x;
    step = kappa / 1e6;
    bracketed = false;
    for (int it = 0; it < 400; ++it) {
        const double x = left - step;
        if (locked_intensity(cavity, medium, x) < half) {
            bracketed = true;
            break;
        }
        left = x;
        step *= 1.5;
    }
    if (!bracketed)
        throw GridTooCoarse("eit_effective_linewidth: left half-maximum not bracketed");
    const double x_left = bisect_half_crossing(cavity, medium, left, left - step, half);

    const auto chi0 = chi_eit(medium, TwoPhotonDetuning{AngularFrequency::from_rad_per_s(0.0)});

    EitLinewidth out;
    out.fwhm = AngularFrequency::from_rad_per_s(x_right - x_left);
    out.kappa_af_full = AngularFrequency::from_rad_per_s(kappa + chi0.im);
    out.kappa_af_half = AngularFrequency::from_rad_per_s(0.5 * kappa + chi0.im);
    out.peak_position = AngularFrequency::from_rad_per_s(peak_x);
    out.peak_amplitude = std::sqrt(peak_i);
    return out;
}

} // namespace lambdacool
