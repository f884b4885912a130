#include "lambdacool/backaction.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lambdacool {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

// -J^2 / (i (Delta_ca + shift + chi) - kappa_ca/2)
cd feedback_term(const OpticalCavityParams& cavity_a, ComplexSusceptibility chi, CouplingJ j,
                 AngularFrequency delta_ca, double shift) {
    const double j_sq = j.value.rad_per_s() * j.value.rad_per_s();
    if (j_sq == 0.0)
        return {0.0, 0.0};
    const cd denom(-chi.im - 0.5 * cavity_a.kappa.rad_per_s(),
                   delta_ca.rad_per_s() + shift + chi.re);
    return -j_sq / denom;
}

cd loop_denominator(const OpticalCavityParams& cavity_m, const OpticalCavityParams& cavity_a,
                    ComplexSusceptibility chi, CouplingJ j, const OperatingPoint& point,
                    double shift) {
    return -I * point.delta_cm_tilde.rad_per_s() + 0.5 * cavity_m.kappa.rad_per_s() +
           feedback_term(cavity_a, chi, j, point.delta_ca, shift);
}

CouplingJ effective_j(CouplingJ j, const OperatingPoint& point) {
    return point.topology == Topology::Bare ? CouplingJ::none() : j;
}

CoolingResult cooling_from_response(const MechanicalParams& mech, cd a_plus, cd a_minus,
                                    cd field_c) {
    const double omega_m = mech.omega_m.rad_per_s();
    const double g0 = mech.g0.rad_per_s();
    const double g_sq = g0 * g0 * std::norm(field_c);

    const cd den_plus = a_plus - I * omega_m;
    const cd den_minus = std::conj(a_minus) - I * omega_m;
    const double scale = std::abs(a_plus) + std::abs(a_minus) + omega_m;
    if (std::abs(den_plus) <= 1e-14 * scale || std::abs(den_minus) <= 1e-14 * scale)
        throw SingularResponse("cooling rates: pole at A = i omega_m");

    const cd inv_plus = 1.0 / den_plus;
    const cd inv_minus = 1.0 / den_minus;

    CoolingResult r;
    const double anti_stokes = 2.0 * g_sq * inv_plus.real();
    const double stokes = 2.0 * g_sq * inv_minus.real();
    r.gamma_anti_stokes = AngularFrequency::from_rad_per_s(anti_stokes);
    r.gamma_stokes = AngularFrequency::from_rad_per_s(stokes);
    r.gamma_opt = AngularFrequency::from_rad_per_s(anti_stokes - stokes);
    r.k_opt_per_mass = 2.0 * omega_m * g_sq * (inv_plus - inv_minus).imag();
    if (mech.mass > 0.0)
        r.k_opt = mech.mass * r.k_opt_per_mass;
    r.field_c = field_c;
    r.g_linear = AngularFrequency::from_rad_per_s(g0 * std::abs(field_c));
    r.stable = r.gamma_opt.rad_per_s() + mech.gamma_mech.rad_per_s() > 0.0;
    if (r.stable)
        r.n_min = n_min_phonons(r.gamma_stokes, r.gamma_opt, mech);
    return r;
}

} // namespace

std::complex<double> feedback_steady_field(const OpticalCavityParams& cavity_m,
                                           const OpticalCavityParams& cavity_a,
                                           ComplexSusceptibility chi, CouplingJ j,
                                           const OperatingPoint& point) {
    const cd denom =
        loop_denominator(cavity_m, cavity_a, chi, effective_j(j, point), point, 0.0);
    const double scale = std::abs(point.delta_cm_tilde.rad_per_s()) +
                         0.5 * cavity_m.kappa.rad_per_s() +
                         j.value.rad_per_s();
    if (std::abs(denom) <= 1e-12 * scale)
        throw SingularResponse("feedback_steady_field: loop gain cancels loss");
    return cavity_m.drive / denom;
}

SidebandResponse feedback_sidebands(const OpticalCavityParams& cavity_m,
                                    const OpticalCavityParams& cavity_a,
                                    ComplexSusceptibility chi_plus,
                                    ComplexSusceptibility chi_minus, CouplingJ j,
                                    const OperatingPoint& point, AngularFrequency omega_m) {
    const CouplingJ jj = effective_j(j, point);
    SidebandResponse sb;
    sb.chi_plus = chi_plus;
    sb.chi_minus = chi_minus;
    sb.a_plus = loop_denominator(cavity_m, cavity_a, chi_plus, jj, point, omega_m.rad_per_s());
    sb.a_minus = loop_denominator(cavity_m, cavity_a, chi_minus, jj, point, -omega_m.rad_per_s());
    return sb;
}

CoolingResult feedback_cooling(const MechanicalParams& mech, const SidebandResponse& sidebands,
                               std::complex<double> field_c) {
    return cooling_from_response(mech, sidebands.a_plus, sidebands.a_minus, field_c);
}

std::complex<double> cascade_drive(std::complex<double> medium_field, CouplingJ j, double eta_c) {
    return eta_c - I * j.value.rad_per_s() * medium_field;
}

CoolingResult cascade_cooling(const MechanicalParams& mech, const OpticalCavityParams& cavity_m,
                              std::complex<double> drive, const OperatingPoint& point) {
    const cd bare = -I * point.delta_cm_tilde.rad_per_s() + 0.5 * cavity_m.kappa.rad_per_s();
    const cd field_c = drive / bare;
    return cooling_from_response(mech, bare, bare, field_c);
}

double n_min_phonons(AngularFrequency gamma_stokes, AngularFrequency gamma_opt,
                     const MechanicalParams& mech) {
    const double denom = gamma_opt.rad_per_s() + mech.gamma_mech.rad_per_s();
    if (denom <= 0.0)
        throw ParametricInstability("n_min: Gamma_opt + gamma_mech <= 0");
    return (gamma_stokes.rad_per_s() + mech.gamma_mech.rad_per_s() * mech.n_bath) / denom;
}

double improvement_factor(double n_min_bare, double n_min_hybrid) {
    if (!(n_min_bare > 0.0))
        throw ValidationError("n_min_bare", "must be > 0");
    if (!(n_min_hybrid > 0.0))
        throw ValidationError("n_min_hybrid", "must be > 0");
    return n_min_bare / n_min_hybrid;
}

double implied_displacement(const MechanicalParams& mech, std::complex<double> field_c) {
    const double omega_m = mech.omega_m.rad_per_s();
    const double gamma = mech.gamma_mech.rad_per_s();
    return -2.0 * mech.g0.rad_per_s() * std::norm(field_c) * omega_m /
           (omega_m * omega_m + 0.25 * gamma * gamma);
}

CoolingResult evaluate_eit_feedback(const EitFeedbackSystem& system, const OperatingPoint& point) {
    const TwoPhotonDetuning delta{point.delta_two_photon};
    const auto chi0 = chi_eit(system.medium, delta);
    const auto chi_p = chi_eit_shifted(system.medium, delta, system.mech.omega_m);
    const auto chi_m = chi_eit_shifted(system.medium, delta, -system.mech.omega_m);

    const auto field =
        feedback_steady_field(system.cavity_m, system.cavity_a, chi0, system.j, point);
    const auto sb = feedback_sidebands(system.cavity_m, system.cavity_a, chi_p, chi_m, system.j,
                                       point, system.mech.omega_m);
    return feedback_cooling(system.mech, sb, field);
}

CoolingResult evaluate_rir_cascade(const RirCascadeSystem& system, const OperatingPoint& point) {
    cd drive;
    if (point.topology == Topology::Cascade) {
        const auto a_p = rir_medium_field(system.medium, system.grid, system.eta_medium,
                                          point.delta_two_photon);
        drive = cascade_drive(a_p, system.j, 0.0);
    } else if (point.topology == Topology::Bare) {
        drive = system.cavity_m.drive;
    } else {
        throw ValidationError("topology", "cascade system supports Cascade or Bare points");
    }
    return cascade_cooling(system.mech, system.cavity_m, drive, point);
}

namespace {

double objective_or_inf(const PointEvaluator& evaluate, double x, bool minimize_n,
                        CoolingResult* out) {
    try {
        CoolingResult r = evaluate(AngularFrequency::from_rad_per_s(x));
        if (out)
            *out = r;
        if (minimize_n) {
            if (!r.stable || !std::isfinite(r.n_min))
                return std::numeric_limits<double>::infinity();
            return r.n_min;
        }
        return -r.gamma_opt.rad_per_s();
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

CoolingOptimum optimize(const PointEvaluator& evaluate, AngularFrequency omega_m, double window,
                        int scan_points, bool minimize_n) {
    const double w = window * omega_m.rad_per_s();
    const double lo = -w;
    const double step = 2.0 * w / (scan_points - 1);

    double best_x = 0.0;
    double best_f = std::numeric_limits<double>::infinity();
    CoolingResult best_r;
    for (int k = 0; k < scan_points; ++k) {
        const double x = lo + k * step;
        CoolingResult r;
        const double f = objective_or_inf(evaluate, x, minimize_n, &r);
        if (f < best_f) {
            best_f = f;
            best_x = x;
            best_r = r;
        }
    }
    if (!std::isfinite(best_f))
        throw NoConvergence("optimize: no evaluable operating point in the window");

    // golden-section refinement on the bracketing neighbors
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::max(lo, best_x - step);
    double b = std::min(-lo, best_x + step);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = objective_or_inf(evaluate, x1, minimize_n, nullptr);
    double f2 = objective_or_inf(evaluate, x2, minimize_n, nullptr);
    const double tol = 1e-4 * omega_m.rad_per_s();
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective_or_inf(evaluate, x1, minimize_n, nullptr);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective_or_inf(evaluate, x2, minimize_n, nullptr);
        }
    }
    const double x_opt = 0.5 * (a + b);
    CoolingResult r_opt;
    const double f_opt = objective_or_inf(evaluate, x_opt, minimize_n, &r_opt);
    if (f_opt > best_f) {
        // scan point was better than the refined bracket; keep it
        return {AngularFrequency::from_rad_per_s(best_x), best_r};
    }
    return {AngularFrequency::from_rad_per_s(x_opt), r_opt};
}

} // namespace

CoolingOptimum minimize_n_min(const PointEvaluator& evaluate, AngularFrequency omega_m,
                              double window, int scan_points) {
    return optimize(evaluate, omega_m, window, scan_points, true);
}

CoolingOptimum maximize_gamma_opt(const PointEvaluator& evaluate, AngularFrequency omega_m,
                                  double window, int scan_points) {
    return optimize(evaluate, omega_m, window, scan_points, false);
}

} // namespace lambdacool
