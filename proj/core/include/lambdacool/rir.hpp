#ifndef LAMBDACOOL_RIR_HPP
#define LAMBDACOOL_RIR_HPP

#include <complex>
#include <span>
#include <vector>

#include "lambdacool/params.hpp"
#include "lambdacool/response.hpp"

namespace lambdacool {

// Recoil-induced resonance medium: a thermal 1-D gas probed by counter-
// propagating control (omega_1) and coupling (omega_2) beams.
//
// Sign conventions of this module (they differ from the EIT module):
// Delta_a = omega_0 - omega_1 and delta = omega_2 - omega_1.
struct RirMediumParams {
    double n_atoms = 0.0;              // N
    AngularFrequency rabi_control;     // Omega
    AngularFrequency rabi_single_atom; // E_a
    AngularFrequency delta_a;          // single-photon detuning
    double beta = 0.0;                 // Omega / Delta_a
    AngularFrequency omega_r;          // recoil frequency hbar k^2 / 2 m_a
    AngularFrequency gamma_coh;        // momentum-coherence decay
    AngularFrequency gamma_pop;        // population relaxation (oracle only)
    double temperature = 0.0;          // K
    AngularFrequency gamma_e;
    double medium_length = 0.0;        // m
    AngularFrequency kappa_a;          // free-space decay c / L_a

    static RirMediumParams make(double n_atoms, AngularFrequency rabi_control,
                                AngularFrequency rabi_single_atom, AngularFrequency delta_a,
                                AngularFrequency omega_r, AngularFrequency gamma_coh,
                                double temperature_k, AngularFrequency gamma_e,
                                double medium_length_m,
                                AngularFrequency gamma_pop = AngularFrequency{});

    // |beta| above this prints no error but flags the perturbative expansion
    // as doubtful.
    bool beta_is_large() const { return std::abs(beta) > 0.3; }
};

RirMediumParams validate_rir(const RirMediumParams& params);

// Thermal momentum spread in units of 2 hbar k_0:
// sigma_p = sqrt(k_B T_a / (8 hbar omega_r)).
double thermal_sigma_p(double temperature_k, AngularFrequency omega_r);

// Uniform, symmetric grid of dimensionless momenta p = hbar k / (2 hbar k_0)
// with trapezoid-normalized thermal weights (sum = 1).
struct MomentumGrid {
    std::vector<double> p_values;
    std::vector<double> weights;
    double p_max = 0.0;
    int n_points = 0;
    double sigma_p = 0.0;
    double spacing() const { return p_values.size() > 1 ? p_values[1] - p_values[0] : 0.0; }
};

struct GridSpec {
    double p_max = 0.0; // 0 = auto (8 sigma_p)
    int n_points = 0;   // 0 = auto; must be odd otherwise
};

MomentumGrid thermal_distribution(double temperature_k, AngularFrequency omega_r,
                                  const GridSpec& spec = {});

// Default grid for a medium: covers 8 sigma_p with spacing fine enough that
// gamma_coh spans >= 4 grid-induced frequency steps (step = 8 omega_r dp).
MomentumGrid default_grid(const RirMediumParams& medium);

// Doubles n_points until chi at the probe detunings changes by less than
// rel_tol, then returns the converged grid.
MomentumGrid make_converged_grid(const RirMediumParams& medium,
                                 std::span<const double> probe_deltas_rad_s,
                                 double rel_tol = 1e-6);

// chi_RIR(delta): dispersive background E^2 N / Delta_a plus the thermal sum
// of coherence Lorentzians at D_pm = delta + 4 omega_r (2p +- 1).
ComplexSusceptibility chi_rir(const RirMediumParams& medium, const MomentumGrid& grid,
                              AngularFrequency delta);

// Sideband evaluation: only delta moves with the coupling-beam frequency.
ComplexSusceptibility chi_rir_shifted(const RirMediumParams& medium, const MomentumGrid& grid,
                                      AngularFrequency delta, AngularFrequency shift);

// Steady coupling field after the free-space medium,
// <a_p> = eta / (-i Delta_ca + kappa_a/2 - i chi_RIR); Delta_ca = 0 is the
// running-wave form.
std::complex<double> rir_medium_field(const RirMediumParams& medium, const MomentumGrid& grid,
                                      double drive, AngularFrequency delta,
                                      AngularFrequency cavity_detuning = AngularFrequency{});

} // namespace lambdacool

#endif
