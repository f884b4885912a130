#ifndef LAMBDACOOL_EIT_HPP
#define LAMBDACOOL_EIT_HPP

#include <complex>

#include "lambdacool/params.hpp"
#include "lambdacool/response.hpp"

namespace lambdacool {

// Three-level Lambda ensemble driven by a strong control field (Rabi
// frequency Omega on |m> - |e>) and the weak intracavity coupling field
// (single-atom Rabi frequency E_a on |g> - |e>).
//
// Sign conventions of this module: Delta_a = omega_2 - omega_eg,
// Delta_c = omega_1 - omega_em, two-photon detuning delta = Delta_a - Delta_c.
// gamma_gm names the ground-metastable coherence decay (often written gamma_m);
// the mechanical damping rate is a separate field in MechanicalParams.
struct EitMediumParams {
    double n_atoms = 0.0;         // N
    double n_ground = 0.0;        // N_g
    double n_meta = 0.0;          // N_m
    AngularFrequency rabi_control;     // Omega
    AngularFrequency rabi_single_atom; // E_a
    AngularFrequency gamma_e;          // excited-state coherence decay
    AngularFrequency gamma_gm;         // ground-metastable coherence decay
    AngularFrequency delta_a;          // single-photon detuning
    AngularFrequency delta_c;          // control detuning (reference value)
    // The closed form with N_m != 0; off by default, every figure uses N_g = N.
    bool use_general_form = false;

    // All atoms in |g>.
    static EitMediumParams all_ground(double n_atoms, AngularFrequency rabi_control,
                                      AngularFrequency rabi_single_atom,
                                      AngularFrequency gamma_e, AngularFrequency gamma_gm,
                                      AngularFrequency delta_a);
};

EitMediumParams validate_eit(const EitMediumParams& params);

struct TwoPhotonDetuning {
    AngularFrequency delta;
};

// chi_EIT(delta). Default path is the explicit Re/Im pair for N_g = N; with
// use_general_form the full complex expression including the N_m term is
// used (Delta_c is then derived as Delta_a - delta).
ComplexSusceptibility chi_eit(const EitMediumParams& medium, TwoPhotonDetuning delta);

// chi at the coupling-beam frequency shifted by `shift` (sideband
// evaluation): both delta and Delta_a move, Delta_c stays.
ComplexSusceptibility chi_eit_shifted(const EitMediumParams& medium, TwoPhotonDetuning delta,
                                      AngularFrequency shift);

// Steady intracavity field of the atom-dressed cavity,
// <a> = eta / (-i Delta_ca + kappa_ca/2 - i chi_EIT).
std::complex<double> eit_cavity_field(const OpticalCavityParams& cavity,
                                      const EitMediumParams& medium, TwoPhotonDetuning delta);

struct EitLinewidth {
    AngularFrequency fwhm;          // numerical FWHM of |<a>|^2 under the delta = Delta_ca lock
    AngularFrequency kappa_af_full; // kappa_ca + Im[chi](delta=0)
    AngularFrequency kappa_af_half; // kappa_ca/2 + Im[chi](delta=0); both width conventions reported
    AngularFrequency peak_position; // lock detuning of the response maximum
    double peak_amplitude = 0.0;
};

// Scans |eit_cavity_field|^2 over the cavity detuning with the two-photon
// detuning locked to it (delta = Delta_ca) and extracts the full width at
// half maximum by adaptive refinement plus bisection.
EitLinewidth eit_effective_linewidth(const OpticalCavityParams& cavity,
                                     const EitMediumParams& medium);

} // namespace lambdacool

#endif
