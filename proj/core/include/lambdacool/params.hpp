#ifndef LAMBDACOOL_PARAMS_HPP
#define LAMBDACOOL_PARAMS_HPP

#include <complex>

#include "lambdacool/units.hpp"

namespace lambdacool {

// Complex optical susceptibility chi(delta), in rad/s. re shifts the
// effective cavity detuning, im adds loss (positive) or gain (negative).
struct ComplexSusceptibility {
    double re = 0.0; // dispersive part, rad/s
    double im = 0.0; // absorptive part, rad/s

    std::complex<double> value() const { return {re, im}; }
};

inline ComplexSusceptibility operator+(ComplexSusceptibility a, ComplexSusceptibility b) {
    return {a.re + b.re, a.im + b.im};
}

// One driven optical cavity. `drive` is eta = sqrt(P_in * kappa_in / (hbar*omega))
// in sqrt(photons)/s; it is stored alongside the power it was derived from so
// validation can cross-check the two.
struct OpticalCavityParams {
    AngularFrequency kappa;     // total decay rate
    AngularFrequency kappa_in;  // input-mirror coupling, 0 < kappa_in <= kappa
    AngularFrequency detuning;  // drive frequency minus cavity resonance
    double drive = 0.0;         // sqrt(photons)/s
    double input_power = 0.0;   // W
    double drive_wavelength = 0.0; // m; 0 when the drive was given directly

    static OpticalCavityParams from_power(AngularFrequency kappa, AngularFrequency kappa_in,
                                          AngularFrequency detuning, double input_power_w,
                                          double wavelength_m);
    static OpticalCavityParams from_drive(AngularFrequency kappa, AngularFrequency kappa_in,
                                          AngularFrequency detuning, double drive);
};

// eta = sqrt(P * kappa_in / (hbar * omega)) with omega = 2 pi c / lambda.
double drive_amplitude(double power_w, AngularFrequency kappa_in, double wavelength_m);

// Returns params unchanged if all invariants hold, otherwise throws the
// error naming the offending field.
OpticalCavityParams validate_cavity(const OpticalCavityParams& params);

struct MechanicalParams {
    AngularFrequency omega_m;     // mode frequency
    double quality_factor = 0.0;  // Q
    AngularFrequency gamma_mech;  // omega_m / Q
    AngularFrequency g0;          // single-photon optomechanical coupling
    double bath_temperature = 0.0; // K
    double n_bath = 0.0;           // k_B T_bath / (hbar omega_m)
    double mass = 0.0;             // kg; 0 = unspecified, k_opt reported per unit mass

    static MechanicalParams make(AngularFrequency omega_m, double quality_factor,
                                 AngularFrequency g0, double bath_temperature_k,
                                 double mass_kg = 0.0);
};

MechanicalParams validate_mechanics(const MechanicalParams& params);

// Inter-cavity coupling J. The two factories encode the two topologies'
// conventions.
struct CouplingJ {
    AngularFrequency value;

    // sqrt(kappa_l,ca * kappa_l,cm)
    static CouplingJ feedback(AngularFrequency kappa_in_a, AngularFrequency kappa_in_m);
    // sqrt(kappa_a * kappa_cm / 2), running-wave medium feeding the cavity
    static CouplingJ cascade(AngularFrequency kappa_a, AngularFrequency kappa_cm);
    static CouplingJ none() { return {AngularFrequency{}}; }
};

} // namespace lambdacool

#endif
