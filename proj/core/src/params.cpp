#include "lambdacool/params.hpp"

#include <cmath>

namespace lambdacool {

double drive_amplitude(double power_w, AngularFrequency kappa_in, double wavelength_m) {
    if (power_w < 0.0 || !std::isfinite(power_w))
        throw NegativePower("power");
    if (kappa_in.rad_per_s() <= 0.0)
        throw NonPositiveLinewidth("kappa_in");
    if (wavelength_m <= 0.0 || !std::isfinite(wavelength_m))
        throw ValidationError("wavelength", "must be > 0");
    const double photon_energy = hbar * two_pi * speed_of_light / wavelength_m;
    return std::sqrt(power_w * kappa_in.rad_per_s() / photon_energy);
}

OpticalCavityParams OpticalCavityParams::from_power(AngularFrequency kappa,
                                                    AngularFrequency kappa_in,
                                                    AngularFrequency detuning,
                                                    double input_power_w, double wavelength_m) {
    OpticalCavityParams p;
    p.kappa = kappa;
    p.kappa_in = kappa_in;
    p.detuning = detuning;
    p.input_power = input_power_w;
    p.drive_wavelength = wavelength_m;
    p.drive = drive_amplitude(input_power_w, kappa_in, wavelength_m);
    return validate_cavity(p);
}

OpticalCavityParams OpticalCavityParams::from_drive(AngularFrequency kappa,
                                                    AngularFrequency kappa_in,
                                                    AngularFrequency detuning, double drive) {
    OpticalCavityParams p;
    p.kappa = kappa;
    p.kappa_in = kappa_in;
    p.detuning = detuning;
    p.drive = drive;
    return validate_cavity(p);
}

OpticalCavityParams validate_cavity(const OpticalCavityParams& params) {
    if (params.kappa.rad_per_s() <= 0.0)
        throw NonPositiveLinewidth("kappa");
    if (params.kappa_in.rad_per_s() <= 0.0)
        throw NonPositiveLinewidth("kappa_in");
    if (params.kappa_in.rad_per_s() > params.kappa.rad_per_s())
        throw InputCouplingExceedsTotal("kappa_in");
    if (params.input_power < 0.0)
        throw NegativePower("input_power");
    if (params.drive < 0.0)
        throw NegativePower("drive");
    if (params.input_power > 0.0 && params.drive_wavelength > 0.0) {
        const double expected =
            drive_amplitude(params.input_power, params.kappa_in, params.drive_wavelength);
        if (std::abs(params.drive - expected) > 1e-12 * expected)
            throw ValidationError("drive",
                                  "inconsistent with sqrt(P_in * kappa_in / hbar omega)");
    }
    return params;
}

MechanicalParams MechanicalParams::make(AngularFrequency omega_m, double quality_factor,
                                        AngularFrequency g0, double bath_temperature_k,
                                        double mass_kg) {
    MechanicalParams m;
    m.omega_m = omega_m;
    m.quality_factor = quality_factor;
    m.gamma_mech = AngularFrequency::from_rad_per_s(omega_m.rad_per_s() / quality_factor);
    m.g0 = g0;
    m.bath_temperature = bath_temperature_k;
    m.n_bath = k_boltzmann * bath_temperature_k / (hbar * omega_m.rad_per_s());
    m.mass = mass_kg;
    return validate_mechanics(m);
}

MechanicalParams validate_mechanics(const MechanicalParams& params) {
    if (params.omega_m.rad_per_s() <= 0.0)
        throw ValidationError("omega_m", "must be > 0");
    if (params.quality_factor <= 0.0)
        throw ValidationError("quality_factor", "must be > 0");
    if (params.bath_temperature < 0.0)
        throw ValidationError("bath_temperature", "must be >= 0");
    if (params.mass < 0.0)
        throw ValidationError("mass", "must be >= 0");
    const double expected_gamma = params.omega_m.rad_per_s() / params.quality_factor;
    if (params.gamma_mech.rad_per_s() != expected_gamma)
        throw ValidationError("gamma_mech", "must equal omega_m / Q");
    return params;
}

CouplingJ CouplingJ::feedback(AngularFrequency kappa_in_a, AngularFrequency kappa_in_m) {
    return {AngularFrequency::from_rad_per_s(
        std::sqrt(kappa_in_a.rad_per_s() * kappa_in_m.rad_per_s()))};
}

CouplingJ CouplingJ::cascade(AngularFrequency kappa_a, AngularFrequency kappa_cm) {
    return {AngularFrequency::from_rad_per_s(
        std::sqrt(kappa_a.rad_per_s() * kappa_cm.rad_per_s() / 2.0))};
}

} // namespace lambdacool
