#ifndef LAMBDACOOL_BACKACTION_HPP
#define LAMBDACOOL_BACKACTION_HPP

#include <complex>
#include <functional>
#include <limits>

#include "lambdacool/eit.hpp"
#include "lambdacool/params.hpp"
#include "lambdacool/rir.hpp"

namespace lambdacool {

enum class Topology { Feedback, Cascade, Bare };

// One evaluation point of the composed system. delta_cm_tilde is the shifted
// optomechanical detuning Delta_cm - g0 <x>, swept directly; delta_ca and
// delta_two_photon fix where the carrier sits relative to the atomic cavity
// and the medium resonances.
struct OperatingPoint {
    AngularFrequency delta_cm_tilde;
    AngularFrequency delta_ca;
    AngularFrequency delta_two_photon;
    Topology topology = Topology::Bare;
};

// A^(+-) of the linearized feedback loop plus the susceptibilities the two
// sidebands saw.
struct SidebandResponse {
    std::complex<double> a_plus;
    std::complex<double> a_minus;
    ComplexSusceptibility chi_plus;
    ComplexSusceptibility chi_minus;
};

struct CoolingResult {
    AngularFrequency gamma_opt;         // gamma_anti_stokes - gamma_stokes, exactly
    AngularFrequency gamma_stokes;
    AngularFrequency gamma_anti_stokes;
    double k_opt_per_mass = 0.0;        // spring-constant shift / effective mass, s^-2
    double k_opt = std::numeric_limits<double>::quiet_NaN(); // N/m, needs mech.mass
    double n_min = std::numeric_limits<double>::quiet_NaN(); // set only when stable
    double xi = std::numeric_limits<double>::quiet_NaN();    // filled by sweep comparisons
    bool stable = false;                // gamma_opt + gamma_mech > 0
    std::complex<double> field_c;       // steady intracavity amplitude <c>
    AngularFrequency g_linear;          // g0 |<c>|
};

// Steady optomechanical cavity field with the atomic cavity folded in:
// <c> = eta_c (-i Dtilde_cm - J^2/(i(Delta_ca + chi) - kappa_ca/2) + kappa_cm/2)^-1
std::complex<double> feedback_steady_field(const OpticalCavityParams& cavity_m,
                                           const OpticalCavityParams& cavity_a,
                                           ComplexSusceptibility chi, CouplingJ j,
                                           const OperatingPoint& point);

// A^(+-) with chi^(+-) evaluated at the coupling-beam frequency shifted by
// +- omega_m (the caller supplies the shifted susceptibilities).
SidebandResponse feedback_sidebands(const OpticalCavityParams& cavity_m,
                                    const OpticalCavityParams& cavity_a,
                                    ComplexSusceptibility chi_plus,
                                    ComplexSusceptibility chi_minus, CouplingJ j,
                                    const OperatingPoint& point, AngularFrequency omega_m);

// Back-action rates from the sideband response:
//   Gamma_anti-Stokes = 2 g^2 Re[1/(A+ - i w_m)],
//   Gamma_Stokes      = 2 g^2 Re[1/(A-* - i w_m)],
// with g = g0 |<c>|. k_opt uses the same bracket's imaginary part.
CoolingResult feedback_cooling(const MechanicalParams& mech, const SidebandResponse& sidebands,
                               std::complex<double> field_c);

// Effective drive reaching the optomechanical cavity in the cascade:
// eta_c - i J <a_p>.
std::complex<double> cascade_drive(std::complex<double> medium_field, CouplingJ j, double eta_c);

// Cascade rates: bare optomechanical Lorentzians for the sidebands, the
// atomic enhancement enters through the drive (hence |<c>|^2) only.
CoolingResult cascade_cooling(const MechanicalParams& mech, const OpticalCavityParams& cavity_m,
                              std::complex<double> drive, const OperatingPoint& point);

// n_min = (Gamma_Stokes + gamma_m n_bath) / (Gamma_opt + gamma_m).
// Throws ParametricInstability when the denominator is <= 0.
double n_min_phonons(AngularFrequency gamma_stokes, AngularFrequency gamma_opt,
                     const MechanicalParams& mech);

// xi = n_min(bare) / n_min(hybrid), each taken at its own optimum.
double improvement_factor(double n_min_bare, double n_min_hybrid);

// Static displacement implied by the mean field, in units of x_zpt
// (diagnostic for the swept-Dtilde convention).
double implied_displacement(const MechanicalParams& mech, std::complex<double> field_c);

// ---- composed systems -------------------------------------------------

struct EitFeedbackSystem {
    OpticalCavityParams cavity_m;
    OpticalCavityParams cavity_a;
    EitMediumParams medium;
    MechanicalParams mech;
    CouplingJ j;
};

// Evaluate one operating point; Topology::Bare forces J = 0.
CoolingResult evaluate_eit_feedback(const EitFeedbackSystem& system, const OperatingPoint& point);

struct RirCascadeSystem {
    OpticalCavityParams cavity_m; // drive field = direct eta_c (bare baseline)
    RirMediumParams medium;
    MomentumGrid grid;
    MechanicalParams mech;
    CouplingJ j;
    double eta_medium = 0.0; // drive entering the medium, sqrt(photons)/s
};

// Topology::Cascade drives the cavity through the medium only;
// Topology::Bare uses the direct eta_c at the same input power.
CoolingResult evaluate_rir_cascade(const RirCascadeSystem& system, const OperatingPoint& point);

// ---- optimization over the operating detuning --------------------------

struct CoolingOptimum {
    AngularFrequency delta_cm_tilde;
    CoolingResult result;
};

using PointEvaluator = std::function<CoolingResult(AngularFrequency delta_cm_tilde)>;

// Grid scan over |Dtilde| <= window*omega_m followed by golden-section
// refinement to 1e-4 omega_m. Unstable/singular points rank as +inf.
CoolingOptimum minimize_n_min(const PointEvaluator& evaluate, AngularFrequency omega_m,
                              double window = 3.0, int scan_points = 601);

CoolingOptimum maximize_gamma_opt(const PointEvaluator& evaluate, AngularFrequency omega_m,
                                  double window = 3.0, int scan_points = 601);

} // namespace lambdacool

#endif
