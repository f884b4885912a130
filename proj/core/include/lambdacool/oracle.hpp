#ifndef LAMBDACOOL_ORACLE_HPP
#define LAMBDACOOL_ORACLE_HPP

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lambdacool/eit.hpp"
#include "lambdacool/params.hpp"
#include "lambdacool/rir.hpp"

// Independent time-domain integrator of the equations of motion. Its steady
// states are the reference values against which the closed-form
// susceptibilities and cavity responses are verified.
namespace lambdacool::oracle {

using State = std::vector<std::complex<double>>;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol_scale = 1e-12; // fallback absolute tolerance, times state norm
    double t_end = 0.0;           // 0 = pick from the system's slowest rate
    // Steady state: coarse-grained drift <= steady_rel * rate_scale * (|y_i| + floor).
    double steady_rel = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 150'000'000;
    int check_every = 25;
    // Per-component absolute error floors. Badly scaled systems (atom-number
    // populations next to near-zero coherences) need these so the controller
    // keeps every component inside its stability region.
    std::vector<double> abs_floor;
};

struct IntegrationStats {
    double t_reached = 0.0;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    bool converged = false;
};

// Adaptive embedded Dormand-Prince 5(4). Integrates until the steady-state
// criterion fires or t_end is reached (the latter throws NoConvergence when
// the criterion was requested). rate_scale converts the derivative norm
// into a dimensionless residual.
IntegrationStats integrate_adaptive(const Rhs& rhs, State& y, double rate_scale,
                                    const IntegratorOptions& options,
                                    const std::function<void(double, const State&)>& sample = {});

// ---- EIT oracle ---------------------------------------------------------

// Rotating-frame expectation values: the explicit interaction-picture
// phases of the equations of motion are absorbed so the steady state is a
// true fixed point. Populations enter as constants (continuous Raman
// sideband cooling keeps them repopulated); their sum is conserved trivially and
// checked anyway.
struct EitState {
    std::complex<double> a{};
    std::complex<double> sigma_ge{};
    std::complex<double> sigma_gm{};
    std::complex<double> sigma_em{};
    double n_ground = 0.0;
    double n_meta = 0.0;
};

struct EitOracleOptions {
    IntegratorOptions base{};
    bool adiabatic_field = false; // slave <a> to the atoms (kappa_ca >> all rates)
    int trajectory_samples = 0;   // 0 = no trajectory
};

struct EitRun {
    EitState steady{};
    IntegrationStats stats{};
    std::vector<std::pair<double, EitState>> trajectory;
};

EitRun integrate_eit(const OpticalCavityParams& cavity, const EitMediumParams& medium,
                     TwoPhotonDetuning delta, const EitState& initial,
                     const EitOracleOptions& options = {});

// ---- RIR oracle ---------------------------------------------------------

// Populations and momentum coherences on a grid whose spacing divides the
// two-photon-recoil unit, so the p -> p +- 1 couplings land on grid nodes.
struct RirState {
    std::complex<double> a{};          // fixed coupling field (constant-field approximation)
    std::vector<double> populations;   // Pi_p, sums to N
    std::vector<std::complex<double>> zeta_plus;
    std::vector<std::complex<double>> zeta_minus;
};

struct RirOracleOptions {
    IntegratorOptions base{};
    int trajectory_samples = 0;
};

struct RirRun {
    RirState steady{};
    IntegrationStats stats{};
    std::vector<std::pair<double, State>> trajectory; // flattened state, debug dumps
};

// Grid with spacing 1/per_unit covering +- p_max (0 = 8 sigma_p).
MomentumGrid oracle_grid(const RirMediumParams& medium, int per_unit = 2, double p_max = 0.0);

// Thermal-equilibrium state with zero coherences for the given field.
RirState thermal_rir_state(const RirMediumParams& medium, const MomentumGrid& grid,
                           std::complex<double> field);

RirRun integrate_rir(const RirMediumParams& medium, const MomentumGrid& grid,
                     const RirState& initial, AngularFrequency delta,
                     const RirOracleOptions& options = {});

// Closed-form steady coherences for given populations (used to verify the
// integrator and to contract chi).
void steady_coherences(const RirMediumParams& medium, const MomentumGrid& grid,
                       std::complex<double> field, std::span<const double> populations,
                       AngularFrequency delta, std::vector<std::complex<double>>& zeta_plus,
                       std::vector<std::complex<double>>& zeta_minus);

// Contraction of the coherences against the field equation:
// chi = E^2 N / Delta_a + beta E Sum_p zeta_minus(p) / <a>.
ComplexSusceptibility chi_rir_from_state(const RirMediumParams& medium, const RirState& state);

double total_population(const RirState& state);

// ---- equivalence check ----------------------------------------------------

// Random-parameter comparison of the time-domain steady states against the
// closed forms: the dressed-cavity response for EIT, the coherence-contracted
// susceptibility for RIR. Drives are drawn inside the linear-response regime
// both closed forms assume.
struct EquivalenceOutcome {
    int checked = 0;
    int failed = 0;
    double worst_rel = 0.0;
    std::vector<std::string> failures;
    std::vector<double> residuals; // per point, EIT block then RIR block
};

EquivalenceOutcome verify_oracle_equivalence(int points_per_scheme, unsigned seed,
                                             double tolerance);

} // namespace lambdacool::oracle

#endif
