#ifndef LAMBDACOOL_SWEEP_HPP
#define LAMBDACOOL_SWEEP_HPP

#include <optional>
#include <variant>

#include "lambdacool/backaction.hpp"
#include "lambdacool/config.hpp"
#include "lambdacool/csv.hpp"

namespace lambdacool::sweep {

// ---- resolved physics ----------------------------------------------------

struct ResolvedEitFeedback {
    EitFeedbackSystem system;
};

struct ResolvedRirCascade {
    RirCascadeSystem system;
};

struct ResolvedBare {
    OpticalCavityParams cavity_m;
    MechanicalParams mech;
};

using ResolvedSystem = std::variant<ResolvedEitFeedback, ResolvedRirCascade, ResolvedBare>;

// Builds the physics objects from a validated config. ValidationErrors are
// rethrown with the dotted config path of the offending key.
ResolvedSystem resolve_system(const RunConfig& config);

// Cooling evaluation at one swept detuning, honoring the lock mode, the
// topology (hybrid / bare baseline) and the photon cap.
CoolingResult evaluate_point(const RunConfig& config, const ResolvedSystem& resolved,
                             AngularFrequency delta_cm_tilde, bool bare_baseline);

// ---- sweep driver ----------------------------------------------------------

// Evaluates the configured observable on the (possibly 2-D) grid. Rows are
// ordered axis2-major. Per-point numerical failures are flagged in the `ok`
// column, never dropped; config-level failures throw. threads = 0 reads
// LAMBDACOOL_THREADS, falling back to the hardware count.
SweepTable run_sweep(const RunConfig& config, int threads = 0);

int worker_count(int requested);

// Full resolved metadata block shared by every output of a run.
std::map<std::string, std::string> build_metadata(const RunConfig& config);

} // namespace lambdacool::sweep

#endif
