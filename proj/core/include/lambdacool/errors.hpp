#ifndef LAMBDACOOL_ERRORS_HPP
#define LAMBDACOOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lambdacool {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter rejected during validation. `field` names the offending entry,
// either a struct member or a dotted config path.
struct ValidationError : Error {
    std::string field;
    ValidationError(std::string field_name, const std::string& message)
        : Error(field_name + ": " + message), field(std::move(field_name)) {}
};

struct NonPositiveLinewidth : ValidationError {
    explicit NonPositiveLinewidth(const std::string& field_name)
        : ValidationError(field_name, "cavity linewidth must be > 0") {}
};

struct InputCouplingExceedsTotal : ValidationError {
    explicit InputCouplingExceedsTotal(const std::string& field_name)
        : ValidationError(field_name, "input-mirror coupling exceeds total decay rate") {}
};

struct NegativePower : ValidationError {
    explicit NegativePower(const std::string& field_name)
        : ValidationError(field_name, "optical power must be >= 0") {}
};

// Cavity/medium response denominator collapsed: gain cancels loss, the
// linearized steady state does not exist (lasing threshold).
struct SingularResponse : Error {
    using Error::Error;
};

// Susceptibility denominator underflowed to (numerically) zero.
struct DegenerateDenominator : Error {
    using Error::Error;
};

// Momentum grid does not cover the requested thermal spread.
struct GridTooNarrow : Error {
    using Error::Error;
};

// A scanned feature (FWHM bracket, peak) could not be resolved on the grid.
struct GridTooCoarse : Error {
    using Error::Error;
};

// Total damping Gamma_opt + gamma_mech <= 0: no steady phonon number.
struct ParametricInstability : Error {
    using Error::Error;
};

// Time integrator did not reach a steady state before t_end.
struct NoConvergence : Error {
    using Error::Error;
};

// Config file syntax error with position information.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(int line_no, int column_no, const std::string& message)
        : Error("line " + std::to_string(line_no) + ", column " + std::to_string(column_no) +
                ": " + message),
          line(line_no), column(column_no) {}
};

struct UnknownFigure : Error {
    using Error::Error;
};

} // namespace lambdacool

#endif
