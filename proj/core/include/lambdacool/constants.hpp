#ifndef LAMBDACOOL_CONSTANTS_HPP
#define LAMBDACOOL_CONSTANTS_HPP

namespace lambdacool {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018 (exact by SI definition)
inline constexpr double planck_h = 6.62607015e-34;       // J s
inline constexpr double hbar = 1.054571817e-34;          // J s (h / 2pi, rounded)
inline constexpr double k_boltzmann = 1.380649e-23;      // J / K
inline constexpr double speed_of_light = 299792458.0;    // m / s

inline constexpr char version_string[] = "0.1.0";

} // namespace lambdacool

#endif
