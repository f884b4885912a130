#ifndef LAMBDACOOL_UNITS_HPP
#define LAMBDACOOL_UNITS_HPP

#include <cmath>

#include "lambdacool/constants.hpp"
#include "lambdacool/errors.hpp"

namespace lambdacool {

// All rates, detunings and frequencies are carried internally in angular
// units (rad/s). Config files and CSV output speak Hz; from_hz applies the
// factor 2*pi, hz() removes it.
class AngularFrequency {
public:
    constexpr AngularFrequency() = default;

    static AngularFrequency from_rad_per_s(double w) {
        if (!std::isfinite(w))
            throw ValidationError("AngularFrequency", "value must be finite");
        return AngularFrequency(w);
    }

    static AngularFrequency from_hz(double f) { return from_rad_per_s(two_pi * f); }

    constexpr double rad_per_s() const { return value_; }
    constexpr double hz() const { return value_ / two_pi; }

    friend constexpr bool operator==(AngularFrequency a, AngularFrequency b) {
        return a.value_ == b.value_;
    }
    friend constexpr auto operator<=>(AngularFrequency a, AngularFrequency b) {
        return a.value_ <=> b.value_;
    }

private:
    explicit constexpr AngularFrequency(double w) : value_(w) {}
    double value_ = 0.0;
};

inline AngularFrequency operator+(AngularFrequency a, AngularFrequency b) {
    return AngularFrequency::from_rad_per_s(a.rad_per_s() + b.rad_per_s());
}
inline AngularFrequency operator-(AngularFrequency a, AngularFrequency b) {
    return AngularFrequency::from_rad_per_s(a.rad_per_s() - b.rad_per_s());
}
inline AngularFrequency operator*(double s, AngularFrequency a) {
    return AngularFrequency::from_rad_per_s(s * a.rad_per_s());
}
inline AngularFrequency operator-(AngularFrequency a) {
    return AngularFrequency::from_rad_per_s(-a.rad_per_s());
}

} // namespace lambdacool

#endif
