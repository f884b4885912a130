#include "lambdacool/response.hpp"

#include <cmath>

namespace lambdacool {

std::complex<double> effective_cavity_response(AngularFrequency detuning, AngularFrequency kappa,
                                               ComplexSusceptibility chi, double drive,
                                               double singular_rel_eps) {
    const double delta = detuning.rad_per_s();
    const double half_kappa = 0.5 * kappa.rad_per_s();
    // -i*Delta + kappa/2 - i*chi = (kappa/2 + Im chi) - i*(Delta + Re chi)
    const std::complex<double> denom(half_kappa + chi.im, -(delta + chi.re));
    const double scale = std::abs(delta) + half_kappa + std::hypot(chi.re, chi.im);
    if (std::abs(denom) <= singular_rel_eps * scale)
        throw SingularResponse("effective_cavity_response: gain cancels loss at this detuning");
    return drive / denom;
}

} // namespace lambdacool
