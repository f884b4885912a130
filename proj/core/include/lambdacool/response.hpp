#ifndef LAMBDACOOL_RESPONSE_HPP
#define LAMBDACOOL_RESPONSE_HPP

#include <complex>

#include "lambdacool/params.hpp"

namespace lambdacool {

// Steady intracavity field of a driven mode dressed by a medium:
//
//   <a> = eta / (-i*Delta + kappa/2 - i*chi)
//
// Shared by the EIT-dressed cavity and the free-space RIR medium. Throws
// SingularResponse when the denominator modulus drops below
// singular_rel_eps * (|Delta| + kappa/2 + |chi|): gain cancels loss and the
// linear steady state stops existing.
std::complex<double> effective_cavity_response(AngularFrequency detuning, AngularFrequency kappa,
                                               ComplexSusceptibility chi, double drive,
                                               double singular_rel_eps = 1e-9);

} // namespace lambdacool

#endif
