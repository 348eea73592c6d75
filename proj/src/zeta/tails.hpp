#pragma once

#include "galsum/zeta.hpp"

namespace galsum::zeta::detail {

// int_x^inf sin(v)/v dv for x > 0
double sin_tail(double x);
// int_U^inf cos(c u)/u^2 du
double cos_over_u2_tail(double c, double U);
// int_U^inf K(u) cos(lambda u) du
double K_cos_tail(const KernelParams& p, double lambda, double U);

}  // namespace galsum::zeta::detail
