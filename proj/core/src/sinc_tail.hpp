#pragma once

#include "parampstat/quadrature.hpp"

namespace parampstat::detail
{

// Integral of sinc(pi (x - n)) sinc(pi (x - m)) over x > upper plus x < -lower,
// with sinc(y) = sin(y)/y. n, m, upper, lower are integers with upper > max(n, m)
// and lower > max(-n, -m). Uses the closed form of the non-oscillating part and
// the leading asymptotic term of the oscillating part (error O(X^-5)).
double sinc_product_tails(long n, long m, long upper, long lower);

// int_x^inf envelope(nu) (a - cos(2 pi (nu - x) / period)) / 2 dnu for a smooth
// envelope decaying at least as nu^-2. The constant part is integrated
// numerically, the oscillating part through its leading asymptotic term
// envelope'(x) (period / 2 pi)^2.
quad::QuadratureResult<double> modulated_tail(const quad::RealIntegrand &envelope, double a, double x, double period,
                                              const quad::QuadratureSpec &spec);

} // namespace parampstat::detail
