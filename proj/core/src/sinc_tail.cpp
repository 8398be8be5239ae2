#include "sinc_tail.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace parampstat::detail
{

namespace
{

// Integral over x > X (X integer) of sin^2(pi x) / (pi^2 (x - n)(x - m)).
double right_tail(double n, double m, double x)
{
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    const double a = x - n;
    const double b = x - m;
    const double smooth = n == m ? 1.0 / a : std::log(b / a) / (n - m);
    // derivatives of 1/(ab); the series in 1/k^2 alternates with k = 2 pi
    const double d1 = -(a + b) / (a * a * b * b);
    const double d3 = -6.0 * (a + b) * (a * a + b * b) / (a * a * a * a * b * b * b * b);
    const double oscillating = d1 / (4.0 * pi2) - d3 / (16.0 * pi2 * pi2);
    return (smooth + oscillating) / (2.0 * pi2);
}

} // namespace

double sinc_product_tails(long n, long m, long upper, long lower)
{
    // sinc(pi(x-n)) sinc(pi(x-m)) = (-1)^(n+m) sin^2(pi x) / (pi^2 (x-n)(x-m))
    const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;
    const double right = right_tail(static_cast<double>(n), static_cast<double>(m), static_cast<double>(upper));
    const double left = right_tail(static_cast<double>(-n), static_cast<double>(-m), static_cast<double>(lower));
    return sign * (right + left);
}

quad::QuadratureResult<double> modulated_tail(const quad::RealIntegrand &envelope, double a, double x, double period,
                                              const quad::QuadratureSpec &spec)
{
    quad::QuadratureResult<double> smooth;
    if (a != 0.0)
    {
        smooth = quad::integrate(envelope, x, std::numeric_limits<double>::infinity(), spec);
        smooth.value *= 0.5 * a;
        smooth.error_estimate *= 0.5 * std::abs(a);
    }
    const double h = 1e-2 * period;
    const double slope = (envelope(x + h) - envelope(x - h)) / (2.0 * h);
    const double k = 2.0 * std::numbers::pi / period;
    smooth.value += 0.5 * slope / (k * k);
    smooth.evaluations += 2;
    return smooth;
}

} // namespace parampstat::detail
