#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <variant>

namespace parampstat
{

// Single-mode filter integrals behind a moment set.
struct FilterIntegrals
{
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
};

// Frequency-resolved mode sums behind a moment set.
struct ModeSums
{
    double mode_width = 0.0; // Delta
    double tau = 0.0;
    long max_index = 0;      // bins n in [-max_index, max_index] were summed
    double scaled_mean = 0.0;     // tau * Delta * <n>_Delta
    double scaled_variance = 0.0; // tau * Delta * <dn^2>_Delta
};

// Squeezed-vacuum closed form; no integrals involved.
struct AnalyticReference
{
};

struct MomentSet
{
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> third_central; // absent where no formula exists
    std::variant<AnalyticReference, FilterIntegrals, ModeSums> components;
    double quad_error = 0.0;       // accumulated quadrature error estimate
    std::size_t evaluations = 0;   // integrand evaluations
    bool third_extrapolated = false;
};

// <n>, <n^2>, <n^3> from the central moments; the third is NaN when absent.
inline std::array<double, 3> raw_moments(const MomentSet &m)
{
    const double mu = m.mean;
    const double m2 = m.variance + mu * mu;
    const double m3 = m.third_central ? *m.third_central + 3.0 * mu * m.variance + mu * mu * mu
                                      : std::numeric_limits<double>::quiet_NaN();
    return {mu, m2, m3};
}

// Central moments from raw <n>, <n^2>, <n^3>.
inline MomentSet central_moments(const std::array<double, 3> &raw)
{
    MomentSet m;
    const double mu = raw[0];
    m.mean = mu;
    m.variance = raw[1] - mu * mu;
    m.third_central = raw[2] - 3.0 * mu * raw[1] + 2.0 * mu * mu * mu;
    return m;
}

} // namespace parampstat
