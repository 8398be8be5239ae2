#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <variant>

// Globally adaptive Gauss-Kronrod (10/21) integration over finite, semi-infinite
// and infinite intervals. Infinite ends are compactified onto a finite parameter
// interval before subdivision.
namespace parampstat::quad
{

// nu = t / (1 - t^2), t in (-1, 1). Suited to algebraically decaying tails.
struct RationalCompactification
{
};

// nu = tan(pi t / 2), t in (-1, 1). Maps a unit Lorentzian onto a constant.
struct TangentMap
{
};

// Integrate over [-nu_max, nu_max] only; the remainder is discarded.
struct TruncatedWindow
{
    double nu_max = 0.0;
};

using Mapping = std::variant<RationalCompactification, TangentMap, TruncatedWindow>;

struct QuadratureSpec
{
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000; // bisections beyond the initial panels
    Mapping mapping = RationalCompactification{};

    // Throws InvalidArgument unless rel_tol > 0, abs_tol >= 0, max_subdivisions >= 1.
    void validate() const;

    QuadratureSpec tightened(double factor) const;
};

template <class T>
struct QuadratureResult
{
    T value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;

    QuadratureResult &operator+=(const QuadratureResult &other)
    {
        value += other.value;
        error_estimate += other.error_estimate;
        evaluations += other.evaluations;
        return *this;
    }
    friend QuadratureResult operator+(QuadratureResult lhs, const QuadratureResult &rhs)
    {
        lhs += rhs;
        return lhs;
    }
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Integral of f over [a, b]; a may be -inf and b may be +inf. Breakpoints inside
// (a, b) seed the initial panels and do not count against max_subdivisions.
// Throws ToleranceNotMet when the budget is exhausted, NonFiniteIntegrand when f
// returns inf/nan.
QuadratureResult<double> integrate(const RealIntegrand &f, double a, double b,
                                   const QuadratureSpec &spec = {},
                                   std::span<const double> breakpoints = {});

QuadratureResult<std::complex<double>> integrate_complex(const ComplexIntegrand &f, double a, double b,
                                                         const QuadratureSpec &spec = {},
                                                         std::span<const double> breakpoints = {});

// Whole real line, using spec.mapping.
QuadratureResult<double> integrate(const RealIntegrand &f, const QuadratureSpec &spec = {},
                                   std::span<const double> breakpoints = {});

QuadratureResult<std::complex<double>> integrate_complex(const ComplexIntegrand &f,
                                                         const QuadratureSpec &spec = {},
                                                         std::span<const double> breakpoints = {});

// Whole-line integral of an even f as 2 * int_0^inf. Spot-checks evenness and
// throws NotEven when f(x) != f(-x).
QuadratureResult<double> integrate_even(const RealIntegrand &f, const QuadratureSpec &spec = {},
                                        std::span<const double> breakpoints = {});

} // namespace parampstat::quad
