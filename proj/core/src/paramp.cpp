#include "parampstat/paramp.hpp"

#include "parampstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace parampstat
{

namespace
{

// (gamma - i nu)^2 + delta^2 - |xi|^2, with the real part arranged so the
// near-threshold cancellation happens in (gamma - xi)(gamma + xi).
std::complex<double> denominator(const ValidatedParams &p, double nu)
{
    const double g = p.gamma();
    const double x = p.xi_mag();
    const double re = (g - x) * (g + x) + p.delta() * p.delta() - nu * nu;
    return {re, -2.0 * g * nu};
}

// |v(nu)| = 2 gamma |xi| / |D(nu)| = sinh(eta(nu))
double sinh_eta(const ValidatedParams &p, double nu)
{
    if (p.xi_mag() == 0.0)
    {
        return 0.0;
    }
    return 2.0 * p.gamma() * p.xi_mag() / std::abs(denominator(p, nu));
}

// Bisects for n(nu) = target between a point above it and a point below it.
double bisect_level(const ValidatedParams &p, double above, double below, double target)
{
    for (int i = 0; i < 200; ++i)
    {
        const double mid = 0.5 * (above + below);
        if (mid == above || mid == below)
        {
            break;
        }
        (photon_flux_density(p, mid) > target ? above : below) = mid;
    }
    return 0.5 * (above + below);
}

} // namespace

ValidatedParams validate_params(const ParampParams &p)
{
    const bool finite = std::isfinite(p.gamma) && std::isfinite(p.xi_mag) &&
                        std::isfinite(p.xi_arg) && std::isfinite(p.delta) && std::isfinite(p.nu0);
    if (!finite)
    {
        throw Error(ErrorCode::InvalidArgument, "amplifier parameters must be finite");
    }
    if (!(p.gamma > 0.0))
    {
        std::ostringstream os;
        os << "coupling rate gamma must be > 0 (got " << p.gamma << ")";
        throw Error(ErrorCode::NonPositiveCoupling, os.str());
    }
    if (p.xi_mag < 0.0)
    {
        throw Error(ErrorCode::InvalidArgument, "xi_mag is a magnitude and must be >= 0");
    }
    const ValidatedParams candidate(p);
    if (!(candidate.stability_margin() > 0.0))
    {
        std::ostringstream os;
        os << "|xi|^2 = " << p.xi_mag * p.xi_mag << " must be < gamma^2 + delta^2 = "
           << p.gamma * p.gamma + p.delta * p.delta;
        throw Error(ErrorCode::OutOfStabilityRange, os.str());
    }
    return candidate;
}

double ValidatedParams::stability_margin() const noexcept
{
    return (p_.gamma - p_.xi_mag) * (p_.gamma + p_.xi_mag) + p_.delta * p_.delta;
}

ValidatedParams ValidatedParams::dimensionless() const
{
    ParampParams q = p_;
    q.gamma = 1.0;
    q.xi_mag = p_.xi_mag / p_.gamma;
    q.delta = p_.delta / p_.gamma;
    q.nu0 = p_.nu0 / p_.gamma;
    return ValidatedParams(q);
}

BogoliubovCoefficients bogoliubov_coefficients(const ValidatedParams &p, double nu)
{
    const double g = p.gamma();
    const double x = p.xi_mag();
    const double d = p.delta();
    const std::complex<double> numerator{g * g - d * d + nu * nu + x * x, -2.0 * g * d};
    const std::complex<double> den = denominator(p, nu);
    return {numerator / den, 2.0 * g * p.xi() / den};
}

BogoliubovCoefficients intracavity_coefficients(const ValidatedParams &p, double nu)
{
    const double g = p.gamma();
    const double amplitude = std::sqrt(g / std::numbers::pi);
    const std::complex<double> den = denominator(p, nu);
    const std::complex<double> direct{g * amplitude, -(nu + p.delta()) * amplitude};
    return {direct / den, p.xi() * amplitude / den};
}

double eta(const ValidatedParams &p, double nu)
{
    return std::asinh(sinh_eta(p, nu));
}

double eta_log_form(const ValidatedParams &p, double nu)
{
    const double g = p.gamma();
    const double x = p.xi_mag();
    const double d = p.delta();
    const double inner = g * g + nu * nu + x * x - d * d;
    const double r = std::sqrt(inner * inner + 4.0 * d * d * g * g);
    return 0.5 * std::log((r + 2.0 * g * x) / (r - 2.0 * g * x));
}

Phases phases(const ValidatedParams &p, double nu)
{
    const auto c = bogoliubov_coefficients(p, nu);
    // v = 0 identically without nonlinearity; report arg(xi) as the convention.
    const double phi_s = p.xi_mag() == 0.0 ? p.xi_arg() : std::arg(c.v);
    return {std::arg(c.u), phi_s};
}

Phases phases_arctan_form(const ValidatedParams &p, double nu)
{
    const double g = p.gamma();
    const double x = p.xi_mag();
    const double d = p.delta();
    const double first = std::atan(2.0 * nu * g / (g * g - nu * nu + d * d - x * x));
    const double second = std::atan(2.0 * d * g / (g * g - d * d + nu * nu + x * x));
    return {first - second, first + p.xi_arg()};
}

double photon_flux_density(const ValidatedParams &p, double nu)
{
    const double s = sinh_eta(p, nu);
    return s * s;
}

SpectralPoint spectral_point(const ValidatedParams &p, double nu)
{
    const double s = sinh_eta(p, nu);
    const Phases ph = phases(p, nu);
    return {nu, std::asinh(s), s * s, ph.phi_c, ph.phi_s};
}

double bare_cavity_output_phase(double gamma, double nu)
{
    if (!(gamma > 0.0))
    {
        throw Error(ErrorCode::NonPositiveCoupling, "gamma must be > 0");
    }
    return -2.0 * std::atan(nu / gamma);
}

double pump_detuning(double phi, double p1, double p2, double xi_mag)
{
    if (!(p1 > 0.0) || !(p2 > 0.0))
    {
        throw Error(ErrorCode::NonPositivePower, "pump powers must be > 0");
    }
    return phi + xi_mag * (p1 + p2) / std::sqrt(p1 * p2);
}

double peak_offset(const ValidatedParams &p)
{
    const double g = p.gamma();
    const double x = p.xi_mag();
    const double d = p.delta();
    return std::sqrt(std::max(0.0, d * d - g * g - x * x));
}

std::vector<double> spectral_hints(const ValidatedParams &p)
{
    const double peak = peak_offset(p);
    std::vector<double> pts{0.0, peak};
    if (p.xi_mag() > 0.0)
    {
        const double target = 0.5 * photon_flux_density(p, peak);
        double step = 1e-3 * p.gamma();
        while (photon_flux_density(p, peak + step) > target)
        {
            step *= 2.0;
        }
        const double outer = bisect_level(p, peak, peak + step, target) - peak;
        for (double k : {1.0, 4.0, 16.0})
        {
            pts.push_back(peak + k * outer);
        }
        if (peak > 0.0 && photon_flux_density(p, 0.0) < target)
        {
            const double inner = peak - bisect_level(p, peak, 0.0, target);
            for (double k : {1.0, 4.0})
            {
                if (peak - k * inner > 0.0)
                {
                    pts.push_back(peak - k * inner);
                }
            }
        }
    }
    pts.push_back(p.gamma());
    const std::size_t positive = pts.size();
    for (std::size_t i = 0; i < positive; ++i)
    {
        pts.push_back(-pts[i]);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace parampstat
