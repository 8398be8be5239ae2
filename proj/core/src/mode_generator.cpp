#include "parampstat/mode_generator.hpp"

#include "parampstat/error.hpp"
#include "generator_weighted.hpp"
#include "sinc_tail.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace parampstat
{

namespace
{

// Sinc products are integrated lobe by lobe out to this distance (units of
// gamma) before switching to tail formulas.
constexpr double kSincReach = 50.0;
constexpr long kMinSincLobes = 200;
constexpr long kMaxSincLobes = 400000;

double sinc(double x)
{
    return x == 0.0 ? 1.0 : std::sin(x) / x;
}

// int gamma_n gamma_m w over the whole line, with w -> w_inf at infinity.
// Frequencies are in units of gamma.
quad::QuadratureResult<double> sinc_weighted(double delta, long n, long m, const quad::RealIntegrand &weight,
                                             double w_inf, const quad::QuadratureSpec &spec,
                                             std::span<const double> hints)
{
    const auto product = [delta, n, m](double nu) {
        const double x = nu / delta;
        return sinc(std::numbers::pi * (x - static_cast<double>(n))) *
               sinc(std::numbers::pi * (x - static_cast<double>(m))) / delta;
    };
    double reach = kSincReach;
    for (double h : hints)
    {
        reach = std::max(reach, std::abs(h) + kSincReach);
    }
    const long lobes = std::clamp(static_cast<long>(std::min(std::ceil(reach / delta), 1e12)), kMinSincLobes,
                                  kMaxSincLobes);
    const long upper = std::max(n, m) + lobes;
    const long lower = std::max(-n, -m) + lobes;
    std::vector<double> pts(hints.begin(), hints.end());
    pts.reserve(pts.size() + static_cast<std::size_t>(upper + lower));
    for (long k = -lower + 1; k < upper; ++k)
    {
        pts.push_back(static_cast<double>(k) * delta);
    }
    const double lo = -static_cast<double>(lower) * delta;
    const double hi = static_cast<double>(upper) * delta;
    auto result = quad::integrate([&](double nu) { return product(nu) * weight(nu); }, lo, hi, spec, pts);

    quad::QuadratureSpec ts = spec;
    ts.abs_tol = std::max(spec.abs_tol, 0.25 * spec.rel_tol * std::abs(result.value));
    ts.mapping = quad::RationalCompactification{};
    // Outside the core the product is sin^2(pi nu / Delta) times a smooth envelope.
    const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;
    const auto envelope = [&](double nu) {
        const double x = nu / delta;
        return sign * (weight(nu) - w_inf) /
               (std::numbers::pi * std::numbers::pi * delta * (x - static_cast<double>(n)) *
                (x - static_cast<double>(m)));
    };
    result += detail::modulated_tail(envelope, 1.0, hi, delta, ts);
    result += detail::modulated_tail([&](double nu) { return envelope(-nu); }, 1.0, -lo, delta, ts);
    result.value += w_inf * detail::sinc_product_tails(n, m, upper, lower);
    return result;
}

quad::QuadratureResult<double> window_weighted(double delta, long n, long m, const quad::RealIntegrand &weight,
                                               const quad::QuadratureSpec &spec, std::span<const double> hints)
{
    if (n != m)
    {
        return {};
    }
    const double c = static_cast<double>(n) * delta;
    const auto r = quad::integrate(weight, c - 0.5 * delta, c + 0.5 * delta, spec, hints);
    return {r.value / delta, r.error_estimate / delta, r.evaluations};
}

} // namespace

namespace detail
{

quad::QuadratureResult<double> generator_weighted(const ModeGenerator &g, long n, long m,
                                                  const quad::RealIntegrand &weight, double w_inf,
                                                  const quad::QuadratureSpec &spec, std::span<const double> hints)
{
    if (g.kind == GeneratorKind::Window)
    {
        return window_weighted(g.delta, n, m, weight, spec, hints);
    }
    return sinc_weighted(g.delta, n, m, weight, w_inf, spec, hints);
}

} // namespace detail

void validate_generator(const ModeGenerator &g)
{
    if (!(g.delta > 0.0) || !std::isfinite(g.delta))
    {
        throw Error(ErrorCode::InvalidArgument, "mode width must be positive and finite");
    }
}

std::string_view kind_name(GeneratorKind kind)
{
    return kind == GeneratorKind::Window ? "window" : "sinc";
}

GeneratorKind parse_generator_kind(std::string_view name)
{
    if (name == "window")
    {
        return GeneratorKind::Window;
    }
    if (name == "sinc")
    {
        return GeneratorKind::Sinc;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown mode generator '" + std::string(name) + "'");
}

double eval_generator(const ModeGenerator &g, long n, double nu)
{
    validate_generator(g);
    const double x = nu / g.delta - static_cast<double>(n);
    const double scale = 1.0 / std::sqrt(g.delta);
    if (g.kind == GeneratorKind::Window)
    {
        return std::abs(x) <= 0.5 ? scale : 0.0;
    }
    return scale * sinc(std::numbers::pi * x);
}

quad::QuadratureResult<double> generator_overlap(const ModeGenerator &g, long n, long m,
                                                 const quad::QuadratureSpec &spec)
{
    validate_generator(g);
    return detail::generator_weighted(g, n, m, [](double) { return 1.0; }, 1.0, spec, {});
}

quad::QuadratureResult<double> integral_J(const ValidatedParams &p, const ModeGenerator &g, JIntegral which, long n,
                                          long m, const quad::QuadratureSpec &spec)
{
    validate_generator(g);
    const ValidatedParams q = p.dimensionless();
    const ModeGenerator scaled{g.kind, g.delta / p.gamma()};
    const std::vector<double> hints = spectral_hints(q);

    switch (which)
    {
    case JIntegral::J1:
        return detail::generator_weighted(scaled, n, m, [&q](double x) { return photon_flux_density(q, x); }, 0.0, spec,
                                  hints);
    case JIntegral::J2:
        return detail::generator_weighted(scaled, n, m, [&q](double x) { return photon_flux_density(q, x) + 1.0; }, 1.0,
                                  spec, hints);
    case JIntegral::J3:
    {
        // gamma_{-m}(nu) = gamma_m(-nu) for both kinds.
        const auto amplitude = [&q](double x) {
            const double nx = photon_flux_density(q, x);
            return std::sqrt(nx * (nx + 1.0));
        };
        const auto r = detail::generator_weighted(scaled, n, -m, amplitude, 0.0, spec, hints);
        return {r.value * r.value, 2.0 * std::abs(r.value) * r.error_estimate + r.error_estimate * r.error_estimate,
                r.evaluations};
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown J integral");
}

} // namespace parampstat
