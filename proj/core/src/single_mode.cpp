#include "parampstat/single_mode.hpp"

#include "parampstat/error.hpp"

#include <cmath>
#include <sstream>

namespace parampstat
{

namespace
{

// Integrals are evaluated in units of gamma.
struct Scaled
{
    ValidatedParams params;
    FilterSpec filter;
    std::vector<double> hints;
};

Scaled rescale(const ValidatedParams &p, const FilterSpec &f)
{
    validate_filter(f);
    const ValidatedParams dimless = p.dimensionless();
    return {dimless, scaled_filter(f, 1.0 / p.gamma()), spectral_hints(dimless)};
}

MomentSet assemble(double i1, double i2, double i3)
{
    MomentSet m;
    m.mean = i1;
    m.variance = i1 * i2 + i3;
    m.third_central = (i1 + i2) * (i1 * i2 + 3.0 * i3);
    m.components = FilterIntegrals{i1, i2, i3};
    return m;
}

quad::QuadratureResult<double> squared_magnitude(const quad::QuadratureResult<std::complex<double>> &r)
{
    const double mag = std::abs(r.value);
    return {mag * mag, 2.0 * mag * r.error_estimate + r.error_estimate * r.error_estimate, r.evaluations};
}

} // namespace

quad::QuadratureResult<double> integral_I1(const ValidatedParams &p, const FilterSpec &f,
                                           const quad::QuadratureSpec &spec)
{
    const Scaled s = rescale(p, f);
    const auto n = [&s](double x) { return photon_flux_density(s.params, x); };
    return integrate_power_weighted(s.filter, n, 0.0, spec, s.hints);
}

quad::QuadratureResult<double> integral_I2(const ValidatedParams &p, const FilterSpec &f,
                                           const quad::QuadratureSpec &spec)
{
    const Scaled s = rescale(p, f);
    const auto n_plus_one = [&s](double x) { return photon_flux_density(s.params, x) + 1.0; };
    return integrate_power_weighted(s.filter, n_plus_one, 1.0, spec, s.hints);
}

quad::QuadratureResult<double> integral_I3(const ValidatedParams &p, const FilterSpec &f,
                                           const quad::QuadratureSpec &spec)
{
    const Scaled s = rescale(p, f);
    // n is even in nu, so n(-nu) [n(nu) + 1] = n (n + 1).
    const auto pair_amplitude = [&s](double x) {
        const double n = photon_flux_density(s.params, x);
        return std::sqrt(n * (n + 1.0));
    };
    return squared_magnitude(integrate_mirror_weighted(s.filter, pair_amplitude, spec, s.hints));
}

MomentSet moments_single(const ValidatedParams &p, const FilterSpec &f, const quad::QuadratureSpec &spec)
{
    const auto i1 = integral_I1(p, f, spec);
    const auto i2 = integral_I2(p, f, spec);
    const auto i3 = integral_I3(p, f, spec);
    MomentSet m = assemble(i1.value, i2.value, i3.value);
    m.quad_error = i1.error_estimate + i2.error_estimate + i3.error_estimate;
    m.evaluations = i1.evaluations + i2.evaluations + i3.evaluations;
    return m;
}

MomentSet squeezed_vacuum_reference(double mean)
{
    if (!(mean >= 0.0))
    {
        throw Error(ErrorCode::InvalidArgument, "mean photon number must be >= 0");
    }
    MomentSet m;
    m.mean = mean;
    m.variance = 2.0 * mean * (mean + 1.0);
    m.third_central = 2.0 * mean * (2.0 * mean + 1.0) * (2.0 * mean + 2.0);
    m.components = AnalyticReference{};
    return m;
}

double EffectiveFilter::stretch(double nu) const
{
    return std::sqrt(std::max(0.0, 1.0 + nu / nu0_));
}

double EffectiveFilter::amplitude(double nu) const
{
    return stretch(nu) * filter_amplitude(base_, nu);
}

EffectiveFilter wideband_effective_filter(const FilterSpec &f, double nu0, const quad::QuadratureSpec &spec)
{
    validate_filter(f);
    if (!(nu0 > 0.0) || !std::isfinite(nu0))
    {
        throw Error(ErrorCode::InvalidArgument, "wideband detection requires nu0 > 0");
    }
    const auto [lo, hi] = filter_support(f);
    if (!(lo > -nu0))
    {
        std::ostringstream os;
        os << "filter '" << shape_name(f) << "' reaches nu = " << lo << " <= -nu0 = " << -nu0;
        throw Error(ErrorCode::FilterExceedsBand, os.str());
    }
    const auto stretch_sq = [nu0](double nu) { return 1.0 + nu / nu0; };
    const auto norm = integrate_power_weighted(f, stretch_sq, 0.0, spec);
    return EffectiveFilter(f, nu0, norm.value);
}

WidebandMoments moments_wideband(const ValidatedParams &p, const EffectiveFilter &g, const quad::QuadratureSpec &spec)
{
    const Scaled s = rescale(p, g.base());
    const double nu0 = g.nu0() / p.gamma();
    const auto &params = s.params;

    const auto i1 = integrate_power_weighted(
        s.filter, [&](double x) { return (1.0 + x / nu0) * photon_flux_density(params, x); }, 0.0, spec, s.hints);
    const auto i2 = integrate_power_weighted(
        s.filter, [&](double x) { return (1.0 + x / nu0) * (photon_flux_density(params, x) + 1.0); }, 0.0, spec,
        s.hints);
    const auto i3 = squared_magnitude(integrate_mirror_weighted(
        s.filter,
        [&](double x) {
            const double n = photon_flux_density(params, x);
            const double stretch = std::max(0.0, (1.0 + x / nu0) * (1.0 - x / nu0));
            return std::sqrt(stretch * n * (n + 1.0));
        },
        spec, s.hints));

    WidebandMoments out;
    out.norm_sq = g.norm_sq();
    out.voltage_scale = g.voltage_scale();
    out.raw = assemble(i1.value, i2.value, i3.value);
    const double norm = g.norm_sq();
    out.renormalized = assemble(i1.value / norm, i2.value / norm, i3.value / (norm * norm));
    const double err = i1.error_estimate + i2.error_estimate + i3.error_estimate;
    const std::size_t evals = i1.evaluations + i2.evaluations + i3.evaluations;
    for (MomentSet *m : {&out.raw, &out.renormalized})
    {
        m->quad_error = err;
        m->evaluations = evals;
        m->third_extrapolated = true;
    }
    return out;
}

} // namespace parampstat
