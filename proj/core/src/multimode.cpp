#include "parampstat/multimode.hpp"

#include "parampstat/error.hpp"
#include "generator_weighted.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace parampstat
{

namespace
{

struct BinTerms
{
    double j1 = 0.0;
    double j3 = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

// Everything in units of gamma from here on.
class BinIntegrals
{
public:
    BinIntegrals(const ValidatedParams &p, const ModeGenerator &g, const quad::QuadratureSpec &spec)
        : q_(p.dimensionless()), g_{g.kind, g.delta / p.gamma()}, spec_(spec), hints_(spectral_hints(q_))
    {
    }

    quad::QuadratureResult<double> j1(long n, long m) const
    {
        return detail::generator_weighted(
            g_, n, m, [this](double x) { return photon_flux_density(q_, x); }, 0.0, spec_, hints_);
    }

    // J3 of bins n and m, i.e. the overlap of n with the mirror of m.
    quad::QuadratureResult<double> j3(long n, long m) const
    {
        const auto r = detail::generator_weighted(
            g_, n, -m,
            [this](double x) {
                const double nx = photon_flux_density(q_, x);
                return std::sqrt(nx * (nx + 1.0));
            },
            0.0, spec_, hints_);
        return {r.value * r.value, 2.0 * std::abs(r.value) * r.error_estimate, r.evaluations};
    }

private:
    ValidatedParams q_;
    ModeGenerator g_;
    quad::QuadratureSpec spec_;
    std::vector<double> hints_;
};

struct Sums
{
    double mean = 0.0;
    double variance = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    long max_index = 0;
};

// Window bins are disjoint, so only J1(n,n) and the partner term J3(n,-n) survive;
// J2(n,n) = J1(n,n) + 1.
void add_window_bin(const BinIntegrals &bins, long n, Sums &s, double &j1_out)
{
    const auto a = bins.j1(n, n);
    const auto b = bins.j3(n, -n);
    s.mean += a.value;
    s.variance += a.value * (a.value + 1.0) + b.value;
    s.error += a.error_estimate + b.error_estimate;
    s.evaluations += a.evaluations + b.evaluations;
    j1_out = a.value;
}

Sums window_adaptive(const BinIntegrals &bins, const AdaptiveTail &rule)
{
    if (!(rule.threshold > 0.0) || rule.consecutive < 1 || rule.max_index < 1)
    {
        throw Error(ErrorCode::InvalidArgument, "adaptive tail rule needs threshold > 0, consecutive >= 1");
    }
    Sums s;
    double j1 = 0.0;
    add_window_bin(bins, 0, s, j1);
    int quiet = 0;
    for (long k = 1; k <= rule.max_index; ++k)
    {
        double plus = 0.0;
        double minus = 0.0;
        add_window_bin(bins, k, s, plus);
        add_window_bin(bins, -k, s, minus);
        s.max_index = k;
        quiet = (plus + minus <= rule.threshold * s.mean) ? quiet + 1 : 0;
        if (quiet >= rule.consecutive)
        {
            return s;
        }
    }
    std::ostringstream os;
    os << "mode sum still above tail threshold at |n| = " << rule.max_index;
    throw Error(ErrorCode::TailNotConverged, os.str());
}

Sums window_fixed(const BinIntegrals &bins, long max_index)
{
    Sums s;
    s.max_index = max_index;
    double j1 = 0.0;
    for (long n = -max_index; n <= max_index; ++n)
    {
        add_window_bin(bins, n, s, j1);
    }
    return s;
}

// Full double sum; J1 and J3 are symmetric in (n, m) and J2 = J1 + delta_nm.
Sums sinc_fixed(const BinIntegrals &bins, long max_index)
{
    Sums s;
    s.max_index = max_index;
    for (long n = -max_index; n <= max_index; ++n)
    {
        for (long m = n; m <= max_index; ++m)
        {
            const auto a = bins.j1(n, m);
            const auto b = bins.j3(n, m);
            const double mult = (m == n) ? 1.0 : 2.0;
            const double kron = (m == n) ? 1.0 : 0.0;
            if (m == n)
            {
                s.mean += a.value;
            }
            s.variance += mult * (a.value * (a.value + kron) + b.value);
            s.error += mult * (a.error_estimate + b.error_estimate);
            s.evaluations += a.evaluations + b.evaluations;
        }
    }
    return s;
}

void require_tau(double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau))
    {
        throw Error(ErrorCode::InvalidArgument, "integration time tau must be positive and finite");
    }
}

struct FluxIntegrals
{
    quad::QuadratureResult<double> n;  // int n dx
    quad::QuadratureResult<double> n2; // int n^2 dx
};

// Whole-line integrals in units of gamma.
FluxIntegrals flux_integrals(const ValidatedParams &p, const quad::QuadratureSpec &spec)
{
    const ValidatedParams q = p.dimensionless();
    const std::vector<double> hints = spectral_hints(q);
    FluxIntegrals out;
    out.n = quad::integrate_even([&q](double x) { return photon_flux_density(q, x); }, spec, hints);
    out.n2 = quad::integrate_even(
        [&q](double x) {
            const double n = photon_flux_density(q, x);
            return n * n;
        },
        spec, hints);
    return out;
}

LimitRates rates_from(const FluxIntegrals &fi, double gamma, double tau)
{
    const double scale = tau * gamma;
    LimitRates r;
    r.mean = scale * fi.n.value;
    r.variance = scale * (2.0 * fi.n2.value + 2.0 * fi.n.value);
    r.quad_error = scale * (2.0 * fi.n2.error_estimate + 3.0 * fi.n.error_estimate);
    r.evaluations = fi.n.evaluations + fi.n2.evaluations;
    return r;
}

} // namespace

MomentSet moments_multimode_finite(const ValidatedParams &p, const MultimodeConfig &cfg,
                                   const quad::QuadratureSpec &spec)
{
    validate_generator(cfg.generator);
    require_tau(cfg.tau);
    const BinIntegrals bins(p, cfg.generator, spec);

    Sums s;
    if (const auto *fixed = std::get_if<FixedCutoff>(&cfg.cutoff))
    {
        if (fixed->max_index < 0)
        {
            throw Error(ErrorCode::InvalidArgument, "mode cutoff must be >= 0");
        }
        s = cfg.generator.kind == GeneratorKind::Window ? window_fixed(bins, fixed->max_index)
                                                        : sinc_fixed(bins, fixed->max_index);
    }
    else
    {
        if (cfg.generator.kind == GeneratorKind::Sinc)
        {
            throw Error(ErrorCode::InvalidArgument, "sinc mode generators require a fixed mode cutoff");
        }
        s = window_adaptive(bins, std::get<AdaptiveTail>(cfg.cutoff));
    }

    MomentSet m;
    m.mean = s.mean;
    m.variance = s.variance;
    m.quad_error = s.error;
    m.evaluations = s.evaluations;
    const double scale = cfg.tau * cfg.generator.delta;
    m.components = ModeSums{cfg.generator.delta, cfg.tau, s.max_index, scale * s.mean, scale * s.variance};
    return m;
}

LimitRates limit_rates(const ValidatedParams &p, double tau, const quad::QuadratureSpec &spec)
{
    require_tau(tau);
    return rates_from(flux_integrals(p, spec), p.gamma(), tau);
}

UniversalF universal_F(double gamma_tau, double xi_tau, double delta_tau, const quad::QuadratureSpec &spec)
{
    ParampParams raw;
    raw.gamma = gamma_tau;
    raw.xi_mag = xi_tau;
    raw.delta = delta_tau;
    const ValidatedParams p = validate_params(raw);
    const LimitRates r = limit_rates(p, 1.0, spec);
    const double norm = 2.0 * std::numbers::pi * gamma_tau;
    return {r.mean / norm, r.variance / norm};
}

double fano_factor(const ValidatedParams &p, double tau, const quad::QuadratureSpec &spec)
{
    const LimitRates r = limit_rates(p, tau, spec);
    if (!(r.mean > 0.0))
    {
        throw Error(ErrorCode::ZeroMean, "Fano factor undefined at zero mean");
    }
    return r.variance / r.mean;
}

double padurariu_reference(double mean)
{
    if (!(mean >= 0.0))
    {
        throw Error(ErrorCode::InvalidArgument, "mean photon number must be >= 0");
    }
    return 2.0 * mean * (8.0 * mean * mean + 5.0 * mean + 1.0);
}

std::vector<TauChoice> figure_sv_taus(double gamma)
{
    if (!(gamma > 0.0))
    {
        throw Error(ErrorCode::NonPositiveCoupling, "gamma must be > 0");
    }
    constexpr double pi = std::numbers::pi;
    return {
        {"tau_1_over_4pi_gamma", 1.0 / (4.0 * pi * gamma)},
        {"tau_1_over_2pi_gamma", 1.0 / (2.0 * pi * gamma)},
        {"tau_1_over_8pi_gamma", 1.0 / (8.0 * pi * gamma)},
        {"tau_1_over_gamma", 1.0 / gamma},
    };
}

std::vector<double> default_figure_xi_grid()
{
    std::vector<double> grid;
    for (int k = 1; k <= 99; ++k)
    {
        grid.push_back(k / 100.0);
    }
    return grid;
}

std::vector<FigureCurve> figure_sv_dataset(double gamma, std::span<const TauChoice> taus,
                                           std::span<const double> xi_over_gamma, const quad::QuadratureSpec &spec)
{
    for (const TauChoice &t : taus)
    {
        require_tau(t.tau);
    }
    std::vector<FigureCurve> curves;
    curves.push_back({kSingleModeLabel, std::nullopt, {}});
    for (const TauChoice &t : taus)
    {
        curves.push_back({t.label, t.tau, {}});
    }
    for (double r : xi_over_gamma)
    {
        ParampParams raw;
        raw.gamma = gamma;
        raw.xi_mag = r * gamma;
        const ValidatedParams p = validate_params(raw);
        const double center = photon_flux_density(p, 0.0);
        curves[0].points.push_back({r, center, 2.0 * center * (center + 1.0)});
        const FluxIntegrals fi = flux_integrals(p, spec);
        for (std::size_t i = 0; i < taus.size(); ++i)
        {
            const LimitRates rates = rates_from(fi, gamma, taus[i].tau);
            curves[i + 1].points.push_back({r, rates.mean, rates.variance});
        }
    }
    return curves;
}

} // namespace parampstat
