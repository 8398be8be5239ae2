#include "parampstat/filter.hpp"

#include "parampstat/error.hpp"
#include "sinc_tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace parampstat
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(-x^2/2) underflows to zero in double well before x = 40.
constexpr double kGaussianReach = 40.0;
constexpr long kMinSincLobes = 200;
constexpr long kMaxSincLobes = 400000;
// Beyond this distance (in the caller's frequency unit) weights are assumed
// to be in their asymptotic regime; callers integrate in units of gamma.
constexpr double kWeightReach = 50.0;

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sinc(double x)
{
    return x == 0.0 ? 1.0 : std::sin(x) / x;
}

void append_scaled(std::vector<double> &pts, double center, double scale, std::initializer_list<double> multiples)
{
    pts.push_back(center);
    for (double k : multiples)
    {
        pts.push_back(center - k * scale);
        pts.push_back(center + k * scale);
    }
}

long sinc_lobes(double width, double center, std::span<const double> hints)
{
    double reach = kWeightReach;
    for (double h : hints)
    {
        reach = std::max(reach, std::abs(h - center) + kWeightReach);
    }
    const double lobes = std::ceil(reach / width);
    return std::clamp(static_cast<long>(std::min(lobes, 1e12)), kMinSincLobes, kMaxSincLobes);
}

quad::QuadratureSpec tail_spec(const quad::QuadratureSpec &spec, double core_magnitude)
{
    quad::QuadratureSpec out = spec;
    out.abs_tol = std::max(spec.abs_tol, 0.25 * spec.rel_tol * core_magnitude);
    out.mapping = quad::RationalCompactification{};
    return out;
}

} // namespace

void validate_filter(const FilterSpec &f)
{
    const double w = filter_width(f);
    if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(f.center))
    {
        throw Error(ErrorCode::InvalidArgument, "filter width must be positive and finite");
    }
}

std::string_view shape_name(const FilterSpec &f)
{
    return std::visit(overloaded{[](const Rectangular &) { return std::string_view("rectangular"); },
                                 [](const Lorentzian &) { return std::string_view("lorentzian"); },
                                 [](const Gaussian &) { return std::string_view("gaussian"); },
                                 [](const Sinc &) { return std::string_view("sinc"); }},
                      f.shape);
}

double filter_width(const FilterSpec &f)
{
    return std::visit(overloaded{[](const Rectangular &s) { return s.bandwidth; },
                                 [](const Lorentzian &s) { return s.halfwidth; },
                                 [](const Gaussian &s) { return s.sigma; },
                                 [](const Sinc &s) { return s.width; }},
                      f.shape);
}

FilterSpec make_filter(std::string_view shape, double width, double center)
{
    FilterSpec f;
    f.center = center;
    if (shape == "rectangular" || shape == "rect")
    {
        f.shape = Rectangular{width};
    }
    else if (shape == "lorentzian")
    {
        f.shape = Lorentzian{width};
    }
    else if (shape == "gaussian")
    {
        f.shape = Gaussian{width};
    }
    else if (shape == "sinc")
    {
        f.shape = Sinc{width};
    }
    else
    {
        throw Error(ErrorCode::InvalidArgument, "unknown filter shape '" + std::string(shape) + "'");
    }
    validate_filter(f);
    return f;
}

FilterSpec experiment_bandpass_filter()
{
    return {Rectangular{2.0 * 168e6}, 0.0};
}

double filter_amplitude(const FilterSpec &f, double nu)
{
    const double x = nu - f.center;
    return std::visit(
        overloaded{[x](const Rectangular &s) { return std::abs(x) < 0.5 * s.bandwidth ? 1.0 / std::sqrt(s.bandwidth) : 0.0; },
                   [x](const Lorentzian &s) {
                       const double g = s.halfwidth;
                       return std::sqrt(2.0 * g * g * g / std::numbers::pi) / (g * g + x * x);
                   },
                   [x](const Gaussian &s) {
                       const double norm = std::pow(2.0 * std::numbers::pi * s.sigma * s.sigma, -0.25);
                       return norm * std::exp(-x * x / (4.0 * s.sigma * s.sigma));
                   },
                   [x](const Sinc &s) { return sinc(std::numbers::pi * x / s.width) / std::sqrt(s.width); }},
        f.shape);
}

std::complex<double> eval_filter(const FilterSpec &f, double nu)
{
    return {filter_amplitude(f, nu), 0.0};
}

FilterSpec scaled_filter(const FilterSpec &f, double factor)
{
    FilterSpec out = f;
    out.center = f.center * factor;
    std::visit([factor](auto &s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Rectangular>)
            s.bandwidth *= factor;
        else if constexpr (std::is_same_v<S, Lorentzian>)
            s.halfwidth *= factor;
        else if constexpr (std::is_same_v<S, Gaussian>)
            s.sigma *= factor;
        else
            s.width *= factor;
    }, out.shape);
    return out;
}

std::pair<double, double> filter_support(const FilterSpec &f)
{
    return std::visit(overloaded{[&f](const Rectangular &s) {
                                     return std::pair{f.center - 0.5 * s.bandwidth, f.center + 0.5 * s.bandwidth};
                                 },
                                 [](const Lorentzian &) { return std::pair{-kInf, kInf}; },
                                 [&f](const Gaussian &s) {
                                     return std::pair{f.center - kGaussianReach * s.sigma,
                                                      f.center + kGaussianReach * s.sigma};
                                 },
                                 [](const Sinc &) { return std::pair{-kInf, kInf}; }},
                      f.shape);
}

quad::QuadratureResult<double> filter_norm(const FilterSpec &f, const quad::QuadratureSpec &spec)
{
    return integrate_power_weighted(f, [](double) { return 1.0; }, 1.0, spec);
}

quad::QuadratureResult<double> integrate_power_weighted(const FilterSpec &f, const quad::RealIntegrand &weight,
                                                        double weight_at_infinity, const quad::QuadratureSpec &spec,
                                                        std::span<const double> hints)
{
    validate_filter(f);
    const auto power = [&f, &weight](double nu) {
        const double h = filter_amplitude(f, nu);
        return h == 0.0 ? 0.0 : h * h * weight(nu);
    };
    std::vector<double> pts(hints.begin(), hints.end());
    const double w = filter_width(f);

    if (const auto *s = std::get_if<Sinc>(&f.shape))
    {
        const long lobes = sinc_lobes(s->width, f.center, hints);
        const double lo = f.center - static_cast<double>(lobes) * s->width;
        const double hi = f.center + static_cast<double>(lobes) * s->width;
        pts.reserve(pts.size() + 2 * static_cast<std::size_t>(lobes));
        for (long k = -lobes + 1; k < lobes; ++k)
        {
            pts.push_back(f.center + static_cast<double>(k) * s->width);
        }
        auto result = quad::integrate(power, lo, hi, spec, pts);
        // |h|^2 = sin^2(pi (nu - c) / w) w / (pi^2 (nu - c)^2)
        const double width = s->width;
        const auto envelope = [&f, &weight, weight_at_infinity, width](double nu) {
            const double d = nu - f.center;
            return width * (weight(nu) - weight_at_infinity) / (std::numbers::pi * std::numbers::pi * d * d);
        };
        const auto ts = tail_spec(spec, std::abs(result.value));
        result += detail::modulated_tail(envelope, 1.0, hi, width, ts);
        result += detail::modulated_tail([&envelope](double nu) { return envelope(-nu); }, 1.0, -lo, width, ts);
        result.value += weight_at_infinity * detail::sinc_product_tails(0, 0, lobes, lobes);
        return result;
    }

    const auto [lo, hi] = filter_support(f);
    if (std::holds_alternative<Lorentzian>(f.shape))
    {
        append_scaled(pts, f.center, w, {1.0, 4.0, 16.0, 64.0});
    }
    else if (std::holds_alternative<Gaussian>(f.shape))
    {
        append_scaled(pts, f.center, w, {1.0, 3.0, 8.0});
    }
    return quad::integrate(power, lo, hi, spec, pts);
}

quad::QuadratureResult<std::complex<double>> integrate_mirror_weighted(const FilterSpec &f,
                                                                       const quad::RealIntegrand &weight,
                                                                       const quad::QuadratureSpec &spec,
                                                                       std::span<const double> hints)
{
    validate_filter(f);
    FilterSpec mirrored = f;
    mirrored.center = -f.center;
    const auto product = [&f, &mirrored, &weight](double nu) -> std::complex<double> {
        const double hh = filter_amplitude(f, nu) * filter_amplitude(mirrored, nu);
        return hh == 0.0 ? 0.0 : hh * weight(nu);
    };
    std::vector<double> pts(hints.begin(), hints.end());
    const double w = filter_width(f);

    if (const auto *s = std::get_if<Sinc>(&f.shape))
    {
        const long lobes = sinc_lobes(s->width, f.center, hints);
        const double width = s->width;
        const double reach = std::ceil(std::abs(f.center) / width + static_cast<double>(lobes)) * width;
        for (long k = -lobes + 1; k < lobes; ++k)
        {
            pts.push_back(f.center + static_cast<double>(k) * width);
            pts.push_back(-f.center + static_cast<double>(k) * width);
        }
        auto result = quad::integrate_complex(product, -reach, reach, spec, pts);
        // h(nu) h(-nu) = (cos(2 pi c / w) - cos(2 pi nu / w)) / 2 * w / (pi^2 (nu^2 - c^2))
        const double c = f.center;
        const auto envelope = [&weight, width, c](double nu) {
            return width * weight(nu) / (std::numbers::pi * std::numbers::pi * (nu - c) * (nu + c));
        };
        const double a = std::cos(2.0 * std::numbers::pi * c / width);
        const auto ts = tail_spec(spec, std::abs(result.value));
        const auto right = detail::modulated_tail(envelope, a, reach, width, ts);
        const auto left = detail::modulated_tail([&envelope](double nu) { return envelope(-nu); }, a, reach, width, ts);
        result.value += right.value + left.value;
        result.error_estimate += right.error_estimate + left.error_estimate;
        result.evaluations += right.evaluations + left.evaluations;
        return result;
    }

    const auto [lo1, hi1] = filter_support(f);
    const auto [lo2, hi2] = filter_support(mirrored);
    const double lo = std::max(lo1, lo2);
    const double hi = std::min(hi1, hi2);
    if (!(lo < hi))
    {
        return {};
    }
    if (std::holds_alternative<Lorentzian>(f.shape))
    {
        append_scaled(pts, f.center, w, {1.0, 4.0, 16.0, 64.0});
        append_scaled(pts, -f.center, w, {1.0, 4.0, 16.0, 64.0});
    }
    else if (std::holds_alternative<Gaussian>(f.shape))
    {
        append_scaled(pts, f.center, w, {1.0, 3.0, 8.0});
        append_scaled(pts, -f.center, w, {1.0, 3.0, 8.0});
        pts.push_back(0.0);
    }
    return quad::integrate_complex(product, lo, hi, spec, pts);
}

} // namespace parampstat
