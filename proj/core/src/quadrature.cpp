#include "parampstat/quadrature.hpp"

#include "parampstat/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace parampstat::quad
{

namespace
{

// 21-point Kronrod abscissae and weights with the embedded 10-point Gauss rule
// (QUADPACK qk21). Odd indices of kXgk are the Gauss nodes.
constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600252553376, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

bool finite(double x) { return std::isfinite(x); }
bool finite(std::complex<double> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Parameterization nu(t) of the integration interval.
class Transform
{
public:
    enum class Kind
    {
        Identity,
        WholeRational,
        WholeTangent,
        UpperRational, // [a, inf)
        UpperTangent,
        LowerRational, // (-inf, b]
        LowerTangent,
    };

    Transform(Kind kind, double anchor, double t_lo, double t_hi)
        : kind_(kind), anchor_(anchor), t_lo_(t_lo), t_hi_(t_hi)
    {
    }

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }

    double nu(double t) const
    {
        switch (kind_)
        {
        case Kind::Identity: return t;
        case Kind::WholeRational: return t / ((1.0 - t) * (1.0 + t));
        case Kind::WholeTangent: return std::tan(0.5 * std::numbers::pi * t);
        case Kind::UpperRational: return anchor_ + t / (1.0 - t);
        case Kind::UpperTangent: return anchor_ + std::tan(0.5 * std::numbers::pi * t);
        case Kind::LowerRational: return anchor_ - t / (1.0 - t);
        case Kind::LowerTangent: return anchor_ - std::tan(0.5 * std::numbers::pi * t);
        }
        return t;
    }

    double jacobian(double t) const
    {
        switch (kind_)
        {
        case Kind::Identity: return 1.0;
        case Kind::WholeRational:
        {
            const double q = (1.0 - t) * (1.0 + t);
            return (1.0 + t * t) / (q * q);
        }
        case Kind::WholeTangent:
        case Kind::UpperTangent:
        case Kind::LowerTangent:
        {
            const double c = std::cos(0.5 * std::numbers::pi * t);
            return 0.5 * std::numbers::pi / (c * c);
        }
        case Kind::UpperRational:
        case Kind::LowerRational:
        {
            const double q = 1.0 - t;
            return 1.0 / (q * q);
        }
        }
        return 1.0;
    }

    double t_of(double nu) const
    {
        switch (kind_)
        {
        case Kind::Identity: return nu;
        case Kind::WholeRational:
            return nu == 0.0 ? 0.0 : 2.0 * nu / (1.0 + std::sqrt(1.0 + 4.0 * nu * nu));
        case Kind::WholeTangent: return 2.0 / std::numbers::pi * std::atan(nu);
        case Kind::UpperRational:
        {
            const double s = nu - anchor_;
            return s / (1.0 + s);
        }
        case Kind::UpperTangent: return 2.0 / std::numbers::pi * std::atan(nu - anchor_);
        case Kind::LowerRational:
        {
            const double s = anchor_ - nu;
            return s / (1.0 + s);
        }
        case Kind::LowerTangent: return 2.0 / std::numbers::pi * std::atan(anchor_ - nu);
        }
        return nu;
    }

private:
    Kind kind_;
    double anchor_;
    double t_lo_;
    double t_hi_;
};

template <class T>
struct Panel
{
    double a;
    double b;
    T value;
    double error;
};

template <class T>
struct Rule
{
    T value;
    double error;
};

template <class T, class G>
Rule<T> kronrod21(const G &g, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    std::array<T, 5> f1g{}, f2g{};
    std::array<T, 5> f1k{}, f2k{};
    const T fc = g(center);
    T res_g{};
    T res_k = fc * kWgk[10];
    double res_abs = std::abs(fc) * kWgk[10];
    for (int j = 0; j < 5; ++j)
    {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        f1g[j] = g(center - dx);
        f2g[j] = g(center + dx);
        res_g += kWg[j] * (f1g[j] + f2g[j]);
        res_k += kWgk[jtw] * (f1g[j] + f2g[j]);
        res_abs += kWgk[jtw] * (std::abs(f1g[j]) + std::abs(f2g[j]));
    }
    for (int j = 0; j < 5; ++j)
    {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        f1k[j] = g(center - dx);
        f2k[j] = g(center + dx);
        res_k += kWgk[jtwm1] * (f1k[j] + f2k[j]);
        res_abs += kWgk[jtwm1] * (std::abs(f1k[j]) + std::abs(f2k[j]));
    }
    const T mean = 0.5 * res_k;
    double res_asc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 5; ++j)
    {
        res_asc += kWgk[2 * j + 1] * (std::abs(f1g[j] - mean) + std::abs(f2g[j] - mean));
        res_asc += kWgk[2 * j] * (std::abs(f1k[j] - mean) + std::abs(f2k[j] - mean));
    }
    res_abs *= abs_half;
    res_asc *= abs_half;
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0)
    {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > kTiny / (50.0 * kEps))
    {
        err = std::max(50.0 * kEps * res_abs, err);
    }
    return {res_k * half, err};
}

template <class T>
T neumaier_sum(const std::vector<Panel<T>> &panels)
{
    T sum{};
    T comp{};
    for (const auto &p : panels)
    {
        const T t = sum + p.value;
        if constexpr (std::is_same_v<T, double>)
        {
            comp += std::abs(sum) >= std::abs(p.value) ? (sum - t) + p.value : (p.value - t) + sum;
        }
        else
        {
            const auto fix = [](double s, double v, double tt) {
                return std::abs(s) >= std::abs(v) ? (s - tt) + v : (v - tt) + s;
            };
            comp += T{fix(sum.real(), p.value.real(), t.real()), fix(sum.imag(), p.value.imag(), t.imag())};
        }
        sum = t;
    }
    return sum + comp;
}

template <class T>
QuadratureResult<T> adaptive(const std::function<T(double)> &f, const Transform &tr,
                             std::span<const double> breakpoints, const QuadratureSpec &spec)
{
    spec.validate();
    std::size_t evaluations = 0;
    const auto g = [&](double t) -> T {
        const double nu = tr.nu(t);
        const T value = f(nu);
        if (!finite(value))
        {
            std::ostringstream os;
            os << "integrand is not finite at nu = " << nu;
            throw Error(ErrorCode::NonFiniteIntegrand, os.str());
        }
        ++evaluations;
        if (value == T{})
        {
            return value;
        }
        return value * tr.jacobian(t);
    };

    std::vector<double> edges{tr.t_lo(), tr.t_hi()};
    for (double nu : breakpoints)
    {
        const double t = tr.t_of(nu);
        if (std::isfinite(t) && t > tr.t_lo() && t < tr.t_hi())
        {
            edges.push_back(t);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Panel<T>> panels;
    panels.reserve(edges.size() + static_cast<std::size_t>(spec.max_subdivisions) + 1);
    T total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        const auto r = kronrod21<T>(g, edges[i], edges[i + 1]);
        panels.push_back({edges[i], edges[i + 1], r.value, r.error});
        total += r.value;
        total_err += r.error;
    }

    const auto by_error = [&panels](std::size_t lhs, std::size_t rhs) {
        if (panels[lhs].error != panels[rhs].error)
        {
            return panels[lhs].error < panels[rhs].error;
        }
        return lhs > rhs;
    };
    std::vector<std::size_t> heap(panels.size());
    for (std::size_t i = 0; i < heap.size(); ++i)
    {
        heap[i] = i;
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    const auto tolerance = [&spec](const T &value) {
        return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    };

    int subdivisions = 0;
    while (true)
    {
        if (total_err <= tolerance(total))
        {
            // Running sums drift; confirm against an exact recount before stopping.
            total = neumaier_sum(panels);
            total_err = 0.0;
            for (const auto &p : panels)
            {
                total_err += p.error;
            }
            if (total_err <= tolerance(total))
            {
                break;
            }
        }
        if (subdivisions >= spec.max_subdivisions)
        {
            std::ostringstream os;
            os << "subdivision budget " << spec.max_subdivisions << " exhausted; value "
               << std::abs(neumaier_sum(panels)) << " with error estimate " << total_err;
            throw Error(ErrorCode::ToleranceNotMet, os.str());
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const std::size_t worst = heap.back();
        heap.pop_back();
        const Panel<T> old = panels[worst];
        const double mid = 0.5 * (old.a + old.b);
        if (!(mid > old.a && mid < old.b) ||
            std::abs(old.b - old.a) <= 8.0 * kEps * std::max(std::abs(old.a), std::abs(old.b)))
        {
            std::ostringstream os;
            os << "roundoff limit reached near nu = " << tr.nu(mid) << " with error estimate " << total_err;
            throw Error(ErrorCode::ToleranceNotMet, os.str());
        }
        const auto left = kronrod21<T>(g, old.a, mid);
        const auto right = kronrod21<T>(g, mid, old.b);
        panels[worst] = {old.a, mid, left.value, left.error};
        panels.push_back({mid, old.b, right.value, right.error});
        total += left.value + right.value - old.value;
        total_err += left.error + right.error - old.error;
        heap.push_back(worst);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(panels.size() - 1);
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++subdivisions;
        if (subdivisions % 256 == 0)
        {
            total_err = 0.0;
            for (const auto &p : panels)
            {
                total_err += p.error;
            }
        }
    }

    std::sort(panels.begin(), panels.end(), [](const auto &l, const auto &r) { return l.a < r.a; });
    QuadratureResult<T> result;
    result.value = neumaier_sum(panels);
    result.error_estimate = total_err;
    result.evaluations = evaluations;
    return result;
}

template <class T>
QuadratureResult<T> integrate_impl(const std::function<T(double)> &f, double a, double b,
                                   const QuadratureSpec &spec, std::span<const double> breakpoints)
{
    spec.validate();
    if (std::isnan(a) || std::isnan(b))
    {
        throw Error(ErrorCode::InvalidArgument, "integration limits must not be NaN");
    }
    if (a == b)
    {
        return {};
    }
    if (a > b)
    {
        auto r = integrate_impl<T>(f, b, a, spec, breakpoints);
        r.value = -r.value;
        return r;
    }

    using Kind = Transform::Kind;
    const bool lower_inf = std::isinf(a);
    const bool upper_inf = std::isinf(b);
    if (!lower_inf && !upper_inf)
    {
        return adaptive<T>(f, Transform(Kind::Identity, 0.0, a, b), breakpoints, spec);
    }

    if (const auto *window = std::get_if<TruncatedWindow>(&spec.mapping))
    {
        if (!(window->nu_max > 0.0))
        {
            throw Error(ErrorCode::InvalidArgument, "TruncatedWindow requires nu_max > 0");
        }
        const double lo = lower_inf ? -window->nu_max : a;
        const double hi = upper_inf ? window->nu_max : b;
        if (lo >= hi)
        {
            return {};
        }
        return adaptive<T>(f, Transform(Kind::Identity, 0.0, lo, hi), breakpoints, spec);
    }

    const bool tangent = std::holds_alternative<TangentMap>(spec.mapping);
    if (lower_inf && upper_inf)
    {
        const Kind kind = tangent ? Kind::WholeTangent : Kind::WholeRational;
        return adaptive<T>(f, Transform(kind, 0.0, -1.0, 1.0), breakpoints, spec);
    }
    if (upper_inf)
    {
        const Kind kind = tangent ? Kind::UpperTangent : Kind::UpperRational;
        return adaptive<T>(f, Transform(kind, a, 0.0, 1.0), breakpoints, spec);
    }
    const Kind kind = tangent ? Kind::LowerTangent : Kind::LowerRational;
    // t runs outwards from b; the jacobian stays positive.
    return adaptive<T>(f, Transform(kind, b, 0.0, 1.0), breakpoints, spec);
}

} // namespace

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_subdivisions < 1)
    {
        throw Error(ErrorCode::InvalidArgument,
                    "quadrature spec requires rel_tol > 0, abs_tol >= 0, max_subdivisions >= 1");
    }
}

QuadratureSpec QuadratureSpec::tightened(double factor) const
{
    QuadratureSpec out = *this;
    out.rel_tol /= factor;
    out.abs_tol /= factor;
    out.max_subdivisions = static_cast<int>(max_subdivisions * std::max(1.0, std::sqrt(factor)));
    return out;
}

QuadratureResult<double> integrate(const RealIntegrand &f, double a, double b, const QuadratureSpec &spec,
                                   std::span<const double> breakpoints)
{
    return integrate_impl<double>(f, a, b, spec, breakpoints);
}

QuadratureResult<std::complex<double>> integrate_complex(const ComplexIntegrand &f, double a, double b,
                                                         const QuadratureSpec &spec,
                                                         std::span<const double> breakpoints)
{
    return integrate_impl<std::complex<double>>(f, a, b, spec, breakpoints);
}

QuadratureResult<double> integrate(const RealIntegrand &f, const QuadratureSpec &spec,
                                   std::span<const double> breakpoints)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    return integrate_impl<double>(f, -inf, inf, spec, breakpoints);
}

QuadratureResult<std::complex<double>> integrate_complex(const ComplexIntegrand &f, const QuadratureSpec &spec,
                                                         std::span<const double> breakpoints)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    return integrate_impl<std::complex<double>>(f, -inf, inf, spec, breakpoints);
}

QuadratureResult<double> integrate_even(const RealIntegrand &f, const QuadratureSpec &spec,
                                        std::span<const double> breakpoints)
{
    for (double x : {0.173, 0.61, 1.37, 3.9, 11.3})
    {
        const double plus = f(x);
        const double minus = f(-x);
        const double scale = std::max(std::abs(plus), std::abs(minus));
        if (std::abs(plus - minus) > 1e-12 * scale + 1e-300)
        {
            std::ostringstream os;
            os << "integrand is not even: f(" << x << ") = " << plus << ", f(" << -x << ") = " << minus;
            throw Error(ErrorCode::NotEven, os.str());
        }
    }
    std::vector<double> positive;
    for (double b : breakpoints)
    {
        if (b != 0.0)
        {
            positive.push_back(std::abs(b));
        }
    }
    auto half = integrate_impl<double>(f, 0.0, std::numeric_limits<double>::infinity(), spec, positive);
    half.value *= 2.0;
    half.error_estimate *= 2.0;
    return half;
}

} // namespace parampstat::quad
