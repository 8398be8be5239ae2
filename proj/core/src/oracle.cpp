#include "parampstat/oracle.hpp"

#include "parampstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

namespace parampstat
{

namespace
{

constexpr double kNormFloor = 1.0 - 1e-12;

void check_state(const PairState &s)
{
    if (!std::isfinite(s.eta) || s.cutoff < 0)
    {
        throw Error(ErrorCode::InvalidArgument, "pair state needs finite eta and cutoff >= 0");
    }
}

void check_norm(double norm, const PairState &s)
{
    if (norm < kNormFloor)
    {
        std::ostringstream os;
        os << "Fock cutoff " << s.cutoff << " keeps norm " << norm << " at eta = " << s.eta;
        throw Error(ErrorCode::CutoffInsufficient, os.str());
    }
}

// Truncated (not renormalized) moments of a photon-number distribution.
struct Distribution
{
    std::vector<double> number;
    std::vector<double> prob;

    double norm() const
    {
        double s = 0.0;
        for (double p : prob)
        {
            s += p;
        }
        return s;
    }

    std::array<double, 3> raw() const
    {
        std::array<double, 3> m{};
        for (std::size_t i = 0; i < prob.size(); ++i)
        {
            const double k = number[i];
            m[0] += prob[i] * k;
            m[1] += prob[i] * k * k;
            m[2] += prob[i] * k * k * k;
        }
        return m;
    }

    MomentSet central(double scale) const
    {
        const double mu = raw()[0];
        double c2 = 0.0;
        double c3 = 0.0;
        for (std::size_t i = 0; i < prob.size(); ++i)
        {
            const double d = number[i] - mu;
            c2 += prob[i] * d * d;
            c3 += prob[i] * d * d * d;
        }
        MomentSet m;
        m.mean = scale * mu;
        m.variance = scale * scale * c2;
        m.third_central = scale * scale * scale * c3;
        m.components = AnalyticReference{};
        return m;
    }
};

// Sum over all perfect matchings of ops (true = B^dagger), each pair taken in
// its original order.
std::complex<double> sum_matchings(std::vector<bool> ops, const std::function<std::complex<double>(bool, bool)> &pair)
{
    if (ops.empty())
    {
        return 1.0;
    }
    const bool first = ops.front();
    std::complex<double> total = 0.0;
    for (std::size_t j = 1; j < ops.size(); ++j)
    {
        std::vector<bool> rest;
        rest.reserve(ops.size() - 2);
        for (std::size_t i = 1; i < ops.size(); ++i)
        {
            if (i != j)
            {
                rest.push_back(ops[i]);
            }
        }
        const std::complex<double> c = pair(first, ops[j]);
        if (c != 0.0)
        {
            total += c * sum_matchings(std::move(rest), pair);
        }
    }
    return total;
}

} // namespace

FockMoments fock_pair_moments(const PairState &s)
{
    check_state(s);
    const double x = std::pow(std::tanh(s.eta), 2);
    const double c = std::cosh(s.eta);
    Distribution arm;
    double p = 1.0 / (c * c);
    for (int k = 0; k <= s.cutoff; ++k)
    {
        arm.number.push_back(k);
        arm.prob.push_back(p);
        p *= x;
    }
    FockMoments out;
    out.truncated_norm = arm.norm();
    check_norm(out.truncated_norm, s);
    out.single_arm = arm.central(1.0);
    // n1 = n2 on every kept term, so the total is twice one arm.
    out.total = arm.central(2.0);
    out.single_arm_raw = arm.raw();
    return out;
}

SqueezedFockMoments squeezed_fock_moments(const PairState &s)
{
    check_state(s);
    const double x = std::pow(std::tanh(s.eta), 2);
    Distribution d;
    // |c_2k|^2 = tanh^2k (2k)! / (4^k k!^2) / cosh
    double p = 1.0 / std::cosh(s.eta);
    for (int k = 0; 2 * k <= s.cutoff; ++k)
    {
        d.number.push_back(2.0 * k);
        d.prob.push_back(p);
        p *= x * (2.0 * k + 1.0) / (2.0 * k + 2.0);
    }
    SqueezedFockMoments out;
    out.truncated_norm = d.norm();
    check_norm(out.truncated_norm, s);
    out.moments = d.central(1.0);
    out.raw = d.raw();
    return out;
}

OracleGrid default_oracle_grid(const ValidatedParams &p, const FilterSpec &f)
{
    validate_filter(f);
    const double delta = p.gamma() / 200.0;
    long n = static_cast<long>(std::ceil(20.0 * p.gamma() / delta));
    const auto [lo, hi] = filter_support(f);
    const double reach = std::max(std::abs(lo), std::abs(hi));
    if (std::isfinite(reach))
    {
        n = std::max(n, static_cast<long>(std::ceil(reach / delta)) + 1);
    }
    return {delta, n};
}

DiscretizedField discretize_weights(const ValidatedParams &p, double bin_width, long half_count,
                                    std::vector<double> weights)
{
    if (!(bin_width > 0.0) || half_count < 0 || weights.size() != static_cast<std::size_t>(2 * half_count + 1))
    {
        throw Error(ErrorCode::InvalidArgument, "grid needs bin_width > 0 and 2N + 1 weights");
    }
    DiscretizedField d;
    d.bin_width = bin_width;
    d.half_count = half_count;
    d.weights = std::move(weights);
    d.u.reserve(d.weights.size());
    d.v.reserve(d.weights.size());
    for (long j = -half_count; j <= half_count; ++j)
    {
        const BogoliubovCoefficients c = bogoliubov_coefficients(p, d.frequency(j));
        d.u.push_back(c.u);
        d.v.push_back(c.v);
    }
    return d;
}

DiscretizedField discretize(const ValidatedParams &p, const FilterSpec &f, const OracleGrid &grid)
{
    validate_filter(f);
    if (!(grid.bin_width > 0.0) || grid.half_count < 0)
    {
        throw Error(ErrorCode::InvalidArgument, "grid needs bin_width > 0 and N >= 0");
    }
    const auto [lo, hi] = filter_support(f);
    const double edges[] = {lo, f.center, hi};
    const auto power = [&f](double nu) {
        const double h = filter_amplitude(f, nu);
        return h * h;
    };
    quad::QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-300;
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(2 * grid.half_count + 1));
    for (long j = -grid.half_count; j <= grid.half_count; ++j)
    {
        const double nu = static_cast<double>(j) * grid.bin_width;
        const double a = std::max(nu - 0.5 * grid.bin_width, lo);
        const double b = std::min(nu + 0.5 * grid.bin_width, hi);
        const double mass = a < b ? quad::integrate(power, a, b, spec, edges).value : 0.0;
        const double sign = filter_amplitude(f, nu) < 0.0 ? -1.0 : 1.0;
        weights.push_back(sign * std::sqrt(mass));
    }
    return discretize_weights(p, grid.bin_width, grid.half_count, std::move(weights));
}

std::complex<double> wick_moment_complex(const DiscretizedField &d, int k)
{
    if (k < 1 || k > 3)
    {
        std::ostringstream os;
        os << "Wick contraction is only enumerated for k = 1, 2, 3 (got " << k << ")";
        throw Error(ErrorCode::OrderUnsupported, os.str());
    }
    // B = sum_j alpha_j c_j + beta_j c_j^dagger with alpha_j = w_j u_j and
    // beta_j = w_{-j} v_{-j}.
    double n_bb = 0.0; // <B^dagger B> = sum |beta|^2
    double a_bb = 0.0; // <B B^dagger> = sum |alpha|^2
    std::complex<double> m_bb = 0.0; // <B B> = sum alpha beta
    for (long j = -d.half_count; j <= d.half_count; ++j)
    {
        const std::complex<double> alpha = d.weights[d.index(j)] * d.u[d.index(j)];
        const std::complex<double> beta = d.weights[d.index(-j)] * d.v[d.index(-j)];
        n_bb += std::norm(beta);
        a_bb += std::norm(alpha);
        m_bb += alpha * beta;
    }
    const auto pair = [&](bool left_dagger, bool right_dagger) -> std::complex<double> {
        if (left_dagger && !right_dagger)
        {
            return n_bb;
        }
        if (!left_dagger && right_dagger)
        {
            return a_bb;
        }
        return left_dagger ? std::conj(m_bb) : m_bb;
    };
    std::vector<bool> ops;
    for (int i = 0; i < k; ++i)
    {
        ops.push_back(true);
        ops.push_back(false);
    }
    return sum_matchings(ops, pair);
}

double wick_moments(const DiscretizedField &d, int k)
{
    return wick_moment_complex(d, k).real();
}

} // namespace parampstat
