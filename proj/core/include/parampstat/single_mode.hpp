#pragma once

#include "parampstat/filter.hpp"
#include "parampstat/moments.hpp"
#include "parampstat/paramp.hpp"
#include "parampstat/quadrature.hpp"

namespace parampstat
{

// I1 = int |h|^2 n
quad::QuadratureResult<double> integral_I1(const ValidatedParams &p, const FilterSpec &f,
                                           const quad::QuadratureSpec &spec = {});

// I2 = int |h|^2 (n + 1); equals I1 + 1 for a normalized filter.
quad::QuadratureResult<double> integral_I2(const ValidatedParams &p, const FilterSpec &f,
                                           const quad::QuadratureSpec &spec = {});

// I3 = | int h(nu) h*(-nu) sqrt(n(-nu) [n(nu) + 1]) |^2, bounded by I1 I2.
quad::QuadratureResult<double> integral_I3(const ValidatedParams &p, const FilterSpec &f,
                                           const quad::QuadratureSpec &spec = {});

// mean = I1, variance = I1 I2 + I3, third = (I1 + I2)(I1 I2 + 3 I3).
MomentSet moments_single(const ValidatedParams &p, const FilterSpec &f, const quad::QuadratureSpec &spec = {});

// Squeezed vacuum: variance 2n(n+1), third 2n(2n+1)(2n+2).
MomentSet squeezed_vacuum_reference(double mean);

// g(nu) = sqrt(1 + nu/nu0) h(nu): the filter seen by a voltage measurement.
class EffectiveFilter
{
public:
    const FilterSpec &base() const noexcept { return base_; }
    double nu0() const noexcept { return nu0_; }
    // int |g|^2 dnu; generally != 1.
    double norm_sq() const noexcept { return norm_sq_; }
    // Squared-voltage prefactor (sqrt(nu0))^2 kept apart from the counts.
    double voltage_scale() const noexcept { return nu0_; }
    // sqrt(1 + nu/nu0)
    double stretch(double nu) const;
    double amplitude(double nu) const;

private:
    friend EffectiveFilter wideband_effective_filter(const FilterSpec &f, double nu0, const quad::QuadratureSpec &spec);
    EffectiveFilter(const FilterSpec &base, double nu0, double norm_sq) : base_(base), nu0_(nu0), norm_sq_(norm_sq) {}

    FilterSpec base_;
    double nu0_;
    double norm_sq_;
};

// Throws FilterExceedsBand when the filter reaches nu <= -nu0, InvalidArgument
// unless nu0 > 0.
EffectiveFilter wideband_effective_filter(const FilterSpec &f, double nu0, const quad::QuadratureSpec &spec = {});

struct WidebandMoments
{
    MomentSet raw;          // I-formulas with g in place of h
    MomentSet renormalized; // same with g / ||g||
    double norm_sq = 1.0;
    double voltage_scale = 0.0;
};

// Third moments here reuse the normalized-filter formula and are flagged as
// extrapolated.
WidebandMoments moments_wideband(const ValidatedParams &p, const EffectiveFilter &g,
                                 const quad::QuadratureSpec &spec = {});

} // namespace parampstat
