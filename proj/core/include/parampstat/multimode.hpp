#pragma once

#include "parampstat/mode_generator.hpp"
#include "parampstat/moments.hpp"
#include "parampstat/paramp.hpp"
#include "parampstat/quadrature.hpp"

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace parampstat
{

// Sum over bins n in [-max_index, max_index].
struct FixedCutoff
{
    long max_index = 100;
};

// Add bin pairs +-k until their J1 stays below threshold times the running
// total for `consecutive` steps in a row.
struct AdaptiveTail
{
    double threshold = 1e-12;
    int consecutive = 5;
    long max_index = 2'000'000;
};

using ModeCutoff = std::variant<AdaptiveTail, FixedCutoff>;

struct MultimodeConfig
{
    ModeGenerator generator;
    double tau = 1.0;
    ModeCutoff cutoff = AdaptiveTail{};
};

// <n>_Delta = sum_n J1(n,n), <dn^2>_Delta = sum_{n,m} J1 J2 + J3. The third
// moment is left empty. Sinc generators only accept FixedCutoff since their
// off-diagonal terms decay too slowly for the adaptive rule.
// Throws TailNotConverged when AdaptiveTail reaches max_index.
MomentSet moments_multimode_finite(const ValidatedParams &p, const MultimodeConfig &cfg,
                                   const quad::QuadratureSpec &spec = {});

struct LimitRates
{
    double mean = 0.0;     // tau int n
    double variance = 0.0; // tau int 2 n (n + 1)
    double quad_error = 0.0;
    std::size_t evaluations = 0;
};

LimitRates limit_rates(const ValidatedParams &p, double tau, const quad::QuadratureSpec &spec = {});

struct UniversalF
{
    double f_n = 0.0;
    double f_dn2 = 0.0;
};

// Rates divided by 2 pi gamma tau, as functions of (gamma tau, |xi| tau, delta tau).
UniversalF universal_F(double gamma_tau, double xi_tau, double delta_tau, const quad::QuadratureSpec &spec = {});

// Throws ZeroMean when the mean rate vanishes.
double fano_factor(const ValidatedParams &p, double tau, const quad::QuadratureSpec &spec = {});

// 2 m (8 m^2 + 5 m + 1)
double padurariu_reference(double mean);

struct TauChoice
{
    std::string label;
    double tau = 0.0;
};

// 1/(4 pi gamma), 1/(2 pi gamma), 1/(8 pi gamma), 1/gamma.
std::vector<TauChoice> figure_sv_taus(double gamma);

// |xi|/gamma = 0.01, 0.02, ..., 0.99
std::vector<double> default_figure_xi_grid();

struct FigurePoint
{
    double xi_over_gamma = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

struct FigureCurve
{
    std::string label;
    std::optional<double> tau; // empty for the single-mode curve
    std::vector<FigurePoint> points;
};

inline constexpr const char *kSingleModeLabel = "single_mode";

// Ridge family at the given gamma. The single-mode curve comes first, at the
// flux density of the band center, then one curve per tau in the given order.
std::vector<FigureCurve> figure_sv_dataset(double gamma, std::span<const TauChoice> taus,
                                           std::span<const double> xi_over_gamma,
                                           const quad::QuadratureSpec &spec = {});

} // namespace parampstat
