#pragma once

#include "parampstat/filter.hpp"
#include "parampstat/mode_generator.hpp"
#include "parampstat/multimode.hpp"
#include "parampstat/paramp.hpp"
#include "parampstat/quadrature.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace parampstat
{

struct SingleModeScheme
{
    FilterSpec filter;
};

struct MultimodeLimitScheme
{
    double tau = 1.0;
};

// Reported as counts in time tau, tau Delta <n>_Delta and tau Delta <dn^2>_Delta,
// so they line up with the limit rates.
struct MultimodeFiniteScheme
{
    ModeGenerator generator;
    double tau = 1.0;
    ModeCutoff cutoff = AdaptiveTail{};
};

using Scheme = std::variant<SingleModeScheme, MultimodeLimitScheme, MultimodeFiniteScheme>;

// "single_mode", "multimode_limit" or "multimode_finite"
std::string scheme_label(const Scheme &s);

struct SweepConfig
{
    ParampParams base;
    std::vector<double> xi_grid{0.0};
    std::vector<double> delta_grid{0.0};
    Scheme scheme = SingleModeScheme{};
    quad::QuadratureSpec quadrature;
    unsigned threads = 0; // 0: hardware concurrency
};

// Throws ConfigParse when a grid or the scheme settings are unusable.
void validate_sweep_config(const SweepConfig &cfg);

struct SweepRecord
{
    std::string scheme;
    double xi = 0.0;
    double delta = 0.0;
    std::optional<double> tau;
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> third;
    std::optional<double> fano; // empty at zero mean
    double quad_err = 0.0;

    bool operator==(const SweepRecord &) const = default;
};

// A grid point outside the stability range.
struct SkippedPoint
{
    double xi = 0.0;
    double delta = 0.0;
    std::string reason;
};

struct SweepResult
{
    std::vector<SweepRecord> records; // xi-major, delta-minor
    std::vector<SkippedPoint> skipped;
};

// Points are evaluated concurrently; the output order does not depend on the
// thread count. The first numerical failure in grid order is rethrown.
SweepResult run_sweep(const SweepConfig &cfg);

} // namespace parampstat
