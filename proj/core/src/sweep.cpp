#include "parampstat/sweep.hpp"

#include "parampstat/error.hpp"
#include "parampstat/single_mode.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace parampstat
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void config_error(const std::string &what)
{
    throw Error(ErrorCode::ConfigParse, what);
}

void check_grid(const std::vector<double> &grid, const char *name)
{
    if (grid.empty())
    {
        config_error(std::string(name) + " is empty");
    }
    for (double x : grid)
    {
        if (!std::isfinite(x))
        {
            config_error(std::string(name) + " contains a non-finite value");
        }
    }
}

std::optional<double> fano_of(double mean, double variance)
{
    if (mean > 0.0)
    {
        return variance / mean;
    }
    return std::nullopt;
}

SweepRecord evaluate(const ValidatedParams &p, const SweepConfig &cfg)
{
    SweepRecord r;
    r.scheme = scheme_label(cfg.scheme);
    r.xi = p.xi_mag();
    r.delta = p.delta();
    std::visit(overloaded{
                   [&](const SingleModeScheme &s) {
                       const MomentSet m = moments_single(p, s.filter, cfg.quadrature);
                       r.mean = m.mean;
                       r.variance = m.variance;
                       r.third = m.third_central;
                       r.quad_err = m.quad_error;
                   },
                   [&](const MultimodeLimitScheme &s) {
                       const LimitRates rates = limit_rates(p, s.tau, cfg.quadrature);
                       r.tau = s.tau;
                       r.mean = rates.mean;
                       r.variance = rates.variance;
                       r.quad_err = rates.quad_error;
                   },
                   [&](const MultimodeFiniteScheme &s) {
                       const MomentSet m =
                           moments_multimode_finite(p, MultimodeConfig{s.generator, s.tau, s.cutoff}, cfg.quadrature);
                       const auto &sums = std::get<ModeSums>(m.components);
                       const double scale = s.tau * s.generator.delta;
                       r.tau = s.tau;
                       r.mean = sums.scaled_mean;
                       r.variance = sums.scaled_variance;
                       r.quad_err = scale * m.quad_error;
                   },
               },
               cfg.scheme);
    r.fano = fano_of(r.mean, r.variance);
    return r;
}

struct Slot
{
    std::optional<SweepRecord> record;
    std::optional<SkippedPoint> skipped;
    std::exception_ptr error;
};

} // namespace

std::string scheme_label(const Scheme &s)
{
    return std::visit(overloaded{
                          [](const SingleModeScheme &) { return std::string("single_mode"); },
                          [](const MultimodeLimitScheme &) { return std::string("multimode_limit"); },
                          [](const MultimodeFiniteScheme &) { return std::string("multimode_finite"); },
                      },
                      s);
}

void validate_sweep_config(const SweepConfig &cfg)
{
    check_grid(cfg.xi_grid, "xi grid");
    check_grid(cfg.delta_grid, "delta grid");
    try
    {
        cfg.quadrature.validate();
        std::visit(overloaded{
                       [](const SingleModeScheme &s) { validate_filter(s.filter); },
                       [](const MultimodeLimitScheme &s) {
                           if (!(s.tau > 0.0) || !std::isfinite(s.tau))
                           {
                               config_error("tau must be positive");
                           }
                       },
                       [](const MultimodeFiniteScheme &s) {
                           validate_generator(s.generator);
                           if (!(s.tau > 0.0) || !std::isfinite(s.tau))
                           {
                               config_error("tau must be positive");
                           }
                           if (s.generator.kind == GeneratorKind::Sinc && !std::holds_alternative<FixedCutoff>(s.cutoff))
                           {
                               config_error("sinc mode generators require a fixed mode cutoff");
                           }
                       },
                   },
                   cfg.scheme);
    }
    catch (const Error &e)
    {
        if (e.code() == ErrorCode::ConfigParse)
        {
            throw;
        }
        config_error(e.what());
    }
}

SweepResult run_sweep(const SweepConfig &cfg)
{
    validate_sweep_config(cfg);
    const std::size_t nd = cfg.delta_grid.size();
    const std::size_t total = cfg.xi_grid.size() * nd;
    std::vector<Slot> slots(total);

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (std::size_t i = next++; i < total; i = next++)
        {
            ParampParams raw = cfg.base;
            raw.xi_mag = cfg.xi_grid[i / nd];
            raw.delta = cfg.delta_grid[i % nd];
            try
            {
                slots[i].record = evaluate(validate_params(raw), cfg);
            }
            catch (const Error &e)
            {
                if (e.code() == ErrorCode::OutOfStabilityRange)
                {
                    slots[i].skipped = SkippedPoint{raw.xi_mag, raw.delta, e.what()};
                }
                else
                {
                    slots[i].error = std::current_exception();
                }
            }
            catch (...)
            {
                slots[i].error = std::current_exception();
            }
        }
    };

    unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
        {
            pool.emplace_back(worker);
        }
    }

    SweepResult result;
    for (Slot &s : slots)
    {
        if (s.error)
        {
            std::rethrow_exception(s.error);
        }
        if (s.record)
        {
            result.records.push_back(std::move(*s.record));
        }
        else if (s.skipped)
        {
            result.skipped.push_back(std::move(*s.skipped));
        }
    }
    return result;
}

} // namespace parampstat
