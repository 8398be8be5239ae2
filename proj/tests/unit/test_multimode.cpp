#include "parampstat/error.hpp"
#include "parampstat/multimode.hpp"

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace parampstat;

namespace
{

constexpr double kPi = std::numbers::pi;

ValidatedParams amp(double gamma, double xi, double delta = 0.0)
{
    ParampParams p;
    p.gamma = gamma;
    p.xi_mag = xi;
    p.delta = delta;
    return validate_params(p);
}

ErrorCode code_of(const std::function<void()> &f)
{
    try
    {
        f();
    }
    catch (const Error &e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(LimitRates, RidgeValuesAtQuarterPiTau)
{
    const auto r = limit_rates(amp(1.0, 0.5), 1.0 / (4.0 * kPi));
    EXPECT_NEAR(r.mean, 1.0 / 6.0, 1e-13);
    EXPECT_NEAR(r.variance, 37.0 / 54.0, 1e-13);
    EXPECT_NEAR(r.mean, oracle::kIntN_ridge_half / (4.0 * kPi), 1e-13);
    EXPECT_GT(r.evaluations, 0u);
}

TEST(LimitRates, LinearInTau)
{
    const auto p = amp(3.0, 2.0, 1.0);
    const auto a = limit_rates(p, 0.1);
    const auto b = limit_rates(p, 0.7);
    EXPECT_NEAR(b.mean / a.mean, 7.0, 1e-13);
    EXPECT_NEAR(b.variance / a.variance, 7.0, 1e-13);
    EXPECT_EQ(code_of([&] { limit_rates(p, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(LimitRates, RidgeClosedFormAcrossCoupling)
{
    // tau int n = tau 2 pi gamma x^2 / (1 - x^2) with x = |xi| / gamma
    for (double gamma : {0.01, 1.0, 300.0})
    {
        for (double x = 0.1; x < 0.995; x += 0.11)
        {
            const double tau = 0.37 / gamma;
            const auto r = limit_rates(amp(gamma, x * gamma), tau);
            const double expected = tau * 2.0 * kPi * gamma * x * x / (1.0 - x * x);
            EXPECT_NEAR(r.mean / expected, 1.0, 1e-10) << gamma << " " << x;
        }
    }
}

TEST(LimitRates, CubicRelationOnTheRidgeAtQuarterPiTau)
{
    for (int k = 1; k <= 99; ++k)
    {
        const double x = k / 100.0;
        const auto r = limit_rates(amp(1.0, x), 1.0 / (4.0 * kPi));
        EXPECT_NEAR(r.variance / padurariu_reference(r.mean), 1.0, 1e-9) << x;
    }
}

TEST(LimitRates, FanoFactor)
{
    const auto p = amp(1.0, 0.5);
    EXPECT_NEAR(fano_factor(p, 1.0 / (4.0 * kPi)), (37.0 / 54.0) * 6.0, 1e-12);
    // weak coupling: Fano -> 2
    EXPECT_NEAR(fano_factor(amp(1.0, 1e-4), 1.0), 2.0, 1e-6);
    EXPECT_EQ(code_of([] { fano_factor(amp(1.0, 0.0), 1.0); }), ErrorCode::ZeroMean);
}

TEST(UniversalF, DependsOnlyOnRatios)
{
    const auto base = universal_F(1.0, 0.4, 0.3);
    for (double s : {1e-3, 2.0, 1e5})
    {
        const auto f = universal_F(s, 0.4 * s, 0.3 * s);
        EXPECT_NEAR(f.f_n / base.f_n, 1.0, 1e-11) << s;
        EXPECT_NEAR(f.f_dn2 / base.f_dn2, 1.0, 1e-11) << s;
    }
    const auto ridge = universal_F(2.0, 1.0, 0.0);
    EXPECT_NEAR(ridge.f_n, oracle::kIntN_ridge_half / (2.0 * kPi), 1e-13);
    EXPECT_THROW(universal_F(1.0, 1.0, 0.0), Error);
}

TEST(Padurariu, Reference)
{
    EXPECT_EQ(padurariu_reference(0.0), 0.0);
    EXPECT_DOUBLE_EQ(padurariu_reference(1.0), 28.0);
    EXPECT_THROW(padurariu_reference(-0.1), Error);
}

TEST(MultimodeFinite, WindowConvergesToLimitRates)
{
    const auto p = amp(1.0, 0.5);
    const double tau = 1.0 / (4.0 * kPi);
    const auto limit = limit_rates(p, tau);
    double previous = INFINITY;
    std::vector<double> errors;
    for (double delta : {0.2, 0.1, 0.05})
    {
        MultimodeConfig cfg;
        cfg.generator = {GeneratorKind::Window, delta};
        cfg.tau = tau;
        const auto m = moments_multimode_finite(p, cfg);
        const auto &s = std::get<ModeSums>(m.components);
        EXPECT_EQ(s.mode_width, delta);
        EXPECT_EQ(s.tau, tau);
        EXPECT_GT(s.max_index, 0);
        EXPECT_NEAR(s.scaled_mean / limit.mean, 1.0, 1e-7) << delta;
        EXPECT_FALSE(m.third_central.has_value());
        const double err = std::abs(s.scaled_variance - limit.variance);
        EXPECT_LT(err, previous);
        previous = err;
        errors.push_back(err);
    }
    // second order in the bin width
    EXPECT_NEAR(std::log2(errors[0] / errors[1]), 2.0, 0.15);
    EXPECT_NEAR(std::log2(errors[1] / errors[2]), 2.0, 0.15);
}

TEST(MultimodeFinite, FixedWindowCutoffMatchesAdaptiveWhenWide)
{
    const auto p = amp(1.0, 0.7);
    MultimodeConfig cfg;
    cfg.generator = {GeneratorKind::Window, 1.0};
    const auto adaptive = moments_multimode_finite(p, cfg);
    cfg.cutoff = FixedCutoff{std::get<ModeSums>(adaptive.components).max_index};
    const auto fixed = moments_multimode_finite(p, cfg);
    // same bins, different summation order
    EXPECT_NEAR(fixed.mean / adaptive.mean, 1.0, 1e-14);
    EXPECT_NEAR(fixed.variance / adaptive.variance, 1.0, 1e-14);
}

TEST(MultimodeFinite, SingleWindowBinIsASingleMode)
{
    const auto p = amp(1.0, 0.6);
    MultimodeConfig cfg;
    cfg.generator = {GeneratorKind::Window, 0.3};
    cfg.cutoff = FixedCutoff{0};
    const auto m = moments_multimode_finite(p, cfg);
    const double j1 = integral_J(p, cfg.generator, JIntegral::J1, 0, 0).value;
    const double j3 = integral_J(p, cfg.generator, JIntegral::J3, 0, 0).value;
    EXPECT_DOUBLE_EQ(m.mean, j1);
    EXPECT_DOUBLE_EQ(m.variance, j1 * (j1 + 1.0) + j3);
}

TEST(MultimodeFinite, SincAgreesWithWindowForWideCutoff)
{
    const auto p = amp(1.0, 0.5);
    MultimodeConfig window;
    window.generator = {GeneratorKind::Window, 0.5};
    window.cutoff = FixedCutoff{40};
    MultimodeConfig sinc = window;
    sinc.generator.kind = GeneratorKind::Sinc;
    sinc.cutoff = FixedCutoff{40};
    const auto w = moments_multimode_finite(p, window);
    const auto s = moments_multimode_finite(p, sinc);
    // Both families are complete: the mean converges to int n / Delta.
    const double total = oracle::kIntN_ridge_half / 0.5;
    EXPECT_NEAR(w.mean / total, 1.0, 1e-4);
    EXPECT_NEAR(s.mean / total, 1.0, 1e-2);
    EXPECT_GE(s.variance, s.mean);
}

TEST(MultimodeFinite, Errors)
{
    const auto p = amp(1.0, 0.5);
    MultimodeConfig cfg;
    cfg.generator = {GeneratorKind::Sinc, 0.5};
    EXPECT_EQ(code_of([&] { moments_multimode_finite(p, cfg); }), ErrorCode::InvalidArgument);
    cfg.generator.kind = GeneratorKind::Window;
    cfg.cutoff = AdaptiveTail{1e-12, 5, 10};
    EXPECT_EQ(code_of([&] { moments_multimode_finite(p, cfg); }), ErrorCode::TailNotConverged);
    cfg.cutoff = FixedCutoff{-1};
    EXPECT_EQ(code_of([&] { moments_multimode_finite(p, cfg); }), ErrorCode::InvalidArgument);
    cfg.cutoff = FixedCutoff{1};
    cfg.tau = -1.0;
    EXPECT_EQ(code_of([&] { moments_multimode_finite(p, cfg); }), ErrorCode::InvalidArgument);
    cfg.tau = 1.0;
    cfg.generator.delta = 0.0;
    EXPECT_EQ(code_of([&] { moments_multimode_finite(p, cfg); }), ErrorCode::InvalidArgument);
}

TEST(FigureSv, TausAndGrid)
{
    const auto taus = figure_sv_taus(2.0);
    ASSERT_EQ(taus.size(), 4u);
    EXPECT_EQ(taus[0].label, "tau_1_over_4pi_gamma");
    EXPECT_DOUBLE_EQ(taus[0].tau, 1.0 / (8.0 * kPi));
    EXPECT_DOUBLE_EQ(taus[1].tau, 1.0 / (4.0 * kPi));
    EXPECT_DOUBLE_EQ(taus[2].tau, 1.0 / (16.0 * kPi));
    EXPECT_DOUBLE_EQ(taus[3].tau, 0.5);
    EXPECT_THROW(figure_sv_taus(0.0), Error);
    const auto grid = default_figure_xi_grid();
    ASSERT_EQ(grid.size(), 99u);
    EXPECT_EQ(grid.front(), 0.01);
    EXPECT_EQ(grid.back(), 0.99);
}

TEST(FigureSv, Dataset)
{
    const double gamma = 1.5;
    const auto taus = figure_sv_taus(gamma);
    const std::vector<double> xs{0.1, 0.5, 0.9};
    const auto curves = figure_sv_dataset(gamma, taus, xs);
    ASSERT_EQ(curves.size(), 5u);
    EXPECT_EQ(curves[0].label, kSingleModeLabel);
    EXPECT_FALSE(curves[0].tau.has_value());
    for (std::size_t i = 0; i < taus.size(); ++i)
    {
        EXPECT_EQ(curves[i + 1].label, taus[i].label);
        EXPECT_EQ(*curves[i + 1].tau, taus[i].tau);
    }
    for (const auto &c : curves)
    {
        ASSERT_EQ(c.points.size(), xs.size());
        for (std::size_t k = 0; k < xs.size(); ++k)
        {
            EXPECT_EQ(c.points[k].xi_over_gamma, xs[k]);
        }
    }
    // x = 0.5: n(0) = 16/9 at band center
    const auto &sm = curves[0].points[1];
    EXPECT_NEAR(sm.mean, 16.0 / 9.0, 1e-14);
    EXPECT_NEAR(sm.variance, 2.0 * sm.mean * (sm.mean + 1.0), 1e-13);
    const auto &quarter = curves[1].points[1];
    EXPECT_NEAR(quarter.mean, 1.0 / 6.0, 1e-13);
    EXPECT_NEAR(quarter.variance, 37.0 / 54.0, 1e-13);
    EXPECT_NEAR(quarter.variance, padurariu_reference(quarter.mean), 1e-12);
}
