#include "parampstat/error.hpp"
#include "parampstat/filter.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

using namespace parampstat;

namespace
{

std::vector<FilterSpec> shapes()
{
    std::vector<FilterSpec> out;
    for (const char *name : {"rectangular", "lorentzian", "gaussian", "sinc"})
    {
        for (double width : {0.05, 1.0, 20.0})
        {
            for (double center : {0.0, -0.7, 3.0})
            {
                out.push_back(make_filter(name, width, center));
            }
        }
    }
    return out;
}

std::string describe(const FilterSpec &f)
{
    return std::string(shape_name(f)) + " w=" + std::to_string(filter_width(f)) + " c=" + std::to_string(f.center);
}

} // namespace

TEST(Filter, EveryShapeIsNormalized)
{
    for (const auto &f : shapes())
    {
        EXPECT_NEAR(filter_norm(f).value, 1.0, 1e-9) << describe(f);
    }
}

TEST(Filter, EvalFilterIsRealAmplitude)
{
    for (const auto &f : shapes())
    {
        for (double nu : {-2.0, -0.3, 0.0, 0.01, 5.0})
        {
            const auto h = eval_filter(f, nu);
            EXPECT_EQ(h.imag(), 0.0);
            EXPECT_EQ(h.real(), filter_amplitude(f, nu));
        }
    }
}

TEST(Filter, PeakValues)
{
    EXPECT_DOUBLE_EQ(filter_amplitude(make_filter("rect", 4.0), 0.0), 0.5);
    EXPECT_EQ(filter_amplitude(make_filter("rect", 4.0), 2.5), 0.0);
    EXPECT_DOUBLE_EQ(filter_amplitude(make_filter("sinc", 4.0), 0.0), 0.5);
    EXPECT_NEAR(filter_amplitude(make_filter("sinc", 4.0), 4.0), 0.0, 1e-16);
    const double g = 0.5;
    EXPECT_DOUBLE_EQ(filter_amplitude(make_filter("lorentzian", g), 0.0), std::sqrt(2.0 * g * g * g / std::numbers::pi) / (g * g));
    const double s = 0.3;
    const double peak = std::pow(2.0 * std::numbers::pi * s * s, -0.25);
    EXPECT_DOUBLE_EQ(filter_amplitude(make_filter("gaussian", s, 1.0), 1.0), peak);
    // |h|^2 is a normal density: one sigma away it drops by exp(-1/2)
    const double one_sigma = filter_amplitude(make_filter("gaussian", s, 1.0), 1.0 + s);
    EXPECT_NEAR(one_sigma * one_sigma / (peak * peak), std::exp(-0.5), 1e-15);
}

TEST(Filter, MakeFilterRejectsBadInput)
{
    EXPECT_THROW(make_filter("triangle", 1.0), Error);
    for (double w : {0.0, -1.0, std::nan(""), std::numeric_limits<double>::infinity()})
    {
        try
        {
            make_filter("gaussian", w);
            ADD_FAILURE() << w;
        }
        catch (const Error &e)
        {
            EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
        }
    }
    EXPECT_EQ(shape_name(make_filter("rect", 1.0)), "rectangular");
}

TEST(Filter, ScaledFilterStaysNormalized)
{
    for (const auto &f : shapes())
    {
        const auto s = scaled_filter(f, 2.5);
        EXPECT_DOUBLE_EQ(filter_width(s), 2.5 * filter_width(f));
        EXPECT_DOUBLE_EQ(s.center, 2.5 * f.center);
        EXPECT_NEAR(filter_norm(s).value, 1.0, 1e-9) << describe(f);
        // h_s(2.5 nu) = h(nu) / sqrt(2.5)
        for (double nu : {-0.4, 0.0, 0.13})
        {
            EXPECT_NEAR(filter_amplitude(s, 2.5 * (nu + f.center)),
                        filter_amplitude(f, nu + f.center) / std::sqrt(2.5), 1e-13);
        }
    }
}

TEST(Filter, Support)
{
    const auto [lo, hi] = filter_support(make_filter("rect", 2.0, 1.0));
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 2.0);
    EXPECT_TRUE(std::isinf(filter_support(make_filter("lorentzian", 1.0)).second));
    EXPECT_TRUE(std::isinf(filter_support(make_filter("sinc", 1.0)).first));
    const auto g = filter_support(make_filter("gaussian", 0.1));
    const double edge = filter_amplitude(make_filter("gaussian", 0.1), g.second);
    EXPECT_EQ(edge * edge, 0.0);
}

TEST(Filter, ExperimentBandpass)
{
    const auto f = experiment_bandpass_filter();
    EXPECT_EQ(shape_name(f), "rectangular");
    EXPECT_DOUBLE_EQ(filter_width(f), 336e6);
    EXPECT_NEAR(filter_norm(f).value, 1.0, 1e-12);
}

TEST(Filter, PowerWeightedLinearInWeight)
{
    const auto f = make_filter("sinc", 0.7, 0.2);
    const auto w = [](double nu) { return 1.0 / (1.0 + nu * nu); };
    const auto a = integrate_power_weighted(f, w, 0.0, {});
    const auto b = integrate_power_weighted(f, [&](double nu) { return 3.0 + 2.0 * w(nu); }, 3.0, {});
    EXPECT_NEAR(b.value, 3.0 + 2.0 * a.value, 1e-9);
}

TEST(Filter, MirrorOfCenteredEvenFilterIsPowerIntegral)
{
    const auto w = [](double nu) { return std::exp(-nu * nu); };
    for (const char *name : {"rectangular", "lorentzian", "gaussian", "sinc"})
    {
        const auto f = make_filter(name, 0.8);
        const auto m = integrate_mirror_weighted(f, w, {});
        const auto p = integrate_power_weighted(f, w, 0.0, {});
        EXPECT_NEAR(m.value.real(), p.value, 1e-10 * p.value) << name;
        EXPECT_EQ(m.value.imag(), 0.0) << name;
    }
}

TEST(Filter, MirrorOfDisjointRectanglesVanishes)
{
    const auto f = make_filter("rect", 1.0, 2.0);
    EXPECT_EQ(integrate_mirror_weighted(f, [](double) { return 1.0; }, {}).value, 0.0);
}

TEST(Filter, MirrorOfShiftedGaussianHasClosedForm)
{
    // h(nu) h(-nu) = N^2 exp(-(nu^2 + c^2) / (2 s^2)), integral = exp(-c^2 / (2 s^2))
    const double s = 0.6;
    const double c = 0.5;
    const auto m = integrate_mirror_weighted(make_filter("gaussian", s, c), [](double) { return 1.0; }, {});
    EXPECT_NEAR(m.value.real(), std::exp(-c * c / (2.0 * s * s)), 1e-12);
}

TEST(Filter, MirrorOfShiftedSincHasClosedForm)
{
    // int sinc(pi(x - a)) sinc(pi(x - b)) dx = sinc(pi(a - b))
    for (double c : {0.13, 0.5, 1.7})
    {
        const double w = 0.9;
        const auto m = integrate_mirror_weighted(make_filter("sinc", w, c), [](double) { return 1.0; }, {});
        const double y = 2.0 * std::numbers::pi * c / w;
        EXPECT_NEAR(m.value.real(), std::sin(y) / y, 1e-9) << c;
    }
}
