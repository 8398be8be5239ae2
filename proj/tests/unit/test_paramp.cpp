#include "parampstat/error.hpp"
#include "parampstat/paramp.hpp"
#include "parampstat/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace parampstat;

namespace
{

ValidatedParams make(double gamma, double xi, double delta, double xi_arg = 0.0)
{
    ParampParams p;
    p.gamma = gamma;
    p.xi_mag = xi;
    p.delta = delta;
    p.xi_arg = xi_arg;
    return validate_params(p);
}

ErrorCode code_of(const ParampParams &p)
{
    try
    {
        validate_params(p);
    }
    catch (const Error &e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

// Gamma in [0.1, 10], delta in [-3, 3] gamma, |xi| up to 0.9 of threshold.
struct Sample
{
    ValidatedParams p;
    double nu;
};

std::vector<Sample> random_samples(std::size_t count, double nu_reach, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Sample> out;
    for (std::size_t i = 0; i < count; ++i)
    {
        const double gamma = std::pow(10.0, -1.0 + 2.0 * unit(rng));
        const double delta = gamma * (-3.0 + 6.0 * unit(rng));
        const double xi = 0.9 * std::sqrt(gamma * gamma + delta * delta) * unit(rng);
        const double arg = -std::numbers::pi + 2.0 * std::numbers::pi * unit(rng);
        const double nu = gamma * nu_reach * (-1.0 + 2.0 * unit(rng));
        out.push_back({make(gamma, xi, delta, arg), nu});
    }
    return out;
}

} // namespace

TEST(ValidateParams, AcceptsInsideStability)
{
    EXPECT_NO_THROW(make(1.0, 0.5, 0.0));
    EXPECT_NO_THROW(make(1.0, 1.2, 1.0));
}

TEST(ValidateParams, RejectsThresholdAndBeyond)
{
    ParampParams p;
    p.xi_mag = 1.0;
    EXPECT_EQ(code_of(p), ErrorCode::OutOfStabilityRange);
    p.xi_mag = 1.5;
    p.delta = 1.0;
    EXPECT_EQ(code_of(p), ErrorCode::OutOfStabilityRange);
}

TEST(ValidateParams, RejectsNonPositiveCoupling)
{
    ParampParams p;
    p.gamma = 0.0;
    EXPECT_EQ(code_of(p), ErrorCode::NonPositiveCoupling);
    p.gamma = -1.0;
    EXPECT_EQ(code_of(p), ErrorCode::NonPositiveCoupling);
}

TEST(ValidateParams, RejectsNonFiniteAndNegativeMagnitude)
{
    ParampParams p;
    p.delta = std::nan("");
    EXPECT_EQ(code_of(p), ErrorCode::InvalidArgument);
    ParampParams q;
    q.xi_mag = -0.1;
    EXPECT_EQ(code_of(q), ErrorCode::InvalidArgument);
}

TEST(ValidateParams, DimensionlessDividesRates)
{
    const auto p = make(2.5, 1.0, -0.5);
    const auto q = p.dimensionless();
    EXPECT_DOUBLE_EQ(q.gamma(), 1.0);
    EXPECT_DOUBLE_EQ(q.xi_mag(), 0.4);
    EXPECT_DOUBLE_EQ(q.delta(), -0.2);
    EXPECT_NEAR(photon_flux_density(p, 0.75), photon_flux_density(q, 0.3), 1e-14);
}

TEST(Bogoliubov, RidgeCenterValues)
{
    const auto c = bogoliubov_coefficients(make(1.0, 0.5, 0.0), 0.0);
    EXPECT_NEAR(c.u.real(), 5.0 / 3.0, 1e-15);
    EXPECT_NEAR(c.u.imag(), 0.0, 1e-15);
    EXPECT_NEAR(c.v.real(), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(c.v.imag(), 0.0, 1e-15);
}

TEST(Bogoliubov, NoNonlinearityIsPhaseOnly)
{
    const auto p = make(1.0, 0.0, 0.0);
    for (double nu : {-30.0, -1.0, 0.0, 0.4, 7.0})
    {
        const auto c = bogoliubov_coefficients(p, nu);
        EXPECT_NEAR(std::abs(c.u), 1.0, 1e-15);
        EXPECT_EQ(std::abs(c.v), 0.0);
    }
}

TEST(Bogoliubov, MagnitudeOfVIsSinhEta)
{
    const auto p = make(1.0, 0.5, 0.3);
    const double nu = 0.2;
    EXPECT_NEAR(std::abs(bogoliubov_coefficients(p, nu).v) / std::sinh(eta(p, nu)), 1.0, 1e-12);
}

TEST(Bogoliubov, UnitarityOnRandomGrid)
{
    for (const auto &s : random_samples(4000, 1e3, 11))
    {
        const auto c = bogoliubov_coefficients(s.p, s.nu);
        ASSERT_LT(std::abs(std::norm(c.u) - std::norm(c.v) - 1.0), 1e-12) << "nu=" << s.nu;
    }
}

TEST(Intracavity, BareCavityCenter)
{
    const auto c = intracavity_coefficients(make(1.0, 0.0, 0.0), 0.0);
    EXPECT_NEAR(c.u.real(), std::sqrt(1.0 / std::numbers::pi), 1e-15);
    EXPECT_NEAR(c.u.imag(), 0.0, 1e-15);
    EXPECT_EQ(std::abs(c.v), 0.0);
}

TEST(Intracavity, ConjugateCoefficientAtRidgeCenter)
{
    const auto c = intracavity_coefficients(make(1.0, 0.5, 0.0), 0.0);
    EXPECT_NEAR(c.v.real(), 0.5 * std::sqrt(1.0 / std::numbers::pi) / 0.75, 1e-15);
}

TEST(Intracavity, BareDensityIntegratesToOneForAnyGamma)
{
    for (double gamma : {0.3, 1.0, 40.0})
    {
        const auto p = make(gamma, 0.0, 0.0);
        const auto r = quad::integrate(
            [&p](double nu) { return std::norm(intracavity_coefficients(p, nu).u); }, {}, std::vector{-gamma, gamma});
        EXPECT_NEAR(r.value, 1.0, 1e-10) << gamma;
    }
    const auto wide = make(1e4, 0.0, 0.0);
    EXPECT_LT(std::norm(intracavity_coefficients(wide, 1.0).u), 1e-4);
}

TEST(Eta, ZeroWithoutNonlinearity)
{
    const auto p = make(1.0, 0.0, 0.7);
    for (double nu : {0.0, 0.3, -5.0})
    {
        EXPECT_EQ(eta(p, nu), 0.0);
        EXPECT_EQ(eta_log_form(p, nu), 0.0);
    }
}

TEST(Eta, RidgeCenterIsLnThree)
{
    const auto p = make(1.0, 0.5, 0.0);
    EXPECT_NEAR(eta(p, 0.0), std::log(3.0), 1e-15);
    EXPECT_NEAR(eta_log_form(p, 0.0), std::log(3.0), 1e-15);
}

TEST(Eta, RidgeCenterClosedFormForAllXi)
{
    for (double xi : {0.05, 0.3, 0.7, 0.95})
    {
        EXPECT_NEAR(eta(make(1.0, xi, 0.0), 0.0), std::log((1.0 + xi) / (1.0 - xi)), 1e-14) << xi;
    }
}

TEST(Eta, OffRidgeMatchesCoefficient)
{
    const auto p = make(1.0, 0.5, 0.3);
    const double x = eta(p, 0.7);
    EXPECT_NEAR(std::sinh(x) / std::abs(bogoliubov_coefficients(p, 0.7).v), 1.0, 1e-12);
    EXPECT_NEAR(eta_log_form(p, 0.7) / x, 1.0, 1e-12);
}

TEST(Eta, SinhMatchesCoefficientOnRandomGrid)
{
    for (const auto &s : random_samples(4000, 10.0, 12))
    {
        const double v = std::abs(bogoliubov_coefficients(s.p, s.nu).v);
        if (v == 0.0)
        {
            continue;
        }
        ASSERT_LT(std::abs(std::sinh(eta(s.p, s.nu)) / v - 1.0), 1e-12);
    }
}

TEST(Eta, EvenInFrequency)
{
    for (const auto &s : random_samples(2000, 100.0, 13))
    {
        ASSERT_EQ(eta(s.p, s.nu), eta(s.p, -s.nu));
        ASSERT_EQ(photon_flux_density(s.p, s.nu), photon_flux_density(s.p, -s.nu));
    }
}

TEST(Phases, RealAtRidgeCenter)
{
    const auto ph = phases(make(1.0, 0.5, 0.0, 0.7), 0.0);
    EXPECT_NEAR(ph.phi_c, 0.0, 1e-15);
    EXPECT_NEAR(ph.phi_s, 0.7, 1e-15);
}

TEST(Phases, WeakCouplingLimit)
{
    const auto p = make(1.0, 1e-9, 0.0);
    for (double nu : {-0.8, 0.2, 0.9})
    {
        // Follows the Bogoliubov relation; the bare-cavity phase has the opposite sign.
        EXPECT_NEAR(phases(p, nu).phi_c, 2.0 * std::atan(nu), 1e-9);
        EXPECT_NEAR(std::abs(bare_cavity_output_phase(1.0, nu)), std::abs(phases(p, nu).phi_c), 1e-9);
    }
}

TEST(Phases, ArctanFormOnPrincipalBranch)
{
    const auto p = make(1.0, 0.3, 0.2);
    const auto a = phases(p, 0.1);
    const auto b = phases_arctan_form(p, 0.1);
    EXPECT_NEAR(a.phi_c, b.phi_c, 1e-12);
    EXPECT_NEAR(a.phi_s, b.phi_s, 1e-12);
}

TEST(Phases, ArctanFormWhereDenominatorsArePositive)
{
    std::size_t compared = 0;
    for (const auto &s : random_samples(4000, 3.0, 14))
    {
        const double g = s.p.gamma();
        const double x = s.p.xi_mag();
        const double d = s.p.delta();
        if (g * g - s.nu * s.nu + d * d - x * x <= 0.0 || g * g - d * d + s.nu * s.nu + x * x <= 0.0)
        {
            continue;
        }
        const auto a = phases(s.p, s.nu);
        const auto b = phases_arctan_form(s.p, s.nu);
        const auto wrap = [](double t) { return std::remainder(t, 2.0 * std::numbers::pi); };
        ASSERT_NEAR(wrap(a.phi_c - b.phi_c), 0.0, 1e-12);
        ASSERT_NEAR(wrap(a.phi_s - b.phi_s), 0.0, 1e-12);
        ++compared;
    }
    EXPECT_GT(compared, 500u);
}

TEST(PhotonFlux, Values)
{
    EXPECT_EQ(photon_flux_density(make(1.0, 0.0, 0.0), 0.3), 0.0);
    EXPECT_NEAR(photon_flux_density(make(1.0, 0.5, 0.0), 0.0), 16.0 / 9.0, 1e-14);
}

TEST(PhotonFlux, RidgeClosedForm)
{
    for (double xi : {0.1, 0.5, 0.9})
    {
        const auto p = make(1.0, xi, 0.0);
        for (double nu : {0.0, 0.2, 1.0, 3.0, 40.0})
        {
            const double expected =
                4.0 * xi * xi / (((1.0 + xi) * (1.0 + xi) + nu * nu) * ((1.0 - xi) * (1.0 - xi) + nu * nu));
            EXPECT_NEAR(photon_flux_density(p, nu) / expected, 1.0, 1e-13);
        }
    }
}

TEST(PhotonFlux, QuarticDecay)
{
    const auto p = make(1.0, 0.5, 0.3);
    for (double nu : {1e3, 1e4})
    {
        EXPECT_NEAR(photon_flux_density(p, nu) * std::pow(nu, 4) / (4.0 * 0.25), 1.0, 1e-5);
    }
}

TEST(PhotonFlux, FiniteNearThresholdAndPeaked)
{
    const auto p = make(1.0, 1.0 - 1e-9, 0.0);
    EXPECT_TRUE(std::isfinite(photon_flux_density(p, 0.0)));
    EXPECT_GT(photon_flux_density(p, 0.0), 1e17);
}

TEST(PhotonFlux, PeakOffset)
{
    EXPECT_EQ(peak_offset(make(1.0, 0.5, 0.2)), 0.0);
    const auto p = make(1.0, 1.5, 2.0);
    const double peak = peak_offset(p);
    EXPECT_NEAR(peak, std::sqrt(4.0 - 1.0 - 2.25), 1e-15);
    EXPECT_GT(photon_flux_density(p, peak), photon_flux_density(p, peak * 1.001));
    EXPECT_GT(photon_flux_density(p, peak), photon_flux_density(p, peak * 0.999));
}

TEST(PhotonFlux, SpectralPointConsistent)
{
    const auto p = make(2.0, 0.9, -0.4, 0.3);
    const auto sp = spectral_point(p, 0.37);
    EXPECT_EQ(sp.n, std::sinh(sp.eta) * std::sinh(sp.eta));
    EXPECT_NEAR(sp.n, photon_flux_density(p, 0.37), 1e-14);
    EXPECT_EQ(sp.phi_c, phases(p, 0.37).phi_c);
}

TEST(SpectralHints, SortedSymmetricAndIncludePeak)
{
    const auto p = make(1.0, 1.5, 2.0);
    const auto h = spectral_hints(p);
    EXPECT_TRUE(std::is_sorted(h.begin(), h.end()));
    for (double x : h)
    {
        EXPECT_NE(std::find(h.begin(), h.end(), -x), h.end());
    }
    EXPECT_NE(std::find(h.begin(), h.end(), peak_offset(p)), h.end());
}

TEST(BareCavity, Phase)
{
    EXPECT_EQ(bare_cavity_output_phase(1.0, 0.0), 0.0);
    EXPECT_NEAR(bare_cavity_output_phase(1.0, 1.0), -std::numbers::pi / 2.0, 1e-15);
    EXPECT_NEAR(bare_cavity_output_phase(1.0, 1e13), -std::numbers::pi, 1e-12);
    EXPECT_THROW(bare_cavity_output_phase(0.0, 1.0), Error);
}

TEST(PumpDetuning, Values)
{
    EXPECT_NEAR(pump_detuning(0.0, 2.0, 2.0, 0.5), 1.0, 1e-15);
    EXPECT_NEAR(pump_detuning(-1.0, 3.0, 3.0, 0.5), 0.0, 1e-15);
    EXPECT_NEAR(pump_detuning(0.0, 4.0, 1.0, 0.2), 0.5, 1e-15);
}

TEST(PumpDetuning, RejectsNonPositivePower)
{
    try
    {
        pump_detuning(0.0, 0.0, 1.0, 0.5);
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.code(), ErrorCode::NonPositivePower);
    }
    EXPECT_THROW(pump_detuning(0.0, 1.0, -2.0, 0.5), Error);
}
