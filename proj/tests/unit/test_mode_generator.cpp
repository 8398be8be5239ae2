#include "parampstat/error.hpp"
#include "parampstat/mode_generator.hpp"

#include "oracle_values.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace parampstat;

namespace
{

ValidatedParams ridge(double gamma, double xi)
{
    ParampParams p;
    p.gamma = gamma;
    p.xi_mag = xi;
    return validate_params(p);
}

} // namespace

TEST(ModeGenerator, Names)
{
    EXPECT_EQ(parse_generator_kind("window"), GeneratorKind::Window);
    EXPECT_EQ(parse_generator_kind("sinc"), GeneratorKind::Sinc);
    EXPECT_EQ(kind_name(GeneratorKind::Sinc), "sinc");
    EXPECT_THROW(parse_generator_kind("box"), Error);
    EXPECT_THROW(validate_generator({GeneratorKind::Window, 0.0}), Error);
    EXPECT_THROW(validate_generator({GeneratorKind::Sinc, -1.0}), Error);
}

TEST(ModeGenerator, Values)
{
    const ModeGenerator w{GeneratorKind::Window, 0.25};
    EXPECT_DOUBLE_EQ(eval_generator(w, 2, 0.5), 2.0);
    EXPECT_EQ(eval_generator(w, 2, 0.2), 0.0);
    const ModeGenerator s{GeneratorKind::Sinc, 0.25};
    EXPECT_DOUBLE_EQ(eval_generator(s, -1, -0.25), 2.0);
    EXPECT_NEAR(eval_generator(s, -1, 0.0), 0.0, 1e-15);
    // translation family
    EXPECT_DOUBLE_EQ(eval_generator(s, 3, 0.81), eval_generator(s, 0, 0.81 - 0.75));
}

TEST(ModeGenerator, Orthonormality)
{
    for (GeneratorKind kind : {GeneratorKind::Window, GeneratorKind::Sinc})
    {
        for (double delta : {0.1, 1.0, 3.0})
        {
            const ModeGenerator g{kind, delta};
            for (long n = -10; n <= 10; n += 3)
            {
                for (long m = -10; m <= 10; ++m)
                {
                    const double expected = n == m ? 1.0 : 0.0;
                    EXPECT_NEAR(generator_overlap(g, n, m).value, expected, 1e-10)
                        << kind_name(kind) << " delta=" << delta << " n=" << n << " m=" << m;
                }
            }
        }
    }
}

TEST(ModeGenerator, WindowJ1MatchesOracle)
{
    const ModeGenerator g{GeneratorKind::Window, 0.1};
    const auto p = ridge(1.0, 0.5);
    EXPECT_NEAR(integral_J(p, g, JIntegral::J1, 0, 0).value / oracle::kJ1_window_bin0, 1.0, 1e-12);
    EXPECT_NEAR(integral_J(p, g, JIntegral::J1, 3, 3).value / oracle::kJ1_window_bin3, 1.0, 1e-12);
    EXPECT_EQ(integral_J(p, g, JIntegral::J1, 0, 1).value, 0.0);
}

TEST(ModeGenerator, SincJMatchesOracle)
{
    const ModeGenerator g{GeneratorKind::Sinc, 0.5};
    const auto p = ridge(1.0, 0.5);
    EXPECT_NEAR(integral_J(p, g, JIntegral::J1, 0, 1).value / oracle::kJ1_sinc_0_1, 1.0, 1e-8);
    EXPECT_NEAR(integral_J(p, g, JIntegral::J3, 1, -1).value / oracle::kJ3_sinc_1_m1, 1.0, 1e-8);
}

TEST(ModeGenerator, J2IsJ1PlusOverlap)
{
    const auto p = ridge(1.0, 0.8);
    for (GeneratorKind kind : {GeneratorKind::Window, GeneratorKind::Sinc})
    {
        const ModeGenerator g{kind, 0.3};
        for (auto [n, m] : {std::pair{0L, 0L}, std::pair{2L, 2L}, std::pair{-1L, 1L}, std::pair{4L, -7L}})
        {
            const double j1 = integral_J(p, g, JIntegral::J1, n, m).value;
            const double j2 = integral_J(p, g, JIntegral::J2, n, m).value;
            EXPECT_NEAR(j2 - j1, n == m ? 1.0 : 0.0, 1e-9) << kind_name(kind) << n << m;
        }
    }
}

TEST(ModeGenerator, SymmetryOfJ)
{
    const auto p = ridge(1.0, 0.6);
    for (GeneratorKind kind : {GeneratorKind::Window, GeneratorKind::Sinc})
    {
        const ModeGenerator g{kind, 0.4};
        // n is even, so bin n and bin -n see the same flux
        EXPECT_NEAR(integral_J(p, g, JIntegral::J1, 3, 3).value, integral_J(p, g, JIntegral::J1, -3, -3).value, 1e-13);
        EXPECT_NEAR(integral_J(p, g, JIntegral::J1, 1, 4).value, integral_J(p, g, JIntegral::J1, 4, 1).value, 1e-13);
        EXPECT_NEAR(integral_J(p, g, JIntegral::J3, 2, 2).value, integral_J(p, g, JIntegral::J3, -2, -2).value, 1e-12);
    }
}

TEST(ModeGenerator, JIsScaleInvariant)
{
    const ModeGenerator g{GeneratorKind::Sinc, 0.5};
    const double base = integral_J(ridge(1.0, 0.5), g, JIntegral::J1, 0, 1).value;
    for (double s : {1e-3, 40.0, 6e9})
    {
        const ModeGenerator gs{GeneratorKind::Sinc, 0.5 * s};
        EXPECT_NEAR(integral_J(ridge(s, 0.5 * s), gs, JIntegral::J1, 0, 1).value / base, 1.0, 1e-10) << s;
    }
}

TEST(ModeGenerator, WindowPartnerTermIsBinIntegralSquared)
{
    // gamma_n gamma_{-(-n)} = 1/Delta on bin n, so J3(n, -n) = ( <sqrt(n(n+1))>_bin )^2
    const auto p = ridge(1.0, 0.5);
    const ModeGenerator g{GeneratorKind::Window, 0.2};
    const double j3 = integral_J(p, g, JIntegral::J3, 2, -2).value;
    const double j1 = integral_J(p, g, JIntegral::J1, 2, 2).value;
    const double j2 = integral_J(p, g, JIntegral::J2, 2, 2).value;
    EXPECT_GT(j3, 0.0);
    EXPECT_LE(j3, j1 * j2);
    EXPECT_NEAR(j3 / (j1 * j2), 1.0, 2e-3);
    EXPECT_EQ(integral_J(p, g, JIntegral::J3, 2, 2).value, 0.0);
}
