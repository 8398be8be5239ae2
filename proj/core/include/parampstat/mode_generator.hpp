#pragma once

#include "parampstat/paramp.hpp"
#include "parampstat/quadrature.hpp"

#include <string_view>

namespace parampstat
{

enum class GeneratorKind
{
    Window, // Delta^(-1/2) on a bin of width Delta
    Sinc,   // Delta^(-1/2) sinc(pi nu / Delta)
};

// Orthonormal family gamma_n(nu) = gamma(nu - n Delta).
struct ModeGenerator
{
    GeneratorKind kind = GeneratorKind::Window;
    double delta = 1.0;
};

void validate_generator(const ModeGenerator &g);

std::string_view kind_name(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view name);

double eval_generator(const ModeGenerator &g, long n, double nu);

// int gamma_n gamma_m dnu
quad::QuadratureResult<double> generator_overlap(const ModeGenerator &g, long n, long m,
                                                 const quad::QuadratureSpec &spec = {});

enum class JIntegral
{
    J1, // int gamma_n gamma_m n(nu)
    J2, // int gamma_n gamma_m (n(nu) + 1)
    J3, // | int gamma_n gamma_{-m} sqrt(n(-nu) [n(nu) + 1]) |^2, the partner term of bins n and m
};

quad::QuadratureResult<double> integral_J(const ValidatedParams &p, const ModeGenerator &g, JIntegral which, long n,
                                          long m, const quad::QuadratureSpec &spec = {});

} // namespace parampstat
