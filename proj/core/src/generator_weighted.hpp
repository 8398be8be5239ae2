#pragma once

#include "parampstat/mode_generator.hpp"

#include <span>

namespace parampstat::detail
{

// int gamma_n gamma_m w dnu for a weight with w -> w_inf at infinity. No unit
// rescaling is done here.
quad::QuadratureResult<double> generator_weighted(const ModeGenerator &g, long n, long m,
                                                  const quad::RealIntegrand &weight, double w_inf,
                                                  const quad::QuadratureSpec &spec, std::span<const double> hints);

} // namespace parampstat::detail
