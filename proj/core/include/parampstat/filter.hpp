#pragma once

#include "parampstat/quadrature.hpp"

#include <complex>
#include <span>
#include <string_view>
#include <utility>
#include <variant>

namespace parampstat
{

// Detection filter shapes. Every shape is real and normalized so that
// int |h(nu)|^2 dnu = 1.
struct Rectangular
{
    double bandwidth = 1.0; // full width B; h = 1/sqrt(B) inside
};

struct Lorentzian
{
    double halfwidth = 1.0; // h ~ 1 / (halfwidth^2 + nu^2)
};

struct Gaussian
{
    double sigma = 1.0; // |h|^2 is a normal density with this standard deviation
};

struct Sinc
{
    double width = 1.0; // h = sinc(pi nu / w) / sqrt(w)
};

using FilterShape = std::variant<Rectangular, Lorentzian, Gaussian, Sinc>;

struct FilterSpec
{
    FilterShape shape = Rectangular{};
    double center = 0.0; // offset from the carrier
};

// Throws InvalidArgument unless the width parameter is positive and finite.
void validate_filter(const FilterSpec &f);

std::string_view shape_name(const FilterSpec &f);

// The shape's width parameter (B, halfwidth, sigma or w).
double filter_width(const FilterSpec &f);

FilterSpec make_filter(std::string_view shape, double width, double center = 0.0);

// The downconverted 0.1-168 MHz bandpass seen as one window of 2 x 168 MHz
// around the carrier, in Hz.
FilterSpec experiment_bandpass_filter();

std::complex<double> eval_filter(const FilterSpec &f, double nu);

// Real amplitude h(nu); eval_filter returns it with zero imaginary part.
double filter_amplitude(const FilterSpec &f, double nu);

// The same filter with every frequency multiplied by factor, renormalized.
FilterSpec scaled_filter(const FilterSpec &f, double factor);

// Closed interval outside which h vanishes in double precision; infinite ends
// for algebraically decaying shapes.
std::pair<double, double> filter_support(const FilterSpec &f);

// int |h|^2 dnu by quadrature.
quad::QuadratureResult<double> filter_norm(const FilterSpec &f, const quad::QuadratureSpec &spec = {});

// int |h(nu)|^2 w(nu) dnu for a bounded weight with w(nu) -> weight_at_infinity
// as |nu| -> inf. hints are frequencies where w has structure.
quad::QuadratureResult<double> integrate_power_weighted(const FilterSpec &f, const quad::RealIntegrand &weight,
                                                        double weight_at_infinity, const quad::QuadratureSpec &spec,
                                                        std::span<const double> hints = {});

// int h(nu) h*(-nu) w(nu) dnu for a weight that vanishes at infinity.
quad::QuadratureResult<std::complex<double>> integrate_mirror_weighted(const FilterSpec &f,
                                                                       const quad::RealIntegrand &weight,
                                                                       const quad::QuadratureSpec &spec,
                                                                       std::span<const double> hints = {});

} // namespace parampstat
