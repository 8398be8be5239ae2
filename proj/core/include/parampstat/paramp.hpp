#pragma once

#include <complex>
#include <vector>

namespace parampstat
{

// Physical configuration of a Josephson parametric amplifier in the rotating
// frame of the carrier. All rates share one frequency unit.
struct ParampParams
{
    double gamma = 1.0;  // cavity coupling rate, > 0
    double xi_mag = 0.0; // |xi|, two-photon coupling magnitude
    double xi_arg = 0.0; // arg(xi), radians
    double delta = 0.0;  // effective detuning
    double nu0 = 0.0;    // carrier frequency; only used by wideband detection
};

class ValidatedParams;

// Accepts iff gamma > 0 and xi_mag^2 < gamma^2 + delta^2 (strictly below threshold).
ValidatedParams validate_params(const ParampParams &p);

class ValidatedParams
{
public:
    const ParampParams &raw() const noexcept { return p_; }
    double gamma() const noexcept { return p_.gamma; }
    double xi_mag() const noexcept { return p_.xi_mag; }
    double xi_arg() const noexcept { return p_.xi_arg; }
    double delta() const noexcept { return p_.delta; }
    double nu0() const noexcept { return p_.nu0; }
    std::complex<double> xi() const { return std::polar(p_.xi_mag, p_.xi_arg); }

    // gamma^2 + delta^2 - |xi|^2, strictly positive.
    double stability_margin() const noexcept;

    // The same amplifier with every rate divided by gamma (so gamma() == 1).
    ValidatedParams dimensionless() const;

private:
    friend ValidatedParams validate_params(const ParampParams &p);
    explicit ValidatedParams(const ParampParams &p) : p_(p) {}

    ParampParams p_;
};

// B_out(nu) = u b_nu + v b^dagger_{-nu}
struct BogoliubovCoefficients
{
    std::complex<double> u;
    std::complex<double> v;
};

struct Phases
{
    double phi_c = 0.0; // arg(u)
    double phi_s = 0.0; // arg(v)
};

struct SpectralPoint
{
    double nu = 0.0;
    double eta = 0.0;
    double n = 0.0; // sinh^2(eta)
    double phi_c = 0.0;
    double phi_s = 0.0;
};

BogoliubovCoefficients bogoliubov_coefficients(const ValidatedParams &p, double nu);

// Coefficients of b_nu and b^dagger_{-nu} in the intra-cavity mode A(nu). These
// carry density-of-states units and are not Bogoliubov-normalized.
BogoliubovCoefficients intracavity_coefficients(const ValidatedParams &p, double nu);

// Squeezing parameter; even in nu.
double eta(const ValidatedParams &p, double nu);

// The half-log closed form 1/2 ln[(R + 2 gamma |xi|)/(R - 2 gamma |xi|)] evaluated
// literally. Loses precision near threshold; kept as an independent route.
double eta_log_form(const ValidatedParams &p, double nu);

// Phases from the quadrant-aware argument of the exact coefficients.
Phases phases(const ValidatedParams &p, double nu);

// Phases from the two-arctan closed forms (principal branch only).
Phases phases_arctan_form(const ValidatedParams &p, double nu);

// n(nu) = sinh^2(eta(nu)), the output photon flux spectral density.
double photon_flux_density(const ValidatedParams &p, double nu);

SpectralPoint spectral_point(const ValidatedParams &p, double nu);

// Output phase of the bare cavity, -2 arctan(nu / gamma).
double bare_cavity_output_phase(double gamma, double nu);

// delta = phi + |xi| (P1 + P2) / sqrt(P1 P2).
double pump_detuning(double phi, double p1, double p2, double xi_mag);

// |nu| at which n(nu) peaks: sqrt(max(0, delta^2 - gamma^2 - |xi|^2)).
double peak_offset(const ValidatedParams &p);

// Frequencies that bracket the spectral peaks (both signs), used to seed the
// initial quadrature subdivision. Sorted, unique.
std::vector<double> spectral_hints(const ValidatedParams &p);

} // namespace parampstat
