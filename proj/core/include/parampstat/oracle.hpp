#pragma once

#include "parampstat/filter.hpp"
#include "parampstat/moments.hpp"
#include "parampstat/paramp.hpp"

#include <array>
#include <complex>
#include <vector>

namespace parampstat
{

// Fock-space truncation: photon numbers 0..cutoff per mode are kept.
struct PairState
{
    double eta = 0.0;
    int cutoff = 80;
};

struct FockMoments
{
    MomentSet single_arm; // photon number of one arm
    MomentSet total;      // n1 + n2
    std::array<double, 3> single_arm_raw{}; // <n1^k>, k = 1..3
    double truncated_norm = 1.0;
};

// Two-mode squeezed vacuum sum_k tanh^k(eta)/cosh(eta) |k,k>. Throws
// CutoffInsufficient when the kept norm is below 1 - 1e-12.
FockMoments fock_pair_moments(const PairState &s);

struct SqueezedFockMoments
{
    MomentSet moments;
    std::array<double, 3> raw{};
    double truncated_norm = 1.0;
};

// Single-mode squeezed vacuum in the Fock basis (even photon numbers only),
// truncated at photon number cutoff.
SqueezedFockMoments squeezed_fock_moments(const PairState &s);

// Detected field on the symmetric grid nu_j = j Delta, j in [-N, N]:
// c'_j = u_j c_j + v_j c^dagger_{-j}, detected mode B = sum_j w_j c'_j.
struct DiscretizedField
{
    double bin_width = 0.0;
    long half_count = 0;
    std::vector<double> weights;              // w_j, index j + N
    std::vector<std::complex<double>> u;      // u(nu_j)
    std::vector<std::complex<double>> v;      // v(nu_j)

    double frequency(long j) const { return static_cast<double>(j) * bin_width; }
    std::size_t index(long j) const { return static_cast<std::size_t>(j + half_count); }
};

struct OracleGrid
{
    double bin_width = 0.0;
    long half_count = 0;
};

// Delta = gamma / 200 and N Delta >= 20 gamma, widened to cover a compact filter.
OracleGrid default_oracle_grid(const ValidatedParams &p, const FilterSpec &f);

// |w_j|^2 is the filter power inside bin j, so sum_j |w_j|^2 = 1 up to
// truncation; the sign follows h(nu_j).
DiscretizedField discretize(const ValidatedParams &p, const FilterSpec &f, const OracleGrid &grid);

// Field with arbitrary weights, e.g. all weight on a single bin.
DiscretizedField discretize_weights(const ValidatedParams &p, double bin_width, long half_count,
                                    std::vector<double> weights);

// <(B^dagger B)^k> over the input vacuum by explicit pair contraction, k in {1, 2, 3}.
// Throws OrderUnsupported otherwise.
std::complex<double> wick_moment_complex(const DiscretizedField &d, int k);

// Real part of wick_moment_complex.
double wick_moments(const DiscretizedField &d, int k);

} // namespace parampstat
