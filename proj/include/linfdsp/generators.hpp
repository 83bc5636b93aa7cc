// generators.hpp — reference signal constructions for experiments and tests.

#pragma once

#include "linfdsp/transfer.hpp"

namespace linfdsp {

// x(t) = sum alpha_k e^{i omega_k t}; bounded, non-vanishing, exact pairings.
SignalSource gen_exp_sum(std::vector<ExpSumTerm> terms);

// Trapezoid-filtered signal, band-limited to [-q, q] up to the kernel tail.
// An ExpSum base stays an ExpSum (each tone is scaled by the truncated
// kernel's spectrum value, which is exact for the truncated kernel); other
// bases are convolved onto [t_min, t_max].
struct BandLimited {
    SignalSource signal;
    double tail_bound = 0.0;  // stop-band level of the certification
};
BandLimited gen_band_limited(const SignalSource& base, double p, double q, int K,
                             long t_min = 0, long t_max = 0);

// Real uniform noise in [-1, 1] pushed through the trapezoid filter; the
// seed fully determines the stream (mt19937_64, fixed 53-bit mapping).
BandLimited gen_filtered_noise(std::uint64_t seed, double p, double q, int K,
                               long t_min, long t_max);

// Signal with a super-exponential spectral zero at omega_hat:
//   X(w) = profile(w) * exp(-c / |e^{iw} - e^{i w_hat}|^{q_exp}),
// sampled to time domain by N-point quadrature with a doubling-N check.
SignalSource gen_degenerate(double omega_hat, double c, double q_exp,
                            const std::function<double(double)>& profile, int N);

// profile(w) = 1.
double unit_profile(double);

}  // namespace linfdsp
