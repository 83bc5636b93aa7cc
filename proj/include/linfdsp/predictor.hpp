// predictor.hpp — the causal one-step predictor family
//
//   H_gamma(z) = z * (1 - exp[-gamma / (z + 1 - gamma^{-r})]),   gamma > 0,
//
// analytic for |z| > |gamma^{-r} - 1|, hence causal on the unit circle.  As
// gamma grows, H_gamma(e^{iw}) approximates the unit advance e^{iw} away
// from w = pi, where the spectrum blows up like exp(gamma^{1+r}).  Signals
// whose spectrum degenerates fast enough at a frequency w_hat are predicted
// by demodulating that frequency to pi, convolving, and remodulating:
//
//   x_hat(t) = e^{i(w_hat-pi) t} sum_{s<=t} h(t-s) e^{i(pi-w_hat) s} x(s).
//
// Kernels come from two interchangeable constructions:
//   quadrature  h_k = (1/2pi) \int H(e^{iw}) e^{iwk} dw on the N-grid.
//               Absolute coefficient noise scales with eps * max|H|, so this
//               route is reliable only while exp(gamma^{1+r}) is moderate.
//   series      Laurent coefficients of the closed form in z^{-1}:
//               h_k = (-1)^k sum_{m=1}^{k+1} (gamma^m/m!) C(k, m-1) a^{k+1-m},
//               a = 1 - gamma^{-r}; a positive-term recurrence (evaluated in
//               long double) with no cancellation, causal by construction.
// The default picks quadrature for gamma^{1+r} <= 13 and the series beyond;
// both stay available for cross-checks.

#pragma once

#include "linfdsp/transfer.hpp"

namespace linfdsp {

struct PredictorConfig {
    double gamma = 4.0;       // > 0
    double r = 0.5;           // in (0, 1)
    double omega_hat = kPi;   // degeneracy frequency, in (-pi, pi]
    int K = 512;              // kernel half-width
    int N = 1 << 16;          // quadrature size, power of two, N >= 4K

    void validate() const;
};

// Spectrum magnitudes beyond exp(700) are not representable; kernel
// construction and prediction refuse configs past this guard.
inline constexpr double kHgammaOverflowGuard = 700.0;

// Plain evaluation of the closed form. Throws numeric_failure at the
// interior singularity z = gamma^{-r} - 1 and when the value saturates.
cplx hgamma_value(double gamma, double r, cplx z);

// On-circle components: U = 1 - exp(-gamma/(e^{iw}+1-gamma^{-r})),
// V(w) = e^{iw} U(e^{iw}) = H(e^{iw}).
struct HgammaParts {
    cplx H;
    cplx U;
    cplx V;
};
HgammaParts hgamma_parts(double gamma, double r, double omega);

// log|H| and arg H computed without overflow; usable for diagnostics at any
// gamma, including where the value itself saturates.
struct LogPolar {
    double log_abs = 0.0;
    double arg = 0.0;
};
LogPolar hgamma_logpolar(double gamma, double r, double omega);

struct HgammaKernel {
    enum class Route { quadrature, series };
    Kernel kernel;
    Route route = Route::quadrature;
    double causality_residual = 0.0;    // measured max_{k<0}|h_k| before stripping
    double negative_mass = 0.0;         // measured sum_{k<0}|h_k| before stripping
    double reconstruction_error = 0.0;  // sup over the grid of |truncated - closed form|
    bool causal_ok = false;             // residual within the requested tolerance
};

HgammaKernel hgamma_kernel(const PredictorConfig& cfg, double causality_tol = 1e-8);
HgammaKernel hgamma_kernel_quadrature(const PredictorConfig& cfg, double causality_tol = 1e-8);
HgammaKernel hgamma_kernel_series(const PredictorConfig& cfg);

// |u_n| for n = 1..n_max of the series route (signs alternate as (-1)^{n+1});
// exposed for cross-checks.
std::vector<double> hgamma_series_magnitudes(double gamma, double r, long n_max);

struct PredictionRun {
    long t_begin = 0;
    Eigen::VectorXcd predicted;      // x_hat(t), the one-step-ahead estimate made at t
    Eigen::VectorXd per_step_error;  // |x(t+1) - x_hat(t)|; NaN where truth is unavailable
    double kernel_tail = 0.0;        // kernel l1 error bound (tail + coefficient error)
    double error_bound = 0.0;        // a-priori bound on |prediction - untruncated prediction|
};

PredictionRun predict_one_step(const SignalSource& x, const PredictorConfig& cfg,
                               const HgammaKernel& hk, long t_begin, long t_end);
PredictionRun predict_one_step(const SignalSource& x, const PredictorConfig& cfg,
                               long t_begin, long t_end);

// Exact per-step error modulus for x(t) = e^{i w0 t}:
//   exp(-gamma * Re(1 / (e^{i theta} + 1 - gamma^{-r}))),
// theta = w0 + pi - w_hat wrapped to (-pi, pi].  Requires w0 != w_hat.
double sinusoid_error_oracle(double omega0, const PredictorConfig& cfg);

}  // namespace linfdsp
