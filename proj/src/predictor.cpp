#include "linfdsp/predictor.hpp"

#include <cmath>
#include <limits>

namespace linfdsp {

namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr double kQuadratureRouteMaxExponent = 13.0;

double log_peak(double gamma, double r) { return std::pow(gamma, 1.0 + r); }

void check_params(double gamma, double r) {
    if (!(gamma > 0.0)) throw invalid_input("predictor: gamma must be positive");
    if (!(r > 0.0 && r < 1.0)) throw invalid_input("predictor: r must be in (0,1)");
}

}  // namespace

void PredictorConfig::validate() const {
    check_params(gamma, r);
    if (!(omega_hat > -kPi && omega_hat <= kPi))
        throw invalid_input("predictor: omega_hat must be in (-pi, pi]");
    if (K < 1) throw invalid_input("predictor: kernel half-width must be positive");
    if (N < 4 * K || (N & (N - 1)) != 0)
        throw invalid_input("predictor: need N a power of two with N >= 4K");
}

cplx hgamma_value(double gamma, double r, cplx z) {
    check_params(gamma, r);
    const double shift = 1.0 - std::pow(gamma, -r);
    const cplx den = z + shift;
    if (std::abs(den) < 1e-14 * (1.0 + std::abs(z)))
        throw numeric_failure("hgamma_value: singularity at z = gamma^{-r} - 1");
    const cplx arg = -gamma / den;
    if (arg.real() > kHgammaOverflowGuard)
        throw numeric_failure("hgamma_value: saturated, exp factor beyond floating range");
    return z * (1.0 - std::exp(arg));
}

HgammaParts hgamma_parts(double gamma, double r, double omega) {
    check_params(gamma, r);
    const cplx z = unit_phasor(omega);
    const cplx den = z + 1.0 - std::pow(gamma, -r);
    if (std::abs(den) < 1e-14)
        throw numeric_failure("hgamma_parts: singularity on the unit circle");
    const cplx arg = -gamma / den;
    if (arg.real() > kHgammaOverflowGuard)
        throw numeric_failure("hgamma_parts: saturated");
    HgammaParts p;
    p.U = 1.0 - std::exp(arg);
    p.V = z * p.U;
    p.H = p.V;
    return p;
}

LogPolar hgamma_logpolar(double gamma, double r, double omega) {
    check_params(gamma, r);
    const cplx z = unit_phasor(omega);
    const cplx den = z + 1.0 - std::pow(gamma, -r);
    if (std::abs(den) < 1e-14)
        throw numeric_failure("hgamma_logpolar: singularity on the unit circle");
    const cplx arg = -gamma / den;
    LogPolar lp;
    if (arg.real() > 40.0) {
        // 1 - e^A = -e^A (1 - e^{-A}); the second factor is within 1e-17 of 1.
        const cplx small = std::exp(-arg);
        const cplx corr = 1.0 - small;
        lp.log_abs = arg.real() + std::log(std::abs(corr));
        lp.arg = wrap_angle(kPi + arg.imag() + std::arg(corr) + omega);
    } else {
        const cplx v = 1.0 - std::exp(arg);
        lp.log_abs = std::log(std::abs(v));
        lp.arg = wrap_angle(std::arg(v) + omega);
    }
    return lp;
}

namespace {

// Magnitudes of the series-route coefficients via the positive-term
// recurrence t_{m+1} = t_m * gamma (n-m) / ((m+1) m a); terms rise to a peak
// near m ~ sqrt(gamma n / a) and then fall super-geometrically.
double series_magnitude(long double gamma, long double a, long n) {
    long double t = gamma * std::pow(a, static_cast<long double>(n - 1));
    long double s = t;
    bool past_peak = false;
    for (long m = 1; m < n; ++m) {
        const long double next =
            t * gamma * static_cast<long double>(n - m) /
            (static_cast<long double>(m + 1) * static_cast<long double>(m) * a);
        past_peak = past_peak || next < t;
        t = next;
        s += t;
        if (past_peak && t < s * 1e-24L) break;
    }
    return static_cast<double>(s);
}

}  // namespace

std::vector<double> hgamma_series_magnitudes(double gamma, double r, long n_max) {
    check_params(gamma, r);
    const long double a = 1.0L - std::pow(static_cast<long double>(gamma),
                                          -static_cast<long double>(r));
    if (!(a > 0.0L))
        throw invalid_input("hgamma series expansion requires gamma > 1");
    std::vector<double> mags(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (long n = 1; n <= n_max; ++n)
        mags[static_cast<std::size_t>(n)] = series_magnitude(gamma, a, n);
    return mags;
}

namespace {

double reconstruction_check(const Kernel& k, double gamma, double r, int N) {
    const int n_grid = std::min(N, 4096);
    double sup = 0.0;
    for (int j = 0; j < n_grid; ++j) {
        const double w = -kPi + kTwoPi * j / n_grid;
        sup = std::max(sup,
                       std::abs(k.spectrum_value(w) - hgamma_value(gamma, r, unit_phasor(w))));
    }
    return sup;
}

void check_guard(const PredictorConfig& cfg) {
    if (log_peak(cfg.gamma, cfg.r) > kHgammaOverflowGuard)
        throw numeric_failure(
            "hgamma_kernel: gamma^{1+r} beyond the overflow guard; the spectrum peak "
            "exp(gamma^{1+r}) is not representable");
}

}  // namespace

HgammaKernel hgamma_kernel_quadrature(const PredictorConfig& cfg, double causality_tol) {
    cfg.validate();
    check_guard(cfg);
    auto H = [&](double w) { return hgamma_value(cfg.gamma, cfg.r, unit_phasor(w)); };
    const Kernel raw = kernel_from_spectrum(H, cfg.K, cfg.N);
    HgammaKernel out;
    out.route = HgammaKernel::Route::quadrature;
    out.causality_residual = raw.negative_residual();
    KahanSum neg;
    for (long k = raw.k_min(); k < 0; ++k) neg.add(std::abs(raw.coeff(k)));
    out.negative_mass = neg.value();
    if (out.causality_residual <= causality_tol) {
        out.kernel = strip_negative(raw);
        out.causal_ok = true;
    } else {
        out.kernel = with_causality(raw, causality_tol);
        out.causal_ok = false;
    }
    out.reconstruction_error = reconstruction_check(out.kernel, cfg.gamma, cfg.r, cfg.N);
    return out;
}

HgammaKernel hgamma_kernel_series(const PredictorConfig& cfg) {
    cfg.validate();
    check_guard(cfg);
    const long double a = 1.0L - std::pow(static_cast<long double>(cfg.gamma),
                                          -static_cast<long double>(cfg.r));
    if (!(a > 0.0L))
        throw invalid_input("hgamma_kernel_series: requires gamma > 1");
    const long n_keep = cfg.K + 1;  // h_k = u_{k+1}, k = 0..K
    // Probe explicit tail terms well past the magnitude envelope's peak at
    // n ~ gamma / (a ln^2(1/a)), so the geometric closure sees decay.
    const double la = -std::log(static_cast<double>(a));
    const long n_peak = static_cast<long>(cfg.gamma / (static_cast<double>(a) * la * la));
    const long n_probe = n_keep + 8192 + 4 * std::max<long>(0, n_peak);
    Eigen::VectorXcd c(cfg.K + 1);
    KahanSum tail;
    double prev = 0.0, ratio = 1.0;
    double last = 0.0;
    for (long n = 1; n <= n_probe; ++n) {
        const double mag = series_magnitude(cfg.gamma, a, n);
        if (n <= n_keep) {
            c[n - 1] = (n % 2 == 0) ? -mag : mag;  // sign (-1)^{n+1}
        } else {
            tail.add(mag);
            if (prev > 0.0 && mag > 0.0) ratio = mag / prev;
            last = mag;
        }
        prev = mag;
        if (n > n_keep && mag < 1e-320) {
            last = 0.0;
            break;
        }
    }
    // Close the tail geometrically once the term ratio has settled under 1.
    double tail_total = tail.value();
    if (last > 0.0) {
        const double rho = std::min(0.9999, std::max(ratio, static_cast<double>(a)));
        tail_total += last * rho / (1.0 - rho);
    }
    HgammaKernel out;
    out.route = HgammaKernel::Route::series;
    out.causality_residual = 0.0;
    out.causal_ok = true;
    Kernel k(0, std::move(c), tail_total, 0.0, {Causality::Kind::proven, 0.0});
    // Long-double evaluation leaves double rounding as the dominant
    // coefficient error.
    out.kernel = Kernel(0, k.coeffs(), tail_total, 4.0 * kEps * k.l1_norm(),
                        {Causality::Kind::proven, 0.0});
    out.reconstruction_error = reconstruction_check(out.kernel, cfg.gamma, cfg.r, cfg.N);
    return out;
}

HgammaKernel hgamma_kernel(const PredictorConfig& cfg, double causality_tol) {
    cfg.validate();
    check_guard(cfg);
    if (log_peak(cfg.gamma, cfg.r) <= kQuadratureRouteMaxExponent)
        return hgamma_kernel_quadrature(cfg, causality_tol);
    return hgamma_kernel_series(cfg);
}

PredictionRun predict_one_step(const SignalSource& x, const PredictorConfig& cfg,
                               const HgammaKernel& hk, long t_begin, long t_end) {
    cfg.validate();
    if (!hk.causal_ok)
        throw numeric_failure(
            "predict_one_step: kernel causality residual exceeds tolerance; refusing to "
            "predict with an acausal kernel");
    if (t_end < t_begin) throw invalid_input("predict_one_step: empty time range");
    // Demodulate the degeneracy frequency to pi, convolve causally, and
    // remodulate.  The convolution output estimates y(t+1), so the
    // remodulation phase sits at t+1; that choice (and only that choice)
    // makes x_hat(t) estimate x(t+1) and the error covariant under joint
    // shifts of the tone and omega_hat.
    const double delta = kPi - cfg.omega_hat;
    const SignalSource y = delta == 0.0 ? x : modulate(x, delta);
    const TransferResult conv = apply_transfer(hk.kernel, y, t_begin, t_end);

    PredictionRun run;
    run.t_begin = t_begin;
    run.predicted.resize(t_end - t_begin + 1);
    run.per_step_error.resize(t_end - t_begin + 1);
    run.kernel_tail = hk.kernel.l1_error_bound().value_or(0.0);
    run.error_bound = conv.error_bound.value_or(0.0);
    for (long t = t_begin; t <= t_end; ++t) {
        const cplx xhat = unit_phasor(-delta * static_cast<double>(t + 1)) * conv.at(t);
        run.predicted[t - t_begin] = xhat;
        if (x.covers(t + 1, t + 1)) {
            run.per_step_error[t - t_begin] = std::abs(x.sample(t + 1) - xhat);
        } else {
            run.per_step_error[t - t_begin] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return run;
}

PredictionRun predict_one_step(const SignalSource& x, const PredictorConfig& cfg,
                               long t_begin, long t_end) {
    return predict_one_step(x, cfg, hgamma_kernel(cfg), t_begin, t_end);
}

double sinusoid_error_oracle(double omega0, const PredictorConfig& cfg) {
    cfg.validate();
    if (std::abs(wrap_angle(omega0 - cfg.omega_hat)) < 1e-12)
        throw invalid_input(
            "sinusoid_error_oracle: undefined at the degeneracy frequency itself");
    const double theta = wrap_angle(omega0 + kPi - cfg.omega_hat);
    const cplx den = unit_phasor(theta) + 1.0 - std::pow(cfg.gamma, -cfg.r);
    const double exponent = -cfg.gamma * (1.0 / den).real();
    if (exponent > kHgammaOverflowGuard)
        throw numeric_failure("sinusoid_error_oracle: saturated");
    return std::exp(exponent);
}

}  // namespace linfdsp
