// transfer.hpp — transfer functions as summable impulse-response kernels.
//
// Sign convention, fixed project-wide: a transfer function expands as
//   H(e^{iw}) = sum_k h_k e^{-iwk}
// and acts in time as x_hat(t) = sum_q h_{t-q} x(q).  Under this convention
// h_k = 0 for k < 0 is exactly the operational causality property (outputs
// depend on present and past inputs only), and H(z) = sum_{k>=0} h_k z^{-k}
// extends to |z| >= 1 for causal kernels.  Coefficients are recovered by
//   h_k = (1/2pi) \int H(e^{iw}) e^{+iwk} dw.
//
// Every kernel carries two accuracy figures alongside its coefficients:
//   tail_bound   mass of the discarded true coefficients, sum_{|k|>K} |h_k|
//                (analytic for closed forms, quadrature-measured otherwise)
//   coeff_error  l1 bound on stored-vs-true coefficient error from the
//                construction arithmetic itself
// Output error bars use their sum; with double storage the arithmetic term
// dominates once the kernel's l1 norm is large.

#pragma once

#include <optional>

#include "linfdsp/signal.hpp"

namespace linfdsp {

struct Causality {
    enum class Kind { proven, numeric, no };
    Kind kind = Kind::no;
    double tolerance = 0.0;  // max_{k<0} |h_k| is at most this (0 for proven)
};

class Kernel {
  public:
    Kernel() = default;
    Kernel(long k_min, Eigen::VectorXcd coeffs, std::optional<double> tail_bound,
           double coeff_error, Causality causal, bool tail_is_estimate = false);

    bool empty() const { return c_.size() == 0; }
    long k_min() const { return k_min_; }
    long k_max() const { return k_min_ + c_.size() - 1; }
    cplx coeff(long k) const {
        if (k < k_min_ || k > k_max()) return {0.0, 0.0};
        return c_[k - k_min_];
    }
    const Eigen::VectorXcd& coeffs() const { return c_; }

    double l1_norm() const { return l1_; }
    std::optional<double> tail_bound() const { return tail_bound_; }
    bool tail_is_estimate() const { return tail_is_estimate_; }
    double coeff_error() const { return coeff_error_; }
    const Causality& causal() const { return causal_; }

    // tail + coefficient error when the tail is known.
    std::optional<double> l1_error_bound() const {
        if (!tail_bound_) return std::nullopt;
        return *tail_bound_ + coeff_error_;
    }

    // max_{k<0} |h_k| over the stored coefficients.
    double negative_residual() const;

    // H(e^{iw}) = sum_k h_k e^{-iwk} of the stored (truncated) kernel.
    cplx spectrum_value(double omega) const;

    // The spectrum as a WienerFunction (indices flip: coefficient of e^{iwm}
    // is h_{-m}).
    WienerFunction spectrum() const;

  private:
    long k_min_ = 0;
    Eigen::VectorXcd c_;
    double l1_ = 0.0;
    std::optional<double> tail_bound_;
    bool tail_is_estimate_ = false;
    double coeff_error_ = 0.0;
    Causality causal_;
};

// true iff max_{k<0} |h_k| <= tol.
bool is_causal(const Kernel& h, double tol);

// Reclassify: proven when no negative coefficients are stored, numeric(tol)
// when the measured residual passes, otherwise no.  Returns a new value
// (kernels are immutable).
Kernel with_causality(const Kernel& h, double tol);

// Drop stored k<0 coefficients, folding their mass into coeff_error, and
// mark the result numeric(residual).  Gives kernels that satisfy the
// operational zero-history property exactly.
Kernel strip_negative(const Kernel& h);

// h_k ~ (1/2pi) \int H(w) e^{iwk} dw for k in [-K, K] by the N-point uniform
// rule (N a power of two, N >= 4K).  tail_bound is the measured coefficient
// mass in K < |k| <= N/2 (an estimate: spectrally accurate for smooth H).
Kernel kernel_from_spectrum(const std::function<cplx(double)>& H, int K, int N);

// Trapezoid low-pass profile: 1 on [-p,p], linear down to 0 at |w|=q.
//   h_0 = (p+q)/(2pi),  h_k = (cos(pk) - cos(qk)) / (pi (q-p) k^2)
// with an analytic tail bound (exact partial sum plus a 4/(pi (q-p) M)
// closure).
Kernel trapezoid_kernel(double p, double q, int K);

// The trapezoid transfer-function value H_{p,q}(e^{iw}).
double trapezoid_profile(double p, double q, double w);

// Convolution output over an inclusive time range.
struct TransferResult {
    long t_begin = 0;
    Eigen::VectorXcd values;
    std::optional<double> error_bound;  // sup|x| * (tail + coeff_error) + sampling term
    bool bound_certified = false;       // false when the kernel tail is unknown

    cplx at(long t) const { return values[t - t_begin]; }
};

TransferResult apply_transfer(const Kernel& h, const SignalSource& x, long t_begin,
                              long t_end);

// ---------------------------------------------------------------------------
// Spectral gaps

struct Interval {
    double a = 0.0, b = 0.0;  // -pi <= a < b <= pi
    double length() const { return b - a; }
    bool contains(double w) const { return w > a && w < b; }
};

// A frequency set D together with a bank of real-valued raised-cosine test
// bumps nominally supported in D.  bank_leakage is the measured sup of every
// bump outside D on an audit grid (truncation at K is what leaks).
class SpectralGap {
  public:
    SpectralGap(std::vector<Interval> intervals, std::vector<WienerFunction> bank,
                double bank_leakage);

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::vector<WienerFunction>& bank() const { return bank_; }
    double bank_leakage() const { return bank_leakage_; }
    bool contains(double w) const;
    double measure() const;

  private:
    std::vector<Interval> intervals_;
    std::vector<WienerFunction> bank_;
    double bank_leakage_ = 0.0;
};

// Raised-cosine bump f(w) = (1 + cos(2pi (w-c)/width))/2 on |w-c| <= width/2,
// as a truncated coefficient sequence (closed-form coefficients).
WienerFunction raised_cosine_bump(double center, double width, int K);

// Tail mass sum_{|k|>K} of the bump's coefficient series; also a sup bound
// on the truncated bump outside its support.
double raised_cosine_tail(double width, int K);

// n_bumps bumps per interval, 50%-overlapping, truncated at K; leakage is
// audited on audit_n points of the complement of D.
SpectralGap make_gap_bank(const std::vector<Interval>& intervals, int n_bumps, int K,
                          int audit_n = 512);

struct GapResidual {
    double residual = 0.0;       // max_j |<X, f_j>|
    double leakage_slack = 0.0;  // sup|x| * bank_leakage + pairing truncation
};

GapResidual gap_residual(const SignalSource& x, const SpectralGap& gap);

// ---------------------------------------------------------------------------
// Degeneracy weights G(w) = exp(c / (|e^{iw} - e^{i w_hat}|^q + nu))

struct DegeneracyWeight {
    double omega_hat = kPi;
    double c = 1.0;       // > 0
    double q_exp = 2.0;   // > 1
    double nu = 0.5;      // in (0, 1)

    void validate() const;
    double value(double omega) const;
    DegeneracyWeight with_nu(double nu_value) const;
};

struct DegeneracySweep {
    std::vector<double> nu_list;
    std::vector<double> values;   // per-nu sup over the evaluated times
    std::vector<double> error_bars;
    double max_value = 0.0;
    bool divergent = false;  // strictly increasing by a large factor along nu -> 0
};

// Lower estimate of sup_nu of the weighted-signal sup-norm, evaluated on
// t in [t_begin, t_end].  Route depends on the source: ExpSum uses the exact
// per-tone weights, QuadDensity multiplies the density, Samples convolves
// with a quadrature kernel of G (K, N control that kernel).  All three agree
// up to the carried error bars.
DegeneracySweep degeneracy_norm(const SignalSource& x, const DegeneracyWeight& w,
                                const std::vector<double>& nu_list, int K, int N,
                                long t_begin, long t_end);

}  // namespace linfdsp
