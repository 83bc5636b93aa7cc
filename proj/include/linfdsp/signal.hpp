// signal.hpp — two-sided bounded signals and the dual pairing.
//
// A SignalSource is one of:
//   Samples      explicit values on a window [t_min, t_max]
//   ExpSum       x(t) = sum_k alpha_k e^{i omega_k t}, exact at every t
//   QuadDensity  x(t) = (1/2pi) \int X(w) e^{iwt} dw by uniform quadrature;
//                the realized signal is the N-periodic trigonometric
//                interpolant, with a doubling-N stability figure recorded
//
// Pairing convention (the anchor all index conventions derive from):
//   <X, f> = sum_k x(k) f_k   where f(w) = sum_k f_k e^{iwk},
// so <X, e^{i.t}> = x(t) and pairing a pure tone e^{i w0 t} gives f(w0).

#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "linfdsp/wiener.hpp"

namespace linfdsp {

struct ExpSumTerm {
    cplx alpha;
    double omega;  // in (-pi, pi]
};

struct SamplesData {
    long t_min = 0;
    Eigen::VectorXcd values;
};
struct ExpSumData {
    std::vector<ExpSumTerm> terms;
};
struct QuadDensityData {
    int n = 0;                    // quadrature size, power of two
    Eigen::VectorXcd time_table;  // x(t) for t congruent to index mod n
    double stability = 0.0;       // max |x_N - x_2N| on the doubling check
    std::function<cplx(double)> density;
};

class SignalSource {
  public:
    using Samples = SamplesData;
    using ExpSum = ExpSumData;
    using QuadDensity = QuadDensityData;

    static SignalSource from_samples(long t_min, Eigen::VectorXcd values);
    static SignalSource from_exp_sum(std::vector<ExpSumTerm> terms);
    // Builds the time table from density samples on the standard grid and
    // verifies stability under doubling N unless told not to.
    static SignalSource from_density(const std::function<cplx(double)>& density, int n,
                                     bool stability_check = true);

    cplx sample(long t) const;

    bool is_samples() const { return std::holds_alternative<Samples>(v_); }
    bool is_exp_sum() const { return std::holds_alternative<ExpSum>(v_); }
    bool is_quad_density() const { return std::holds_alternative<QuadDensity>(v_); }
    const Samples& samples() const { return std::get<Samples>(v_); }
    const ExpSum& exp_sum() const { return std::get<ExpSum>(v_); }
    const QuadDensity& quad_density() const { return std::get<QuadDensity>(v_); }

    // Samples windows are hard boundaries; the other variants evaluate
    // everywhere.
    bool covers(long t_lo, long t_hi) const;
    void require_coverage(long t_lo, long t_hi, const char* who) const;

    // Upper bound on sup_t |x(t)| over the representable range.
    double sup_bound() const { return sup_bound_; }
    // Absolute per-sample error bound; zero for exact variants.
    double sample_error() const { return sample_error_; }

  private:
    friend SignalSource modulate(const SignalSource&, double);
    std::variant<Samples, ExpSum, QuadDensity> v_;
    double sup_bound_ = 0.0;
    double sample_error_ = 0.0;
};

struct PairingValue {
    cplx value;
    double truncation_bound = 0.0;  // 0 when exact
    bool exact = true;
};

// <X, f> = sum over supp(f) of x(k) f_k.  Exact because the support is
// finite; Samples sources must cover the support.
PairingValue pairing(const SignalSource& x, const WienerFunction& f);

// X_m(w) = sum_{t=-m}^{m} x(t) e^{-iwt} on the given frequency grid.
Eigen::VectorXcd partial_spectrum(const SignalSource& x, long m,
                                  const std::vector<double>& grid);

// y(t) = e^{i delta t} x(t).  ExpSum frequencies shift (wrapped), Samples
// modulate pointwise, QuadDensity rebuilds from the shifted density.
SignalSource modulate(const SignalSource& x, double delta);

}  // namespace linfdsp
