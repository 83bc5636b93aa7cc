// wiener.hpp — trigonometric polynomials with the absolute-sum norm.
//
// A WienerFunction is a finitely supported coefficient sequence {f_k}
// representing f(w) = sum_k f_k e^{iwk} on [-pi, pi].  The norm is
// sum_k |f_k|.  Members of the full algebra with infinite support enter the
// library only as truncations whose discarded-tail mass is carried
// explicitly by the consumer (see Kernel in transfer.hpp).

#pragma once

#include <Eigen/Core>
#include <map>

#include "linfdsp/common.hpp"

namespace linfdsp {

class WienerFunction {
  public:
    WienerFunction() = default;  // the zero function

    // Coefficients c[j] sit at index k_min + j. Rejects non-finite entries
    // (the offending index is reported) and trims zero ends so that
    // k_min/k_max describe the true support.
    WienerFunction(long k_min, Eigen::VectorXcd coeffs);

    // Basis exponential e^{iwt}.
    static WienerFunction basis(long t);

    bool empty() const { return c_.size() == 0; }
    long k_min() const { return k_min_; }
    long k_max() const { return k_min_ + c_.size() - 1; }
    Eigen::Index size() const { return c_.size(); }

    cplx coeff(long k) const {
        if (k < k_min_ || k > k_max()) return {0.0, 0.0};
        return c_[k - k_min_];
    }
    const Eigen::VectorXcd& coeffs() const { return c_; }

    double norm_a() const { return norm_a_; }

    // f(w) = sum_k f_k e^{iwk}, evaluated by Horner in e^{iw}.
    cplx evaluate(double omega) const;

  private:
    long k_min_ = 0;
    Eigen::VectorXcd c_;
    double norm_a_ = 0.0;
};

// Construct from sparse (index, value) pairs.
WienerFunction make_wiener(const std::map<long, cplx>& coeffs);

inline cplx evaluate(const WienerFunction& f, double omega) { return f.evaluate(omega); }

// Pointwise product; coefficients by full discrete convolution, so
// norm_a(product) <= norm_a(f) * norm_a(g) up to rounding.
WienerFunction product(const WienerFunction& f, const WienerFunction& g);

// Periodic first-order Sobolev norm, convention (sum (1+k^2) |f_k|^2)^{1/2}.
double sobolev_norm(const WienerFunction& f);

// C = (sum_{k in Z} (1+k^2)^{-1})^{1/2}, computed once from the series with a
// midpoint-rule tail closure accurate to well below 1e-12.
double embedding_constant();

// C * sobolev_norm(f); an upper bound for norm_a(f) by Cauchy-Schwarz.
double embedding_bound(const WienerFunction& f);

}  // namespace linfdsp
