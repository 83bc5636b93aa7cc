#include "linfdsp/wiener.hpp"

#include <cmath>

namespace linfdsp {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

WienerFunction::WienerFunction(long k_min, Eigen::VectorXcd coeffs) {
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
        if (!finite(coeffs[j]))
            throw invalid_input("WienerFunction: non-finite coefficient at index k=" +
                                std::to_string(k_min + j));
    }
    Eigen::Index lo = 0, hi = coeffs.size();
    while (lo < hi && coeffs[lo] == cplx{0.0, 0.0}) ++lo;
    while (hi > lo && coeffs[hi - 1] == cplx{0.0, 0.0}) --hi;
    k_min_ = k_min + lo;
    c_ = coeffs.segment(lo, hi - lo);
    KahanSum s;
    for (Eigen::Index j = 0; j < c_.size(); ++j) s.add(std::abs(c_[j]));
    norm_a_ = s.value();
}

WienerFunction WienerFunction::basis(long t) {
    Eigen::VectorXcd one(1);
    one[0] = cplx{1.0, 0.0};
    return WienerFunction(t, std::move(one));
}

cplx WienerFunction::evaluate(double omega) const {
    if (!std::isfinite(omega)) throw invalid_input("evaluate: non-finite frequency");
    if (empty()) return {0.0, 0.0};
    const cplx z = unit_phasor(omega);
    cplx acc = c_[c_.size() - 1];
    for (Eigen::Index j = c_.size() - 2; j >= 0; --j) acc = acc * z + c_[j];
    return acc * unit_phasor(omega * static_cast<double>(k_min_));
}

WienerFunction make_wiener(const std::map<long, cplx>& coeffs) {
    if (coeffs.empty()) return {};
    const long k_min = coeffs.begin()->first;
    const long k_max = coeffs.rbegin()->first;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(k_max - k_min + 1);
    for (const auto& [k, v] : coeffs) {
        if (!finite(v))
            throw invalid_input("make_wiener: non-finite coefficient at index k=" +
                                std::to_string(k));
        c[k - k_min] = v;
    }
    return WienerFunction(k_min, std::move(c));
}

WienerFunction product(const WienerFunction& f, const WienerFunction& g) {
    if (f.empty() || g.empty()) return {};
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(f.size() + g.size() - 1);
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) h[i + j] += a[i] * b[j];
    return WienerFunction(f.k_min() + g.k_min(), std::move(h));
}

double sobolev_norm(const WienerFunction& f) {
    KahanSum s;
    for (long k = f.k_min(); k <= f.k_max(); ++k) {
        const double kk = static_cast<double>(k);
        s.add((1.0 + kk * kk) * std::norm(f.coeff(k)));
    }
    return std::sqrt(s.value());
}

double embedding_constant() {
    static const double c = [] {
        const long m = 200000;
        KahanSum s;
        s.add(1.0);
        for (long k = 1; k <= m; ++k) s.add(2.0 / (1.0 + double(k) * double(k)));
        // Tail sum_{k>m} 1/(1+k^2) by the midpoint rule on [m+1/2, inf);
        // the curvature correction is O(m^-3), far below the target.
        s.add(2.0 * (kPi / 2.0 - std::atan(double(m) + 0.5)));
        return std::sqrt(s.value());
    }();
    return c;
}

double embedding_bound(const WienerFunction& f) {
    return embedding_constant() * sobolev_norm(f);
}

}  // namespace linfdsp
