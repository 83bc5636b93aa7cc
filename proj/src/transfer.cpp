#include "linfdsp/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "linfdsp/fft.hpp"

namespace linfdsp {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kEps = 2.220446049250313e-16;

}  // namespace

Kernel::Kernel(long k_min, Eigen::VectorXcd coeffs, std::optional<double> tail_bound,
               double coeff_error, Causality causal, bool tail_is_estimate)
    : k_min_(k_min),
      c_(std::move(coeffs)),
      tail_bound_(tail_bound),
      tail_is_estimate_(tail_is_estimate),
      coeff_error_(coeff_error),
      causal_(causal) {
    KahanSum s;
    for (Eigen::Index j = 0; j < c_.size(); ++j) {
        if (!finite(c_[j]))
            throw numeric_failure("Kernel: non-finite coefficient at k=" +
                                  std::to_string(k_min_ + j));
        s.add(std::abs(c_[j]));
    }
    l1_ = s.value();
}

double Kernel::negative_residual() const {
    double m = 0.0;
    for (long k = k_min_; k < 0 && k <= k_max(); ++k) m = std::max(m, std::abs(coeff(k)));
    return m;
}

cplx Kernel::spectrum_value(double omega) const {
    if (empty()) return {0.0, 0.0};
    const cplx z = unit_phasor(-omega);  // H = sum h_k e^{-iwk} = sum h_k z^k
    cplx acc = c_[c_.size() - 1];
    for (Eigen::Index j = c_.size() - 2; j >= 0; --j) acc = acc * z + c_[j];
    return acc * unit_phasor(-omega * static_cast<double>(k_min_));
}

WienerFunction Kernel::spectrum() const {
    if (empty()) return {};
    return WienerFunction(-k_max(), c_.reverse());
}

bool is_causal(const Kernel& h, double tol) { return h.negative_residual() <= tol; }

Kernel with_causality(const Kernel& h, double tol) {
    Causality c;
    if (h.k_min() >= 0) {
        c = {Causality::Kind::proven, 0.0};
    } else if (h.negative_residual() <= tol) {
        c = {Causality::Kind::numeric, tol};
    } else {
        c = {Causality::Kind::no, 0.0};
    }
    return Kernel(h.k_min(), h.coeffs(), h.tail_bound(), h.coeff_error(), c,
                  h.tail_is_estimate());
}

Kernel strip_negative(const Kernel& h) {
    if (h.k_min() >= 0) return h;
    KahanSum dropped;
    for (long k = h.k_min(); k < 0; ++k) dropped.add(std::abs(h.coeff(k)));
    const long keep = h.k_max() >= 0 ? h.k_max() + 1 : 0;
    Eigen::VectorXcd c = keep > 0 ? h.coeffs().tail(keep).eval() : Eigen::VectorXcd{};
    return Kernel(0, std::move(c), h.tail_bound(), h.coeff_error() + dropped.value(),
                  {Causality::Kind::numeric, h.negative_residual()}, h.tail_is_estimate());
}

Kernel kernel_from_spectrum(const std::function<cplx(double)>& H, int K, int N) {
    if (K < 0) throw invalid_input("kernel_from_spectrum: negative half-width");
    if (N < 4 * std::max(K, 1) || (N & (N - 1)) != 0)
        throw invalid_input("kernel_from_spectrum: need N a power of two with N >= 4K");
    Eigen::VectorXcd samples(N);
    KahanSum abs_sum;
    for (int j = 0; j < N; ++j) {
        samples[j] = H(grid_omega(j, N));
        if (!finite(samples[j]))
            throw numeric_failure("kernel_from_spectrum: non-finite spectrum sample at w=" +
                                  std::to_string(grid_omega(j, N)));
        abs_sum.add(std::abs(samples[j]));
    }
    const Eigen::VectorXcd table = quadrature_table(samples);
    auto at = [&](long k) { return table[(k % N + N) % N]; };

    Eigen::VectorXcd c(2 * K + 1);
    for (long k = -K; k <= K; ++k) c[k + K] = at(k);
    KahanSum tail;
    for (long k = K + 1; k <= N / 2; ++k) tail.add(std::abs(at(k)));
    for (long k = -N / 2; k < -K; ++k) tail.add(std::abs(at(k)));
    const double mean_abs = abs_sum.value() / N;
    const double coeff_error =
        kEps * std::log2(double(N)) * double(2 * K + 1) * mean_abs;
    return Kernel(-K, std::move(c), tail.value(), coeff_error, {Causality::Kind::no, 0.0},
                  /*tail_is_estimate=*/true);
}

double trapezoid_profile(double p, double q, double w) {
    const double a = std::abs(w);
    if (a <= p) return 1.0;
    if (a <= q) return (q - a) / (q - p);
    return 0.0;
}

Kernel trapezoid_kernel(double p, double q, int K) {
    if (!(0.0 < p && p < q && q < kPi))
        throw invalid_input("trapezoid_kernel: need 0 < p < q < pi");
    if (K < 1) throw invalid_input("trapezoid_kernel: half-width must be positive");
    auto coeff = [&](long k) -> double {
        if (k == 0) return (p + q) / kTwoPi;
        const double kk = static_cast<double>(k);
        return (std::cos(p * kk) - std::cos(q * kk)) / (kPi * (q - p) * kk * kk);
    };
    Eigen::VectorXcd c(2 * K + 1);
    for (long k = -K; k <= K; ++k) c[k + K] = coeff(k);
    // Exact tail of the closed form up to M, then the k^-2 majorant beyond.
    const long M = std::max<long>(1000000, 16L * K);
    KahanSum tail;
    for (long k = K + 1; k <= M; ++k) tail.add(2.0 * std::abs(coeff(k)));
    tail.add(4.0 / (kPi * (q - p) * static_cast<double>(M)));
    const double coeff_error = kEps * 4.0 * double(2 * K + 1) / (kPi * (q - p));
    return Kernel(-K, std::move(c), tail.value(), coeff_error, {Causality::Kind::no, 0.0});
}

TransferResult apply_transfer(const Kernel& h, const SignalSource& x, long t_begin,
                              long t_end) {
    if (t_end < t_begin) throw invalid_input("apply_transfer: empty time range");
    if (!h.empty()) x.require_coverage(t_begin - h.k_max(), t_end - h.k_min(), "apply_transfer");
    TransferResult r;
    r.t_begin = t_begin;
    r.values.resize(t_end - t_begin + 1);
    for (long t = t_begin; t <= t_end; ++t) {
        KahanCSum acc;
        for (long k = h.k_min(); k <= h.k_max(); ++k) {
            const cplx hk = h.coeff(k);
            if (hk != cplx{0.0, 0.0}) acc.add(hk * x.sample(t - k));
        }
        r.values[t - t_begin] = acc.value();
    }
    if (h.tail_bound()) {
        r.bound_certified = true;
        r.error_bound = x.sup_bound() * (*h.tail_bound() + h.coeff_error()) +
                        x.sample_error() * h.l1_norm() +
                        8.0 * kEps * h.l1_norm() * x.sup_bound();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Spectral gaps

SpectralGap::SpectralGap(std::vector<Interval> intervals, std::vector<WienerFunction> bank,
                         double bank_leakage)
    : intervals_(std::move(intervals)), bank_(std::move(bank)), bank_leakage_(bank_leakage) {
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& u, const Interval& v) { return u.a < v.a; });
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& iv = intervals_[i];
        if (!(iv.a >= -kPi && iv.a < iv.b && iv.b <= kPi))
            throw invalid_input("SpectralGap: interval must satisfy -pi <= a < b <= pi");
        if (i > 0 && intervals_[i - 1].b > iv.a)
            throw invalid_input("SpectralGap: intervals must be disjoint");
    }
}

bool SpectralGap::contains(double w) const {
    for (const auto& iv : intervals_)
        if (iv.contains(w)) return true;
    return false;
}

double SpectralGap::measure() const {
    double m = 0.0;
    for (const auto& iv : intervals_) m += iv.length();
    return m;
}

namespace {

// Closed-form coefficients of the centered raised-cosine profile of the
// given width: beta_0 = width/(4pi), beta_k = (a^2/2pi) sin(k width/2) /
// (k (a^2 - k^2)) with a = 2pi/width.  The removable point k = a takes the
// limit width/(8pi).
double raised_cosine_coeff(double width, long k) {
    if (k == 0) return width / (4.0 * kPi);
    const double a = kTwoPi / width;
    const double kk = static_cast<double>(std::labs(k));
    if (std::abs(kk - a) < 1e-9 * a) return width / (8.0 * kPi);
    return (a * a / kTwoPi) * std::sin(kk * width / 2.0) / (kk * (a * a - kk * kk));
}

}  // namespace

double raised_cosine_tail(double width, int K) {
    const double a = kTwoPi / width;
    const long M = std::max<long>(8L * K, 1L << 18);
    KahanSum tail;
    for (long k = K + 1; k <= M; ++k) tail.add(2.0 * std::abs(raised_cosine_coeff(width, k)));
    const double mm = static_cast<double>(M);
    tail.add((a * a / kPi) / (2.0 * mm * mm) / (1.0 - (a / mm) * (a / mm)));
    return tail.value();
}

WienerFunction raised_cosine_bump(double center, double width, int K) {
    if (!(width > 0.0)) throw invalid_input("raised_cosine_bump: width must be positive");
    Eigen::VectorXcd c(2 * K + 1);
    for (long k = -K; k <= K; ++k)
        c[k + K] = raised_cosine_coeff(width, k) *
                   unit_phasor(-center * static_cast<double>(k));
    return WienerFunction(-K, std::move(c));
}

SpectralGap make_gap_bank(const std::vector<Interval>& intervals, int n_bumps, int K,
                          int audit_n) {
    if (n_bumps < 1) throw invalid_input("make_gap_bank: need at least one bump");
    std::vector<WienerFunction> bank;
    double tail_leak = 0.0;
    for (const auto& iv : intervals) {
        const double step = iv.length() / static_cast<double>(n_bumps + 1);
        const double width = 2.0 * step;
        for (int j = 1; j <= n_bumps; ++j)
            bank.push_back(raised_cosine_bump(iv.a + step * j, width, K));
        tail_leak = std::max(tail_leak, raised_cosine_tail(width, K));
    }
    // Audit the truncated bumps on the complement of D.
    SpectralGap probe(intervals, {}, 0.0);
    double measured = 0.0;
    for (int g = 0; g < audit_n; ++g) {
        const double w = -kPi + kTwoPi * (g + 0.5) / audit_n;
        if (probe.contains(w)) continue;
        for (const auto& f : bank) measured = std::max(measured, std::abs(f.evaluate(w)));
    }
    return SpectralGap(intervals, std::move(bank), std::max(measured, tail_leak));
}

GapResidual gap_residual(const SignalSource& x, const SpectralGap& gap) {
    GapResidual r;
    double trunc = 0.0;
    for (const auto& f : gap.bank()) {
        const PairingValue pv = pairing(x, f);
        r.residual = std::max(r.residual, std::abs(pv.value));
        trunc = std::max(trunc, pv.truncation_bound);
    }
    r.leakage_slack = x.sup_bound() * gap.bank_leakage() + trunc;
    return r;
}

// ---------------------------------------------------------------------------
// Degeneracy weights

void DegeneracyWeight::validate() const {
    if (!(c > 0.0)) throw invalid_input("DegeneracyWeight: c must be positive");
    if (!(q_exp > 1.0)) throw invalid_input("DegeneracyWeight: exponent must exceed 1");
    if (!(nu > 0.0 && nu < 1.0)) throw invalid_input("DegeneracyWeight: nu must be in (0,1)");
    if (!(omega_hat > -kPi && omega_hat <= kPi))
        throw invalid_input("DegeneracyWeight: omega_hat must be in (-pi, pi]");
}

double DegeneracyWeight::value(double omega) const {
    const double d = 2.0 * std::abs(std::sin((omega - omega_hat) / 2.0));
    return std::exp(c / (std::pow(d, q_exp) + nu));
}

DegeneracyWeight DegeneracyWeight::with_nu(double nu_value) const {
    DegeneracyWeight w = *this;
    w.nu = nu_value;
    return w;
}

namespace {

long mod_index(long t, int n) {
    long m = t % n;
    return m < 0 ? m + n : m;
}

// One nu slice of the sweep: sup over [t_begin, t_end] of |F^{-1}(X G)|.
std::pair<double, double> weighted_sup(const SignalSource& x, const DegeneracyWeight& w,
                                       int K, int N, long t_begin, long t_end) {
    if (x.is_exp_sum()) {
        // Point-mass spectrum: the weighted signal is sum alpha_k G(w_k) e^{i w_k t}.
        double sup = 0.0;
        for (long t = t_begin; t <= t_end; ++t) {
            KahanCSum acc;
            for (const auto& [alpha, omega] : x.exp_sum().terms)
                acc.add(alpha * w.value(omega) * unit_phasor(omega * double(t)));
            sup = std::max(sup, std::abs(acc.value()));
        }
        return {sup, 0.0};
    }
    if (x.is_quad_density()) {
        // Function-type spectrum: multiply the density and re-quadrate; the
        // error bar is a direct doubling-N measurement on the product.
        const auto& q = x.quad_density();
        if (!q.density) throw invalid_input("degeneracy_norm: density callable missing");
        auto weighted = [&](double omega) { return q.density(omega) * w.value(omega); };
        const int n = std::max(q.n, N);
        Eigen::VectorXcd coarse(n), fine(2 * n);
        for (int j = 0; j < n; ++j) coarse[j] = weighted(grid_omega(j, n));
        for (int j = 0; j < 2 * n; ++j) fine[j] = weighted(grid_omega(j, 2 * n));
        const Eigen::VectorXcd tc = quadrature_table(coarse);
        const Eigen::VectorXcd tf = quadrature_table(fine);
        double sup = 0.0, bar = 0.0;
        for (long t = t_begin; t <= t_end; ++t) {
            const cplx v = tf[mod_index(t, 2 * n)];
            sup = std::max(sup, std::abs(v));
            bar = std::max(bar, std::abs(v - tc[mod_index(t, n)]));
        }
        return {sup, bar};
    }
    // Sampled data: realize the weight as a convolution kernel.
    const Kernel g = kernel_from_spectrum([&](double omega) { return cplx{w.value(omega), 0.0}; },
                                          K, N);
    const TransferResult r = apply_transfer(g, x, t_begin, t_end);
    double sup = 0.0;
    for (Eigen::Index j = 0; j < r.values.size(); ++j)
        sup = std::max(sup, std::abs(r.values[j]));
    return {sup, r.error_bound.value_or(0.0)};
}

}  // namespace

DegeneracySweep degeneracy_norm(const SignalSource& x, const DegeneracyWeight& w,
                                const std::vector<double>& nu_list, int K, int N,
                                long t_begin, long t_end) {
    if (nu_list.empty()) throw invalid_input("degeneracy_norm: empty nu list");
    DegeneracySweep sweep;
    sweep.nu_list = nu_list;
    for (double nu : nu_list) {
        const DegeneracyWeight wn = w.with_nu(nu);
        wn.validate();
        auto [sup, bar] = weighted_sup(x, wn, K, N, t_begin, t_end);
        sweep.values.push_back(sup);
        sweep.error_bars.push_back(bar);
        sweep.max_value = std::max(sweep.max_value, sup);
    }
    bool increasing = true;
    for (std::size_t i = 1; i < sweep.values.size(); ++i)
        increasing = increasing && sweep.values[i] > sweep.values[i - 1];
    sweep.divergent = increasing && sweep.values.size() > 1 &&
                      sweep.values.back() > 100.0 * std::max(sweep.values.front(), 1e-300);
    return sweep;
}

}  // namespace linfdsp
