#include "linfdsp/signal.hpp"

#include <cmath>

#include "linfdsp/fft.hpp"

namespace linfdsp {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Eigen::VectorXcd density_table(const std::function<cplx(double)>& density, int n) {
    Eigen::VectorXcd f(n);
    for (int j = 0; j < n; ++j) {
        f[j] = density(grid_omega(j, n));
        if (!finite(f[j]))
            throw invalid_input("from_density: non-finite density sample at w=" +
                                std::to_string(grid_omega(j, n)));
    }
    return quadrature_table(f);
}

long mod_index(long t, int n) {
    long m = t % n;
    return m < 0 ? m + n : m;
}

}  // namespace

SignalSource SignalSource::from_samples(long t_min, Eigen::VectorXcd values) {
    if (values.size() == 0) throw invalid_input("from_samples: empty window");
    SignalSource s;
    double sup = 0.0;
    for (Eigen::Index j = 0; j < values.size(); ++j) {
        if (!finite(values[j]))
            throw invalid_input("from_samples: non-finite value at t=" +
                                std::to_string(t_min + j));
        sup = std::max(sup, std::abs(values[j]));
    }
    s.v_ = Samples{t_min, std::move(values)};
    s.sup_bound_ = sup;
    return s;
}

SignalSource SignalSource::from_exp_sum(std::vector<ExpSumTerm> terms) {
    SignalSource s;
    KahanSum l1;
    for (const auto& [alpha, omega] : terms) {
        if (!finite(alpha) || !std::isfinite(omega))
            throw invalid_input("from_exp_sum: non-finite term");
        if (omega <= -kPi || omega > kPi)
            throw invalid_input("from_exp_sum: frequency outside (-pi, pi]: " +
                                std::to_string(omega));
        l1.add(std::abs(alpha));
    }
    s.v_ = ExpSum{std::move(terms)};
    s.sup_bound_ = l1.value();
    return s;
}

SignalSource SignalSource::from_density(const std::function<cplx(double)>& density, int n,
                                        bool stability_check) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw invalid_input("from_density: quadrature size must be a power of two >= 4");
    QuadDensity q;
    q.n = n;
    q.density = density;
    q.time_table = density_table(density, n);
    if (stability_check) {
        const Eigen::VectorXcd fine = density_table(density, 2 * n);
        double diff = 0.0;
        for (long t = -n / 4; t <= n / 4; ++t)
            diff = std::max(diff, std::abs(q.time_table[mod_index(t, n)] -
                                           fine[mod_index(t, 2 * n)]));
        q.stability = diff;
        const double scale = q.time_table.cwiseAbs().maxCoeff();
        if (diff > 1e-8 * (1.0 + scale))
            throw numeric_failure(
                "from_density: quadrature too coarse, doubling-N check moved samples by " +
                std::to_string(diff));
    }
    SignalSource s;
    s.sup_bound_ = q.time_table.cwiseAbs().maxCoeff();
    s.sample_error_ = q.stability;
    s.v_ = std::move(q);
    return s;
}

cplx SignalSource::sample(long t) const {
    if (is_samples()) {
        const auto& w = samples();
        const long j = t - w.t_min;
        if (j < 0 || j >= w.values.size())
            throw invalid_input("sample: t=" + std::to_string(t) +
                                " outside the sample window");
        return w.values[j];
    }
    if (is_exp_sum()) {
        KahanCSum acc;
        for (const auto& [alpha, omega] : exp_sum().terms)
            acc.add(alpha * unit_phasor(omega * static_cast<double>(t)));
        return acc.value();
    }
    const auto& q = quad_density();
    return q.time_table[mod_index(t, q.n)];
}

bool SignalSource::covers(long t_lo, long t_hi) const {
    if (!is_samples()) return true;
    const auto& w = samples();
    return t_lo >= w.t_min && t_hi <= w.t_min + w.values.size() - 1;
}

void SignalSource::require_coverage(long t_lo, long t_hi, const char* who) const {
    if (covers(t_lo, t_hi)) return;
    const auto& w = samples();
    const long bad = t_lo < w.t_min ? t_lo : t_hi;
    throw invalid_input(std::string(who) + ": sample window [" + std::to_string(w.t_min) +
                        ", " + std::to_string(w.t_min + w.values.size() - 1) +
                        "] does not reach t=" + std::to_string(bad));
}

PairingValue pairing(const SignalSource& x, const WienerFunction& f) {
    if (f.empty()) return {cplx{0.0, 0.0}, 0.0, true};
    x.require_coverage(f.k_min(), f.k_max(), "pairing");
    KahanCSum acc;
    for (long k = f.k_min(); k <= f.k_max(); ++k) {
        const cplx fk = f.coeff(k);
        if (fk != cplx{0.0, 0.0}) acc.add(x.sample(k) * fk);
    }
    const double trunc = x.sample_error() * f.norm_a();
    return {acc.value(), trunc, trunc == 0.0};
}

SignalSource modulate(const SignalSource& x, double delta) {
    if (x.is_exp_sum()) {
        std::vector<ExpSumTerm> terms = x.exp_sum().terms;
        for (auto& t : terms) t.omega = wrap_angle(t.omega + delta);
        return SignalSource::from_exp_sum(std::move(terms));
    }
    if (x.is_samples()) {
        const auto& w = x.samples();
        Eigen::VectorXcd v = w.values;
        for (Eigen::Index j = 0; j < v.size(); ++j)
            v[j] *= unit_phasor(delta * static_cast<double>(w.t_min + j));
        return SignalSource::from_samples(w.t_min, std::move(v));
    }
    const auto& q = x.quad_density();
    if (!q.density) throw invalid_input("modulate: density callable missing");
    auto shifted = [base = q.density, delta](double omega) {
        return base(wrap_angle(omega - delta));
    };
    SignalSource s = SignalSource::from_density(shifted, q.n, /*stability_check=*/false);
    s.sample_error_ = x.sample_error();  // the shift preserves the quadrature error
    return s;
}

Eigen::VectorXcd partial_spectrum(const SignalSource& x, long m,
                                  const std::vector<double>& grid) {
    if (m < 0) throw invalid_input("partial_spectrum: m must be nonnegative");
    x.require_coverage(-m, m, "partial_spectrum");
    Eigen::VectorXcd vals(static_cast<Eigen::Index>(grid.size()));
    std::vector<cplx> xs(static_cast<std::size_t>(2 * m + 1));
    for (long t = -m; t <= m; ++t) xs[static_cast<std::size_t>(t + m)] = x.sample(t);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const cplx z = unit_phasor(-grid[g]);  // X_m is a polynomial in e^{-iw}
        cplx acc = xs.back();
        for (long j = 2 * m - 1; j >= 0; --j) acc = acc * z + xs[static_cast<std::size_t>(j)];
        vals[static_cast<Eigen::Index>(g)] =
            acc * unit_phasor(grid[g] * static_cast<double>(m));
    }
    return vals;
}

}  // namespace linfdsp
