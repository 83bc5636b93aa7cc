#include "linfdsp/generators.hpp"

#include <cmath>

namespace linfdsp {

SignalSource gen_exp_sum(std::vector<ExpSumTerm> terms) {
    return SignalSource::from_exp_sum(std::move(terms));
}

BandLimited gen_band_limited(const SignalSource& base, double p, double q, int K,
                             long t_min, long t_max) {
    const Kernel h = trapezoid_kernel(p, q, K);
    BandLimited out;
    out.tail_bound = h.l1_error_bound().value_or(0.0);
    if (base.is_exp_sum()) {
        std::vector<ExpSumTerm> terms = base.exp_sum().terms;
        for (auto& t : terms) t.alpha *= h.spectrum_value(t.omega);
        out.signal = SignalSource::from_exp_sum(std::move(terms));
        return out;
    }
    if (t_max < t_min) throw invalid_input("gen_band_limited: empty output window");
    const TransferResult r = apply_transfer(h, base, t_min, t_max);
    out.signal = SignalSource::from_samples(t_min, r.values);
    return out;
}

BandLimited gen_filtered_noise(std::uint64_t seed, double p, double q, int K,
                               long t_min, long t_max) {
    if (t_max < t_min) throw invalid_input("gen_filtered_noise: empty window");
    Rng rng(seed);
    const long lo = t_min - K, hi = t_max + K;
    Eigen::VectorXcd raw(hi - lo + 1);
    for (Eigen::Index j = 0; j < raw.size(); ++j) raw[j] = cplx{rng.symmetric(), 0.0};
    const SignalSource base = SignalSource::from_samples(lo, std::move(raw));
    return gen_band_limited(base, p, q, K, t_min, t_max);
}

double unit_profile(double) { return 1.0; }

SignalSource gen_degenerate(double omega_hat, double c, double q_exp,
                            const std::function<double(double)>& profile, int N) {
    if (!(c > 0.0) || !(q_exp > 1.0))
        throw invalid_input("gen_degenerate: need c > 0 and exponent > 1");
    if (!(omega_hat > -kPi && omega_hat <= kPi))
        throw invalid_input("gen_degenerate: omega_hat must be in (-pi, pi]");
    auto density = [=](double w) -> cplx {
        const double d = 2.0 * std::abs(std::sin((w - omega_hat) / 2.0));
        if (d == 0.0) return {0.0, 0.0};
        const double expo = c / std::pow(d, q_exp);
        if (expo > 700.0) return {0.0, 0.0};  // underflows to zero anyway
        return {profile(w) * std::exp(-expo), 0.0};
    };
    return SignalSource::from_density(density, N, /*stability_check=*/true);
}

}  // namespace linfdsp
