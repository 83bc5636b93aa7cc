// acceptance.cpp — end-to-end verification suite.
//
// Nine numbered checks, one printed line each, covering the library's load
// bearing guarantees: algebra norms and embedding, the pairing isometry,
// kernel transfer and causality, the one-step predictor against its closed
// form oracle, gap-based recovery in all three modes, the ambiguity bound
// for unknown gaps, and the degeneracy classifier.  Exit status is nonzero
// if any check fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "linfdsp/generators.hpp"
#include "linfdsp/predictor.hpp"
#include "linfdsp/recovery.hpp"

using namespace linfdsp;

namespace {

int failures = 0;

void report(int num, const char* name, bool pass, const std::string& detail) {
    std::printf("[%d/9] %-34s %s  %s\n", num, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double unit(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

WienerFunction random_poly(std::mt19937_64& eng, int max_support, long range) {
    std::map<long, cplx> m;
    const int support = 1 + static_cast<int>(unit(eng) * max_support);
    for (int i = 0; i < support; ++i) {
        const long k = static_cast<long>(unit(eng) * (2 * range + 1)) - range;
        m[k] = cplx{2 * unit(eng) - 1, 2 * unit(eng) - 1};
    }
    return make_wiener(m);
}

// --------------------------------------------------------------------------

void criterion_1_submultiplicativity() {
    std::mt19937_64 eng(0xA11CE);
    double worst = -1e300;
    bool pass = true;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto f = random_poly(eng, 128, 192);
        const auto g = random_poly(eng, 128, 192);
        const double excess = product(f, g).norm_a() - f.norm_a() * g.norm_a();
        worst = std::max(worst, excess);
        pass = pass && excess <= 1e-12;
    }
    report(1, "submultiplicative norm", pass,
           "1000 pairs, worst ||fg|| - ||f||||g|| = " + fmt(worst));
}

void criterion_2_embedding() {
    const double C = embedding_constant();
    const double C_ref = std::sqrt(kPi * std::cosh(kPi) / std::sinh(kPi));
    const double const_err = std::abs(C - C_ref);
    bool pass = const_err <= 1e-10;

    std::mt19937_64 eng(0xB0B);
    double worst = -1e300;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto f = random_poly(eng, 96, 128);
        const double excess = f.norm_a() - C * sobolev_norm(f);
        worst = std::max(worst, excess);
        pass = pass && excess <= 1e-12;
    }
    report(2, "Sobolev embedding", pass,
           "|C - sqrt(pi coth pi)| = " + fmt(const_err) +
               ", worst ||f||_A - C||f||_W = " + fmt(worst));
}

void criterion_3_isometry() {
    std::mt19937_64 eng(0xC0FFEE);
    bool pass = true;
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        Eigen::VectorXcd v(41);
        for (int i = 0; i < 41; ++i) v[i] = cplx{2 * unit(eng) - 1, 2 * unit(eng) - 1};
        const auto x = SignalSource::from_samples(-20, v);
        double sup = 0.0, basis_sup = 0.0;
        for (long t = -20; t <= 20; ++t) {
            const cplx via = pairing(x, WienerFunction::basis(t)).value;
            worst = std::max(worst, std::abs(via - x.sample(t)));
            sup = std::max(sup, std::abs(x.sample(t)));
            basis_sup = std::max(basis_sup, std::abs(via));
        }
        pass = pass && worst <= 1e-12 && basis_sup == sup;
    }
    report(3, "pairing isometry round trip", pass,
           "100 windows, worst |<X,e_t> - x(t)| = " + fmt(worst));
}

void criterion_4_eigenrelation() {
    const double p = kPi / 4, q = kPi / 2;
    const Kernel h = trapezoid_kernel(p, q, 256);
    const double bound = *h.l1_error_bound();
    bool pass = true;
    double worst = 0.0, stop_sup = 0.0;
    for (double w0 : {0.3, 1.2, 2.9}) {
        const auto x = SignalSource::from_exp_sum({ExpSumTerm{cplx{1, 0}, w0}});
        const auto r = apply_transfer(h, x, -50, 50);
        const cplx target = cplx{trapezoid_profile(p, q, w0), 0.0};
        for (long t = -50; t <= 50; ++t) {
            const double dev = std::abs(r.at(t) - target * unit_phasor(w0 * t));
            worst = std::max(worst, dev);
            pass = pass && dev <= bound;
            if (w0 == 2.9) {
                stop_sup = std::max(stop_sup, std::abs(r.at(t)));
                pass = pass && std::abs(r.at(t)) <= bound;
            }
        }
    }
    report(4, "transfer eigenrelation", pass,
           "worst tone deviation " + fmt(worst) + " vs bound " + fmt(bound) +
               ", stop-band sup " + fmt(stop_sup));
}

void criterion_5_causality() {
    bool pass = true;
    double worst_residual = 0.0;
    std::string routes;
    for (double gamma : {1.0, 2.0, 4.0, 8.0}) {
        for (double r : {0.25, 0.5, 0.75}) {
            PredictorConfig cfg{gamma, r, kPi, 512, 1 << 16};
            const HgammaKernel hk = hgamma_kernel(cfg);
            worst_residual = std::max(worst_residual, hk.negative_mass);
            pass = pass && hk.causality_residual <= 1e-8 && hk.negative_mass <= 1e-8 &&
                   hk.causal_ok;

            // Operational check: zero history in, exact zero out.
            const long tau = 3;
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(512 + 64);
            for (long j = 0; j < v.size(); ++j) {
                const long t = tau - 512 - 8 + j;
                if (t > tau) v[j] = cplx{1.0 + 0.5 * std::sin(double(t)), -0.25};
            }
            const auto x = SignalSource::from_samples(tau - 512 - 8, v);
            const auto out = apply_transfer(hk.kernel, x, tau, tau);
            pass = pass && out.at(tau) == cplx{0.0, 0.0};
        }
    }
    report(5, "predictor kernels causal", pass,
           "12 (gamma, r) combos at K=512, N=2^16, worst residual " +
               fmt(worst_residual));
}

void criterion_6_predictor_oracle() {
    // x == 1, omega_hat = pi, r = 1/2.  Exact per-step error for the tone at
    // zero is exp(-gamma / (2 - gamma^{-1/2})).
    const double frozen[] = {0.3678794411714423, 0.2129030969520802,
                             0.0694834512228015, 0.0077586344328677};
    const double gammas[] = {1.0, 2.0, 4.0, 8.0};
    const auto ones = SignalSource::from_exp_sum({ExpSumTerm{cplx{1, 0}, 0.0}});
    bool pass = true;
    double prev = 1e300, worst_dev = 0.0;
    std::string detail;
    for (int i = 0; i < 4; ++i) {
        PredictorConfig cfg{gammas[i], 0.5, kPi, 512, 1 << 16};
        const double oracle = sinusoid_error_oracle(0.0, cfg);
        pass = pass && std::abs(oracle - frozen[i]) <= 1e-9;
        const auto run = predict_one_step(ones, cfg, 0, 40);
        double measured = 0.0;
        for (Eigen::Index j = 0; j < run.per_step_error.size(); ++j)
            measured = std::max(measured, run.per_step_error[j]);
        const double dev = std::abs(measured - oracle);
        worst_dev = std::max(worst_dev, dev / run.kernel_tail);
        pass = pass && dev <= 10.0 * run.kernel_tail;
        pass = pass && measured < prev;
        prev = measured;
        detail += fmt(measured) + (i < 3 ? " > " : "");
    }
    report(6, "one-step error oracle", pass,
           detail + "; worst |meas-oracle|/tail = " + fmt(worst_dev));
}

void criterion_7_recovery() {
    const auto x = SignalSource::from_exp_sum(
        {ExpSumTerm{cplx{1, 0}, 0.2}, ExpSumTerm{cplx{0.5, 0}, -0.4}});
    const SpectralGap gap = make_gap_bank({Interval{1.0, 2.5}}, 12, 32768, 256);
    const double ridge = 1e-12;
    bool pass = true;
    double worst = 0.0;

    // Full-spectrum mode through missing sets of size 1..5.
    const std::vector<std::vector<long>> sets = {
        {3}, {-1, 3}, {-1, 3, 6}, {-1, 2, 3, 7}, {-1, 2, 3, 7, -5}};
    for (const auto& ts : sets) {
        RecoveryProblem prob{MaskedSignal(x, MissingSet::of(ts)), gap,
                             RecoveryMode::full, ridge};
        const auto res = recover_missing(prob);
        pass = pass && !res.ambiguous;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double err = std::abs(res.values[i] - x.sample(res.times[i]));
            worst = std::max(worst, err);
            pass = pass && err <= 1e-6;
        }
    }

    // One-part modes agree with the truth (and hence each other) on a
    // well-conditioned missing set.
    double mode_worst = 0.0;
    for (RecoveryMode mode :
         {RecoveryMode::full, RecoveryMode::real_part, RecoveryMode::imag_part}) {
        RecoveryProblem prob{MaskedSignal(x, MissingSet::of({-1, 3})), gap, mode, ridge};
        const auto res = recover_missing(prob);
        pass = pass && !res.ambiguous;
        for (int i = 0; i < 2; ++i) {
            const double err = std::abs(res.values[i] - x.sample(res.times[i]));
            mode_worst = std::max(mode_worst, err);
            pass = pass && err <= 1e-6;
        }
    }
    report(7, "gap recovery to 1e-6", pass,
           "full-mode worst " + fmt(worst) + " (|M| up to 5), mode-split worst " +
               fmt(mode_worst));
}

// C-infinity step that rises from 0 at u=0 to 1 at u=1.
double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

void criterion_8_ambiguity_bound() {
    bool pass = true;
    std::string detail;

    // Omega = 3pi/2: the bound is floor(2pi / (3pi/2)) = 1.  A narrowband
    // pair of tones near +-pi admits many candidate gaps, all of which must
    // agree on the missing values.
    {
        const double omega = 3.0 * kPi / 2.0;
        const auto x = SignalSource::from_exp_sum(
            {ExpSumTerm{cplx{1, 0}, 2.95}, ExpSumTerm{cplx{0, 0.5}, -3.05}});
        std::vector<Interval> grid;
        for (double a : {-3.00, -2.85, -2.70, -2.55, -2.40, -2.25})
            grid.push_back(Interval{a, a + omega});
        VariantOptions opts;
        opts.n_bumps = 6;
        opts.bump_half_width = 4096;
        opts.residual_tol = 1e-4;
        const auto rep =
            recover_variants(MaskedSignal(x, MissingSet::of({1, 4})), omega, grid, opts);
        int accepted = 0;
        for (const auto& c : rep.candidates) accepted += c.accepted ? 1 : 0;
        pass = pass && rep.bound == 1 && rep.distinct_count == 1 && rep.bound_satisfied &&
               accepted == static_cast<int>(grid.size());
        detail += "Omega=3pi/2: " + std::to_string(rep.distinct_count) + " cluster(s); ";
    }

    // Omega = pi/2: bound 4.  Constructed two-gap instance: a function-type
    // density rho = -Y psi (psi a smooth partition that is 1 over D2 and 0
    // over D1) plus the on-M perturbation y gives two signals agreeing off M
    // with gaps D1 and D2 respectively, so the enumeration must find at
    // least two distinct solutions.
    {
        const double omega = kPi / 2.0;
        const Interval D1{0.5, 0.5 + omega};
        const Interval D2{-2.8, -2.8 + omega};
        const std::vector<long> missing{0, 2};
        const std::vector<cplx> y{{0.9, 0.4}, {-0.7, 0.2}};
        auto Y = [&](double w) {
            cplx acc{0, 0};
            for (std::size_t i = 0; i < missing.size(); ++i)
                acc += y[i] * unit_phasor(-w * double(missing[i]));
            return acc;
        };
        auto psi = [&](double w) {
            if (w < -1.15) return 1.0;                        // covers D2
            if (w < -0.25) return 1.0 - smoothstep((w + 1.15) / 0.9);
            if (w < 2.25) return 0.0;                         // covers D1
            if (w < 2.95) return smoothstep((w - 2.25) / 0.7);
            return 1.0;                                       // periodic join at +-pi
        };
        auto rho = [&](double w) { return -Y(w) * psi(w); };

        const auto x1_density = SignalSource::from_density(rho, 1 << 15);
        const long T = 8100;
        Eigen::VectorXcd window(2 * T + 1);
        for (long t = -T; t <= T; ++t) window[t + T] = x1_density.sample(t);
        const auto x1 = SignalSource::from_samples(-T, window);

        // Sanity: both hypotheses hold for their signals.
        const SpectralGap g1 = make_gap_bank({D1}, 8, 8000, 256);
        const auto gr1 = gap_residual(x1, g1);
        Eigen::VectorXcd w2 = window;
        for (std::size_t i = 0; i < missing.size(); ++i) w2[missing[i] + T] += y[i];
        const auto x2 = SignalSource::from_samples(-T, w2);
        const SpectralGap g2 = make_gap_bank({D2}, 8, 8000, 256);
        const auto gr2 = gap_residual(x2, g2);
        pass = pass && gr1.residual <= 1e-5 && gr2.residual <= 1e-5;

        std::vector<Interval> grid{D1,
                                   D2,
                                   {-0.6, -0.6 + omega},
                                   {1.3, 1.3 + omega},
                                   {-2.0, -2.0 + omega},
                                   {-3.04, -3.04 + omega}};
        VariantOptions opts;
        opts.n_bumps = 8;
        opts.bump_half_width = 8000;
        opts.residual_tol = 1e-5;
        const auto rep = recover_variants(MaskedSignal(x1, MissingSet::of(missing)),
                                          omega, grid, opts);
        pass = pass && rep.bound == 4 && rep.distinct_count >= 2 && rep.bound_satisfied;

        // The two expected solutions are among the clusters.
        auto found = [&](const std::vector<cplx>& target) {
            for (const auto& d : rep.distinct) {
                double dev = 0.0;
                for (int i = 0; i < 2; ++i)
                    dev = std::max(dev, std::abs(d.values[i] - target[i]));
                if (dev < 1e-3) return true;
            }
            return false;
        };
        const std::vector<cplx> sol1{window[0 + T], window[2 + T]};
        const std::vector<cplx> sol2{window[0 + T] + y[0], window[2 + T] + y[1]};
        pass = pass && found(sol1) && found(sol2);
        detail += "Omega=pi/2: " + std::to_string(rep.distinct_count) +
                  " distinct <= 4, both constructed solutions detected";
    }
    report(8, "unknown-gap ambiguity bound", pass, detail);
}

void criterion_9_degeneracy_classifier() {
    const std::vector<double> nus{0.5, 0.1, 0.02};
    DegeneracyWeight w{kPi, 1.0, 2.0, 0.5};
    bool pass = true;
    std::string detail;

    // Matched degenerate density: bounded along the whole sweep.
    const auto xd = gen_degenerate(kPi, 1.0, 2.0, unit_profile, 1 << 14);
    const auto sd = degeneracy_norm(xd, w, nus, 512, 1 << 13, -64, 64);
    pass = pass && !sd.divergent && sd.max_value <= 1.0 + 1e-9;
    detail += "density sup " + fmt(sd.max_value);

    // The bare tone at omega_hat diverges like exp(c/nu), monotonically.
    const auto tone = SignalSource::from_exp_sum({ExpSumTerm{cplx{1, 0}, kPi}});
    const auto st = degeneracy_norm(tone, w, nus, 512, 1 << 13, -64, 64);
    pass = pass && st.divergent;
    for (std::size_t i = 0; i < nus.size(); ++i) {
        pass = pass && std::abs(st.values[i] - std::exp(1.0 / nus[i])) <=
                           1e-10 * std::exp(1.0 / nus[i]);
        if (i > 0) pass = pass && st.values[i] > st.values[i - 1];
    }
    detail += "; tone grows to " + fmt(st.values.back());

    // Band-limited signal whose gap covers the neighbourhood of omega_hat.
    const auto base = SignalSource::from_exp_sum(
        {ExpSumTerm{cplx{1, 0}, 0.2}, ExpSumTerm{cplx{0.5, 0}, 0.5}});
    const auto bl = gen_band_limited(base, kPi / 4, kPi / 2, 512);
    const auto sb = degeneracy_norm(bl.signal, w, nus, 512, 1 << 13, -64, 64);
    double budget = 0.0;
    for (const auto& term : bl.signal.exp_sum().terms) {
        const double d = 2.0 * std::abs(std::sin((term.omega - kPi) / 2.0));
        budget += std::abs(term.alpha) * std::exp(1.0 / (d * d + nus.back()));
    }
    pass = pass && !sb.divergent && sb.max_value <= budget + 1e-12 &&
           sb.max_value <= 2.0;
    detail += "; band-limited sup " + fmt(sb.max_value) + " <= " + fmt(budget);
    report(9, "degeneracy classifier", pass, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    criterion_1_submultiplicativity();
    criterion_2_embedding();
    criterion_3_isometry();
    criterion_4_eigenrelation();
    criterion_5_causality();
    criterion_6_predictor_oracle();
    criterion_7_recovery();
    criterion_8_ambiguity_bound();
    criterion_9_degeneracy_classifier();
    std::printf("----------------\n%s: %d/9 criteria passed\n",
                failures == 0 ? "RESULT" : "RESULT (FAILURES)", 9 - failures);
    return failures == 0 ? 0 : 1;
}
