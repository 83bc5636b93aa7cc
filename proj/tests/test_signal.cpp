#include <doctest.h>

#include "linfdsp/signal.hpp"
#include "oracles.hpp"

using namespace linfdsp;

namespace {

SignalSource tone(cplx alpha, double omega) {
    return SignalSource::from_exp_sum({ExpSumTerm{alpha, omega}});
}

}  // namespace

TEST_CASE("source validation") {
    CHECK_THROWS_AS(SignalSource::from_samples(0, Eigen::VectorXcd{}), invalid_input);
    CHECK_THROWS_AS(SignalSource::from_exp_sum({ExpSumTerm{cplx{1, 0}, 4.0}}), invalid_input);
    CHECK_THROWS_AS(SignalSource::from_exp_sum({ExpSumTerm{cplx{1, 0}, -kPi}}), invalid_input);

    Eigen::VectorXcd v(2);
    v << cplx{1, 0}, cplx{std::nan(""), 0};
    CHECK_THROWS_WITH_AS(SignalSource::from_samples(5, v), doctest::Contains("6"),
                         invalid_input);
}

TEST_CASE("pairing against basis exponentials and point masses") {
    // x == 1 paired with the constant function.
    const auto ones = tone(cplx{1, 0}, 0.0);
    const auto f0 = make_wiener({{0, cplx{1, 0}}});
    CHECK(std::abs(pairing(ones, f0).value - cplx{1, 0}) < 1e-15);
    CHECK(pairing(ones, f0).exact);
    CHECK(pairing(ones, f0).truncation_bound == 0.0);

    // A pure tone pairs to a point evaluation: <X, f> = f(w0).
    const auto x = tone(cplx{1, 0}, kPi / 2);
    const auto f = WienerFunction::basis(1);
    CHECK(std::abs(pairing(x, f).value - cplx{0, 1}) < 1e-15);
    std::mt19937_64 eng(11);
    for (int rep = 0; rep < 25; ++rep) {
        const auto g = make_wiener(oracles::random_sparse(eng, 24, 40));
        CHECK(std::abs(pairing(x, g).value - evaluate(g, kPi / 2)) < 1e-13);
    }

    // x = 1{t==5} picks out the single coefficient.
    Eigen::VectorXcd imp = Eigen::VectorXcd::Zero(21);
    imp[15] = cplx{1, 0};
    const auto delta5 = SignalSource::from_samples(-10, imp);
    const auto g = make_wiener(oracles::random_sparse(eng, 12, 10));
    CHECK(std::abs(pairing(delta5, g).value - g.coeff(5)) < 1e-15);
}

TEST_CASE("pairing requires window coverage and reports the index") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(5);
    const auto x = SignalSource::from_samples(0, v);  // window [0,4]
    const auto f = make_wiener({{2, cplx{1, 0}}, {7, cplx{1, 0}}});
    CHECK_THROWS_WITH_AS(pairing(x, f), doctest::Contains("7"), invalid_input);
}

TEST_CASE("pairing bound and isometry on windows") {
    std::mt19937_64 eng(23);
    auto unit = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    for (int rep = 0; rep < 30; ++rep) {
        Eigen::VectorXcd v(31);
        for (int i = 0; i < 31; ++i) v[i] = cplx{2 * unit() - 1, 2 * unit() - 1};
        const auto x = SignalSource::from_samples(-15, v);
        const auto f = make_wiener(oracles::random_sparse(eng, 20, 15));

        double sup_on_supp = 0.0;
        for (long k = f.k_min(); k <= f.k_max(); ++k)
            sup_on_supp = std::max(sup_on_supp, std::abs(x.sample(k)));
        CHECK(std::abs(pairing(x, f).value) <= sup_on_supp * f.norm_a() + 1e-12);

        // Round trip through the basis reproduces samples and the sup norm.
        double sup = 0.0, basis_sup = 0.0;
        for (long t = -15; t <= 15; ++t) {
            const cplx via = pairing(x, WienerFunction::basis(t)).value;
            CHECK(via == x.sample(t));  // exact: a single product by 1
            sup = std::max(sup, std::abs(x.sample(t)));
            basis_sup = std::max(basis_sup, std::abs(via));
        }
        CHECK(basis_sup == sup);
    }
}

TEST_CASE("pairing parity") {
    std::mt19937_64 eng(5);
    auto unit = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    for (int rep = 0; rep < 30; ++rep) {
        // Real signal, real coefficients: every term is real.
        Eigen::VectorXcd v(17);
        for (int i = 0; i < 17; ++i) v[i] = cplx{2 * unit() - 1, 0.0};
        const auto xr = SignalSource::from_samples(-8, v);
        std::map<long, cplx> fr;
        for (long k = -6; k <= 6; ++k) fr[k] = cplx{2 * unit() - 1, 0.0};
        CHECK(pairing(xr, make_wiener(fr)).value.imag() == 0.0);

        // Hermitian signal x(-t) = conj x(t) against a real-valued function
        // (Hermitian coefficients): the pairing is real.
        Eigen::VectorXcd h(17);
        for (int i = 0; i < 8; ++i) {
            const cplx z{2 * unit() - 1, 2 * unit() - 1};
            h[8 + (i + 1)] = z;
            h[8 - (i + 1)] = std::conj(z);
        }
        h[8] = cplx{2 * unit() - 1, 0.0};
        const auto xh = SignalSource::from_samples(-8, h);
        std::map<long, cplx> fh;
        fh[0] = cplx{2 * unit() - 1, 0.0};
        for (long k = 1; k <= 6; ++k) {
            const cplx z{2 * unit() - 1, 2 * unit() - 1};
            fh[k] = z;
            fh[-k] = std::conj(z);
        }
        CHECK(std::abs(pairing(xh, make_wiener(fh)).value.imag()) < 1e-14);
    }
}

TEST_CASE("partial spectrum") {
    Eigen::VectorXcd imp = Eigen::VectorXcd::Zero(21);
    imp[10] = cplx{1, 0};
    const auto delta = SignalSource::from_samples(-10, imp);
    const std::vector<double> grid{-3.0, -1.1, 0.0, 0.7, 2.9};
    for (long m : {0L, 3L, 10L}) {
        const auto vals = partial_spectrum(delta, m, grid);
        for (Eigen::Index i = 0; i < vals.size(); ++i)
            CHECK(std::abs(vals[i] - cplx{1, 0}) < 1e-14);
    }

    // m = 0 freezes X_0 at x(0).
    const auto x = tone(cplx{0.3, -0.2}, 1.1);
    const auto v0 = partial_spectrum(x, 0, grid);
    for (Eigen::Index i = 0; i < v0.size(); ++i)
        CHECK(std::abs(v0[i] - x.sample(0)) < 1e-15);

    // Pure tone: Dirichlet-type closed form.
    const double w0 = 0.8;
    const auto t1 = tone(cplx{1, 0}, w0);
    for (long m : {1L, 4L, 9L}) {
        const auto vals = partial_spectrum(t1, m, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(std::abs(vals[i] - oracles::dirichlet(m, w0 - grid[i])) < 1e-11);
    }

    // Window too small.
    CHECK_THROWS_AS(partial_spectrum(delta, 11, grid), invalid_input);
}

TEST_CASE("modulation shifts tones and matches pointwise products") {
    const auto x = SignalSource::from_exp_sum(
        {ExpSumTerm{cplx{1, 0}, 0.4}, ExpSumTerm{cplx{0, 0.5}, 3.0}});
    const double d = 0.7;
    const auto y = modulate(x, d);
    CHECK(std::abs(y.exp_sum().terms[0].omega - 1.1) < 1e-15);
    CHECK(std::abs(y.exp_sum().terms[1].omega - wrap_angle(3.7)) < 1e-15);
    for (long t = -5; t <= 5; ++t)
        CHECK(std::abs(y.sample(t) - unit_phasor(d * t) * x.sample(t)) < 1e-13);

    Eigen::VectorXcd v(9);
    for (int i = 0; i < 9; ++i) v[i] = cplx{0.1 * i, -0.2};
    const auto xs = SignalSource::from_samples(-4, v);
    const auto ys = modulate(xs, -1.3);
    for (long t = -4; t <= 4; ++t)
        CHECK(std::abs(ys.sample(t) - unit_phasor(-1.3 * t) * xs.sample(t)) < 1e-14);
}

TEST_CASE("quadrature density source is stable and periodic by construction") {
    auto density = [](double w) { return cplx{std::exp(std::cos(w)), 0.0}; };
    const auto x = SignalSource::from_density(density, 256);
    CHECK(x.sample_error() < 1e-12);
    // x(0) = (1/2pi) \int e^{cos w} dw = I_0(1) = 1.2660658777520084.
    CHECK(std::abs(x.sample(0) - cplx{1.2660658777520084, 0.0}) < 1e-12);
    CHECK(std::abs(x.sample(256) - x.sample(0)) == 0.0);  // interpolant period
    CHECK(x.sup_bound() >= std::abs(x.sample(0)));
}
