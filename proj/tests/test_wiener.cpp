#include <doctest.h>

#include "linfdsp/wiener.hpp"
#include "oracles.hpp"

using namespace linfdsp;

TEST_CASE("make_wiener: norms from coefficient magnitudes") {
    CHECK(make_wiener({{0, cplx{1, 0}}}).norm_a() == doctest::Approx(1.0).epsilon(1e-15));

    const auto cosw = make_wiener({{1, cplx{0.5, 0}}, {-1, cplx{0.5, 0}}});
    CHECK(cosw.norm_a() == doctest::Approx(1.0).epsilon(1e-15));

    // Trapezoid coefficients truncated at K=64 against a direct magnitude sum.
    const double p = kPi / 4, q = kPi / 2;
    std::map<long, cplx> tz;
    double direct = 0.0;
    for (long k = -64; k <= 64; ++k) {
        tz[k] = cplx{oracles::trapezoid_coeff(p, q, k), 0.0};
        direct += std::abs(oracles::trapezoid_coeff(p, q, k));
    }
    CHECK(make_wiener(tz).norm_a() == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("make_wiener: rejects non-finite coefficients, reporting the index") {
    std::map<long, cplx> bad{{3, cplx{1, 0}}, {-7, cplx{std::nan(""), 0}}};
    CHECK_THROWS_WITH_AS(make_wiener(bad),
                         doctest::Contains("-7"), invalid_input);
}

TEST_CASE("evaluate") {
    CHECK(std::abs(evaluate(make_wiener({{0, cplx{1, 0}}}), 0.3) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(evaluate(WienerFunction::basis(1), kPi / 2) - cplx{0, 1}) < 1e-15);

    // Truncated trapezoid at w=0 reaches the profile value 1 within the tail.
    const double p = kPi / 4, q = kPi / 2;
    const int K = 256;
    std::map<long, cplx> tz;
    for (long k = -K; k <= K; ++k) tz[k] = cplx{oracles::trapezoid_coeff(p, q, k), 0.0};
    double tail = 0.0;
    for (long k = K + 1; k <= 20 * K; ++k)
        tail += 2.0 * std::abs(oracles::trapezoid_coeff(p, q, k));
    tail += 4.0 / (kPi * (q - p) * (20.0 * K));
    const auto f = make_wiener(tz);
    CHECK(std::abs(evaluate(f, 0.0) - cplx{1, 0}) <= tail);
    CHECK(std::abs(evaluate(f, 0.0) - cplx{1, 0}) > 0.0);  // truncation is visible

    // |f(w)| <= norm_a everywhere.
    for (double w : {-3.0, -0.4, 0.0, 1.3, kPi})
        CHECK(std::abs(evaluate(f, w)) <= f.norm_a() + 1e-14);
}

TEST_CASE("product: identity, index addition, convolution oracle") {
    std::mt19937_64 eng(41);
    const auto g = make_wiener(oracles::random_sparse(eng, 12, 20));
    const auto one = make_wiener({{0, cplx{1, 0}}});
    const auto idg = product(one, g);
    for (long k = g.k_min(); k <= g.k_max(); ++k)
        CHECK(std::abs(idg.coeff(k) - g.coeff(k)) < 1e-15);

    const auto shift = product(WienerFunction::basis(1), WienerFunction::basis(2));
    CHECK(shift.k_min() == 3);
    CHECK(shift.k_max() == 3);
    CHECK(std::abs(shift.coeff(3) - cplx{1, 0}) < 1e-15);

    for (int rep = 0; rep < 40; ++rep) {
        const auto ma = oracles::random_sparse(eng, 64, 100);
        const auto mb = oracles::random_sparse(eng, 64, 100);
        const auto fa = make_wiener(ma), fb = make_wiener(mb);
        const auto fc = product(fa, fb);
        CHECK(fc.norm_a() <= fa.norm_a() * fb.norm_a() + 1e-12);
        const auto ref = oracles::convolve(ma, mb);
        for (const auto& [k, v] : ref) CHECK(std::abs(fc.coeff(k) - v) < 1e-12);
    }
}

TEST_CASE("sobolev embedding bound") {
    // Independent series value: C^2 = pi * coth(pi).
    const double c2_ref = kPi * (std::cosh(kPi) / std::sinh(kPi));
    const double C = embedding_constant();
    CHECK(std::abs(C * C - c2_ref) < 1e-12);
    CHECK(C == doctest::Approx(1.7757669033229452).epsilon(1e-12));

    const auto cosw = make_wiener({{1, cplx{0.5, 0}}, {-1, cplx{0.5, 0}}});
    CHECK(sobolev_norm(cosw) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(embedding_bound(cosw) == doctest::Approx(C).epsilon(1e-14));
    CHECK(embedding_bound(cosw) >= cosw.norm_a());

    const auto unit = make_wiener({{0, cplx{1, 0}}});
    CHECK(embedding_bound(unit) == doctest::Approx(C).epsilon(1e-14));
    CHECK(embedding_bound(unit) >= 1.0);

    std::mt19937_64 eng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const auto f = make_wiener(oracles::random_sparse(eng, 40, 60));
        CHECK(f.norm_a() <= embedding_bound(f) * (1.0 + 1e-13) + 1e-13);
    }
}
