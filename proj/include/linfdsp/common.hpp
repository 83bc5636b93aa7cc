// common.hpp — shared scalar type, error taxonomy, compensated sums, RNG.
//
// All numerics run on std::complex<double>.  Real-signal handling is a view
// on complex data, never a separate type.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace linfdsp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error taxonomy. invalid_input maps to CLI exit code 2 (bad configuration or
// malformed data), numeric_failure to exit code 1 (a numerical guard tripped).
struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double w) {
    w = std::fmod(w, kTwoPi);
    if (w <= -kPi) w += kTwoPi;
    if (w > kPi) w -= kTwoPi;
    return w;
}

inline cplx unit_phasor(double w) { return {std::cos(w), std::sin(w)}; }

// Neumaier compensated accumulator. Keeps long convolution sums accurate to
// ~eps * sum |terms| instead of growing with the term count.
class KahanSum {
  public:
    void add(double x) {
        double t = s_ + x;
        if (std::abs(s_) >= std::abs(x))
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

class KahanCSum {
  public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_, im_;
};

// Deterministic random stream. mt19937_64 with an explicit 53-bit mapping to
// doubles, so identical seeds replay bit-identically on every platform
// (std::uniform_real_distribution makes no such promise).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1].
    double symmetric() { return 2.0 * unit() - 1.0; }

    // Uniform in the complex unit box [-1,1] x i[-1,1].
    cplx box() {
        double re = symmetric();
        double im = symmetric();
        return {re, im};
    }

  private:
    std::mt19937_64 eng_;
};

// Apply fn to every item, possibly concurrently; results are assembled in
// input order so the reduction is independent of scheduling.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F&& fn)
    -> std::vector<decltype(fn(items.front()))> {
    using R = decltype(fn(items.front()));
    std::vector<std::future<R>> futs;
    futs.reserve(items.size());
    for (const T& it : items)
        futs.push_back(std::async(std::launch::async, [&fn, &it] { return fn(it); }));
    std::vector<R> out;
    out.reserve(items.size());
    for (auto& f : futs) out.push_back(f.get());
    return out;
}

}  // namespace linfdsp
