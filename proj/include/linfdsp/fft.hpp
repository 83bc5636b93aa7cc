// fft.hpp — uniform-rule Fourier quadrature on the standard grid.
//
// Grid convention: w_j = -pi + 2*pi*j/N, j = 0..N-1 (N even).  For samples
// F_j = F(w_j), the table
//
//   T[m] = (1/N) sum_j F_j e^{i w_j m} = (-1)^m * IDFT(F)[m]
//
// gives the N-point quadrature of (1/2pi) \int F(w) e^{iwm} dw for any
// integer m congruent to the table index mod N.  The rule is exact for
// trigonometric polynomials of degree < N and spectrally accurate for
// smooth periodic integrands.

#pragma once

#include <Eigen/Core>

#include "linfdsp/common.hpp"

namespace linfdsp {

inline double grid_omega(int j, int n) {
    return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

// T as above; index m in [0, N) stands for all integers congruent to m mod N.
Eigen::VectorXcd quadrature_table(const Eigen::VectorXcd& samples);

}  // namespace linfdsp
