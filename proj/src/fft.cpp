#include "linfdsp/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace linfdsp {

Eigen::VectorXcd quadrature_table(const Eigen::VectorXcd& samples) {
    const int n = static_cast<int>(samples.size());
    if (n <= 0 || (n & (n - 1)) != 0)
        throw invalid_input("quadrature_table: size must be a power of two");
    std::vector<cplx> in(samples.data(), samples.data() + n);
    std::vector<cplx> out(n);
    Eigen::FFT<double> fft;
    fft.inv(out, in);  // out[m] = (1/N) sum_j in[j] e^{+2 pi i j m / N}
    Eigen::VectorXcd table(n);
    for (int m = 0; m < n; ++m) table[m] = (m % 2 == 0) ? out[m] : -out[m];
    return table;
}

}  // namespace linfdsp
