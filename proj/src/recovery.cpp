#include "linfdsp/recovery.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace linfdsp {

MissingSet MissingSet::of(std::vector<long> ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return MissingSet{std::move(ts)};
}

bool MissingSet::contains(long t) const {
    return std::binary_search(indices.begin(), indices.end(), t);
}

AssembledSystem assemble_constraints(const RecoveryProblem& p) {
    const auto& missing = p.observed.missing();
    const auto& bank = p.gap.bank();
    AssembledSystem sys;
    sys.times = missing.indices;
    const long m = static_cast<long>(missing.size());
    if (m == 0) {
        sys.A.resize(0, 0);
        sys.b.resize(0);
        return sys;
    }
    if (bank.empty()) throw invalid_input("assemble_constraints: empty test bank");
    const long nb = static_cast<long>(bank.size());
    const long rows_per_bump = p.mode == RecoveryMode::full ? 2 : 1;
    if (nb * rows_per_bump < 2 * m)
        throw invalid_input("assemble_constraints: bank too small, " + std::to_string(nb) +
                            " bumps give " + std::to_string(nb * rows_per_bump) +
                            " constraints for " + std::to_string(2 * m) + " real unknowns");

    sys.A.resize(nb * rows_per_bump, 2 * m);
    sys.b.resize(nb * rows_per_bump);
    const SignalSource& src = p.observed.source();
    double rhs_err = 0.0;
    for (long j = 0; j < nb; ++j) {
        const WienerFunction& f = bank[j];
        // Observed samples must reach the bump's whole support (minus M).
        if (src.is_samples()) {
            for (long t : {f.k_min(), f.k_max()})
                if (!missing.contains(t) && !src.covers(t, t))
                    throw invalid_input(
                        "assemble_constraints: sample window does not cover the test "
                        "support; right-hand side would be truncated without a bound");
        }
        KahanCSum rhs;
        for (long t = f.k_min(); t <= f.k_max(); ++t) {
            if (missing.contains(t)) continue;
            const cplx ft = f.coeff(t);
            if (ft != cplx{0.0, 0.0}) rhs.add(p.observed.sample(t) * ft);
        }
        const cplx bj = -rhs.value();
        rhs_err = std::max(rhs_err, src.sample_error() * f.norm_a());

        // Row layout over u = [Re x(t); Im x(t)]:
        //   Re <X_M, f> = sum Re(x_t) Re(f_t) - Im(x_t) Im(f_t)
        //   Im <X_M, f> = sum Re(x_t) Im(f_t) + Im(x_t) Re(f_t)
        auto fill = [&](long row, bool imag_part) {
            for (long i = 0; i < m; ++i) {
                const cplx ft = f.coeff(missing.indices[static_cast<std::size_t>(i)]);
                if (!imag_part) {
                    sys.A(row, i) = ft.real();
                    sys.A(row, m + i) = -ft.imag();
                } else {
                    sys.A(row, i) = ft.imag();
                    sys.A(row, m + i) = ft.real();
                }
            }
            sys.b[row] = imag_part ? bj.imag() : bj.real();
        };
        switch (p.mode) {
            case RecoveryMode::full:
                fill(2 * j, false);
                fill(2 * j + 1, true);
                break;
            case RecoveryMode::real_part:
                fill(j, false);
                break;
            case RecoveryMode::imag_part:
                fill(j, true);
                break;
        }
    }
    sys.rhs_error_bound = rhs_err;
    return sys;
}

RecoveryResult recover_missing(const RecoveryProblem& p) {
    if (!(p.ridge >= 0.0)) throw invalid_input("recover_missing: ridge must be nonnegative");
    const AssembledSystem sys = assemble_constraints(p);
    RecoveryResult res;
    res.times = sys.times;
    const long m = static_cast<long>(sys.times.size());
    if (m == 0) return res;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    res.sigma_min = sv[sv.size() - 1];
    res.condition = res.sigma_min > 0.0
                        ? sv[0] / res.sigma_min
                        : std::numeric_limits<double>::infinity();
    res.ambiguous = res.sigma_min * res.sigma_min <= 100.0 * p.ridge || res.sigma_min <= 1e-12;

    // Tikhonov solution through the SVD: u = V diag(s/(s^2+ridge)) U^T b.
    Eigen::VectorXd proj = svd.matrixU().transpose() * sys.b;
    for (Eigen::Index i = 0; i < proj.size(); ++i)
        proj[i] *= sv[i] / (sv[i] * sv[i] + p.ridge);
    const Eigen::VectorXd u = svd.matrixV() * proj;

    res.values.resize(m);
    for (long i = 0; i < m; ++i) res.values[i] = cplx{u[i], u[m + i]};
    res.residual = (sys.A * u - sys.b).cwiseAbs().maxCoeff();
    return res;
}

namespace {

double solution_distance(const RecoveryResult& a, const RecoveryResult& b) {
    double d = 0.0, scale = 1.0;
    for (Eigen::Index i = 0; i < a.values.size(); ++i) {
        d = std::max(d, std::abs(a.values[i] - b.values[i]));
        scale = std::max({scale, std::abs(a.values[i]), std::abs(b.values[i])});
    }
    return d / scale;
}

}  // namespace

VariantReport recover_variants(const MaskedSignal& observed, double omega_measure,
                               const std::vector<Interval>& gap_grid,
                               const VariantOptions& opts) {
    if (!(omega_measure > 0.0 && omega_measure <= kTwoPi))
        throw invalid_input("recover_variants: gap measure must be in (0, 2pi]");
    VariantReport report;
    report.bound = static_cast<int>(std::floor(kTwoPi / omega_measure + 1e-9));
    for (const auto& iv : gap_grid)
        if (iv.length() < omega_measure - 1e-12)
            throw invalid_input("recover_variants: candidate interval narrower than the "
                                "stated gap measure");

    // Candidate solves are independent; run them concurrently and assemble
    // in grid order.
    auto solve_one = [&](const Interval& iv) -> VariantReport::Candidate {
        VariantReport::Candidate c;
        c.gap = iv;
        SpectralGap gap = make_gap_bank({iv}, opts.n_bumps, opts.bump_half_width,
                                        /*audit_n=*/256);
        RecoveryProblem prob{observed, std::move(gap), opts.mode, opts.ridge};
        c.result = recover_missing(prob);
        c.accepted = !c.result.ambiguous && c.result.residual <= opts.residual_tol;
        return c;
    };
    report.candidates = parallel_map(gap_grid, solve_one);

    for (auto& c : report.candidates) {
        if (!c.accepted) continue;
        int found = -1;
        for (std::size_t d = 0; d < report.distinct.size(); ++d) {
            if (solution_distance(c.result, report.distinct[d]) <= opts.cluster_rel_tol) {
                found = static_cast<int>(d);
                break;
            }
        }
        if (found < 0) {
            report.distinct.push_back(c.result);
            found = static_cast<int>(report.distinct.size()) - 1;
        }
        c.cluster = found;
    }
    report.distinct_count = static_cast<int>(report.distinct.size());
    report.bound_satisfied = report.distinct_count <= report.bound;
    return report;
}

}  // namespace linfdsp
