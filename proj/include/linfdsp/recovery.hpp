// recovery.hpp — missing samples under a spectral-gap hypothesis.
//
// For a gap D of the signal's spectrum and a finite missing set M, every
// test function f supported in D yields one linear constraint on the
// unknown values:
//
//   sum_{t in M} x(t) f_t  =  - sum_{t not in M} x(t) f_t
//
// (the pairing <X, f> vanishes, and supp(f_t) is finite, so the right side
// uses observed samples only).  With a bank of real-valued bumps this is a
// small linear system, solved here as ridge-regularized least squares over
// the real unknowns (Re x(t), Im x(t)).
//
// Modes mirror the three gap classes: a full gap constrains the whole
// pairing (two real rows per bump); a gap of only the real (imaginary)
// spectral part constrains only Re <X,f> (Im <X,f>) for real-valued bumps,
// one row per bump.

#pragma once

#include "linfdsp/transfer.hpp"

namespace linfdsp {

struct MissingSet {
    std::vector<long> indices;  // sorted, unique

    static MissingSet of(std::vector<long> ts);
    bool contains(long t) const;
    std::size_t size() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
};

// Observed data: a source with the missing positions masked off.  Reading a
// masked position throws.
class MaskedSignal {
  public:
    MaskedSignal(SignalSource src, MissingSet missing)
        : src_(std::move(src)), missing_(std::move(missing)) {}

    cplx sample(long t) const {
        if (missing_.contains(t))
            throw invalid_input("MaskedSignal: t=" + std::to_string(t) + " is masked");
        return src_.sample(t);
    }
    bool observable(long t) const { return !missing_.contains(t) && src_.covers(t, t); }
    const SignalSource& source() const { return src_; }
    const MissingSet& missing() const { return missing_; }

  private:
    SignalSource src_;
    MissingSet missing_;
};

enum class RecoveryMode { full, real_part, imag_part };

struct RecoveryProblem {
    MaskedSignal observed;
    SpectralGap gap;
    RecoveryMode mode = RecoveryMode::full;
    double ridge = 1e-10;
};

// Real-packed system: unknowns [Re x(t_1..t_m), Im x(t_1..t_m)].
struct AssembledSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    std::vector<long> times;
    double rhs_error_bound = 0.0;  // from per-sample error of the observed source
};

AssembledSystem assemble_constraints(const RecoveryProblem& p);

struct RecoveryResult {
    std::vector<long> times;
    Eigen::VectorXcd values;
    double residual = 0.0;   // max constraint violation at the solution
    double condition = 0.0;  // sigma_max / sigma_min of the constraint matrix
    double sigma_min = 0.0;
    bool ambiguous = false;  // rank deficiency beyond what the ridge absorbs
};

RecoveryResult recover_missing(const RecoveryProblem& p);

// Enumeration when only the gap's measure Omega is known: solve once per
// candidate interval, keep the small-residual solutions, and cluster them.
// The number of distinct clusters is checked against floor(2 pi / Omega).
struct VariantOptions {
    int n_bumps = 8;
    int bump_half_width = 1024;     // bank truncation K
    double ridge = 1e-10;
    double residual_tol = 1e-5;     // acceptance threshold on the solve residual
    double cluster_rel_tol = 1e-4;  // relative max-norm distance merging solutions
    RecoveryMode mode = RecoveryMode::full;
};

struct VariantReport {
    struct Candidate {
        Interval gap;
        RecoveryResult result;
        bool accepted = false;
        int cluster = -1;  // index among distinct solutions, -1 if rejected
    };
    std::vector<Candidate> candidates;
    std::vector<RecoveryResult> distinct;
    int distinct_count = 0;
    int bound = 0;  // floor(2 pi / Omega)
    bool bound_satisfied = true;
};

VariantReport recover_variants(const MaskedSignal& observed, double omega_measure,
                               const std::vector<Interval>& gap_grid,
                               const VariantOptions& opts = {});

}  // namespace linfdsp
