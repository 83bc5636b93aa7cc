// csv.hpp — file interchange.
//
// Signal files: optional '# key=value' metadata lines, a 't,re,im' header,
// then one row per sample, values printed with 17 significant digits so a
// write/read round trip is bit-identical.  Readers accept non-contiguous t:
// the window becomes [min t, max t] with explicit zero fill, and the policy
// is flagged in the metadata of anything derived from such a file.

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "linfdsp/transfer.hpp"

namespace linfdsp {

std::string format_double(double v);

struct SignalCsv {
    SignalSource signal;
    std::map<std::string, std::string> metadata;
    bool zero_filled = false;  // input had gaps in t
};

void write_signal_csv(const std::filesystem::path& path, const SignalSource& x, long t_min,
                      long t_max, const std::map<std::string, std::string>& metadata = {});
SignalCsv read_signal_csv(const std::filesystem::path& path);

// Kernel files carry the tail bound and causality status on metadata lines
// above a 'k,re,im' table.
void write_kernel_csv(const std::filesystem::path& path, const Kernel& h);
Kernel read_kernel_csv(const std::filesystem::path& path);

// Coefficient tables for algebra elements share the 'k,re,im' layout.
void write_wiener_csv(const std::filesystem::path& path, const WienerFunction& f,
                      const std::map<std::string, std::string>& metadata = {});
WienerFunction read_wiener_csv(const std::filesystem::path& path);

struct PredictionRow {
    long t;
    cplx x;
    cplx xhat;
    double err;
};
void write_prediction_csv(const std::filesystem::path& path,
                          const std::vector<PredictionRow>& rows,
                          const std::map<std::string, std::string>& metadata = {});

struct SweepRow {
    double gamma;
    double r;
    double omega0;
    double measured_err;
    double oracle_err;
    double kernel_tail;
};
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     const std::map<std::string, std::string>& metadata = {});

struct RecoveryRow {
    long t;
    cplx value;
    double residual;
};
void write_recovery_csv(const std::filesystem::path& path,
                        const std::vector<RecoveryRow>& rows,
                        const std::map<std::string, std::string>& metadata = {});

}  // namespace linfdsp
