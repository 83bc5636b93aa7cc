#include "linfdsp/csv.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace linfdsp {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& column, long line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw invalid_input("csv line " + std::to_string(line_no) + ": column '" + column +
                            "' is not a number: '" + s + "'");
    }
}

long parse_long(const std::string& s, const std::string& column, long line_no) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw invalid_input("csv line " + std::to_string(line_no) + ": column '" + column +
                            "' is not an integer: '" + s + "'");
    }
}

struct Table {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::pair<long, std::vector<std::string>>> rows;  // (line_no, cells)

    long column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<long>(i);
        throw invalid_input("csv: missing column '" + name + "'");
    }
};

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("csv: cannot open " + path.string());
    Table t;
    std::string line;
    long line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                while (!key.empty() && key.front() == ' ') key.erase(key.begin());
                while (!key.empty() && key.back() == ' ') key.pop_back();
                t.metadata[key] = line.substr(eq + 1);
            }
            continue;
        }
        if (!have_header) {
            t.header = split(line);
            have_header = true;
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.header.size())
            throw invalid_input("csv line " + std::to_string(line_no) + ": expected " +
                                std::to_string(t.header.size()) + " cells, got " +
                                std::to_string(cells.size()));
        t.rows.emplace_back(line_no, std::move(cells));
    }
    if (!have_header) throw invalid_input("csv: no header row in " + path.string());
    return t;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw invalid_input("csv: cannot write " + path.string());
    return out;
}

void write_metadata(std::ofstream& out, const std::map<std::string, std::string>& metadata) {
    for (const auto& [k, v] : metadata) out << "# " << k << "=" << v << "\n";
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_signal_csv(const std::filesystem::path& path, const SignalSource& x, long t_min,
                      long t_max, const std::map<std::string, std::string>& metadata) {
    if (t_max < t_min) throw invalid_input("write_signal_csv: empty window");
    x.require_coverage(t_min, t_max, "write_signal_csv");
    auto out = open_out(path);
    write_metadata(out, metadata);
    out << "t,re,im\n";
    for (long t = t_min; t <= t_max; ++t) {
        const cplx v = x.sample(t);
        out << t << "," << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
    }
}

SignalCsv read_signal_csv(const std::filesystem::path& path) {
    const Table t = read_table(path);
    const long ct = t.column("t"), cre = t.column("re"), cim = t.column("im");
    if (t.rows.empty()) throw invalid_input("csv: no data rows in " + path.string());
    std::map<long, cplx> vals;
    for (const auto& [ln, cells] : t.rows) {
        const long tt = parse_long(cells[ct], "t", ln);
        if (vals.count(tt))
            throw invalid_input("csv line " + std::to_string(ln) + ": duplicate t=" +
                                std::to_string(tt));
        vals[tt] = cplx{parse_double(cells[cre], "re", ln), parse_double(cells[cim], "im", ln)};
    }
    const long lo = vals.begin()->first, hi = vals.rbegin()->first;
    SignalCsv out;
    out.metadata = t.metadata;
    out.zero_filled = vals.size() != static_cast<std::size_t>(hi - lo + 1);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(hi - lo + 1);
    for (const auto& [tt, z] : vals) v[tt - lo] = z;
    out.signal = SignalSource::from_samples(lo, std::move(v));
    return out;
}

void write_kernel_csv(const std::filesystem::path& path, const Kernel& h) {
    auto out = open_out(path);
    std::map<std::string, std::string> meta;
    meta["tail_bound"] = h.tail_bound() ? format_double(*h.tail_bound()) : "unknown";
    meta["tail_is_estimate"] = h.tail_is_estimate() ? "true" : "false";
    meta["coeff_error"] = format_double(h.coeff_error());
    switch (h.causal().kind) {
        case Causality::Kind::proven: meta["causal"] = "proven"; break;
        case Causality::Kind::numeric:
            meta["causal"] = "numeric " + format_double(h.causal().tolerance);
            break;
        case Causality::Kind::no: meta["causal"] = "no"; break;
    }
    write_metadata(out, meta);
    out << "k,re,im\n";
    for (long k = h.k_min(); k <= h.k_max(); ++k) {
        const cplx v = h.coeff(k);
        out << k << "," << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
    }
}

Kernel read_kernel_csv(const std::filesystem::path& path) {
    const Table t = read_table(path);
    const long ck = t.column("k"), cre = t.column("re"), cim = t.column("im");
    if (t.rows.empty()) throw invalid_input("csv: no kernel rows in " + path.string());
    std::map<long, cplx> vals;
    for (const auto& [ln, cells] : t.rows)
        vals[parse_long(cells[ck], "k", ln)] =
            cplx{parse_double(cells[cre], "re", ln), parse_double(cells[cim], "im", ln)};
    const long lo = vals.begin()->first, hi = vals.rbegin()->first;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(hi - lo + 1);
    for (const auto& [k, z] : vals) c[k - lo] = z;

    std::optional<double> tail;
    bool tail_estimate = false;
    double coeff_error = 0.0;
    Causality causal{Causality::Kind::no, 0.0};
    if (auto it = t.metadata.find("tail_bound"); it != t.metadata.end() && it->second != "unknown")
        tail = parse_double(it->second, "tail_bound", 0);
    if (auto it = t.metadata.find("tail_is_estimate"); it != t.metadata.end())
        tail_estimate = it->second == "true";
    if (auto it = t.metadata.find("coeff_error"); it != t.metadata.end())
        coeff_error = parse_double(it->second, "coeff_error", 0);
    if (auto it = t.metadata.find("causal"); it != t.metadata.end()) {
        if (it->second == "proven") {
            causal = {Causality::Kind::proven, 0.0};
        } else if (it->second.rfind("numeric ", 0) == 0) {
            causal = {Causality::Kind::numeric,
                      parse_double(it->second.substr(8), "causal", 0)};
        }
    }
    return Kernel(lo, std::move(c), tail, coeff_error, causal, tail_estimate);
}

void write_wiener_csv(const std::filesystem::path& path, const WienerFunction& f,
                      const std::map<std::string, std::string>& metadata) {
    auto out = open_out(path);
    write_metadata(out, metadata);
    out << "k,re,im\n";
    for (long k = f.k_min(); k <= f.k_max(); ++k) {
        const cplx v = f.coeff(k);
        out << k << "," << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
    }
}

WienerFunction read_wiener_csv(const std::filesystem::path& path) {
    const Table t = read_table(path);
    const long ck = t.column("k"), cre = t.column("re"), cim = t.column("im");
    std::map<long, cplx> vals;
    for (const auto& [ln, cells] : t.rows)
        vals[parse_long(cells[ck], "k", ln)] =
            cplx{parse_double(cells[cre], "re", ln), parse_double(cells[cim], "im", ln)};
    return make_wiener(vals);
}

void write_prediction_csv(const std::filesystem::path& path,
                          const std::vector<PredictionRow>& rows,
                          const std::map<std::string, std::string>& metadata) {
    auto out = open_out(path);
    write_metadata(out, metadata);
    out << "t,re_x,im_x,re_xhat,im_xhat,err\n";
    for (const auto& r : rows)
        out << r.t << "," << format_double(r.x.real()) << "," << format_double(r.x.imag())
            << "," << format_double(r.xhat.real()) << "," << format_double(r.xhat.imag())
            << "," << format_double(r.err) << "\n";
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows,
                     const std::map<std::string, std::string>& metadata) {
    auto out = open_out(path);
    write_metadata(out, metadata);
    out << "gamma,r,omega0,measured_err,oracle_err,kernel_tail\n";
    for (const auto& r : rows)
        out << format_double(r.gamma) << "," << format_double(r.r) << ","
            << format_double(r.omega0) << "," << format_double(r.measured_err) << ","
            << format_double(r.oracle_err) << "," << format_double(r.kernel_tail) << "\n";
}

void write_recovery_csv(const std::filesystem::path& path,
                        const std::vector<RecoveryRow>& rows,
                        const std::map<std::string, std::string>& metadata) {
    auto out = open_out(path);
    write_metadata(out, metadata);
    out << "t,re,im,residual\n";
    for (const auto& r : rows)
        out << r.t << "," << format_double(r.value.real()) << ","
            << format_double(r.value.imag()) << "," << format_double(r.residual) << "\n";
}

}  // namespace linfdsp
