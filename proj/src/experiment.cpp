#include "linfdsp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "linfdsp/csv.hpp"
#include "linfdsp/generators.hpp"
#include "linfdsp/predictor.hpp"
#include "linfdsp/recovery.hpp"
#include "linfdsp/svg.hpp"

namespace linfdsp {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw invalid_input(std::string("config: missing field '") + field + "'");
    return *it;
}

template <class T>
T get_or(const json& j, const char* field, T fallback) {
    auto it = j.find(field);
    if (it == j.end()) return fallback;
    return it->get<T>();
}

std::vector<Interval> parse_intervals(const json& j) {
    std::vector<Interval> out;
    for (const auto& iv : j) {
        if (!iv.is_array() || iv.size() != 2)
            throw invalid_input("config: interval must be a [a, b] pair");
        out.push_back(Interval{iv[0].get<double>(), iv[1].get<double>()});
    }
    if (out.empty()) throw invalid_input("config: empty interval list");
    return out;
}

SpectralGap parse_gap(const json& j) {
    const auto intervals = parse_intervals(require(j, "intervals"));
    const int bumps = get_or(j, "bumps", 12);
    const int K = get_or(j, "K", 4096);
    return make_gap_bank(intervals, bumps, K);
}

std::map<std::string, std::string> seed_meta(std::uint64_t seed) {
    return {{"seed", std::to_string(seed)}};
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

struct Window {
    long t_min, t_max;
};

Window parse_window(const json& j) {
    Window w{require(j, "t_min").get<long>(), require(j, "t_max").get<long>()};
    if (w.t_max < w.t_min) throw invalid_input("config: window has t_max < t_min");
    return w;
}

}  // namespace

ExperimentKind parse_kind(const std::string& name) {
    if (name == "gen") return ExperimentKind::gen;
    if (name == "filter" || name == "filter-demo") return ExperimentKind::filter;
    if (name == "predict" || name == "predict-sweep") return ExperimentKind::predict;
    if (name == "recover") return ExperimentKind::recover;
    if (name == "recover-variants") return ExperimentKind::recover_variants;
    if (name == "spectrum") return ExperimentKind::spectrum;
    throw invalid_input("config: unknown experiment kind '" + name + "'");
}

SignalSource build_signal(const json& spec, std::uint64_t default_seed) {
    const std::string type = require(spec, "type").get<std::string>();
    if (type == "exp_sum") {
        std::vector<ExpSumTerm> terms;
        for (const auto& t : require(spec, "terms"))
            terms.push_back(ExpSumTerm{
                cplx{get_or(t, "alpha_re", 0.0), get_or(t, "alpha_im", 0.0)},
                require(t, "omega").get<double>()});
        return gen_exp_sum(std::move(terms));
    }
    if (type == "filtered_noise") {
        const auto seed = get_or<std::uint64_t>(spec, "seed", default_seed);
        return gen_filtered_noise(seed, require(spec, "p").get<double>(),
                                  require(spec, "q").get<double>(), get_or(spec, "K", 256),
                                  require(spec, "t_min").get<long>(),
                                  require(spec, "t_max").get<long>())
            .signal;
    }
    if (type == "degenerate_density") {
        return gen_degenerate(require(spec, "omega_hat").get<double>(),
                              require(spec, "c").get<double>(),
                              require(spec, "q_exp").get<double>(), unit_profile,
                              get_or(spec, "N", 1 << 14));
    }
    if (type == "csv") {
        return read_signal_csv(require(spec, "path").get<std::string>()).signal;
    }
    throw invalid_input("config: unknown signal type '" + type + "'");
}

namespace {

ExperimentSummary run_gen(const json& cfg, const std::filesystem::path& out,
                          std::uint64_t seed) {
    ExperimentSummary s{ExperimentKind::gen, seed, {}};
    const SignalSource x = build_signal(require(cfg, "signal"), seed);
    const Window w = parse_window(require(cfg, "window"));
    write_signal_csv(out / "signal.csv", x, w.t_min, w.t_max, seed_meta(seed));
    s.files.push_back("signal.csv");

    json cert;
    cert["seed"] = seed;
    if (cfg.contains("certify")) {
        const json& c = cfg["certify"];
        if (c.contains("gap")) {
            const SpectralGap gap = parse_gap(c["gap"]);
            const GapResidual gr = gap_residual(x, gap);
            cert["gap"] = {{"residual", gr.residual},
                           {"leakage_slack", gr.leakage_slack},
                           {"bank_leakage", gap.bank_leakage()}};
        }
        if (c.contains("degeneracy")) {
            const json& d = c["degeneracy"];
            DegeneracyWeight wd{require(d, "omega_hat").get<double>(),
                                require(d, "c").get<double>(),
                                require(d, "q_exp").get<double>(), 0.5};
            const auto nu = require(d, "nu").get<std::vector<double>>();
            const auto sweep = degeneracy_norm(x, wd, nu, get_or(d, "K", 512),
                                               get_or(d, "N", 1 << 13),
                                               get_or(d, "t_min", -64L),
                                               get_or(d, "t_max", 64L));
            cert["degeneracy"] = {{"nu", sweep.nu_list},
                                  {"values", sweep.values},
                                  {"error_bars", sweep.error_bars},
                                  {"divergent", sweep.divergent}};
        }
    }
    write_json(out / "certification.json", cert);
    s.files.push_back("certification.json");
    if (get_or(cfg, "svg", false)) {
        SvgSeries mag{"|x(t)|", {}};
        for (long t = w.t_min; t <= w.t_max; ++t)
            mag.points.emplace_back(double(t), std::abs(x.sample(t)));
        svg_line_chart(out / "signal.svg", "generated signal", {mag});
        s.files.push_back("signal.svg");
    }
    return s;
}

ExperimentSummary run_filter(const json& cfg, const std::filesystem::path& out,
                             std::uint64_t seed) {
    ExperimentSummary s{ExperimentKind::filter, seed, {}};
    const SignalSource x = build_signal(require(cfg, "signal"), seed);
    const double p = require(cfg, "p").get<double>();
    const double q = require(cfg, "q").get<double>();
    const int K = get_or(cfg, "K", 256);
    const Window w = parse_window(require(cfg, "window"));

    const Kernel h = trapezoid_kernel(p, q, K);
    write_kernel_csv(out / "kernel.csv", h);
    s.files.push_back("kernel.csv");

    const BandLimited filtered = gen_band_limited(x, p, q, K, w.t_min, w.t_max);
    write_signal_csv(out / "filtered.csv", filtered.signal, w.t_min, w.t_max,
                     seed_meta(seed));
    s.files.push_back("filtered.csv");

    json rep;
    rep["seed"] = seed;
    rep["tail_bound"] = filtered.tail_bound;
    // Certify the advertised stop-band gap of the output.  Sampled outputs
    // cap the test-bank width at what the window can pair against.
    int ck = get_or(cfg, "certify_K", 2048);
    if (filtered.signal.is_samples())
        ck = static_cast<int>(std::min<long>(ck, std::min(-w.t_min, w.t_max)));
    if (ck >= 16) {
        const double lo = std::min(q + 0.05, kPi - 0.1);
        const SpectralGap stop = make_gap_bank(
            {Interval{-kPi, -lo}, Interval{lo, kPi}}, get_or(cfg, "certify_bumps", 6), ck);
        const GapResidual gr = gap_residual(filtered.signal, stop);
        rep["stop_band_residual"] = gr.residual;
        rep["leakage_slack"] = gr.leakage_slack;
    } else {
        rep["stop_band_residual"] = nullptr;
        rep["note"] = "window too small for a stop-band certification bank";
    }
    write_json(out / "filter_report.json", rep);
    s.files.push_back("filter_report.json");

    if (get_or(cfg, "svg", false)) {
        SvgSeries in{"|x|", {}}, fo{"|filtered|", {}};
        for (long t = w.t_min; t <= w.t_max; ++t) {
            if (x.covers(t, t)) in.points.emplace_back(double(t), std::abs(x.sample(t)));
            fo.points.emplace_back(double(t), std::abs(filtered.signal.sample(t)));
        }
        svg_line_chart(out / "filter.svg", "trapezoid filter", {in, fo});
        s.files.push_back("filter.svg");
    }
    return s;
}

ExperimentSummary run_predict(const json& cfg, const std::filesystem::path& out,
                              std::uint64_t seed) {
    ExperimentSummary s{ExperimentKind::predict, seed, {}};
    const SignalSource x = build_signal(require(cfg, "signal"), seed);
    const auto gammas = require(cfg, "gamma").get<std::vector<double>>();
    const auto rs = require(cfg, "r").get<std::vector<double>>();
    if (gammas.empty()) throw invalid_input("config: empty gamma grid");
    if (rs.empty()) throw invalid_input("config: empty r grid");
    const double omega_hat = get_or(cfg, "omega_hat", kPi);
    const int K = get_or(cfg, "K", 512);
    const int N = get_or(cfg, "N", 1 << 16);
    const Window w = parse_window(require(cfg, "times"));

    struct Cell {
        double gamma, r;
    };
    std::vector<Cell> cells;
    for (double g : gammas)
        for (double r : rs) cells.push_back({g, r});

    auto run_cell = [&](const Cell& c) {
        PredictorConfig pc{c.gamma, c.r, omega_hat, K, N};
        const HgammaKernel hk = hgamma_kernel(pc);
        const PredictionRun run = predict_one_step(x, pc, hk, w.t_min, w.t_max);
        double measured = std::numeric_limits<double>::quiet_NaN();
        for (Eigen::Index i = 0; i < run.per_step_error.size(); ++i)
            if (!std::isnan(run.per_step_error[i]))
                measured = std::isnan(measured)
                               ? run.per_step_error[i]
                               : std::max(measured, run.per_step_error[i]);
        double oracle = std::numeric_limits<double>::quiet_NaN();
        double omega0 = std::numeric_limits<double>::quiet_NaN();
        if (x.is_exp_sum()) {
            KahanSum acc;  // exact for one tone, an upper bound for several
            for (const auto& [alpha, omega] : x.exp_sum().terms)
                acc.add(std::abs(alpha) * sinusoid_error_oracle(omega, pc));
            oracle = acc.value();
            if (x.exp_sum().terms.size() == 1) omega0 = x.exp_sum().terms[0].omega;
        }
        return std::tuple<SweepRow, PredictionRun>(
            SweepRow{c.gamma, c.r, omega0, measured, oracle, run.kernel_tail}, run);
    };
    const auto results = parallel_map(cells, run_cell);

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        rows.push_back(std::get<0>(results[i]));
        const auto& run = std::get<1>(results[i]);
        std::vector<PredictionRow> prows;
        for (long t = w.t_min; t <= w.t_max; ++t)
            prows.push_back(PredictionRow{t, x.sample(t), run.predicted[t - w.t_min],
                                          run.per_step_error[t - w.t_min]});
        char name[64];
        std::snprintf(name, sizeof(name), "prediction_g%g_r%g.csv", cells[i].gamma,
                      cells[i].r);
        write_prediction_csv(out / name, prows, seed_meta(seed));
        s.files.push_back(name);
    }
    write_sweep_csv(out / "sweep.csv", rows, seed_meta(seed));
    s.files.push_back("sweep.csv");

    if (get_or(cfg, "svg", false)) {
        SvgSeries meas{"measured", {}}, orac{"oracle", {}};
        for (const auto& r : rows) {
            meas.points.emplace_back(r.gamma, r.measured_err);
            if (!std::isnan(r.oracle_err)) orac.points.emplace_back(r.gamma, r.oracle_err);
        }
        svg_line_chart(out / "sweep.svg", "one-step prediction error vs gamma",
                       {meas, orac}, /*log_y=*/true);
        s.files.push_back("sweep.svg");
    }
    return s;
}

ExperimentSummary run_recover(const json& cfg, const std::filesystem::path& out,
                              std::uint64_t seed) {
    ExperimentSummary s{ExperimentKind::recover, seed, {}};
    const SignalSource x = build_signal(require(cfg, "signal"), seed);
    const auto miss = MissingSet::of(require(cfg, "missing").get<std::vector<long>>());
    const SpectralGap gap = parse_gap(require(cfg, "gap"));
    const std::string mode_name = get_or<std::string>(cfg, "mode", "full");
    RecoveryMode mode = RecoveryMode::full;
    if (mode_name == "real") mode = RecoveryMode::real_part;
    else if (mode_name == "imag") mode = RecoveryMode::imag_part;
    else if (mode_name != "full")
        throw invalid_input("config: mode must be full|real|imag");

    RecoveryProblem prob{MaskedSignal(x, miss), gap, mode, get_or(cfg, "ridge", 1e-10)};
    const RecoveryResult res = recover_missing(prob);

    std::vector<RecoveryRow> rows;
    double truth_err = 0.0;
    bool truth_known = true;
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        rows.push_back(RecoveryRow{res.times[i], res.values[i], res.residual});
        if (x.covers(res.times[i], res.times[i]))
            truth_err = std::max(truth_err,
                                 std::abs(res.values[i] - x.sample(res.times[i])));
        else
            truth_known = false;
    }
    write_recovery_csv(out / "recovered.csv", rows, seed_meta(seed));
    s.files.push_back("recovered.csv");

    json diag;
    diag["seed"] = seed;
    diag["mode"] = mode_name;
    diag["residual"] = res.residual;
    diag["condition"] = res.condition;
    diag["sigma_min"] = res.sigma_min;
    diag["ambiguous"] = res.ambiguous;
    diag["bank_leakage"] = gap.bank_leakage();
    if (truth_known)
        diag["max_error_vs_source"] = truth_err;  // source holds the unmasked truth
    write_json(out / "diagnostics.json", diag);
    s.files.push_back("diagnostics.json");
    return s;
}

ExperimentSummary run_recover_variants(const json& cfg, const std::filesystem::path& out,
                                       std::uint64_t seed) {
    ExperimentSummary s{ExperimentKind::recover_variants, seed, {}};
    const SignalSource x = build_signal(require(cfg, "signal"), seed);
    const auto miss = MissingSet::of(require(cfg, "missing").get<std::vector<long>>());
    const double omega = require(cfg, "omega_measure").get<double>();

    std::vector<Interval> candidates;
    if (cfg.contains("candidates")) {
        candidates = parse_intervals(cfg["candidates"]);
    } else {
        const json& grid = require(cfg, "candidate_grid");
        const double start = require(grid, "start").get<double>();
        const double stop = require(grid, "stop").get<double>();
        const double step = require(grid, "step").get<double>();
        if (!(step > 0.0)) throw invalid_input("config: candidate step must be positive");
        for (double a = start; a + omega <= stop + 1e-12; a += step)
            candidates.push_back(Interval{a, a + omega});
        if (candidates.empty())
            throw invalid_input("config: candidate grid produced no intervals");
    }

    VariantOptions opts;
    opts.n_bumps = get_or(cfg, "bumps", opts.n_bumps);
    opts.bump_half_width = get_or(cfg, "K", opts.bump_half_width);
    opts.ridge = get_or(cfg, "ridge", opts.ridge);
    opts.residual_tol = get_or(cfg, "residual_tol", opts.residual_tol);
    opts.cluster_rel_tol = get_or(cfg, "cluster_tol", opts.cluster_rel_tol);

    const VariantReport rep = recover_variants(MaskedSignal(x, miss), omega, candidates, opts);

    std::ofstream vcsv(out / "variants.csv");
    vcsv << "# seed=" << seed << "\n";
    vcsv << "gap_a,gap_b,accepted,cluster,residual,condition";
    for (long t : miss.indices) vcsv << ",re_" << t << ",im_" << t;
    vcsv << "\n";
    for (const auto& c : rep.candidates) {
        vcsv << format_double(c.gap.a) << "," << format_double(c.gap.b) << ","
             << (c.accepted ? 1 : 0) << "," << c.cluster << ","
             << format_double(c.result.residual) << "," << format_double(c.result.condition);
        for (Eigen::Index i = 0; i < c.result.values.size(); ++i)
            vcsv << "," << format_double(c.result.values[i].real()) << ","
                 << format_double(c.result.values[i].imag());
        vcsv << "\n";
    }
    vcsv.close();
    s.files.push_back("variants.csv");

    json diag;
    diag["seed"] = seed;
    diag["bound"] = rep.bound;
    diag["distinct_count"] = rep.distinct_count;
    diag["bound_satisfied"] = rep.bound_satisfied;
    diag["accepted"] = static_cast<int>(std::count_if(
        rep.candidates.begin(), rep.candidates.end(), [](const auto& c) { return c.accepted; }));
    write_json(out / "diagnostics.json", diag);
    s.files.push_back("diagnostics.json");
    return s;
}

ExperimentSummary run_spectrum(const json& cfg, const std::filesystem::path& out,
                               std::uint64_t seed) {
    ExperimentSummary s{ExperimentKind::spectrum, seed, {}};
    const SignalSource x = build_signal(require(cfg, "signal"), seed);
    const auto ms = require(cfg, "m").get<std::vector<long>>();
    if (ms.empty()) throw invalid_input("config: empty m list");
    const int grid_n = get_or(cfg, "grid_n", 512);
    std::vector<double> grid(grid_n);
    for (int g = 0; g < grid_n; ++g) grid[g] = -kPi + kTwoPi * g / grid_n;

    std::ofstream csv(out / "spectrum.csv");
    csv << "# seed=" << seed << "\n";
    csv << "m,omega,re,im\n";
    std::vector<SvgSeries> series;
    for (long m : ms) {
        const Eigen::VectorXcd vals = partial_spectrum(x, m, grid);
        SvgSeries ser{"m=" + std::to_string(m), {}};
        for (int g = 0; g < grid_n; ++g) {
            csv << m << "," << format_double(grid[g]) << "," << format_double(vals[g].real())
                << "," << format_double(vals[g].imag()) << "\n";
            ser.points.emplace_back(grid[g], std::abs(vals[g]));
        }
        series.push_back(std::move(ser));
    }
    csv.close();
    s.files.push_back("spectrum.csv");
    if (get_or(cfg, "svg", false)) {
        svg_line_chart(out / "spectrum.svg", "partial spectra |X_m|", series);
        s.files.push_back("spectrum.svg");
    }
    return s;
}

}  // namespace

ExperimentSummary run_experiment(const json& config, const std::filesystem::path& out_dir,
                                 std::optional<std::uint64_t> seed_override) {
    const std::string kind_name = require(config, "kind").get<std::string>();
    const ExperimentKind kind = parse_kind(kind_name);
    json cfg = config;
    if (seed_override) {
        // An explicit override beats any seed written into the config,
        // including per-signal ones.
        cfg["seed"] = *seed_override;
        if (cfg.contains("signal") && cfg["signal"].is_object())
            cfg["signal"].erase("seed");
    }
    const std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 0);
    std::filesystem::create_directories(out_dir);
    switch (kind) {
        case ExperimentKind::gen: return run_gen(cfg, out_dir, seed);
        case ExperimentKind::filter: return run_filter(cfg, out_dir, seed);
        case ExperimentKind::predict: return run_predict(cfg, out_dir, seed);
        case ExperimentKind::recover: return run_recover(cfg, out_dir, seed);
        case ExperimentKind::recover_variants:
            return run_recover_variants(cfg, out_dir, seed);
        case ExperimentKind::spectrum: return run_spectrum(cfg, out_dir, seed);
    }
    throw invalid_input("config: unhandled experiment kind");
}

}  // namespace linfdsp
