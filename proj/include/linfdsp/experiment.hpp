// experiment.hpp — experiment configs and the runners behind the CLI.
//
// Configs are JSON documents; see configs/ for worked examples.  Every run
// is deterministic given (config, seed): the seed is recorded in all outputs
// and randomized signals draw from a fixed-contract stream (mt19937_64 with
// an explicit 53-bit mapping).

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "linfdsp/signal.hpp"

namespace linfdsp {

enum class ExperimentKind { gen, filter, predict, recover, recover_variants, spectrum };

ExperimentKind parse_kind(const std::string& name);

// Build the signal described by cfg["signal"].  default_seed feeds
// generators whose spec omits an explicit seed.
SignalSource build_signal(const nlohmann::json& spec, std::uint64_t default_seed);

struct ExperimentSummary {
    ExperimentKind kind;
    std::uint64_t seed = 0;
    std::vector<std::string> files;  // paths written, relative to out_dir
};

// Runs one experiment, writing CSV/JSON (and optional SVG) under out_dir.
// Throws invalid_input for configuration problems and numeric_failure when a
// numerical guard trips.
ExperimentSummary run_experiment(const nlohmann::json& config,
                                 const std::filesystem::path& out_dir,
                                 std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace linfdsp
