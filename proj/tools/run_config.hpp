// Full experiment description for the wqed command line tool: the shared
// simulation schema plus experiment selection, disorder, localization
// options, seed, and output settings.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wqed/config_io.hpp"
#include "wqed/disorder.hpp"

namespace wqed::cli {

enum class ExperimentKind { Spectrum, Bands, DisorderSpectrum, Localization, LocSweep };

const char* experiment_name(ExperimentKind kind);

struct LocalizationOptions {
    std::vector<std::size_t> n_values = {25, 50, 100, 200, 400};
    std::vector<double> sigmas;  // loc-sweep grid
};

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::Spectrum;
    SimulationConfig sim;
    std::optional<DisorderSpec> disorder;
    LocalizationOptions localization;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    unsigned threads = 0;  // 0: use available parallelism
    bool svg = false;
};

/// Parses the run-config JSON file (strict schema). Throws ConfigError.
RunConfig load_run_config(const std::string& path);

/// Canonical JSON of everything that determines the output bytes (excludes
/// runtime-only knobs: threads, output directory, svg flag).
std::string resolved_config_json(const RunConfig& config);

}  // namespace wqed::cli
