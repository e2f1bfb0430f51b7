// Experiment drivers: each writes its CSV outputs (and optional SVG) into
// config.out_dir. All emitted bytes are deterministic for a fixed config
// and seed, independent of the worker count.

#pragma once

#include "run_config.hpp"

namespace wqed::cli {

void run_spectrum(const RunConfig& config);      // spectrum.csv
void run_bands(const RunConfig& config);         // bands.csv, gaps.csv
void run_localization(const RunConfig& config);  // lnT_vs_N.csv, xi.csv

/// Dispatch on config.experiment.
void run(const RunConfig& config);

}  // namespace wqed::cli
