// JSON configuration schema shared by the library and the CLI.
//
// {
//   "waveguide": { "kind": "chiral" | "bidirectional",
//                  "v_r": 1.0, "v_l": 1.0, "omega_0": 0.0 },
//   "chain":     { "n": 100, "spacing": 0.5,
//                  "omega": 1.0, "gamma": 0.0, "gamma_r": 0.1, "gamma_l": 0.1 },
//   "photon":    { "omega": 1.0 }  or  { "sweep": {"min": a, "max": b, "steps": k} }
// }
//
// Units: frequencies and rates in omega_1, lengths in lambda, velocities in
// v_ref. Serialization round-trips every double bit-exactly. Unknown keys
// are rejected.

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "wqed/types.hpp"

namespace wqed {

struct SweepSpec {
    double min = 1.0;
    double max = 1.0;
    std::size_t steps = 1;
};

struct PhotonSpec {
    std::optional<double> omega;     // single frequency
    std::optional<SweepSpec> sweep;  // or a uniform grid
};

/// Template for a periodic chain; the atom fields apply to every site.
struct ChainConfig {
    std::size_t n = 1;
    double spacing = 0.5;  // lattice constant (lambda)
    double omega = 1.0;
    double gamma = 0.0;
    double gamma_r = 0.0;
    double gamma_l = 0.0;

    Atom atom_template() const {
        return Atom{0.0, omega, gamma, gamma_r, gamma_l};
    }
    AtomChain build() const { return build_periodic_chain(n, spacing, atom_template()); }
};

struct SimulationConfig {
    WaveguideConfig waveguide;
    ChainConfig chain;
    PhotonSpec photon;
};

/// Parses and validates a config from JSON text. Throws ConfigError with
/// every violation listed.
SimulationConfig parse_simulation_config(const std::string& json_text);

/// Loads a config file. Throws ConfigError on I/O or schema problems.
SimulationConfig load_simulation_config(const std::string& path);

/// Canonical JSON (sorted keys, round-trip exact doubles).
std::string serialize_simulation_config(const SimulationConfig& config);

}  // namespace wqed
