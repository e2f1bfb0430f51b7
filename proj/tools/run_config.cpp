#include "run_config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

namespace wqed::cli {

namespace {

using nlohmann::json;

ExperimentKind parse_experiment(const std::string& name) {
    if (name == "spectrum") return ExperimentKind::Spectrum;
    if (name == "bands") return ExperimentKind::Bands;
    if (name == "disorder-spectrum") return ExperimentKind::DisorderSpectrum;
    if (name == "localization") return ExperimentKind::Localization;
    if (name == "loc-sweep") return ExperimentKind::LocSweep;
    throw ConfigError("config: unknown experiment \"" + name + "\"");
}

DisorderSpec parse_disorder(const json& obj) {
    if (!obj.is_object()) throw ConfigError("config: disorder must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        static const std::set<std::string> known{"target", "mean", "sigma", "realizations",
                                                 "seed"};
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key \"" + it.key() + "\" in disorder");
    }
    DisorderSpec spec;
    if (!obj.contains("target") || !obj["target"].is_string())
        throw ConfigError("config: disorder.target (\"position\" or \"frequency\") is required");
    const std::string target = obj["target"].get<std::string>();
    if (target == "position")
        spec.target = DisorderTarget::Position;
    else if (target == "frequency")
        spec.target = DisorderTarget::Frequency;
    else
        throw ConfigError("config: disorder.target must be \"position\" or \"frequency\"");
    if (obj.contains("mean")) spec.mean = obj["mean"].get<double>();
    if (obj.contains("sigma")) spec.sigma = obj["sigma"].get<double>();
    if (spec.sigma < 0.0) throw ConfigError("config: disorder.sigma must be >= 0");
    if (obj.contains("realizations")) {
        if (!obj["realizations"].is_number_unsigned() || obj["realizations"].get<std::size_t>() == 0)
            throw ConfigError("config: disorder.realizations must be a positive integer");
        spec.realizations = obj["realizations"].get<std::size_t>();
    }
    if (obj.contains("seed")) spec.seed = obj["seed"].get<std::uint64_t>();
    return spec;
}

LocalizationOptions parse_localization(const json& obj) {
    if (!obj.is_object()) throw ConfigError("config: localization must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        static const std::set<std::string> known{"n_values", "sigmas"};
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key \"" + it.key() + "\" in localization");
    }
    LocalizationOptions opts;
    if (obj.contains("n_values")) {
        if (!obj["n_values"].is_array())
            throw ConfigError("config: localization.n_values must be an array");
        opts.n_values.clear();
        for (const auto& v : obj["n_values"]) {
            if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
                throw ConfigError("config: localization.n_values entries must be positive");
            opts.n_values.push_back(v.get<std::size_t>());
        }
    }
    if (obj.contains("sigmas")) {
        if (!obj["sigmas"].is_array())
            throw ConfigError("config: localization.sigmas must be an array");
        for (const auto& v : obj["sigmas"]) {
            if (!v.is_number() || v.get<double>() < 0.0)
                throw ConfigError("config: localization.sigmas entries must be >= 0");
            opts.sigmas.push_back(v.get<double>());
        }
    }
    return opts;
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Spectrum: return "spectrum";
        case ExperimentKind::Bands: return "bands";
        case ExperimentKind::DisorderSpectrum: return "disorder-spectrum";
        case ExperimentKind::Localization: return "localization";
        case ExperimentKind::LocSweep: return "loc-sweep";
    }
    return "?";
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    static const std::set<std::string> known{"experiment", "waveguide", "chain",  "photon",
                                             "disorder",   "localization", "seed"};
    for (auto it = root.begin(); it != root.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key \"" + it.key() + "\"");

    RunConfig config;
    if (!root.contains("experiment") || !root["experiment"].is_string())
        throw ConfigError("config: experiment is required");
    config.experiment = parse_experiment(root["experiment"].get<std::string>());

    json sim;
    for (const char* key : {"waveguide", "chain", "photon"}) {
        if (!root.contains(key))
            throw ConfigError(std::string("config: missing section \"") + key + "\"");
        sim[key] = root[key];
    }
    config.sim = parse_simulation_config(sim.dump());

    if (root.contains("disorder")) config.disorder = parse_disorder(root["disorder"]);
    if (root.contains("localization"))
        config.localization = parse_localization(root["localization"]);
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned())
            throw ConfigError("config: seed must be a non-negative integer");
        config.seed = root["seed"].get<std::uint64_t>();
        if (config.disorder) config.disorder->seed = config.seed;
    } else if (config.disorder) {
        config.seed = config.disorder->seed;
    }
    return config;
}

std::string resolved_config_json(const RunConfig& config) {
    json root = json::parse(serialize_simulation_config(config.sim));
    root["experiment"] = experiment_name(config.experiment);
    root["seed"] = config.seed;
    if (config.disorder) {
        const DisorderSpec& d = *config.disorder;
        root["disorder"] =
            json{{"target", d.target == DisorderTarget::Position ? "position" : "frequency"},
                 {"mean", d.mean},
                 {"sigma", d.sigma},
                 {"realizations", d.realizations},
                 {"seed", d.seed}};
    }
    if (config.experiment == ExperimentKind::Localization)
        root["localization"] = json{{"n_values", config.localization.n_values}};
    if (config.experiment == ExperimentKind::LocSweep)
        root["localization"] = json{{"sigmas", config.localization.sigmas}};
    return root.dump();
}

}  // namespace wqed::cli
