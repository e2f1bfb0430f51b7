#include "wqed/config_io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

namespace wqed {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(std::string("config: ") + key + " must be a number");
    return obj[key].get<double>();
}

std::size_t get_count(const json& obj, const char* key, std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_unsigned())
        throw ConfigError(std::string("config: ") + key + " must be a non-negative integer");
    return obj[key].get<std::size_t>();
}

WaveguideConfig parse_waveguide(const json& obj) {
    if (!obj.is_object()) throw ConfigError("config: waveguide must be an object");
    reject_unknown_keys(obj, {"kind", "v_r", "v_l", "omega_0"}, "waveguide");
    WaveguideConfig wg;
    if (!obj.contains("kind") || !obj["kind"].is_string())
        throw ConfigError("config: waveguide.kind (\"chiral\" or \"bidirectional\") is required");
    const std::string kind = obj["kind"].get<std::string>();
    if (kind == "chiral")
        wg.kind = WaveguideKind::Chiral;
    else if (kind == "bidirectional")
        wg.kind = WaveguideKind::Bidirectional;
    else
        throw ConfigError("config: waveguide.kind must be \"chiral\" or \"bidirectional\"");
    wg.v_r = get_number(obj, "v_r", 1.0);
    wg.v_l = get_number(obj, "v_l", wg.v_r);
    wg.omega_0 = get_number(obj, "omega_0", 0.0);
    return wg;
}

ChainConfig parse_chain(const json& obj) {
    if (!obj.is_object()) throw ConfigError("config: chain must be an object");
    reject_unknown_keys(obj, {"n", "spacing", "omega", "gamma", "gamma_r", "gamma_l"}, "chain");
    ChainConfig chain;
    if (!obj.contains("n")) throw ConfigError("config: chain.n is required");
    chain.n = get_count(obj, "n", 1);
    if (!obj.contains("spacing")) throw ConfigError("config: chain.spacing is required");
    chain.spacing = get_number(obj, "spacing", 0.5);
    chain.omega = get_number(obj, "omega", 1.0);
    chain.gamma = get_number(obj, "gamma", 0.0);
    chain.gamma_r = get_number(obj, "gamma_r", 0.0);
    chain.gamma_l = get_number(obj, "gamma_l", 0.0);
    return chain;
}

PhotonSpec parse_photon(const json& obj) {
    if (!obj.is_object()) throw ConfigError("config: photon must be an object");
    reject_unknown_keys(obj, {"omega", "sweep"}, "photon");
    PhotonSpec photon;
    if (obj.contains("omega") == obj.contains("sweep"))
        throw ConfigError("config: photon needs exactly one of omega or sweep");
    if (obj.contains("omega")) {
        photon.omega = get_number(obj, "omega", 1.0);
    } else {
        const json& sw = obj["sweep"];
        if (!sw.is_object()) throw ConfigError("config: photon.sweep must be an object");
        reject_unknown_keys(sw, {"min", "max", "steps"}, "photon.sweep");
        SweepSpec sweep;
        if (!sw.contains("min") || !sw.contains("max"))
            throw ConfigError("config: photon.sweep.min and .max are required");
        sweep.min = get_number(sw, "min", 0.0);
        sweep.max = get_number(sw, "max", 0.0);
        sweep.steps = get_count(sw, "steps", 1);
        if (sweep.steps < 1) throw ConfigError("config: photon.sweep.steps must be >= 1");
        if (sweep.min > sweep.max) throw ConfigError("config: photon.sweep.min > max");
        photon.sweep = sweep;
    }
    return photon;
}

void validate(const SimulationConfig& config) {
    auto issues = validate_waveguide(config.waveguide);
    if (config.chain.n == 0) issues.push_back("chain: n must be >= 1");
    if (!(config.chain.spacing > 0.0)) issues.push_back("chain: spacing must be positive");
    if (config.chain.omega <= 0.0) issues.push_back("chain: omega must be positive");
    if (config.chain.gamma < 0.0) issues.push_back("chain: negative rate gamma");
    if (config.chain.gamma_r < 0.0) issues.push_back("chain: negative rate gamma_r");
    if (config.chain.gamma_l < 0.0) issues.push_back("chain: negative rate gamma_l");
    if (!issues.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& s : issues) msg += "\n  - " + s;
        throw ConfigError(msg);
    }
}

json waveguide_to_json(const WaveguideConfig& wg) {
    return json{{"kind", wg.kind == WaveguideKind::Chiral ? "chiral" : "bidirectional"},
                {"v_r", wg.v_r},
                {"v_l", wg.v_l},
                {"omega_0", wg.omega_0}};
}

json chain_to_json(const ChainConfig& chain) {
    return json{{"n", chain.n},         {"spacing", chain.spacing}, {"omega", chain.omega},
                {"gamma", chain.gamma}, {"gamma_r", chain.gamma_r}, {"gamma_l", chain.gamma_l}};
}

json photon_to_json(const PhotonSpec& photon) {
    if (photon.omega) return json{{"omega", *photon.omega}};
    return json{{"sweep", json{{"min", photon.sweep->min},
                               {"max", photon.sweep->max},
                               {"steps", photon.sweep->steps}}}};
}

}  // namespace

SimulationConfig parse_simulation_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(root, {"waveguide", "chain", "photon"}, "config");
    for (const char* key : {"waveguide", "chain", "photon"})
        if (!root.contains(key))
            throw ConfigError(std::string("config: missing section \"") + key + "\"");
    SimulationConfig config;
    config.waveguide = parse_waveguide(root["waveguide"]);
    config.chain = parse_chain(root["chain"]);
    config.photon = parse_photon(root["photon"]);
    validate(config);
    return config;
}

SimulationConfig load_simulation_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_simulation_config(text);
}

std::string serialize_simulation_config(const SimulationConfig& config) {
    json root{{"waveguide", waveguide_to_json(config.waveguide)},
              {"chain", chain_to_json(config.chain)},
              {"photon", photon_to_json(config.photon)}};
    return root.dump();
}

}  // namespace wqed
