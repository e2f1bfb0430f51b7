// wqed — single-photon transport in atom chains coupled to 1D waveguides.
//
//   wqed <spectrum|bands|localization> --config <path>
//        [--out <dir>] [--seed <u64>] [--threads <n>] [--svg]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>

#include "run_config.hpp"
#include "runner.hpp"
#include "wqed/types.hpp"
#include "wqed/version.hpp"

namespace {

void print_error(const std::string& kind, const std::string& message) {
    std::cerr << nlohmann::json{{"kind", kind}, {"error", message}}.dump() << "\n";
}

bool experiment_matches(const std::string& subcommand, wqed::cli::ExperimentKind kind) {
    using wqed::cli::ExperimentKind;
    if (subcommand == "spectrum")
        return kind == ExperimentKind::Spectrum || kind == ExperimentKind::DisorderSpectrum;
    if (subcommand == "bands") return kind == ExperimentKind::Bands;
    if (subcommand == "localization")
        return kind == ExperimentKind::Localization || kind == ExperimentKind::LocSweep;
    return false;
}

unsigned threads_from_env() {
    const char* env = std::getenv("WQED_THREADS");
    if (!env) return 0;
    const long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-photon transport in waveguide-coupled atom chains"};
    app.set_version_flag("--version", std::string("wqed ") + wqed::version);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 0;
    bool threads_given = false;
    bool svg = false;

    for (const char* name : {"spectrum", "bands", "localization"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run configuration (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory (default: .)");
        sub->add_option("--seed", seed, "override the configured seed")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--threads", threads, "worker threads (default: env WQED_THREADS or all cores)")
            ->each([&](const std::string&) { threads_given = true; });
        sub->add_flag("--svg", svg, "also write quick-look SVG charts");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        print_error("config", e.what());
        return 2;
    }

    try {
        wqed::cli::RunConfig config = wqed::cli::load_run_config(config_path);
        const std::string sub = app.get_subcommands().front()->get_name();
        if (!experiment_matches(sub, config.experiment))
            throw wqed::ConfigError("config: experiment \"" +
                                    std::string(experiment_name(config.experiment)) +
                                    "\" does not belong to subcommand \"" + sub + "\"");
        if (seed_given) {
            config.seed = seed;
            if (config.disorder) config.disorder->seed = seed;
        }
        if (!out_dir.empty()) config.out_dir = out_dir;
        config.threads = threads_given ? threads : threads_from_env();
        config.svg = svg;
        wqed::cli::run(config);
        return 0;
    } catch (const wqed::ConfigError& e) {
        print_error("config", e.what());
        return 2;
    } catch (const wqed::NumericalError& e) {
        print_error("numerical", e.what());
        return 3;
    } catch (const wqed::SingularMatrixError& e) {
        print_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 3;
    }
}
