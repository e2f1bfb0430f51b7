#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wqed/chiral.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("WQED_BIN");
    REQUIRE_MESSAGE(env != nullptr, "WQED_BIN must point at the wqed binary");
    return env;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("wqed_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<std::string>> cells;
};

Csv parse_csv(const fs::path& path) {
    Csv csv;
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            csv.comments.push_back(line);
            continue;
        }
        std::vector<double> row;
        std::vector<std::string> raw;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            raw.push_back(cell);
            row.push_back(std::strtod(cell.c_str(), nullptr));
        }
        csv.rows.push_back(row);
        csv.cells.push_back(raw);
    }
    return csv;
}

}  // namespace

TEST_CASE("chiral single-atom spectrum has a zero-transmission dip at resonance") {
    const fs::path dir = fresh_dir("chiral_dip");
    write_file(dir / "run.json", R"({
        "experiment": "spectrum",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 1, "spacing": 0.5, "omega": 1.0, "gamma": 0.1, "gamma_r": 0.1},
        "photon": {"sweep": {"min": 0.5, "max": 1.5, "steps": 101}}
    })");
    REQUIRE(run_cli("spectrum --config " + (dir / "run.json").string() + " --out " +
                    dir.string()) == 0);
    const Csv csv = parse_csv(dir / "spectrum.csv");
    REQUIRE(csv.rows.size() == 101);
    double min_t = 2.0, min_omega = 0.0;
    for (const auto& row : csv.rows) {
        REQUIRE(row.size() == 2);  // omega,T for chiral
        if (row[1] < min_t) {
            min_t = row[1];
            min_omega = row[0];
        }
    }
    CHECK(min_t == 0.0);  // the grid hits delta = 0 exactly
    CHECK(min_omega == doctest::Approx(1.0));
}

TEST_CASE("symmetric single atom reflects perfectly at resonance") {
    const fs::path dir = fresh_dir("sym_reflect");
    write_file(dir / "run.json", R"({
        "experiment": "spectrum",
        "waveguide": {"kind": "bidirectional"},
        "chain": {"n": 1, "spacing": 0.5, "omega": 1.0, "gamma": 0.0,
                  "gamma_r": 0.1, "gamma_l": 0.1},
        "photon": {"sweep": {"min": 0.5, "max": 1.5, "steps": 101}}
    })");
    REQUIRE(run_cli("spectrum --config " + (dir / "run.json").string() + " --out " +
                    dir.string()) == 0);
    const Csv csv = parse_csv(dir / "spectrum.csv");
    double max_r = -1.0, max_omega = 0.0;
    for (const auto& row : csv.rows) {
        REQUIRE(row.size() == 3);  // omega,T,R
        CHECK(row[1] + row[2] == doctest::Approx(1.0).epsilon(1e-10));
        if (row[2] > max_r) {
            max_r = row[2];
            max_omega = row[0];
        }
    }
    CHECK(max_r == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(max_omega == doctest::Approx(1.0));
}

TEST_CASE("steps = 1 emits a single-row csv") {
    const fs::path dir = fresh_dir("single_row");
    write_file(dir / "run.json", R"({
        "experiment": "spectrum",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 3, "spacing": 0.5, "gamma_r": 0.1},
        "photon": {"sweep": {"min": 1.1, "max": 1.1, "steps": 1}}
    })");
    REQUIRE(run_cli("spectrum --config " + (dir / "run.json").string() + " --out " +
                    dir.string()) == 0);
    const Csv csv = parse_csv(dir / "spectrum.csv");
    CHECK(csv.rows.size() == 1);
    CHECK(csv.rows[0][0] == doctest::Approx(1.1));
}

TEST_CASE("bands: symmetric lattice gap spans omega_1, chiral coupling has none") {
    const fs::path dir = fresh_dir("bands");
    write_file(dir / "sym.json", R"({
        "experiment": "bands",
        "waveguide": {"kind": "bidirectional"},
        "chain": {"n": 100, "spacing": 0.5, "gamma_r": 0.1, "gamma_l": 0.1},
        "photon": {"sweep": {"min": 0.3, "max": 3.0, "steps": 2001}}
    })");
    REQUIRE(run_cli("bands --config " + (dir / "sym.json").string() + " --out " +
                    dir.string()) == 0);
    const Csv gaps = parse_csv(dir / "gaps.csv");
    bool has_main_gap = false;
    for (const auto& row : gaps.rows)
        if (row[0] < 1.0 && 1.0 < row[1]) has_main_gap = true;
    CHECK(has_main_gap);
    const Csv bands = parse_csv(dir / "bands.csv");
    REQUIRE(bands.rows.size() == 2001);
    REQUIRE(bands.rows[0].size() == 4);

    write_file(dir / "chiral.json", R"({
        "experiment": "bands",
        "waveguide": {"kind": "bidirectional"},
        "chain": {"n": 100, "spacing": 0.5, "gamma_r": 0.1, "gamma_l": 0.0},
        "photon": {"sweep": {"min": 0.3, "max": 3.0, "steps": 2001}}
    })");
    const fs::path dir2 = fresh_dir("bands_chiral");
    REQUIRE(run_cli("bands --config " + (dir / "chiral.json").string() + " --out " +
                    dir2.string()) == 0);
    CHECK(parse_csv(dir2 / "gaps.csv").rows.empty());
}

TEST_CASE("bands rejects lossy atoms with exit code 2") {
    const fs::path dir = fresh_dir("bands_lossy");
    write_file(dir / "run.json", R"({
        "experiment": "bands",
        "waveguide": {"kind": "bidirectional"},
        "chain": {"n": 10, "spacing": 0.5, "gamma": 0.01, "gamma_r": 0.1, "gamma_l": 0.1},
        "photon": {"sweep": {"min": 0.5, "max": 1.5, "steps": 11}}
    })");
    CHECK(run_cli("bands --config " + (dir / "run.json").string() + " --out " + dir.string()) ==
          2);
}

TEST_CASE("invalid configs exit with code 2 and a machine-readable error") {
    const fs::path dir = fresh_dir("bad_config");
    write_file(dir / "broken.json", "{ this is not json");
    CHECK(run_cli("spectrum --config " + (dir / "broken.json").string()) == 2);
    write_file(dir / "mismatch.json", R"({
        "experiment": "bands",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 1, "spacing": 0.5, "gamma_r": 0.1},
        "photon": {"omega": 1.0}
    })");
    CHECK(run_cli("spectrum --config " + (dir / "mismatch.json").string()) == 2);
    CHECK(run_cli("spectrum --config /nonexistent.json") == 2);

    const std::string cmd = cli_path() + " spectrum --config " +
                            (dir / "broken.json").string() + " 2> " +
                            (dir / "err.txt").string() + " >/dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
    const std::string err = slurp(dir / "err.txt");
    CHECK(err.find("\"kind\":\"config\"") != std::string::npos);
}

TEST_CASE("csv output is byte-identical across reruns and thread counts") {
    const fs::path dir = fresh_dir("determinism");
    write_file(dir / "run.json", R"({
        "experiment": "disorder-spectrum",
        "waveguide": {"kind": "bidirectional"},
        "chain": {"n": 12, "spacing": 0.5, "gamma_r": 0.1, "gamma_l": 0.1},
        "photon": {"sweep": {"min": 0.8, "max": 1.2, "steps": 7}},
        "disorder": {"target": "position", "mean": 0.0, "sigma": 0.5, "realizations": 400},
        "seed": 20250101
    })");
    const fs::path out1 = dir / "a", out2 = dir / "b", out3 = dir / "c";
    REQUIRE(run_cli("spectrum --config " + (dir / "run.json").string() + " --out " +
                    out1.string() + " --threads 1") == 0);
    REQUIRE(run_cli("spectrum --config " + (dir / "run.json").string() + " --out " +
                    out2.string() + " --threads 4") == 0);
    REQUIRE(run_cli("spectrum --config " + (dir / "run.json").string() + " --out " +
                    out3.string()) == 0);
    const std::string a = slurp(out1 / "spectrum.csv");
    CHECK(a == slurp(out2 / "spectrum.csv"));
    CHECK(a == slurp(out3 / "spectrum.csv"));
    CHECK(a.find("# config:") != std::string::npos);
}

TEST_CASE("localization fit via the cli recovers the analytic chiral value") {
    const fs::path dir = fresh_dir("loc_fit");
    write_file(dir / "run.json", R"({
        "experiment": "localization",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 10, "spacing": 0.5, "omega": 1.0, "gamma": 0.1, "gamma_r": 0.1},
        "photon": {"omega": 1.1},
        "disorder": {"target": "frequency", "mean": 1.0, "sigma": 0.1, "realizations": 2000},
        "localization": {"n_values": [10, 20, 40]},
        "seed": 777
    })");
    REQUIRE(run_cli("localization --config " + (dir / "run.json").string() + " --out " +
                    dir.string()) == 0);
    const Csv xi = parse_csv(dir / "xi.csv");
    REQUIRE(xi.rows.size() == 1);
    const double analytic = wqed::localization_length_chiral(0.1, 0.1, 0.1, 0.1);
    CHECK(std::abs(xi.rows[0][1] - analytic) / analytic < 0.05);
    CHECK(xi.rows[0][3] > 0.99);  // fit_r2
    const Csv ln = parse_csv(dir / "lnT_vs_N.csv");
    CHECK(ln.rows.size() == 3);
}

TEST_CASE("loc-sweep emits the infinite-xi sentinel for a lossless in-band chain") {
    const fs::path dir = fresh_dir("loc_sweep_inf");
    write_file(dir / "run.json", R"({
        "experiment": "loc-sweep",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 50, "spacing": 0.5, "omega": 1.0, "gamma": 0.0, "gamma_r": 0.1},
        "photon": {"omega": 1.2},
        "disorder": {"target": "frequency", "mean": 1.0, "sigma": 0.1, "realizations": 100},
        "localization": {"sigmas": [0.0, 0.1]},
        "seed": 5
    })");
    REQUIRE(run_cli("localization --config " + (dir / "run.json").string() + " --out " +
                    dir.string()) == 0);
    const Csv xi = parse_csv(dir / "xi.csv");
    REQUIRE(xi.rows.size() == 2);
    CHECK(xi.cells[0][1] == "inf");
    CHECK(xi.cells[1][1] == "inf");
}

TEST_CASE("numerical failure exits with code 3 after flushing partial results") {
    // sigma = 0 frequency disorder pinned to resonance at critical coupling:
    // every realization is exactly opaque, the ln T estimator has no data
    const fs::path dir = fresh_dir("loc_sweep_fail");
    write_file(dir / "run.json", R"({
        "experiment": "loc-sweep",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 10, "spacing": 0.5, "omega": 1.0, "gamma": 0.1, "gamma_r": 0.1},
        "photon": {"omega": 1.0},
        "disorder": {"target": "frequency", "mean": 1.0, "sigma": 0.1, "realizations": 50},
        "localization": {"sigmas": [0.1, 0.0]},
        "seed": 3
    })");
    CHECK(run_cli("localization --config " + (dir / "run.json").string() + " --out " +
                  dir.string()) == 3);
    const Csv xi = parse_csv(dir / "xi.csv");
    CHECK(xi.rows.size() == 1);  // the good sigma was flushed
    bool warned = false;
    for (const auto& c : xi.comments)
        if (c.find("WARNING") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("WQED_THREADS env var steers workers without changing output") {
    const fs::path dir = fresh_dir("env_threads");
    write_file(dir / "run.json", R"({
        "experiment": "disorder-spectrum",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 8, "spacing": 0.5, "gamma": 0.1, "gamma_r": 0.1},
        "photon": {"sweep": {"min": 0.9, "max": 1.1, "steps": 3}},
        "disorder": {"target": "frequency", "mean": 1.0, "sigma": 0.05, "realizations": 200},
        "seed": 42
    })");
    const std::string base_cmd = cli_path() + " spectrum --config " +
                                 (dir / "run.json").string();
    const int s1 = std::system(("WQED_THREADS=1 " + base_cmd + " --out " +
                                (dir / "a").string() + " >/dev/null 2>&1")
                                   .c_str());
    const int s2 = std::system(("WQED_THREADS=3 " + base_cmd + " --out " +
                                (dir / "b").string() + " >/dev/null 2>&1")
                                   .c_str());
    REQUIRE(WEXITSTATUS(s1) == 0);
    REQUIRE(WEXITSTATUS(s2) == 0);
    CHECK(slurp(dir / "a" / "spectrum.csv") == slurp(dir / "b" / "spectrum.csv"));
}

TEST_CASE("svg quick-look files appear behind the flag") {
    const fs::path dir = fresh_dir("svg");
    write_file(dir / "run.json", R"({
        "experiment": "spectrum",
        "waveguide": {"kind": "chiral"},
        "chain": {"n": 1, "spacing": 0.5, "gamma": 0.1, "gamma_r": 0.1},
        "photon": {"sweep": {"min": 0.5, "max": 1.5, "steps": 21}}
    })");
    REQUIRE(run_cli("spectrum --config " + (dir / "run.json").string() + " --out " +
                    dir.string() + " --svg") == 0);
    CHECK(fs::exists(dir / "spectrum.svg"));
    const std::string svg = slurp(dir / "spectrum.svg");
    CHECK(svg.find("<svg") != std::string::npos);
}
