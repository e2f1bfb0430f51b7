#include "runner.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <vector>

#include "csv_writer.hpp"
#include "svg_plot.hpp"
#include "wqed/bands.hpp"
#include "wqed/bidirectional.hpp"
#include "wqed/chiral.hpp"
#include "wqed/disorder.hpp"
#include "wqed/parallel.hpp"
#include "wqed/version.hpp"

namespace wqed::cli {

namespace {

namespace fs = std::filesystem;

std::vector<double> omega_grid(const PhotonSpec& photon) {
    if (photon.omega) return {*photon.omega};
    const SweepSpec& sweep = *photon.sweep;
    std::vector<double> grid(sweep.steps);
    if (sweep.steps == 1) {
        grid[0] = sweep.min;
        return grid;
    }
    const double step = (sweep.max - sweep.min) / static_cast<double>(sweep.steps - 1);
    for (std::size_t i = 0; i < sweep.steps; ++i)
        grid[i] = sweep.min + step * static_cast<double>(i);
    return grid;
}

std::string out_path(const RunConfig& config, const char* name) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec && !fs::is_directory(config.out_dir))
        throw ConfigError("cannot create output directory " + config.out_dir + ": " +
                          ec.message());
    return (fs::path(config.out_dir) / name).string();
}

DisorderSpec require_disorder(const RunConfig& config) {
    if (!config.disorder)
        throw ConfigError("config: this experiment requires a disorder section");
    return *config.disorder;
}

void append_estimate_warning(CsvWriter& csv, const McEstimate& est) {
    if (est.quality_warning)
        csv.comment("WARNING: excluded " + std::to_string(est.excluded) +
                    " opaque realizations (> 0.1% of requested); estimate quality degraded");
}

}  // namespace

void run_spectrum(const RunConfig& config) {
    const SimulationConfig& sim = config.sim;
    const AtomChain chain = sim.chain.build();
    require_valid(chain, sim.waveguide);
    const bool chiral = sim.waveguide.kind == WaveguideKind::Chiral;
    const bool averaged = config.experiment == ExperimentKind::DisorderSpectrum;
    const std::vector<double> grid = omega_grid(sim.photon);

    std::vector<double> t_col(grid.size()), r_col(grid.size());
    std::size_t warn_excluded = 0, warn_total = 0;

    if (averaged) {
        const DisorderSpec spec = require_disorder(config);
        for (std::size_t i = 0; i < grid.size(); ++i) {  // mc_average parallelizes inside
            const PhotonQuery q{grid[i]};
            const McEstimate t =
                mc_average(chain, spec, q, sim.waveguide, Observable::Transmission,
                           config.threads);
            t_col[i] = t.mean;
            if (t.quality_warning) {
                warn_excluded += t.excluded;
                warn_total += spec.realizations;
            }
            if (!chiral) {
                const McEstimate r = mc_average(chain, spec, q, sim.waveguide,
                                                Observable::Reflection, config.threads);
                r_col[i] = r.mean;
            }
        }
    } else {
        parallel_for(grid.size(), config.threads, [&](std::size_t i) {
            const PhotonQuery q{grid[i]};
            if (chiral) {
                t_col[i] = chiral_transmission(chain, q);
            } else {
                const ScatteringResult res = chain_scattering(chain, q, sim.waveguide);
                t_col[i] = res.transmission;
                r_col[i] = res.reflection;
            }
        });
    }

    CsvWriter csv(out_path(config, "spectrum.csv"), experiment_name(config.experiment),
                  resolved_config_json(config), chiral ? "omega,T" : "omega,T,R", version);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> cells{format_double(grid[i]), format_double(t_col[i])};
        if (!chiral) cells.push_back(format_double(r_col[i]));
        csv.row(cells);
    }
    if (warn_total > 0)
        csv.comment("WARNING: excluded " + std::to_string(warn_excluded) +
                    " opaque realizations across the sweep; estimate quality degraded");
    csv.close();

    if (config.svg) {
        std::vector<SvgSeries> series{{"T", "#1f77b4", grid, t_col}};
        if (!chiral) series.push_back({"R", "#d62728", grid, r_col});
        write_svg_chart(out_path(config, "spectrum.svg"),
                        averaged ? "averaged transmission spectrum" : "transmission spectrum",
                        series);
    }
}

void run_bands(const RunConfig& config) {
    const SimulationConfig& sim = config.sim;
    if (sim.chain.gamma != 0.0)
        throw ConfigError("bands: the dispersion relation requires gamma = 0");
    if (!sim.photon.sweep)
        throw ConfigError("bands: a photon sweep {min,max,steps} is required");
    const Atom atom = sim.chain.atom_template();
    const double l = sim.chain.spacing;
    const std::vector<double> grid = omega_grid(sim.photon);

    std::vector<DispersionSample> samples(grid.size());
    parallel_for(grid.size(), config.threads, [&](std::size_t i) {
        samples[i] = dispersion_general(grid[i], sim.waveguide, atom, l);
    });

    CsvWriter bands_csv(out_path(config, "bands.csv"), experiment_name(config.experiment),
                        resolved_config_json(config), "omega,cos_kl,kl,allowed", version);
    for (const auto& s : samples)
        bands_csv.row({format_double(s.omega), format_double(s.cos_kl), format_double(s.kl),
                       s.allowed ? "1" : "0"});
    bands_csv.close();

    const auto intervals = scan_bands(sim.photon.sweep->min, sim.photon.sweep->max,
                                      sim.photon.sweep->steps, sim.waveguide, atom, l);
    CsvWriter gaps_csv(out_path(config, "gaps.csv"), experiment_name(config.experiment),
                       resolved_config_json(config), "gap_start,gap_end", version);
    for (const auto& gap : gaps_of(intervals))
        gaps_csv.row({format_double(gap.omega_lo), format_double(gap.omega_hi)});
    gaps_csv.close();

    if (config.svg) {
        std::vector<double> xs, ys;
        for (const auto& s : samples) {
            xs.push_back(s.omega);
            ys.push_back(std::isfinite(s.cos_kl)
                             ? std::max(-3.0, std::min(3.0, s.cos_kl))
                             : std::numeric_limits<double>::quiet_NaN());
        }
        write_svg_chart(out_path(config, "bands.svg"), "dispersion: cos(KL), clipped to [-3,3]",
                        {{"cos_kl", "#1f77b4", xs, ys}});
    }
}

void run_localization(const RunConfig& config) {
    const SimulationConfig& sim = config.sim;
    const DisorderSpec spec = require_disorder(config);
    const Atom atom = sim.chain.atom_template();
    const double spacing = sim.chain.spacing;
    if (!sim.photon.omega)
        throw ConfigError("localization: a single photon omega is required");
    const PhotonQuery q{*sim.photon.omega};

    CsvWriter ln_csv(out_path(config, "lnT_vs_N.csv"), experiment_name(config.experiment),
                     resolved_config_json(config), "n,mean_lnT,std_err", version);
    CsvWriter xi_csv(out_path(config, "xi.csv"), experiment_name(config.experiment),
                     resolved_config_json(config), "sigma,xi,xi_err,fit_r2", version);

    if (config.experiment == ExperimentKind::Localization) {
        const LocalizationFit fit =
            localization_length_mc(atom, spacing, spec, q, sim.waveguide,
                                   config.localization.n_values, config.threads);
        for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
            ln_csv.row({std::to_string(fit.n_values[i]), format_double(fit.per_n[i].mean),
                        format_double(fit.per_n[i].std_err)});
            append_estimate_warning(ln_csv, fit.per_n[i]);
        }
        xi_csv.row({format_double(spec.sigma), format_double(fit.xi), format_double(fit.xi_err),
                    format_double(fit.fit_r2)});
        if (config.svg) {
            std::vector<double> xs, ys;
            for (std::size_t i = 0; i < fit.n_values.size(); ++i) {
                xs.push_back(static_cast<double>(fit.n_values[i]));
                ys.push_back(fit.per_n[i].mean);
            }
            write_svg_chart(out_path(config, "localization.svg"), "mean ln T against N",
                            {{"ln T", "#1f77b4", xs, ys}});
        }
    } else {  // LocSweep: fixed-N ratio estimator per sigma
        if (config.localization.sigmas.empty())
            throw ConfigError("loc-sweep: localization.sigmas must be a non-empty array");
        const std::size_t n = sim.chain.n;
        std::vector<LocalizationPoint> points;
        std::string failure;
        for (double sigma : config.localization.sigmas) {
            const double one_sigma[] = {sigma};
            try {
                const auto pts = localization_sweep(atom, spacing, spec, one_sigma, q,
                                                    sim.waveguide, n, config.threads);
                points.push_back(pts.front());
            } catch (const NumericalError& e) {
                // flush what we have; the footer records the failed point
                ln_csv.comment("WARNING: sigma=" + format_double(sigma) +
                               " failed: " + e.what());
                xi_csv.comment("WARNING: sigma=" + format_double(sigma) +
                               " failed: " + e.what());
                failure = e.what();
                continue;
            }
            const LocalizationPoint& p = points.back();
            ln_csv.row({std::to_string(n), format_double(p.ln_t.mean),
                        format_double(p.ln_t.std_err)});
            append_estimate_warning(ln_csv, p.ln_t);
            xi_csv.row({format_double(p.sigma), format_double(p.xi), format_double(p.xi_err),
                        "nan"});
        }
        if (config.svg) {
            std::vector<double> xs, ys;
            for (const auto& p : points) {
                xs.push_back(p.sigma);
                ys.push_back(p.xi);
            }
            write_svg_chart(out_path(config, "localization.svg"),
                            "localization length against sigma",
                            {{"xi", "#1f77b4", xs, ys}});
        }
        if (!failure.empty()) {
            ln_csv.close();
            xi_csv.close();
            throw NumericalError("loc-sweep: some sigma points failed; partial results "
                                 "written. Last error: " + failure,
                                 0.0, std::numeric_limits<double>::infinity());
        }
    }
    ln_csv.close();
    xi_csv.close();
}

void run(const RunConfig& config) {
    switch (config.experiment) {
        case ExperimentKind::Spectrum:
        case ExperimentKind::DisorderSpectrum: run_spectrum(config); return;
        case ExperimentKind::Bands: run_bands(config); return;
        case ExperimentKind::Localization:
        case ExperimentKind::LocSweep: run_localization(config); return;
    }
}

}  // namespace wqed::cli
