#include "wqed/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wqed/bidirectional.hpp"
#include "wqed/chiral.hpp"
#include "wqed/parallel.hpp"
#include "wqed/rng.hpp"

namespace wqed {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_spec(const DisorderSpec& spec) {
    if (spec.sigma < 0.0) throw ConfigError("disorder: sigma must be >= 0");
    if (spec.realizations == 0) throw ConfigError("disorder: realizations must be >= 1");
}

double observable_value(const AtomChain& chain, const PhotonQuery& query,
                        const WaveguideConfig& wg, Observable obs) {
    if (wg.kind == WaveguideKind::Chiral) {
        switch (obs) {
            case Observable::Transmission: return chiral_transmission(chain, query);
            case Observable::LogTransmission: return chiral_log_transmission(chain, query);
            case Observable::Reflection: return 0.0;  // no backscattering channel
        }
    }
    const TransportCoefficients tc = bidirectional_transport(chain, query, wg);
    switch (obs) {
        case Observable::Transmission: return tc.transmission;
        case Observable::LogTransmission: return tc.log_transmission;
        case Observable::Reflection: return tc.reflection;
    }
    return 0.0;
}

double pairwise(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

// Derived seed for an internal parameter scan step; keeps the scan
// deterministic while decorrelating the chains of different lengths.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return rng::mix64(seed ^ rng::mix64(salt));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise(values); }

AtomChain sample_chain(const AtomChain& base, const DisorderSpec& spec,
                       std::uint64_t realization_index) {
    require_spec(spec);
    AtomChain chain = base;
    const std::size_t n = chain.n();
    if (spec.target == DisorderTarget::Position) {
        for (std::size_t j = 0; j < n; ++j)
            chain.atoms[j].x += rng::normal(spec.seed, realization_index, j, spec.mean, spec.sigma);
        std::sort(chain.atoms.begin(), chain.atoms.end(),
                  [](const Atom& a, const Atom& b) { return a.x < b.x; });
    } else {
        for (std::size_t j = 0; j < n; ++j)
            chain.atoms[j].omega =
                rng::normal(spec.seed, realization_index, j, spec.mean, spec.sigma);
    }
    return chain;
}

McEstimate mc_average(const AtomChain& base, const DisorderSpec& spec, const PhotonQuery& query,
                      const WaveguideConfig& wg, Observable observable, unsigned workers) {
    require_spec(spec);
    require_valid(base, wg);
    const std::size_t r_total = spec.realizations;

    std::vector<double> values(r_total);
    parallel_for(r_total, workers, [&](std::size_t k) {
        const AtomChain chain = sample_chain(base, spec, k);
        values[k] = observable_value(chain, query, wg, observable);
    });

    // ln T = -inf marks an exactly opaque realization; excluded and counted.
    std::vector<double> kept;
    kept.reserve(r_total);
    std::size_t excluded = 0;
    for (double v : values) {
        if (observable == Observable::LogTransmission && v == -inf)
            ++excluded;
        else
            kept.push_back(v);
    }
    if (kept.empty())
        throw NumericalError("mc_average: every realization was excluded (T = 0)", -inf, inf);

    McEstimate est;
    est.r = kept.size();
    est.excluded = excluded;
    est.quality_warning =
        static_cast<double>(excluded) > 1e-3 * static_cast<double>(r_total);
    est.mean = pairwise(kept) / static_cast<double>(kept.size());
    if (kept.size() == 1) {
        est.degenerate = true;
        est.std_err = 0.0;
        return est;
    }
    std::vector<double> sq(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double d = kept[i] - est.mean;
        sq[i] = d * d;
    }
    const double var = pairwise(sq) / static_cast<double>(kept.size() - 1);
    est.std_err = std::sqrt(var / static_cast<double>(kept.size()));
    return est;
}

LocalizationFit localization_length_mc(const Atom& atom_template, double spacing,
                                       const DisorderSpec& spec, const PhotonQuery& query,
                                       const WaveguideConfig& wg,
                                       std::span<const std::size_t> n_values, unsigned workers) {
    std::vector<std::size_t> ns(n_values.begin(), n_values.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.size() < 3)
        throw ConfigError("localization_length_mc: need >= 3 distinct chain lengths");
    if (ns.front() < 1) throw ConfigError("localization_length_mc: chain lengths must be >= 1");

    LocalizationFit fit;
    fit.n_values = ns;
    fit.per_n.reserve(ns.size());
    for (std::size_t n : ns) {
        DisorderSpec local = spec;
        local.seed = derive_seed(spec.seed, n);
        const AtomChain base = build_periodic_chain(n, spacing, atom_template);
        fit.per_n.push_back(
            mc_average(base, local, query, wg, Observable::LogTransmission, workers));
    }

    // unweighted least squares of <ln T> against N
    const double m = static_cast<double>(ns.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double x = static_cast<double>(ns[i]);
        const double y = fit.per_n[i].mean;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / m;

    double ss_res = 0.0, ss_tot = 0.0;
    const double y_mean = sy / m;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double x = static_cast<double>(ns[i]);
        const double y = fit.per_n[i].mean;
        const double resid = y - (fit.slope * x + fit.intercept);
        ss_res += resid * resid;
        ss_tot += (y - y_mean) * (y - y_mean);
    }
    fit.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

    if (fit.slope < 0.0) {
        fit.localized = true;
        fit.xi = -1.0 / fit.slope;
        // slope standard error from the per-point std errors
        double var_slope = 0.0;
        const double x_mean = sx / m;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double cx = (static_cast<double>(ns[i]) - x_mean) / (sxx - sx * sx / m);
            var_slope += cx * cx * fit.per_n[i].std_err * fit.per_n[i].std_err;
        }
        fit.xi_err = std::sqrt(var_slope) / (fit.slope * fit.slope);
    } else {
        fit.localized = false;
        fit.xi = inf;
        fit.xi_err = inf;
    }
    return fit;
}

std::vector<LocalizationPoint> localization_sweep(const Atom& atom_template, double spacing,
                                                  const DisorderSpec& spec,
                                                  std::span<const double> sigmas,
                                                  const PhotonQuery& query,
                                                  const WaveguideConfig& wg, std::size_t n,
                                                  unsigned workers) {
    if (sigmas.empty()) throw ConfigError("localization_sweep: need at least one sigma");
    if (n < 1) throw ConfigError("localization_sweep: n must be >= 1");
    const AtomChain base = build_periodic_chain(n, spacing, atom_template);
    std::vector<LocalizationPoint> out;
    out.reserve(sigmas.size());
    for (double sigma : sigmas) {
        DisorderSpec local = spec;
        local.sigma = sigma;
        const McEstimate est =
            mc_average(base, local, query, wg, Observable::LogTransmission, workers);
        LocalizationPoint p;
        p.sigma = sigma;
        p.ln_t = est;
        if (est.mean < 0.0) {
            p.xi = -static_cast<double>(n) / est.mean;
            p.xi_err = static_cast<double>(n) * est.std_err / (est.mean * est.mean);
        } else {
            p.xi = inf;
            p.xi_err = inf;
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace wqed
