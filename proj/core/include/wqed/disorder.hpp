// Seeded Gaussian disorder, Monte Carlo averaging of transport observables,
// and localization-length estimation.
//
// Randomness is counter-based: every draw is a pure function of
// (seed, realization index, atom index), and estimates are reduced with a
// fixed-shape pairwise sum over realization order, so results are
// bit-identical for any worker count.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

enum class DisorderTarget { Position, Frequency };

struct DisorderSpec {
    DisorderTarget target = DisorderTarget::Frequency;
    double mean = 0.0;   // Position: displacement mean (lambda); Frequency: mean omega_j (omega_1)
    double sigma = 0.0;  // standard deviation, same units as mean; >= 0
    std::size_t realizations = 1;
    std::uint64_t seed = 0;
};

enum class Observable { Transmission, LogTransmission, Reflection };

/// Monte Carlo estimate of an averaged observable.
struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;           // sample standard deviation / sqrt(r)
    std::size_t r = 0;              // realizations entering the estimate
    std::size_t excluded = 0;       // ln T samples dropped because T = 0 exactly
    bool degenerate = false;        // r == 1: sample variance undefined, std_err = 0
    bool quality_warning = false;   // excluded > 0.1% of requested realizations
};

/// Least-squares fit of <ln T> against N.
struct LocalizationFit {
    double xi = 0.0;      // -1/slope; +inf sentinel when no localization detected
    double xi_err = 0.0;  // propagated from the slope standard error
    double fit_r2 = 0.0;  // coefficient of determination
    double slope = 0.0;
    double intercept = 0.0;
    bool localized = false;  // slope < 0
    std::vector<std::size_t> n_values;
    std::vector<McEstimate> per_n;
};

/// One point of a localization-length sweep (fixed-N ratio estimator).
struct LocalizationPoint {
    double sigma = 0.0;
    double xi = 0.0;      // -n/<ln T>; +inf sentinel when <ln T> >= 0
    double xi_err = 0.0;  // n * std_err(<ln T>) / <ln T>^2
    McEstimate ln_t;      // the underlying <ln T> estimate
};

/// Disorder realization `realization_index` of the base chain.
/// Position target: x_j <- x_j + g_j with g_j ~ N(mean, sigma), then sorted
/// ascending. Frequency target: omega_j <- N(mean, sigma), positions kept.
AtomChain sample_chain(const AtomChain& base, const DisorderSpec& spec,
                       std::uint64_t realization_index);

/// Mean and standard error of the observable over spec.realizations
/// disorder realizations. Realizations with T = 0 are excluded from ln T
/// averages (counted; > 0.1% exclusions sets quality_warning). Throws
/// NumericalError when every realization was excluded.
McEstimate mc_average(const AtomChain& base, const DisorderSpec& spec, const PhotonQuery& query,
                      const WaveguideConfig& wg, Observable observable, unsigned workers = 0);

/// Localization length from the linear fit of <ln T> against chain length,
/// <ln T> = -N/xi + c, over periodic chains built from the template atom.
/// Needs >= 3 distinct chain lengths.
LocalizationFit localization_length_mc(const Atom& atom_template, double spacing,
                                       const DisorderSpec& spec, const PhotonQuery& query,
                                       const WaveguideConfig& wg,
                                       std::span<const std::size_t> n_values,
                                       unsigned workers = 0);

/// xi(sigma) at fixed chain length n via xi = -n/<ln T> per sigma.
std::vector<LocalizationPoint> localization_sweep(const Atom& atom_template, double spacing,
                                                  const DisorderSpec& spec,
                                                  std::span<const double> sigmas,
                                                  const PhotonQuery& query,
                                                  const WaveguideConfig& wg, std::size_t n,
                                                  unsigned workers = 0);

/// Fixed-shape pairwise sum (deterministic regardless of worker count).
double pairwise_sum(std::span<const double> values);

}  // namespace wqed
