// Band structure of an infinite periodic chain from the Bloch eigenvalue
// condition det(T - e^{iKL} I) = 0 of the single-period transfer matrix.
// For lossless atoms this reduces to the explicit dispersion relation
//
//   cos(KL) = [ (D^2 - (G_R^2 - G_L^2)) cos((q_R+q_L)L/2)
//               + 2 D G_R sin((q_R+q_L)L/2) ] / (D^2 + (G_R - G_L)^2),
//
// with a propagating band wherever |cos(KL)| <= 1.

#pragma once

#include <vector>

#include "wqed/types.hpp"

namespace wqed {

/// One dispersion evaluation. `kl` is the Bloch phase in [0, pi] when the
/// sample is in an allowed band and NaN otherwise; at the resonance
/// divergence of the symmetric lossless chain cos_kl is +-infinity.
struct DispersionSample {
    double omega = 0.0;
    double cos_kl = 0.0;
    double kl = 0.0;
    bool allowed = false;
};

/// Contiguous run of allowed (band) or forbidden (gap) frequencies.
struct BandInterval {
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    bool allowed = false;
};

/// Explicit lossless dispersion formula. Requires atom_template.gamma = 0
/// and l > 0 (lattice spacing in lambda).
DispersionSample dispersion_general(double omega, const WaveguideConfig& wg,
                                    const Atom& atom_template, double l);

/// Same quantity from the numerically assembled transfer matrix:
/// cos(KL) = (lambda_+ + lambda_-)/2 = tr(T)/2 since det(T) = 1.
DispersionSample dispersion_from_matrix(double omega, const WaveguideConfig& wg,
                                        const Atom& atom_template, double l);

/// Samples the dispersion on a uniform grid over [omega_min, omega_max],
/// merges contiguous runs, and refines every band edge by bisection to an
/// omega tolerance of 1e-8. steps >= 2.
std::vector<BandInterval> scan_bands(double omega_min, double omega_max, std::size_t steps,
                                     const WaveguideConfig& wg, const Atom& atom_template,
                                     double l);

/// The forbidden intervals of a scan.
std::vector<BandInterval> gaps_of(const std::vector<BandInterval>& intervals);

}  // namespace wqed
