// Single-photon transport through a chain of two-level atoms coupled to a
// chiral (single-direction) waveguide, plus closed-form disorder averages
// for Gaussian frequency disorder.
//
// Per atom, with detuning d = omega - omega_j, the transmission factor is
//
//     T_j = (d + i(gamma_j - Gamma_j)) / (d + i(gamma_j + Gamma_j)),
//
// the net transmission is T = prod |T_j|^2, independent of every position.

#pragma once

#include <complex>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

/// Per-atom forward scattering factor.
struct ChiralScatterer {
    std::complex<double> t_factor;  // T_j; |T_j| <= 1, and |T_j| = 1 when gamma = 0
};

/// T_j for one atom. A completely decoupled lossless atom exactly on
/// resonance (d = 0, gamma + Gamma = 0) is transparent: T_j = 1.
ChiralScatterer chiral_atom_factor(const Atom& atom, const PhotonQuery& query);

/// Net transmission T = prod |T_j|^2 in [0, 1]. Does not depend on x_j.
double chiral_transmission(const AtomChain& chain, const PhotonQuery& query);

/// ln T, accumulated in log space (well defined for chains deep in the
/// localized regime where T underflows). Returns -inf when some T_j = 0.
double chiral_log_transmission(const AtomChain& chain, const PhotonQuery& query);

/// Amplitudes t_1..t_N from the recursion t_j = T_j t_{j-1}, t_0 = 1.
std::vector<std::complex<double>> chiral_amplitude_profile(const AtomChain& chain,
                                                           const PhotonQuery& query);

/// Disorder-averaged single-atom transmission <|tau|^2> for detunings
/// drawn from a Gaussian of mean `mean_delta` and deviation `sigma`:
///
///   <|tau|^2> = 1 - 4 gamma Gamma int_0^inf
///       exp[-lam (gamma+Gamma)^2 - lam mean_delta^2/(1+2 lam sigma^2)]
///       / sqrt(1 + 2 lam sigma^2) d lam.
///
/// Throws NumericalError if the quadrature tolerance is not met.
double avg_tau_squared(double mean_delta, double sigma, double gamma, double big_gamma);

/// <T> = <|tau|^2>^n for an n-atom chain with i.i.d. Gaussian detunings.
double avg_transmission_chiral(std::size_t n, double mean_delta, double sigma, double gamma,
                               double big_gamma);

/// Localization length xi (in atoms) from xi^-1 = -<ln |tau|^2>, the average
/// taken over the Gaussian detuning density. Returns 0 when tau is exactly 0
/// with sigma = 0 (critically coupled on resonance), +inf when the chain is
/// transparent (gamma * Gamma = 0).
double localization_length_chiral(double mean_delta, double sigma, double gamma,
                                  double big_gamma);

/// Critical-coupling (gamma = Gamma) localization length from the explicit
/// integral
///   xi^-1 = -(2 Gamma / sqrt(2 pi sigma^2)) int ln(1 - 1/(1+x^2))
///              exp(-(2 Gamma x - mean_delta)^2 / (2 sigma^2)) dx.
/// Must agree with localization_length_chiral(mean_delta, sigma, G, G).
double localization_length_chiral_critical(double mean_delta, double sigma, double big_gamma);

}  // namespace wqed
