// Transfer-matrix transport for bidirectional waveguides, plus a dense
// linear-system solver used as an independent numerical oracle.
//
// Per atom j (detuning D = omega - omega_j + i gamma_j, couplings
// Gamma_R, Gamma_L, propagation phase phi = (q_R + q_L)(x_j - x_{j-1})/2):
//
//        [ e^{i phi}/s*        -(p*/s*) e^{-i phi} ]
//   T_j =[                                          ],
//        [ -(p/s) e^{i phi}     e^{-i phi}/s        ]
//
//   s = (D - i(G_R - G_L))/(D + i(G_R + G_L)),
//   p = -2i sqrt(G_R G_L) /(D + i(G_R + G_L)),
//
// acting on the rescaled amplitude pair (t~_{j-1}, r~_j) -> (t~_j, r~_{j+1}).
// The conjugated entries are the real-detuning forms continued to complex D,
// so gamma > 0 damps transport and the G_L -> 0 limit reproduces the chiral
// factors exactly. det T_j = 1 identically. Reflection amplitudes are flux
// normalized: T + R = 1 holds for every lossless chain.

#pragma once

#include <complex>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

/// 2x2 complex transfer matrix acting on (t~_{j-1}, r~_j)^T.
struct TransferMatrix2 {
    std::complex<double> m11, m12, m21, m22;

    std::complex<double> det() const { return m11 * m22 - m12 * m21; }
    std::complex<double> trace() const { return m11 + m22; }
};

/// Net scattering of a chain: amplitudes, coefficients, per-site profiles.
struct ScatteringResult {
    std::complex<double> t_amp;  // net transmission amplitude t_N
    std::complex<double> r_amp;  // net reflection amplitude r_1 (flux normalized)
    double transmission = 0.0;   // T = |t_N|^2
    double reflection = 0.0;     // R = |r_1|^2
    double log_transmission = 0.0;  // ln T, valid even when T underflows
    std::vector<std::complex<double>> t_sites;  // t_1..t_N
    std::vector<std::complex<double>> r_sites;  // r_1..r_N
};

/// Lightweight transport coefficients (no per-site amplitudes).
struct TransportCoefficients {
    double transmission = 0.0;
    double reflection = 0.0;
    double log_transmission = 0.0;
};

/// Transfer matrix of one atom; prev_x is the position of the previous atom
/// (use atom.x for the first one). Throws SingularMatrixError when s_j = 0
/// (lossless symmetric atom exactly on resonance).
TransferMatrix2 transfer_matrix(const Atom& atom, double prev_x, const PhotonQuery& query,
                                const WaveguideConfig& wg);

/// Transport through the whole chain via the accumulated matrix product
/// M = T_N ... T_1 with the boundary conditions t_0 = 1, r_{N+1} = 0:
/// r~_1 = -M21/M22 and t~_N = det(M)/M22. Exactly singular frequency
/// samples are delegated to solve_amplitudes_dense.
ScatteringResult chain_scattering(const AtomChain& chain, const PhotonQuery& query,
                                  const WaveguideConfig& wg);

/// Same contract as chain_scattering, computed by assembling the per-atom
/// relations into one 2N x 2N linear system solved by LU with full pivoting.
/// A rank-deficient system (exact resonance) is re-solved with the photon
/// frequency perturbed by 1e-12.
ScatteringResult solve_amplitudes_dense(const AtomChain& chain, const PhotonQuery& query,
                                        const WaveguideConfig& wg);

/// T, R and ln T only; the fast path used by Monte Carlo sweeps.
TransportCoefficients bidirectional_transport(const AtomChain& chain, const PhotonQuery& query,
                                              const WaveguideConfig& wg);

}  // namespace wqed
