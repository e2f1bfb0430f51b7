#include "wqed/bidirectional.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wqed {

namespace {

using cd = std::complex<double>;

struct AtomFactors {
    cd w;       // D + i(G_R - G_L), denominator of the first row
    cd wbar;    // D - i(G_R - G_L), denominator of the second row
    cd a;       // D - i(G_R + G_L)
    cd dplus;   // D + i(G_R + G_L)
    cd b;       // 2i sqrt(G_R G_L)
};

AtomFactors factors(const Atom& atom, const PhotonQuery& query) {
    const cd delta(query.omega - atom.omega, atom.gamma);
    const double gr = atom.gamma_r;
    const double gl = atom.gamma_l;
    const cd i_asym(0.0, gr - gl);
    const cd i_sum(0.0, gr + gl);
    return {delta + i_asym, delta - i_asym, delta - i_sum, delta + i_sum,
            cd(0.0, 2.0 * std::sqrt(gr * gl))};
}

double half_wavenumber_sum(const PhotonQuery& query, const WaveguideConfig& wg) {
    const double qr = (query.omega - wg.omega_0) / wg.v_r;
    const double ql = (query.omega - wg.omega_0) / wg.v_l;
    return 0.5 * (qr + ql);
}

bool is_singular(const AtomFactors& f) { return f.wbar == cd(0.0, 0.0); }

void require_bidirectional(const AtomChain& chain, const WaveguideConfig& wg) {
    require_valid(chain, wg);
    if (wg.kind != WaveguideKind::Bidirectional)
        throw ConfigError("bidirectional transport requires a bidirectional waveguide config");
}

TransferMatrix2 assemble(const AtomFactors& f, double phase) {
    const cd e(std::cos(phase), std::sin(phase));
    const cd einv = std::conj(e);
    return {e * f.a / f.w, -f.b * einv / f.w, f.b * e / f.wbar, f.dplus * einv / f.wbar};
}

struct Accumulated {
    cd m11{1.0, 0.0}, m12{0.0, 0.0}, m21{0.0, 0.0}, m22{1.0, 0.0};
    double log_scale = 0.0;  // ln of the factored-out magnitude
    cd det{1.0, 0.0};        // prod det(T_j), accumulated per atom
    double log_det_mag = 0.0;

    void multiply_left(const TransferMatrix2& t) {
        const cd n11 = t.m11 * m11 + t.m12 * m21;
        const cd n12 = t.m11 * m12 + t.m12 * m22;
        const cd n21 = t.m21 * m11 + t.m22 * m21;
        const cd n22 = t.m21 * m12 + t.m22 * m22;
        m11 = n11;
        m12 = n12;
        m21 = n21;
        m22 = n22;
        const cd dj = t.det();
        det *= dj / std::abs(dj);
        log_det_mag += std::log(std::abs(dj));
        const double mag = std::max(std::abs(n11) + std::abs(n12),
                                    std::abs(n21) + std::abs(n22));
        if (mag > 1e100) {
            const double inv = 1.0 / mag;
            m11 *= inv;
            m12 *= inv;
            m21 *= inv;
            m22 *= inv;
            log_scale += std::log(mag);
        }
    }
};

// Walks the chain accumulating M = T_N ... T_1. Returns false when an
// exactly singular atom is found.
bool accumulate(const AtomChain& chain, const PhotonQuery& query, const WaveguideConfig& wg,
                Accumulated& acc) {
    const double theta = half_wavenumber_sum(query, wg);
    double prev_x = chain.atoms.front().x;
    for (const Atom& atom : chain.atoms) {
        const AtomFactors f = factors(atom, query);
        if (is_singular(f)) return false;
        const double phase = theta * (atom.x - prev_x) * lambda_unit;
        acc.multiply_left(assemble(f, phase));
        prev_x = atom.x;
    }
    return true;
}

double clamp_unit(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

TransferMatrix2 transfer_matrix(const Atom& atom, double prev_x, const PhotonQuery& query,
                                const WaveguideConfig& wg) {
    if (prev_x > atom.x)
        throw ConfigError("transfer_matrix: prev_x must not exceed the atom position");
    const AtomFactors f = factors(atom, query);
    if (is_singular(f)) {
        std::ostringstream msg;
        msg << "transfer_matrix: singular at omega = " << query.omega
            << " (lossless symmetric atom on resonance)";
        throw SingularMatrixError(msg.str());
    }
    const double phase = half_wavenumber_sum(query, wg) * (atom.x - prev_x) * lambda_unit;
    return assemble(f, phase);
}

TransportCoefficients bidirectional_transport(const AtomChain& chain, const PhotonQuery& query,
                                              const WaveguideConfig& wg) {
    require_bidirectional(chain, wg);
    Accumulated acc;
    if (!accumulate(chain, query, wg, acc)) {
        const ScatteringResult res = solve_amplitudes_dense(chain, query, wg);
        return {res.transmission, res.reflection, res.log_transmission};
    }
    const double abs_m22 = std::abs(acc.m22);
    if (abs_m22 * std::exp(acc.log_scale) < 1e-30)
        throw SingularMatrixError("chain_scattering: net transfer matrix is singular (M22 ~ 0)");
    TransportCoefficients out;
    out.log_transmission =
        2.0 * (acc.log_det_mag - acc.log_scale - std::log(abs_m22));
    out.transmission = clamp_unit(std::exp(out.log_transmission));
    out.reflection = clamp_unit(std::norm(acc.m21 / acc.m22));
    return out;
}

ScatteringResult chain_scattering(const AtomChain& chain, const PhotonQuery& query,
                                  const WaveguideConfig& wg) {
    require_bidirectional(chain, wg);
    Accumulated acc;
    if (!accumulate(chain, query, wg, acc))
        return solve_amplitudes_dense(chain, query, wg);  // exact-resonance sample

    const double abs_m22 = std::abs(acc.m22);
    if (abs_m22 * std::exp(acc.log_scale) < 1e-30)
        throw SingularMatrixError("chain_scattering: net transfer matrix is singular (M22 ~ 0)");

    const double theta = half_wavenumber_sum(query, wg);
    const double x1 = chain.atoms.front().x * lambda_unit;
    const cd t0_tilde(std::cos(theta * x1), std::sin(theta * x1));  // t_0 = 1 gauge

    ScatteringResult res;
    // t~_N = det(M)/M22 * t~_0, r~_1 = -M21/M22 * t~_0; the rescaling of M
    // cancels in the ratios and is restored through log_det/log_scale.
    const cd r1_tilde = -(acc.m21 / acc.m22) * t0_tilde;
    const double log_t_mag = acc.log_det_mag - acc.log_scale - std::log(abs_m22);
    const cd t_phase = acc.det / (acc.m22 / abs_m22);
    const cd tn_tilde = t_phase * std::exp(log_t_mag) * t0_tilde;

    res.log_transmission = 2.0 * log_t_mag;
    res.transmission = clamp_unit(std::exp(res.log_transmission));
    res.reflection = clamp_unit(std::norm(r1_tilde));

    // Per-site amplitudes by forward recursion, then undo the gauge:
    // t_j = t~_j e^{-i theta x_j}, r_j = r~_j e^{+i theta x_{j-1}} (x_0 = x_1).
    const std::size_t n = chain.n();
    res.t_sites.resize(n);
    res.r_sites.resize(n);
    cd t_prev = t0_tilde;
    cd r_cur = r1_tilde;
    double prev_x = chain.atoms.front().x;
    for (std::size_t j = 0; j < n; ++j) {
        const Atom& atom = chain.atoms[j];
        const TransferMatrix2 t = transfer_matrix(atom, prev_x, query, wg);
        const cd t_new = t.m11 * t_prev + t.m12 * r_cur;
        const cd r_next = t.m21 * t_prev + t.m22 * r_cur;
        const double xj = atom.x * lambda_unit;
        const double xp = prev_x * lambda_unit;
        res.t_sites[j] = t_new * std::exp(cd(0.0, -theta * xj));
        res.r_sites[j] = r_cur * std::exp(cd(0.0, theta * xp));
        t_prev = t_new;
        r_cur = r_next;
        prev_x = atom.x;
    }
    // Net amplitudes from the matrix solve (stable even deep inside a gap,
    // where the forward recursion loses the decaying solution).
    res.t_amp = tn_tilde * std::exp(cd(0.0, -theta * chain.atoms.back().x * lambda_unit));
    res.r_amp = res.r_sites.front();
    res.t_sites.back() = res.t_amp;
    return res;
}

ScatteringResult solve_amplitudes_dense(const AtomChain& chain, const PhotonQuery& query,
                                        const WaveguideConfig& wg) {
    require_bidirectional(chain, wg);

    const std::size_t n = chain.n();
    const std::size_t dim = 2 * n;

    auto build_and_solve = [&](const PhotonQuery& q, bool gate_rank,
                               Eigen::VectorXcd& out) -> bool {
        const double theta = half_wavenumber_sum(q, wg);
        Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(dim, dim);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
        // unknowns: u[0..n-1] = t~_1..t~_N, u[n..2n-1] = r~_1..r~_N
        const double x1 = chain.atoms.front().x * lambda_unit;
        const cd t0_tilde(std::cos(theta * x1), std::sin(theta * x1));
        double prev_x = chain.atoms.front().x;
        for (std::size_t j = 0; j < n; ++j) {
            const Atom& atom = chain.atoms[j];
            const AtomFactors f = factors(atom, q);
            const double phase = theta * (atom.x - prev_x) * lambda_unit;
            const cd e(std::cos(phase), std::sin(phase));
            const cd einv = std::conj(e);
            // row 2j:   W t~_j + b e^{-i phi} r~_j - a e^{i phi} t~_{j-1} = 0
            sys(2 * j, j) = f.w;
            sys(2 * j, n + j) = f.b * einv;
            if (j == 0)
                rhs(0) = f.a * e * t0_tilde;
            else
                sys(2 * j, j - 1) = -f.a * e;
            // row 2j+1: Wb r~_{j+1} - dplus e^{-i phi} r~_j - b e^{i phi} t~_{j-1} = 0
            sys(2 * j + 1, n + j) = -f.dplus * einv;
            if (j + 1 < n) sys(2 * j + 1, n + j + 1) = f.wbar;  // r~_{N+1} = 0 drops out
            if (j == 0)
                rhs(1) = f.b * e * t0_tilde;
            else
                sys(2 * j + 1, j - 1) = -f.b * e;
            prev_x = atom.x;
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(sys);
        if (gate_rank) {
            lu.setThreshold(1e-13);
            if (lu.rank() < static_cast<Eigen::Index>(dim)) return false;
        } else {
            double min_pivot = std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dim); ++k)
                min_pivot = std::min(min_pivot, std::abs(lu.matrixLU()(k, k)));
            if (min_pivot == 0.0) {
                std::ostringstream msg;
                msg << "solve_amplitudes_dense: exactly singular system, rcond ~ "
                    << min_pivot / std::abs(lu.matrixLU()(0, 0));
                throw NumericalError(msg.str(), 0.0,
                                     std::numeric_limits<double>::infinity());
            }
        }
        out = lu.solve(rhs);
        return out.allFinite();
    };

    Eigen::VectorXcd u;
    PhotonQuery q = query;
    if (!build_and_solve(q, true, u)) {
        // exact resonance: the limit system is rank deficient; nudge the
        // frequency and solve the (tiny-pivot but nonsingular) neighbor
        q.omega = query.omega + 1e-12 * std::max(1.0, std::abs(query.omega));
        if (!build_and_solve(q, false, u))
            throw NumericalError(
                "solve_amplitudes_dense: non-finite solution after frequency perturbation",
                0.0, std::numeric_limits<double>::infinity());
    }

    const double theta = half_wavenumber_sum(q, wg);
    ScatteringResult res;
    res.t_sites.resize(n);
    res.r_sites.resize(n);
    double prev_x = chain.atoms.front().x;
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = chain.atoms[j].x * lambda_unit;
        const double xp = prev_x * lambda_unit;
        res.t_sites[j] = u(j) * std::exp(cd(0.0, -theta * xj));
        res.r_sites[j] = u(n + j) * std::exp(cd(0.0, theta * xp));
        prev_x = chain.atoms[j].x;
    }
    res.t_amp = res.t_sites.back();
    res.r_amp = res.r_sites.front();
    res.transmission = clamp_unit(std::norm(res.t_amp));
    res.reflection = clamp_unit(std::norm(res.r_amp));
    res.log_transmission = res.transmission > 0.0
                               ? std::log(res.transmission)
                               : -std::numeric_limits<double>::infinity();
    return res;
}

}  // namespace wqed
