#include "wqed/bands.hpp"

#include <cmath>
#include <limits>

#include "wqed/bidirectional.hpp"

namespace wqed {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

DispersionSample classify(double omega, double cos_kl) {
    DispersionSample s;
    s.omega = omega;
    s.cos_kl = cos_kl;
    s.allowed = std::abs(cos_kl) <= 1.0;  // band edges count as allowed
    s.kl = s.allowed ? std::acos(cos_kl) : nan_v;
    return s;
}

void require_lossless(const Atom& atom_template, double l) {
    if (atom_template.gamma != 0.0)
        throw ConfigError("dispersion: the lossless formula requires gamma = 0");
    if (!(l > 0.0)) throw ConfigError("dispersion: lattice spacing must be positive");
}

double phase_arg(double omega, const WaveguideConfig& wg, double l) {
    const double qr = (omega - wg.omega_0) / wg.v_r;
    const double ql = (omega - wg.omega_0) / wg.v_l;
    return 0.5 * (qr + ql) * l * lambda_unit;
}

}  // namespace

DispersionSample dispersion_general(double omega, const WaveguideConfig& wg,
                                    const Atom& atom_template, double l) {
    require_lossless(atom_template, l);
    const double gr = atom_template.gamma_r;
    const double gl = atom_template.gamma_l;
    const double delta = omega - atom_template.omega;
    const double phi = phase_arg(omega, wg, l);
    const double cphi = std::cos(phi);
    const double sphi = std::sin(phi);
    const double den = delta * delta + (gr - gl) * (gr - gl);
    if (den == 0.0) {
        // symmetric lossless atom on resonance: cos(KL) -> +-inf unless the
        // propagation phase term vanishes too
        if (sphi == 0.0) return classify(omega, cphi);
        return classify(omega, std::copysign(inf, sphi));
    }
    const double num = (delta * delta - (gr * gr - gl * gl)) * cphi + 2.0 * delta * gr * sphi;
    return classify(omega, num / den);
}

DispersionSample dispersion_from_matrix(double omega, const WaveguideConfig& wg,
                                        const Atom& atom_template, double l) {
    require_lossless(atom_template, l);
    Atom atom = atom_template;
    atom.x = l;
    const PhotonQuery query{omega};
    TransferMatrix2 t;
    try {
        t = transfer_matrix(atom, 0.0, query, wg);
    } catch (const SingularMatrixError&) {
        const double sphi = std::sin(phase_arg(omega, wg, l));
        if (sphi == 0.0) return classify(omega, std::cos(phase_arg(omega, wg, l)));
        return classify(omega, std::copysign(inf, sphi));
    }
    // det(T) = 1, so the eigenvalue sum of the Bloch condition is tr(T).
    return classify(omega, 0.5 * t.trace().real());
}

std::vector<BandInterval> scan_bands(double omega_min, double omega_max, std::size_t steps,
                                     const WaveguideConfig& wg, const Atom& atom_template,
                                     double l) {
    if (steps < 2) throw ConfigError("scan_bands: steps must be >= 2");
    if (!(omega_min < omega_max)) throw ConfigError("scan_bands: empty frequency range");
    require_lossless(atom_template, l);

    auto allowed_at = [&](double w) {
        return dispersion_general(w, wg, atom_template, l).allowed;
    };

    const double dw = (omega_max - omega_min) / static_cast<double>(steps - 1);
    std::vector<bool> allowed(steps);
    for (std::size_t i = 0; i < steps; ++i)
        allowed[i] = allowed_at(omega_min + dw * static_cast<double>(i));

    // refine each classification flip by bisection to 1e-8 in omega
    std::vector<BandInterval> out;
    double run_start = omega_min;
    for (std::size_t i = 0; i + 1 < steps; ++i) {
        if (allowed[i] == allowed[i + 1]) continue;
        double lo = omega_min + dw * static_cast<double>(i);
        double hi = lo + dw;
        const bool lo_allowed = allowed[i];
        while (hi - lo > 1e-8) {
            const double mid = 0.5 * (lo + hi);
            if (allowed_at(mid) == lo_allowed)
                lo = mid;
            else
                hi = mid;
        }
        const double edge = 0.5 * (lo + hi);
        out.push_back({run_start, edge, allowed[i]});
        run_start = edge;
    }
    out.push_back({run_start, omega_max, allowed[steps - 1]});
    return out;
}

std::vector<BandInterval> gaps_of(const std::vector<BandInterval>& intervals) {
    std::vector<BandInterval> gaps;
    for (const auto& iv : intervals)
        if (!iv.allowed) gaps.push_back(iv);
    return gaps;
}

}  // namespace wqed
