#include "wqed/chiral.hpp"

#include <cmath>
#include <limits>

#include "wqed/quadrature.hpp"

namespace wqed {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// |T_j|^2 as a function of detuning; numerator and denominator share the
// d^2 term, so gamma = 0 yields exactly 1.0.
double tau_squared(double delta, double gamma, double big_gamma) {
    const double num = delta * delta + (gamma - big_gamma) * (gamma - big_gamma);
    const double den = delta * delta + (gamma + big_gamma) * (gamma + big_gamma);
    if (den == 0.0) return 1.0;  // decoupled lossless atom on resonance
    return num / den;
}

}  // namespace

ChiralScatterer chiral_atom_factor(const Atom& atom, const PhotonQuery& query) {
    const double delta = query.omega - atom.omega;
    const std::complex<double> num(delta, atom.gamma - atom.gamma_r);
    const std::complex<double> den(delta, atom.gamma + atom.gamma_r);
    if (den == std::complex<double>(0.0, 0.0)) return {std::complex<double>(1.0, 0.0)};
    return {num / den};
}

double chiral_transmission(const AtomChain& chain, const PhotonQuery& query) {
    double t = 1.0;
    for (const Atom& a : chain.atoms)
        t *= tau_squared(query.omega - a.omega, a.gamma, a.gamma_r);
    return t;
}

double chiral_log_transmission(const AtomChain& chain, const PhotonQuery& query) {
    double log_t = 0.0;
    for (const Atom& a : chain.atoms) {
        const double f = tau_squared(query.omega - a.omega, a.gamma, a.gamma_r);
        if (f == 0.0) return -inf;
        log_t += std::log(f);
    }
    return log_t;
}

std::vector<std::complex<double>> chiral_amplitude_profile(const AtomChain& chain,
                                                           const PhotonQuery& query) {
    std::vector<std::complex<double>> t;
    t.reserve(chain.n());
    std::complex<double> acc(1.0, 0.0);
    for (const Atom& a : chain.atoms) {
        acc *= chiral_atom_factor(a, query).t_factor;
        t.push_back(acc);
    }
    return t;
}

double avg_tau_squared(double mean_delta, double sigma, double gamma, double big_gamma) {
    if (sigma < 0.0 || gamma < 0.0 || big_gamma < 0.0)
        throw ConfigError("avg_tau_squared: sigma, gamma, big_gamma must be >= 0");
    const double coupling = 4.0 * gamma * big_gamma;
    if (coupling == 0.0) return 1.0;  // all-pass: |tau| = 1 for every detuning
    if (sigma == 0.0) return tau_squared(mean_delta, gamma, big_gamma);  // elementary limit
    const double gp2 = (gamma + big_gamma) * (gamma + big_gamma);
    const double d2 = mean_delta * mean_delta;
    const double s2 = 2.0 * sigma * sigma;
    auto integrand = [&](double lam) {
        const double stretch = 1.0 + lam * s2;
        return std::exp(-lam * gp2 - lam * d2 / stretch) / std::sqrt(stretch);
    };
    const auto res = quad::integrate_semi_infinite(integrand);
    const double value = 1.0 - coupling * quad::require_converged(res, "avg_tau_squared");
    return std::min(1.0, std::max(0.0, value));
}

double avg_transmission_chiral(std::size_t n, double mean_delta, double sigma, double gamma,
                               double big_gamma) {
    if (n == 0) throw ConfigError("avg_transmission_chiral: n must be >= 1");
    return std::pow(avg_tau_squared(mean_delta, sigma, gamma, big_gamma),
                    static_cast<double>(n));
}

double localization_length_chiral(double mean_delta, double sigma, double gamma,
                                  double big_gamma) {
    if (sigma < 0.0 || gamma < 0.0 || big_gamma < 0.0)
        throw ConfigError("localization_length_chiral: sigma, gamma, big_gamma must be >= 0");
    if (gamma * big_gamma == 0.0) return inf;  // |tau| = 1, no attenuation
    auto neg_log_tau2 = [&](double delta) {
        const double t2 = tau_squared(delta, gamma, big_gamma);
        if (t2 == 0.0) return inf;
        return -std::log(t2);
    };
    if (sigma == 0.0) {
        const double v = neg_log_tau2(mean_delta);
        if (v == inf) return 0.0;  // tau = 0: perfectly reflecting
        return v > 0.0 ? 1.0 / v : inf;
    }
    // The integrand has an integrable log singularity at delta = 0 when
    // gamma = Gamma; keep it on an interval edge.
    const auto res = quad::gaussian_expectation(neg_log_tau2, mean_delta, sigma, {0.0});
    const double xi_inv = quad::require_converged(res, "localization_length_chiral");
    return xi_inv > 0.0 ? 1.0 / xi_inv : inf;
}

double localization_length_chiral_critical(double mean_delta, double sigma, double big_gamma) {
    if (sigma < 0.0 || big_gamma < 0.0)
        throw ConfigError("localization_length_chiral_critical: sigma, big_gamma must be >= 0");
    if (big_gamma == 0.0) return inf;
    // Substituting delta = 2 Gamma x turns the explicit integral into the
    // expectation of -ln(1 - 1/(1+x^2)) under x ~ N(mean/(2G), sigma/(2G)).
    const double mu = mean_delta / (2.0 * big_gamma);
    const double s = sigma / (2.0 * big_gamma);
    auto h = [](double x) {
        const double x2 = x * x;
        if (x2 == 0.0) return inf;
        return -std::log(x2 / (1.0 + x2));
    };
    if (s == 0.0) {
        const double v = h(mu);
        if (v == inf) return 0.0;
        return v > 0.0 ? 1.0 / v : inf;
    }
    const auto res = quad::gaussian_expectation(h, mu, s, {0.0});
    const double xi_inv = quad::require_converged(res, "localization_length_chiral_critical");
    return xi_inv > 0.0 ? 1.0 / xi_inv : inf;
}

}  // namespace wqed
