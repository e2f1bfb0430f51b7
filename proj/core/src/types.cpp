#include "wqed/types.hpp"

#include <cmath>
#include <sstream>

namespace wqed {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::vector<std::string> validate_waveguide(const WaveguideConfig& wg) {
    std::vector<std::string> issues;
    if (!finite(wg.v_r) || wg.v_r <= 0.0)
        issues.push_back("waveguide: v_r must be positive and finite");
    if (wg.kind == WaveguideKind::Bidirectional && (!finite(wg.v_l) || wg.v_l <= 0.0))
        issues.push_back("waveguide: v_l must be positive and finite for a bidirectional waveguide");
    if (!finite(wg.omega_0) || wg.omega_0 < 0.0)
        issues.push_back("waveguide: omega_0 must be non-negative and finite");
    return issues;
}

std::vector<std::string> validate_chain(const AtomChain& chain) {
    std::vector<std::string> issues;
    if (chain.atoms.empty()) {
        issues.push_back("chain: must contain at least one atom");
        return issues;
    }
    for (std::size_t j = 0; j < chain.atoms.size(); ++j) {
        const Atom& a = chain.atoms[j];
        std::ostringstream tag;
        tag << "chain: atom " << j;
        if (!finite(a.x)) issues.push_back(tag.str() + ": position must be finite");
        if (!finite(a.omega) || a.omega <= 0.0)
            issues.push_back(tag.str() + ": transition frequency must be positive");
        if (!finite(a.gamma) || a.gamma < 0.0)
            issues.push_back(tag.str() + ": negative rate gamma");
        if (!finite(a.gamma_r) || a.gamma_r < 0.0)
            issues.push_back(tag.str() + ": negative rate gamma_r");
        if (!finite(a.gamma_l) || a.gamma_l < 0.0)
            issues.push_back(tag.str() + ": negative rate gamma_l");
        if (j > 0 && chain.atoms[j - 1].x > a.x) {
            std::ostringstream msg;
            msg << "chain: positions unsorted at index " << j << " (" << chain.atoms[j - 1].x
                << " > " << a.x << ")";
            issues.push_back(msg.str());
        }
    }
    return issues;
}

void require_valid(const AtomChain& chain, const WaveguideConfig& wg) {
    auto issues = validate_waveguide(wg);
    auto chain_issues = validate_chain(chain);
    issues.insert(issues.end(), chain_issues.begin(), chain_issues.end());
    if (!issues.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& s : issues) msg += "\n  - " + s;
        throw ConfigError(msg);
    }
}

AtomChain build_periodic_chain(std::size_t n, double spacing_l, const Atom& atom_template) {
    if (n == 0) throw ConfigError("build_periodic_chain: n must be >= 1");
    if (!(spacing_l > 0.0) || !std::isfinite(spacing_l))
        throw ConfigError("build_periodic_chain: spacing must be positive");
    AtomChain chain;
    chain.atoms.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        Atom a = atom_template;
        a.x = static_cast<double>(j) * spacing_l;
        chain.atoms.push_back(a);
    }
    return chain;
}

}  // namespace wqed
