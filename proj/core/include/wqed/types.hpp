// Core domain types and unit conventions shared by all physics modules.
//
// Unit convention: every frequency and rate is a multiple of the reference
// atomic transition frequency omega_1, every velocity is a multiple of the
// reference group velocity v_ref, and every length is a multiple of the
// reference wavelength lambda = 2*pi*v_ref/omega_1. Internally omega_1 = 1
// and v_ref = 1, so one lambda corresponds to 2*pi internal length units.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed {

inline constexpr double lambda_unit = 6.283185307179586476925286766559;  // 2*pi

/// Invalid configuration input (bad chain, bad waveguide, bad file).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical routine failed to reach its tolerance. Carries the best
/// available estimate and the achieved error bound.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& msg, double estimate, double error_bound)
        : std::runtime_error(msg), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// A transfer matrix (or the system built from it) is exactly singular.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class WaveguideKind { Chiral, Bidirectional };

/// Waveguide dispersion data. For a chiral waveguide only v_r is used.
struct WaveguideConfig {
    WaveguideKind kind = WaveguideKind::Bidirectional;
    double v_r = 1.0;      // group velocity of right-going modes (v_ref)
    double v_l = 1.0;      // group velocity of left-going modes (v_ref)
    double omega_0 = 0.0;  // linearization frequency of the dispersion (omega_1)
};

/// One two-level emitter side-coupled to the waveguide.
struct Atom {
    double x = 0.0;        // position (lambda)
    double omega = 1.0;    // transition frequency (omega_1)
    double gamma = 0.0;    // spontaneous emission into non-waveguide channels (omega_1)
    double gamma_r = 0.0;  // waveguide coupling rate Gamma_R = V_R^2/(2 v_R) (omega_1)
    double gamma_l = 0.0;  // waveguide coupling rate Gamma_L = V_L^2/(2 v_L) (omega_1)
};

/// Ordered chain of atoms, ascending in x. Equal positions are allowed
/// (the propagation phase between coincident atoms is zero).
struct AtomChain {
    std::vector<Atom> atoms;

    std::size_t n() const noexcept { return atoms.size(); }
};

/// A monochromatic probe photon.
struct PhotonQuery {
    double omega = 1.0;  // photon frequency (omega_1)
};

/// Checks waveguide invariants; returns a list of violations (empty if ok).
std::vector<std::string> validate_waveguide(const WaveguideConfig& wg);

/// Checks chain invariants (sorted positions, positive frequencies,
/// non-negative rates, at least one atom); returns violations (empty if ok).
std::vector<std::string> validate_chain(const AtomChain& chain);

/// Throws ConfigError listing every violation if the inputs are invalid.
void require_valid(const AtomChain& chain, const WaveguideConfig& wg);

/// Periodic chain with x_j = j * spacing_l, all other fields copied from
/// the template. Throws ConfigError for n = 0 or spacing_l <= 0.
AtomChain build_periodic_chain(std::size_t n, double spacing_l, const Atom& atom_template);

}  // namespace wqed
