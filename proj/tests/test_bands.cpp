#include <doctest.h>

#include <cmath>
#include <random>

#include "wqed/bands.hpp"
#include "wqed/bidirectional.hpp"

using namespace wqed;

namespace {

WaveguideConfig bidi(double v_r = 1.0, double v_l = 1.0) {
    WaveguideConfig wg;
    wg.kind = WaveguideKind::Bidirectional;
    wg.v_r = v_r;
    wg.v_l = v_l;
    return wg;
}

Atom lattice_atom(double gr, double gl) { return Atom{0.0, 1.0, 0.0, gr, gl}; }

// the gap interval containing (or nearest to) omega
const BandInterval* gap_around(const std::vector<BandInterval>& gaps, double omega) {
    for (const auto& g : gaps)
        if (g.omega_lo <= omega && omega <= g.omega_hi) return &g;
    return nullptr;
}

}  // namespace

TEST_CASE("decoupling limit: free-photon dispersion") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.1, 0.05);
    const double omega = 1.0e6;
    const DispersionSample s = dispersion_general(omega, wg, atom, 0.5);
    const double phi = omega * 0.5 * lambda_unit;
    CHECK(s.cos_kl == doctest::Approx(std::cos(phi)).epsilon(1e-5));
}

TEST_CASE("symmetric case reduces to cos(qL) + (2G/D) sin(qL)") {
    const WaveguideConfig wg = bidi();
    const double G = 0.1, l = 0.5;
    const Atom atom = lattice_atom(G, G);
    for (double omega = 0.52; omega < 2.5; omega += 0.037) {
        const double q = omega;  // v = 1, omega_0 = 0
        const double ql = q * l * lambda_unit;
        const double expected = std::cos(ql) + (2.0 * G / (omega - 1.0)) * std::sin(ql);
        const DispersionSample s = dispersion_general(omega, wg, atom, l);
        CHECK(s.cos_kl == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("matrix route equals the explicit formula") {
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> om(0.4, 2.6), rate(0.0, 0.35), ell(0.1, 1.5),
        vel(0.5, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const WaveguideConfig wg = bidi(1.0, vel(gen));
        const Atom atom = lattice_atom(rate(gen), rate(gen));
        const double l = ell(gen);
        const double omega = om(gen);
        const DispersionSample a = dispersion_general(omega, wg, atom, l);
        const DispersionSample b = dispersion_from_matrix(omega, wg, atom, l);
        const double scale = std::max({1.0, std::abs(a.cos_kl), std::abs(b.cos_kl)});
        CHECK(std::abs(a.cos_kl - b.cos_kl) <= 1e-10 * scale);
        CHECK(a.allowed == b.allowed);
    }
}

TEST_CASE("chiral coupling has no gaps") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.2, 0.0);
    for (double omega = 0.3; omega < 3.0; omega += 0.013) {
        const DispersionSample s = dispersion_general(omega, wg, atom, 0.5);
        CHECK(s.allowed);
        CHECK(std::abs(s.cos_kl) <= 1.0);
        // Bloch eigenvalues stay on the unit circle in the chiral limit
        const DispersionSample m = dispersion_from_matrix(omega, wg, atom, 0.5);
        CHECK(m.allowed);
    }
    const auto bands = scan_bands(0.3, 3.0, 2001, wg, atom, 0.5);
    CHECK(gaps_of(bands).empty());
}

TEST_CASE("band edge value from the symmetric formula") {
    // qL = pi/2 and Delta = 2 Gamma: cos KL = cos(pi/2) + 1*sin(pi/2) = 1
    const WaveguideConfig wg = bidi();
    const double G = 0.1;
    const Atom atom = lattice_atom(G, G);
    const double omega = 1.0 + 2.0 * G;
    const double l = (0.5 * 3.14159265358979323846) / (omega * lambda_unit);
    const DispersionSample s = dispersion_general(omega, wg, atom, l);
    CHECK(s.cos_kl == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("resonance divergence is classified as a gap") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.1, 0.1);
    const DispersionSample s = dispersion_general(1.0, wg, atom, 0.52);
    CHECK(std::isinf(s.cos_kl));
    CHECK(!s.allowed);
    const DispersionSample m = dispersion_from_matrix(1.0, wg, atom, 0.52);
    CHECK(std::isinf(m.cos_kl));
    CHECK(!m.allowed);
}

TEST_CASE("kl is the arccos branch in [0, pi] on allowed samples") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.1, 0.1);
    for (double omega = 1.4; omega < 2.0; omega += 0.01) {
        const DispersionSample s = dispersion_general(omega, wg, atom, 0.5);
        if (!s.allowed) {
            CHECK(std::isnan(s.kl));
            continue;
        }
        CHECK(s.kl >= 0.0);
        CHECK(s.kl <= 3.14159265358979323846);
        CHECK(std::cos(s.kl) == doctest::Approx(s.cos_kl).epsilon(1e-12));
    }
}

TEST_CASE("symmetric lattice L = 0.5 lambda: full gap containing omega_1") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.1, 0.1);
    const auto bands = scan_bands(0.3, 3.0, 4001, wg, atom, 0.5);
    const auto gaps = gaps_of(bands);
    const BandInterval* g = gap_around(gaps, 1.0);
    REQUIRE(g != nullptr);
    CHECK(g->omega_lo == doctest::Approx(0.6608).epsilon(2e-3));
    CHECK(g->omega_hi == doctest::Approx(1.3392).epsilon(2e-3));
    // the second gap sits near 2 omega_1 for the symmetric lattice
    const BandInterval* g2 = gap_around(gaps, 2.05);
    REQUIRE(g2 != nullptr);
    CHECK(g2->omega_hi == doctest::Approx(2.1132).epsilon(2e-3));
}

TEST_CASE("small back reflections: gaps near omega_1, narrow window near 1.2 at larger L") {
    const WaveguideConfig wg = bidi(1.0, 10.0);  // Gamma_L = 0.1 Gamma_R via v_L = 10 v_R
    const Atom atom = lattice_atom(0.1, 0.01);

    const auto gaps_half = gaps_of(scan_bands(0.3, 3.0, 4001, wg, atom, 0.5));
    CHECK(gap_around(gaps_half, 0.9) != nullptr);   // (0.8654, 0.9394)
    CHECK(gap_around(gaps_half, 1.07) != nullptr);  // (1.0404, 1.1078)

    const auto gaps_one = gaps_of(scan_bands(0.3, 3.0, 4001, wg, atom, 1.0));
    const BandInterval* window = gap_around(gaps_one, 1.19);
    REQUIRE(window != nullptr);  // the narrow forbidden window near 1.2 omega_1
    CHECK(window->omega_hi - window->omega_lo < 0.12);
}

TEST_CASE("smaller separation opens a wider gap (0.5 vs 1.0 lambda, symmetric)") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.1, 0.1);
    const auto gaps_small = gaps_of(scan_bands(0.3, 3.0, 4001, wg, atom, 0.5));
    const auto gaps_large = gaps_of(scan_bands(0.3, 3.0, 4001, wg, atom, 1.0));
    const BandInterval* g_small = gap_around(gaps_small, 1.0);
    const BandInterval* g_large = gap_around(gaps_large, 1.0);
    REQUIRE(g_small != nullptr);
    REQUIRE(g_large != nullptr);
    CHECK(g_small->omega_hi - g_small->omega_lo > g_large->omega_hi - g_large->omega_lo);
}

TEST_CASE("zero coupling: every sample allowed") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.0, 0.0);
    const auto bands = scan_bands(0.3, 3.0, 501, wg, atom, 0.5);
    CHECK(gaps_of(bands).empty());
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].allowed);
}

TEST_CASE("scan_bands rejects degenerate grids") {
    const WaveguideConfig wg = bidi();
    const Atom atom = lattice_atom(0.1, 0.1);
    CHECK_THROWS_AS(scan_bands(0.3, 3.0, 1, wg, atom, 0.5), ConfigError);
    CHECK_THROWS_AS(scan_bands(3.0, 0.3, 100, wg, atom, 0.5), ConfigError);
    CHECK_THROWS_AS(scan_bands(0.3, 3.0, 100, wg, atom, -0.5), ConfigError);
    Atom lossy = atom;
    lossy.gamma = 0.01;
    CHECK_THROWS_AS(dispersion_general(1.0, wg, lossy, 0.5), ConfigError);
}

TEST_CASE("finite chain transmission matches the band map") {
    const WaveguideConfig wg = bidi();
    const Atom tpl = lattice_atom(0.1, 0.1);

    // inside the main gap: strong suppression, monotone in N
    const PhotonQuery in_gap{1.1};
    double prev = 1.0;
    double t100_gap = 0.0;
    for (std::size_t n : {25u, 50u, 100u}) {
        const AtomChain chain = build_periodic_chain(n, 0.5, tpl);
        const double t = bidirectional_transport(chain, in_gap, wg).transmission;
        CHECK(t < prev);
        prev = t;
        if (n == 100) t100_gap = t;
    }
    CHECK(t100_gap < 1e-3);

    // mid-band: orders of magnitude above the in-gap value
    const AtomChain chain100 = build_periodic_chain(100, 0.5, tpl);
    const double t_band = bidirectional_transport(chain100, PhotonQuery{1.5}, wg).transmission;
    CHECK(t_band >= 1e3 * t100_gap);
}
