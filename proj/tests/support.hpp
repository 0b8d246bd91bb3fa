#pragma once

#include "magnomech/config.hpp"
#include "magnomech/linear_response.hpp"
#include "magnomech/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace test_support {

using magnomech::Complex;
using magnomech::mhz_to_rad;

/// The reference parameter table in direct-G mode, with J, g_1, G and kappa_2 in /2pi MHz.
inline magnomech::SystemParams table_params(double J, double g_1, double G, double kappa_2) {
    magnomech::SystemParams p = magnomech::default_config().params;
    p.J = mhz_to_rad(J);
    p.g_1 = mhz_to_rad(g_1);
    p.G_direct = Complex{mhz_to_rad(G), 0.0};
    p.kappa_2 = mhz_to_rad(kappa_2);
    return p;
}

inline double rel_err(Complex a, Complex b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

/// Deterministic generator for property tests.
inline std::mt19937_64 rng(std::uint64_t seed = 20240611) {
    return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Random drive-derived configuration for steady-state property tests. The
/// drive is scaled so a sizeable fraction of draws lands in the tristable
/// window of the magnon cubic.
inline magnomech::RunConfig steady_draw(std::mt19937_64& g) {
    magnomech::RunConfig c = magnomech::default_config();
    c.parameterization = magnomech::Parameterization::drive_derived;
    auto& p = c.params;
    p.G_direct.reset();
    p.g_2 = mhz_to_rad(uniform(g, 1e-7, 1e-5));
    p.kappa_m = mhz_to_rad(uniform(g, 0.01, 1.0));
    p.g_1 = mhz_to_rad(uniform(g, 0.0, 3.0));
    p.J = mhz_to_rad(uniform(g, 0.0, 3.0));
    p.kappa_2 = mhz_to_rad(uniform(g, 0.2, 3.0) * (uniform(g, 0.0, 1.0) < 0.5 ? -1.0 : 1.0));
    p.omega_a1 = c.drive.omega_pu + mhz_to_rad(uniform(g, -20.0, 20.0));
    p.omega_a2 = c.drive.omega_pu + mhz_to_rad(uniform(g, -20.0, 20.0));
    p.omega_m = c.drive.omega_pu + mhz_to_rad(uniform(g, -5.0, 5.0));

    const magnomech::Detunings det = magnomech::compute_detunings(p, c.drive);
    const Complex d1 = Complex{p.kappa_1, det.Delta_a1} + p.J * p.J / Complex{p.kappa_2, det.Delta_a2};
    const Complex sigma = p.g_1 * p.g_1 / d1;
    const double A = p.kappa_m + sigma.real();
    const double B = det.Delta_m + sigma.imag();
    const double beta = 2.0 * p.g_2 * p.g_2 * p.omega_b / (p.omega_b * p.omega_b + p.kappa_b * p.kappa_b);
    const double x0 = uniform(g, 0.0, 2.0) * (std::abs(B) + std::abs(A)) / beta;
    p.Omega = std::sqrt(x0 * (A * A + (B - beta * x0) * (B - beta * x0)));
    return c;
}

}  // namespace test_support
