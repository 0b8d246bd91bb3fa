#pragma once

#include "magnomech/model.hpp"

#include <vector>

namespace magnomech {

/// Mean-field steady state of the four modes under the magnon drive.
///
/// In direct-coupling mode (SystemParams::G_direct set) only G_eff and
/// Delta_m_tilde are meaningful and has_amplitudes is false.
struct SteadyState {
    Complex a_1s{};
    Complex a_2s{};
    Complex m_s{};
    Complex b_s{};
    double Delta_m_tilde = 0.0;
    Complex G_eff{};
    int branch_index = 0;
    double residual = 0.0;
    bool has_amplitudes = true;

    double magnon_population() const { return std::norm(m_s); }
};

/// Coefficients of c3 x^3 + c2 x^2 + c1 x + c0 = 0 in x = |m_s|^2.
struct MagnonCubic {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double operator()(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};

/// Sigma = g_1^2 / (i Delta_a1 + kappa_1 + J^2 / (i Delta_a2 + kappa_2)): the
/// cavity pair seen from the magnon. Throws SingularConfiguration when either
/// denominator vanishes.
Complex cavity_self_energy(const SystemParams& params, const Detunings& det);

/// Shift coefficient beta in Delta_m_tilde(x) = Delta_m - beta x.
double detuning_shift_per_magnon(const SystemParams& params);

/// x |i Delta_m_tilde(x) + kappa_m + Sigma|^2 = Omega^2 expanded as a cubic.
MagnonCubic magnon_cubic(const SystemParams& params, const Detunings& det);

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending, with multiplicity.
///
/// Roots come from the eigenvalues of the scaled companion matrix; a complex
/// root is kept as real when |Im x| < 1e-9 (1 + |x|), then Newton-polished.
/// Leading zero coefficients drop the degree.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

/// All nonnegative self-consistent branches, sorted by |m_s|^2.
std::vector<SteadyState> solve_steady_state(const SystemParams& params, const DriveConfig& drive,
                                            const Detunings& det);

/// Steady state for direct-coupling mode: G_eff = G_direct, Delta_m_tilde = det.Delta_m.
SteadyState direct_coupling_state(const SystemParams& params, const Detunings& det);

/// Delta_m + g_2 (b_s + b_s*).
double effective_detuning(double Delta_m, double g_2, Complex b_s);

/// G = g_2 m_s.
Complex effective_coupling(double g_2, Complex m_s);

/// Max over the four steady-state relations of |lhs - rhs| / (1 + |rhs|).
double residual(const SteadyState& state, const SystemParams& params, const DriveConfig& drive,
                const Detunings& det);

}  // namespace magnomech
