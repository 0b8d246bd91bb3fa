#pragma once

#include "magnomech/model.hpp"

#include <Eigen/Core>

namespace magnomech {

/// Probe-sideband amplitudes (the e^{-i delta t} component of each mode).
struct ResponseAmplitudes {
    Complex a_1p{};
    Complex a_2p{};
    Complex m_p{};
    Complex b_p{};
    double delta = 0.0;
};

/// Rescaled output field eps_out' = 2 kappa_1 a_1p / eps_pr, the transmission
/// t_p = 1 - eps_out' and its absorption/dispersion quadratures.
struct OutputField {
    Complex eps_out_rescaled{};
    Complex t_p{};
    double re_quad = 0.0;
    double im_quad = 0.0;
};

/// Evaluations whose condition estimate exceeds this are reported as poles.
inline constexpr double kPoleCondition = 1e14;

/// Closed-form a_1p at lambda = delta - omega_b, valid when
/// Delta_a1 = Delta_a2 = Delta_m_tilde = omega_b.
///
/// Throws PoleError when the denominator cancels to within 1e-14 of the
/// magnitude of its terms.
Complex response_resonant(double lambda, const SystemParams& params, Complex G, double eps_pr);

/// Solves the 4x4 probe-sideband system at arbitrary detunings.
///
/// Rows (a_1, a_2, m, b):
///   (i(delta-Delta_a1) - kappa_1) a_1 - i J a_2 - i g_1 m          = -eps_pr
///   (i(delta-Delta_a2) - kappa_2) a_2 - i J a_1                    = 0
///   (i(delta-Delta_m_tilde) - kappa_m) m - i g_1 a_1 - i G b       = 0
///   (i(delta-omega_b) - kappa_b) b - i conj(G) m                   = 0
/// Throws PoleError when the LU reciprocal condition estimate drops below
/// 1/kPoleCondition.
ResponseAmplitudes response_general(double delta, const SystemParams& params, const Detunings& det,
                                    Complex G, double eps_pr);

OutputField output_field(Complex a_1p, double kappa_1, double eps_pr);

/// Homogeneous coefficient matrix of the linearized mean-field equations in
/// the pump frame; the probe system above is (drift + i delta I) x = rhs.
Eigen::Matrix4cd drift_matrix(const SystemParams& params, const Detunings& det, Complex G);

/// True when Delta_a1, Delta_a2 and Delta_m_tilde all equal omega_b to rel_tol.
bool resonance_condition_holds(const SystemParams& params, const Detunings& det, double rel_tol = 1e-9);

/// Detunings satisfying the resonance condition for the given probe detuning.
Detunings resonant_detunings(const SystemParams& params, double delta);

}  // namespace magnomech
