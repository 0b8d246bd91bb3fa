#include "magnomech/linear_response.hpp"

#include "magnomech/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <sstream>

namespace magnomech {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

// num / den with num/0 -> infinite (num != 0) and 0/0 -> 0, matching the
// limit of a coupling to a mode that is exactly on resonance and undamped.
Complex coupling_ratio(double num, Complex den) {
    if (num == 0.0) return {};
    if (den == Complex{}) return {kInf, 0.0};
    return num / den;
}

[[noreturn]] void throw_pole(double delta, double condition, const SystemParams& params,
                             const Detunings& det, Complex G) {
    const Eigen::Matrix4cd drift = drift_matrix(params, det, G);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(drift, false);
    double best = kInf;
    Complex nearest{};
    for (int k = 0; k < 4; ++k) {
        const Complex mu = es.eigenvalues()[k];
        const double dist = std::abs(mu + kI * delta);
        if (dist < best) {
            best = dist;
            nearest = mu;
        }
    }
    std::ostringstream msg;
    msg << "probe response diverges at delta = " << delta << " rad/s (condition ~ " << condition
        << "); nearest drift eigenvalue " << nearest.real() << (nearest.imag() < 0 ? " - " : " + ")
        << std::abs(nearest.imag()) << "i rad/s";
    throw PoleError(msg.str(), delta, condition, -nearest.imag(), nearest.real());
}

}  // namespace

Detunings resonant_detunings(const SystemParams& params, double delta) {
    Detunings d;
    d.Delta_a1 = params.omega_b;
    d.Delta_a2 = params.omega_b;
    d.Delta_m = params.omega_b;
    d.Delta_m_tilde = params.omega_b;
    d.delta = delta;
    d.lambda = delta - params.omega_b;
    return d;
}

Complex response_resonant(double lambda, const SystemParams& params, Complex G, double eps_pr) {
    const Complex phonon = coupling_ratio(std::norm(G), Complex{params.kappa_b, -lambda});
    const Complex magnon_den = Complex{params.kappa_m, -lambda} + phonon;
    const Complex magnon = std::isfinite(std::abs(magnon_den))
                               ? coupling_ratio(params.g_1 * params.g_1, magnon_den)
                               : Complex{};
    const Complex hop = coupling_ratio(params.J * params.J, Complex{params.kappa_2, -lambda});
    const Complex bare{params.kappa_1, -lambda};
    const Complex den = bare + hop + magnon;

    if (!std::isfinite(std::abs(den))) return {};
    const double scale = std::abs(bare) + std::abs(hop) + std::abs(magnon);
    if (std::abs(den) <= scale / kPoleCondition) {
        const double cond = std::abs(den) > 0.0 ? scale / std::abs(den) : kInf;
        throw_pole(lambda + params.omega_b, cond, params, resonant_detunings(params, lambda + params.omega_b), G);
    }
    return eps_pr / den;
}

Eigen::Matrix4cd drift_matrix(const SystemParams& params, const Detunings& det, Complex G) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = Complex{-params.kappa_1, -det.Delta_a1};
    m(0, 1) = -kI * params.J;
    m(0, 2) = -kI * params.g_1;
    m(1, 0) = -kI * params.J;
    m(1, 1) = Complex{-params.kappa_2, -det.Delta_a2};
    m(2, 0) = -kI * params.g_1;
    m(2, 2) = Complex{-params.kappa_m, -det.Delta_m_tilde};
    m(2, 3) = -kI * G;
    m(3, 2) = -kI * std::conj(G);
    m(3, 3) = Complex{-params.kappa_b, -params.omega_b};
    return m;
}

ResponseAmplitudes response_general(double delta, const SystemParams& params, const Detunings& det,
                                    Complex G, double eps_pr) {
    // Assemble the diagonal from (delta - Delta) directly so near-resonant
    // rows do not lose digits to iDelta cancellation.
    Eigen::Matrix4cd a = drift_matrix(params, det, G);
    a(0, 0) = Complex{-params.kappa_1, delta - det.Delta_a1};
    a(1, 1) = Complex{-params.kappa_2, delta - det.Delta_a2};
    a(2, 2) = Complex{-params.kappa_m, delta - det.Delta_m_tilde};
    a(3, 3) = Complex{-params.kappa_b, delta - params.omega_b};

    Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
    rhs(0) = -eps_pr;

    Eigen::PartialPivLU<Eigen::Matrix4cd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond >= 1.0 / kPoleCondition)) {
        throw_pole(delta, rcond > 0.0 ? 1.0 / rcond : kInf, params, det, G);
    }
    const Eigen::Vector4cd x = lu.solve(rhs);

    ResponseAmplitudes r;
    r.a_1p = x(0);
    r.a_2p = x(1);
    r.m_p = x(2);
    r.b_p = x(3);
    r.delta = delta;
    return r;
}

OutputField output_field(Complex a_1p, double kappa_1, double eps_pr) {
    if (!(eps_pr > 0.0)) throw ModelError("output rescaling needs eps_pr > 0");
    OutputField f;
    f.eps_out_rescaled = 2.0 * kappa_1 * a_1p / eps_pr;
    f.t_p = Complex{1.0, 0.0} - f.eps_out_rescaled;
    f.re_quad = f.eps_out_rescaled.real();
    f.im_quad = f.eps_out_rescaled.imag();
    return f;
}

bool resonance_condition_holds(const SystemParams& params, const Detunings& det, double rel_tol) {
    const double tol = rel_tol * std::abs(params.omega_b);
    return std::abs(det.Delta_a1 - params.omega_b) <= tol && std::abs(det.Delta_a2 - params.omega_b) <= tol &&
           std::abs(det.Delta_m_tilde - params.omega_b) <= tol;
}

}  // namespace magnomech
