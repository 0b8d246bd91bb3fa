#include "magnomech/steady_state.hpp"

#include "magnomech/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace magnomech {

namespace {

constexpr Complex kI{0.0, 1.0};

bool vanishes(Complex value, double scale) {
    return std::abs(value) <= 1e-14 * scale;
}

bool accept_as_real(Complex x) {
    return std::abs(x.imag()) < 1e-9 * (1.0 + std::abs(x));
}

// Roots of a x^2 + b x + c with a != 0, real-accepted per accept_as_real.
void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q == 0.0) {
            out.push_back(0.0);
            out.push_back(0.0);
            return;
        }
        out.push_back(q / a);
        out.push_back(c / q);
        return;
    }
    const Complex x{-b / (2.0 * a), std::sqrt(-disc) / (2.0 * std::abs(a))};
    if (accept_as_real(x)) {
        out.push_back(x.real());
        out.push_back(x.real());
    }
}

double polish(const std::array<double, 3>& p, double u) {
    auto eval = [&](double v) { return ((v + p[0]) * v + p[1]) * v + p[2]; };
    double best = std::abs(eval(u));
    for (int it = 0; it < 8 && best > 0.0; ++it) {
        const double d = (3.0 * u + 2.0 * p[0]) * u + p[1];
        if (d == 0.0) break;
        const double next = u - eval(u) / d;
        const double r = std::abs(eval(next));
        if (!(r < best)) break;
        u = next;
        best = r;
    }
    return u;
}

}  // namespace

Complex cavity_self_energy(const SystemParams& params, const Detunings& det) {
    const Complex d2{params.kappa_2, det.Delta_a2};
    if (vanishes(d2, std::abs(params.kappa_2) + std::abs(det.Delta_a2)))
        throw SingularConfiguration("i*Delta_a2 + kappa_2 = 0: passive/active cavity denominator vanishes");
    const Complex hop = params.J * params.J / d2;
    const Complex d1 = Complex{params.kappa_1, det.Delta_a1} + hop;
    if (vanishes(d1, params.kappa_1 + std::abs(det.Delta_a1) + std::abs(hop)))
        throw SingularConfiguration("i*Delta_a1 + kappa_1 + J^2/(i*Delta_a2 + kappa_2) = 0");
    return params.g_1 * params.g_1 / d1;
}

double detuning_shift_per_magnon(const SystemParams& params) {
    const double wb = params.omega_b;
    const double kb = params.kappa_b;
    const double den = wb * wb + kb * kb;
    if (den == 0.0) return 0.0;
    return 2.0 * params.g_2 * params.g_2 * wb / den;
}

MagnonCubic magnon_cubic(const SystemParams& params, const Detunings& det) {
    if (!params.Omega) throw ModelError("magnon cubic needs the drive-derived parameterization (Omega)");
    const Complex sigma = cavity_self_energy(params, det);
    const double A = params.kappa_m + sigma.real();
    const double B = det.Delta_m + sigma.imag();
    const double beta = detuning_shift_per_magnon(params);
    const double omega = *params.Omega;
    return {beta * beta, -2.0 * B * beta, A * A + B * B, -omega * omega};
}

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
    std::vector<double> roots;
    if (c3 == 0.0) {
        if (c2 != 0.0) {
            quadratic_roots(c2, c1, c0, roots);
        } else if (c1 != 0.0) {
            roots.push_back(-c0 / c1);
        } else if (c0 == 0.0) {
            throw ModelError("cubic is identically zero");
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    if (c0 == 0.0) {
        roots.push_back(0.0);
        quadratic_roots(c3, c2, c1, roots);
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    // Scale x = s u so every coefficient of the monic polynomial in u is O(1).
    const double s = std::max({std::abs(c2 / c3), std::sqrt(std::abs(c1 / c3)), std::cbrt(std::abs(c0 / c3))});
    const std::array<double, 3> p{c2 / (c3 * s), c1 / (c3 * s * s), c0 / (c3 * s * s * s)};

    Eigen::Matrix3d companion;
    companion << -p[0], -p[1], -p[2],
                  1.0,   0.0,   0.0,
                  0.0,   1.0,   0.0;
    Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
    if (solver.info() != Eigen::Success) throw ModelError("companion eigenvalue iteration failed");

    for (int k = 0; k < 3; ++k) {
        const Complex u = solver.eigenvalues()[k];
        if (!accept_as_real(u * s)) continue;
        roots.push_back(s * polish(p, u.real()));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double effective_detuning(double Delta_m, double g_2, Complex b_s) {
    return Delta_m + g_2 * 2.0 * b_s.real();
}

Complex effective_coupling(double g_2, Complex m_s) {
    return g_2 * m_s;
}

std::vector<SteadyState> solve_steady_state(const SystemParams& params, const DriveConfig& drive,
                                            const Detunings& det) {
    (void)drive;
    if (!params.Omega) throw ModelError("steady-state solve needs the drive-derived parameterization (Omega)");
    if (!(params.kappa_m > 0.0)) throw ModelError("steady-state solve needs kappa_m > 0");

    const Complex d2{params.kappa_2, det.Delta_a2};
    const Complex sigma = cavity_self_energy(params, det);  // validates d2 and d1
    const Complex d1 = Complex{params.kappa_1, det.Delta_a1} + params.J * params.J / d2;
    const double beta = detuning_shift_per_magnon(params);
    const double omega = *params.Omega;
    const MagnonCubic cubic = magnon_cubic(params, det);

    std::vector<double> xs;
    for (double x : real_cubic_roots(cubic.c3, cubic.c2, cubic.c1, cubic.c0)) {
        if (x >= 0.0) xs.push_back(x);
    }
    if (xs.empty()) throw EmptySolution("no real nonnegative magnon population satisfies the steady state");

    std::vector<SteadyState> out;
    out.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        SteadyState s;
        const double shifted = det.Delta_m - beta * xs[k];
        const Complex den = Complex{params.kappa_m, shifted} + sigma;
        if (den == Complex{}) throw SingularConfiguration("magnon denominator vanishes");
        s.m_s = omega / den;
        s.a_1s = -kI * params.g_1 * s.m_s / d1;
        s.a_2s = -kI * params.J * s.a_1s / d2;
        s.b_s = -kI * params.g_2 * std::norm(s.m_s) / Complex{params.kappa_b, params.omega_b};
        s.Delta_m_tilde = effective_detuning(det.Delta_m, params.g_2, s.b_s);
        s.G_eff = effective_coupling(params.g_2, s.m_s);
        s.branch_index = static_cast<int>(k);
        s.residual = residual(s, params, drive, det);
        out.push_back(s);
    }
    return out;
}

SteadyState direct_coupling_state(const SystemParams& params, const Detunings& det) {
    if (!params.G_direct) throw ModelError("direct-coupling state needs G_direct");
    SteadyState s;
    s.G_eff = *params.G_direct;
    s.Delta_m_tilde = det.Delta_m;
    s.has_amplitudes = false;
    return s;
}

double residual(const SteadyState& state, const SystemParams& params, const DriveConfig& drive,
                const Detunings& det) {
    (void)drive;
    const double omega = params.Omega.value_or(0.0);
    auto rel = [](Complex lhs, Complex rhs) { return std::abs(lhs - rhs) / (1.0 + std::abs(rhs)); };

    const Complex d2{params.kappa_2, det.Delta_a2};
    if (d2 == Complex{}) return std::numeric_limits<double>::infinity();

    const Complex a1_rhs = -(kI * params.g_1 * state.m_s + kI * params.J * state.a_2s) /
                           Complex{params.kappa_1, det.Delta_a1};
    const Complex a2_rhs = -kI * params.J * state.a_1s / d2;
    const Complex b_rhs = -kI * params.g_2 * std::norm(state.m_s) / Complex{params.kappa_b, params.omega_b};
    const double shifted = effective_detuning(det.Delta_m, params.g_2, state.b_s);
    const Complex m_den{params.kappa_m, shifted};
    if (m_den == Complex{}) return std::numeric_limits<double>::infinity();
    const Complex m_rhs = (-kI * params.g_1 * state.a_1s + omega) / m_den;

    return std::max({rel(state.a_1s, a1_rhs), rel(state.a_2s, a2_rhs), rel(state.b_s, b_rhs),
                     rel(state.m_s, m_rhs)});
}

}  // namespace magnomech
