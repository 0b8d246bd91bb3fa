#include "magnomech/model.hpp"

#include "magnomech/errors.hpp"

#include <cmath>
#include <string>

namespace magnomech {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw ModelError(std::string(name) + " must be finite");
}

void require_nonnegative(double v, const char* name) {
    require_finite(v, name);
    if (v < 0.0) throw ModelError(std::string(name) + " must be >= 0");
}

}  // namespace

void PhysicalConstants::validate() const {
    if (!(hbar > 0.0) || !(gamma > 0.0) || !(rho > 0.0))
        throw ModelError("physical constants must be strictly positive");
}

void SystemParams::validate() const {
    for (auto [v, name] : {std::pair{omega_a1, "omega_a1"}, {omega_a2, "omega_a2"},
                           {omega_m, "omega_m"}, {omega_b, "omega_b"}, {kappa_2, "kappa_2"}})
        require_finite(v, name);
    for (auto [v, name] : {std::pair{kappa_m, "kappa_m"}, {kappa_b, "kappa_b"},
                           {g_1, "g_1"}, {J, "J"}, {g_2, "g_2"}, {K, "K"}})
        require_nonnegative(v, name);
    require_finite(kappa_1, "kappa_1");
    if (!(kappa_1 > 0.0)) throw ModelError("kappa_1 must be > 0");
    if (G_direct.has_value() == Omega.has_value())
        throw ModelError("exactly one of G_direct and Omega must be given");
    if (G_direct) {
        require_finite(G_direct->real(), "G_direct");
        require_finite(G_direct->imag(), "G_direct");
    }
    if (Omega) require_nonnegative(*Omega, "Omega");
}

void DriveConfig::validate() const {
    require_finite(omega_pu, "omega_pu");
    require_finite(omega_pr, "omega_pr");
    if (!(omega_pu > 0.0) || !(omega_pr > 0.0))
        throw ModelError("omega_pu and omega_pr must be > 0");
    require_nonnegative(P_p, "P_p");
    require_nonnegative(B_0, "B_0");
    require_nonnegative(epsilon_pr, "epsilon_pr");
}

Detunings compute_detunings(const SystemParams& params, const DriveConfig& drive) {
    Detunings d;
    d.Delta_a1 = params.omega_a1 - drive.omega_pu;
    d.Delta_a2 = params.omega_a2 - drive.omega_pu;
    d.Delta_m = params.omega_m - drive.omega_pu;
    d.Delta_m_tilde = d.Delta_m;
    d.delta = drive.omega_pr - drive.omega_pu;
    d.lambda = d.delta - params.omega_b;
    return d;
}

double rabi_frequency(double B_0, double N_spins, const PhysicalConstants& consts) {
    require_finite(B_0, "B_0");
    if (B_0 < 0.0) throw ModelError("B_0 must be >= 0");
    if (!(N_spins > 0.0)) throw ModelError("N_spins must be > 0");
    return std::sqrt(5.0) / 4.0 * consts.gamma * std::sqrt(N_spins) * B_0;
}

double probe_amplitude(double P_p, double kappa_1, double omega_pr, const PhysicalConstants& consts) {
    if (!(omega_pr > 0.0)) throw ModelError("omega_pr must be > 0");
    if (!(kappa_1 > 0.0)) throw ModelError("kappa_1 must be > 0");
    if (!(P_p >= 0.0)) throw ModelError("P_p must be >= 0");
    return std::sqrt(2.0 * P_p * kappa_1 / (consts.hbar * omega_pr));
}

SphereGeometry spin_count(double diameter, const PhysicalConstants& consts) {
    if (!(diameter > 0.0) || !std::isfinite(diameter)) throw ModelError("diameter must be > 0");
    SphereGeometry g;
    g.diameter = diameter;
    const double r = 0.5 * diameter;
    g.V_m = 4.0 / 3.0 * std::numbers::pi * r * r * r;
    g.N_spins = consts.rho * g.V_m;
    g.S_total = 2.5 * g.N_spins;
    return g;
}

double kerr_validity(double K, Complex m_s, double Omega) {
    const double num = K * std::pow(std::abs(m_s), 3);
    if (num == 0.0) return 0.0;
    if (!(Omega > 0.0)) throw ModelError("Kerr validity undefined for Omega = 0");
    return num / Omega;
}

}  // namespace magnomech
