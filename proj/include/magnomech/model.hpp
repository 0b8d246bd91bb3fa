#pragma once

// Physical symbols, unit conventions and parameter derivations for the
// driven cavity-cavity-magnon-phonon system.
//
// All frequencies and rates are stored as angular quantities (rad/s). Values
// quoted as "nu/2pi" in MHz are converted with mhz_to_rad() exactly once, at
// the boundary where they enter the program.

#include <complex>
#include <numbers>
#include <optional>

namespace magnomech {

using Complex = std::complex<double>;

inline constexpr double kRadPerMHz = 2.0 * std::numbers::pi * 1e6;

/// nu/2pi in MHz -> angular rad/s.
constexpr double mhz_to_rad(double mhz) { return mhz * kRadPerMHz; }
constexpr double rad_to_mhz(double rad) { return rad / kRadPerMHz; }

struct PhysicalConstants {
    double hbar = 1.0546e-34;                       // J s
    double gamma = 2.0 * std::numbers::pi * 28e9;   // rad/s per tesla
    double rho = 4.22e27;                           // m^-3, Fe3+ density of YIG

    void validate() const;
};

/// Mode frequencies, rates and couplings.
///
/// kappa_2 is signed: a negative value is net gain in the active cavity.
/// Exactly one of G_direct / Omega selects the parameterization: with
/// G_direct the effective magnomechanical coupling is a free knob and the
/// steady state is never solved; with Omega it follows from G = g_2 m_s.
struct SystemParams {
    double omega_a1 = 0.0;
    double omega_a2 = 0.0;
    double omega_m = 0.0;
    double omega_b = 0.0;
    double kappa_1 = 0.0;
    double kappa_2 = 0.0;
    double kappa_m = 0.0;
    double kappa_b = 0.0;
    double g_1 = 0.0;
    double J = 0.0;
    double g_2 = 0.0;
    std::optional<Complex> G_direct;
    std::optional<double> Omega;
    double K = 0.0;

    bool direct_coupling() const { return G_direct.has_value(); }
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

struct DriveConfig {
    double omega_pu = 0.0;
    double omega_pr = 0.0;
    double P_p = 0.0;        // W
    double B_0 = 0.0;        // T
    double epsilon_pr = 0.0; // rad/s

    void validate() const;

    bool operator==(const DriveConfig&) const = default;
};

struct Detunings {
    double Delta_a1 = 0.0;
    double Delta_a2 = 0.0;
    double Delta_m = 0.0;
    double Delta_m_tilde = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
};

struct SphereGeometry {
    double diameter = 0.0;  // m
    double V_m = 0.0;       // m^3
    double N_spins = 0.0;
    double S_total = 0.0;
};

/// Pump detunings in the frame rotating at omega_pu. Delta_m_tilde starts
/// equal to Delta_m; the steady-state solve refines it.
Detunings compute_detunings(const SystemParams& params, const DriveConfig& drive);

/// Omega = (sqrt(5)/4) gamma sqrt(N) B_0.
double rabi_frequency(double B_0, double N_spins, const PhysicalConstants& consts = {});

/// epsilon_pr = sqrt(2 P_p kappa_1 / (hbar omega_pr)).
double probe_amplitude(double P_p, double kappa_1, double omega_pr,
                       const PhysicalConstants& consts = {});

/// Volume, Fe3+ ion count and total spin S = (5/2) rho V_m of a YIG sphere.
SphereGeometry spin_count(double diameter, const PhysicalConstants& consts = {});

/// K |m_s|^3 / Omega. The Kerr term is dropped from all dynamics; ratios at or
/// above kKerrWarningRatio mark that approximation as unjustified.
double kerr_validity(double K, Complex m_s, double Omega);

inline constexpr double kKerrWarningRatio = 0.1;

}  // namespace magnomech
