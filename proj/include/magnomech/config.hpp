#pragma once

#include "magnomech/model.hpp"
#include "magnomech/spectra.hpp"
#include "magnomech/steady_state.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace magnomech {

enum class Parameterization { direct_g, drive_derived };

/// A complete, validated run description. Every rate is already in rad/s:
/// the document's "_over_2pi_MHz" values are converted once, by the parser.
struct RunConfig {
    SystemParams params;  // exactly one of G_direct / Omega is set, per parameterization
    DriveConfig drive;    // omega_pr is the line centre omega_pu + omega_b
    double sphere_diameter = 250e-6;  // m
    Grid grid;
    ResponsePath mode = ResponsePath::general;
    Parameterization parameterization = Parameterization::direct_g;
    std::vector<std::string> outputs;  // CSV columns, canonical order
    int branch = 0;                    // steady-state branch for drive-derived runs

    bool operator==(const RunConfig&) const = default;
};

/// Defaults: the reference parameter table with kappa_2/2pi = -1 MHz, J = 0,
/// G/2pi = 3.5 MHz (direct-G), omega_pu = omega_a1 - omega_b, P_p = 1 fW.
RunConfig default_config();

/// Parses `[section]` / `key = value` text. Throws ParseError naming the line
/// and key for unknown sections or keys, duplicates, malformed values and
/// violated invariants.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

/// Writes a document that parses back to an identical RunConfig.
std::string emit_config(const RunConfig& config);

/// Sets a [system] parameter given in its document units ("J", "kappa_2",
/// "G", ... or the full "J_over_2pi_MHz" key name). Throws ModelError for
/// names that are not sweepable system parameters.
void set_parameter(RunConfig& config, std::string_view name, double value);

/// Canonical [system] key for a parameter name, e.g. "J" -> "J_over_2pi_MHz".
std::string canonical_parameter(std::string_view name);

/// Model inputs after the optional steady-state solve.
struct PreparedRun {
    SystemParams params;
    DriveConfig drive;
    Detunings det;
    Complex G{};
    std::optional<SteadyState> steady;
    std::vector<SteadyState> branches;
};

PreparedRun prepare_run(const RunConfig& config);

SpectrumTable run_spectrum(const RunConfig& config, unsigned threads = 0);

const char* to_string(ResponsePath mode);
const char* to_string(Parameterization p);

}  // namespace magnomech
