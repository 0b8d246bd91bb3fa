#pragma once

#include "magnomech/config.hpp"
#include "magnomech/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace magnomech {

/// A family of runs that differ in one [system] parameter.
struct SweepSpec {
    RunConfig base;
    std::string axis;            // e.g. "J" or "J_over_2pi_MHz"
    std::vector<double> values;  // in the axis' document units (/2pi MHz)
};

struct SweepPoint {
    double value = 0.0;
    std::optional<SpectrumTable> table;  // empty when the point failed
    std::string error;
    std::size_t band_count = 0;
    double total_width = 0.0;
    double max_height = 0.0;
    double central_height = 0.0;  // |t_p|^2 at the row nearest delta = omega_b
};

struct SweepResult {
    std::string axis;  // canonical key
    std::vector<SweepPoint> points;
};

/// Runs every value on a worker pool; results keep input order and a failing
/// value is recorded in its SweepPoint instead of aborting the sweep.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Columns: value,band_count,total_width,max_height,central_height,error.
std::string format_sweep_summary(const SweepResult& result);

}  // namespace magnomech
