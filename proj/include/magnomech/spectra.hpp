#pragma once

#include "magnomech/linear_response.hpp"
#include "magnomech/model.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace magnomech {

/// Uniform probe grid in units of delta / omega_b.
struct Grid {
    double start = 0.5;
    double stop = 1.5;
    std::size_t points = 4001;

    double at(std::size_t i) const {
        return start + static_cast<double>(i) * (stop - start) / static_cast<double>(points - 1);
    }
    double step() const { return (stop - start) / static_cast<double>(points - 1); }
    void validate() const;

    bool operator==(const Grid&) const = default;
};

inline constexpr std::size_t kMinGridPoints = 9;

enum class ResponsePath { general, resonant };

struct SpectrumRow {
    double delta_over_omega_b = 0.0;
    Complex eps_out{};       // rescaled output field
    Complex t_p{};
    double abs_t_p_sq = 0.0;
    double re_quad = 0.0;
    double im_quad = 0.0;
    std::optional<double> phi_t;  // unwrapped, radians
    std::optional<double> tau_g;  // seconds
    bool divergent = false;
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;
    double omega_b = 0.0;  // rad/s; converts the grid to probe frequency offsets
};

struct StabilityReport {
    std::array<Complex, 4> eigenvalues{};
    double max_real_part = 0.0;
    bool stable = false;
    double ep_gap = 0.0;
};

struct Band {
    double center = 0.0;  // delta / omega_b at the band maximum
    double height = 0.0;  // max |t_p|^2 in the band
    double width = 0.0;   // interval length in delta / omega_b
};

struct Extremum {
    std::size_t index = 0;
    double x = 0.0;
    double value = 0.0;
    double prominence = 0.0;
};

/// Evaluates the probe response on every grid row, then unwraps the phase and
/// differentiates it per contiguous non-divergent segment.
///
/// Rows are evaluated on `threads` workers (0 = hardware concurrency); the
/// table is identical for any thread count. Poles become divergent rows.
SpectrumTable sweep_spectrum(const Grid& grid, const SystemParams& params, const Detunings& det, Complex G,
                             double eps_pr, ResponsePath path = ResponsePath::general, unsigned threads = 0);

/// Principal arguments of eps_out unwrapped so neighbours differ by at most pi.
std::vector<double> phase(std::span<const Complex> eps_out);

/// Adds multiples of 2 pi so |phi[i+1] - phi[i]| <= pi.
std::vector<double> unwrap(std::span<const double> principal);

/// d phi / d omega_pr on a uniform grid: central differences inside,
/// second-order one-sided differences at both ends.
std::vector<double> group_delay(std::span<const double> phi, std::span<const double> omega_pr);

/// Relative excess over the threshold below which a row counts as rounding
/// noise rather than amplification.
inline constexpr double kGainResolution = 1e-12;

/// Maximal runs of rows with |t_p|^2 > threshold (1 + kGainResolution). Divergent rows count as
/// unbounded amplification.
std::vector<Band> find_amplification_bands(const SpectrumTable& table, double threshold = 1.0);

/// Mean of delta / omega_b weighted by the excess |t_p|^2 - threshold over the
/// amplified rows (divergent rows skipped). NaN when nothing is amplified.
double amplification_centroid(const SpectrumTable& table, double threshold = 1.0);

/// Local maxima of y with topographic prominence >= min_prominence.
std::vector<Extremum> find_peaks(std::span<const double> x, std::span<const double> y, double min_prominence);

/// Local minima of y with prominence (depth) >= min_prominence; values are y, not -y.
std::vector<Extremum> find_dips(std::span<const double> x, std::span<const double> y, double min_prominence);

/// Eigenvalues of the drift matrix, stability and the minimum pairwise
/// eigenvalue distance (zero at an exceptional point).
StabilityReport drift_eigenvalues(const SystemParams& params, const Detunings& det, Complex G);

}  // namespace magnomech
