#pragma once

#include "magnomech/spectra.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace magnomech {

inline constexpr std::array<std::string_view, 9> kCsvColumns{
    "delta_over_omega_b", "re_tp", "im_tp", "abs_tp_sq", "re_quad", "im_quad", "phi_t", "tau_g", "divergent"};

/// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

/// Validates and orders a column selection; empty means all columns.
std::vector<std::string> canonical_columns(std::span<const std::string> requested);

/// Header plus one LF-terminated row per table row. Divergent rows leave every
/// numeric field except delta_over_omega_b empty and set divergent=1.
std::string format_csv(const SpectrumTable& table, std::span<const std::string> columns = {});

void write_csv(const SpectrumTable& table, std::ostream& out, std::span<const std::string> columns = {});

/// Writes text to path; throws IoError on failure.
void write_file(const std::string& path, std::string_view text);

}  // namespace magnomech
