#pragma once

#include "magnomech/config.hpp"
#include "magnomech/spectra.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace magnomech {

struct Preset {
    std::string name;
    std::string caption;          // figure parameters as printed in the caption
    double kappa_2_over_2pi_MHz;  // gain calibration; the captions never state it
    std::string notes;
    RunConfig config;
};

/// fig2a..fig2d, fig3a..fig3d, fig4a..fig4d, fig5a, fig5b, fig6 in that order.
const std::vector<Preset>& presets();

/// Throws ModelError for unknown names.
const Preset& find_preset(std::string_view name);

/// The preset's run configuration, optionally with a different kappa_2/2pi.
RunConfig preset_config(std::string_view name, std::optional<double> kappa_2_over_2pi_MHz = std::nullopt);

SpectrumTable run_preset(std::string_view name, std::optional<double> kappa_2_over_2pi_MHz = std::nullopt,
                         unsigned threads = 0);

}  // namespace magnomech
