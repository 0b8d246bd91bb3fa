// Command-line front end: steady states, spectra, group delay, sweeps,
// drift eigenvalues and figure presets, all written as CSV.

#include "magnomech/config.hpp"
#include "magnomech/csv.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/linear_response.hpp"
#include "magnomech/presets.hpp"
#include "magnomech/spectra.hpp"
#include "magnomech/steady_state.hpp"
#include "magnomech/sweep.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace magnomech;

enum ExitCode { kOk = 0, kFailure = 1, kParse = 2, kSingular = 3, kIo = 4 };

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<double> kappa2;
    std::string grid;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "Run configuration file");
    cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
    cmd->add_option("--kappa2-over-2pi-mhz", o.kappa2, "Override the active-cavity rate kappa_2/2pi in MHz");
    cmd->add_option("--grid", o.grid, "Probe grid start:stop:points in delta/omega_b");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw ParseError("expected start:stop:points, got '" + text + "'", 0, "--grid");
    auto number = [&](const std::string& s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
            throw ParseError("malformed number '" + s + "'", 0, "--grid");
        return v;
    };
    Grid g{number(parts[0]), number(parts[1]), 0};
    const double n = number(parts[2]);
    if (n != std::floor(n) || n < static_cast<double>(kMinGridPoints))
        throw ParseError("points must be an integer >= 9", 0, "--grid");
    g.points = static_cast<std::size_t>(n);
    if (!(g.start < g.stop)) throw ParseError("grid needs start < stop", 0, "--grid");
    return g;
}

RunConfig apply_overrides(RunConfig c, const CommonOptions& o) {
    if (o.kappa2) set_parameter(c, "kappa_2", *o.kappa2);
    if (!o.grid.empty()) c.grid = parse_grid(o.grid);
    return c;
}

RunConfig resolve(const CommonOptions& o) {
    RunConfig c = o.config_path.empty() ? default_config() : load_config(o.config_path);
    return apply_overrides(std::move(c), o);
}

void emit(const CommonOptions& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text << std::flush;
        if (!std::cout) throw IoError("failed to write to stdout");
    } else {
        write_file(o.out_path, text);
    }
}

void warn_kerr(const RunConfig& c, const PreparedRun& p) {
    if (!p.steady || c.params.K == 0.0 || !c.params.Omega) return;
    const double ratio = kerr_validity(c.params.K, p.steady->m_s, *c.params.Omega);
    if (ratio >= kKerrWarningRatio)
        std::cerr << "warning: K|m_s|^3/Omega = " << ratio << "; the dropped Kerr term is not negligible\n";
}

std::string steady_csv(const RunConfig& c) {
    const PreparedRun p = prepare_run(c);
    warn_kerr(c, p);
    std::string out =
        "branch,abs_ms_sq,re_ms,im_ms,Delta_m_tilde_over_2pi_MHz,re_G_over_2pi_MHz,im_G_over_2pi_MHz,residual,"
        "has_amplitudes\n";
    const std::vector<SteadyState> states =
        p.branches.empty() ? std::vector<SteadyState>{direct_coupling_state(p.params, p.det)} : p.branches;
    for (const auto& s : states) {
        out += std::to_string(s.branch_index) + ',';
        if (s.has_amplitudes) {
            out += format_double(s.magnon_population()) + ',' + format_double(s.m_s.real()) + ',' +
                   format_double(s.m_s.imag()) + ',';
        } else {
            out += ",,,";
        }
        out += format_double(rad_to_mhz(s.Delta_m_tilde)) + ',' + format_double(rad_to_mhz(s.G_eff.real())) + ',' +
               format_double(rad_to_mhz(s.G_eff.imag())) + ',';
        out += s.has_amplitudes ? format_double(s.residual) : std::string();
        out += s.has_amplitudes ? ",1\n" : ",0\n";
    }
    return out;
}

std::string single_point_csv(const RunConfig& c, double x) {
    if (!std::isfinite(x)) throw ParseError("--at needs a finite value", 0, "--at");
    const PreparedRun p = prepare_run(c);
    warn_kerr(c, p);
    const double delta = x * p.params.omega_b;
    const Complex a1 = c.mode == ResponsePath::resonant
                           ? response_resonant(delta - p.params.omega_b, p.params, p.G, p.drive.epsilon_pr)
                           : response_general(delta, p.params, p.det, p.G, p.drive.epsilon_pr).a_1p;
    const OutputField f = output_field(a1, p.params.kappa_1, p.drive.epsilon_pr);
    SpectrumTable t;
    t.omega_b = p.params.omega_b;
    SpectrumRow row;
    row.delta_over_omega_b = x;
    row.eps_out = f.eps_out_rescaled;
    row.t_p = f.t_p;
    row.abs_t_p_sq = std::norm(f.t_p);
    row.re_quad = f.re_quad;
    row.im_quad = f.im_quad;
    row.phi_t = std::arg(f.eps_out_rescaled);
    t.rows.push_back(row);
    return format_csv(t, c.outputs);
}

std::string eigen_text(const RunConfig& c) {
    const PreparedRun p = prepare_run(c);
    const StabilityReport r = drift_eigenvalues(p.params, p.det, p.G);
    std::string out = "re_over_2pi_MHz,im_over_2pi_MHz\n";
    for (const auto& e : r.eigenvalues)
        out += format_double(rad_to_mhz(e.real())) + ',' + format_double(rad_to_mhz(e.imag())) + '\n';
    out += "# max_real_part_over_2pi_MHz = " + format_double(rad_to_mhz(r.max_real_part)) + '\n';
    out += std::string("# stable = ") + (r.stable ? "true" : "false") + '\n';
    out += "# ep_gap_over_2pi_MHz = " + format_double(rad_to_mhz(r.ep_gap)) + '\n';
    return out;
}

std::string preset_list() {
    std::string out = "name,kappa_2_over_2pi_MHz,caption\n";
    for (const auto& p : presets())
        out += p.name + ',' + format_double(p.kappa_2_over_2pi_MHz) + ",\"" + p.caption + "\"\n";
    return out;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size() || !std::isfinite(v))
            throw ParseError("malformed sweep value '" + item + "'", 0, "--values");
        values.push_back(v);
    }
    if (values.empty()) throw ParseError("sweep needs at least one value", 0, "--values");
    return values;
}

int run(int argc, char** argv) {
    CLI::App app{"Probe transmission, group delay and stability of a driven gain/loss cavity magnomechanical system"};
    app.require_subcommand(1);

    CommonOptions steady_o, spectrum_o, delay_o, sweep_o, eigen_o, preset_o;

    auto* steady = app.add_subcommand("steady", "Steady-state branches (CSV)");
    add_common(steady, steady_o);

    auto* spectrum = app.add_subcommand("spectrum", "Probe transmission spectrum (CSV)");
    add_common(spectrum, spectrum_o);
    std::optional<double> at;
    spectrum->add_option("--at", at, "Evaluate a single point delta/omega_b (exit 3 on a pole)");

    auto* delay = app.add_subcommand("delay", "Output phase and group delay (CSV)");
    add_common(delay, delay_o);

    auto* sweep = app.add_subcommand("sweep", "Band statistics over a family of spectra (CSV)");
    add_common(sweep, sweep_o);
    std::string axis, values_text, tables_dir;
    sweep->add_option("--axis", axis, "System parameter to vary, e.g. J or g_1")->required();
    sweep->add_option("--values", values_text, "Comma-separated values in /2pi MHz")->required();
    sweep->add_option("--tables", tables_dir, "Directory for one spectrum CSV per value");

    auto* eigen = app.add_subcommand("eigen", "Drift-matrix eigenvalues and stability");
    add_common(eigen, eigen_o);

    auto* preset = app.add_subcommand("preset", "Run a figure preset, or 'list' the presets");
    add_common(preset, preset_o);
    std::string preset_name;
    bool print_config = false;
    preset->add_option("name", preset_name, "Preset name or 'list'")->required();
    preset->add_flag("--print-config", print_config, "Print the preset's configuration document instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    if (steady->parsed()) {
        emit(steady_o, steady_csv(resolve(steady_o)));
    } else if (spectrum->parsed()) {
        const RunConfig c = resolve(spectrum_o);
        if (at) {
            emit(spectrum_o, single_point_csv(c, *at));
        } else {
            const PreparedRun p = prepare_run(c);
            warn_kerr(c, p);
            emit(spectrum_o, format_csv(run_spectrum(c, spectrum_o.threads), c.outputs));
        }
    } else if (delay->parsed()) {
        const RunConfig c = resolve(delay_o);
        const std::vector<std::string> cols{"delta_over_omega_b", "phi_t", "tau_g", "divergent"};
        emit(delay_o, format_csv(run_spectrum(c, delay_o.threads), cols));
    } else if (sweep->parsed()) {
        SweepSpec spec{resolve(sweep_o), axis, parse_values(values_text)};
        const SweepResult result = run_sweep(spec, sweep_o.threads);
        if (!tables_dir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(tables_dir, ec);
            if (ec) throw IoError("cannot create '" + tables_dir + "': " + ec.message());
            for (std::size_t i = 0; i < result.points.size(); ++i) {
                if (!result.points[i].table) continue;
                const auto path = std::filesystem::path(tables_dir) / ("sweep_" + std::to_string(i) + ".csv");
                write_file(path.string(), format_csv(*result.points[i].table, spec.base.outputs));
            }
        }
        emit(sweep_o, format_sweep_summary(result));
    } else if (eigen->parsed()) {
        emit(eigen_o, eigen_text(resolve(eigen_o)));
    } else if (preset->parsed()) {
        if (preset_name == "list") {
            emit(preset_o, preset_list());
        } else {
            if (!preset_o.config_path.empty())
                throw ParseError("--config cannot be combined with a preset", 0, "--config");
            const RunConfig c = apply_overrides(preset_config(preset_name), preset_o);
            emit(preset_o, print_config ? emit_config(c) : format_csv(run_spectrum(c, preset_o.threads), c.outputs));
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const magnomech::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    } catch (const magnomech::ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    } catch (const magnomech::PoleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSingular;
    } catch (const magnomech::SingularConfiguration& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSingular;
    } catch (const magnomech::EmptySolution& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSingular;
    } catch (const magnomech::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
