#include "magnomech/config.hpp"

#include "magnomech/csv.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/linear_response.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace magnomech {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    std::size_t line = 0;
};

constexpr std::string_view kMhzSuffix = "_over_2pi_MHz";

const std::set<std::string, std::less<>> kSections{"system", "drive", "grid", "run"};

// [system] parameters, by short name, that map onto plain SystemParams fields.
const std::map<std::string, double SystemParams::*, std::less<>> kSystemFields{
    {"omega_a1", &SystemParams::omega_a1}, {"omega_a2", &SystemParams::omega_a2},
    {"omega_m", &SystemParams::omega_m},   {"omega_b", &SystemParams::omega_b},
    {"kappa_1", &SystemParams::kappa_1},   {"kappa_2", &SystemParams::kappa_2},
    {"kappa_m", &SystemParams::kappa_m},   {"kappa_b", &SystemParams::kappa_b},
    {"g_1", &SystemParams::g_1},           {"J", &SystemParams::J},
    {"g_2", &SystemParams::g_2},           {"K", &SystemParams::K},
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_number(const Entry& e) {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    if (begin != end && *begin == '+') ++begin;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end || e.value.empty())
        throw ParseError("malformed number '" + e.value + "'", e.line, e.key);
    if (!std::isfinite(v)) throw ParseError("value must be finite", e.line, e.key);
    return v;
}

long long parse_integer(const Entry& e) {
    long long v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end || e.value.empty())
        throw ParseError("malformed integer '" + e.value + "'", e.line, e.key);
    return v;
}

std::vector<Entry> tokenize(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<Entry> entries;
    std::set<std::string> seen;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (line.ends_with('\r')) line.remove_suffix(1);
        const auto comment = line.find_first_of("#;");
        if (comment != std::string_view::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", line_no, "");
            const std::string name(trim(line.substr(1, line.size() - 2)));
            if (!kSections.contains(name)) throw ParseError("unknown section [" + name + "]", line_no, name);
            section = name;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, std::string(line));
        Entry e{section, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
        if (e.key.empty()) throw ParseError("empty key", line_no, "");
        if (section.empty()) throw ParseError("key outside any [section]", line_no, e.key);
        if (!seen.insert(section + "." + e.key).second) throw ParseError("duplicate key", line_no, e.key);
        entries.push_back(std::move(e));
    }
    return entries;
}

// Shortest decimal x with mhz_to_rad(x) == rad exactly, so the document
// reloads to the same stored value.
std::string emit_mhz(double rad) {
    if (rad == 0.0) return "0";
    const double x = rad / kRadPerMHz;
    double c = x;
    for (int k = 0; k < 4; ++k) c = std::nextafter(c, -INFINITY);
    std::string best;
    for (int k = 0; k < 9; ++k, c = std::nextafter(c, INFINITY)) {
        if (mhz_to_rad(c) != rad) continue;
        std::string s = format_double(c);
        if (best.empty() || s.size() < best.size()) best = std::move(s);
    }
    return best.empty() ? format_double(x) : best;
}

double derived_omega(const RunConfig& c) {
    return rabi_frequency(c.drive.B_0, spin_count(c.sphere_diameter).N_spins);
}

double derived_epsilon(const RunConfig& c) {
    return probe_amplitude(c.drive.P_p, c.params.kappa_1, c.drive.omega_pr);
}

std::string short_parameter(std::string_view name) {
    if (name.ends_with(kMhzSuffix)) name.remove_suffix(kMhzSuffix.size());
    return std::string(name);
}

}  // namespace

const char* to_string(ResponsePath mode) {
    return mode == ResponsePath::resonant ? "resonant" : "general";
}

const char* to_string(Parameterization p) {
    return p == Parameterization::direct_g ? "direct-G" : "drive-derived";
}

RunConfig default_config() {
    RunConfig c;
    c.params.omega_a1 = mhz_to_rad(10000.0);
    c.params.omega_a2 = mhz_to_rad(10000.0);
    c.params.omega_m = mhz_to_rad(10000.0);
    c.params.omega_b = mhz_to_rad(10.0);
    c.params.kappa_1 = mhz_to_rad(2.0);
    c.params.kappa_2 = mhz_to_rad(-1.0);
    c.params.kappa_m = mhz_to_rad(0.1);
    c.params.kappa_b = mhz_to_rad(1e-4);
    c.params.g_1 = mhz_to_rad(1.0);
    c.params.J = 0.0;
    c.params.g_2 = 0.0;
    c.params.G_direct = Complex{mhz_to_rad(3.5), 0.0};
    c.params.K = 0.0;
    c.drive.omega_pu = c.params.omega_a1 - c.params.omega_b;
    c.drive.omega_pr = c.drive.omega_pu + c.params.omega_b;
    c.drive.P_p = 1e-15;
    c.drive.B_0 = 0.0;
    c.drive.epsilon_pr = derived_epsilon(c);
    c.outputs = canonical_columns({});
    return c;
}

RunConfig parse_config(std::string_view text) {
    const std::vector<Entry> entries = tokenize(text);
    RunConfig c = default_config();

    std::map<std::string, const Entry*, std::less<>> at;
    std::optional<double> G_re, G_im, Omega, omega_pu, epsilon;
    for (const Entry& e : entries) {
        at[e.key] = &e;
        if (e.section == "system") {
            if (!e.key.ends_with(kMhzSuffix)) throw ParseError("unknown key in [system]", e.line, e.key);
            const std::string name = short_parameter(e.key);
            const double v = mhz_to_rad(parse_number(e));
            if (auto it = kSystemFields.find(name); it != kSystemFields.end()) {
                c.params.*(it->second) = v;
            } else if (name == "G") {
                G_re = v;
            } else if (name == "G_imag") {
                G_im = v;
            } else if (name == "Omega") {
                Omega = v;
            } else {
                throw ParseError("unknown key in [system]", e.line, e.key);
            }
        } else if (e.section == "drive") {
            if (e.key == "omega_pu_over_2pi_MHz") {
                omega_pu = mhz_to_rad(parse_number(e));
            } else if (e.key == "epsilon_pr_over_2pi_MHz") {
                epsilon = mhz_to_rad(parse_number(e));
            } else if (e.key == "P_p_W") {
                c.drive.P_p = parse_number(e);
            } else if (e.key == "B_0_T") {
                c.drive.B_0 = parse_number(e);
            } else if (e.key == "sphere_diameter_m") {
                c.sphere_diameter = parse_number(e);
            } else {
                throw ParseError("unknown key in [drive]", e.line, e.key);
            }
        } else if (e.section == "grid") {
            if (e.key == "start") {
                c.grid.start = parse_number(e);
            } else if (e.key == "stop") {
                c.grid.stop = parse_number(e);
            } else if (e.key == "points") {
                const long long n = parse_integer(e);
                if (n < static_cast<long long>(kMinGridPoints))
                    throw ParseError("grid needs at least 9 points", e.line, e.key);
                c.grid.points = static_cast<std::size_t>(n);
            } else {
                throw ParseError("unknown key in [grid]", e.line, e.key);
            }
        } else {
            if (e.key == "mode") {
                if (e.value == "general") c.mode = ResponsePath::general;
                else if (e.value == "resonant") c.mode = ResponsePath::resonant;
                else throw ParseError("mode must be 'general' or 'resonant'", e.line, e.key);
            } else if (e.key == "parameterization") {
                if (e.value == "direct-G") c.parameterization = Parameterization::direct_g;
                else if (e.value == "drive-derived") c.parameterization = Parameterization::drive_derived;
                else throw ParseError("parameterization must be 'direct-G' or 'drive-derived'", e.line, e.key);
            } else if (e.key == "outputs") {
                std::vector<std::string> cols;
                std::stringstream ss(e.value);
                for (std::string item; std::getline(ss, item, ',');) cols.emplace_back(trim(item));
                try {
                    c.outputs = canonical_columns(cols);
                } catch (const ModelError& err) {
                    throw ParseError(err.what(), e.line, e.key);
                }
            } else if (e.key == "branch") {
                const long long b = parse_integer(e);
                if (b < 0 || b > 2) throw ParseError("branch must be 0, 1 or 2", e.line, e.key);
                c.branch = static_cast<int>(b);
            } else {
                throw ParseError("unknown key in [run]", e.line, e.key);
            }
        }
    }

    auto line_of = [&](std::string_view key) -> std::size_t {
        auto it = at.find(key);
        return it == at.end() ? 0 : it->second->line;
    };
    auto fail = [&](const std::string& msg, std::string_view key) -> void {
        throw ParseError(msg, line_of(key), std::string(key));
    };

    if (c.grid.points < kMinGridPoints) fail("grid needs at least 9 points", "points");
    if (!(c.grid.start < c.grid.stop)) fail("grid needs start < stop", at.contains("stop") ? "stop" : "start");

    if (c.parameterization == Parameterization::direct_g) {
        if (Omega) fail("Omega applies only to drive-derived runs", "Omega_over_2pi_MHz");
        c.params.G_direct = Complex{G_re.value_or(c.params.G_direct->real()), G_im.value_or(0.0)};
        c.params.Omega.reset();
    } else {
        if (G_re) fail("G applies only to direct-G runs", "G_over_2pi_MHz");
        if (G_im) fail("G applies only to direct-G runs", "G_imag_over_2pi_MHz");
        c.params.G_direct.reset();
        try {
            c.params.Omega = Omega ? *Omega : derived_omega(c);
        } catch (const ModelError& err) {
            fail(err.what(), "sphere_diameter_m");
        }
    }

    try {
        c.params.validate();
    } catch (const ModelError& err) {
        // Messages name the field; map it back to its document key.
        std::string field = err.what();
        field = field.substr(0, field.find(' '));
        fail(err.what(), field + std::string(kMhzSuffix));
    }

    c.drive.omega_pu = omega_pu.value_or(c.params.omega_a1 - c.params.omega_b);
    c.drive.omega_pr = c.drive.omega_pu + c.params.omega_b;
    try {
        c.drive.epsilon_pr = epsilon ? *epsilon : derived_epsilon(c);
    } catch (const ModelError& err) {
        fail(err.what(), "P_p_W");
    }
    if (!(c.drive.epsilon_pr > 0.0))
        fail("probe amplitude must be > 0", epsilon ? "epsilon_pr_over_2pi_MHz" : "P_p_W");

    try {
        c.drive.validate();
    } catch (const ModelError& err) {
        fail(err.what(), "omega_pu_over_2pi_MHz");
    }

    if (c.mode == ResponsePath::resonant && c.parameterization == Parameterization::direct_g) {
        if (!resonance_condition_holds(c.params, compute_detunings(c.params, c.drive)))
            fail("resonant mode needs Delta_a1 = Delta_a2 = Delta_m = omega_b", "mode");
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("failed to read config '" + path + "'");
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream out;
    auto mhz = [&](std::string_view name, double rad) { out << name << kMhzSuffix << " = " << emit_mhz(rad) << '\n'; };

    out << "[system]\n";
    for (const auto& name : {"omega_a1", "omega_a2", "omega_m", "omega_b", "kappa_1", "kappa_2", "kappa_m",
                             "kappa_b", "g_1", "J", "g_2", "K"}) {
        mhz(name, c.params.*(kSystemFields.at(name)));
    }
    if (c.parameterization == Parameterization::direct_g) {
        const Complex G = c.params.G_direct.value_or(Complex{});
        mhz("G", G.real());
        mhz("G_imag", G.imag());
    } else if (c.params.Omega && *c.params.Omega != derived_omega(c)) {
        mhz("Omega", *c.params.Omega);
    }

    out << "\n[drive]\n";
    if (c.drive.omega_pu != c.params.omega_a1 - c.params.omega_b) mhz("omega_pu", c.drive.omega_pu);
    out << "P_p_W = " << format_double(c.drive.P_p) << '\n';
    if (c.drive.epsilon_pr != derived_epsilon(c)) mhz("epsilon_pr", c.drive.epsilon_pr);
    out << "B_0_T = " << format_double(c.drive.B_0) << '\n';
    out << "sphere_diameter_m = " << format_double(c.sphere_diameter) << '\n';

    out << "\n[grid]\n";
    out << "start = " << format_double(c.grid.start) << '\n';
    out << "stop = " << format_double(c.grid.stop) << '\n';
    out << "points = " << c.grid.points << '\n';

    out << "\n[run]\n";
    out << "mode = " << to_string(c.mode) << '\n';
    out << "parameterization = " << to_string(c.parameterization) << '\n';
    out << "outputs = ";
    for (std::size_t i = 0; i < c.outputs.size(); ++i) out << (i ? "," : "") << c.outputs[i];
    out << '\n';
    out << "branch = " << c.branch << '\n';
    return out.str();
}

std::string canonical_parameter(std::string_view name) {
    const std::string s = short_parameter(name);
    if (!kSystemFields.contains(s) && s != "G" && s != "G_imag" && s != "Omega")
        throw ModelError("unknown system parameter '" + std::string(name) + "'");
    return s + std::string(kMhzSuffix);
}

void set_parameter(RunConfig& c, std::string_view name, double value) {
    if (!std::isfinite(value)) throw ModelError("parameter value must be finite");
    const std::string key = short_parameter(canonical_parameter(name));
    const double v = mhz_to_rad(value);
    if (auto it = kSystemFields.find(key); it != kSystemFields.end()) {
        c.params.*(it->second) = v;
        c.drive.omega_pr = c.drive.omega_pu + c.params.omega_b;
        return;
    }
    if (key == "G" || key == "G_imag") {
        if (c.parameterization != Parameterization::direct_g)
            throw ModelError("G is only a parameter of direct-G runs");
        const Complex G = c.params.G_direct.value_or(Complex{});
        c.params.G_direct = key == "G" ? Complex{v, G.imag()} : Complex{G.real(), v};
        return;
    }
    if (c.parameterization != Parameterization::drive_derived)
        throw ModelError("Omega is only a parameter of drive-derived runs");
    c.params.Omega = v;
}

PreparedRun prepare_run(const RunConfig& config) {
    PreparedRun p;
    p.params = config.params;
    p.drive = config.drive;
    p.params.validate();
    p.drive.validate();
    p.det = compute_detunings(p.params, p.drive);
    if (config.parameterization == Parameterization::direct_g) {
        p.G = p.params.G_direct.value_or(Complex{});
        return p;
    }
    p.branches = solve_steady_state(p.params, p.drive, p.det);
    const auto idx = static_cast<std::size_t>(config.branch);
    if (idx >= p.branches.size())
        throw ModelError("branch " + std::to_string(config.branch) + " requested but only " +
                         std::to_string(p.branches.size()) + " steady-state branch(es) exist");
    p.steady = p.branches[idx];
    p.det.Delta_m_tilde = p.steady->Delta_m_tilde;
    p.G = p.steady->G_eff;
    return p;
}

SpectrumTable run_spectrum(const RunConfig& config, unsigned threads) {
    const PreparedRun p = prepare_run(config);
    return sweep_spectrum(config.grid, p.params, p.det, p.G, p.drive.epsilon_pr, config.mode, threads);
}

}  // namespace magnomech
