#include "magnomech/spectra.hpp"

#include "magnomech/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

namespace magnomech {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectrumRow evaluate_row(double x, const SystemParams& params, const Detunings& det, Complex G, double eps_pr,
                         ResponsePath path) {
    SpectrumRow row;
    row.delta_over_omega_b = x;
    const double delta = x * params.omega_b;
    try {
        const Complex a1 = path == ResponsePath::resonant
                               ? response_resonant(delta - params.omega_b, params, G, eps_pr)
                               : response_general(delta, params, det, G, eps_pr).a_1p;
        const OutputField f = output_field(a1, params.kappa_1, eps_pr);
        row.eps_out = f.eps_out_rescaled;
        row.t_p = f.t_p;
        row.abs_t_p_sq = std::norm(f.t_p);
        row.re_quad = f.re_quad;
        row.im_quad = f.im_quad;
        if (!std::isfinite(row.abs_t_p_sq)) throw PoleError("non-finite response", delta, 0.0, delta, 0.0);
    } catch (const PoleError&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row = SpectrumRow{};
        row.delta_over_omega_b = x;
        row.eps_out = row.t_p = Complex{nan, nan};
        row.abs_t_p_sq = row.re_quad = row.im_quad = nan;
        row.divergent = true;
    }
    return row;
}

// Unwraps phase and differentiates it over rows [begin, end), all non-divergent.
void fill_segment(SpectrumTable& table, std::size_t begin, std::size_t end, double step_omega) {
    const std::size_t n = end - begin;
    std::vector<Complex> eps(n);
    for (std::size_t i = 0; i < n; ++i) eps[i] = table.rows[begin + i].eps_out;
    const std::vector<double> phi = phase(eps);
    for (std::size_t i = 0; i < n; ++i) table.rows[begin + i].phi_t = phi[i];
    if (n < 3) return;

    std::vector<double> omega(n);
    for (std::size_t i = 0; i < n; ++i) omega[i] = static_cast<double>(i) * step_omega;
    const std::vector<double> tau = group_delay(phi, omega);

    const bool gap_before = begin > 0;
    const bool gap_after = end < table.rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((i == 0 && gap_before) || (i + 1 == n && gap_after)) continue;
        table.rows[begin + i].tau_g = tau[i];
    }
}

std::vector<Extremum> prominent_maxima(std::span<const double> x, std::span<const double> y, double min_prominence,
                                       bool negate) {
    if (x.size() != y.size()) throw ModelError("extremum search needs equal-length series");
    auto v = [&](std::size_t i) { return negate ? -y[i] : y[i]; };
    std::vector<Extremum> out;
    const std::size_t n = y.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(v(i) > v(i - 1))) continue;
        // Plateau: take its left end, require a descent after it.
        std::size_t j = i;
        while (j + 1 < n && v(j + 1) == v(i)) ++j;
        if (j + 1 >= n || !(v(j + 1) < v(i))) continue;

        double left_min = v(i);
        for (std::size_t k = i; k-- > 0;) {
            if (v(k) > v(i)) break;
            left_min = std::min(left_min, v(k));
        }
        double right_min = v(i);
        for (std::size_t k = j + 1; k < n; ++k) {
            if (v(k) > v(i)) break;
            right_min = std::min(right_min, v(k));
        }
        const double prominence = v(i) - std::max(left_min, right_min);
        if (prominence >= min_prominence) out.push_back({i, x[i], y[i], prominence});
        i = j;
    }
    return out;
}

}  // namespace

void Grid::validate() const {
    if (points == 0) throw ModelError("grid is empty");
    if (points < kMinGridPoints) throw ModelError("grid needs at least 9 points");
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
        throw ModelError("grid needs finite start < stop");
}

SpectrumTable sweep_spectrum(const Grid& grid, const SystemParams& params, const Detunings& det, Complex G,
                             double eps_pr, ResponsePath path, unsigned threads) {
    grid.validate();
    if (!(params.omega_b > 0.0)) throw ModelError("sweep needs omega_b > 0 (grid is in delta/omega_b)");
    if (!(eps_pr > 0.0)) throw ModelError("sweep needs eps_pr > 0");
    if (path == ResponsePath::resonant && !resonance_condition_holds(params, det))
        throw ModelError("resonant path requested but Delta_a1 = Delta_a2 = Delta_m_tilde = omega_b does not hold");

    SpectrumTable table;
    table.omega_b = params.omega_b;
    table.rows.resize(grid.points);

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.points / 256 + 1));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i = w; i < grid.points; i += workers)
                table.rows[i] = evaluate_row(grid.at(i), params, det, G, eps_pr, path);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    const double step_omega = grid.step() * params.omega_b;
    std::size_t i = 0;
    while (i < table.rows.size()) {
        if (table.rows[i].divergent) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < table.rows.size() && !table.rows[j].divergent) ++j;
        fill_segment(table, i, j, step_omega);
        i = j;
    }
    return table;
}

std::vector<double> unwrap(std::span<const double> principal) {
    std::vector<double> out(principal.begin(), principal.end());
    double offset = 0.0;
    for (std::size_t i = 1; i < out.size(); ++i) {
        const double jump = principal[i] - principal[i - 1];
        offset -= kTwoPi * std::round(jump / kTwoPi);
        out[i] = principal[i] + offset;
    }
    return out;
}

std::vector<double> phase(std::span<const Complex> eps_out) {
    std::vector<double> principal(eps_out.size());
    for (std::size_t i = 0; i < eps_out.size(); ++i) principal[i] = std::arg(eps_out[i]);
    if (principal.size() < 2) return principal;
    return unwrap(principal);
}

std::vector<double> group_delay(std::span<const double> phi, std::span<const double> omega_pr) {
    const std::size_t n = phi.size();
    if (n != omega_pr.size()) throw ModelError("phase and frequency series differ in length");
    if (n < 3) throw ModelError("group delay needs at least 3 points");
    const double h = (omega_pr[n - 1] - omega_pr[0]) / static_cast<double>(n - 1);
    if (!(h != 0.0) || !std::isfinite(h)) throw ModelError("group delay needs a nondegenerate frequency grid");
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((omega_pr[i] - omega_pr[i - 1]) - h) > 1e-6 * std::abs(h))
            throw ModelError("group delay needs a uniform frequency grid (resample first)");
    }

    std::vector<double> tau(n);
    tau[0] = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) tau[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
    tau[n - 1] = (3.0 * phi[n - 1] - 4.0 * phi[n - 2] + phi[n - 3]) / (2.0 * h);
    return tau;
}

std::vector<Band> find_amplification_bands(const SpectrumTable& table, double threshold) {
    const auto& rows = table.rows;
    const double floor = threshold * (1.0 + kGainResolution);
    auto amplified = [&](const SpectrumRow& r) { return r.divergent || r.abs_t_p_sq > floor; };
    auto height = [](const SpectrumRow& r) {
        return r.divergent ? std::numeric_limits<double>::infinity() : r.abs_t_p_sq;
    };

    std::vector<Band> bands;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (!amplified(rows[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        std::size_t best = i;
        while (j < rows.size() && amplified(rows[j])) {
            if (height(rows[j]) > height(rows[best])) best = j;
            ++j;
        }
        bands.push_back({rows[best].delta_over_omega_b, height(rows[best]),
                         rows[j - 1].delta_over_omega_b - rows[i].delta_over_omega_b});
        i = j;
    }
    return bands;
}

double amplification_centroid(const SpectrumTable& table, double threshold) {
    double weight = 0.0;
    double moment = 0.0;
    for (const auto& r : table.rows) {
        if (r.divergent || !(r.abs_t_p_sq > threshold * (1.0 + kGainResolution))) continue;
        const double w = r.abs_t_p_sq - threshold;
        weight += w;
        moment += w * r.delta_over_omega_b;
    }
    return weight > 0.0 ? moment / weight : std::numeric_limits<double>::quiet_NaN();
}

std::vector<Extremum> find_peaks(std::span<const double> x, std::span<const double> y, double min_prominence) {
    return prominent_maxima(x, y, min_prominence, false);
}

std::vector<Extremum> find_dips(std::span<const double> x, std::span<const double> y, double min_prominence) {
    return prominent_maxima(x, y, min_prominence, true);
}

StabilityReport drift_eigenvalues(const SystemParams& params, const Detunings& det, Complex G) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(drift_matrix(params, det, G), false);
    if (es.info() != Eigen::Success) throw ModelError("drift-matrix eigenvalue iteration failed");

    StabilityReport rep;
    for (int k = 0; k < 4; ++k) rep.eigenvalues[static_cast<std::size_t>(k)] = es.eigenvalues()[k];
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](Complex a, Complex b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    rep.max_real_part = -std::numeric_limits<double>::infinity();
    for (const auto& e : rep.eigenvalues) rep.max_real_part = std::max(rep.max_real_part, e.real());
    rep.stable = rep.max_real_part < 0.0;
    rep.ep_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
            rep.ep_gap = std::min(rep.ep_gap, std::abs(rep.eigenvalues[a] - rep.eigenvalues[b]));
    return rep;
}

}  // namespace magnomech
