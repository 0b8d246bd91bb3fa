#include "magnomech/csv.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/presets.hpp"
#include "magnomech/spectra.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace magnomech;
using namespace test_support;

namespace {

constexpr double kEps = 6.0e7;
constexpr double kPi = std::numbers::pi;

SpectrumTable resonant_sweep(const SystemParams& p, const Grid& grid, Complex G = {}, unsigned threads = 0) {
    return sweep_spectrum(grid, p, resonant_detunings(p, p.omega_b), G, kEps, ResponsePath::resonant, threads);
}

std::vector<double> column(const SpectrumTable& t, double SpectrumRow::*field) {
    std::vector<double> out;
    for (const auto& r : t.rows) out.push_back(r.*field);
    return out;
}

std::vector<double> xs(const SpectrumTable& t) {
    return column(t, &SpectrumRow::delta_over_omega_b);
}

// Bare cavity (J = g_1 = 0): tau_g at lambda is kappa_1 / (kappa_1^2 + lambda^2).
double bare_delay_error(std::size_t points) {
    const SystemParams p = table_params(0.0, 0.0, 0.0, -1.0);
    const SpectrumTable t = resonant_sweep(p, Grid{0.5, 1.5, points});
    double worst = 0.0;
    for (const auto& r : t.rows) {
        const double lambda = (r.delta_over_omega_b - 1.0) * p.omega_b;
        worst = std::max(worst, std::abs(*r.tau_g - p.kappa_1 / (p.kappa_1 * p.kappa_1 + lambda * lambda)));
    }
    return worst;
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("grid validation") {
    const SystemParams p = table_params(0.0, 0.0, 0.0, -1.0);
    CHECK_THROWS_AS(resonant_sweep(p, Grid{0.5, 1.5, 0}), ModelError);
    CHECK_THROWS_AS(resonant_sweep(p, Grid{0.5, 1.5, 8}), ModelError);
    CHECK_THROWS_AS(resonant_sweep(p, Grid{1.5, 0.5, 101}), ModelError);
    CHECK(resonant_sweep(p, Grid{0.5, 1.5, 9}).rows.size() == 9);
    const Grid g{0.5, 1.5, 4001};
    CHECK(g.at(0) == 0.5);
    CHECK(g.at(4000) == 1.5);
    CHECK(g.at(2000) == 1.0);
}

TEST_CASE("resonant path needs the resonance condition") {
    SystemParams p = table_params(1.0, 1.0, 1.0, -1.0);
    Detunings det = resonant_detunings(p, p.omega_b);
    det.Delta_m_tilde *= 0.5;
    CHECK_THROWS_AS(sweep_spectrum(Grid{}, p, det, Complex{}, kEps, ResponsePath::resonant), ModelError);
    CHECK_NOTHROW(sweep_spectrum(Grid{0.5, 1.5, 101}, p, det, Complex{}, kEps, ResponsePath::general));
}

TEST_CASE("all-pass spectrum") {
    const SpectrumTable t = resonant_sweep(table_params(0.0, 0.0, 2.0, -1.0), Grid{0.5, 1.5, 1001});
    for (const auto& r : t.rows) {
        CHECK(std::abs(r.abs_t_p_sq - 1.0) < 1e-12);
        CHECK(r.abs_t_p_sq == std::norm(r.t_p));
    }
    CHECK(find_amplification_bands(t).empty());
    CHECK(std::isnan(amplification_centroid(t)));
}

TEST_CASE("phase") {
    SUBCASE("real positive output has zero phase") {
        const std::vector<Complex> v(10, Complex{2.5, 0.0});
        for (double phi : phase(v)) CHECK(phi == 0.0);
    }
    SUBCASE("bare cavity phase is atan(lambda / kappa_1)") {
        const SystemParams p = table_params(0.0, 0.0, 0.0, -1.0);
        const SpectrumTable t = resonant_sweep(p, Grid{0.5, 1.5, 401});
        for (const auto& r : t.rows) {
            const double lambda = (r.delta_over_omega_b - 1.0) * p.omega_b;
            CHECK(std::abs(*r.phi_t - std::atan(lambda / p.kappa_1)) < 1e-12);
        }
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            CHECK(std::abs(*t.rows[i].phi_t + *t.rows[t.rows.size() - 1 - i].phi_t) < 1e-12);
    }
    SUBCASE("unwrapping across the branch cut") {
        std::vector<Complex> v;
        for (int i = 0; i < 200; ++i) v.push_back(std::polar(1.0, 0.1 * i));  // winds three times
        const std::vector<double> phi = phase(v);
        for (std::size_t i = 1; i < phi.size(); ++i) CHECK(std::abs(phi[i] - phi[i - 1]) <= kPi);
        CHECK(phi.back() == doctest::Approx(0.1 * 199).epsilon(1e-12));
    }
    SUBCASE("single sample keeps its principal value") {
        const std::vector<Complex> v{Complex{-1.0, -1e-3}};
        CHECK(phase(v)[0] == std::arg(v[0]));
    }
    SUBCASE("unwrap of a decreasing ramp") {
        std::vector<double> principal;
        for (int i = 0; i < 100; ++i) principal.push_back(std::remainder(-0.3 * i, 2.0 * kPi));
        const std::vector<double> u = unwrap(principal);
        for (int i = 0; i < 100; ++i) CHECK(u[i] == doctest::Approx(-0.3 * i).epsilon(1e-12));
    }
}

TEST_CASE("group delay") {
    SUBCASE("bare cavity at lambda = 0 is 1/kappa_1") {
        const SystemParams p = table_params(0.0, 0.0, 0.0, -1.0);
        const SpectrumTable t = resonant_sweep(p, Grid{});
        const double tau = *t.rows[2000].tau_g;
        CHECK(std::abs(tau - 1.0 / p.kappa_1) / (1.0 / p.kappa_1) < 1e-3);
        CHECK(1.0 / p.kappa_1 == doctest::Approx(7.958e-8).epsilon(1e-4));
    }
    SUBCASE("second-order convergence") {
        const double coarse = bare_delay_error(201);
        const double fine = bare_delay_error(401);
        CHECK(coarse / fine >= 3.5);
    }
    SUBCASE("constant phase has zero delay") {
        const std::vector<double> phi(20, 1.25);
        std::vector<double> w;
        for (int i = 0; i < 20; ++i) w.push_back(1e6 * i);
        for (double tau : group_delay(phi, w)) CHECK(tau == 0.0);
    }
    SUBCASE("quadratic phase is differentiated exactly, ends included") {
        std::vector<double> phi, w;
        for (int i = 0; i < 11; ++i) {
            w.push_back(0.5 * i);
            phi.push_back(3.0 * w.back() * w.back() - w.back());
        }
        const std::vector<double> tau = group_delay(phi, w);
        for (int i = 0; i < 11; ++i) CHECK(tau[i] == doctest::Approx(6.0 * w[i] - 1.0).epsilon(1e-12));
    }
    SUBCASE("rejections") {
        const std::vector<double> phi{0.0, 1.0, 2.0, 3.0};
        CHECK_THROWS_AS(group_delay(phi, std::vector<double>{0.0, 1.0, 2.5, 3.0}), ModelError);
        CHECK_THROWS_AS(group_delay(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, 1.0}), ModelError);
        CHECK_THROWS_AS(group_delay(phi, std::vector<double>{0.0, 1.0, 2.0}), ModelError);
    }
}

TEST_CASE("symmetry under the resonance condition") {
    const SystemParams p = table_params(2.0, 3.0, 1.5, -0.4);
    const SpectrumTable t = resonant_sweep(p, Grid{0.5, 1.5, 2001}, Complex{mhz_to_rad(1.5), 0.0});
    const std::size_t n = t.rows.size();
    double tau_max = 0.0;
    for (const auto& r : t.rows) tau_max = std::max(tau_max, std::abs(*r.tau_g));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = t.rows[i];
        const auto& b = t.rows[n - 1 - i];
        CHECK(rel_err(std::abs(a.t_p), std::abs(b.t_p)) < 1e-12);
        CHECK(std::abs(*a.tau_g - *b.tau_g) <= 1e-8 * tau_max);
    }
}

TEST_CASE("amplification bands") {
    SUBCASE("synthetic table") {
        SpectrumTable t;
        const double h[] = {0.5, 1.2, 1.5, 1.1, 0.9, 0.8, 3.0, 0.7};
        for (int i = 0; i < 8; ++i) {
            SpectrumRow r;
            r.delta_over_omega_b = 0.1 * i;
            r.abs_t_p_sq = h[i];
            t.rows.push_back(r);
        }
        auto bands = find_amplification_bands(t);
        REQUIRE(bands.size() == 2);
        CHECK(bands[0].center == doctest::Approx(0.2));
        CHECK(bands[0].height == 1.5);
        CHECK(bands[0].width == doctest::Approx(0.2));
        CHECK(bands[1].width == 0.0);
        CHECK(find_amplification_bands(t, 2.0).size() == 1);

        t.rows[4].divergent = true;
        bands = find_amplification_bands(t);
        REQUIRE(bands.size() == 2);
        CHECK(std::isinf(bands[0].height));
        CHECK(bands[0].center == doctest::Approx(0.4));
    }
    SUBCASE("fig2a has one band centred on the phonon sideband") {
        const RunConfig c = preset_config("fig2a");
        const SpectrumTable t = run_spectrum(c);
        const auto bands = find_amplification_bands(t);
        REQUIRE(bands.size() == 1);
        CHECK(std::abs(bands[0].center - 1.0) <= c.grid.step());
        CHECK(bands[0].height > 1.0);

        // Scan oracle: the closed form evaluated independently at every grid point.
        const SystemParams& p = c.params;
        double best = -1.0, best_x = 0.0;
        for (std::size_t i = 0; i < c.grid.points; ++i) {
            const double lambda = (c.grid.at(i) - 1.0) * p.omega_b;
            const Complex den = Complex{p.kappa_1, -lambda} + p.J * p.J / Complex{p.kappa_2, -lambda};
            const double v = std::norm(1.0 - 2.0 * p.kappa_1 / den);
            if (v > best) best = v, best_x = c.grid.at(i);
        }
        CHECK(bands[0].center == best_x);
        CHECK(rel_err(bands[0].height, best) < 1e-12);
    }
    SUBCASE("fig4a has one band") {
        CHECK(find_amplification_bands(run_preset("fig4a")).size() == 1);
    }
}

TEST_CASE("fig2d splits into two maxima around a central dip") {
    const SpectrumTable t = run_preset("fig2d");
    const std::vector<double> y = column(t, &SpectrumRow::abs_t_p_sq);
    const auto peaks = find_peaks(xs(t), y, 0.01);
    REQUIRE(peaks.size() == 2);
    CHECK(std::abs((peaks[0].x - 1.0) + (peaks[1].x - 1.0)) < 1e-9);
    CHECK(rel_err(peaks[0].value, peaks[1].value) < 1e-9);
    const auto dips = find_dips(xs(t), y, 0.01);
    REQUIRE(dips.size() == 1);
    CHECK(dips[0].x == doctest::Approx(1.0));
}

TEST_CASE("extrema with prominence") {
    const std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const std::vector<double> y{0, 5, 1, 2, 1.9, 2, 1, 8, 8, 0, 1};
    const auto peaks = find_peaks(x, y, 0.0);
    REQUIRE(peaks.size() == 4);
    CHECK(peaks[0].index == 1);
    CHECK(peaks[0].prominence == 4.0);                    // saddle at 1 on the right
    CHECK(peaks[1].prominence == doctest::Approx(1.0));   // 2 over the saddle at 1
    CHECK(peaks[2].prominence == doctest::Approx(1.0));
    CHECK(peaks[3].index == 7);                           // plateau reported at its left end
    CHECK(peaks[3].prominence == 8.0);
    CHECK(find_peaks(x, y, 2.0).size() == 2);

    const auto dips = find_dips(x, y, 0.0);
    REQUIRE(dips.size() == 4);
    CHECK(dips[0].x == 2.0);
    CHECK(dips[0].value == 1.0);
    CHECK_THROWS_AS(find_peaks(x, std::vector<double>{1.0}, 0.0), ModelError);
}

TEST_CASE("poles become divergent rows") {
    // kappa_2 = -kappa_1 and J = kappa_1 put a real-axis pole exactly at lambda = 0.
    const SystemParams p = table_params(2.0, 0.0, 0.0, -2.0);
    const Grid grid{0.5, 1.5, 101};
    const SpectrumTable t = resonant_sweep(p, grid);
    std::size_t divergent = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (!t.rows[i].divergent) continue;
        ++divergent;
        CHECK(t.rows[i].delta_over_omega_b == doctest::Approx(1.0));
        CHECK_FALSE(t.rows[i].phi_t.has_value());
        CHECK_FALSE(t.rows[i - 1].tau_g.has_value());
        CHECK_FALSE(t.rows[i + 1].tau_g.has_value());
        CHECK(t.rows[i - 1].phi_t.has_value());
        CHECK(t.rows[i + 2].tau_g.has_value());
    }
    CHECK(divergent == 1);

    // The flagged row sits within two grid steps of a drift eigenvalue on the real axis.
    const StabilityReport rep = drift_eigenvalues(p, resonant_detunings(p, p.omega_b), Complex{});
    bool near = false;
    for (const auto& mu : rep.eigenvalues) {
        if (std::abs(mu.real()) > 1e-6 * p.kappa_1) continue;
        near = near || std::abs(-mu.imag() / p.omega_b - 1.0) <= 2.0 * grid.step();
    }
    CHECK(near);

    const auto general = sweep_spectrum(grid, p, resonant_detunings(p, p.omega_b), Complex{}, kEps);
    REQUIRE(general.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(general.rows[i].divergent == t.rows[i].divergent);
        CHECK(general.rows[i].tau_g.has_value() == t.rows[i].tau_g.has_value());
        if (!t.rows[i].divergent) CHECK(rel_err(general.rows[i].t_p, t.rows[i].t_p) < 1e-10);
    }
}

TEST_CASE("tables do not depend on the thread count") {
    const RunConfig c = preset_config("fig6");
    const PreparedRun run = prepare_run(c);
    const std::string one = format_csv(
        sweep_spectrum(c.grid, run.params, run.det, run.G, run.drive.epsilon_pr, c.mode, 1));
    for (unsigned threads : {2u, 3u, 8u}) {
        CHECK(format_csv(sweep_spectrum(c.grid, run.params, run.det, run.G, run.drive.epsilon_pr, c.mode,
                                        threads)) == one);
    }
}

TEST_CASE("drift eigenvalues") {
    SUBCASE("uncoupled modes sit on the diagonal") {
        SystemParams p = table_params(0.0, 0.0, 0.0, -1.0);
        Detunings det = resonant_detunings(p, 0.0);
        det.Delta_a2 = mhz_to_rad(3.0);
        det.Delta_m_tilde = mhz_to_rad(-4.0);
        const StabilityReport r = drift_eigenvalues(p, det, Complex{});
        const std::array<Complex, 4> expected{Complex{-p.kappa_b, -p.omega_b}, Complex{-p.kappa_1, -det.Delta_a1},
                                              Complex{-p.kappa_2, -det.Delta_a2},
                                              Complex{-p.kappa_m, -det.Delta_m_tilde}};
        for (const auto& e : expected) {
            bool found = false;
            for (const auto& got : r.eigenvalues) found = found || std::abs(got - e) < 1e-6;
            CHECK(found);
        }
        CHECK(r.max_real_part == doctest::Approx(-p.kappa_2));
        CHECK_FALSE(r.stable);
    }
    SUBCASE("net gain without coupling is unstable, loss is stable") {
        SystemParams p = table_params(0.0, 1.0, 1.0, -3.0);
        CHECK_FALSE(drift_eigenvalues(p, resonant_detunings(p, 0.0), Complex{}).stable);
        p.kappa_2 = mhz_to_rad(0.5);
        CHECK(drift_eigenvalues(p, resonant_detunings(p, 0.0), Complex{mhz_to_rad(1.0), 0.0}).stable);
    }
    SUBCASE("two-cavity exceptional point") {
        // Two cavities with equal detuning: mu = -i Delta + (kappa_g - kappa_1)/2 +- sqrt(((kappa_1 + kappa_g)/2)^2 - J^2).
        SystemParams p = table_params(0.0, 0.0, 0.0, -1.0);
        Detunings det = resonant_detunings(p, 0.0);
        det.Delta_m_tilde = mhz_to_rad(100.0);
        const double kg = -p.kappa_2;
        const double J_ep = 0.5 * (p.kappa_1 + kg);
        for (double J : {0.3 * J_ep, 0.9 * J_ep, 1.2 * J_ep, 3.0 * J_ep}) {
            p.J = J;
            const StabilityReport r = drift_eigenvalues(p, det, Complex{});
            const Complex root = std::sqrt(Complex{J_ep * J_ep - J * J, 0.0});
            const Complex centre{0.5 * (kg - p.kappa_1), -det.Delta_a1};
            for (const Complex& mu : {centre + root, centre - root}) {
                bool found = false;
                for (const auto& got : r.eigenvalues) found = found || std::abs(got - mu) < 1e-10 * p.kappa_1;
                CHECK(found);
            }
        }
        p.J = J_ep;
        CHECK(drift_eigenvalues(p, det, Complex{}).ep_gap < 1e-5 * p.kappa_1);
    }
}

}
