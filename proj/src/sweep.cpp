#include "magnomech/sweep.hpp"

#include "magnomech/csv.hpp"
#include "magnomech/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace magnomech {

namespace {

SweepPoint evaluate(const SweepSpec& spec, double value) {
    SweepPoint pt;
    pt.value = value;
    try {
        RunConfig c = spec.base;
        set_parameter(c, spec.axis, value);
        SpectrumTable table = run_spectrum(c, 1);

        for (const Band& b : find_amplification_bands(table)) {
            ++pt.band_count;
            pt.total_width += b.width;
            pt.max_height = std::max(pt.max_height, b.height);
        }
        const auto centre = std::min_element(table.rows.begin(), table.rows.end(), [](const auto& a, const auto& b) {
            return std::abs(a.delta_over_omega_b - 1.0) < std::abs(b.delta_over_omega_b - 1.0);
        });
        pt.central_height = centre->divergent ? std::numeric_limits<double>::infinity() : centre->abs_t_p_sq;
        pt.table = std::move(table);
    } catch (const std::exception& e) {
        pt.error = e.what();
    }
    return pt;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    if (spec.values.empty()) throw ModelError("sweep needs at least one value");
    for (double v : spec.values)
        if (!std::isfinite(v)) throw ModelError("sweep values must be finite");

    SweepResult result;
    result.axis = canonical_parameter(spec.axis);
    result.points.resize(spec.values.size());

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(spec.values.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < spec.values.size(); i = next++)
            result.points[i] = evaluate(spec, spec.values[i]);
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    return result;
}

std::string format_sweep_summary(const SweepResult& result) {
    std::string out = result.axis + ",band_count,total_width,max_height,central_height,error\n";
    for (const auto& p : result.points) {
        out += format_double(p.value);
        if (p.error.empty()) {
            out += ',' + std::to_string(p.band_count) + ',' + format_double(p.total_width) + ',' +
                   format_double(p.max_height) + ',' + format_double(p.central_height) + ',';
        } else {
            std::string msg = p.error;
            std::replace(msg.begin(), msg.end(), '"', '\'');
            out += ",,,,,\"" + msg + '"';
        }
        out += '\n';
    }
    return out;
}

}  // namespace magnomech
