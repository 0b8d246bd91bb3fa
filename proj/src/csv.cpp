#include "magnomech/csv.hpp"

#include "magnomech/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

namespace magnomech {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::vector<std::string> canonical_columns(std::span<const std::string> requested) {
    std::vector<std::string> out;
    if (requested.empty()) {
        for (auto c : kCsvColumns) out.emplace_back(c);
        return out;
    }
    for (const auto& r : requested) {
        if (std::find(kCsvColumns.begin(), kCsvColumns.end(), r) == kCsvColumns.end())
            throw ModelError("unknown output column '" + r + "'");
    }
    for (auto c : kCsvColumns) {
        if (std::find(requested.begin(), requested.end(), c) != requested.end()) out.emplace_back(c);
    }
    return out;
}

std::string format_csv(const SpectrumTable& table, std::span<const std::string> columns) {
    const std::vector<std::string> cols = canonical_columns(columns);
    std::string out;
    out.reserve(table.rows.size() * 160 + 96);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out += ',';
        out += cols[c];
    }
    out += '\n';

    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out += ',';
            const std::string& col = cols[c];
            if (col == "delta_over_omega_b") {
                out += format_double(row.delta_over_omega_b);
            } else if (col == "divergent") {
                out += row.divergent ? '1' : '0';
            } else if (row.divergent) {
                continue;
            } else if (col == "re_tp") {
                out += format_double(row.t_p.real());
            } else if (col == "im_tp") {
                out += format_double(row.t_p.imag());
            } else if (col == "abs_tp_sq") {
                out += format_double(row.abs_t_p_sq);
            } else if (col == "re_quad") {
                out += format_double(row.re_quad);
            } else if (col == "im_quad") {
                out += format_double(row.im_quad);
            } else if (col == "phi_t") {
                if (row.phi_t) out += format_double(*row.phi_t);
            } else if (col == "tau_g") {
                if (row.tau_g) out += format_double(*row.tau_g);
            }
        }
        out += '\n';
    }
    return out;
}

void write_csv(const SpectrumTable& table, std::ostream& out, std::span<const std::string> columns) {
    const std::string text = format_csv(table, columns);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("failed to write CSV output");
}

void write_file(const std::string& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) throw IoError("failed to write '" + path + "'");
}

}  // namespace magnomech
