#include "splayer/report.hpp"

#include "splayer/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace splayer {

namespace {

std::string num(double v) { return fmt::format("{}", v); }

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string decade(double v) {
    const double e = std::log10(v);
    if (std::abs(e - std::round(e)) < 1e-9) {
        return fmt::format("1e{:03}", static_cast<int>(std::round(e)));
    }
    return fmt::format("{:.3e}", v);
}

void table_header(std::string& out, std::string_view first, std::string_view second, std::span<const int> ns) {
    out += fmt::format("| {} |", first);
    if (!second.empty()) out += fmt::format(" {} |", second);
    for (int n : ns) out += fmt::format(" {} |", n);
    out += "\n|---|";
    if (!second.empty()) out += "---|";
    for (std::size_t k = 0; k < ns.size(); ++k) out += "---|";
    out += '\n';
}

void order_cells(std::string& out, const std::vector<std::optional<double>>& orders, std::size_t columns) {
    for (std::size_t c = 0; c < columns; ++c) {
        if (c < orders.size() && orders[c]) {
            out += fmt::format(" {:.5f} |", *orders[c]);
        } else {
            out += "  |";
        }
    }
}

}  // namespace

std::string convergence_csv(const ConvergenceTable& table) {
    std::string out = "param,N,E,R\n";
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.n_values.size(); ++c) {
            const std::optional<double> order = c < table.orders[r].size() ? table.orders[r][c] : std::nullopt;
            out += fmt::format("{},{},{},{}\n", num(table.param_values[r]), table.n_values[c],
                               opt(table.errors[r][c]), opt(order));
        }
    }
    return out;
}

std::string convergence_markdown(const ConvergenceTable& table) {
    const std::string_view name = table.sweep_param == SweepParam::Mu ? "mu" : "epsilon";
    const std::string_view fixed = table.sweep_param == SweepParam::Mu ? "epsilon" : "mu";
    std::string out = fmt::format("{} and orders on the {} mesh, {} = {}\n\n",
                                  table.exact_reference ? "Maximum nodal error" : "Double-mesh difference E^N",
                                  to_string(table.mesh_family), fixed, decade(table.fixed_value));
    table_header(out, name, "", table.n_values);
    const std::size_t cols = table.n_values.size();
    for (std::size_t r = 0; r < table.rows(); ++r) {
        out += fmt::format("| {} |", decade(table.param_values[r]));
        for (std::size_t c = 0; c < cols; ++c) {
            out += table.errors[r][c] ? fmt::format(" {:.4e} |", *table.errors[r][c]) : std::string(" n/a |");
        }
        out += "\n| Order |";
        order_cells(out, table.orders[r], cols);
        out += '\n';
    }
    return out;
}

std::string comparison_csv(const MeshComparison& cmp) {
    std::string out = "param,mesh,N,E,R\n";
    const ConvergenceTable& s = cmp.shishkin;
    const ConvergenceTable& sb = cmp.shishkin_bakhvalov;
    for (std::size_t r = 0; r < s.rows(); ++r) {
        for (const ConvergenceTable* t : {&s, &sb}) {
            for (std::size_t c = 0; c < t->n_values.size(); ++c) {
                const auto order = c < t->orders[r].size() ? t->orders[r][c] : std::nullopt;
                out += fmt::format("{},{},{},{},{}\n", num(t->param_values[r]), to_string(t->mesh_family),
                                   t->n_values[c], opt(t->errors[r][c]), opt(order));
            }
        }
    }
    return out;
}

std::string comparison_markdown(const MeshComparison& cmp) {
    const ConvergenceTable& s = cmp.shishkin;
    const ConvergenceTable& sb = cmp.shishkin_bakhvalov;
    const std::string_view name = s.sweep_param == SweepParam::Mu ? "mu" : "epsilon";
    const std::string_view fixed = s.sweep_param == SweepParam::Mu ? "epsilon" : "mu";
    std::string out = fmt::format("Orders of convergence, Shishkin vs Shishkin-Bakhvalov mesh, {} = {}\n\n", fixed,
                                  decade(s.fixed_value));
    // Orders are reported per starting N, so the last N column is dropped.
    const std::span<const int> ns(s.n_values.data(), s.n_values.empty() ? 0 : s.n_values.size() - 1);
    table_header(out, name, "Mesh", ns);
    for (std::size_t r = 0; r < s.rows(); ++r) {
        out += fmt::format("| {} | S-mesh |", decade(s.param_values[r]));
        order_cells(out, s.orders[r], ns.size());
        out += "\n|  | S-B mesh |";
        order_cells(out, sb.orders[r], ns.size());
        out += '\n';
    }
    return out;
}

std::string solution_csv(const Mesh& mesh, const Solution& sol) {
    std::string out = "i,x,Y\n";
    for (std::size_t i = 0; i < sol.y.size(); ++i) {
        out += fmt::format("{},{},{}\n", i, num(mesh.points[i]), num(sol.y[i]));
    }
    return out;
}

std::string mesh_csv(const Mesh& mesh) {
    std::string out = "i,x_i,h_i,region\n";
    for (std::size_t i = 0; i < mesh.points.size(); ++i) {
        out += fmt::format("{},{},{},{}\n", i, num(mesh.points[i]), i == 0 ? std::string() : num(mesh.step(i)),
                           region_name(mesh, region_of(mesh, i)));
    }
    return out;
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string line_plot_svg(std::span<const double> xs, std::span<const double> ys, const SvgOptions& opts) {
    const double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = opts.width - left - right;
    const double ph = opts.height - top - bottom;

    double x0 = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
    double x1 = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
    double y0 = ys.empty() ? 0.0 : *std::min_element(ys.begin(), ys.end());
    double y1 = ys.empty() ? 1.0 : *std::max_element(ys.begin(), ys.end());
    if (x1 <= x0) x1 = x0 + 1.0;
    if (y1 <= y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        opts.width, opts.height, opts.width, opts.height);
    if (!opts.title.empty()) {
        out += fmt::format("<text x=\"{:.1f}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                           "font-size=\"16\">{}</text>\n",
                           left + pw / 2, xml_escape(opts.title));
    }
    out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
                       "stroke=\"black\"/>\n",
                       left, top, pw, ph);
    constexpr int ticks = 5;
    for (int k = 0; k <= ticks; ++k) {
        const double xv = x0 + (x1 - x0) * k / ticks;
        const double yv = y0 + (y1 - y0) * k / ticks;
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
                           sx(xv), top + ph, top + ph + 5);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                           "font-size=\"11\">{:.3g}</text>\n",
                           sx(xv), top + ph + 18, xv);
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n",
                           left - 5, sy(yv), left);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
                           "font-size=\"11\">{:.3g}</text>\n",
                           left - 8, sy(yv) + 4, yv);
    }
    out += fmt::format("<text x=\"{:.1f}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"13\">{}</text>\n",
                       left + pw / 2, opts.height - 10, xml_escape(opts.x_label));
    out += fmt::format("<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"13\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                       top + ph / 2, top + ph / 2, xml_escape(opts.y_label));

    out += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    const std::size_t count = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < count; ++i) {
        out += fmt::format("{}{:.2f},{:.2f}", i == 0 ? "" : " ", sx(xs[i]), sy(ys[i]));
    }
    out += "\"/>\n";
    if (opts.markers) {
        for (std::size_t i = 0; i < count; ++i) {
            out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"#c0392b\"/>\n", sx(xs[i]),
                               sy(ys[i]));
        }
    }
    out += "</svg>\n";
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ConfigError(fmt::format("line {}: malformed field '{}'", line_no, field));
    }
    return value;
}

}  // namespace

std::vector<CsvTableRow> parse_convergence_csv(std::string_view text) {
    std::vector<CsvTableRow> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != "param,N,E,R") {
                throw ConfigError(fmt::format("unexpected header '{}'", line));
            }
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 4) {
            throw ConfigError(fmt::format("line {}: expected 4 fields, found {}", line_no, fields.size()));
        }
        CsvTableRow row;
        row.param = parse_field<double>(fields[0], line_no);
        row.n = parse_field<int>(fields[1], line_no);
        if (!fields[2].empty()) row.error = parse_field<double>(fields[2], line_no);
        if (!fields[3].empty()) row.order = parse_field<double>(fields[3], line_no);
        rows.push_back(row);
    }
    if (line_no == 0) {
        throw ConfigError("empty table");
    }
    return rows;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError(fmt::format("cannot write '{}'", tmp.string()));
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw ConfigError(fmt::format("write to '{}' failed", tmp.string()));
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ConfigError(fmt::format("cannot move '{}' into place: {}", path.string(), ec.message()));
    }
}

}  // namespace splayer
