#pragma once

#include "splayer/analysis.hpp"
#include "splayer/linalg.hpp"
#include "splayer/mesh.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace splayer {

/// `param,N,E,R`: one line per (parameter value, N); R is empty in the last column
/// and E is empty for a failed cell. Numbers use the shortest round-trip form.
std::string convergence_csv(const ConvergenceTable& table);

/// Layout: one error row and one "Order" row per parameter value.
std::string convergence_markdown(const ConvergenceTable& table);

/// `param,mesh,N,E,R` with the Shishkin rows before the Shishkin-Bakhvalov rows of each value.
std::string comparison_csv(const MeshComparison& cmp);
/// Orders only, paired S-mesh / S-B mesh rows per parameter value.
std::string comparison_markdown(const MeshComparison& cmp);

/// `i,x,Y`
std::string solution_csv(const Mesh& mesh, const Solution& sol);
/// `i,x_i,h_i,region`; h_0 is empty.
std::string mesh_csv(const Mesh& mesh);

struct SvgOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "Y";
    bool markers = false;
    int width = 800;
    int height = 500;
};

/// Single polyline series on linear axes.
std::string line_plot_svg(std::span<const double> xs, std::span<const double> ys, const SvgOptions& opts);

struct CsvTableRow {
    double param = 0.0;
    int n = 0;
    std::optional<double> error;
    std::optional<double> order;
};

/// Parses convergence_csv output. Throws ConfigError on schema violations.
std::vector<CsvTableRow> parse_convergence_csv(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace splayer
