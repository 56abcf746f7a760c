#pragma once

#include "splayer/linalg.hpp"
#include "splayer/mesh.hpp"
#include "splayer/problem.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splayer {

/// How the 2N comparison solution is obtained.
enum class DoubleMeshMode {
    Bisect,      ///< bisect every interval of the N mesh; nodes are shared exactly
    Regenerate,  ///< build the same family at 2N and interpolate linearly onto the N nodes
};

std::string_view to_string(DoubleMeshMode m);
DoubleMeshMode double_mesh_mode_from_string(std::string_view name);

struct DoubleMeshResult {
    double error = 0.0;          ///< max_i |Y^N(x_i) - Y^2N(x_i)|
    std::size_t worst_index = 0; ///< coarse node where the maximum is attained
    Solution coarse;
    Solution fine;
};

/// Solves the assembled system, throwing SolveError if the Thomas sweep breaks down.
Solution solve_problem(const ProblemSpec& spec, const Mesh& mesh);

/// Double-mesh difference against the bisected mesh (coarse node i <-> fine node 2i).
DoubleMeshResult double_mesh_error(const ProblemSpec& spec, const Mesh& coarse);

/// Double-mesh difference against an independently built fine mesh; the fine
/// solution is interpolated linearly onto the coarse nodes.
DoubleMeshResult double_mesh_error(const ProblemSpec& spec, const Mesh& coarse, const Mesh& fine);

enum class SweepParam { Mu, Epsilon };
std::string_view to_string(SweepParam p);

/// E^N (and R^N between consecutive columns) for each swept parameter value.
struct ConvergenceTable {
    SweepParam sweep_param = SweepParam::Mu;
    std::vector<double> param_values;
    double fixed_value = 0.0;  ///< the parameter that is not swept
    std::vector<int> n_values;
    std::vector<std::vector<std::optional<double>>> errors;  ///< [row][column]
    std::vector<std::vector<std::optional<double>>> orders;  ///< [row][column], one fewer column
    std::vector<std::vector<std::string>> failures;          ///< per cell, empty on success
    MeshFamily mesh_family = MeshFamily::ShishkinBakhvalov;
    DoubleMeshMode mode = DoubleMeshMode::Bisect;
    bool exact_reference = false;  ///< errors are against an exact solution

    std::size_t rows() const { return param_values.size(); }
};

/// R = log2(E_N) - log2(E_2N).
double convergence_order(double coarse_error, double fine_error);

struct SweepSettings {
    MeshFamily family = MeshFamily::ShishkinBakhvalov;
    DoubleMeshMode mode = DoubleMeshMode::Bisect;
    int samples = kDefaultSamples;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Runs every (value, N) cell. The non-swept parameter is taken from `base`.
/// N values must double from column to column. A failing cell is left empty
/// with its message in `failures`; the remaining cells still run.
ConvergenceTable convergence_table(const ProblemSpec& base, SweepParam param, std::span<const double> values,
                                   std::span<const int> n_values, const SweepSettings& settings = {});

struct MeshComparison {
    ConvergenceTable shishkin;
    ConvergenceTable shishkin_bakhvalov;
};

MeshComparison compare_meshes(const ProblemSpec& base, SweepParam param, std::span<const double> values,
                              std::span<const int> n_values, SweepSettings settings = {});

/// Exact solution and its first two derivatives, supplied by the caller.
struct ManufacturedSolution {
    Coefficient y;
    Coefficient dy;
    Coefficient d2y;
};

/// Replaces the sources and boundary values of `base` so that `exact` solves it:
/// f = eps*y'' + mu*a*y' - b*y on each side, y0 = y(0), y1 = y(1).
ProblemSpec manufactured_problem(const ProblemSpec& base, const ManufacturedSolution& exact);

/// Like convergence_table but the error is max_i |Y(x_i) - y(x_i)| against the exact solution.
ConvergenceTable manufactured_convergence(const ProblemSpec& base, const ManufacturedSolution& exact,
                                          SweepParam param, std::span<const double> values,
                                          std::span<const int> n_values, const SweepSettings& settings = {});

/// Reads SPLAYER_THREADS; 0 when unset or invalid.
unsigned threads_from_environment();

}  // namespace splayer
