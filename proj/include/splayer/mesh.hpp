#pragma once

#include "splayer/problem.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splayer {

enum class MeshFamily { ShishkinBakhvalov, Shishkin, Uniform };

std::string_view to_string(MeshFamily f);
/// Accepts "sb", "shishkin-bakhvalov", "shishkin", "s", "uniform". Throws ConfigError.
MeshFamily mesh_family_from_string(std::string_view name);

/// Widths of the four layer regions
/// [0, s1], [d - s2, d], [d, d + s3], [1 - s4, 1].
struct TransitionPoints {
    std::array<double, 4> sigma{};
    std::array<bool, 4> clamped{};
    /// Layer rate of each region: theta, or 4 ln N / sigma when clamped.
    std::array<double, 4> theta{};

    bool any_clamped() const { return clamped[0] || clamped[1] || clamped[2] || clamped[3]; }
};

/// s1 = s4 = (4/theta2) ln N, s2 = s3 = (4/theta1) ln N, each capped at a quarter
/// of its side of the domain.
TransitionPoints transition_points(const RegimeData& regime, int n, double d);

/// Ordered mesh nodes x_0 = 0 < ... < x_N = 1 with x_{N/2} = d.
struct Mesh {
    std::vector<double> points;
    int n = 0;
    std::size_t d_index = 0;
    MeshFamily family = MeshFamily::Uniform;
    TransitionPoints transition;
    std::vector<std::string> warnings;

    double d() const { return points[d_index]; }
    /// h_i = x_i - x_{i-1}, for 1 <= i <= N.
    double step(std::size_t i) const { return points[i] - points[i - 1]; }
};

/// Layer-adapted mesh with graded nodes inside the four layer regions
/// (inverting exp(-theta * distance)) and uniform nodes in the two outer regions.
/// A layer region whose width was clamped is filled uniformly instead.
/// N must be a multiple of 8, at least 16.
Mesh shishkin_bakhvalov_mesh(const RegimeData& regime, int n, double d);

/// Same transition points, piecewise uniform: N/8 intervals per layer region,
/// N/4 per outer region.
Mesh shishkin_mesh(const RegimeData& regime, int n, double d);

/// N/2 uniform intervals on [0,d] and N/2 on [d,1]. N must be even.
Mesh uniform_mesh(int n, double d);

Mesh build_mesh(MeshFamily family, const RegimeData& regime, int n, double d);

/// Inserts the midpoint of every interval: node i of the input is node 2i of the result.
Mesh refine_double(const Mesh& mesh);

/// Index of the region the interval (x_{i-1}, x_i] belongs to (node 0 belongs to region 0).
/// Regions are numbered left to right; a Uniform mesh has regions 0 and 1 only.
int region_of(const Mesh& mesh, std::size_t i);
std::string_view region_name(const Mesh& mesh, int region);

/// Structural problems: endpoint or d pinning, monotonicity, junction placement.
/// Empty when the mesh is well formed.
std::vector<std::string> check_structure(const Mesh& mesh, double d);

}  // namespace splayer
