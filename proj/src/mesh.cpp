#include "splayer/mesh.hpp"

#include "splayer/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace splayer {

std::string_view to_string(MeshFamily f) {
    switch (f) {
    case MeshFamily::ShishkinBakhvalov: return "shishkin-bakhvalov";
    case MeshFamily::Shishkin: return "shishkin";
    case MeshFamily::Uniform: return "uniform";
    }
    return "?";
}

MeshFamily mesh_family_from_string(std::string_view name) {
    if (name == "sb" || name == "shishkin-bakhvalov") return MeshFamily::ShishkinBakhvalov;
    if (name == "s" || name == "shishkin") return MeshFamily::Shishkin;
    if (name == "uniform") return MeshFamily::Uniform;
    throw ConfigError(fmt::format("unknown mesh family '{}' (expected sb, shishkin or uniform)", name));
}

namespace {

void require_layer_n(int n) {
    if (n < 16 || n % 8 != 0) {
        throw ConfigError(fmt::format("N must be a multiple of 8 and at least 16, got {}", n));
    }
}

void require_d(double d) {
    if (!(d > 0.0 && d < 1.0)) {
        throw ConfigError(fmt::format("discontinuity must lie in (0,1), got {}", d));
    }
}

/// Junction indices N/8, 3N/8, N/2, 5N/8, 7N/8.
struct Junctions {
    std::size_t j1, j3, j4, j5, j7, n;
    explicit Junctions(int n_)
        : j1(n_ / 8), j3(3 * n_ / 8), j4(n_ / 2), j5(5 * n_ / 8), j7(7 * n_ / 8), n(n_) {}
};

void pin_junctions(std::vector<double>& x, const Junctions& j, const TransitionPoints& t, double d) {
    const auto& s = t.sigma;
    x[0] = 0.0;
    x[j.j1] = s[0];
    x[j.j3] = d - s[1];
    x[j.j4] = d;
    x[j.j5] = d + s[2];
    x[j.j7] = 1.0 - s[3];
    x[j.n] = 1.0;
}

/// Uniform fill of x[first..last] between the already-pinned end values.
void fill_uniform(std::vector<double>& x, std::size_t first, std::size_t last) {
    const double a = x[first];
    const double b = x[last];
    const auto count = static_cast<double>(last - first);
    for (std::size_t i = first + 1; i < last; ++i) {
        x[i] = a + (b - a) * static_cast<double>(i - first) / count;
    }
}

std::vector<std::string> clamp_warnings(const TransitionPoints& t) {
    std::vector<std::string> out;
    static constexpr std::array<const char*, 4> names{"sigma1", "sigma2", "sigma3", "sigma4"};
    for (std::size_t k = 0; k < 4; ++k) {
        if (t.clamped[k]) {
            out.push_back(fmt::format("{} clamped to a quarter of its subinterval ({}); the layer is not "
                                      "thin relative to 1/N and a uniform mesh would resolve it",
                                      names[k], t.sigma[k]));
        }
    }
    return out;
}

Mesh finish(std::vector<double> x, int n, double d, MeshFamily family, const TransitionPoints& t) {
    Mesh m{.points = std::move(x), .n = n, .d_index = static_cast<std::size_t>(n / 2),
           .family = family, .transition = t, .warnings = clamp_warnings(t)};
    if (auto problems = check_structure(m, d); !problems.empty()) {
        throw Error(fmt::format("{} mesh with N={} is malformed: {}", to_string(family), n, problems.front()));
    }
    return m;
}

}  // namespace

TransitionPoints transition_points(const RegimeData& regime, int n, double d) {
    require_layer_n(n);
    require_d(d);
    const double log_n = std::log(static_cast<double>(n));
    const double boundary = 4.0 / regime.theta2 * log_n;
    const double interior = 4.0 / regime.theta1 * log_n;
    const std::array<double, 4> raw{boundary, interior, interior, boundary};
    const std::array<double, 4> cap{d / 4.0, d / 4.0, (1.0 - d) / 4.0, (1.0 - d) / 4.0};
    const std::array<double, 4> theta{regime.theta2, regime.theta1, regime.theta1, regime.theta2};

    TransitionPoints t;
    for (std::size_t k = 0; k < 4; ++k) {
        if (raw[k] > cap[k]) {
            t.sigma[k] = cap[k];
            t.clamped[k] = true;
            t.theta[k] = 4.0 * log_n / cap[k];
        } else {
            t.sigma[k] = raw[k];
            t.theta[k] = theta[k];
        }
    }
    return t;
}

Mesh shishkin_bakhvalov_mesh(const RegimeData& regime, int n, double d) {
    const TransitionPoints t = transition_points(regime, n, d);
    const Junctions j(n);
    const double nd = static_cast<double>(n);
    const double r = 1.0 / std::sqrt(nd);
    const auto& th = t.theta;

    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    const auto& c = t.clamped;
    auto xi = [nd](std::size_t i) { return 8.0 * static_cast<double>(i) / nd; };
    for (std::size_t i = 1; i < j.j1 && !c[0]; ++i) {
        x[i] = -(8.0 / th[0]) * std::log1p(xi(i) * (r - 1.0));
    }
    for (std::size_t i = j.j3 + 1; i < j.j4 && !c[1]; ++i) {
        x[i] = d + (8.0 / th[1]) * std::log(xi(i) * (1.0 - r) + 4.0 * r - 3.0);
    }
    for (std::size_t i = j.j4 + 1; i < j.j5 && !c[2]; ++i) {
        x[i] = d - (8.0 / th[2]) * std::log(xi(i) * (r - 1.0) + 5.0 - 4.0 * r);
    }
    for (std::size_t i = j.j7 + 1; i < j.n && !c[3]; ++i) {
        x[i] = 1.0 + (8.0 / th[3]) * std::log(xi(i) * (1.0 - r) + 8.0 * r - 7.0);
    }
    pin_junctions(x, j, t, d);
    fill_uniform(x, j.j1, j.j3);
    fill_uniform(x, j.j5, j.j7);
    // A clamped layer is not thin on this mesh; grading it would only coarsen the far end.
    if (c[0]) fill_uniform(x, 0, j.j1);
    if (c[1]) fill_uniform(x, j.j3, j.j4);
    if (c[2]) fill_uniform(x, j.j4, j.j5);
    if (c[3]) fill_uniform(x, j.j7, j.n);
    return finish(std::move(x), n, d, MeshFamily::ShishkinBakhvalov, t);
}

Mesh shishkin_mesh(const RegimeData& regime, int n, double d) {
    const TransitionPoints t = transition_points(regime, n, d);
    const Junctions j(n);
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    pin_junctions(x, j, t, d);
    fill_uniform(x, 0, j.j1);
    fill_uniform(x, j.j1, j.j3);
    fill_uniform(x, j.j3, j.j4);
    fill_uniform(x, j.j4, j.j5);
    fill_uniform(x, j.j5, j.j7);
    fill_uniform(x, j.j7, j.n);
    return finish(std::move(x), n, d, MeshFamily::Shishkin, t);
}

Mesh uniform_mesh(int n, double d) {
    if (n < 2 || n % 2 != 0) {
        throw ConfigError(fmt::format("uniform mesh needs an even N >= 2, got {}", n));
    }
    require_d(d);
    const auto half = static_cast<std::size_t>(n / 2);
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    x[0] = 0.0;
    x[half] = d;
    x[static_cast<std::size_t>(n)] = 1.0;
    fill_uniform(x, 0, half);
    fill_uniform(x, half, static_cast<std::size_t>(n));
    return finish(std::move(x), n, d, MeshFamily::Uniform, TransitionPoints{});
}

Mesh build_mesh(MeshFamily family, const RegimeData& regime, int n, double d) {
    switch (family) {
    case MeshFamily::ShishkinBakhvalov: return shishkin_bakhvalov_mesh(regime, n, d);
    case MeshFamily::Shishkin: return shishkin_mesh(regime, n, d);
    case MeshFamily::Uniform: return uniform_mesh(n, d);
    }
    throw ConfigError("unknown mesh family");
}

Mesh refine_double(const Mesh& mesh) {
    const std::size_t n = mesh.points.size() - 1;
    std::vector<double> x(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        x[2 * i] = mesh.points[i];
        x[2 * i + 1] = 0.5 * (mesh.points[i] + mesh.points[i + 1]);
    }
    x[2 * n] = mesh.points[n];
    return Mesh{.points = std::move(x), .n = 2 * mesh.n, .d_index = 2 * mesh.d_index,
                .family = mesh.family, .transition = mesh.transition, .warnings = mesh.warnings};
}

int region_of(const Mesh& mesh, std::size_t i) {
    const auto n = static_cast<std::size_t>(mesh.n);
    if (mesh.family == MeshFamily::Uniform) {
        return i <= n / 2 ? 0 : 1;
    }
    if (i <= n / 8) return 0;
    if (i <= 3 * n / 8) return 1;
    if (i <= n / 2) return 2;
    if (i <= 5 * n / 8) return 3;
    if (i <= 7 * n / 8) return 4;
    return 5;
}

std::string_view region_name(const Mesh& mesh, int region) {
    if (mesh.family == MeshFamily::Uniform) {
        return region == 0 ? "left" : "right";
    }
    static constexpr std::array<std::string_view, 6> names{
        "left_layer", "left_outer", "interior_left", "interior_right", "right_outer", "right_layer"};
    return names.at(static_cast<std::size_t>(region));
}

std::vector<std::string> check_structure(const Mesh& mesh, double d) {
    std::vector<std::string> out;
    const auto& x = mesh.points;
    if (mesh.n < 2 || x.size() != static_cast<std::size_t>(mesh.n) + 1) {
        out.push_back(fmt::format("expected {} nodes, found {}", mesh.n + 1, x.size()));
        return out;
    }
    if (mesh.d_index != static_cast<std::size_t>(mesh.n / 2)) {
        out.push_back(fmt::format("discontinuity index {} is not N/2", mesh.d_index));
    }
    if (x.front() != 0.0) out.push_back(fmt::format("x_0 = {} (expected 0)", x.front()));
    if (x.back() != 1.0) out.push_back(fmt::format("x_N = {} (expected 1)", x.back()));
    if (x[mesh.d_index] != d) out.push_back(fmt::format("x_N/2 = {} (expected d = {})", x[mesh.d_index], d));
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) {
            out.push_back(fmt::format("not strictly increasing at i={} ({} <= {})", i, x[i], x[i - 1]));
            break;
        }
    }
    if (mesh.family != MeshFamily::Uniform && mesh.n % 8 == 0) {
        const auto& s = mesh.transition.sigma;
        const Junctions j(mesh.n);
        const std::array<std::pair<std::size_t, double>, 4> expected{
            {{j.j1, s[0]}, {j.j3, d - s[1]}, {j.j5, d + s[2]}, {j.j7, 1.0 - s[3]}}};
        for (const auto& [i, want] : expected) {
            if (std::abs(x[i] - want) > 1e-12 * std::abs(want)) {
                out.push_back(fmt::format("junction x_{} = {} (expected {})", i, x[i], want));
            }
        }
    }
    return out;
}

}  // namespace splayer
