#pragma once

// Structural mesh checks shared by the unit tests and the acceptance runner.

#include "splayer/mesh.hpp"
#include "splayer/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace splayer::testing {

struct MeshDraw {
    double eps = 0.0;
    double mu = 0.0;
    int n = 0;
    double d = 0.5;
    RegimeData regime;
};

/// Random constant-coefficient regimes; mu is drawn around the case boundary so
/// both cases appear with similar frequency.
inline std::vector<MeshDraw> random_mesh_draws(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> log_eps(-12.0, -2.0);
    std::uniform_real_distribution<double> spread(-3.0, 3.0);
    std::uniform_real_distribution<double> alpha(0.5, 4.0);
    std::uniform_real_distribution<double> rho(0.25, 2.0);
    std::uniform_real_distribution<double> dd(0.2, 0.8);
    std::uniform_int_distribution<int> level(1, 8);
    std::vector<MeshDraw> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        MeshDraw w;
        w.regime.alpha = w.regime.alpha1 = w.regime.alpha2 = alpha(rng);
        w.regime.rho = rho(rng);
        w.regime.gamma = 1.0;
        w.eps = std::pow(10.0, log_eps(rng));
        w.mu = std::min(1.0, std::sqrt(w.regime.rho * w.eps / w.regime.alpha) * std::pow(10.0, spread(rng)));
        w.n = 8 << level(rng);
        w.d = dd(rng);
        classify(w.regime, w.eps, w.mu);
        out.push_back(w);
    }
    return out;
}

struct MeshPropertyReport {
    int junction_failures = 0;
    int monotone_failures = 0;
    int step_bound_failures = 0;
    int affinity_failures = 0;
    double worst_h_theta = 0.0;
    double worst_affinity = 0.0;  ///< deviation divided by its tolerance
    std::string first_problem;

    bool ok() const {
        return junction_failures == 0 && monotone_failures == 0 && step_bound_failures == 0 &&
               affinity_failures == 0;
    }
};

/// Junction pinning (bitwise), strict monotonicity, h*theta <= 8 in the four layer
/// regions, and for Shishkin-Bakhvalov meshes affinity of exp(-theta*dist/8) in i
/// inside each graded (unclamped) layer region.
///
/// The affinity tolerance is 1e-10 plus the rounding floor of the stored nodes:
/// a node near its anchor carries an absolute error of a few ulp of the anchor,
/// which exp(-theta*dist/8) amplifies by theta/8.
inline MeshPropertyReport check_mesh_properties(const Mesh& m, double d) {
    MeshPropertyReport rep;
    auto note = [&rep](const std::string& s) {
        if (rep.first_problem.empty()) rep.first_problem = s;
    };
    const auto& x = m.points;
    const auto n = static_cast<std::size_t>(m.n);
    const auto& s = m.transition.sigma;
    const auto& th = m.transition.theta;
    const std::size_t j1 = n / 8, j3 = 3 * n / 8, j4 = n / 2, j5 = 5 * n / 8, j7 = 7 * n / 8;

    const std::pair<std::size_t, double> pins[] = {
        {0, 0.0}, {j1, s[0]}, {j3, d - s[1]}, {j4, d}, {j5, d + s[2]}, {j7, 1.0 - s[3]}, {n, 1.0}};
    for (const auto& [i, want] : pins) {
        if (x[i] != want) {
            ++rep.junction_failures;
            note(fmt::format("x_{} = {} but junction value is {}", i, x[i], want));
        }
    }
    for (std::size_t i = 1; i <= n; ++i) {
        if (!(x[i] > x[i - 1])) {
            ++rep.monotone_failures;
            note(fmt::format("x_{} = {} does not exceed x_{} = {}", i, x[i], i - 1, x[i - 1]));
        }
    }

    struct Graded {
        std::size_t first, last;  // node range of the region
        double theta;
        double anchor;  // point the layer decays away from
        bool anchor_left;
    };
    const Graded graded[] = {
        {0, j1, th[0], 0.0, true},
        {j3, j4, th[1], d, false},
        {j4, j5, th[2], d, true},
        {j7, n, th[3], 1.0, false},
    };
    constexpr double ulp = std::numeric_limits<double>::epsilon();
    for (const auto& g : graded) {
        for (std::size_t i = g.first + 1; i <= g.last; ++i) {
            const double ht = m.step(i) * g.theta;
            rep.worst_h_theta = std::max(rep.worst_h_theta, ht);
            if (ht > 8.0) {
                ++rep.step_bound_failures;
                note(fmt::format("h_{} * theta = {} exceeds 8", i, ht));
            }
        }
        if (m.family != MeshFamily::ShishkinBakhvalov || m.transition.clamped[static_cast<std::size_t>(&g - graded)]) continue;
        auto psi = [&](std::size_t i) {
            const double dist = g.anchor_left ? x[i] - g.anchor : g.anchor - x[i];
            return std::exp(-g.theta * dist / 8.0);
        };
        const double p0 = psi(g.first);
        const double p1 = psi(g.last);
        const auto span = static_cast<double>(g.last - g.first);
        for (std::size_t i = g.first; i <= g.last; ++i) {
            const double t = static_cast<double>(i - g.first) / span;
            const double line = p0 + t * (p1 - p0);
            const double dev = std::abs(psi(i) - line);
            const double floor = 4.0 * (g.theta / 8.0) * psi(i) * ulp * (std::abs(x[i]) + std::abs(g.anchor));
            const double tol = 1e-10 * std::max(std::abs(p0), std::abs(p1)) + floor;
            rep.worst_affinity = std::max(rep.worst_affinity, dev / tol);
            if (dev > tol) {
                ++rep.affinity_failures;
                note(fmt::format("exp(-theta*dist/8) at i={} deviates from affine by {} (tolerance {})", i, dev,
                                 tol));
            }
        }
    }
    return rep;
}

}  // namespace splayer::testing
