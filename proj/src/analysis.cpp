#include "splayer/analysis.hpp"

#include "splayer/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include <fmt/format.h>

namespace splayer {

std::string_view to_string(DoubleMeshMode m) {
    return m == DoubleMeshMode::Bisect ? "bisect" : "regenerate";
}

DoubleMeshMode double_mesh_mode_from_string(std::string_view name) {
    if (name == "bisect") return DoubleMeshMode::Bisect;
    if (name == "regenerate") return DoubleMeshMode::Regenerate;
    throw ConfigError(fmt::format("unknown double-mesh mode '{}' (expected bisect or regenerate)", name));
}

std::string_view to_string(SweepParam p) {
    return p == SweepParam::Mu ? "mu" : "epsilon";
}

Solution solve_problem(const ProblemSpec& spec, const Mesh& mesh) {
    return solve_thomas(assemble(spec, mesh));
}

DoubleMeshResult double_mesh_error(const ProblemSpec& spec, const Mesh& coarse) {
    DoubleMeshResult res;
    res.coarse = solve_problem(spec, coarse);
    res.fine = solve_problem(spec, refine_double(coarse));
    for (std::size_t i = 0; i < res.coarse.y.size(); ++i) {
        const double diff = std::abs(res.coarse.y[i] - res.fine.y[2 * i]);
        if (diff > res.error) {
            res.error = diff;
            res.worst_index = i;
        }
    }
    return res;
}

namespace {

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ys.back();
    const auto k = static_cast<std::size_t>(it - xs.begin());
    if (*it == x || k == 0) return ys[k];
    const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return ys[k - 1] + t * (ys[k] - ys[k - 1]);
}

}  // namespace

DoubleMeshResult double_mesh_error(const ProblemSpec& spec, const Mesh& coarse, const Mesh& fine) {
    DoubleMeshResult res;
    res.coarse = solve_problem(spec, coarse);
    res.fine = solve_problem(spec, fine);
    for (std::size_t i = 0; i < res.coarse.y.size(); ++i) {
        const double yf = interpolate(fine.points, res.fine.y, coarse.points[i]);
        const double diff = std::abs(res.coarse.y[i] - yf);
        if (diff > res.error) {
            res.error = diff;
            res.worst_index = i;
        }
    }
    return res;
}

double convergence_order(double coarse_error, double fine_error) {
    return std::log2(coarse_error) - std::log2(fine_error);
}

unsigned threads_from_environment() {
    const char* raw = std::getenv("SPLAYER_THREADS");
    if (raw == nullptr) return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v <= 0) return 0;
    return static_cast<unsigned>(v);
}

namespace {

void require_doubling(std::span<const int> n_values) {
    if (n_values.empty()) {
        throw ConfigError("at least one N value is required");
    }
    for (std::size_t k = 1; k < n_values.size(); ++k) {
        if (n_values[k] != 2 * n_values[k - 1]) {
            throw ConfigError(fmt::format("N values must double from column to column ({} then {})",
                                          n_values[k - 1], n_values[k]));
        }
    }
}

/// Runs fn(cell) for cell in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t c = 0; c < count; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < count; c = next++) fn(c);
        });
    }
}

ProblemSpec with_sweep_value(const ProblemSpec& base, SweepParam param, double value) {
    return param == SweepParam::Mu ? base.with_parameters(base.epsilon, value)
                                   : base.with_parameters(value, base.mu);
}

using CellError = std::function<double(const ProblemSpec&, const RegimeData&, int)>;

ConvergenceTable run_table(const ProblemSpec& base, SweepParam param, std::span<const double> values,
                           std::span<const int> n_values, const SweepSettings& settings,
                           const std::function<ProblemSpec(double)>& row_problem, const CellError& cell_error) {
    require_doubling(n_values);
    ConvergenceTable t;
    t.sweep_param = param;
    t.param_values.assign(values.begin(), values.end());
    t.fixed_value = param == SweepParam::Mu ? base.epsilon : base.mu;
    t.n_values.assign(n_values.begin(), n_values.end());
    t.mesh_family = settings.family;
    t.mode = settings.mode;
    const std::size_t rows = values.size();
    const std::size_t cols = n_values.size();
    t.errors.assign(rows, std::vector<std::optional<double>>(cols));
    t.failures.assign(rows, std::vector<std::string>(cols));
    t.orders.assign(rows, std::vector<std::optional<double>>(cols > 0 ? cols - 1 : 0));

    // Regime constants depend only on the row.
    std::vector<std::optional<ProblemSpec>> specs(rows);
    std::vector<RegimeData> regimes(rows);
    std::vector<std::string> row_failure(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        try {
            specs[r] = row_problem(values[r]);
            regimes[r] = derive_regime(*specs[r], settings.samples);
        } catch (const Error& err) {
            specs[r].reset();
            row_failure[r] = err.what();
        }
    }

    parallel_for(rows * cols, settings.threads, [&](std::size_t cell) {
        const std::size_t r = cell / cols;
        const std::size_t c = cell % cols;
        if (!specs[r]) {
            t.failures[r][c] = row_failure[r];
            return;
        }
        try {
            t.errors[r][c] = cell_error(*specs[r], regimes[r], n_values[c]);
        } catch (const Error& err) {
            t.failures[r][c] = err.what();
        }
    });

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            const auto& e0 = t.errors[r][c];
            const auto& e1 = t.errors[r][c + 1];
            if (e0 && e1 && *e0 > 0.0 && *e1 > 0.0) {
                t.orders[r][c] = convergence_order(*e0, *e1);
            }
        }
    }
    return t;
}

}  // namespace

ConvergenceTable convergence_table(const ProblemSpec& base, SweepParam param, std::span<const double> values,
                                   std::span<const int> n_values, const SweepSettings& settings) {
    auto row_problem = [&](double v) { return with_sweep_value(base, param, v); };
    auto cell = [&settings](const ProblemSpec& spec, const RegimeData& regime, int n) {
        const Mesh coarse = build_mesh(settings.family, regime, n, spec.d);
        if (settings.mode == DoubleMeshMode::Bisect) {
            return double_mesh_error(spec, coarse).error;
        }
        return double_mesh_error(spec, coarse, build_mesh(settings.family, regime, 2 * n, spec.d)).error;
    };
    return run_table(base, param, values, n_values, settings, row_problem, cell);
}

MeshComparison compare_meshes(const ProblemSpec& base, SweepParam param, std::span<const double> values,
                              std::span<const int> n_values, SweepSettings settings) {
    MeshComparison out;
    settings.family = MeshFamily::Shishkin;
    out.shishkin = convergence_table(base, param, values, n_values, settings);
    settings.family = MeshFamily::ShishkinBakhvalov;
    out.shishkin_bakhvalov = convergence_table(base, param, values, n_values, settings);
    return out;
}

ProblemSpec manufactured_problem(const ProblemSpec& base, const ManufacturedSolution& exact) {
    ProblemSpec spec = base;
    const double eps = base.epsilon;
    const double mu = base.mu;
    auto source = [eps, mu, exact, b = base.b](const Coefficient& a) {
        return [eps, mu, exact, b, a](double x) {
            return eps * exact.d2y(x) + mu * a(x) * exact.dy(x) - b(x) * exact.y(x);
        };
    };
    spec.f_left = Coefficient(source(base.a_left), "manufactured f_left");
    spec.f_right = Coefficient(source(base.a_right), "manufactured f_right");
    spec.y0 = exact.y(0.0);
    spec.y1 = exact.y(1.0);
    return spec;
}

ConvergenceTable manufactured_convergence(const ProblemSpec& base, const ManufacturedSolution& exact,
                                          SweepParam param, std::span<const double> values,
                                          std::span<const int> n_values, const SweepSettings& settings) {
    auto row_problem = [&](double v) { return manufactured_problem(with_sweep_value(base, param, v), exact); };
    auto cell = [&settings, &exact](const ProblemSpec& spec, const RegimeData& regime, int n) {
        const Mesh mesh = build_mesh(settings.family, regime, n, spec.d);
        const Solution sol = solve_problem(spec, mesh);
        double err = 0.0;
        for (std::size_t i = 0; i < sol.y.size(); ++i) {
            err = std::max(err, std::abs(sol.y[i] - exact.y(mesh.points[i])));
        }
        return err;
    };
    ConvergenceTable t = run_table(base, param, values, n_values, settings, row_problem, cell);
    t.exact_reference = true;
    return t;
}

}  // namespace splayer
