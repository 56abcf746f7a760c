#include "splayer/scheme.hpp"

#include "splayer/error.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace splayer {

TridiagonalSystem assemble(const ProblemSpec& spec, const Mesh& mesh) {
    if (auto problems = check_structure(mesh, spec.d); !problems.empty()) {
        throw ConfigError(fmt::format("mesh does not match the problem: {}", problems.front()));
    }
    const auto& x = mesh.points;
    const std::size_t n = x.size() - 1;
    const std::size_t mid = mesh.d_index;
    const double eps = spec.epsilon;
    const double mu = spec.mu;

    TridiagonalSystem sys{.lower = std::vector<double>(n + 1, 0.0),
                          .diag = std::vector<double>(n + 1, 0.0),
                          .upper = std::vector<double>(n + 1, 0.0),
                          .rhs = std::vector<double>(n + 1, 0.0),
                          .n = static_cast<int>(n),
                          .interface_row = static_cast<std::ptrdiff_t>(mid)};

    sys.diag[0] = 1.0;
    sys.rhs[0] = spec.y0;
    sys.diag[n] = 1.0;
    sys.rhs[n] = spec.y1;

    for (std::size_t i = 1; i < n; ++i) {
        const double h = x[i] - x[i - 1];
        const double h_next = x[i + 1] - x[i];
        if (i == mid) {
            sys.lower[i] = -1.0 / h;
            sys.diag[i] = 1.0 / h + 1.0 / h_next;
            sys.upper[i] = -1.0 / h_next;
            continue;
        }
        const double hbar = 0.5 * (h + h_next);
        const double diff_lo = eps / (h * hbar);
        const double diff_hi = eps / (h_next * hbar);
        const double b = spec.b(x[i]);
        if (i < mid) {
            const double conv = mu * spec.a_left(x[i]) / h;
            sys.lower[i] = -(diff_lo - conv);
            sys.diag[i] = diff_lo + diff_hi - conv + b;
            sys.upper[i] = -diff_hi;
            sys.rhs[i] = -spec.f_left(x[i]);
        } else {
            const double conv = mu * spec.a_right(x[i]) / h_next;
            sys.lower[i] = -diff_lo;
            sys.diag[i] = diff_lo + diff_hi + conv + b;
            sys.upper[i] = -(diff_hi + conv);
            sys.rhs[i] = -spec.f_right(x[i]);
        }
    }
    return sys;
}

std::vector<double> apply_operator(const TridiagonalSystem& sys, std::span<const double> y) {
    const std::size_t m = sys.size();
    if (y.size() != m) {
        throw ConfigError(fmt::format("apply_operator: vector has {} entries, system has {}", y.size(), m));
    }
    std::vector<double> out(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double v = sys.diag[i] * y[i];
        if (i > 0) v += sys.lower[i] * y[i - 1];
        if (i + 1 < m) v += sys.upper[i] * y[i + 1];
        out[i] = v;
    }
    return out;
}

MMatrixReport check_m_matrix(const TridiagonalSystem& sys) {
    MMatrixReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    const std::size_t m = sys.size();
    if (m == 0) {
        return rep;
    }
    // Rounding in diag = sum of terms can leave equality rows a few ulps short.
    constexpr double slack = 64.0 * std::numeric_limits<double>::epsilon();

    auto fail_row = [&](bool& flag) {
        flag = false;
        ++rep.failing_rows;
    };
    for (std::size_t i : {std::size_t{0}, m - 1}) {
        const double off = (i > 0 ? sys.lower[i] : 0.0) + (i + 1 < m ? sys.upper[i] : 0.0);
        if (sys.diag[i] != 1.0 || off != 0.0) fail_row(rep.is_sign_valid);
    }
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double l = sys.lower[i];
        const double d = sys.diag[i];
        const double u = sys.upper[i];
        if (!(d > 0.0) || l > 0.0 || u > 0.0 || !std::isfinite(l + d + u)) {
            fail_row(rep.is_sign_valid);
            continue;
        }
        const double margin = (d - std::abs(l) - std::abs(u)) / d;
        if (static_cast<std::ptrdiff_t>(i) != sys.interface_row && margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_row = i;
        }
        if (margin < -slack) fail_row(rep.is_diag_dominant);
    }
    return rep;
}

}  // namespace splayer
