#include "splayer/linalg.hpp"

#include "splayer/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace splayer {

namespace {

bool usable_pivot(double p) {
    return std::isfinite(p) && std::abs(p) >= std::numeric_limits<double>::min();
}

void check_shape(const TridiagonalSystem& sys) {
    const std::size_t m = sys.diag.size();
    if (m == 0 || sys.lower.size() != m || sys.upper.size() != m || sys.rhs.size() != m) {
        throw ConfigError("tridiagonal system has inconsistent diagonal lengths");
    }
}

}  // namespace

double relative_residual(const TridiagonalSystem& sys, std::span<const double> y) {
    const std::size_t m = sys.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double v = sys.diag[i] * y[i] - sys.rhs[i];
        double scale = std::abs(sys.diag[i] * y[i]) + std::abs(sys.rhs[i]);
        if (i > 0) {
            v += sys.lower[i] * y[i - 1];
            scale += std::abs(sys.lower[i] * y[i - 1]);
        }
        if (i + 1 < m) {
            v += sys.upper[i] * y[i + 1];
            scale += std::abs(sys.upper[i] * y[i + 1]);
        }
        if (scale > 0.0) {
            worst = std::max(worst, std::abs(v) / scale);
        }
    }
    return worst;
}

Solution solve_thomas(const TridiagonalSystem& sys) {
    check_shape(sys);
    const std::size_t m = sys.size();
    std::vector<double> c_prime(m, 0.0);
    std::vector<double> y(m);

    double pivot = sys.diag[0];
    if (!usable_pivot(pivot)) {
        throw SolveError(0, "zero pivot in row 0; run check_m_matrix on the assembled system");
    }
    c_prime[0] = m > 1 ? sys.upper[0] / pivot : 0.0;
    y[0] = sys.rhs[0] / pivot;

    // Forward sweep
    for (std::size_t i = 1; i < m; ++i) {
        pivot = sys.diag[i] - sys.lower[i] * c_prime[i - 1];
        if (!usable_pivot(pivot)) {
            throw SolveError(i, fmt::format("zero pivot in row {} ({}); run check_m_matrix on the assembled "
                                            "system", i, pivot));
        }
        c_prime[i] = i + 1 < m ? sys.upper[i] / pivot : 0.0;
        y[i] = (sys.rhs[i] - sys.lower[i] * y[i - 1]) / pivot;
    }
    // Back substitution
    for (std::size_t i = m - 1; i > 0; --i) {
        y[i - 1] -= c_prime[i - 1] * y[i];
    }

    Solution sol{.y = std::move(y)};
    sol.residual_inf = relative_residual(sys, sol.y);
    return sol;
}

Solution solve_dense_oracle(const TridiagonalSystem& sys) {
    check_shape(sys);
    const std::size_t m = sys.size();
    if (m > 1025) {
        throw ConfigError(fmt::format("dense oracle is limited to 1025 unknowns, got {}", m));
    }
    // Row-major augmented matrix [A | rhs], each row scaled by its largest
    // coefficient. Layer rows and outer rows differ by many orders of magnitude;
    // unscaled partial pivoting would let the large rows swamp the small ones.
    const std::size_t w = m + 1;
    std::vector<double> a(m * w, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = i > 0 ? sys.lower[i] : 0.0;
        const double up = i + 1 < m ? sys.upper[i] : 0.0;
        double scale = std::max({std::abs(lo), std::abs(sys.diag[i]), std::abs(up)});
        if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
        if (i > 0) a[i * w + i - 1] = lo / scale;
        a[i * w + i] = sys.diag[i] / scale;
        if (i + 1 < m) a[i * w + i + 1] = up / scale;
        a[i * w + m] = sys.rhs[i] / scale;
    }
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < m; ++i) {
            if (std::abs(a[i * w + k]) > std::abs(a[p * w + k])) p = i;
        }
        if (!usable_pivot(a[p * w + k])) {
            throw SolveError(k, fmt::format("matrix is singular at column {}", k));
        }
        if (p != k) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(k * w),
                             a.begin() + static_cast<std::ptrdiff_t>((k + 1) * w),
                             a.begin() + static_cast<std::ptrdiff_t>(p * w));
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            const double factor = a[i * w + k] / a[k * w + k];
            if (factor == 0.0) continue;
            for (std::size_t j = k; j < w; ++j) {
                a[i * w + j] -= factor * a[k * w + j];
            }
        }
    }
    std::vector<double> y(m);
    for (std::size_t i = m; i-- > 0;) {
        double s = a[i * w + m];
        for (std::size_t j = i + 1; j < m; ++j) {
            s -= a[i * w + j] * y[j];
        }
        y[i] = s / a[i * w + i];
    }
    Solution sol{.y = std::move(y)};
    sol.residual_inf = relative_residual(sys, sol.y);
    return sol;
}

}  // namespace splayer
