#pragma once

#include "splayer/scheme.hpp"

#include <span>
#include <vector>

namespace splayer {

struct Solution {
    std::vector<double> y;
    /// max_i |(A y - rhs)_i| / (|l_i y_{i-1}| + |d_i y_i| + |u_i y_{i+1}| + |rhs_i|)
    double residual_inf = 0.0;
};

/// Row-wise relative residual of `y` against `sys`, as stored in Solution.
double relative_residual(const TridiagonalSystem& sys, std::span<const double> y);

/// Thomas algorithm without pivoting. Throws SolveError naming the row whose
/// pivot is zero, subnormal or not finite.
Solution solve_thomas(const TridiagonalSystem& sys);

/// Dense Gaussian elimination with partial pivoting, for cross-checking
/// solve_thomas on small systems (at most 1025 unknowns). Throws SolveError
/// when the matrix is singular.
Solution solve_dense_oracle(const TridiagonalSystem& sys);

}  // namespace splayer
