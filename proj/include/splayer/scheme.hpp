#pragma once

#include "splayer/mesh.hpp"
#include "splayer/problem.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace splayer {

/// Three diagonals and right-hand side of an (N+1)x(N+1) system.
/// lower[0] and upper[N] are unused and zero.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;
    int n = 0;

    std::size_t size() const { return diag.size(); }
    /// Row index of the interface condition, -1 when there is none.
    std::ptrdiff_t interface_row = -1;
};

/// Upwind discretisation of the problem on `mesh`, stored as the negated
/// discrete operator so the diagonal is positive.
///
/// Rows 1..N/2-1 use a_left, f_left and the backward difference for y';
/// rows N/2+1..N-1 use a_right, f_right and the forward difference. Row N/2
/// is the transmission condition D-Y = D+Y; rows 0 and N are the boundary values.
/// Throws ConfigError when the mesh does not put d at index N/2, EvalError when
/// a coefficient is not finite at a node.
TridiagonalSystem assemble(const ProblemSpec& spec, const Mesh& mesh);

/// Tridiagonal matrix-vector product A*y.
std::vector<double> apply_operator(const TridiagonalSystem& sys, std::span<const double> y);

/// Row-wise witness of the discrete minimum principle.
struct MMatrixReport {
    bool is_sign_valid = true;     ///< diag > 0, off-diagonals <= 0, identity boundary rows
    bool is_diag_dominant = true;  ///< diag >= |lower| + |upper| on interior rows
    std::size_t worst_row = 0;     ///< row with the smallest relative dominance margin
    double worst_margin = 0.0;     ///< (diag - |lower| - |upper|) / diag at worst_row
    std::size_t failing_rows = 0;
};

MMatrixReport check_m_matrix(const TridiagonalSystem& sys);

}  // namespace splayer
