#pragma once

#include <vector>

#include "core/mesh.hpp"

namespace uvbench {

// Uniform-weight graph Laplacian over the interior vertices of a disk mesh,
// boundary contributions folded into the right-hand side. Symmetric positive
// definite as long as every interior vertex connects (possibly indirectly) to
// the boundary.
struct LinearSystem {
    int n = 0;
    std::vector<int> row_start;  // CSR, size n + 1
    std::vector<int> col;
    std::vector<double> val;
    std::vector<double> rhs_u;
    std::vector<double> rhs_v;
};

// Conjugate gradients from a zero start. Converged when the residual
// max-norm drops to tol; gives up (SolverDiverged) after 10 * n iterations.
std::vector<double> solve_spd(const LinearSystem& system, const std::vector<double>& rhs,
                              double tol = 1e-10);

// Maps the single boundary loop to a circle by cumulative arc length and
// places interior vertices at the average of their neighbors. Requires a
// connected manifold mesh with Euler characteristic 1 and one boundary loop
// (NotADisk otherwise). Returns per-corner UVs.
std::vector<Vec2> tutte_embed(const TriMesh& mesh);

}  // namespace uvbench
