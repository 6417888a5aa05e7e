#pragma once

#include "lpq/geometry.hpp"

#include <optional>

namespace lpq {

/// Source index for a radial grid Green column concentrated at the origin
/// (solved as the unit-flux boundary-value problem, which on the discrete
/// level is the Dirac load at the innermost node).
inline constexpr int kOriginSource = -1;

/// One column of the discrete Dirichlet Green function: the solution of
/// -Laplacian(G) = delta_y^h, where delta_y^h carries value 1/(cell volume)
/// at node y, so that sum(-Laplacian(G)) * cellvol = 1.
struct GreenColumn {
    int source;        // interior node index (kOriginSource for the radial origin)
    ScalarField field;
};

GreenColumn green_column(const GridPtr& grid, int y, double tol = 1e-12);

struct LandscapeOptions {
    /// Sample every `stride`-th source node, then refine locally around the
    /// coarse argmax. stride == 1 scans every interior node.
    int stride = 1;
    /// Worker threads for the per-source solves.
    int jobs = 1;
    double tol = 1e-12;
};

/// The landscape h(x) = |G(.,x)|_q^q on every interior node.
ScalarField landscape(const GridPtr& grid, double q, double tol = 1e-12);

struct LambdaOneResult {
    double q = 0.0;
    double lambda = 0.0;
    int x_M = -1;              // argmax node (lowest index on ties)
    bool tie_detected = false; // another node attains the max within 1e-9 (relative)
    double solver_tol = 0.0;
    int stride_used = 1;
    ScalarField landscape;     // sampled h values (zeros at skipped sources when stride > 1)
    ScalarField profile;       // G(.,x_M) / |G(.,x_M)|_q
};

/// Lambda_{1,q} via the landscape maximiser: lambda = 1/|G(.,x_M)|_q with
/// x_M = argmax h, and the normalized Green column as minimizer profile.
LambdaOneResult lambda_one(const GridPtr& grid, double q, double tol = 1e-12,
                           const LandscapeOptions& opts = {});

/// Checks |int G(.,y) dmu(y)|_q <= mu(Omega) * max_y |G(.,y)|_q on the grid
/// (within 1e-9 slack). mu is a nonnegative vector of point masses per
/// interior node; entries may be zero.
bool jensen_lower_bound_check(const GridPtr& grid, double q, const Eigen::VectorXd& mu,
                              double tol = 1e-12);

/// Range guard shared by landscape/lambda_one: on a RadialGrid in dimension
/// N >= 3 the column is q-integrable only for q < N/(N-2).
void check_landscape_exponent(const Grid& grid, double q);

} // namespace lpq
