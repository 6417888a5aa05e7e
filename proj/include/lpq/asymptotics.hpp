#pragma once

#include "lpq/rayleigh.hpp"

#include <string>
#include <vector>

namespace lpq {

/// Least-energy solution pair of the Lane-Emden system
///   -Lap U = |V|^{beta-1} V,  -Lap V = |U|^{alpha-1} U,  U = V = 0 on the boundary.
struct SystemSolution {
    double alpha = 0.0, beta = 0.0;
    ScalarField U, V;
    double lambda_used = 0.0; // Lambda_{(beta+1)/beta, alpha+1} behind the rescale
    double energy_J = 0.0;
    double residual = 0.0;    // achieved hamiltonian_residual of (U, V)
    int iters = 0;            // minimization + refinement iterations
};

struct SystemOptions {
    EigenOptions eigen;
    /// Post-refinement target: keep iterating the fixed point until the
    /// system residual falls below residual_rel_tol * max(||U||_inf, 1).
    double residual_rel_tol = 1e-6;
    int max_refine_iters = 6000;
};

/// Subcriticality of (alpha, beta): 1/(alpha+1) + 1/(beta+1) > (N-2)/N.
bool below_critical_hyperbola(int N, double alpha, double beta);

SystemSolution solve_system(const GridPtr& grid, double alpha, double beta,
                            const SystemOptions& opts = {});

/// Reduction-by-inversion energy J(U) = beta/(beta+1) |Lap U|_p^p - |U|_{a+1}^{a+1}/(a+1),
/// p = (beta+1)/beta.
double energy_J(const Grid& grid, const Eigen::VectorXd& U, double alpha, double beta);

struct BetaSweepRecord {
    double beta = 0.0;
    double tv_U = 0.0;      // |Lap U_beta|_1
    double sup_err_U = 0.0; // sup_{r in [r_min,1]} |U_beta - U_inf|
    double sup_err_V = 0.0;
    double v_max = 0.0;
    double lambda_used = 0.0;
    int iters = 0;
};

struct BetaSweepResult {
    std::string domain_kind; // "ball" for radial grids
    int N = 0;
    double alpha = 0.0;
    double r_min = 0.0;
    std::vector<BetaSweepRecord> records;
};

/// Sweep beta upward (warm-started) and measure the distance to the
/// closed-form limit profiles U_inf, V_inf on [r_min, 1].
BetaSweepResult beta_sweep(const GridPtr& grid, double alpha, const std::vector<double>& beta_list,
                           double r_min = 0.2, const SystemOptions& opts = {});

struct LimitCheckTolerances {
    double tol_tv = 0.1;   // relative gap of tv_U(last) to kappa
    double tol_U = 0.0;    // absolute sup gap for U (0 means 0.15 * A_{N,alpha})
    double tol_V = 0.05;   // absolute sup gap for V
};

struct LimitCheckReport {
    bool pass_tv = false, pass_U = false, pass_V = false;
    double kappa = 0.0, a_coeff = 0.0;
    double tv_rel_err = 0.0, final_sup_U = 0.0, final_sup_V = 0.0;
    bool sup_U_decreasing = false, sup_V_decreasing = false;
    std::string summary; // one PASS/FAIL line per criterion with the numbers

    bool pass() const { return pass_tv && pass_U && pass_V; }
};

/// PASS/FAIL report of the beta->infinity limit against Theorem-level targets:
/// (a) tv_U -> kappa, (b,c) sup errors decreasing and small. Monotonicity
/// needs at least 3 records. Throws DomainMismatch for non-ball sweeps.
LimitCheckReport check_limit_ball(const BetaSweepResult& sweep, int N, double alpha,
                                  const LimitCheckTolerances& tols = {});

} // namespace lpq
