#pragma once

#include "lpq/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lpq {

/// Seed for the Rayleigh-quotient minimization.
struct SeedProfile {
    enum class Kind { Torsion, Random, Provided };
    Kind kind = Kind::Torsion;
    std::uint64_t seed = 0;
    std::optional<Eigen::VectorXd> field;

    static SeedProfile torsion() { return {}; }
    static SeedProfile random(std::uint64_t s) { return {Kind::Random, s, std::nullopt}; }
    static SeedProfile provided(Eigen::VectorXd u) { return {Kind::Provided, 0, std::move(u)}; }
};

struct EigenOptions {
    int max_iters = 2000;
    double rq_tol = 1e-10;   // relative Rayleigh-quotient change at which to stop
    double damping = 1.0;    // in (0,1]; forced down to 0.25 for p < 1.1
    double eps_reg = 0.0;    // floor for |Lap u|^{p-2} (unused by the two-solve scheme)
    SeedProfile seed_profile = SeedProfile::torsion();
    double solver_tol = 1e-12;
};

struct EigenResult {
    double p = 0.0, q = 0.0;
    double lambda = 0.0;
    ScalarField u;                        // |u|_q = 1
    std::vector<double> residual_history; // Rayleigh quotient per iteration
    int iters = 0;
    bool converged = false;
    std::string diagnostic;               // set when the monotonicity monitor trips
};

/// |Laplacian(u)|_p / |u|_q with the grid quadrature. Throws ZeroField for u == 0.
double rayleigh_quotient(const Grid& grid, const Eigen::VectorXd& u, double p, double q);
double rayleigh_quotient(const ScalarField& u, double p, double q);

/// Subcriticality test (N-2p) q < N p in the grid's ambient dimension.
bool subcritical(const Grid& grid, double p, double q);

/// Minimize the Rayleigh quotient for p > 1 by the alternating two-solve
/// scheme: -Lap v = |u|^{q-2} u, then -Lap w = |v|^{beta-1} v with
/// beta = 1/(p-1) (evaluated against max|v| so the inner power cannot
/// overflow), then mix u <- (1-damping) u + damping w/|w|_q and renormalize.
/// Stops on the relative change of the quotient; converged=false never throws.
EigenResult minimize_lambda(const GridPtr& grid, double p, double q, const EigenOptions& opts = {});

/// sup-norm defect of (u,v) as a solution pair of the Lane-Emden system:
/// max(||Lap u + |v|^{beta-1} v||_inf, ||Lap v + |u|^{alpha-1} u||_inf).
double hamiltonian_residual(const Grid& grid, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                            double alpha, double beta);

struct SweepRecord {
    double p = 0.0, q = 0.0;
    double lambda = 0.0;
    double tv_u = 0.0;        // |Lap u|_1 of the normalized minimizer
    double profile_err = 0.0; // L^q distance of |u| to the lambda_one profile
    int iters = 0;
    bool converged = false;
};

struct PSweepOptions {
    EigenOptions eigen;
    bool warm_start = true;
    int landscape_stride = 1;
};

/// Descending sweep p -> 1+ at fixed q, warm-starting each p from the
/// previous minimizer; profile errors are measured against the lambda_one
/// profile on the same grid.
std::vector<SweepRecord> p_sweep(const GridPtr& grid, double q, const std::vector<double>& p_list,
                                 const PSweepOptions& opts = {});

} // namespace lpq
