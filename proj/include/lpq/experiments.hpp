#pragma once

#include "lpq/geometry.hpp"

#include <string>

namespace lpq {

/// L^q-mass landscape of the 3D fundamental solution along the axis of the
/// spinning top {|(x,y)| < 1, |(x,y)| < z < 2}:
///   h_q(t) = 2 pi int_0^1 rho int_{rho-t}^{2-t} (rho^2 + z^2)^{-q} dz drho.
/// Finite for q < 3/2; for q in [3/2, 3) the axis singularity is not
/// q-integrable and the value is +infinity (the maximizer analysis only ever
/// needs h_q', which stays finite). q in {1,2} uses the arctan antiderivative
/// for the inner integral.
double spinning_top_h(double t, double q);

/// h_q'(t) = 2 pi int_0^1 rho [ (rho^2+(rho-t)^2)^{-q} - (rho^2+(2-t)^2)^{-q} ] drho,
/// evaluated by its own quadrature (never by differencing h).
double spinning_top_h_prime(double t, double q);

struct SpinningTopResult {
    double q = 0.0;
    double y_M = 0.0;       // root of h_q' in (0,2)
    double h_at_root = 0.0; // h_q(y_M); +inf for q >= 3/2
    double bracket_lo = 0.0, bracket_hi = 0.0;
    int evals = 0;
};

/// Locate the maximizer of h_q by bracketing and bisecting the root of h_q'
/// on [0.5, 1.9].
SpinningTopResult spinning_top_root(double q);

struct FaberKrahnReport {
    std::string domain;
    double q = 0.0;
    double lambda_domain = 0.0; // Lambda_{1,q}(Omega) on the grid
    double lambda_disc = 0.0;   // Lambda_{1,q}(B_1 in 2D) from the analytic column
    bool holds = false;         // lambda_domain >= lambda_disc
    double est_grid_error = 0.0;
    double area = 0.0;
    bool genuine_violation = false; // deficit beyond the estimated grid error
};

/// Lambda_{1,q}(B_1 of R^2) from the analytic Green column -log(r)/(2 pi),
/// integrated to high precision.
double lambda_disc_analytic(double q);

struct FaberKrahnOptions {
    int landscape_stride = 2;
    int jobs = 1;
};

/// Numerical Faber-Krahn comparison: Lambda_{1,q}(Omega) for a planar domain
/// of area |B_1| = pi against the analytic disc value. Throws VolumeMismatch
/// when the gridded area differs from pi by more than 0.5%.
FaberKrahnReport faber_krahn_compare(const DomainSpec& spec, double q, int resolution,
                                     const FaberKrahnOptions& opts = {});

} // namespace lpq
