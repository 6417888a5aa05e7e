#pragma once

namespace lpq {

/// Gamma-function closed forms on the unit ball B_1 of R^N, N >= 3.
///
/// All exponents live in the open admissible ranges
///   q in [1, N/(N-2))   and   alpha in (0, 2/(N-2));
/// arguments within 1e-6 of a Gamma pole are rejected rather than evaluated.
namespace closedform {

/// Validated parameter bundle for the ball formulas.
struct BallParams {
    int N;
    double q;

    BallParams(int N, double q);
};

/// Surface measure |∂B_1| = 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

/// Volume |B_1| = pi^{N/2} / Gamma(N/2 + 1).
double ball_volume(int N);

/// c_N = 1 / ((N-2) |∂B_1|), the constant in G_{B_1}(x,0) = c_N (|x|^{2-N} - 1).
double c_N(int N);

/// |G_{B_1}(.,0)|_q on the unit ball.
double green_ball_lq_norm(int N, double q);

/// The nonlinear eigenvalue Lambda_{1,q}(B_1); reciprocal of green_ball_lq_norm.
double lambda_1q_ball(int N, double q);

/// A_{N,alpha}: the amplitude of the limit profile U_inf = A (|x|^{2-N} - 1).
double a_coeff(int N, double alpha);

/// kappa_{N,alpha} = Lambda_{1,alpha+1}^{(alpha+1)/alpha}: the limit of |Delta U_beta|_1.
double kappa(int N, double alpha);

/// U_inf(r) = A_{N,alpha} (r^{2-N} - 1), 0 < r <= 1.
double u_infty_profile(int N, double alpha, double r);

/// V_inf(r): bounded radial solution of -(r^{1-N}(r^{N-1} V')') = U_inf^alpha,
/// V(1) = 0, by nested quadrature (relative error <= 1e-8). r = 0 is allowed
/// and gives the (finite) central value.
double v_infty_profile(int N, double alpha, double r);

/// Least-energy level (q-1)/q * lambda^{q/(q-1)} for q > 1.
double least_energy_level(double q, double lambda);

} // namespace closedform
} // namespace lpq
