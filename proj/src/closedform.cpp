#include "lpq/closedform.hpp"
#include "lpq/errors.hpp"
#include "lpq/quadrature.hpp"

#include <cmath>
#include <string>

namespace lpq {
namespace closedform {

namespace {

constexpr double kPoleGuard = 1e-6;

void require_dimension(int N) {
    if (N < 3) throw DimensionOutOfRange("ball closed forms require N >= 3, got N=" + std::to_string(N));
}

// Gamma with a guard band around the poles at 0, -1, -2, ...
double gamma_checked(double x) {
    if (x < kPoleGuard)
        throw ExponentOutOfRange("Gamma argument " + std::to_string(x) + " too close to a pole");
    return std::tgamma(x);
}

} // namespace

BallParams::BallParams(int N_, double q_) : N(N_), q(q_) {
    require_dimension(N);
    const double q_max = double(N) / double(N - 2);
    if (q < 1.0 || q > q_max - kPoleGuard)
        throw ExponentOutOfRange("q=" + std::to_string(q) + " outside [1, N/(N-2)) for N=" + std::to_string(N));
}

double sphere_area(int N) {
    return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

double ball_volume(int N) {
    return std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

double c_N(int N) {
    require_dimension(N);
    return 1.0 / ((N - 2) * sphere_area(N));
}

double green_ball_lq_norm(int N, double q) {
    BallParams params(N, q);
    const double inner = ball_volume(N) *
                         gamma_checked(double(N) / (N - 2) - q) * gamma_checked(q + 1.0) /
                         std::tgamma(double(N) / (N - 2));
    return c_N(N) * std::pow(inner, 1.0 / q);
}

double lambda_1q_ball(int N, double q) {
    BallParams params(N, q);
    const double lead = 4.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N - 1.0);
    const double inner = std::tgamma(double(N) / (N - 2)) * std::tgamma(0.5 * N + 1.0) /
                         (std::pow(M_PI, 0.5 * N) *
                          gamma_checked(double(N) / (N - 2) - q) * gamma_checked(q + 1.0));
    return lead * std::pow(inner, 1.0 / q);
}

double a_coeff(int N, double alpha) {
    require_dimension(N);
    const double a_max = 2.0 / (N - 2);
    if (alpha <= 0.0 || alpha > a_max - kPoleGuard)
        throw ExponentOutOfRange("alpha=" + std::to_string(alpha) + " outside (0, 2/(N-2)) for N=" +
                                 std::to_string(N));
    const double inner = 2.0 * N * std::tgamma(a_max) /
                         (gamma_checked(alpha + 2.0) * gamma_checked(a_max - alpha));
    return std::pow(inner, 1.0 / alpha);
}

double kappa(int N, double alpha) {
    require_dimension(N);
    if (alpha <= 0.0 || alpha > 2.0 / (N - 2) - kPoleGuard)
        throw ExponentOutOfRange("alpha=" + std::to_string(alpha) + " outside (0, 2/(N-2))");
    const double lam = lambda_1q_ball(N, alpha + 1.0);
    return std::pow(lam, (alpha + 1.0) / alpha);
}

double u_infty_profile(int N, double alpha, double r) {
    if (r <= 0.0 || r > 1.0) throw InvalidRadius("u_infty_profile needs 0 < r <= 1, got r=" + std::to_string(r));
    return a_coeff(N, alpha) * (std::pow(r, 2.0 - N) - 1.0);
}

double v_infty_profile(int N, double alpha, double r) {
    const double amp = a_coeff(N, alpha); // validates (N, alpha)
    if (r < 0.0 || r > 1.0) throw InvalidRadius("v_infty_profile needs 0 <= r <= 1");
    if (r == 1.0) return 0.0;

    // V(r) = int_r^1 s^{1-N} F(s) ds,  F(s) = int_0^s t^{N-1} U_inf(t)^alpha dt.
    // Write t^{N-1} U_inf^alpha = A^a t^{g-1} (1 - t^{N-2})^alpha with
    // g = N - (N-2) alpha > 0; the substitution t = u^{1/g} removes the
    // endpoint power so plain adaptive panels converge fast.
    const double g = N - (N - 2.0) * alpha;
    const double amp_a = std::pow(amp, alpha);
    auto inner = [&](double s) -> double {
        const double ug = std::pow(s, g);
        auto smooth = [&](double u) {
            const double t = std::pow(u, 1.0 / g);
            return std::pow(1.0 - std::pow(t, N - 2.0), alpha);
        };
        return amp_a / g * integrate_tanh_sinh(smooth, 0.0, ug, 1e-11);
    };
    auto outer_integrand = [&](double s) { return std::pow(s, 1.0 - N) * inner(s); };
    // s^{1-N} F(s) ~ s^{1-(N-2)alpha} near 0: integrable, tanh-sinh handles it.
    const double val = integrate_tanh_sinh(outer_integrand, r, 1.0, 1e-9);
    if (!std::isfinite(val)) throw QuadratureError("v_infty_profile quadrature failed");
    return val;
}

double least_energy_level(double q, double lambda) {
    if (q <= 1.0) throw ExponentOutOfRange("least_energy_level requires q > 1");
    if (lambda <= 0.0) throw ArgumentOutOfRange("least_energy_level requires lambda > 0");
    return (q - 1.0) / q * std::pow(lambda, q / (q - 1.0));
}

} // namespace closedform
} // namespace lpq
