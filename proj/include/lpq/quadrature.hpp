#pragma once

#include <functional>

namespace lpq {

/// One Gauss-Kronrod 7/15 panel on [a,b]. Returns the K15 value and writes an
/// error estimate into `err`.
double gk15_panel(const std::function<double(double)>& f, double a, double b, double& err);

/// Adaptive Gauss-Kronrod integration of f over [a,b].
/// Subdivides until the summed panel error is below
/// max(rel_tol*|integral|, abs_tol). Throws QuadratureError when the panel
/// budget is exhausted before the target is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-300,
                 int max_panels = 4000);

/// Tanh-sinh (double exponential) quadrature over [a,b]; robust for
/// integrable endpoint singularities. Level-doubling until successive values
/// agree to rel_tol.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, int max_level = 12);

/// Brent-style root bracketing/bisection for a continuous f with
/// f(a)*f(b) < 0. Throws NoBracket when the signs at the endpoints agree.
/// `evals`, when non-null, accumulates the number of function evaluations.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double xtol, int* evals = nullptr);

} // namespace lpq
