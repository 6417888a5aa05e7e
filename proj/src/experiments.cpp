#include "lpq/experiments.hpp"
#include "lpq/errors.hpp"
#include "lpq/greenfn.hpp"
#include "lpq/quadrature.hpp"

#include <cmath>
#include <limits>

namespace lpq {

namespace {

// antiderivative in z of (rho^2 + z^2)^{-q} for q = 1, 2
double inner_closed_form(double rho, double z, double q) {
    const double at = std::atan2(z, rho); // atan(z/rho) for rho > 0
    if (q == 1.0) return at / rho;
    return z / (2.0 * rho * rho * (rho * rho + z * z)) + at / (2.0 * rho * rho * rho);
}

double inner_integral(double rho, double zlo, double zhi, double q) {
    if (q == 0.0) return zhi - zlo;
    if (q == 1.0 || q == 2.0)
        return inner_closed_form(rho, zhi, q) - inner_closed_form(rho, zlo, q);
    auto f = [&](double z) { return std::pow(rho * rho + z * z, -q); };
    // split at the closest-approach point z = 0 when it falls inside
    if (zlo < 0.0 && zhi > 0.0)
        return integrate(f, zlo, 0.0, 1e-11) + integrate(f, 0.0, zhi, 1e-11);
    return integrate(f, zlo, zhi, 1e-11);
}

void check_spinning_top_args(double t, double q) {
    if (t <= 0.0 || t >= 2.0) throw ArgumentOutOfRange("spinning top: t must lie in (0,2)");
    if (q < 0.0 || q >= 3.0) throw ArgumentOutOfRange("spinning top: q must lie in [0,3)");
}

} // namespace

double spinning_top_h(double t, double q) {
    check_spinning_top_args(t, q);
    // near rho = 0 the inner integral behaves like C * rho^{1-2q}; the
    // rho-weighted integrand is integrable iff q < 3/2
    if (q >= 1.5) return std::numeric_limits<double>::infinity();
    auto f = [&](double rho) { return rho * inner_integral(rho, rho - t, 2.0 - t, q); };
    return 2.0 * M_PI * integrate_tanh_sinh(f, 0.0, 1.0, 1e-10);
}

double spinning_top_h_prime(double t, double q) {
    check_spinning_top_args(t, q);
    auto f = [&](double rho) {
        const double a = rho * rho + (rho - t) * (rho - t);
        const double b = rho * rho + (2.0 - t) * (2.0 - t);
        return rho * (std::pow(a, -q) - std::pow(b, -q));
    };
    return 2.0 * M_PI * integrate(f, 0.0, 1.0, 1e-12);
}

SpinningTopResult spinning_top_root(double q) {
    if (q <= 0.0 || q >= 3.0) throw ArgumentOutOfRange("spinning top root: q must lie in (0,3)");
    SpinningTopResult res;
    res.q = q;
    res.bracket_lo = 0.5;
    res.bracket_hi = 1.9;
    int evals = 0;
    auto dh = [&](double t) { return spinning_top_h_prime(t, q); };
    const double scale = std::abs(dh(res.bracket_lo));
    res.y_M = find_root(dh, res.bracket_lo, res.bracket_hi, 1e-12, &evals);
    res.evals = evals + 1;
    if (std::abs(dh(res.y_M)) > 1e-10 * std::max(scale, 1.0))
        throw NoBracket("spinning top root: residual derivative too large at the root");
    res.h_at_root = (q < 1.5) ? spinning_top_h(res.y_M, q)
                              : std::numeric_limits<double>::infinity();
    return res;
}

double lambda_disc_analytic(double q) {
    if (q < 1.0) throw ExponentOutOfRange("lambda_disc_analytic needs q >= 1");
    // |G|_q^q = 2 pi int_0^1 r (-log r / (2 pi))^q dr, via s = -log r
    auto f = [&](double s) { return std::exp(-2.0 * s) * std::pow(s, q); };
    const double I = integrate(f, 0.0, 50.0, 1e-13);
    const double norm = std::pow(std::pow(2.0 * M_PI, 1.0 - q) * I, 1.0 / q);
    return 1.0 / norm;
}

FaberKrahnReport faber_krahn_compare(const DomainSpec& spec, double q, int resolution,
                                     const FaberKrahnOptions& opts) {
    if (std::holds_alternative<BallDomain>(spec.shape)) {
        FaberKrahnReport rep;
        rep.domain = spec.kind();
        rep.q = q;
        rep.lambda_domain = rep.lambda_disc = lambda_disc_analytic(q);
        rep.holds = true;
        rep.area = M_PI;
        return rep; // the ball compared with itself
    }
    if (std::holds_alternative<SpinningTopDomain>(spec.shape))
        throw UnsupportedDomain("faber_krahn_compare needs a planar domain");

    auto lambda_on = [&](int res) {
        const GridPtr g = build_grid(spec, res);
        LandscapeOptions lo;
        lo.stride = opts.landscape_stride;
        lo.jobs = opts.jobs;
        return lambda_one(g, q, 1e-12, lo).lambda;
    };

    const GridPtr grid = build_grid(spec, resolution);
    const double area = weights(*grid).sum();
    if (std::abs(area - M_PI) > 0.005 * M_PI)
        throw VolumeMismatch("domain area " + std::to_string(area) +
                             " is not within 0.5% of |B_1| = pi");

    FaberKrahnReport rep;
    rep.domain = spec.kind();
    rep.q = q;
    rep.area = area;
    rep.lambda_domain = lambda_on(resolution);
    rep.lambda_disc = lambda_disc_analytic(q);
    rep.est_grid_error = std::abs(rep.lambda_domain - lambda_on(resolution / 2));
    rep.holds = rep.lambda_domain >= rep.lambda_disc;
    rep.genuine_violation =
        !rep.holds && (rep.lambda_disc - rep.lambda_domain) > rep.est_grid_error;
    return rep;
}

} // namespace lpq
