#include "lpq/rayleigh.hpp"
#include "lpq/errors.hpp"
#include "lpq/greenfn.hpp"

#include <cmath>
#include <random>

namespace lpq {

namespace {

int ambient_dimension(const Grid& g) {
    if (const auto* radial = std::get_if<RadialGrid>(&g)) return radial->dimension();
    return 2;
}

Eigen::VectorXd signed_power(const Eigen::VectorXd& v, double expo) {
    Eigen::VectorXd out(v.size());
    for (int k = 0; k < v.size(); ++k) {
        const double a = std::abs(v[k]);
        out[k] = (a == 0.0) ? 0.0 : std::copysign(std::pow(a, expo), v[k]);
    }
    return out;
}

Eigen::VectorXd seed_field(const Grid& g, const SeedProfile& seed, double solver_tol) {
    const int n = n_interior(g);
    switch (seed.kind) {
        case SeedProfile::Kind::Provided:
            if (!seed.field || seed.field->size() != n)
                throw ArgumentOutOfRange("provided seed has the wrong size");
            return *seed.field;
        case SeedProfile::Kind::Random: {
            std::mt19937_64 rng(seed.seed);
            std::uniform_real_distribution<double> dist(0.0, 1.0);
            Eigen::VectorXd u(n);
            for (int k = 0; k < n; ++k) u[k] = dist(rng);
            return u;
        }
        case SeedProfile::Kind::Torsion:
        default:
            return torsion(g, solver_tol);
    }
}

} // namespace

double rayleigh_quotient(const Grid& grid, const Eigen::VectorXd& u, double p, double q) {
    if (p < 1.0 || q < 1.0) throw ExponentOutOfRange("rayleigh_quotient needs p >= 1 and q >= 1");
    const double den = norm_q(grid, u, q);
    if (den == 0.0) throw ZeroField("rayleigh_quotient of the zero field");
    return norm_q(grid, apply_laplacian(grid, u), p) / den;
}

double rayleigh_quotient(const ScalarField& u, double p, double q) {
    return rayleigh_quotient(*u.grid, u.values, p, q);
}

bool subcritical(const Grid& grid, double p, double q) {
    const int N = ambient_dimension(grid);
    return (N - 2.0 * p) * q < N * p;
}

EigenResult minimize_lambda(const GridPtr& grid, double p, double q, const EigenOptions& opts) {
    if (p <= 1.0) throw ExponentOutOfRange("minimize_lambda requires p > 1 (p = 1 goes through lambda_one)");
    if (q < 1.0) throw ExponentOutOfRange("minimize_lambda requires q >= 1");
    if (!subcritical(*grid, p, q))
        throw SubcriticalityViolated("(N-2p)q < Np fails in dimension " +
                                     std::to_string(ambient_dimension(*grid)));

    const Grid& g = *grid;
    const double beta = 1.0 / (p - 1.0);
    double damping = opts.damping;
    if (p < 1.1) damping = std::min(damping, 0.25);
    if (damping <= 0.0 || damping > 1.0) throw ArgumentOutOfRange("damping must lie in (0,1]");

    EigenResult res;
    res.p = p;
    res.q = q;

    Eigen::VectorXd u = seed_field(g, opts.seed_profile, opts.solver_tol);
    u /= norm_q(g, u, q);

    double lam_prev = 0.0;
    bool have_prev = false;
    for (int k = 0; k < opts.max_iters; ++k) {
        const Eigen::VectorXd v = poisson_solve(g, signed_power(u, q - 1.0), opts.solver_tol);
        const double vmax = v.cwiseAbs().maxCoeff();
        if (vmax == 0.0) { res.diagnostic = "iteration collapsed to zero"; break; }
        // inner power against max|v|: scale-invariant, no overflow for large beta
        const Eigen::VectorXd w = poisson_solve(g, signed_power(v / vmax, beta), opts.solver_tol);
        Eigen::VectorXd next = (1.0 - damping) * u + damping * w / norm_q(g, w, q);
        next /= norm_q(g, next, q);
        const double lam = rayleigh_quotient(g, next, p, q);
        res.residual_history.push_back(lam);
        u = std::move(next);
        res.iters = k + 1;
        if (have_prev && std::abs(lam - lam_prev) < opts.rq_tol * std::abs(lam)) {
            res.converged = true;
            lam_prev = lam;
            break;
        }
        lam_prev = lam;
        have_prev = true;
    }

    // quotient must be non-increasing once the transient has passed
    for (size_t k = 3; k + 1 < res.residual_history.size(); ++k) {
        if (res.residual_history[k + 1] > res.residual_history[k] * (1.0 + 1e-9)) {
            res.converged = false;
            res.diagnostic = "Rayleigh quotient increased at iteration " + std::to_string(k + 1);
            break;
        }
    }

    res.lambda = lam_prev;
    res.u = ScalarField(grid, std::move(u));
    return res;
}

double hamiltonian_residual(const Grid& grid, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                            double alpha, double beta) {
    if (alpha <= 0.0 || beta <= 0.0) throw ArgumentOutOfRange("hamiltonian_residual needs alpha, beta > 0");
    const Eigen::VectorXd res_u = apply_laplacian(grid, u) + signed_power(v, beta);
    const Eigen::VectorXd res_v = apply_laplacian(grid, v) + signed_power(u, alpha);
    return std::max(res_u.cwiseAbs().maxCoeff(), res_v.cwiseAbs().maxCoeff());
}

std::vector<SweepRecord> p_sweep(const GridPtr& grid, double q, const std::vector<double>& p_list,
                                 const PSweepOptions& opts) {
    if (p_list.empty()) throw ArgumentOutOfRange("p_sweep: empty p list");
    for (size_t i = 0; i < p_list.size(); ++i) {
        if (p_list[i] <= 1.0) throw ExponentOutOfRange("p_sweep: all p must exceed 1");
        if (i > 0 && p_list[i] >= p_list[i - 1])
            throw ArgumentOutOfRange("p_sweep: p list must be strictly decreasing");
    }

    LandscapeOptions lopts;
    lopts.stride = opts.landscape_stride;
    const LambdaOneResult ref = lambda_one(grid, q, 1e-12, lopts);

    std::vector<SweepRecord> records;
    EigenOptions eopts = opts.eigen;
    for (const double p : p_list) {
        const EigenResult r = minimize_lambda(grid, p, q, eopts);
        SweepRecord rec;
        rec.p = p;
        rec.q = q;
        rec.lambda = r.lambda;
        rec.tv_u = r.u.tv();
        rec.profile_err = norm_q(*grid, r.u.values.cwiseAbs() - ref.profile.values, q);
        rec.iters = r.iters;
        rec.converged = r.converged;
        records.push_back(rec);
        if (opts.warm_start) eopts.seed_profile = SeedProfile::provided(r.u.values);
    }
    return records;
}

} // namespace lpq
