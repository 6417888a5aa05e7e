#include "lpq/greenfn.hpp"
#include "lpq/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace lpq {

namespace {

Eigen::VectorXd dirac_load(const Grid& g, int y) {
    const int n = n_interior(g);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    if (const auto* radial = std::get_if<RadialGrid>(&g)) {
        const int node = (y == kOriginSource) ? 0 : y;
        if (node < 0 || node >= n) throw ArgumentOutOfRange("green_column: source index out of range");
        f[node] = 1.0 / radial->cell_volume(node);
    } else {
        if (y < 0 || y >= n) throw ArgumentOutOfRange("green_column: source index out of range");
        f[y] = 1.0 / std::get<Grid2D>(g).cell_volume();
    }
    return f;
}

// h(x) for one source: q-th power of the column's L^q norm.
double landscape_value(const Grid& g, const Eigen::VectorXd& w, int y, double q, double tol) {
    const Eigen::VectorXd G = poisson_solve(g, dirac_load(g, y), tol);
    double s = 0.0;
    for (int k = 0; k < G.size(); ++k) s += std::pow(std::abs(G[k]), q) * w[k];
    return s;
}

void run_over_sources(const Grid& g, const Eigen::VectorXd& w, const std::vector<int>& sources,
                      double q, double tol, int jobs, Eigen::VectorXd& h_out) {
    if (const auto* grid2d = std::get_if<Grid2D>(&g)) grid2d->factorization(); // build before threading
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (const int y : sources) h_out[y] = landscape_value(g, w, y, q, tol);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= sources.size()) return;
            h_out[sources[i]] = landscape_value(g, w, sources[i], q, tol);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace

void check_landscape_exponent(const Grid& grid, double q) {
    if (q < 1.0) throw ExponentOutOfRange("landscape requires q >= 1");
    if (const auto* radial = std::get_if<RadialGrid>(&grid)) {
        const int N = radial->dimension();
        if (N >= 3 && q >= double(N) / (N - 2))
            throw ExponentOutOfRange("q >= N/(N-2): the Green column is not q-integrable");
    }
}

GreenColumn green_column(const GridPtr& grid, int y, double tol) {
    Eigen::VectorXd G = poisson_solve(*grid, dirac_load(*grid, y), tol);
    return {y, ScalarField(grid, std::move(G))};
}

ScalarField landscape(const GridPtr& grid, double q, double tol) {
    check_landscape_exponent(*grid, q);
    const int n = n_interior(*grid);
    const Eigen::VectorXd w = weights(*grid);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    std::vector<int> sources(n);
    for (int k = 0; k < n; ++k) sources[k] = k;
    run_over_sources(*grid, w, sources, q, tol, 1, h);
    return {grid, std::move(h)};
}

LambdaOneResult lambda_one(const GridPtr& grid, double q, double tol, const LandscapeOptions& opts) {
    check_landscape_exponent(*grid, q);
    const int n = n_interior(*grid);
    const Eigen::VectorXd w = weights(*grid);
    const int stride = std::max(1, opts.stride);

    std::vector<int> sources;
    if (const auto* grid2d = std::get_if<Grid2D>(&*grid)) {
        for (int k = 0; k < n; ++k) {
            const auto [i, j] = grid2d->node(k);
            if (i % stride == 0 && j % stride == 0) sources.push_back(k);
        }
    } else {
        for (int k = 0; k < n; k += stride) sources.push_back(k);
    }

    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    run_over_sources(*grid, w, sources, q, opts.tol, opts.jobs, h);

    auto argmax_of = [&](const std::vector<int>& idx) {
        int best = idx.front();
        for (const int k : idx)
            if (h[k] > h[best]) best = k;
        return best;
    };
    int x_M = argmax_of(sources);

    if (stride > 1) {
        // local refinement around the coarse argmax
        std::vector<int> window;
        if (const auto* grid2d = std::get_if<Grid2D>(&*grid)) {
            const auto [ci, cj] = grid2d->node(x_M);
            for (int i = ci - stride; i <= ci + stride; ++i)
                for (int j = cj - stride; j <= cj + stride; ++j)
                    if (grid2d->is_interior(i, j)) window.push_back(grid2d->index_of(i, j));
        } else {
            for (int k = std::max(0, x_M - stride); k <= std::min(n - 1, x_M + stride); ++k)
                window.push_back(k);
        }
        std::vector<int> missing;
        for (const int k : window)
            if (h[k] == 0.0) missing.push_back(k);
        run_over_sources(*grid, w, missing, q, opts.tol, opts.jobs, h);
        for (const int k : window) sources.push_back(k);
        x_M = argmax_of(sources);
    }

    bool tie = false;
    for (const int k : sources)
        if (k != x_M && std::abs(h[k] - h[x_M]) <= 1e-9 * std::abs(h[x_M])) { tie = true; break; }
    if (tie) {
        // lowest node index among the tied maxima
        for (const int k : sources)
            if (std::abs(h[k] - h[x_M]) <= 1e-9 * std::abs(h[x_M]) && k < x_M) x_M = k;
    }

    GreenColumn col = green_column(grid, x_M, opts.tol);
    const double gq = std::pow(h[x_M], 1.0 / q);
    LambdaOneResult res;
    res.q = q;
    res.lambda = 1.0 / gq;
    res.x_M = x_M;
    res.tie_detected = tie;
    res.solver_tol = tol;
    res.stride_used = stride;
    res.landscape = ScalarField(grid, std::move(h));
    res.profile = ScalarField(grid, col.field.values / gq);
    return res;
}

bool jensen_lower_bound_check(const GridPtr& grid, double q, const Eigen::VectorXd& mu, double tol) {
    check_landscape_exponent(*grid, q);
    const int n = n_interior(*grid);
    if (mu.size() != n) throw ArgumentOutOfRange("jensen check: measure size mismatch");
    if (mu.minCoeff() < 0.0) throw ArgumentOutOfRange("jensen check: measure must be nonnegative");
    const double mass = mu.sum();
    if (mass <= 0.0) throw ArgumentOutOfRange("jensen check: measure must have positive mass");

    const Eigen::VectorXd w = weights(*grid);
    Eigen::VectorXd super = Eigen::VectorXd::Zero(n);
    double max_col_norm = 0.0;
    for (int y = 0; y < n; ++y) {
        if (mu[y] == 0.0) continue;
        const Eigen::VectorXd G = poisson_solve(*grid, dirac_load(*grid, y), tol);
        super += mu[y] * G;
        max_col_norm = std::max(max_col_norm, norm_q(*grid, G, q));
    }
    // the bound needs the max over all sources, not only those charged by mu
    for (int y = 0; y < n; ++y) {
        if (mu[y] != 0.0) continue;
        const double hq = landscape_value(*grid, w, y, q, tol);
        max_col_norm = std::max(max_col_norm, std::pow(hq, 1.0 / q));
    }
    const double lhs = norm_q(*grid, super, q);
    const double rhs = mass * max_col_norm;
    return lhs <= rhs + 1e-9 * std::max(1.0, rhs);
}

} // namespace lpq
