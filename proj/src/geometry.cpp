#include "lpq/geometry.hpp"
#include "lpq/errors.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <utility>

namespace lpq {

// ---------------------------------------------------------------------------
// DomainSpec
// ---------------------------------------------------------------------------

DomainSpec DomainSpec::ball(int N) {
    if (N < 2) throw DimensionOutOfRange("Ball dimension must be >= 2");
    return {BallDomain{N}};
}

DomainSpec DomainSpec::rectangle(double a, double b) {
    if (a <= 0 || b <= 0) throw ArgumentOutOfRange("rectangle sides must be positive");
    return {RectangleDomain{a, b}};
}

DomainSpec DomainSpec::disc(double radius) {
    if (radius <= 0) throw ArgumentOutOfRange("disc radius must be positive");
    return {DiscDomain{radius}};
}

DomainSpec DomainSpec::polygon(std::vector<std::array<double, 2>> vertices) {
    if (vertices.size() < 3) throw ArgumentOutOfRange("polygon needs at least 3 vertices");
    return {PolygonDomain{std::move(vertices)}};
}

DomainSpec DomainSpec::spinning_top() { return {SpinningTopDomain{}}; }

std::string DomainSpec::kind() const {
    struct V {
        std::string operator()(const BallDomain&) const { return "ball"; }
        std::string operator()(const RectangleDomain&) const { return "rectangle"; }
        std::string operator()(const DiscDomain&) const { return "disc"; }
        std::string operator()(const PolygonDomain&) const { return "polygon"; }
        std::string operator()(const SpinningTopDomain&) const { return "spinning_top"; }
    };
    return std::visit(V{}, shape);
}

// ---------------------------------------------------------------------------
// Grid2D
// ---------------------------------------------------------------------------

Grid2D::Grid2D(double h, double x0, double y0, int ni, int nj, std::vector<char> interior)
    : h_(h), x0_(x0), y0_(y0), ni_(ni), nj_(nj), mask_(std::move(interior)) {
    index_.assign(size_t(ni_) * nj_, -1);
    for (int i = 0; i < ni_; ++i)
        for (int j = 0; j < nj_; ++j)
            if (mask_[size_t(i) * nj_ + j]) {
                index_[size_t(i) * nj_ + j] = int(nodes_.size());
                nodes_.push_back({i, j});
            }
}

Eigen::VectorXd Grid2D::weights() const {
    return Eigen::VectorXd::Constant(n_interior(), h_ * h_);
}

Eigen::VectorXd Grid2D::apply_laplacian(const Eigen::VectorXd& u) const {
    Eigen::VectorXd out(n_interior());
    const double ih2 = 1.0 / (h_ * h_);
    for (int k = 0; k < n_interior(); ++k) {
        const auto [i, j] = nodes_[size_t(k)];
        double acc = -4.0 * u[k];
        if (is_interior(i + 1, j)) acc += u[index_of(i + 1, j)];
        if (is_interior(i - 1, j)) acc += u[index_of(i - 1, j)];
        if (is_interior(i, j + 1)) acc += u[index_of(i, j + 1)];
        if (is_interior(i, j - 1)) acc += u[index_of(i, j - 1)];
        out[k] = acc * ih2;
    }
    return out;
}

const Eigen::SparseMatrix<double>& Grid2D::neg_laplacian() const {
    if (!neg_lap_) {
        const int n = n_interior();
        const double ih2 = 1.0 / (h_ * h_);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(size_t(n) * 5);
        for (int k = 0; k < n; ++k) {
            const auto [i, j] = nodes_[size_t(k)];
            trip.emplace_back(k, k, 4.0 * ih2);
            constexpr std::pair<int, int> kOffsets[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& [di, dj] : kOffsets) {
                if (is_interior(i + di, j + dj))
                    trip.emplace_back(k, index_of(i + di, j + dj), -ih2);
            }
        }
        auto m = std::make_shared<Eigen::SparseMatrix<double>>(n, n);
        m->setFromTriplets(trip.begin(), trip.end());
        neg_lap_ = std::move(m);
    }
    return *neg_lap_;
}

const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>& Grid2D::factorization() const {
    if (!ldlt_) {
        auto f = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
        f->compute(neg_laplacian());
        if (f->info() != Eigen::Success)
            throw SolverDiverged("sparse factorization of -Laplacian failed", 0.0);
        ldlt_ = std::move(f);
    }
    return *ldlt_;
}

// ---------------------------------------------------------------------------
// RadialGrid
// ---------------------------------------------------------------------------

RadialGrid::RadialGrid(int N, int nr) : N_(N), nr_(nr), h_(1.0 / nr) {
    if (N < 2) throw DimensionOutOfRange("RadialGrid needs ambient dimension >= 2");
    if (nr < 8) throw InvalidResolution("RadialGrid needs nr >= 8");
    const int n = nr_ - 1;
    const double surf = 2.0 * std::pow(M_PI, 0.5 * N_) / std::tgamma(0.5 * N_);
    w_.resize(n);
    lo_.resize(n);
    di_.resize(n);
    up_.resize(n);
    const double ih2 = 1.0 / (h_ * h_);
    for (int k = 0; k < n; ++k) {
        const double rk = r(k);
        w_[k] = surf * std::pow(rk, N_ - 1) * h_;
        double a = ih2 - (N_ - 1) / (2.0 * h_ * rk);
        double b = -2.0 * ih2;
        double c = ih2 + (N_ - 1) / (2.0 * h_ * rk);
        if (k == 0) { b += a; a = 0.0; } // ghost u_0 = u_1
        if (k == n - 1) c = 0.0;          // boundary u(1) = 0
        lo_[k] = a;
        di_[k] = b;
        up_[k] = c;
    }
    // forward elimination of -Laplacian (rows -lo, -di, -up), reused per solve
    fac_di_.resize(n);
    fac_lo_.resize(n);
    fac_di_[0] = -di_[0];
    for (int k = 1; k < n; ++k) {
        fac_lo_[k] = -lo_[k] / fac_di_[k - 1];
        fac_di_[k] = -di_[k] - fac_lo_[k] * (-up_[k - 1]);
    }
}

Eigen::VectorXd RadialGrid::apply_laplacian(const Eigen::VectorXd& u) const {
    const int n = n_interior();
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) {
        double acc = di_[k] * u[k];
        if (k > 0) acc += lo_[k] * u[k - 1];
        if (k < n - 1) acc += up_[k] * u[k + 1];
        out[k] = acc;
    }
    return out;
}

Eigen::VectorXd RadialGrid::solve_neg_laplacian(const Eigen::VectorXd& f) const {
    const int n = n_interior();
    Eigen::VectorXd d = f;
    for (int k = 1; k < n; ++k) d[k] -= fac_lo_[k] * d[k - 1];
    Eigen::VectorXd u(n);
    u[n - 1] = d[n - 1] / fac_di_[n - 1];
    for (int k = n - 2; k >= 0; --k) u[k] = (d[k] - (-up_[k]) * u[k + 1]) / fac_di_[k];
    return u;
}

// ---------------------------------------------------------------------------
// build_grid
// ---------------------------------------------------------------------------

namespace {

bool point_in_polygon(double x, double y, const std::vector<std::array<double, 2>>& v) {
    bool inside = false;
    const size_t n = v.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = v[i][0], yi = v[i][1];
        const double xj = v[j][0], yj = v[j][1];
        if ((yi > y) != (yj > y)) {
            const double xc = xj + (y - yj) / (yi - yj) * (xi - xj);
            if (x < xc) inside = !inside;
        }
    }
    return inside;
}

Grid2D make_rectangle_grid(double a, double b, int res) {
    const double h = 1.0 / res;
    const int nx = std::max(2, int(std::lround(a * res)));
    const int ny = std::max(2, int(std::lround(b * res)));
    // nodes at (i*h, j*h), i = 0..nx; interior strictly inside
    std::vector<char> mask(size_t(nx + 1) * (ny + 1), 0);
    for (int i = 1; i < nx; ++i)
        for (int j = 1; j < ny; ++j) mask[size_t(i) * (ny + 1) + j] = 1;
    return Grid2D(h, 0.0, 0.0, nx + 1, ny + 1, std::move(mask));
}

Grid2D make_disc_grid(double radius, int res) {
    const double h = 1.0 / res;
    // cell-centred lattice over the bounding box, so nodes never sit exactly
    // on the circle
    const int m = int(std::ceil(radius * res));
    const int ni = 2 * m;
    const double x0 = -(m - 0.5) * h;
    std::vector<char> mask(size_t(ni) * ni, 0);
    const double r2 = radius * radius;
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < ni; ++j) {
            const double x = x0 + i * h, y = x0 + j * h;
            if (x * x + y * y < r2) mask[size_t(i) * ni + j] = 1;
        }
    return Grid2D(h, x0, x0, ni, ni, std::move(mask));
}

Grid2D make_polygon_grid(const std::vector<std::array<double, 2>>& verts, int res) {
    const double h = 1.0 / res;
    double xmin = verts[0][0], xmax = verts[0][0], ymin = verts[0][1], ymax = verts[0][1];
    for (const auto& v : verts) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
        ymin = std::min(ymin, v[1]);
        ymax = std::max(ymax, v[1]);
    }
    // lattice aligned with h-multiples so an axis-aligned polygon reproduces
    // the rectangle mask exactly
    const int i0 = int(std::floor(xmin / h));
    const int i1 = int(std::ceil(xmax / h));
    const int j0 = int(std::floor(ymin / h));
    const int j1 = int(std::ceil(ymax / h));
    const int ni = i1 - i0 + 1, nj = j1 - j0 + 1;
    const double x0 = i0 * h, y0 = j0 * h;
    std::vector<char> mask(size_t(ni) * nj, 0);
    for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j)
            if (point_in_polygon(x0 + i * h, y0 + j * h, verts)) mask[size_t(i) * nj + j] = 1;
    return Grid2D(h, x0, y0, ni, nj, std::move(mask));
}

} // namespace

GridPtr build_grid(const DomainSpec& spec, int resolution) {
    if (resolution < 8) throw InvalidResolution("resolution must be >= 8");
    struct V {
        int res;
        Grid operator()(const BallDomain& d) const { return RadialGrid(d.N, res); }
        Grid operator()(const RectangleDomain& d) const { return make_rectangle_grid(d.a, d.b, res); }
        Grid operator()(const DiscDomain& d) const { return make_disc_grid(d.radius, res); }
        Grid operator()(const PolygonDomain& d) const { return make_polygon_grid(d.vertices, res); }
        Grid operator()(const SpinningTopDomain&) const {
            throw UnsupportedDomain("the spinning top is handled by axisymmetric quadrature, not a grid");
        }
    };
    return std::make_shared<const Grid>(std::visit(V{resolution}, spec.shape));
}

int n_interior(const Grid& g) {
    return std::visit([](const auto& gr) { return gr.n_interior(); }, g);
}

Eigen::VectorXd weights(const Grid& g) {
    return std::visit([](const auto& gr) -> Eigen::VectorXd { return gr.weights(); }, g);
}

Eigen::VectorXd apply_laplacian(const Grid& g, const Eigen::VectorXd& u) {
    return std::visit([&](const auto& gr) { return gr.apply_laplacian(u); }, g);
}

// ---------------------------------------------------------------------------
// Fields and norms
// ---------------------------------------------------------------------------

double norm_q(const Grid& g, const Eigen::VectorXd& u, double q) {
    const Eigen::VectorXd w = weights(g);
    double s = 0.0;
    for (int k = 0; k < u.size(); ++k) s += std::pow(std::abs(u[k]), q) * w[k];
    return std::pow(s, 1.0 / q);
}

double tv_norm(const Grid& g, const Eigen::VectorXd& u) {
    const Eigen::VectorXd lap = apply_laplacian(g, u);
    const Eigen::VectorXd w = weights(g);
    return lap.cwiseAbs().dot(w);
}

double ScalarField::norm_q(double q) const { return lpq::norm_q(*grid, values, q); }
double ScalarField::tv() const { return tv_norm(*grid, values); }

// ---------------------------------------------------------------------------
// Poisson
// ---------------------------------------------------------------------------

Eigen::VectorXd poisson_solve(const Grid& g, const Eigen::VectorXd& f, double tol,
                              const PoissonOptions& opts) {
    if (tol <= 0.0) throw ArgumentOutOfRange("poisson_solve: tol must be positive");
    if (const auto* radial = std::get_if<RadialGrid>(&g)) return radial->solve_neg_laplacian(f);
    const auto& grid = std::get<Grid2D>(g);
    if (opts.backend == PoissonBackend::Direct) return grid.factorization().solve(f);

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.compute(grid.neg_laplacian());
    const int cap = opts.max_iters > 0
                        ? opts.max_iters
                        : int(50.0 * std::sqrt(double(grid.n_interior())));
    cg.setMaxIterations(cap);
    cg.setTolerance(tol);
    const Eigen::VectorXd u = cg.solve(f);
    if (cg.info() != Eigen::Success)
        throw SolverDiverged("conjugate gradient stalled after " + std::to_string(cap) +
                                 " iterations, residual " + std::to_string(cg.error()),
                             cg.error());
    return u;
}

ScalarField poisson_solve(const GridPtr& g, const ScalarField& f, double tol,
                          const PoissonOptions& opts) {
    return {g, poisson_solve(*g, f.values, tol, opts)};
}

Eigen::VectorXd torsion(const Grid& g, double tol) {
    return poisson_solve(g, Eigen::VectorXd::Ones(n_interior(g)), tol);
}

} // namespace lpq
