#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lpq {

// ---------------------------------------------------------------------------
// Domain descriptions
// ---------------------------------------------------------------------------

struct BallDomain { int N; };                                 // unit ball in R^N
struct RectangleDomain { double a, b; };                      // (0,a) x (0,b)
struct DiscDomain { double radius; };                         // disc centred at 0
struct PolygonDomain { std::vector<std::array<double, 2>> vertices; };
struct SpinningTopDomain {};                                  // axisymmetric only

struct DomainSpec {
    std::variant<BallDomain, RectangleDomain, DiscDomain, PolygonDomain, SpinningTopDomain> shape;

    static DomainSpec ball(int N);
    static DomainSpec rectangle(double a, double b);
    static DomainSpec disc(double radius);
    static DomainSpec polygon(std::vector<std::array<double, 2>> vertices);
    static DomainSpec spinning_top();

    std::string kind() const;
};

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// Uniform planar grid with an interior mask and implicit zero Dirichlet data
/// outside the mask. Node (i,j) sits at (x0 + i*h, y0 + j*h); interior nodes
/// are numbered lexicographically (i-major).
class Grid2D {
public:
    Grid2D(double h, double x0, double y0, int ni, int nj, std::vector<char> interior);

    double h() const { return h_; }
    int ni() const { return ni_; }
    int nj() const { return nj_; }
    int n_interior() const { return int(nodes_.size()); }
    double cell_volume() const { return h_ * h_; }

    bool is_interior(int i, int j) const {
        return i >= 0 && i < ni_ && j >= 0 && j < nj_ && mask_[size_t(i) * nj_ + j];
    }
    int index_of(int i, int j) const { return index_[size_t(i) * nj_ + j]; }
    std::array<int, 2> node(int k) const { return nodes_[size_t(k)]; }
    double x(int k) const { return x0_ + nodes_[size_t(k)][0] * h_; }
    double y(int k) const { return y0_ + nodes_[size_t(k)][1] * h_; }

    /// Quadrature weights (constant h^2 per interior node).
    Eigen::VectorXd weights() const;

    /// Five-point stencil with zero closure outside the mask.
    Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& u) const;

    const Eigen::SparseMatrix<double>& neg_laplacian() const;

    /// Cached Cholesky factorization of -Laplacian. Build it once (first call)
    /// before sharing the grid across threads; solve() on the factorization is
    /// then safe concurrently.
    const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>& factorization() const;

private:
    double h_, x0_, y0_;
    int ni_, nj_;
    std::vector<char> mask_;
    std::vector<int> index_;
    std::vector<std::array<int, 2>> nodes_;
    mutable std::shared_ptr<Eigen::SparseMatrix<double>> neg_lap_;
    mutable std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
};

/// Radial grid on the unit ball of R^N: nodes r_i = i*h for i = 1..nr, with
/// r_nr = 1 the boundary node (value pinned to 0). Interior unknowns are
/// i = 1..nr-1. The origin is excluded; the stencil closes there by the ghost
/// value u_0 = u_1.
class RadialGrid {
public:
    RadialGrid(int N, int nr);

    int dimension() const { return N_; }
    int nr() const { return nr_; }
    double h() const { return h_; }
    int n_interior() const { return nr_ - 1; }
    double r(int k) const { return (k + 1) * h_; } // k = 0..nr-2
    double cell_volume(int k) const { return w_[k]; }

    const Eigen::VectorXd& weights() const { return w_; }

    /// u'' + (N-1)/r u' with central differences, ghost u_0 = u_1 at the
    /// origin, zero boundary at r = 1.
    Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& u) const;

    /// Solve -Laplacian(u) = f (Thomas algorithm on the cached LU factors).
    Eigen::VectorXd solve_neg_laplacian(const Eigen::VectorXd& f) const;

private:
    int N_, nr_;
    double h_;
    Eigen::VectorXd w_;
    Eigen::VectorXd lo_, di_, up_;   // tridiagonal rows of the Laplacian
    Eigen::VectorXd fac_di_, fac_lo_; // forward-elimination factors of -Laplacian
};

using Grid = std::variant<Grid2D, RadialGrid>;
using GridPtr = std::shared_ptr<const Grid>;

/// Build the finite-difference grid for a domain. `resolution` is the number
/// of cells per unit length (h = 1/resolution); Ball specs produce a
/// RadialGrid with nr = resolution.
GridPtr build_grid(const DomainSpec& spec, int resolution);

int n_interior(const Grid& g);
Eigen::VectorXd weights(const Grid& g);
Eigen::VectorXd apply_laplacian(const Grid& g, const Eigen::VectorXd& u);

/// Geometric area/volume of the domain a grid at this resolution represents:
/// rectangles snap their sides to whole cells, discs and polygons keep their
/// exact area, balls report |B_1|.
double domain_measure(const DomainSpec& spec, int resolution);

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

/// Values on the interior nodes of a grid, zero on/outside the boundary.
struct ScalarField {
    GridPtr grid;
    Eigen::VectorXd values;

    ScalarField() = default;
    ScalarField(GridPtr g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {}

    /// |u|_q with the grid quadrature (weighted node sums).
    double norm_q(double q) const;

    /// Discrete total-variation surrogate: sum of |Laplacian(u)| * cell volume.
    double tv() const;
};

double norm_q(const Grid& g, const Eigen::VectorXd& u, double q);
double tv_norm(const Grid& g, const Eigen::VectorXd& u);

// ---------------------------------------------------------------------------
// Poisson solver
// ---------------------------------------------------------------------------

enum class PoissonBackend { Direct, ConjugateGradient };

struct PoissonOptions {
    PoissonBackend backend = PoissonBackend::Direct;
    /// Iteration cap override for the CG backend; <= 0 means the default
    /// 50*sqrt(#unknowns).
    int max_iters = 0;
};

/// Solve -Laplacian(u) = f with implicit zero Dirichlet data. The direct
/// backend ignores tol; the CG backend (diagonal preconditioner) iterates to
/// a relative residual of tol and throws SolverDiverged past the cap.
Eigen::VectorXd poisson_solve(const Grid& g, const Eigen::VectorXd& f, double tol,
                              const PoissonOptions& opts = {});
ScalarField poisson_solve(const GridPtr& g, const ScalarField& f, double tol,
                          const PoissonOptions& opts = {});

/// Torsion function: -Laplacian(u) = 1.
Eigen::VectorXd torsion(const Grid& g, double tol = 1e-12);

} // namespace lpq
