#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "elab/coefficient.hpp"
#include "elab/solutions.hpp"

namespace elab {

/// Structured polar lattice on the unit disk or ball.  Radii follow a
/// geometric progression clustered at the origin (`cluster` is the overall
/// stretch factor; 1 gives uniform spacing).  Ring 0 is the single origin
/// node; in three dimensions each shell carries latitude rows from pole to
/// pole and periodic longitudes.
struct PolarGrid {
    int dim = 2;
    int nr = 0;
    int n_theta = 0;
    int n_phi = 0;
    double cluster = 4.0;
    std::vector<double> radii;  // size nr+1, radii[0] = 0, radii[nr] = 1

    static PolarGrid disk(int nr, int n_theta, double cluster = 4.0);
    static PolarGrid ball(int nr, int n_theta, int n_phi, double cluster = 4.0);

    int node_count() const;
    int shell_size() const;  // nodes per ring/shell away from the origin
    bool on_boundary(int id) const;
    Eigen::VectorXd node(int id) const;

    /// Exact measures of the polar cells (annular sectors / spherical
    /// boxes); they sum to the ball volume by construction.
    std::vector<double> cell_measures() const;
};

struct SolverFailure : std::runtime_error {
    SolverFailure(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), achieved_residual(residual), iterations(iterations) {}
    double achieved_residual;
    int iterations;
};

using BoundaryFn = std::function<double(const Eigen::VectorXd&)>;

/// Nodal field on a PolarGrid with piecewise-multilinear interpolation in
/// grid coordinates.  Nodal gradients are recovered by differencing nodal
/// values along grid lines (cubic stencils radially, one-sided at the outer
/// boundary) and are interpolated the same way; accuracy degrades to first
/// order in the immediate origin/pole cells.
class GridSolution {
  public:
    GridSolution(PolarGrid grid, Eigen::VectorXd nodal_values,
                 int iterations = 0, double algebraic_residual = 0.0);

    const PolarGrid& grid() const;
    const Eigen::VectorXd& nodal_values() const;
    int iterations() const;
    double algebraic_residual() const;
    const char* interpolation_scheme() const;  // "bilinear" / "trilinear"

    double value(const Eigen::VectorXd& x) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

    /// View as a Solution (grid provenance, domain radius 1).
    Solution as_solution() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Solve div(A grad u) = 0 on the unit ball with Dirichlet data g on the
/// unit sphere, by the symmetric first-order Galerkin discretization on the
/// simplicial refinement of the polar grid, with the coefficient averaged
/// per element.  The SPD system is solved by diagonally preconditioned
/// conjugate gradients to relative residual 1e-10 (iteration cap
/// 50*sqrt(unknowns)); failure to converge throws SolverFailure carrying
/// the achieved residual.
GridSolution solve_dirichlet(const CoefficientField& field, const BoundaryFn& boundary,
                             const PolarGrid& grid);

/// Discrete Dirichlet energy of a nodal field: the exact quadratic form of
/// the discretization used by solve_dirichlet.  The solver's output
/// minimizes it among nodal fields with the same boundary values.
double discrete_energy(const CoefficientField& field, const PolarGrid& grid,
                       const Eigen::VectorXd& nodal_values);

struct ConvergenceReport {
    std::vector<double> h;       // representative spacing per grid, 1/nr
    std::vector<double> errors;  // sup over a fixed sample cloud
    double order = 0;            // least-squares slope of log error vs log h
    bool exact = false;          // all errors at rounding level; order meaningless
};

/// Solve on each grid and fit the observed convergence order against an
/// analytic reference, or against the finest grid when `reference` is null
/// (the finest grid is then excluded from the fit).  Needs >= 3 grids.
ConvergenceReport convergence_study(const CoefficientField& field, const BoundaryFn& boundary,
                                    const std::vector<PolarGrid>& grids,
                                    const Solution* reference = nullptr);

}  // namespace elab
