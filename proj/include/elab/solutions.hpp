#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elab/coefficient.hpp"

namespace elab {

/// Scalar function on (a ball of) R^n with an explicit gradient evaluator.
/// Analytic families carry exact gradients; grid-backed solutions wrap an
/// interpolant.  `homogeneity` is the degree d with u(tx) = t^d u(x) when
/// the function is homogeneous, and enables exact power-law handling of the
/// truncated core in bulk quadratures.
struct Solution {
    int dim = 0;
    std::function<double(const Eigen::VectorXd&)> value;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;

    enum class Provenance { Analytic, Grid };
    Provenance provenance = Provenance::Analytic;

    std::optional<double> homogeneity;
    /// Bulk quadratures stay outside this radius (truncated-core families).
    double core_radius = 0.0;
    /// Radius below which the gradient genuinely blows up; -1 means none.
    double singular_radius = -1.0;
    double domain_radius = std::numeric_limits<double>::infinity();
    std::string label;
};

/// Gradient resolved in the frame of polar_frame(x): `normal` along x/|x|,
/// `tangential` the remaining n-1 components.
struct GradientSplit {
    double normal = 0;
    Eigen::VectorXd tangential;
};

/// Number of basis elements of degree `degree` (n = 2: 1,2,2,2; n = 3: 2k+1).
int harmonic_basis_size(int n, int degree);

/// Fixed harmonic polynomial bases for n in {2,3}, degrees 0..3.
/// n = 2, by (degree, index):
///   0: 1;  1: x1, x2;  2: x1^2-x2^2, x1*x2;  3: x1^3-3x1*x2^2, 3x1^2*x2-x2^3.
/// n = 3:
///   0: 1
///   1: x1, x2, x3
///   2: x1*x2, x2*x3, x1*x3, x1^2-x2^2, 2x3^2-x1^2-x2^2
///   3: x1^3-3x1*x2^2, 3x1^2*x2-x2^3, x3*(x1^2-x2^2), x1*x2*x3,
///      x1*(4x3^2-x1^2-x2^2), x2*(4x3^2-x1^2-x2^2), x3*(2x3^2-3x1^2-3x2^2).
Solution harmonic_polynomial(int n, int degree, int index);

/// u(x) = <coeffs, x> + offset.
Solution affine(const Eigen::VectorXd& coeffs, double offset = 0.0);

/// Planar harmonic extension of a trigonometric trace:
///   u = a[0] + sum_k r^k (a[k] cos k*theta + b[k] sin k*theta).
/// a and b share a length; b[0] is ignored.
Solution fourier_harmonic(const std::vector<double>& a, const std::vector<double>& b);

/// Weighted sum of solutions on the same space.
Solution superpose(const std::vector<double>& weights, const std::vector<Solution>& parts);

/// The planar extremal pair: the radially anisotropic field together with
/// u = r^alpha cos(theta), alpha = sqrt(lambda/Lambda), which solves its
/// equation away from the origin.  The solution is a reconstruction from the
/// field's radial/tangential eigenstructure; its gradient is singular at 0,
/// and bulk quadratures for it are truncated at core_radius = 1e-4.
std::pair<CoefficientField, Solution> ps_example(double lambda, double Lambda);

GradientSplit gradient_split(const Solution& sol, const Eigen::VectorXd& x);

/// Central-difference div(A grad u) at x with step h; 2n flux evaluations.
/// Accuracy is O(h^2) times local derivative bounds of the flux.  Throws
/// std::domain_error when the stencil leaves the solution's domain or
/// crosses its singular radius.
double residual(const CoefficientField& field, const Solution& sol,
                const Eigen::VectorXd& x, double h);

}  // namespace elab
