#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "elab/coefficient.hpp"
#include "elab/solutions.hpp"

namespace elab {

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int order);

/// Product quadrature adapted to balls and spheres centered at the origin:
/// Gauss-Legendre along the radius, uniform (trapezoid) angles on S^1, and
/// Gauss-Legendre in cos(theta) times uniform longitudes on S^2.  The
/// angular factors integrate trigonometric polynomials of matching order
/// exactly, so |B_1| and |S_1| are reproduced to rounding.
struct QuadratureRule {
    int dim = 2;
    int radial = 64;
    int n_theta = 256;
    int n_phi = 0;
    /// Lower radial cutoff for bulk integrals (annulus truncation).
    double r_min = 0.0;

    Eigen::VectorXd radial_nodes;    // on [-1, 1]
    Eigen::VectorXd radial_weights;
    Eigen::MatrixXd directions;      // dim x M unit vectors
    Eigen::VectorXd direction_weights;  // sum = |S^{dim-1}|

    static QuadratureRule disk(int radial = 64, int n_theta = 256, double r_min = 0.0);
    static QuadratureRule ball(int radial = 64, int n_theta = 48, int n_phi = 96,
                               double r_min = 0.0);
};

using PointFn = std::function<double(const Eigen::VectorXd&)>;

/// Integral of f over the sphere of radius r.
double integrate_sphere(const QuadratureRule& rule, double r, const PointFn& f);

/// Integral of f over the annulus r_lo < |x| < r (r_lo defaults to the
/// rule's r_min).
double integrate_ball(const QuadratureRule& rule, double r, const PointFn& f,
                      double r_lo = -1.0);

/// Bulk energy g(r) = integral over B_r of <A grad u, grad u>.  For
/// homogeneous solutions of scale-invariant fields the truncated core is
/// restored exactly through the power law g(r) ~ r^(n-2+2d).
double bulk_energy(const CoefficientField& field, const Solution& sol, double r,
                   const QuadratureRule& rule);

/// Surface energy s(r) = integral over S_r of <A grad u, grad u>.
double surface_energy(const CoefficientField& field, const Solution& sol, double r,
                      const QuadratureRule& rule);

/// Mean of u over the sphere of radius r.
double sphere_mean(const Solution& sol, double r, const QuadratureRule& rule);

/// (integral of |tangential grad u|^2, integral of (normal derivative)^2)
/// over the sphere of radius r.
std::pair<double, double> tangential_normal_integrals(const Solution& sol, double r,
                                                      const QuadratureRule& rule);

/// Both sides of the sphere Poincare inequality at radius r:
/// (integral of (u - mean)^2, r^2/(n-1) * integral of |tangential grad u|^2).
std::pair<double, double> sphere_poincare_sides(const Solution& sol, double r,
                                                const QuadratureRule& rule);

/// Remainder term of the flux identity, driven by the derivatives of A;
/// identically zero (short-circuited) for constant fields.
double err_term(const CoefficientField& field, const Solution& sol,
                const QuadratureRule& rule);

/// Terms of the generalized Pohozaev flux identity on the unit ball,
///   lhs = t_flux + t_trace - t_sq + err,
/// where
///   lhs     = integral over S_1 of <A grad u, grad u> <A x, x>,
///   t_flux  = 2 integral over S_1 of <A grad u, x>^2,
///   t_trace = integral over B_1 of tr(A) <A grad u, grad u>,
///   t_sq    = 2 integral over B_1 of |A grad u|^2.
/// `residual` is lhs minus the right side; it vanishes (to quadrature
/// accuracy) exactly when u solves div(A grad u) = 0 in B_1.
struct PohozaevReport {
    std::string field_label;
    std::string solution_label;
    double lhs = 0;
    double t_flux = 0;
    double t_trace = 0;
    double t_sq = 0;
    double err = 0;
    double residual = 0;
    double relative_residual = 0;
};

PohozaevReport pohozaev_report(const CoefficientField& field, const Solution& sol,
                               const QuadratureRule& rule);

/// Energy ladder: g and s tabulated on an increasing radius ladder.
struct EnergyProfile {
    int dim = 2;
    double lambda = 0, Lambda = 0;
    std::vector<double> radii;
    std::vector<double> bulk;
    std::vector<double> surface;
};

EnergyProfile energy_profile(const CoefficientField& field, const Solution& sol,
                             const std::vector<double>& ladder, const QuadratureRule& rule);

/// `count` geometrically spaced radii from lo to hi inclusive.
std::vector<double> geometric_ladder(double lo, double hi, int count);

}  // namespace elab
