#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace elab {

// Closed-form growth exponents for divergence-form elliptic operators with
// ellipticity bounds 0 < lambda <= Lambda.  Real n >= 2 is accepted so the
// formulas can be swept along the dimension axis; the grid optimizer below
// works on integer n only.

template <typename Scalar>
Scalar surface_to_bulk_constant(Scalar n, Scalar lambda, Scalar Lambda) {
    if (!(n >= Scalar(2)))
        throw std::domain_error("surface_to_bulk_constant: need n >= 2");
    if (!(lambda > Scalar(0)) || !(lambda <= Lambda))
        throw std::domain_error("surface_to_bulk_constant: need 0 < lambda <= Lambda");
    const Scalar m = n - Scalar(2);
    return std::sqrt(m * m + Scalar(4) * (n - Scalar(1)) * lambda / Lambda);
}

template <typename Scalar>
Scalar holder_exponent(Scalar n, Scalar lambda, Scalar Lambda) {
    const Scalar m = n - Scalar(2);
    return (surface_to_bulk_constant(n, lambda, Lambda) - m) / Scalar(2);
}

/// Weight of the remainder term in the variable-coefficient surface-to-bulk
/// inequality; identically zero in the plane.
template <typename Scalar>
Scalar err_correction_coefficient(Scalar n, Scalar lambda, Scalar Lambda) {
    return (n - Scalar(2)) / (Lambda * surface_to_bulk_constant(n, lambda, Lambda));
}

/// Largest admissible Young parameter: the weight c(eps) below is nonnegative
/// exactly for 0 < eps <= sqrt((n-1) lambda Lambda).
template <typename Scalar>
Scalar young_parameter_bound(Scalar n, Scalar lambda, Scalar Lambda) {
    return std::sqrt((n - Scalar(1)) * lambda * Lambda);
}

// Objective whose maximum over the admissible rectangle
//   eps in (0, sqrt((n-1) lambda Lambda)],  T in [n lambda, n Lambda]
// reproduces surface_to_bulk_constant.  T stands for the trace of the
// coefficient matrix, eps for the Young parameter splitting the mixed
// flux term.
template <typename Scalar>
Scalar surface_to_bulk_objective(Scalar eps, Scalar T, Scalar n, Scalar lambda, Scalar Lambda) {
    if (!(n >= Scalar(2)))
        throw std::domain_error("surface_to_bulk_objective: need n >= 2");
    if (!(lambda > Scalar(0)) || !(lambda <= Lambda))
        throw std::domain_error("surface_to_bulk_objective: need 0 < lambda <= Lambda");
    const Scalar eps_max = young_parameter_bound(n, lambda, Lambda);
    const Scalar slack = Scalar(1e-12);
    if (!(eps > Scalar(0)) || eps > eps_max * (Scalar(1) + slack))
        throw std::domain_error("surface_to_bulk_objective: eps outside (0, " +
                                std::to_string(static_cast<double>(eps_max)) + "]");
    if (T < n * lambda * (Scalar(1) - slack) || T > n * Lambda * (Scalar(1) + slack))
        throw std::domain_error("surface_to_bulk_objective: trace outside [n lambda, n Lambda]");
    const Scalar c = Scalar(1) / (Scalar(2) * eps) - eps / (Scalar(2) * (n - Scalar(1)) * lambda * Lambda);
    const Scalar num = Scalar(1) - c * (Scalar(2) * Lambda - T) / Scalar(2);
    const Scalar den = eps / (Scalar(2) * (n - Scalar(1)) * lambda) + c * Lambda / Scalar(2);
    return num / den;
}

/// Everything the inequality needs, bundled: the exponent pair, the
/// maximizing parameters and the remainder weight.
struct ExponentBound {
    double n = 0;
    double lambda = 0;
    double Lambda = 0;
    double alpha = 0;
    double alpha_tilde = 0;
    double eps_star = 0;
    double T_star = 0;
    double err_coefficient = 0;

    static ExponentBound compute(double n, double lambda, double Lambda) {
        ExponentBound b;
        b.n = n;
        b.lambda = lambda;
        b.Lambda = Lambda;
        b.alpha = holder_exponent(n, lambda, Lambda);
        b.alpha_tilde = surface_to_bulk_constant(n, lambda, Lambda);
        b.eps_star = Lambda * b.alpha;
        b.T_star = n * Lambda;
        b.err_coefficient = err_correction_coefficient(n, lambda, Lambda);
        return b;
    }
};

struct OptimizerResult {
    double eps = 0;
    double T = 0;
    double value = 0;
    double eps_step = 0;  // grid spacing along each axis, for step-count checks
    double T_step = 0;
    int resolution = 0;
};

/// Brute-force grid maximization of surface_to_bulk_objective over the
/// admissible rectangle; eps excludes zero, both axes include their upper end.
inline OptimizerResult maximize_surface_to_bulk(int n, double lambda, double Lambda, int resolution) {
    if (n < 2) throw std::domain_error("maximize_surface_to_bulk: need n >= 2");
    if (resolution < 2) throw std::invalid_argument("maximize_surface_to_bulk: resolution < 2");
    const double eps_max = young_parameter_bound<double>(n, lambda, Lambda);
    const double T_lo = n * lambda, T_hi = n * Lambda;

    OptimizerResult best;
    best.resolution = resolution;
    best.eps_step = eps_max / resolution;
    best.T_step = (T_hi - T_lo) / resolution;
    best.value = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= resolution; ++i) {
        const double eps = eps_max * i / resolution;
        for (int j = 0; j <= resolution; ++j) {
            const double T = T_lo + (T_hi - T_lo) * j / resolution;
            const double v = surface_to_bulk_objective(eps, T, double(n), lambda, Lambda);
            if (v > best.value) {
                best.value = v;
                best.eps = eps;
                best.T = T;
            }
        }
    }
    return best;
}

}  // namespace elab
