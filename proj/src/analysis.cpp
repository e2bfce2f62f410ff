#include "elab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "elab/exponent.hpp"
#include "elab/sampling.hpp"

namespace elab {

namespace {

struct LineFit {
    double slope, intercept, stderr_slope, max_residual;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const int m = static_cast<int>(x.size());
    double sx = 0, sy = 0;
    for (int i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f{};
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    f.max_residual = 0;
    for (int i = 0; i < m; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ssr += r * r;
        f.max_residual = std::max(f.max_residual, std::abs(r));
    }
    f.stderr_slope = m > 2 ? std::sqrt(ssr / (m - 2) / sxx) : 0.0;
    return f;
}

MonotonicityVerdict ratio_verdict(const EnergyProfile& profile, double constant,
                                  double tolerance) {
    if (!(constant > 0)) throw std::invalid_argument("ratio bound constant must be positive");
    MonotonicityVerdict v;
    v.radii = profile.radii;
    v.constant = constant;
    v.tolerance = tolerance;
    v.ratios.reserve(profile.radii.size());
    double min_ratio = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < profile.radii.size(); ++i) {
        if (profile.bulk[i] < 1e-14)
            throw std::domain_error(
                "monotonicity check: bulk energy is numerically zero (degenerate solution)");
        const double rho = profile.radii[i] * profile.surface[i] / profile.bulk[i];
        v.ratios.push_back(rho);
        min_ratio = std::min(min_ratio, rho);
    }
    v.margin = min_ratio - constant;
    v.pass = v.margin >= -tolerance;
    return v;
}

}  // namespace

MonotonicityVerdict verify_monotonicity(const EnergyProfile& profile, double constant,
                                        double tolerance) {
    return ratio_verdict(profile, constant, tolerance);
}

MonotonicityVerdict verify_2d_estimate(const EnergyProfile& profile, double lambda,
                                       double Lambda, double tolerance) {
    if (profile.dim != 2)
        throw std::invalid_argument("verify_2d_estimate: profile must be two-dimensional");
    if (!(lambda > 0) || lambda > Lambda)
        throw std::invalid_argument("verify_2d_estimate: need 0 < lambda <= Lambda");
    // g(r) <= (r/2) sqrt(Lambda/lambda) s(r)  <=>  r s/g >= 2 sqrt(lambda/Lambda).
    return ratio_verdict(profile, 2.0 * std::sqrt(lambda / Lambda), tolerance);
}

ExponentFit decay_exponent(const EnergyProfile& profile) {
    const size_t m = profile.radii.size();
    if (m < 5)
        throw std::invalid_argument("decay_exponent: need at least 5 ladder points");
    if (profile.radii.back() < 10.0 * (1.0 - 1e-9) * profile.radii.front())
        throw std::invalid_argument("decay_exponent: ladder must span at least a decade");
    std::vector<double> lx(m), ly(m);
    for (size_t i = 0; i < m; ++i) {
        if (profile.bulk[i] <= 0)
            throw std::domain_error("decay_exponent: bulk energy must be positive");
        lx[i] = std::log(profile.radii[i]);
        ly[i] = std::log(profile.bulk[i]);
    }
    const LineFit f = fit_line(lx, ly);
    ExponentFit fit;
    fit.slope = f.slope;
    fit.slope_stderr = f.stderr_slope;
    fit.intercept = f.intercept;
    fit.max_residual = f.max_residual;
    fit.points = static_cast<int>(m);
    fit.alpha_implied = (f.slope - (profile.dim - 2)) / 2.0;
    return fit;
}

ExponentFit oscillation_exponent(const Solution& sol, const std::vector<double>& ladder,
                                 int samples, unsigned seed) {
    if (ladder.size() < 5)
        throw std::invalid_argument("oscillation_exponent: need at least 5 ladder radii");
    if (samples < 8) throw std::invalid_argument("oscillation_exponent: too few samples");
    const Eigen::MatrixXd cloud = halton_ball(sol.dim, samples, seed);
    std::vector<double> lx, ly;
    lx.reserve(ladder.size());
    ly.reserve(ladder.size());
    for (const double r : ladder) {
        if (!(r > 0) || r > sol.domain_radius)
            throw std::invalid_argument("oscillation_exponent: ladder radius outside domain");
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int c = 0; c < cloud.cols(); ++c) {
            const Eigen::VectorXd x = r * cloud.col(c);
            if (x.norm() <= sol.singular_radius) continue;
            const double v = sol.value(x);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double osc = hi - lo;
        if (osc < 1e-14)
            throw std::domain_error("oscillation_exponent: solution is numerically constant");
        lx.push_back(std::log(r));
        ly.push_back(std::log(osc));
    }
    const LineFit f = fit_line(lx, ly);
    ExponentFit fit;
    fit.slope = f.slope;
    fit.slope_stderr = f.stderr_slope;
    fit.intercept = f.intercept;
    fit.max_residual = f.max_residual;
    fit.points = static_cast<int>(lx.size());
    fit.alpha_osc = f.slope;
    return fit;
}

ErrCorrectedVerdict verify_err_corrected(const PohozaevReport& report,
                                         const EnergyProfile& profile, int n, double lambda,
                                         double Lambda, double tolerance) {
    if (profile.radii.empty() || std::abs(profile.radii.back() - 1.0) > 1e-6)
        throw std::invalid_argument("verify_err_corrected: profile ladder must end at radius 1");
    ErrCorrectedVerdict v;
    v.surface = profile.surface.back();
    v.bulk = profile.bulk.back();
    v.err = report.err;
    v.alpha_tilde = surface_to_bulk_constant(static_cast<double>(n), lambda, Lambda);
    v.coefficient = err_correction_coefficient(static_cast<double>(n), lambda, Lambda);
    v.corrected_lhs = v.alpha_tilde * v.bulk + v.coefficient * v.err;
    v.margin = v.surface - v.corrected_lhs;
    v.tolerance = tolerance;
    v.err_nonnegative = v.err >= 0;
    const double scale = std::max(std::abs(v.surface), std::abs(v.corrected_lhs));
    v.pass = v.margin >= -tolerance * scale;
    return v;
}

}  // namespace elab
