#pragma once

#include <optional>
#include <vector>

#include "elab/energy.hpp"
#include "elab/solutions.hpp"

namespace elab {

/// Outcome of a surface-to-bulk ratio check: the per-radius ratios
/// rho(r) = r s(r)/g(r) against a claimed lower bound.
struct MonotonicityVerdict {
    std::vector<double> radii;
    std::vector<double> ratios;  // r * surface / bulk per ladder point
    double constant = 0;         // claimed lower bound on the ratio
    double tolerance = 0;
    double margin = 0;  // min(ratios) - constant
    bool pass = false;  // margin >= -tolerance
};

/// Check r s(r)/g(r) >= constant across the profile's radius ladder.  The
/// bound is scale invariant, so it is applied at every ladder radius.
/// Throws std::domain_error when some g(r) falls below 1e-14 (numerically
/// zero solution).
MonotonicityVerdict verify_monotonicity(const EnergyProfile& profile, double constant,
                                        double tolerance);

/// Two-dimensional estimate g(r) <= (r/2) sqrt(Lambda/lambda) s(r),
/// expressed as the ratio bound with constant 2 sqrt(lambda/Lambda).
/// Requires a two-dimensional profile.
MonotonicityVerdict verify_2d_estimate(const EnergyProfile& profile, double lambda,
                                       double Lambda, double tolerance);

/// Least-squares exponent fit in log-log coordinates.  `alpha_implied` is
/// filled by decay fits ((slope - (n-2))/2), `alpha_osc` by oscillation
/// fits (the slope itself).
struct ExponentFit {
    double slope = 0;
    double slope_stderr = 0;
    double intercept = 0;
    double max_residual = 0;  // max |log y - fit| over the points
    int points = 0;
    std::optional<double> alpha_implied;
    std::optional<double> alpha_osc;
};

/// Fit log g(r) against log r over the profile's ladder and convert the
/// slope beta into the implied interior exponent (beta - (n-2))/2.
/// Requires at least 5 ladder points spanning a decade.
ExponentFit decay_exponent(const EnergyProfile& profile);

/// Empirical oscillation exponent: osc(B_r) = max - min of u over a
/// low-discrepancy sample cloud of B_r (the same cloud rescaled per
/// radius), fit in log-log coordinates.  The measured osc is a lower bound
/// for the true oscillation.  Throws std::domain_error when the solution
/// is numerically constant (osc below 1e-14).
ExponentFit oscillation_exponent(const Solution& sol, const std::vector<double>& ladder,
                                 int samples = 4096, unsigned seed = 0);

/// Outcome of the err-corrected surface-to-bulk check at r = 1:
///   alpha_tilde * g(1) + coefficient * err <= s(1),
/// with coefficient = (n-2)/(Lambda alpha_tilde).  The sign of err is
/// reported separately: the corrected bound is only a theorem when
/// err >= 0, so callers should treat `pass` as arithmetic, not proof,
/// whenever err_nonnegative is false.
struct ErrCorrectedVerdict {
    double surface = 0;        // s(1)
    double bulk = 0;           // g(1)
    double err = 0;
    double coefficient = 0;    // (n-2)/(Lambda alpha_tilde)
    double alpha_tilde = 0;
    double corrected_lhs = 0;  // alpha_tilde * g(1) + coefficient * err
    double margin = 0;         // s(1) - corrected_lhs
    double tolerance = 0;
    bool err_nonnegative = false;
    bool pass = false;  // margin >= -tolerance * max(|s|, |corrected_lhs|)
};

/// Evaluate the corrected inequality from a Pohozaev report (supplying
/// err over the unit ball) and an energy profile whose ladder ends at
/// radius 1 (supplying g(1) and s(1)).  For constant fields err = 0 and
/// this reduces to verify_monotonicity at r = 1.
ErrCorrectedVerdict verify_err_corrected(const PohozaevReport& report,
                                         const EnergyProfile& profile, int n, double lambda,
                                         double Lambda, double tolerance);

}  // namespace elab
