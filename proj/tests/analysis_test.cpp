#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "elab/analysis.hpp"
#include "elab/energy.hpp"
#include "elab/solutions.hpp"

using namespace elab;

namespace {
constexpr double kPi = 3.14159265358979323846;

EnergyProfile profile_of(const CoefficientField& field, const Solution& u,
                         const std::vector<double>& ladder) {
    const QuadratureRule rule =
        field.dim() == 2 ? QuadratureRule::disk() : QuadratureRule::ball();
    return energy_profile(field, u, ladder, rule);
}
}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("surface-to-bulk ratios of model solutions") {
    const std::vector<double> ladder = geometric_ladder(0.1, 1.0, 12);

    // Degree-1 harmonic in n = 3: ratio n - 2 + 2k = 3 at every radius.
    const EnergyProfile p3 = profile_of(CoefficientField::identity(3),
                                        harmonic_polynomial(3, 1, 0), ladder);
    const MonotonicityVerdict v3 = verify_monotonicity(p3, 3.0, 1e-9);
    CHECK(v3.pass);
    CHECK(std::abs(v3.margin) < 1e-10);
    for (double rho : v3.ratios) CHECK(rho == doctest::Approx(3.0).epsilon(1e-11));

    // Degree-2 harmonic in n = 3: ratio 5, so margin 2 above the bound 3.
    const EnergyProfile p32 = profile_of(CoefficientField::identity(3),
                                         harmonic_polynomial(3, 2, 0), ladder);
    const MonotonicityVerdict v32 = verify_monotonicity(p32, 3.0, 1e-9);
    CHECK(v32.pass);
    CHECK(v32.margin == doctest::Approx(2.0).epsilon(1e-9));

    // Planar degree-2 harmonic: ratio 4.
    const EnergyProfile p22 = profile_of(CoefficientField::identity(2),
                                         harmonic_polynomial(2, 2, 0), ladder);
    const MonotonicityVerdict v22 = verify_monotonicity(p22, 2.0, 1e-9);
    CHECK(v22.margin == doctest::Approx(2.0).epsilon(1e-9));

    // Extremal pair: the bound 1 = alpha_tilde(2,1,4) is attained exactly.
    auto [field, u] = ps_example(1.0, 4.0);
    const EnergyProfile ps = profile_of(field, u, ladder);
    const MonotonicityVerdict vps = verify_monotonicity(ps, 1.0, 1e-6);
    CHECK(vps.pass);
    CHECK(std::abs(vps.margin) < 1e-9);
    for (double rho : vps.ratios) CHECK(rho == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(v3.radii == ladder);
    CHECK(v3.constant == 3.0);
}

TEST_CASE("monotonicity guards") {
    const std::vector<double> ladder = geometric_ladder(0.1, 1.0, 6);
    const EnergyProfile p = profile_of(CoefficientField::identity(2),
                                       harmonic_polynomial(2, 1, 0), ladder);
    CHECK_THROWS_AS(verify_monotonicity(p, 0.0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(verify_monotonicity(p, -1.0, 1e-9), std::invalid_argument);

    // Numerically zero solution.
    const EnergyProfile zero = profile_of(CoefficientField::identity(2),
                                          affine(Eigen::Vector2d::Zero()), ladder);
    CHECK_THROWS_AS(verify_monotonicity(zero, 1.0, 1e-9), std::domain_error);
}

TEST_CASE("planar estimate with constant 2 sqrt(lambda/Lambda)") {
    const std::vector<double> ladder = geometric_ladder(0.1, 1.0, 12);
    auto [field, u] = ps_example(1.0, 4.0);
    const EnergyProfile ps = profile_of(field, u, ladder);
    // 2 sqrt(1/4) = 1 and the ratio is identically 1: equality.
    const MonotonicityVerdict v = verify_2d_estimate(ps, 1.0, 4.0, 1e-8);
    CHECK(v.pass);
    CHECK(v.constant == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(v.margin) < 1e-8);

    // Identity field, degree-1: ratio 2 against constant 2, equality again.
    const EnergyProfile p1 = profile_of(CoefficientField::identity(2),
                                        harmonic_polynomial(2, 1, 0), ladder);
    const MonotonicityVerdict v1 = verify_2d_estimate(p1, 1.0, 1.0, 1e-8);
    CHECK(v1.pass);
    CHECK(std::abs(v1.margin) < 1e-9);

    // Degree-2: strict slack 2.
    const EnergyProfile p2 = profile_of(CoefficientField::identity(2),
                                        harmonic_polynomial(2, 2, 0), ladder);
    const MonotonicityVerdict v2 = verify_2d_estimate(p2, 1.0, 1.0, 1e-8);
    CHECK(v2.margin == doctest::Approx(2.0).epsilon(1e-9));

    const EnergyProfile p3 = profile_of(CoefficientField::identity(3),
                                        harmonic_polynomial(3, 1, 0), ladder);
    CHECK_THROWS_AS(verify_2d_estimate(p3, 1.0, 1.0, 1e-8), std::invalid_argument);
}

TEST_CASE("decay exponent fits") {
    const std::vector<double> ladder = geometric_ladder(0.05, 1.0, 14);

    const EnergyProfile p1 = profile_of(CoefficientField::identity(2),
                                        harmonic_polynomial(2, 1, 0), ladder);
    const ExponentFit f1 = decay_exponent(p1);
    CHECK(f1.slope == doctest::Approx(2.0).epsilon(1e-9));
    REQUIRE(f1.alpha_implied.has_value());
    CHECK(*f1.alpha_implied == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(!f1.alpha_osc.has_value());
    CHECK(f1.points == 14);
    CHECK(f1.max_residual < 1e-9);
    CHECK(f1.slope_stderr < 1e-9);

    const EnergyProfile p32 = profile_of(CoefficientField::identity(3),
                                         harmonic_polynomial(3, 2, 0), ladder);
    const ExponentFit f32 = decay_exponent(p32);
    CHECK(f32.slope == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(*f32.alpha_implied == doctest::Approx(2.0).epsilon(1e-8));

    auto [field, u] = ps_example(1.0, 4.0);
    const ExponentFit fps = decay_exponent(profile_of(field, u, ladder));
    CHECK(fps.slope == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(*fps.alpha_implied == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("decay exponent guards") {
    const std::vector<double> short_ladder = geometric_ladder(0.1, 1.0, 4);
    const EnergyProfile ps = profile_of(CoefficientField::identity(2),
                                        harmonic_polynomial(2, 1, 0), short_ladder);
    CHECK_THROWS_AS(decay_exponent(ps), std::invalid_argument);

    const std::vector<double> narrow = geometric_ladder(0.5, 1.0, 8);
    const EnergyProfile pn = profile_of(CoefficientField::identity(2),
                                        harmonic_polynomial(2, 1, 0), narrow);
    CHECK_THROWS_AS(decay_exponent(pn), std::invalid_argument);
}

TEST_CASE("oscillation exponent") {
    const std::vector<double> ladder = geometric_ladder(0.05, 0.8, 10);

    auto [field, u] = ps_example(1.0, 4.0);
    const ExponentFit fps = oscillation_exponent(u, ladder);
    REQUIRE(fps.alpha_osc.has_value());
    CHECK(std::abs(*fps.alpha_osc - 0.5) < 0.02);
    CHECK(!fps.alpha_implied.has_value());

    const ExponentFit f1 = oscillation_exponent(harmonic_polynomial(2, 1, 0), ladder);
    CHECK(std::abs(*f1.alpha_osc - 1.0) < 0.05);
    const ExponentFit f2 = oscillation_exponent(harmonic_polynomial(2, 2, 0), ladder);
    CHECK(std::abs(*f2.alpha_osc - 2.0) < 0.05);
    const ExponentFit f31 = oscillation_exponent(harmonic_polynomial(3, 1, 1), ladder);
    CHECK(std::abs(*f31.alpha_osc - 1.0) < 0.05);

    CHECK_THROWS_AS(oscillation_exponent(harmonic_polynomial(2, 0, 0), ladder),
                    std::domain_error);
    CHECK_THROWS_AS(oscillation_exponent(u, {0.1, 0.2, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(oscillation_exponent(u, ladder, 4), std::invalid_argument);
}

TEST_CASE("err-corrected bound at the unit radius") {
    const std::vector<double> ladder = geometric_ladder(0.1, 1.0, 8);
    const QuadratureRule disk = QuadratureRule::disk();
    const QuadratureRule ball = QuadratureRule::ball();

    // Constant planar field: err = 0 and the weight vanishes; degree-1 data
    // achieve equality s(1) = 2 g(1).
    const CoefficientField I2 = CoefficientField::identity(2);
    const Solution x1 = harmonic_polynomial(2, 1, 0);
    const ErrCorrectedVerdict v =
        verify_err_corrected(pohozaev_report(I2, x1, disk),
                             energy_profile(I2, x1, ladder, disk), 2, 1.0, 1.0, 1e-8);
    CHECK(v.pass);
    CHECK(v.err == 0.0);
    CHECK(v.err_nonnegative);
    CHECK(v.coefficient == 0.0);
    CHECK(v.alpha_tilde == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(v.surface == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(v.bulk == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(std::abs(v.margin) < 1e-10);

    // Extremal pair: sharpness at r = 1.
    auto [field, u] = ps_example(1.0, 4.0);
    const ErrCorrectedVerdict vps =
        verify_err_corrected(pohozaev_report(field, u, disk),
                             energy_profile(field, u, ladder, disk), 2, 1.0, 4.0, 1e-6);
    CHECK(vps.pass);
    CHECK(std::abs(vps.margin) < 1e-8);

    // n = 3 with slack: s = 8 pi/3, corrected lhs = 3 * 8 pi/15.
    const CoefficientField I3 = CoefficientField::identity(3);
    const Solution q = harmonic_polynomial(3, 2, 0);
    const ErrCorrectedVerdict v3 =
        verify_err_corrected(pohozaev_report(I3, q, ball),
                             energy_profile(I3, q, ladder, ball), 3, 1.0, 1.0, 1e-8);
    CHECK(v3.pass);
    CHECK(v3.corrected_lhs == doctest::Approx(8 * kPi / 5).epsilon(1e-11));
    CHECK(v3.margin == doctest::Approx(8 * kPi / 3 - 8 * kPi / 5).epsilon(1e-10));

    // The profile must reach radius 1.
    const std::vector<double> off = geometric_ladder(0.1, 0.9, 8);
    CHECK_THROWS_AS(
        verify_err_corrected(pohozaev_report(I2, x1, disk),
                             energy_profile(I2, x1, off, disk), 2, 1.0, 1.0, 1e-8),
        std::invalid_argument);
}

}  // TEST_SUITE
