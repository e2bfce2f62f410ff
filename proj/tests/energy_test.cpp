#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "elab/energy.hpp"
#include "elab/solutions.hpp"

using namespace elab;

namespace {
constexpr double kPi = 3.14159265358979323846;

Solution norm_squared(int n) {
    Solution s;
    s.dim = n;
    s.value = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    s.gradient = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(2.0 * x); };
    s.homogeneity = 2.0;
    s.label = "norm2";
    return s;
}
}  // namespace

TEST_SUITE("energy") {

TEST_CASE("gauss-legendre rule") {
    auto [nodes, weights] = gauss_legendre(8);
    CHECK(nodes.size() == 8);
    CHECK(weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    double m1 = 0, m2 = 0, m14 = 0;
    for (int i = 0; i < 8; ++i) {
        m1 += weights[i] * nodes[i];
        m2 += weights[i] * nodes[i] * nodes[i];
        m14 += weights[i] * std::pow(nodes[i], 14);
    }
    CHECK(std::abs(m1) < 1e-15);
    CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // 8 nodes integrate degree 15 exactly.
    CHECK(m14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("quadrature reproduces ball and sphere measures") {
    const QuadratureRule disk = QuadratureRule::disk();
    const QuadratureRule ball = QuadratureRule::ball();
    auto one = [](const Eigen::VectorXd&) { return 1.0; };
    CHECK(integrate_ball(disk, 1.0, one) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(integrate_sphere(disk, 1.0, one) == doctest::Approx(2 * kPi).epsilon(1e-13));
    CHECK(integrate_ball(ball, 1.0, one) == doctest::Approx(4 * kPi / 3).epsilon(1e-13));
    CHECK(integrate_sphere(ball, 1.0, one) == doctest::Approx(4 * kPi).epsilon(1e-13));

    CHECK(integrate_ball(disk, 0.5, one) == doctest::Approx(kPi / 4).epsilon(1e-13));
    // Annulus via explicit lower radius.
    CHECK(integrate_ball(disk, 1.0, one, 0.5) ==
          doctest::Approx(0.75 * kPi).epsilon(1e-13));

    // Direction weights integrate the unit sphere.
    CHECK(disk.direction_weights.sum() == doctest::Approx(2 * kPi).epsilon(1e-13));
    CHECK(ball.direction_weights.sum() == doctest::Approx(4 * kPi).epsilon(1e-13));
    for (int i = 0; i < 5; ++i)
        CHECK(disk.directions.col(i).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("polynomial moments on ball and sphere") {
    const QuadratureRule disk = QuadratureRule::disk();
    const QuadratureRule ball = QuadratureRule::ball();
    auto x1sq = [](const Eigen::VectorXd& x) { return x[0] * x[0]; };
    auto x1sqx2sq = [](const Eigen::VectorXd& x) { return x[0] * x[0] * x[1] * x[1]; };
    CHECK(integrate_sphere(disk, 1.0, x1sq) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(integrate_sphere(ball, 1.0, x1sq) == doctest::Approx(4 * kPi / 3).epsilon(1e-13));
    CHECK(integrate_sphere(ball, 1.0, x1sqx2sq) ==
          doctest::Approx(4 * kPi / 15).epsilon(1e-12));
    CHECK(integrate_ball(ball, 1.0, x1sq) == doctest::Approx(4 * kPi / 15).epsilon(1e-12));

    const Solution q2 = norm_squared(2);
    CHECK(sphere_mean(harmonic_polynomial(2, 1, 0), 1.0, disk) ==
          doctest::Approx(0.0).epsilon(1e-13));
    CHECK(sphere_mean(q2, 0.7, disk) == doctest::Approx(0.49).epsilon(1e-13));
    // mean of x1^2 over the unit circle/sphere: 1/2 and 1/3.
    auto x1sq_sol = [] {
        Solution s;
        s.dim = 2;
        s.value = [](const Eigen::VectorXd& x) { return x[0] * x[0]; };
        s.gradient = [](const Eigen::VectorXd& x) {
            return Eigen::VectorXd(Eigen::Vector2d(2 * x[0], 0));
        };
        return s;
    }();
    CHECK(sphere_mean(x1sq_sol, 1.0, disk) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("bulk and surface energy oracles") {
    const QuadratureRule disk = QuadratureRule::disk();
    const QuadratureRule ball = QuadratureRule::ball();
    const CoefficientField I2 = CoefficientField::identity(2);
    const CoefficientField I3 = CoefficientField::identity(3);
    const Solution x1 = harmonic_polynomial(2, 1, 0);
    const Solution x1x2 = harmonic_polynomial(3, 2, 0);

    CHECK(bulk_energy(I2, x1, 1.0, disk) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(surface_energy(I2, x1, 1.0, disk) == doctest::Approx(2 * kPi).epsilon(1e-13));
    CHECK(bulk_energy(I3, x1x2, 1.0, ball) ==
          doctest::Approx(8 * kPi / 15).epsilon(1e-12));
    CHECK(surface_energy(I3, x1x2, 1.0, ball) ==
          doctest::Approx(8 * kPi / 3).epsilon(1e-12));

    // Homogeneous scaling g(r) = g(1) r^(n-2+2k).
    CHECK(bulk_energy(I2, x1, 0.3, disk) ==
          doctest::Approx(kPi * 0.09).epsilon(1e-12));
    CHECK(bulk_energy(I3, x1x2, 0.5, ball) ==
          doctest::Approx(8 * kPi / 15 * std::pow(0.5, 5.0)).epsilon(1e-12));
}

TEST_CASE("extremal pair energies close the truncated core exactly") {
    auto [field, u] = ps_example(1.0, 4.0);
    const QuadratureRule disk = QuadratureRule::disk();
    // Energy density is lambda r^(2 alpha - 2) = 1/r, so g(r) = 2 pi r
    // once the truncated core is restored by the power law.
    CHECK(bulk_energy(field, u, 1.0, disk) == doctest::Approx(2 * kPi).epsilon(1e-10));
    CHECK(bulk_energy(field, u, 0.4, disk) ==
          doctest::Approx(0.8 * kPi).epsilon(1e-10));
    CHECK(surface_energy(field, u, 1.0, disk) == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(surface_energy(field, u, 0.25, disk) ==
          doctest::Approx(2 * kPi).epsilon(1e-12));  // s(r) = 2 pi r^(2a-1) * r^... = 2 pi
}

TEST_CASE("tangential and normal surface integrals") {
    const QuadratureRule disk = QuadratureRule::disk();
    const QuadratureRule ball = QuadratureRule::ball();
    auto [t2, n2] = tangential_normal_integrals(harmonic_polynomial(2, 1, 0), 1.0, disk);
    CHECK(t2 == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(n2 == doctest::Approx(kPi).epsilon(1e-12));
    auto [t3, n3] = tangential_normal_integrals(harmonic_polynomial(3, 1, 0), 1.0, ball);
    CHECK(t3 == doctest::Approx(8 * kPi / 3).epsilon(1e-12));
    CHECK(n3 == doctest::Approx(4 * kPi / 3).epsilon(1e-12));
    auto [tq, nq] = tangential_normal_integrals(harmonic_polynomial(3, 2, 0), 1.0, ball);
    CHECK(tq == doctest::Approx(8 * kPi / 5).epsilon(1e-12));
    CHECK(nq == doctest::Approx(16 * kPi / 15).epsilon(1e-12));

    // The split recombines to the full surface energy for A = I.
    const CoefficientField I3 = CoefficientField::identity(3);
    CHECK(tq + nq ==
          doctest::Approx(surface_energy(I3, harmonic_polynomial(3, 2, 0), 1.0, ball))
              .epsilon(1e-12));
}

TEST_CASE("sphere poincare sides") {
    const QuadratureRule disk = QuadratureRule::disk();
    const QuadratureRule ball = QuadratureRule::ball();
    // Equality for first harmonics.
    auto [l2, r2] = sphere_poincare_sides(harmonic_polynomial(2, 1, 0), 1.0, disk);
    CHECK(l2 == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(r2 == doctest::Approx(kPi).epsilon(1e-12));
    auto [l3, r3] = sphere_poincare_sides(harmonic_polynomial(3, 1, 2), 1.0, ball);
    CHECK(l3 == doctest::Approx(r3).epsilon(1e-10));

    // Strict inequality for a second harmonic: lhs = pi, rhs = 4 pi.
    auto [lq, rq] = sphere_poincare_sides(harmonic_polynomial(2, 2, 0), 1.0, disk);
    CHECK(lq == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(rq == doctest::Approx(4 * kPi).epsilon(1e-12));

    // The scale r^2/(n-1) makes both sides degree 2k+n-1 homogeneous in r.
    auto [ls, rs] = sphere_poincare_sides(harmonic_polynomial(2, 1, 0), 0.5, disk);
    CHECK(ls == doctest::Approx(kPi / 8).epsilon(1e-12));
    CHECK(rs == doctest::Approx(kPi / 8).epsilon(1e-12));
}

TEST_CASE("pohozaev identity for constant fields") {
    const QuadratureRule disk = QuadratureRule::disk();
    const QuadratureRule ball = QuadratureRule::ball();
    const CoefficientField I2 = CoefficientField::identity(2);
    const CoefficientField I3 = CoefficientField::identity(3);

    const PohozaevReport p2 = pohozaev_report(I2, harmonic_polynomial(2, 1, 0), disk);
    CHECK(p2.lhs == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(p2.t_flux == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(p2.t_trace == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(p2.t_sq == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(p2.err == 0.0);  // short-circuited, not merely small
    CHECK(std::abs(p2.relative_residual) < 1e-12);
    CHECK(p2.field_label == "constant");

    const PohozaevReport p3 = pohozaev_report(I3, harmonic_polynomial(3, 2, 0), ball);
    CHECK(p3.lhs == doctest::Approx(8 * kPi / 3).epsilon(1e-12));
    CHECK(p3.t_flux == doctest::Approx(32 * kPi / 15).epsilon(1e-12));
    CHECK(p3.t_trace == doctest::Approx(24 * kPi / 15).epsilon(1e-12));
    CHECK(p3.t_sq == doctest::Approx(16 * kPi / 15).epsilon(1e-12));
    CHECK(p3.err == 0.0);
    CHECK(std::abs(p3.relative_residual) < 1e-12);

    // Every harmonic basis element closes the identity.
    for (int k = 1; k <= 3; ++k)
        for (int i = 0; i < harmonic_basis_size(3, k); ++i) {
            const PohozaevReport p =
                pohozaev_report(I3, harmonic_polynomial(3, k, i), ball);
            CHECK(std::abs(p.relative_residual) < 1e-10);
        }
}

TEST_CASE("pohozaev identity for the extremal pair") {
    auto [field, u] = ps_example(1.0, 4.0);
    const QuadratureRule disk = QuadratureRule::disk();
    const PohozaevReport p = pohozaev_report(field, u, disk);
    // lhs = 2 pi lambda Lambda; flux carries all of it; the bulk terms cancel.
    CHECK(p.lhs == doctest::Approx(8 * kPi).epsilon(1e-10));
    CHECK(p.t_flux == doctest::Approx(8 * kPi).epsilon(1e-10));
    const double annulus = 10 * kPi * (1 - 1e-4);  // truncated at the core radius
    CHECK(p.t_trace == doctest::Approx(annulus).epsilon(1e-8));
    CHECK(p.t_sq == doctest::Approx(annulus).epsilon(1e-8));
    CHECK(std::abs(p.err) < 1e-12);
    CHECK(std::abs(p.relative_residual) < 1e-12);
}

TEST_CASE("pohozaev flags a non-solution") {
    const QuadratureRule disk = QuadratureRule::disk();
    const CoefficientField I2 = CoefficientField::identity(2);
    const PohozaevReport p = pohozaev_report(I2, norm_squared(2), disk);
    // div(grad |x|^2) = 4: the defect is -2 int 4 <x, 2x> = -8 pi.
    CHECK(p.residual == doctest::Approx(-8 * kPi).epsilon(1e-12));
    CHECK(std::abs(p.relative_residual) > 0.1);
}

TEST_CASE("err term") {
    const QuadratureRule disk = QuadratureRule::disk();
    CHECK(err_term(CoefficientField::identity(2), harmonic_polynomial(2, 2, 0), disk) ==
          0.0);
    auto [field, u] = ps_example(1.0, 4.0);
    CHECK(std::abs(err_term(field, u, disk)) < 1e-12);
}

TEST_CASE("energy profile and ladders") {
    const std::vector<double> ladder = geometric_ladder(0.1, 1.0, 12);
    REQUIRE(ladder.size() == 12);
    CHECK(ladder.front() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(ladder.back() == doctest::Approx(1.0).epsilon(1e-14));
    for (size_t i = 2; i < ladder.size(); ++i)
        CHECK(ladder[i] / ladder[i - 1] ==
              doctest::Approx(ladder[1] / ladder[0]).epsilon(1e-12));

    const CoefficientField I2 = CoefficientField::identity(2);
    const Solution u = harmonic_polynomial(2, 2, 0);
    const QuadratureRule disk = QuadratureRule::disk();
    const EnergyProfile prof = energy_profile(I2, u, ladder, disk);
    CHECK(prof.dim == 2);
    CHECK(prof.lambda == 1.0);
    CHECK(prof.Lambda == 1.0);
    REQUIRE(prof.radii.size() == 12);
    REQUIRE(prof.bulk.size() == 12);
    REQUIRE(prof.surface.size() == 12);
    for (size_t i = 0; i < ladder.size(); ++i) {
        const double r = ladder[i];
        // g = 2 pi r^4, s = 8 pi r^3 for u = x1^2 - x2^2.
        CHECK(prof.bulk[i] == doctest::Approx(2 * kPi * std::pow(r, 4)).epsilon(1e-11));
        CHECK(prof.surface[i] == doctest::Approx(8 * kPi * std::pow(r, 3)).epsilon(1e-11));
    }

    // d/dr of the bulk energy is the surface energy (fundamental theorem);
    // centered differences on a fine ladder land within 1%.
    const std::vector<double> fine = geometric_ladder(0.5, 1.0, 24);
    const EnergyProfile pf = energy_profile(I2, u, fine, disk);
    for (size_t i = 1; i + 1 < fine.size(); ++i) {
        const double fd = (pf.bulk[i + 1] - pf.bulk[i - 1]) /
                          (pf.radii[i + 1] - pf.radii[i - 1]);
        CHECK(std::abs(fd / pf.surface[i] - 1.0) < 0.01);
    }
}

}  // TEST_SUITE
