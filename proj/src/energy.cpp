#include "elab/energy.hpp"

#include <cmath>

namespace elab {

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    if (order == 1)
        return {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, 2.0)};
    // Golub-Welsch: eigenvalues of the Jacobi matrix of the Legendre
    // three-term recurrence; weights from the first eigenvector components.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Eigen::VectorXd nodes = es.eigenvalues();
    Eigen::VectorXd weights(order);
    for (int i = 0; i < order; ++i) {
        const double v = es.eigenvectors()(0, i);
        weights[i] = 2.0 * v * v;
    }
    return {nodes, weights};
}

QuadratureRule QuadratureRule::disk(int radial, int n_theta, double r_min) {
    if (radial < 1 || n_theta < 4)
        throw std::invalid_argument("QuadratureRule::disk: radial >= 1 and n_theta >= 4 required");
    QuadratureRule rule;
    rule.dim = 2;
    rule.radial = radial;
    rule.n_theta = n_theta;
    rule.r_min = r_min;
    std::tie(rule.radial_nodes, rule.radial_weights) = gauss_legendre(radial);
    rule.directions.resize(2, n_theta);
    rule.direction_weights = Eigen::VectorXd::Constant(n_theta, 2.0 * M_PI / n_theta);
    for (int k = 0; k < n_theta; ++k) {
        const double th = 2.0 * M_PI * k / n_theta;
        rule.directions.col(k) << std::cos(th), std::sin(th);
    }
    return rule;
}

QuadratureRule QuadratureRule::ball(int radial, int n_theta, int n_phi, double r_min) {
    if (radial < 1 || n_theta < 2 || n_phi < 4)
        throw std::invalid_argument("QuadratureRule::ball: radial >= 1, n_theta >= 2, n_phi >= 4 required");
    QuadratureRule rule;
    rule.dim = 3;
    rule.radial = radial;
    rule.n_theta = n_theta;
    rule.n_phi = n_phi;
    rule.r_min = r_min;
    std::tie(rule.radial_nodes, rule.radial_weights) = gauss_legendre(radial);
    auto [mu, wmu] = gauss_legendre(n_theta);  // mu = cos(theta) on [-1, 1]
    rule.directions.resize(3, n_theta * n_phi);
    rule.direction_weights.resize(n_theta * n_phi);
    const double wphi = 2.0 * M_PI / n_phi;
    int col = 0;
    for (int j = 0; j < n_theta; ++j) {
        const double s = std::sqrt(std::max(0.0, 1.0 - mu[j] * mu[j]));
        for (int k = 0; k < n_phi; ++k, ++col) {
            const double ph = 2.0 * M_PI * k / n_phi;
            rule.directions.col(col) << s * std::cos(ph), s * std::sin(ph), mu[j];
            rule.direction_weights[col] = wmu[j] * wphi;
        }
    }
    return rule;
}

double integrate_sphere(const QuadratureRule& rule, double r, const PointFn& f) {
    if (!(r > 0)) throw std::domain_error("integrate_sphere: need r > 0");
    double sum = 0;
    const int m = static_cast<int>(rule.direction_weights.size());
    for (int j = 0; j < m; ++j)
        sum += rule.direction_weights[j] * f(r * rule.directions.col(j));
    return sum * std::pow(r, rule.dim - 1);
}

double integrate_ball(const QuadratureRule& rule, double r, const PointFn& f, double r_lo) {
    const double a = r_lo < 0 ? rule.r_min : r_lo;
    if (!(r > a) || a < 0) throw std::domain_error("integrate_ball: need 0 <= r_lo < r");
    const double mid = 0.5 * (a + r), half = 0.5 * (r - a);
    const int q = static_cast<int>(rule.radial_nodes.size());
    const int m = static_cast<int>(rule.direction_weights.size());
    double sum = 0;
    for (int i = 0; i < q; ++i) {
        const double rho = mid + half * rule.radial_nodes[i];
        double shell = 0;
        for (int j = 0; j < m; ++j)
            shell += rule.direction_weights[j] * f(rho * rule.directions.col(j));
        sum += half * rule.radial_weights[i] * std::pow(rho, rule.dim - 1) * shell;
    }
    return sum;
}

namespace {

double check_pair(const CoefficientField& field, const Solution& sol) {
    if (field.dim() != sol.dim)
        throw std::invalid_argument("energy: field and solution dimensions differ");
    return std::max(0.0, sol.core_radius);
}

}  // namespace

double bulk_energy(const CoefficientField& field, const Solution& sol, double r,
                   const QuadratureRule& rule) {
    const double a = std::max(rule.r_min, check_pair(field, sol));
    auto density = [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXd g = sol.gradient(x);
        return g.dot(field(x) * g);
    };
    double raw = integrate_ball(rule, r, density, a);
    if (a > 0 && sol.homogeneity && field.scale_invariant() && raw > 0) {
        // Homogeneous pairs obey g(r) = C r^beta exactly, so the missing
        // core below the truncation radius is a known fraction of the
        // annulus value.
        const double beta = rule.dim - 2 + 2.0 * (*sol.homogeneity);
        if (beta > 1e-12) raw /= 1.0 - std::pow(a / r, beta);
    }
    return raw;
}

double surface_energy(const CoefficientField& field, const Solution& sol, double r,
                      const QuadratureRule& rule) {
    check_pair(field, sol);
    return integrate_sphere(rule, r, [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXd g = sol.gradient(x);
        return g.dot(field(x) * g);
    });
}

double sphere_mean(const Solution& sol, double r, const QuadratureRule& rule) {
    const double area = rule.direction_weights.sum() * std::pow(r, rule.dim - 1);
    return integrate_sphere(rule, r, sol.value) / area;
}

std::pair<double, double> tangential_normal_integrals(const Solution& sol, double r,
                                                      const QuadratureRule& rule) {
    double tang = 0, norm = 0;
    const int m = static_cast<int>(rule.direction_weights.size());
    const double rpow = std::pow(r, rule.dim - 1);
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd x = r * rule.directions.col(j);
        const GradientSplit gs = gradient_split(sol, x);
        tang += rule.direction_weights[j] * gs.tangential.squaredNorm();
        norm += rule.direction_weights[j] * gs.normal * gs.normal;
    }
    return {tang * rpow, norm * rpow};
}

std::pair<double, double> sphere_poincare_sides(const Solution& sol, double r,
                                                const QuadratureRule& rule) {
    const double k = sphere_mean(sol, r, rule);
    const double lhs = integrate_sphere(rule, r, [&](const Eigen::VectorXd& x) {
        const double d = sol.value(x) - k;
        return d * d;
    });
    const double tang = tangential_normal_integrals(sol, r, rule).first;
    return {lhs, r * r / (rule.dim - 1) * tang};
}

double err_term(const CoefficientField& field, const Solution& sol,
                const QuadratureRule& rule) {
    const double a = std::max(rule.r_min, check_pair(field, sol));
    if (field.kind() == CoefficientField::Kind::Constant) return 0.0;
    const int n = field.dim();
    auto density = [&](const Eigen::VectorXd& x) {
        const Eigen::MatrixXd A = field(x);
        const Eigen::VectorXd g = sol.gradient(x);
        const Eigen::VectorXd Ag = A * g;
        const Eigen::VectorXd Ax = A * x;
        double trace_part = 0, mixed = 0, quad = 0;
        for (int i = 0; i < n; ++i) {
            const Eigen::MatrixXd Di = field.derivative(x, i);
            trace_part += Di.row(i).dot(x);
            mixed += Ag[i] * g.dot(Di * x);
            quad += Ax[i] * g.dot(Di * g);
        }
        return trace_part * g.dot(Ag) - 2.0 * mixed + quad;
    };
    return integrate_ball(rule, 1.0, density, a);
}

PohozaevReport pohozaev_report(const CoefficientField& field, const Solution& sol,
                               const QuadratureRule& rule) {
    const double a = std::max(rule.r_min, check_pair(field, sol));
    PohozaevReport rep;
    rep.field_label = field.label();
    rep.solution_label = sol.label;
    rep.lhs = integrate_sphere(rule, 1.0, [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXd g = sol.gradient(x);
        const Eigen::MatrixXd A = field(x);
        return g.dot(A * g) * x.dot(A * x);
    });
    rep.t_flux = 2.0 * integrate_sphere(rule, 1.0, [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXd g = sol.gradient(x);
        const double fn = x.dot(field(x) * g);
        return fn * fn;
    });
    rep.t_trace = integrate_ball(rule, 1.0, [&](const Eigen::VectorXd& x) {
        const Eigen::MatrixXd A = field(x);
        const Eigen::VectorXd g = sol.gradient(x);
        return A.trace() * g.dot(A * g);
    }, a);
    rep.t_sq = 2.0 * integrate_ball(rule, 1.0, [&](const Eigen::VectorXd& x) {
        return (field(x) * sol.gradient(x)).squaredNorm();
    }, a);
    rep.err = err_term(field, sol, rule);
    rep.residual = rep.lhs - (rep.t_flux + rep.t_trace - rep.t_sq + rep.err);
    const double scale = std::max({std::abs(rep.lhs), std::abs(rep.t_flux),
                                   std::abs(rep.t_trace), std::abs(rep.t_sq),
                                   std::abs(rep.err)});
    rep.relative_residual = scale > 0 ? std::abs(rep.residual) / scale : 0.0;
    return rep;
}

EnergyProfile energy_profile(const CoefficientField& field, const Solution& sol,
                             const std::vector<double>& ladder, const QuadratureRule& rule) {
    if (ladder.empty()) throw std::invalid_argument("energy_profile: empty ladder");
    for (size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0))
            throw std::invalid_argument("energy_profile: radii must be positive");
        if (i > 0 && !(ladder[i] > ladder[i - 1]))
            throw std::invalid_argument("energy_profile: radii must increase");
    }
    EnergyProfile prof;
    prof.dim = field.dim();
    prof.lambda = field.lambda();
    prof.Lambda = field.Lambda();
    prof.radii = ladder;
    prof.bulk.reserve(ladder.size());
    prof.surface.reserve(ladder.size());
    for (const double r : ladder) {
        prof.bulk.push_back(bulk_energy(field, sol, r, rule));
        prof.surface.push_back(surface_energy(field, sol, r, rule));
    }
    return prof;
}

std::vector<double> geometric_ladder(double lo, double hi, int count) {
    if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("geometric_ladder: need 0 < lo < hi");
    if (count < 2) throw std::invalid_argument("geometric_ladder: need count >= 2");
    std::vector<double> out;
    out.reserve(count);
    const double ratio = hi / lo;
    for (int i = 0; i < count; ++i)
        out.push_back(lo * std::pow(ratio, static_cast<double>(i) / (count - 1)));
    out.back() = hi;
    return out;
}

}  // namespace elab
