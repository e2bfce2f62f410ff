#include "elab/coefficient.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <random>

namespace elab {

namespace {

void require_square_symmetric(const Eigen::MatrixXd& A, const char* who) {
    if (A.rows() != A.cols() || A.rows() < 2)
        throw std::invalid_argument(std::string(who) + ": matrix must be square, n >= 2");
    const double scale = 1.0 + A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument(std::string(who) + ": matrix must be symmetric");
}

}  // namespace

CoefficientField CoefficientField::identity(int n) {
    return constant(Eigen::MatrixXd::Identity(n, n), 1.0, 1.0);
}

CoefficientField CoefficientField::constant(const Eigen::MatrixXd& A) {
    require_square_symmetric(A, "CoefficientField::constant");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    return constant(A, es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff());
}

CoefficientField CoefficientField::constant(const Eigen::MatrixXd& A, double lambda, double Lambda) {
    require_square_symmetric(A, "CoefficientField::constant");
    if (!(lambda > 0) || !(lambda <= Lambda))
        throw std::invalid_argument("CoefficientField::constant: need 0 < lambda <= Lambda");
    CoefficientField f;
    f.n_ = static_cast<int>(A.rows());
    f.kind_ = Kind::Constant;
    f.lambda_ = lambda;
    f.Lambda_ = Lambda;
    f.scale_invariant_ = true;
    f.const_A_ = A;
    f.label_ = "constant";
    return f;
}

CoefficientField CoefficientField::variable(int n, MatrixFn A, std::vector<MatrixFn> dA,
                                            double lambda, double Lambda,
                                            bool scale_invariant, double fd_step) {
    if (n < 2) throw std::invalid_argument("CoefficientField::variable: need n >= 2");
    if (!(lambda > 0) || !(lambda <= Lambda))
        throw std::invalid_argument("CoefficientField::variable: need 0 < lambda <= Lambda");
    if (!dA.empty() && static_cast<int>(dA.size()) != n)
        throw std::invalid_argument("CoefficientField::variable: need one derivative evaluator per axis");
    CoefficientField f;
    f.n_ = n;
    f.kind_ = Kind::Variable;
    f.lambda_ = lambda;
    f.Lambda_ = Lambda;
    f.scale_invariant_ = scale_invariant;
    f.fd_step_ = fd_step;
    f.eval_ = std::move(A);
    f.deriv_ = std::move(dA);
    f.label_ = "variable";
    return f;
}

CoefficientField CoefficientField::radial_anisotropy(double lambda, double Lambda) {
    if (!(lambda > 0) || !(lambda <= Lambda))
        throw std::invalid_argument("radial_anisotropy: need 0 < lambda <= Lambda");
    const double gap = Lambda - lambda;
    MatrixFn eval = [lambda, gap](const Eigen::VectorXd& x) {
        const double r2 = x.squaredNorm();
        if (r2 <= 0) throw std::domain_error("radial_anisotropy: undefined at the origin");
        Eigen::MatrixXd A = lambda * Eigen::MatrixXd::Identity(2, 2);
        A += (gap / r2) * (x * x.transpose());
        return A;
    };
    // d/dx_i [x_j x_k / r^2] = (d_ij x_k + d_ik x_j)/r^2 - 2 x_i x_j x_k / r^4
    std::vector<MatrixFn> dA;
    for (int i = 0; i < 2; ++i) {
        dA.push_back([i, gap](const Eigen::VectorXd& x) {
            const double r2 = x.squaredNorm();
            if (r2 <= 0) throw std::domain_error("radial_anisotropy: undefined at the origin");
            Eigen::MatrixXd D(2, 2);
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    double v = 0;
                    if (i == j) v += x[k];
                    if (i == k) v += x[j];
                    D(j, k) = gap * (v / r2 - 2.0 * x[i] * x[j] * x[k] / (r2 * r2));
                }
            return D;
        });
    }
    CoefficientField f = variable(2, std::move(eval), std::move(dA), lambda, Lambda, true);
    f.label_ = "ps2d(" + std::to_string(lambda) + "," + std::to_string(Lambda) + ")";
    return f;
}

CoefficientField CoefficientField::isotropic_bump(int n, double eps) {
    if (n < 2) throw std::invalid_argument("isotropic_bump: need n >= 2");
    if (!(eps > -1.0)) throw std::invalid_argument("isotropic_bump: need eps > -1");
    MatrixFn eval = [n, eps](const Eigen::VectorXd& x) {
        return (1.0 + eps * x.squaredNorm()) * Eigen::MatrixXd::Identity(n, n);
    };
    std::vector<MatrixFn> dA;
    for (int i = 0; i < n; ++i)
        dA.push_back([n, eps, i](const Eigen::VectorXd& x) {
            return (2.0 * eps * x[i]) * Eigen::MatrixXd::Identity(n, n);
        });
    const double lo = std::min(1.0, 1.0 + eps), hi = std::max(1.0, 1.0 + eps);
    CoefficientField f = variable(n, std::move(eval), std::move(dA), lo, hi, false);
    f.label_ = "bump(" + std::to_string(eps) + ")";
    return f;
}

CoefficientField CoefficientField::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        const auto rows = j.at("matrix");
        const int n = static_cast<int>(rows.size());
        Eigen::MatrixXd A(n, n);
        for (int r = 0; r < n; ++r) {
            if (static_cast<int>(rows[r].size()) != n)
                throw std::invalid_argument("field descriptor: ragged matrix");
            for (int c = 0; c < n; ++c) A(r, c) = rows[r][c].get<double>();
        }
        if (j.contains("lambda") && j.contains("Lambda"))
            return constant(A, j["lambda"].get<double>(), j["Lambda"].get<double>());
        return constant(A);
    }
    if (kind == "builtin") {
        const std::string name = j.at("name").get<std::string>();
        if (name == "identity") return identity(j.value("n", 2));
        if (name == "ps2d")
            return radial_anisotropy(j.at("lambda").get<double>(), j.at("Lambda").get<double>());
        if (name == "bump") return isotropic_bump(j.value("n", 2), j.at("eps").get<double>());
        throw std::invalid_argument("field descriptor: unknown builtin '" + name + "'");
    }
    throw std::invalid_argument("field descriptor: unknown kind '" + kind + "'");
}

Eigen::MatrixXd CoefficientField::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != n_) throw std::invalid_argument("CoefficientField: wrong point dimension");
    if (kind_ == Kind::Constant) return const_A_;
    return eval_(x);
}

Eigen::MatrixXd CoefficientField::derivative(const Eigen::VectorXd& x, int i) const {
    if (i < 0 || i >= n_) throw std::invalid_argument("CoefficientField::derivative: bad axis");
    if (kind_ == Kind::Constant) return Eigen::MatrixXd::Zero(n_, n_);
    if (!deriv_.empty()) return deriv_[i](x);
    if (fd_step_ > 0) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += fd_step_;
        xm[i] -= fd_step_;
        return (eval_(xp) - eval_(xm)) / (2.0 * fd_step_);
    }
    throw CapabilityError("CoefficientField: no derivative data for this field");
}

Eigen::MatrixXd PolarBlocks::assemble() const {
    const int n = static_cast<int>(p12.size()) + 1;
    Eigen::MatrixXd P(n, n);
    P(0, 0) = p11;
    P.block(0, 1, 1, n - 1) = p12.transpose();
    P.block(1, 0, n - 1, 1) = p12;
    P.block(1, 1, n - 1, n - 1) = p22;
    return P;
}

Eigen::MatrixXd polar_frame(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("polar_frame: need n >= 2");
    const double r = x.norm();
    if (!(r > 0)) throw std::domain_error("polar_frame: undefined at the origin");
    Eigen::VectorXd u = x / r;
    Eigen::VectorXd v = u;
    v[0] -= 1.0;
    const double vv = v.squaredNorm();
    if (vv < 1e-28) return Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n);
    Q -= (2.0 / vv) * (v * v.transpose());
    return Q;
}

PolarBlocks polar_blocks(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd P = Q.transpose() * A * Q;
    PolarBlocks b;
    b.p11 = P(0, 0);
    b.p12 = P.block(1, 0, n - 1, 1);
    b.p22 = P.block(1, 1, n - 1, n - 1);
    b.frame = Q;
    return b;
}

PolarBlocks polar_conjugate(const CoefficientField& field, const Eigen::VectorXd& x) {
    return polar_blocks(field(x), polar_frame(x));
}

double schur_gap(const PolarBlocks& blocks, double lambda, const Eigen::VectorXd& xi) {
    if (xi.size() != blocks.p12.size())
        throw std::invalid_argument("schur_gap: direction must have length n-1");
    const double quad = xi.dot(blocks.p22 * xi);
    const double mixed = blocks.p12.dot(xi);
    return blocks.p11 * quad - mixed * mixed - lambda * blocks.p11 * xi.squaredNorm();
}

EllipticityReport check_ellipticity(const CoefficientField& field,
                                    const std::vector<Eigen::VectorXd>& samples,
                                    int trials, double tol, unsigned seed) {
    if (samples.empty()) throw std::invalid_argument("check_ellipticity: no sample points");
    if (trials < 1) throw std::invalid_argument("check_ellipticity: need trials >= 1");
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    EllipticityReport rep;
    rep.lambda = field.lambda();
    rep.Lambda = field.Lambda();
    rep.tolerance = tol;
    rep.samples = static_cast<int>(samples.size());
    rep.trials = trials;
    rep.min_quotient = std::numeric_limits<double>::infinity();
    rep.max_quotient = -std::numeric_limits<double>::infinity();

    const int n = field.dim();
    for (const auto& x : samples) {
        const Eigen::MatrixXd A = field(x);
        const double scale = 1.0 + A.cwiseAbs().maxCoeff();
        if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::runtime_error("check_ellipticity: coefficient matrix not symmetric at a sample point");
        for (int t = 0; t < trials; ++t) {
            Eigen::VectorXd xi(n);
            do {
                for (int k = 0; k < n; ++k) xi[k] = gauss(rng);
            } while (xi.norm() < 1e-12);
            xi.normalize();
            const double q = xi.dot(A * xi);
            rep.min_quotient = std::min(rep.min_quotient, q);
            rep.max_quotient = std::max(rep.max_quotient, q);
        }
    }
    rep.pass = rep.min_quotient >= rep.lambda - tol && rep.max_quotient <= rep.Lambda + tol;
    return rep;
}

}  // namespace elab
