#include "elab/solutions.hpp"

#include <array>
#include <cmath>
#include <memory>

namespace elab {

namespace {

// Sparse monomial polynomial in up to three variables.
struct Poly {
    struct Term {
        double c;
        std::array<int, 3> e;
    };
    int n = 2;
    std::vector<Term> terms;

    double eval(const Eigen::VectorXd& x) const {
        double s = 0;
        for (const auto& t : terms) {
            double m = t.c;
            for (int k = 0; k < n; ++k)
                for (int p = 0; p < t.e[k]; ++p) m *= x[k];
            s += m;
        }
        return s;
    }

    Eigen::VectorXd grad(const Eigen::VectorXd& x) const {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        for (const auto& t : terms)
            for (int k = 0; k < n; ++k) {
                if (t.e[k] == 0) continue;
                double m = t.c * t.e[k];
                for (int j = 0; j < n; ++j) {
                    const int p = t.e[j] - (j == k ? 1 : 0);
                    for (int q = 0; q < p; ++q) m *= x[j];
                }
                g[k] += m;
            }
        return g;
    }
};

Solution from_poly(Poly poly, int degree, std::string label) {
    auto p = std::make_shared<Poly>(std::move(poly));
    Solution s;
    s.dim = p->n;
    s.value = [p](const Eigen::VectorXd& x) { return p->eval(x); };
    s.gradient = [p](const Eigen::VectorXd& x) { return p->grad(x); };
    s.homogeneity = static_cast<double>(degree);
    s.label = std::move(label);
    return s;
}

Poly basis2(int degree, int index) {
    switch (degree) {
        case 0: return {2, {{1, {0, 0, 0}}}};
        case 1:
            return index == 0 ? Poly{2, {{1, {1, 0, 0}}}} : Poly{2, {{1, {0, 1, 0}}}};
        case 2:
            return index == 0 ? Poly{2, {{1, {2, 0, 0}}, {-1, {0, 2, 0}}}}
                              : Poly{2, {{1, {1, 1, 0}}}};
        default:
            return index == 0 ? Poly{2, {{1, {3, 0, 0}}, {-3, {1, 2, 0}}}}
                              : Poly{2, {{3, {2, 1, 0}}, {-1, {0, 3, 0}}}};
    }
}

Poly basis3(int degree, int index) {
    switch (degree) {
        case 0: return {3, {{1, {0, 0, 0}}}};
        case 1: {
            Poly p{3, {{1, {0, 0, 0}}}};
            p.terms[0].e = {0, 0, 0};
            p.terms[0].e[index] = 1;
            return p;
        }
        case 2:
            switch (index) {
                case 0: return {3, {{1, {1, 1, 0}}}};
                case 1: return {3, {{1, {0, 1, 1}}}};
                case 2: return {3, {{1, {1, 0, 1}}}};
                case 3: return {3, {{1, {2, 0, 0}}, {-1, {0, 2, 0}}}};
                default: return {3, {{2, {0, 0, 2}}, {-1, {2, 0, 0}}, {-1, {0, 2, 0}}}};
            }
        default:
            switch (index) {
                case 0: return {3, {{1, {3, 0, 0}}, {-3, {1, 2, 0}}}};
                case 1: return {3, {{3, {2, 1, 0}}, {-1, {0, 3, 0}}}};
                case 2: return {3, {{1, {2, 0, 1}}, {-1, {0, 2, 1}}}};
                case 3: return {3, {{1, {1, 1, 1}}}};
                case 4: return {3, {{4, {1, 0, 2}}, {-1, {3, 0, 0}}, {-1, {1, 2, 0}}}};
                case 5: return {3, {{4, {0, 1, 2}}, {-1, {0, 3, 0}}, {-1, {2, 1, 0}}}};
                default: return {3, {{2, {0, 0, 3}}, {-3, {2, 0, 1}}, {-3, {0, 2, 1}}}};
            }
    }
}

}  // namespace

int harmonic_basis_size(int n, int degree) {
    if (degree < 0 || degree > 3) throw std::invalid_argument("harmonic_basis_size: degree must be 0..3");
    if (n == 2) return degree == 0 ? 1 : 2;
    if (n == 3) return 2 * degree + 1;
    throw std::invalid_argument("harmonic_basis_size: n must be 2 or 3");
}

Solution harmonic_polynomial(int n, int degree, int index) {
    const int size = harmonic_basis_size(n, degree);
    if (index < 0 || index >= size)
        throw std::invalid_argument("harmonic_polynomial: index out of range for this degree");
    Poly p = (n == 2) ? basis2(degree, index) : basis3(degree, index);
    const std::string label = "harmonic:n=" + std::to_string(n) + ",k=" + std::to_string(degree) +
                              ",i=" + std::to_string(index);
    return from_poly(std::move(p), degree, label);
}

Solution affine(const Eigen::VectorXd& coeffs, double offset) {
    const int n = static_cast<int>(coeffs.size());
    if (n < 2) throw std::invalid_argument("affine: need n >= 2");
    Eigen::VectorXd c = coeffs;
    Solution s;
    s.dim = n;
    s.value = [c, offset](const Eigen::VectorXd& x) { return c.dot(x) + offset; };
    s.gradient = [c](const Eigen::VectorXd&) { return c; };
    if (offset == 0.0) s.homogeneity = 1.0;
    s.label = "affine";
    return s;
}

Solution fourier_harmonic(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("fourier_harmonic: coefficient lists must share a nonzero length");
    auto av = std::make_shared<std::vector<double>>(a);
    auto bv = std::make_shared<std::vector<double>>(b);
    const int kmax = static_cast<int>(a.size()) - 1;

    Solution s;
    s.dim = 2;
    s.value = [av, bv, kmax](const Eigen::VectorXd& x) {
        const double r = x.norm(), th = std::atan2(x[1], x[0]);
        double u = (*av)[0];
        double rk = 1;
        for (int k = 1; k <= kmax; ++k) {
            rk *= r;
            u += rk * ((*av)[k] * std::cos(k * th) + (*bv)[k] * std::sin(k * th));
        }
        return u;
    };
    s.gradient = [av, bv, kmax](const Eigen::VectorXd& x) {
        const double r = x.norm();
        Eigen::VectorXd g(2);
        if (r < 1e-14) {
            g << (kmax >= 1 ? (*av)[1] : 0.0), (kmax >= 1 ? (*bv)[1] : 0.0);
            return g;
        }
        const double th = std::atan2(x[1], x[0]);
        const double c = std::cos(th), sn = std::sin(th);
        double ur = 0, ut = 0;  // du/dr and du/dtheta / r
        double rk = 1;          // r^{k-1}
        for (int k = 1; k <= kmax; ++k) {
            const double ck = std::cos(k * th), sk = std::sin(k * th);
            ur += k * rk * ((*av)[k] * ck + (*bv)[k] * sk);
            ut += k * rk * (-(*av)[k] * sk + (*bv)[k] * ck);
            rk *= r;
        }
        g << ur * c - ut * sn, ur * sn + ut * c;
        return g;
    };
    int active = 0, active_k = -1;
    for (int k = 0; k <= kmax; ++k)
        if (a[k] != 0.0 || (k > 0 && b[k] != 0.0)) {
            ++active;
            active_k = k;
        }
    if (active == 1) s.homogeneity = static_cast<double>(active_k);
    s.label = "fourier";
    return s;
}

Solution superpose(const std::vector<double>& weights, const std::vector<Solution>& parts) {
    if (weights.size() != parts.size() || parts.empty())
        throw std::invalid_argument("superpose: need one weight per part");
    const int n = parts.front().dim;
    for (const auto& p : parts)
        if (p.dim != n) throw std::invalid_argument("superpose: mixed dimensions");
    auto w = std::make_shared<std::vector<double>>(weights);
    auto ps = std::make_shared<std::vector<Solution>>(parts);

    Solution s;
    s.dim = n;
    s.value = [w, ps](const Eigen::VectorXd& x) {
        double u = 0;
        for (size_t i = 0; i < ps->size(); ++i) u += (*w)[i] * (*ps)[i].value(x);
        return u;
    };
    s.gradient = [w, ps, n](const Eigen::VectorXd& x) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
        for (size_t i = 0; i < ps->size(); ++i) g += (*w)[i] * (*ps)[i].gradient(x);
        return g;
    };
    bool same = true;
    for (const auto& p : parts) {
        if (!p.homogeneity || !parts.front().homogeneity ||
            *p.homogeneity != *parts.front().homogeneity)
            same = false;
        s.core_radius = std::max(s.core_radius, p.core_radius);
        s.singular_radius = std::max(s.singular_radius, p.singular_radius);
        s.domain_radius = std::min(s.domain_radius, p.domain_radius);
    }
    if (same) s.homogeneity = parts.front().homogeneity;
    s.label = "superposition";
    return s;
}

std::pair<CoefficientField, Solution> ps_example(double lambda, double Lambda) {
    CoefficientField field = CoefficientField::radial_anisotropy(lambda, Lambda);
    const double alpha = std::sqrt(lambda / Lambda);

    Solution s;
    s.dim = 2;
    s.value = [alpha](const Eigen::VectorXd& x) {
        const double r = x.norm();
        if (r == 0.0) return 0.0;
        return std::pow(r, alpha) * std::cos(std::atan2(x[1], x[0]));
    };
    s.gradient = [alpha](const Eigen::VectorXd& x) {
        const double r = x.norm();
        if (!(r > 0)) throw std::domain_error("ps_example: gradient singular at the origin");
        const double th = std::atan2(x[1], x[0]);
        const double c = std::cos(th), sn = std::sin(th);
        const double ur = alpha * std::pow(r, alpha - 1) * c;
        const double ut = -std::pow(r, alpha - 1) * sn;  // du/dtheta / r
        Eigen::VectorXd g(2);
        g << ur * c - ut * sn, ur * sn + ut * c;
        return g;
    };
    s.homogeneity = alpha;
    s.core_radius = 1e-4;
    s.singular_radius = 0.0;
    s.label = "ps2d:lambda=" + std::to_string(lambda) + ",Lambda=" + std::to_string(Lambda);
    return {std::move(field), std::move(s)};
}

GradientSplit gradient_split(const Solution& sol, const Eigen::VectorXd& x) {
    const Eigen::MatrixXd Q = polar_frame(x);
    const Eigen::VectorXd w = Q.transpose() * sol.gradient(x);
    GradientSplit gs;
    gs.normal = w[0];
    gs.tangential = w.tail(w.size() - 1);
    return gs;
}

double residual(const CoefficientField& field, const Solution& sol,
                const Eigen::VectorXd& x, double h) {
    if (!(h > 0)) throw std::invalid_argument("residual: need h > 0");
    if (field.dim() != sol.dim) throw std::invalid_argument("residual: dimension mismatch");
    const double r = x.norm();
    if (r - 2 * h <= sol.singular_radius)
        throw std::domain_error("residual: stencil reaches the solution's singular radius");
    if (r + 2 * h > sol.domain_radius)
        throw std::domain_error("residual: stencil leaves the solution's domain");

    double div = 0;
    for (int i = 0; i < sol.dim; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fp = (field(xp) * sol.gradient(xp))[i];
        const double fm = (field(xm) * sol.gradient(xm))[i];
        div += (fp - fm) / (2 * h);
    }
    return div;
}

}  // namespace elab
