#include "elab/solver.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "elab/sampling.hpp"

namespace elab {

namespace {

std::vector<double> make_radii(int nr, double cluster) {
    std::vector<double> r(nr + 1);
    if (cluster <= 1.0 + 1e-12) {
        for (int i = 0; i <= nr; ++i) r[i] = static_cast<double>(i) / nr;
    } else {
        // Geometric spacing: consecutive increments share the common ratio
        // cluster^(1/nr), so the first cell is the smallest.
        for (int i = 0; i <= nr; ++i)
            r[i] = (std::pow(cluster, static_cast<double>(i) / nr) - 1.0) / (cluster - 1.0);
    }
    r[0] = 0.0;
    r[nr] = 1.0;
    return r;
}

int positive_mod(int a, int m) {
    const int r = a % m;
    return r < 0 ? r + m : r;
}

// Weights differentiating the interpolating polynomial through xs at x0.
Eigen::VectorXd derivative_weights(const std::vector<double>& xs, double x0) {
    const int m = static_cast<int>(xs.size());
    Eigen::MatrixXd V(m, m);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < m; ++k)
        for (int c = 0; c < m; ++c) V(k, c) = std::pow(xs[c] - x0, k);
    if (m > 1) d[1] = 1.0;
    return V.partialPivLu().solve(d);
}

}  // namespace

PolarGrid PolarGrid::disk(int nr, int n_theta, double cluster) {
    if (nr < 8 || n_theta < 8)
        throw std::invalid_argument("PolarGrid::disk: need at least 8 nodes per direction");
    if (!(cluster >= 1.0))
        throw std::invalid_argument("PolarGrid::disk: cluster factor must be >= 1");
    PolarGrid g;
    g.dim = 2;
    g.nr = nr;
    g.n_theta = n_theta;
    g.n_phi = 0;
    g.cluster = cluster;
    g.radii = make_radii(nr, cluster);
    return g;
}

PolarGrid PolarGrid::ball(int nr, int n_theta, int n_phi, double cluster) {
    if (nr < 8 || n_theta < 8 || n_phi < 8)
        throw std::invalid_argument("PolarGrid::ball: need at least 8 nodes per direction");
    if (!(cluster >= 1.0))
        throw std::invalid_argument("PolarGrid::ball: cluster factor must be >= 1");
    PolarGrid g;
    g.dim = 3;
    g.nr = nr;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    g.cluster = cluster;
    g.radii = make_radii(nr, cluster);
    return g;
}

int PolarGrid::shell_size() const {
    return dim == 2 ? n_theta : 2 + (n_theta - 1) * n_phi;
}

int PolarGrid::node_count() const { return 1 + nr * shell_size(); }

bool PolarGrid::on_boundary(int id) const {
    return id >= 1 + (nr - 1) * shell_size();
}

Eigen::VectorXd PolarGrid::node(int id) const {
    if (id < 0 || id >= node_count()) throw std::out_of_range("PolarGrid::node: bad id");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    if (id == 0) return x;
    const int S = shell_size();
    const int i = 1 + (id - 1) / S;
    const int local = (id - 1) % S;
    const double r = radii[i];
    if (dim == 2) {
        const double th = 2.0 * M_PI * local / n_theta;
        x << r * std::cos(th), r * std::sin(th);
        return x;
    }
    if (local == 0) {
        x << 0, 0, r;  // north pole
        return x;
    }
    if (local == 1 + (n_theta - 1) * n_phi) {
        x << 0, 0, -r;  // south pole
        return x;
    }
    const int j = 1 + (local - 1) / n_phi;
    const int k = (local - 1) % n_phi;
    const double th = M_PI * j / n_theta;
    const double ph = 2.0 * M_PI * k / n_phi;
    x << r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph), r * std::cos(th);
    return x;
}

std::vector<double> PolarGrid::cell_measures() const {
    std::vector<double> m;
    if (dim == 2) {
        m.reserve(static_cast<size_t>(nr) * n_theta);
        const double dth = 2.0 * M_PI / n_theta;
        for (int i = 0; i < nr; ++i) {
            const double ring = 0.5 * (radii[i + 1] * radii[i + 1] - radii[i] * radii[i]) * dth;
            for (int j = 0; j < n_theta; ++j) m.push_back(ring);
        }
        return m;
    }
    m.reserve(static_cast<size_t>(nr) * n_theta * n_phi);
    const double dph = 2.0 * M_PI / n_phi;
    for (int i = 0; i < nr; ++i) {
        const double rad = (std::pow(radii[i + 1], 3) - std::pow(radii[i], 3)) / 3.0;
        for (int j = 0; j < n_theta; ++j) {
            const double band = std::cos(M_PI * j / n_theta) - std::cos(M_PI * (j + 1) / n_theta);
            for (int k = 0; k < n_phi; ++k) m.push_back(rad * band * dph);
        }
    }
    return m;
}

namespace {

// Node ids with the structural collapses (origin ring, poles) applied.
struct Indexer {
    const PolarGrid& g;
    int S;
    explicit Indexer(const PolarGrid& grid) : g(grid), S(grid.shell_size()) {}

    int disk(int i, int j) const {
        if (i == 0) return 0;
        return 1 + (i - 1) * g.n_theta + positive_mod(j, g.n_theta);
    }
    int ball(int i, int j, int k) const {
        if (i == 0) return 0;
        if (j == 0) return 1 + (i - 1) * S;
        if (j == g.n_theta) return 1 + (i - 1) * S + 1 + (g.n_theta - 1) * g.n_phi;
        return 1 + (i - 1) * S + 1 + (j - 1) * g.n_phi + positive_mod(k, g.n_phi);
    }
};

// Visit the simplicial refinement: triangles on the disk, Kuhn tetrahedra
// on the ball (cells collapsed at the origin and poles drop their
// degenerate simplices).
template <typename F>
void visit_elements(const PolarGrid& g, F&& visit) {
    Indexer ix(g);
    if (g.dim == 2) {
        std::array<int, 3> t{};
        for (int j = 0; j < g.n_theta; ++j) {
            t = {0, ix.disk(1, j), ix.disk(1, j + 1)};
            visit(t.data(), 3);
        }
        for (int i = 1; i < g.nr; ++i)
            for (int j = 0; j < g.n_theta; ++j) {
                const int a = ix.disk(i, j), b = ix.disk(i + 1, j);
                const int c = ix.disk(i + 1, j + 1), d = ix.disk(i, j + 1);
                t = {a, b, c};
                visit(t.data(), 3);
                t = {a, c, d};
                visit(t.data(), 3);
            }
        return;
    }
    static const int kuhn[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7},
                                   {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};
    std::array<int, 8> corner{};
    std::array<int, 4> tet{};
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.n_theta; ++j)
            for (int k = 0; k < g.n_phi; ++k) {
                for (int b = 0; b < 8; ++b)
                    corner[b] = ix.ball(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1));
                for (const auto& tt : kuhn) {
                    tet = {corner[tt[0]], corner[tt[1]], corner[tt[2]], corner[tt[3]]};
                    bool degenerate = false;
                    for (int a = 0; a < 4 && !degenerate; ++a)
                        for (int b = a + 1; b < 4; ++b)
                            if (tet[a] == tet[b]) {
                                degenerate = true;
                                break;
                            }
                    if (!degenerate) visit(tet.data(), 4);
                }
            }
}

struct ElementGeometry {
    double volume;
    Eigen::MatrixXd grads;  // dim x (dim+1) barycentric gradients
    Eigen::MatrixXd abar;   // coefficient averaged over the element
};

ElementGeometry element_geometry(const CoefficientField& field, const PolarGrid& g,
                                 const int* ids, int m) {
    const int n = g.dim;
    Eigen::MatrixXd P(n, m);
    for (int c = 0; c < m; ++c) P.col(c) = g.node(ids[c]);
    Eigen::MatrixXd E(n, n);
    for (int c = 1; c < m; ++c) E.col(c - 1) = P.col(c) - P.col(0);
    ElementGeometry eg;
    const double det = E.determinant();
    eg.volume = std::abs(det) / (n == 2 ? 2.0 : 6.0);
    Eigen::MatrixXd Einv_t = E.inverse().transpose();
    eg.grads.resize(n, m);
    for (int c = 1; c < m; ++c) eg.grads.col(c) = Einv_t.col(c - 1);
    eg.grads.col(0) = -eg.grads.rightCols(m - 1).rowwise().sum();
    if (n == 2) {
        // Edge-midpoint average, exact through quadratic coefficient variation.
        eg.abar = (field(0.5 * (P.col(0) + P.col(1))) + field(0.5 * (P.col(1) + P.col(2))) +
                   field(0.5 * (P.col(2) + P.col(0)))) / 3.0;
    } else {
        eg.abar = field(P.rowwise().mean());
    }
    return eg;
}

}  // namespace

struct GridSolution::Impl {
    PolarGrid grid;
    Eigen::VectorXd values;
    Eigen::MatrixXd node_grads;  // node_count x dim
    int iterations = 0;
    double residual = 0;

    int radial_cell(double r) const {
        const auto& rs = grid.radii;
        int lo = 0, hi = grid.nr - 1;
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (r >= rs[mid]) lo = mid;
            else hi = mid - 1;
        }
        return lo;
    }

    // Corner node for interpolation in grid coordinates; handles the origin
    // ring and, on the ball, the pole rows.
    int corner(int i, int j, int k) const {
        Indexer ix(grid);
        return grid.dim == 2 ? ix.disk(i, j) : ix.ball(i, j, k);
    }

    template <typename Row>
    auto interpolate(const Row& data, const Eigen::VectorXd& x) const {
        const double r = x.norm();
        if (r > 1.0 + 1e-9)
            throw std::domain_error("GridSolution: evaluation outside the unit ball");
        const double rc = std::min(r, 1.0);
        const int i = radial_cell(rc);
        const double dr = grid.radii[i + 1] - grid.radii[i];
        const double tr = std::clamp((rc - grid.radii[i]) / dr, 0.0, 1.0);

        if (grid.dim == 2) {
            const double th = std::atan2(x[1], x[0]);
            const double jt = positive_mod_double(th);
            const int j0 = static_cast<int>(jt);
            const double s = jt - j0;
            auto v00 = data(corner(i, j0, 0)), v10 = data(corner(i + 1, j0, 0));
            auto v01 = data(corner(i, j0 + 1, 0)), v11 = data(corner(i + 1, j0 + 1, 0));
            return ((1 - tr) * ((1 - s) * v00 + s * v01) + tr * ((1 - s) * v10 + s * v11)).eval();
        }
        const double rho = std::hypot(x[0], x[1]);
        const double th = std::atan2(rho, x[2]);  // colatitude in [0, pi]
        const double ph = std::atan2(x[1], x[0]);
        double jt = th / (M_PI / grid.n_theta);
        int j0 = std::min(static_cast<int>(jt), grid.n_theta - 1);
        const double sj = jt - j0;
        double kt = ph / (2.0 * M_PI / grid.n_phi);
        if (kt < 0) kt += grid.n_phi;
        const int k0 = std::min(static_cast<int>(kt), grid.n_phi - 1);
        const double sk = kt - k0;
        auto at = [&](int di, int dj, int dk) { return data(corner(i + di, j0 + dj, k0 + dk)); };
        return ((1 - tr) * ((1 - sj) * ((1 - sk) * at(0, 0, 0) + sk * at(0, 0, 1)) +
                            sj * ((1 - sk) * at(0, 1, 0) + sk * at(0, 1, 1))) +
                tr * ((1 - sj) * ((1 - sk) * at(1, 0, 0) + sk * at(1, 0, 1)) +
                      sj * ((1 - sk) * at(1, 1, 0) + sk * at(1, 1, 1))))
            .eval();
    }

    double positive_mod_double(double th) const {
        const double dth = 2.0 * M_PI / grid.n_theta;
        double jt = th / dth;
        const int n = grid.n_theta;
        jt = std::fmod(jt, n);
        if (jt < 0) jt += n;
        if (jt >= n) jt = 0;
        return jt;
    }
};

namespace {

// Nodal gradient recovery: cubic differencing radially (the origin value
// anchors each ray), high-order centered differencing in the angles, and
// least-squares fits at the origin and poles where the chart degenerates.
Eigen::MatrixXd recover_gradients(const PolarGrid& g, const Eigen::VectorXd& u) {
    const int n = g.dim;
    Eigen::MatrixXd grads = Eigen::MatrixXd::Zero(g.node_count(), n);
    Indexer ix(g);

    // Radial stencils: window of four rings around each ring, one-sided at
    // the outer boundary; ring 0 is the origin sample on every ray.
    std::vector<std::vector<int>> rad_idx(g.nr + 1);
    std::vector<Eigen::VectorXd> rad_w(g.nr + 1);
    for (int i = 1; i <= g.nr; ++i) {
        const int lo = std::clamp(i - 1, 0, g.nr - 3);
        std::vector<double> xs(4);
        rad_idx[i] = {lo, lo + 1, lo + 2, lo + 3};
        for (int m = 0; m < 4; ++m) xs[m] = g.radii[rad_idx[i][m]];
        rad_w[i] = derivative_weights(xs, g.radii[i]);
    }

    // Origin: least squares over the first shell.
    {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        const int S = g.shell_size();
        for (int s = 0; s < S; ++s) {
            const int id = 1 + s;
            const Eigen::VectorXd p = g.node(id);
            G += p * p.transpose();
            b += (u[id] - u[0]) * p;
        }
        grads.row(0) = G.ldlt().solve(b).transpose();
    }

    if (n == 2) {
        const double dth = 2.0 * M_PI / g.n_theta;
        for (int i = 1; i <= g.nr; ++i) {
            const double r = g.radii[i];
            for (int j = 0; j < g.n_theta; ++j) {
                double ur = 0;
                for (int m = 0; m < 4; ++m) ur += rad_w[i][m] * u[ix.disk(rad_idx[i][m], j)];
                const double ut = (-u[ix.disk(i, j + 2)] + 8 * u[ix.disk(i, j + 1)] -
                                   8 * u[ix.disk(i, j - 1)] + u[ix.disk(i, j - 2)]) /
                                  (12 * dth);
                const double th = dth * j;
                const double c = std::cos(th), s = std::sin(th);
                const int id = ix.disk(i, j);
                grads(id, 0) = ur * c - (ut / r) * s;
                grads(id, 1) = ur * s + (ut / r) * c;
            }
        }
        return grads;
    }

    const double dth = M_PI / g.n_theta;
    const double dph = 2.0 * M_PI / g.n_phi;
    for (int i = 1; i <= g.nr; ++i) {
        const double r = g.radii[i];
        // Poles: radial derivative along the axis, horizontal components
        // from the first latitude ring.
        for (int pole = 0; pole < 2; ++pole) {
            const int j_pole = pole == 0 ? 0 : g.n_theta;
            const int j_ring = pole == 0 ? 1 : g.n_theta - 1;
            const int id = ix.ball(i, j_pole, 0);
            double ur = 0;
            for (int m = 0; m < 4; ++m) ur += rad_w[i][m] * u[ix.ball(rad_idx[i][m], j_pole, 0)];
            double cx = 0, cy = 0;
            for (int k = 0; k < g.n_phi; ++k) {
                const double d = u[ix.ball(i, j_ring, k)] - u[id];
                cx += d * std::cos(dph * k);
                cy += d * std::sin(dph * k);
            }
            const double scale = 2.0 / (g.n_phi * r * std::sin(dth * j_ring));
            grads(id, 0) = cx * scale;
            grads(id, 1) = cy * scale;
            grads(id, 2) = pole == 0 ? ur : -ur;
        }
        for (int j = 1; j < g.n_theta; ++j) {
            const double th = dth * j;
            const double st = std::sin(th), ct = std::cos(th);
            // theta stencil: four latitude samples around j (poles included).
            const int jlo = std::clamp(j - 1, 0, g.n_theta - 3);
            std::vector<double> txs(4);
            for (int m = 0; m < 4; ++m) txs[m] = dth * (jlo + m);
            const Eigen::VectorXd tw = derivative_weights(txs, th);
            for (int k = 0; k < g.n_phi; ++k) {
                const int id = ix.ball(i, j, k);
                double ur = 0;
                for (int m = 0; m < 4; ++m) ur += rad_w[i][m] * u[ix.ball(rad_idx[i][m], j, k)];
                double ut = 0;
                for (int m = 0; m < 4; ++m) ut += tw[m] * u[ix.ball(i, jlo + m, k)];
                const double up = (-u[ix.ball(i, j, k + 2)] + 8 * u[ix.ball(i, j, k + 1)] -
                                   8 * u[ix.ball(i, j, k - 1)] + u[ix.ball(i, j, k - 2)]) /
                                  (12 * dph);
                const double ph = dph * k;
                const double cp = std::cos(ph), sp = std::sin(ph);
                const Eigen::Vector3d rhat(st * cp, st * sp, ct);
                const Eigen::Vector3d that(ct * cp, ct * sp, -st);
                const Eigen::Vector3d phat(-sp, cp, 0);
                Eigen::Vector3d grad = ur * rhat + (ut / r) * that + (up / (r * st)) * phat;
                grads.row(id) = grad.transpose();
            }
        }
    }
    return grads;
}

}  // namespace

GridSolution::GridSolution(PolarGrid grid, Eigen::VectorXd nodal_values, int iterations,
                           double algebraic_residual) {
    if (nodal_values.size() != grid.node_count())
        throw std::invalid_argument("GridSolution: nodal value count does not match the grid");
    auto impl = std::make_shared<Impl>();
    impl->grid = std::move(grid);
    impl->values = std::move(nodal_values);
    impl->node_grads = recover_gradients(impl->grid, impl->values);
    impl->iterations = iterations;
    impl->residual = algebraic_residual;
    impl_ = std::move(impl);
}

const PolarGrid& GridSolution::grid() const { return impl_->grid; }
const Eigen::VectorXd& GridSolution::nodal_values() const { return impl_->values; }
int GridSolution::iterations() const { return impl_->iterations; }
double GridSolution::algebraic_residual() const { return impl_->residual; }
const char* GridSolution::interpolation_scheme() const {
    return impl_->grid.dim == 2 ? "bilinear" : "trilinear";
}

double GridSolution::value(const Eigen::VectorXd& x) const {
    const auto& v = impl_->values;
    return impl_->interpolate([&](int id) { return Eigen::Matrix<double, 1, 1>::Constant(v[id]); }, x)(0);
}

Eigen::VectorXd GridSolution::gradient(const Eigen::VectorXd& x) const {
    const auto& gmat = impl_->node_grads;
    return impl_->interpolate(
        [&](int id) { return gmat.row(id).transpose(); }, x);
}

Solution GridSolution::as_solution() const {
    GridSolution self = *this;  // shares impl_
    Solution s;
    s.dim = impl_->grid.dim;
    s.value = [self](const Eigen::VectorXd& x) { return self.value(x); };
    s.gradient = [self](const Eigen::VectorXd& x) { return self.gradient(x); };
    s.provenance = Solution::Provenance::Grid;
    s.domain_radius = 1.0;
    s.label = "grid";
    return s;
}

GridSolution solve_dirichlet(const CoefficientField& field, const BoundaryFn& boundary,
                             const PolarGrid& grid) {
    if (field.dim() != grid.dim)
        throw std::invalid_argument("solve_dirichlet: field and grid dimensions differ");
    const int N = grid.node_count();
    Eigen::VectorXd values = Eigen::VectorXd::Zero(N);
    std::vector<int> dof(N, -1);
    int ndof = 0;
    for (int id = 0; id < N; ++id) {
        if (grid.on_boundary(id)) values[id] = boundary(grid.node(id));
        else dof[id] = ndof++;
    }

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(N) * (grid.dim == 2 ? 10 : 30));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ndof);
    visit_elements(grid, [&](const int* ids, int m) {
        const ElementGeometry eg = element_geometry(field, grid, ids, m);
        for (int a = 0; a < m; ++a) {
            const int ra = dof[ids[a]];
            if (ra < 0) continue;
            for (int b = 0; b < m; ++b) {
                const double kab =
                    eg.volume * eg.grads.col(a).dot(eg.abar * eg.grads.col(b));
                if (dof[ids[b]] >= 0) trips.emplace_back(ra, dof[ids[b]], kab);
                else rhs[ra] -= kab * values[ids[b]];
            }
        }
    });

    Eigen::SparseMatrix<double> K(ndof, ndof);
    K.setFromTriplets(trips.begin(), trips.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>> cg;
    cg.setTolerance(1e-10);
    cg.setMaxIterations(static_cast<int>(50.0 * std::sqrt(static_cast<double>(std::max(1, ndof)))));
    cg.compute(K);
    const Eigen::VectorXd u = cg.solve(rhs);
    if (cg.info() != Eigen::Success)
        throw SolverFailure("solve_dirichlet: conjugate gradients stalled at relative residual " +
                                std::to_string(cg.error()),
                            cg.error(), static_cast<int>(cg.iterations()));
    for (int id = 0; id < N; ++id)
        if (dof[id] >= 0) values[id] = u[dof[id]];
    return GridSolution(grid, std::move(values), static_cast<int>(cg.iterations()), cg.error());
}

double discrete_energy(const CoefficientField& field, const PolarGrid& grid,
                       const Eigen::VectorXd& nodal_values) {
    if (nodal_values.size() != grid.node_count())
        throw std::invalid_argument("discrete_energy: nodal value count does not match the grid");
    double energy = 0;
    visit_elements(grid, [&](const int* ids, int m) {
        const ElementGeometry eg = element_geometry(field, grid, ids, m);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(grid.dim);
        for (int a = 0; a < m; ++a) g += nodal_values[ids[a]] * eg.grads.col(a);
        energy += eg.volume * g.dot(eg.abar * g);
    });
    return energy;
}

ConvergenceReport convergence_study(const CoefficientField& field, const BoundaryFn& boundary,
                                    const std::vector<PolarGrid>& grids,
                                    const Solution* reference) {
    if (grids.size() < 3)
        throw std::invalid_argument("convergence_study: need at least three grids");
    std::vector<PolarGrid> ordered = grids;
    std::sort(ordered.begin(), ordered.end(),
              [](const PolarGrid& a, const PolarGrid& b) { return a.nr < b.nr; });

    const int dim = field.dim();
    const Eigen::MatrixXd cloud = 0.97 * halton_ball(dim, 400, 7);

    std::optional<GridSolution> finest;
    auto ref_value = [&](const Eigen::VectorXd& x) {
        return reference ? reference->value(x) : finest->value(x);
    };
    if (!reference) finest = solve_dirichlet(field, boundary, ordered.back());

    const size_t fitted = reference ? ordered.size() : ordered.size() - 1;
    ConvergenceReport rep;
    double ref_scale = 0;
    for (size_t g = 0; g < fitted; ++g) {
        const GridSolution sol = solve_dirichlet(field, boundary, ordered[g]);
        double err = 0;
        for (int c = 0; c < cloud.cols(); ++c) {
            const Eigen::VectorXd x = cloud.col(c);
            const double rv = ref_value(x);
            ref_scale = std::max(ref_scale, std::abs(rv));
            err = std::max(err, std::abs(sol.value(x) - rv));
        }
        rep.h.push_back(1.0 / ordered[g].nr);
        rep.errors.push_back(err);
    }

    const double floor_err = 1e-10 * (1.0 + ref_scale);
    rep.exact = true;
    for (const double e : rep.errors)
        if (e > floor_err) rep.exact = false;
    if (rep.exact) {
        rep.order = std::numeric_limits<double>::infinity();
        return rep;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(rep.errors.size());
    for (int i = 0; i < m; ++i) {
        const double lx = std::log(rep.h[i]);
        const double ly = std::log(std::max(rep.errors[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    rep.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return rep;
}

}  // namespace elab
