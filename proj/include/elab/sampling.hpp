#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace elab {

/// Radical-inverse (van der Corput) value of index i in the given base.
inline double radical_inverse(int base, unsigned long long i) {
    double f = 1.0, r = 0.0;
    while (i) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

/// Deterministic low-discrepancy cloud in the closed unit ball: Halton
/// points in the cube, kept when they land inside the ball.  `skip` offsets
/// the sequence so distinct seeds give distinct clouds.
inline Eigen::MatrixXd halton_ball(int dim, int count, unsigned skip = 0) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("halton_ball: dim must be 1..3");
    if (count < 1) throw std::invalid_argument("halton_ball: need count >= 1");
    static const int bases[3] = {2, 3, 5};
    Eigen::MatrixXd pts(dim, count);
    int accepted = 0;
    unsigned long long i = static_cast<unsigned long long>(skip) + 1;
    Eigen::VectorXd y(dim);
    while (accepted < count) {
        for (int k = 0; k < dim; ++k) y[k] = 2.0 * radical_inverse(bases[k], i) - 1.0;
        ++i;
        if (y.squaredNorm() <= 1.0) pts.col(accepted++) = y;
    }
    return pts;
}

}  // namespace elab
