#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elab {

/// Thrown when an operation needs data a field was not built with
/// (e.g. coefficient derivatives that were explicitly disabled).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Symmetric uniformly elliptic coefficient matrix x -> A(x) on the unit
/// ball, together with its declared ellipticity bounds.  The bounds are
/// trusted input: they are sampled by check_ellipticity, never recomputed.
class CoefficientField {
  public:
    using MatrixFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
    enum class Kind { Constant, Variable };

    static CoefficientField identity(int n);
    static CoefficientField constant(const Eigen::MatrixXd& A);
    static CoefficientField constant(const Eigen::MatrixXd& A, double lambda, double Lambda);

    /// Variable field from an evaluator plus optional entrywise derivative
    /// evaluators dA[i] = dA/dx_i.  With dA empty, derivatives fall back to
    /// central differences with the given step; step 0 disables the
    /// fallback and makes derivative() throw CapabilityError.
    static CoefficientField variable(int n, MatrixFn A, std::vector<MatrixFn> dA,
                                     double lambda, double Lambda,
                                     bool scale_invariant = false, double fd_step = 1e-5);

    /// Planar field with eigenvalue Lambda along the radius and lambda
    /// tangentially: A(x) = lambda I + (Lambda - lambda) xx^T/|x|^2.
    static CoefficientField radial_anisotropy(double lambda, double Lambda);

    /// Isotropic perturbation A(x) = (1 + eps |x|^2) I; bounds quoted on the
    /// closed unit ball.
    static CoefficientField isotropic_bump(int n, double eps);

    /// Parse a JSON descriptor, e.g.
    ///   {"kind":"constant","matrix":[[1,0],[0,4]]}
    ///   {"kind":"builtin","name":"ps2d","lambda":1,"Lambda":4}
    static CoefficientField from_json(const std::string& text);

    int dim() const { return n_; }
    Kind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    double Lambda() const { return Lambda_; }
    bool analytic_derivatives() const { return kind_ == Kind::Constant || !deriv_.empty(); }
    /// True when A(tx) = A(x) for all t > 0, so energies of homogeneous
    /// solutions scale by an exact power law.
    bool scale_invariant() const { return scale_invariant_; }
    const std::string& label() const { return label_; }

    Eigen::MatrixXd operator()(const Eigen::VectorXd& x) const;
    /// dA/dx_i at x.
    Eigen::MatrixXd derivative(const Eigen::VectorXd& x, int i) const;

  private:
    CoefficientField() = default;
    int n_ = 0;
    Kind kind_ = Kind::Constant;
    double lambda_ = 0, Lambda_ = 0;
    bool scale_invariant_ = false;
    double fd_step_ = 0;
    Eigen::MatrixXd const_A_;
    MatrixFn eval_;
    std::vector<MatrixFn> deriv_;
    std::string label_;
};

/// A(x) conjugated into the frame whose first axis is x/|x|: blocks of
/// P = Q^T A Q with p11 the radial-radial entry.
struct PolarBlocks {
    double p11 = 0;
    Eigen::VectorXd p12;   // radial-tangential column, length n-1
    Eigen::MatrixXd p22;   // tangential block, (n-1) x (n-1)
    Eigen::MatrixXd frame; // Q itself, first column x/|x|

    Eigen::MatrixXd assemble() const;
};

/// Orthogonal frame with first column x/|x|, built from the Householder
/// reflection exchanging e1 and x/|x|.  Deterministic; smooth in x except
/// on the ray x/|x| = e1, where it snaps to the identity.
Eigen::MatrixXd polar_frame(const Eigen::VectorXd& x);

/// Split Q^T A Q into blocks for a given orthogonal frame Q.
PolarBlocks polar_blocks(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

PolarBlocks polar_conjugate(const CoefficientField& field, const Eigen::VectorXd& x);

/// Nonnegativity witness of the block inequality
///   lambda p11 |xi|^2 <= p11 <P22 xi, xi> - <P12, xi>^2:
/// returns the right side minus the left side.
double schur_gap(const PolarBlocks& blocks, double lambda, const Eigen::VectorXd& xi);

struct EllipticityReport {
    double min_quotient = 0;
    double max_quotient = 0;
    double lambda = 0;
    double Lambda = 0;
    double tolerance = 0;
    int samples = 0;
    int trials = 0;
    bool pass = false;
};

/// Sample Rayleigh quotients <A(x) xi, xi> over the given points and
/// `trials` random unit directions per point; verifies the declared bounds
/// and throws std::runtime_error on a symmetry violation.
EllipticityReport check_ellipticity(const CoefficientField& field,
                                    const std::vector<Eigen::VectorXd>& samples,
                                    int trials, double tol = 1e-10, unsigned seed = 1234);

}  // namespace elab
