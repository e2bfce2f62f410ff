#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "elab/analysis.hpp"
#include "elab/coefficient.hpp"
#include "elab/energy.hpp"
#include "elab/exponent.hpp"
#include "elab/solutions.hpp"
#include "elab/solver.hpp"

namespace elab {

/// One front-end invocation; serializable so a run is reproducible from
/// its config and seed alone.
struct RunConfig {
    std::string command;
    std::string field;
    std::string solution;  // empty when boundary data is used instead
    std::string boundary;  // empty when an analytic solution is used
    int nr = 64;
    int n_theta = 0;  // 0 picks the per-dimension default
    int n_phi = 0;
    std::string ladder = "0.1:1:12";
    double tol = 0;  // 0 picks the per-command default
    std::string out_dir;
    unsigned seed = 0;
    int resolution = 1000;
};

/// Parse a coefficient-field descriptor:
///   identity | identity:n=3
///   const:diag(1,4)            constant with the given diagonal
///   const:random[,n=2,lo=1,hi=4]   seeded rotation of a random spectrum
///   ps2d:1,4 | ps2d:lambda=1,Lambda=4
///   bump:eps=0.1[,n=3]
///   {...}                      JSON (CoefficientField::from_json)
CoefficientField parse_field(const std::string& spec, unsigned seed = 0);

/// Parse a test-solution descriptor against an already parsed field:
///   harmonic:n=2,k=2,i=0
///   affine | affine:c1,c2[,c3]
///   ps2d          the extremal solution for the field's (lambda, Lambda)
///   norm2         u = |x|^2  (deliberately not a solution)
Solution parse_solution(const std::string& spec, const CoefficientField& field);

/// Parse boundary data on the unit sphere.  In two dimensions: sums of
/// constants and [c*]cos(k*theta) / [c*]sin(k*theta).  In three
/// dimensions: the named builtins x1, x2, x3, x1x2, x1x3, x2x3, and the
/// spherical aliases cos(theta) (= x3), sin(theta)*cos(phi) (= x1),
/// sin(theta)*sin(phi) (= x2).
BoundaryFn parse_boundary(const std::string& spec, int dim);

/// Exact harmonic extension of the parsed boundary data, when the grammar
/// admits one (always, for the grammar above).  It solves div(A grad u)=0
/// for A = I, and its degree-1 part does for every constant A; use as a
/// convergence reference accordingly.
std::optional<Solution> boundary_reference(const std::string& spec, int dim);

/// Parse "lo:hi:count" into a geometric radius ladder; "default" or the
/// empty string gives 12 points on [0.1, 1].
std::vector<double> parse_ladder(const std::string& spec);

void to_json(nlohmann::json& j, const ExponentBound& b);
void to_json(nlohmann::json& j, const OptimizerResult& r);
void to_json(nlohmann::json& j, const PohozaevReport& r);
void to_json(nlohmann::json& j, const EnergyProfile& p);
void to_json(nlohmann::json& j, const MonotonicityVerdict& v);
void to_json(nlohmann::json& j, const ExponentFit& f);
void to_json(nlohmann::json& j, const ErrCorrectedVerdict& v);
void to_json(nlohmann::json& j, const ConvergenceReport& r);
void to_json(nlohmann::json& j, const EllipticityReport& r);
void to_json(nlohmann::json& j, const RunConfig& c);

}  // namespace elab
