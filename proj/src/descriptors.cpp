#include "elab/descriptors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace elab {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (const char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == delim && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double to_number(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
    }
}

int to_int(const std::string& s, const std::string& what) {
    const double v = to_number(s, what);
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-9) throw std::invalid_argument(what + " must be an integer: " + s);
    return i;
}

// "a=1,b=2,positional" -> map plus positional list.
struct Args {
    std::map<std::string, std::string> kv;
    std::vector<std::string> positional;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    double num(const std::string& k, double fallback) const {
        const auto it = kv.find(k);
        return it == kv.end() ? fallback : to_number(it->second, k);
    }
    int integer(const std::string& k, int fallback) const {
        const auto it = kv.find(k);
        return it == kv.end() ? fallback : to_int(it->second, k);
    }
};

Args parse_args(const std::string& text) {
    Args a;
    if (trim(text).empty()) return a;
    for (const std::string& part : split(text, ',')) {
        const size_t eq = part.find('=');
        if (eq == std::string::npos) a.positional.push_back(part);
        else a.kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
    }
    return a;
}

CoefficientField random_constant_field(const Args& args, unsigned seed) {
    const int n = args.integer("n", 2);
    const double lo = args.num("lo", 1.0);
    const double hi = args.num("hi", 4.0);
    if (n < 2 || lo <= 0 || hi < lo)
        throw std::invalid_argument("const:random needs n >= 2 and 0 < lo <= hi");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(lo, hi);
    Eigen::VectorXd eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = unif(rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd G(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) G(r, c) = gauss(rng);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
    const Eigen::MatrixXd A = Q * eigs.asDiagonal() * Q.transpose();
    return CoefficientField::constant(0.5 * (A + A.transpose()));
}

}  // namespace

CoefficientField parse_field(const std::string& raw, unsigned seed) {
    const std::string spec = trim(raw);
    if (spec.empty()) throw std::invalid_argument("empty field descriptor");
    if (spec.front() == '{') return CoefficientField::from_json(spec);
    const size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const Args args = parse_args(colon == std::string::npos ? "" : spec.substr(colon + 1));

    if (name == "identity") return CoefficientField::identity(args.integer("n", 2));
    if (name == "const") {
        if (!args.positional.empty() && args.positional[0].rfind("diag(", 0) == 0) {
            const std::string inner = args.positional[0].substr(
                5, args.positional[0].size() - 6);
            const auto parts = split(inner, ',');
            Eigen::VectorXd d(static_cast<int>(parts.size()));
            for (size_t i = 0; i < parts.size(); ++i)
                d[static_cast<int>(i)] = to_number(parts[i], "diagonal entry");
            return CoefficientField::constant(Eigen::MatrixXd(d.asDiagonal()));
        }
        if (!args.positional.empty() && args.positional[0] == "random")
            return random_constant_field(args, seed);
        throw std::invalid_argument("const field wants diag(...) or random: " + spec);
    }
    if (name == "ps2d") {
        double lambda = args.num("lambda", args.positional.size() > 0
                                               ? to_number(args.positional[0], "lambda")
                                               : 1.0);
        double Lambda = args.num("Lambda", args.positional.size() > 1
                                               ? to_number(args.positional[1], "Lambda")
                                               : 4.0);
        return CoefficientField::radial_anisotropy(lambda, Lambda);
    }
    if (name == "bump")
        return CoefficientField::isotropic_bump(args.integer("n", 2), args.num("eps", 0.1));
    throw std::invalid_argument("unknown field descriptor: " + spec);
}

Solution parse_solution(const std::string& raw, const CoefficientField& field) {
    const std::string spec = trim(raw);
    if (spec.empty()) throw std::invalid_argument("empty solution descriptor");
    const size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const Args args = parse_args(colon == std::string::npos ? "" : spec.substr(colon + 1));

    if (name == "harmonic") {
        const int n = args.integer("n", field.dim());
        if (n != field.dim())
            throw std::invalid_argument("harmonic solution dimension differs from the field's");
        return harmonic_polynomial(n, args.integer("k", 1), args.integer("i", 0));
    }
    if (name == "affine") {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(field.dim());
        if (args.positional.empty()) c[0] = 1;
        else {
            if (static_cast<int>(args.positional.size()) != field.dim())
                throw std::invalid_argument("affine coefficients must match the dimension");
            for (size_t i = 0; i < args.positional.size(); ++i)
                c[static_cast<int>(i)] = to_number(args.positional[i], "affine coefficient");
        }
        return affine(c, args.num("offset", 0.0));
    }
    if (name == "ps2d") {
        if (field.dim() != 2)
            throw std::invalid_argument("the ps2d solution lives in two dimensions");
        return ps_example(field.lambda(), field.Lambda()).second;
    }
    if (name == "norm2") {
        Solution s;
        s.dim = field.dim();
        s.value = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
        s.gradient = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(2.0 * x); };
        s.homogeneity = 2.0;
        s.label = "norm2";
        return s;
    }
    throw std::invalid_argument("unknown solution descriptor: " + spec);
}

namespace {

// One parsed trace term: c * cos(k theta) or c * sin(k theta); k = 0 with
// cosine is the constant term.
struct TraceTerm {
    double c = 0;
    int k = 0;
    bool sine = false;
};

std::vector<TraceTerm> parse_trace_2d(const std::string& spec) {
    // Split on +/- at depth 0, keeping signs.
    std::vector<std::string> pieces;
    std::string cur;
    int depth = 0;
    for (size_t i = 0; i < spec.size(); ++i) {
        const char ch = spec[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if ((ch == '+' || ch == '-') && depth == 0 && !trim(cur).empty()) {
            pieces.push_back(trim(cur));
            cur.clear();
        }
        cur += ch;
    }
    if (!trim(cur).empty()) pieces.push_back(trim(cur));
    if (pieces.empty()) throw std::invalid_argument("empty boundary expression");

    std::vector<TraceTerm> terms;
    for (std::string piece : pieces) {
        TraceTerm t;
        double sign = 1;
        piece = trim(piece);
        while (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
            if (piece[0] == '-') sign = -sign;
            piece = trim(piece.substr(1));
        }
        const size_t fn = std::min(piece.find("cos("), piece.find("sin("));
        if (fn == std::string::npos) {
            t.c = sign * to_number(piece, "trace constant");
            terms.push_back(t);
            continue;
        }
        t.sine = piece.compare(fn, 4, "sin(") == 0;
        std::string coef = trim(piece.substr(0, fn));
        if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
        t.c = sign * (coef.empty() ? 1.0 : to_number(coef, "trace coefficient"));
        const size_t close = piece.find(')', fn);
        if (close == std::string::npos)
            throw std::invalid_argument("unbalanced parentheses in boundary: " + piece);
        std::string arg = trim(piece.substr(fn + 4, close - fn - 4));
        if (arg == "theta") t.k = 1;
        else {
            const size_t star = arg.find('*');
            if (star == std::string::npos || trim(arg.substr(star + 1)) != "theta")
                throw std::invalid_argument("boundary term must be in k*theta form: " + piece);
            t.k = to_int(trim(arg.substr(0, star)), "angular frequency");
        }
        if (t.k < 0) throw std::invalid_argument("negative frequency in boundary: " + piece);
        terms.push_back(t);
    }
    return terms;
}

// The three-dimensional builtins as (degree, index) into the harmonic basis.
Solution named_builtin_3d(const std::string& name) {
    if (name == "x1" || name == "sin(theta)*cos(phi)") return harmonic_polynomial(3, 1, 0);
    if (name == "x2" || name == "sin(theta)*sin(phi)") return harmonic_polynomial(3, 1, 1);
    if (name == "x3" || name == "cos(theta)") return harmonic_polynomial(3, 1, 2);
    if (name == "x1x2") return harmonic_polynomial(3, 2, 0);
    if (name == "x2x3") return harmonic_polynomial(3, 2, 1);
    if (name == "x1x3") return harmonic_polynomial(3, 2, 2);
    throw std::invalid_argument("unknown three-dimensional boundary builtin: " + name);
}

Solution trace_extension(const std::string& raw, int dim) {
    const std::string spec = trim(raw);
    if (dim == 3) return named_builtin_3d(spec);
    if (dim != 2) throw std::invalid_argument("boundary data supported in dimensions 2 and 3");
    const auto terms = parse_trace_2d(spec);
    int kmax = 0;
    for (const auto& t : terms) kmax = std::max(kmax, t.k);
    std::vector<double> a(kmax + 1, 0.0), b(kmax + 1, 0.0);
    for (const auto& t : terms) {
        if (t.sine) {
            if (t.k == 0) throw std::invalid_argument("sin(0*theta) is not a trace term");
            b[t.k] += t.c;
        } else {
            a[t.k] += t.c;
        }
    }
    return fourier_harmonic(a, b);
}

}  // namespace

BoundaryFn parse_boundary(const std::string& spec, int dim) {
    const Solution ext = trace_extension(spec, dim);
    return [ext](const Eigen::VectorXd& x) { return ext.value(x); };
}

std::optional<Solution> boundary_reference(const std::string& spec, int dim) {
    return trace_extension(spec, dim);
}

std::vector<double> parse_ladder(const std::string& raw) {
    const std::string spec = trim(raw);
    if (spec.empty() || spec == "default") return geometric_ladder(0.1, 1.0, 12);
    const auto parts = split(spec, ':');
    if (parts.size() != 3)
        throw std::invalid_argument("ladder spec must be lo:hi:count, got '" + spec + "'");
    return geometric_ladder(to_number(parts[0], "ladder lo"), to_number(parts[1], "ladder hi"),
                            to_int(parts[2], "ladder count"));
}

void to_json(nlohmann::json& j, const ExponentBound& b) {
    j = nlohmann::json{{"n", b.n},
                       {"lambda", b.lambda},
                       {"Lambda", b.Lambda},
                       {"alpha", b.alpha},
                       {"alpha_tilde", b.alpha_tilde},
                       {"eps_star", b.eps_star},
                       {"T_star", b.T_star},
                       {"err_coefficient", b.err_coefficient}};
}

void to_json(nlohmann::json& j, const OptimizerResult& r) {
    j = nlohmann::json{{"eps", r.eps},         {"T", r.T},
                       {"value", r.value},     {"eps_step", r.eps_step},
                       {"T_step", r.T_step},   {"resolution", r.resolution}};
}

void to_json(nlohmann::json& j, const PohozaevReport& r) {
    j = nlohmann::json{{"field", r.field_label},
                       {"solution", r.solution_label},
                       {"lhs", r.lhs},
                       {"t_flux", r.t_flux},
                       {"t_trace", r.t_trace},
                       {"t_sq", r.t_sq},
                       {"err", r.err},
                       {"residual", r.residual},
                       {"relative_residual", r.relative_residual}};
}

void to_json(nlohmann::json& j, const EnergyProfile& p) {
    j = nlohmann::json{{"dim", p.dim},     {"lambda", p.lambda}, {"Lambda", p.Lambda},
                       {"radii", p.radii}, {"bulk", p.bulk},     {"surface", p.surface}};
}

void to_json(nlohmann::json& j, const MonotonicityVerdict& v) {
    j = nlohmann::json{{"radii", v.radii},       {"ratios", v.ratios},
                       {"constant", v.constant}, {"tolerance", v.tolerance},
                       {"margin", v.margin},     {"pass", v.pass}};
}

void to_json(nlohmann::json& j, const ExponentFit& f) {
    j = nlohmann::json{{"slope", f.slope},
                       {"slope_stderr", f.slope_stderr},
                       {"intercept", f.intercept},
                       {"max_residual", f.max_residual},
                       {"points", f.points}};
    if (f.alpha_implied) j["alpha_implied"] = *f.alpha_implied;
    if (f.alpha_osc) j["alpha_osc"] = *f.alpha_osc;
}

void to_json(nlohmann::json& j, const ErrCorrectedVerdict& v) {
    j = nlohmann::json{{"surface", v.surface},
                       {"bulk", v.bulk},
                       {"err", v.err},
                       {"coefficient", v.coefficient},
                       {"alpha_tilde", v.alpha_tilde},
                       {"corrected_lhs", v.corrected_lhs},
                       {"margin", v.margin},
                       {"tolerance", v.tolerance},
                       {"err_nonnegative", v.err_nonnegative},
                       {"pass", v.pass}};
}

void to_json(nlohmann::json& j, const ConvergenceReport& r) {
    j = nlohmann::json{{"h", r.h}, {"errors", r.errors}, {"order", r.order}, {"exact", r.exact}};
    if (std::isinf(r.order)) j["order"] = "exact";
}

void to_json(nlohmann::json& j, const EllipticityReport& r) {
    j = nlohmann::json{{"min_quotient", r.min_quotient},
                       {"max_quotient", r.max_quotient},
                       {"lambda", r.lambda},
                       {"Lambda", r.Lambda},
                       {"tolerance", r.tolerance},
                       {"samples", r.samples},
                       {"trials", r.trials},
                       {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"command", c.command}, {"field", c.field},
                       {"solution", c.solution}, {"boundary", c.boundary},
                       {"nr", c.nr},           {"n_theta", c.n_theta},
                       {"n_phi", c.n_phi},     {"ladder", c.ladder},
                       {"tol", c.tol},         {"out_dir", c.out_dir},
                       {"seed", c.seed},       {"resolution", c.resolution}};
}

}  // namespace elab
