#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "elab/descriptors.hpp"
#include "elab/exponent.hpp"
#include "elab/report.hpp"

namespace {

using nlohmann::json;

// ELAB_OUT overrides any --out from the command line.
std::string resolve_out(const std::string& flag_value) {
    const char* env = std::getenv("ELAB_OUT");
    if (env && *env) return env;
    return flag_value;
}

int emit_single_case(json c, const std::string& out_dir) {
    const elab::SuiteResult result = elab::run_manifest(json::array({std::move(c)}), out_dir, 1);
    const json& rec = result.summary.at("cases").at(0);
    std::cout << rec.dump(2) << "\n";
    if (rec.contains("error")) {
        std::cerr << "error: " << rec.at("error").get<std::string>() << "\n";
        return 2;
    }
    return result.all_pass ? 0 : 1;
}

// "n=2..8,ratio=0.1..1.0x10" -> CSV rows over the integer range of n and a
// uniform grid of lambda/Lambda ratios (Lambda fixed at 1).
int run_sweep(const std::string& spec, const std::string& out_path) {
    int n_lo = 0, n_hi = 0, count = 0;
    double r_lo = 0, r_hi = 0;
    if (std::sscanf(spec.c_str(), "n=%d..%d,ratio=%lf..%lfx%d", &n_lo, &n_hi, &r_lo, &r_hi,
                    &count) != 5 ||
        n_lo < 2 || n_hi < n_lo || count < 2 || !(r_lo > 0) || r_lo > r_hi || r_hi > 1.0) {
        std::cerr << "error: sweep spec must look like n=2..8,ratio=0.1..1.0x10\n";
        return 2;
    }
    std::ostringstream csv;
    csv.precision(12);
    csv << "n,lambda,Lambda,alpha,alpha_tilde,eps_star\n";
    for (int n = n_lo; n <= n_hi; ++n)
        for (int j = 0; j < count; ++j) {
            const double ratio = r_lo + (r_hi - r_lo) * j / (count - 1);
            const elab::ExponentBound b = elab::ExponentBound::compute(n, ratio, 1.0);
            csv << n << "," << b.lambda << "," << b.Lambda << "," << b.alpha << ","
                << b.alpha_tilde << "," << b.eps_star << "\n";
        }
    std::cout << csv.str();
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << csv.str();
    }
    return 0;
}

int run_report(const std::string& manifest_spec, const std::string& out_dir, int workers) {
    json manifest;
    if (manifest_spec == "paper-suite" || manifest_spec == "empty") {
        manifest = elab::builtin_manifest(manifest_spec);
    } else {
        std::ifstream f(manifest_spec);
        if (!f) {
            std::cerr << "error: cannot open manifest " << manifest_spec << "\n";
            return 2;
        }
        manifest = json::parse(f);
    }
    const elab::SuiteResult result = elab::run_manifest(manifest, out_dir, workers);
    for (const json& rec : result.summary.at("cases"))
        std::cout << (rec.value("pass", false) ? "[PASS] " : "[FAIL] ")
                  << rec.value("label", "?") << "\n";
    std::cout << "cases: " << result.summary.at("case_count") << ", all_pass: "
              << (result.all_pass ? "true" : "false") << "\n";
    if (!out_dir.empty())
        std::cout << "summary: " << (std::filesystem::path(out_dir) / "summary.json").string()
                  << "\n";
    return result.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for energy estimates of -div(A grad u) = 0"};
    app.require_subcommand(1);

    int n = 2;
    double lambda = 1.0, Lambda = 1.0;
    int resolution = 1000, nr = 64, ntheta = 0, nphi = 0, workers = 0;
    double tol = 0.0;
    unsigned seed = 0;
    std::string field, solution, boundary, ladder, out, sweep, manifest;

    CLI::App* c_exp = app.add_subcommand("exponent", "closed-form exponents and bounds");
    c_exp->add_option("-n,--n", n, "dimension");
    c_exp->add_option("--lambda", lambda, "lower ellipticity bound");
    c_exp->add_option("--Lambda", Lambda, "upper ellipticity bound");
    c_exp->add_option("--sweep", sweep, "sweep spec, e.g. n=2..8,ratio=0.1..1.0x10");
    c_exp->add_option("--out", out, "output file for the sweep CSV / bound JSON");

    CLI::App* c_opt = app.add_subcommand("optimize", "brute-force check of the closed-form maximizer");
    c_opt->add_option("-n,--n", n, "dimension");
    c_opt->add_option("--lambda", lambda, "lower ellipticity bound");
    c_opt->add_option("--Lambda", Lambda, "upper ellipticity bound");
    c_opt->add_option("--resolution", resolution, "grid points per axis");
    c_opt->add_option("--out", out, "output directory");

    CLI::App* c_poh = app.add_subcommand("pohozaev", "flux identity report for a field/solution pair");
    c_poh->add_option("--field", field, "coefficient field descriptor")->required();
    c_poh->add_option("--solution", solution, "analytic solution descriptor");
    c_poh->add_option("--boundary", boundary, "boundary data (solved on a grid instead)");
    c_poh->add_option("--nr", nr, "radial cells for solved cases");
    c_poh->add_option("--ntheta", ntheta, "angular nodes for solved cases");
    c_poh->add_option("--nphi", nphi, "longitude nodes for solved cases (3-D)");
    c_poh->add_option("--tol", tol, "pass tolerance on the relative residual");
    c_poh->add_option("--seed", seed, "seed for random field descriptors");
    c_poh->add_option("--out", out, "output directory");

    CLI::App* c_mon = app.add_subcommand("monotonicity", "surface-to-bulk ratio verdict");
    c_mon->add_option("--field", field, "coefficient field descriptor")->required();
    c_mon->add_option("--solution", solution, "analytic solution descriptor");
    c_mon->add_option("--boundary", boundary, "boundary data (solved on a grid instead)");
    c_mon->add_option("--nr", nr, "radial cells for solved cases");
    c_mon->add_option("--ntheta", ntheta, "angular nodes for solved cases");
    c_mon->add_option("--nphi", nphi, "longitude nodes for solved cases (3-D)");
    c_mon->add_option("--ladder", ladder, "radius ladder lo:hi:count (default 0.1:1:12)");
    c_mon->add_option("--tol", tol, "relative pass tolerance");
    c_mon->add_option("--seed", seed, "seed for random field descriptors");
    c_mon->add_option("--out", out, "output directory for plot data");

    CLI::App* c_rep = app.add_subcommand("report", "run a manifest of verification cases");
    c_rep->add_option("--manifest", manifest, "builtin name (paper-suite, empty) or JSON file")
        ->required();
    c_rep->add_option("--out", out, "output directory (default elab-report)")
        ->default_val("elab-report");
    c_rep->add_option("--workers", workers, "worker threads (default: hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string out_dir = resolve_out(out);
        if (*c_exp) {
            if (!sweep.empty()) return run_sweep(sweep, out_dir);
            json c{{"kind", "exponent"}, {"n", n}, {"lambda", lambda}, {"Lambda", Lambda}};
            return emit_single_case(std::move(c), "");
        }
        if (*c_opt) {
            json c{{"kind", "optimize"}, {"n", n}, {"lambda", lambda}, {"Lambda", Lambda},
                   {"resolution", resolution}};
            return emit_single_case(std::move(c), out_dir);
        }
        if (*c_poh || *c_mon) {
            if (solution.empty() == boundary.empty()) {
                std::cerr << "error: pass exactly one of --solution and --boundary\n";
                return 2;
            }
            json c{{"kind", *c_poh ? "pohozaev" : "monotonicity"}, {"field", field},
                   {"seed", seed}, {"nr", nr}};
            if (!solution.empty()) c["solution"] = solution;
            if (!boundary.empty()) c["boundary"] = boundary;
            if (ntheta > 0) c["ntheta"] = ntheta;
            if (nphi > 0) c["nphi"] = nphi;
            if (tol > 0) c["tol"] = tol;
            if (!ladder.empty()) c["ladder"] = ladder;
            return emit_single_case(std::move(c), out_dir);
        }
        if (*c_rep) return run_report(manifest, out_dir, workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
