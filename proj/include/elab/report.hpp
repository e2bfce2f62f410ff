#pragma once

#include <string>

#include <json.hpp>

namespace elab {

/// Bundled manifests: "paper-suite" is the full verification sweep
/// (exponents, optimizer, flux identities, monotonicity with analytic and
/// solved cases, convergence, oscillation fits, sphere Poincare checks);
/// "empty" is the empty case list.
nlohmann::json builtin_manifest(const std::string& name);

struct SuiteResult {
    nlohmann::json summary;
    bool all_pass = false;
};

/// Run every case of a manifest (a JSON array of case objects, or an
/// object with a "cases" array).  Per-case plot data land in out_dir, as
/// does out_dir/summary.json.  Cases execute in a worker pool but merge in
/// manifest order, so the summary is byte-deterministic apart from its
/// "timestamp" field.  A case that throws is recorded as failed with the
/// error message; it never aborts the suite.
SuiteResult run_manifest(const nlohmann::json& manifest, const std::string& out_dir,
                         int workers = 0);

}  // namespace elab
