#pragma once

#include <string>
#include <vector>

#include "pg3q/verify.hpp"

namespace pg3q {

/// Verification results as a machine-readable JSON string (includes pass
/// flags and timings; intended for CI logs, not byte-stable output).
std::string results_json(const std::vector<VerificationResult>& results);

/// Orbit census serialized per the documented report schema: one record per
/// orbit with size, type, j, lambda, stabilizer order and representative.
/// Requires q <= 27.
std::string form_census_json(const FieldContext& F);

/// Write the table reproductions (orbit tables, representative tables,
/// generator matrices, incidence tables, curve point counts) under outdir.
/// format is one of json, csv, markdown. Output is byte-stable across runs.
/// Returns the list of files written.
std::vector<std::string> emit_tables(const FieldContext& F, const std::string& format,
                                     const std::string& outdir);

}  // namespace pg3q
