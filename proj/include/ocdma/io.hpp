#pragma once

#include <string>
#include <vector>

#include "ocdma/criteria.hpp"
#include "ocdma/enlarge.hpp"

namespace ocdma {

/// Write-to-temp-then-rename. Refuses existing targets unless overwrite is set.
void atomic_write_file(const std::string& path, const std::string& content, bool overwrite);

std::string evaluation_records_to_csv(const std::vector<EvaluationRecord>& records);

/// Enlargement output: the enlarged matrix in the repo-wide matrix schema plus a
/// "plan" object {base, k, generator}, so the same file loads as a plain matrix.
std::string plan_to_json(const EnlargementPlan& plan);
EnlargementPlan plan_from_json(const std::string& text);
EnlargementPlan load_plan_file(const std::string& path);

/// Received vectors for decoding: either one value per line (a single vector) or
/// one comma-separated vector per row.
std::vector<std::vector<double>> load_received_csv(const std::string& path,
                                                   std::size_t expected_len);

}  // namespace ocdma
