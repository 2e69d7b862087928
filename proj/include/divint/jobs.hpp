#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace divint {

struct JobResult {
  int exit_code = 0;  // 0 pass, 1 verified-false, 2 usage/schema error
  nlohmann::ordered_json report;
};

/// Runs one JobSpec document: {"command": "<group>.<op>", ...params}.
/// The document is schema-validated first; unknown fields are rejected with
/// a pointer to the offending field.  Reports are deterministic.
JobResult run_job(const nlohmann::json& job);

/// Loads a JSON or TOML document (decided by extension, falling back to
/// content sniffing).
nlohmann::json load_document(const std::string& path);

}  // namespace divint
