#pragma once

#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace divint {

/// Strict TOML-subset reader for job documents: [table] and [[array-of-table]]
/// headers, dotted keys, strings, integers, booleans, arrays and inline
/// tables, # comments.  Anything outside the subset is a structural error.
nlohmann::json toml_lite_parse(std::string_view text);

}  // namespace divint
