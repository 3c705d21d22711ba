#pragma once

#include <filesystem>
#include <string>

#include "nasq/qcore.hpp"

namespace nasq {

// State interchange format shared with the CLI:
//   {"dims":[m,n],"re":[[...]],"im":[[...]]}
// with row-major mn x mn arrays.  Numbers are written with enough digits
// to round-trip bit-exactly.

std::string state_to_json_string(const DensityMatrix& rho);

/// Throws Error with a message naming the offending field on malformed
/// input.
DensityMatrix state_from_json_string(const std::string& text);

void save_state(const std::filesystem::path& path, const DensityMatrix& rho);
DensityMatrix load_state(const std::filesystem::path& path);

}  // namespace nasq
