#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "so3kin/io.hpp"

namespace so3kin::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kIoFailure = 2 };

// Runs one `so3kin` invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Central-difference error bound documented for `verify` at step h:
// 10 · [√2/6 · h² · (W³ + 3·W·W₁ + W₂) + 4·ε/h], where W, W₁, W₂ bound |ω|,
// |ω'|, |ω''| as estimated by divided differences of the profile samples.
double verify_bound(const RateProfile& profile, double h);

}  // namespace so3kin::cli
