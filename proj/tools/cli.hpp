#pragma once

#include <iosfwd>

#include "qrenyi/error.hpp"

namespace qrenyi::cli {

enum Exit : int { Ok = 0, Usage = 2, Numeric = 3, Failed = 4 };

/// Usage/validation codes map to 2, everything else raised while computing to 3.
int exit_code_for(ErrorCode code) noexcept;

/// Full command-line entry point; `out` receives the result document and
/// `err` diagnostics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qrenyi::cli
