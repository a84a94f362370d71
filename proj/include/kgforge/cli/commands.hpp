#pragma once

#include <ostream>

#include "kgforge/common/error.hpp"

namespace kgforge::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kDomainError = 3 };

ExitCode exit_code_for(Errc code) noexcept;

// Entry point for `kgforge <subcommand> [flags]`. Results go to `out`,
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kgforge::cli
