#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace forge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Runs one subcommand. `args` excludes the program name. The report goes to
// `out` unless --out names a file; diagnostics and usage go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace forge::cli
