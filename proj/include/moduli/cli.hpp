#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moduli::cli {

// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kComputationalError = 2;

// Runs one command; `args` excludes the program name. Diagnostics go to `err`
// as "error[<code>]: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moduli::cli
