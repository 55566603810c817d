#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riskadj {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kParse = 2;
inline constexpr int kNumerical = 3;
inline constexpr int kNotMax = 4;
inline constexpr int kVerification = 5;
} // namespace exit_code

/// Entry point for the `riskadj` tool. `args[0]` is the program name.
/// Documents go to `out` (or the --output file); a failure writes nothing
/// there and prints one JSON error object to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace riskadj
