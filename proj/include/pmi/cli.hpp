#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pmi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification or feasibility failure
inline constexpr int kExitInputError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmi::cli
