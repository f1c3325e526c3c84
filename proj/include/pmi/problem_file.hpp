#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "pmi/poly_matrix.hpp"

namespace pmi {

// .pmi problem: JSON with n, m, l and entry lists F (l x l) and G (m x m).
// Each entry is {"row", "col", "terms": [{"exp": [...], "coef": "p/q"}]}, 0-based,
// upper triangle only on output; a lower entry on input must match its mirror.
struct ProblemFile {
  std::size_t n = 1;
  std::size_t m = 0;
  std::size_t l = 0;
  std::optional<SymPolyMatrix> F;
  std::optional<SymPolyMatrix> G;
};

ProblemFile parse_problem(std::string_view text);
std::string print_problem(const ProblemFile& p);
ProblemFile read_problem_file(const std::string& path);

}  // namespace pmi
