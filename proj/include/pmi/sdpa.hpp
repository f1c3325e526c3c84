#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pmi/relax.hpp"

namespace pmi {

// Feasibility form at a fixed gamma: one SDPA constraint per monomial,
// F_c = A_c, c_c = coefficient of f - gamma, F_0 = 0. Values use %.17g.
std::string export_sdpa(const SDPProblem& p, const mpq_class& gamma = 0);

struct SdpaEntry {
  int constraint = 0;  // 1-based, 0 for F_0
  int block = 0;       // 1-based
  int i = 0;
  int j = 0;
  double value = 0.0;
};

struct SdpaData {
  int mdim = 0;
  int nblocks = 0;
  std::vector<int> block_sizes;
  std::vector<double> objective;
  std::vector<SdpaEntry> entries;
};

// Text-level reader for the sparse SDPA format; throws InputError on malformed input.
SdpaData parse_sdpa(std::string_view text);

}  // namespace pmi
