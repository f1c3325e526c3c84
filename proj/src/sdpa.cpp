#include "pmi/sdpa.hpp"

#include <cstdio>
#include <sstream>

#include "pmi/errors.hpp"

namespace pmi {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string export_sdpa(const SDPProblem& p, const mpq_class& gamma) {
  std::ostringstream os;
  os << "* matrix SOS relaxation, order " << p.order << ", " << p.nvars << " variables\n";
  os << p.constraints.size() << "\n";
  os << p.block_sizes.size() << "\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) os << (b ? " " : "") << p.block_sizes[b];
  os << "\n";
  for (std::size_t c = 0; c < p.rhs.size(); ++c) {
    ExtRational v = p.rhs[c];
    if (c == 0) v -= ExtRational(gamma);
    os << (c ? " " : "") << fmt(v.to_double());
  }
  os << "\n";
  for (std::size_t c = 0; c < p.constraints.size(); ++c)
    for (const auto& e : p.constraints[c])
      os << c + 1 << " " << e.block + 1 << " " << e.i + 1 << " " << e.j + 1 << " " << fmt(e.value.to_double()) << "\n";
  return os.str();
}

SdpaData parse_sdpa(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t s = line.find_first_not_of(" \t\r");
    if (s == std::string::npos) continue;
    if (line[s] == '*' || line[s] == '"') continue;
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    lines.push_back(line);
  }
  if (lines.size() < 4) throw InputError("sdpa: missing header lines");
  SdpaData d;
  auto read_int = [](const std::string& l, const char* what) {
    std::istringstream ls(l);
    int v;
    if (!(ls >> v)) throw InputError(std::string("sdpa: cannot read ") + what);
    return v;
  };
  d.mdim = read_int(lines[0], "number of constraints");
  d.nblocks = read_int(lines[1], "number of blocks");
  if (d.mdim < 0 || d.nblocks <= 0) throw InputError("sdpa: bad dimensions");
  {
    std::istringstream ls(lines[2]);
    int v;
    while (ls >> v) d.block_sizes.push_back(v);
    if (int(d.block_sizes.size()) != d.nblocks) throw InputError("sdpa: block size list does not match block count");
  }
  {
    std::istringstream ls(lines[3]);
    double v;
    while (ls >> v) d.objective.push_back(v);
    if (int(d.objective.size()) != d.mdim) throw InputError("sdpa: objective length does not match constraint count");
  }
  for (std::size_t k = 4; k < lines.size(); ++k) {
    std::istringstream ls(lines[k]);
    SdpaEntry e;
    if (!(ls >> e.constraint >> e.block >> e.i >> e.j >> e.value))
      throw InputError("sdpa: malformed entry line " + std::to_string(k + 1));
    if (e.constraint < 0 || e.constraint > d.mdim || e.block < 1 || e.block > d.nblocks)
      throw InputError("sdpa: entry index out of range on line " + std::to_string(k + 1));
    int size = std::abs(d.block_sizes[std::size_t(e.block - 1)]);
    if (e.i < 1 || e.j < e.i || e.j > size) throw InputError("sdpa: entry position out of range on line " + std::to_string(k + 1));
    d.entries.push_back(e);
  }
  return d;
}

}  // namespace pmi
