#include "pmi/problem_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pmi/errors.hpp"

namespace pmi {

namespace {

using nlohmann::json;

SymPolyMatrix parse_matrix(const json& entries, std::size_t size, std::size_t n, const char* name) {
  if (!entries.is_array()) throw InputError(std::string(name) + " must be an array of entries");
  PolyMatrix pm(size, size, n);
  std::vector<std::vector<bool>> seen(size, std::vector<bool>(size, false));
  for (const auto& e : entries) {
    std::size_t r = e.at("row").get<std::size_t>();
    std::size_t c = e.at("col").get<std::size_t>();
    if (r >= size || c >= size) throw InputError(std::string(name) + ": entry index out of range");
    if (seen[r][c]) throw InputError(std::string(name) + ": duplicate entry");
    Polynomial p(n);
    for (const auto& t : e.at("terms")) {
      Exponent ex = t.at("exp").get<Exponent>();
      if (ex.size() != n) throw InputError(std::string(name) + ": exponent length differs from n");
      p.add_term(ex, ExtRational::parse(t.at("coef").get<std::string>()));
    }
    if (seen[c][r] && pm(c, r) != p) throw InputError(std::string(name) + ": entry set is not symmetric");
    seen[r][c] = true;
    pm(r, c) = p;
    if (!seen[c][r]) pm(c, r) = p;
  }
  return SymPolyMatrix(pm);
}

json print_matrix(const SymPolyMatrix& g) {
  json arr = json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j) {
      if (g(i, j).is_zero()) continue;
      json terms = json::array();
      for (const auto& [e, c] : g(i, j).terms()) terms.push_back({{"exp", e}, {"coef", c.to_token()}});
      arr.push_back({{"row", i}, {"col", j}, {"terms", terms}});
    }
  return arr;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
  try {
    ProblemFile p;
    p.n = j.at("n").get<std::size_t>();
    if (p.n == 0) throw InputError("problem file: n must be positive");
    p.m = j.value("m", std::size_t(0));
    p.l = j.value("l", std::size_t(0));
    if (j.contains("F")) {
      if (p.l == 0) throw InputError("problem file: F given without l");
      p.F = parse_matrix(j["F"], p.l, p.n, "F");
    }
    if (j.contains("G")) {
      if (p.m == 0) throw InputError("problem file: G given without m");
      p.G = parse_matrix(j["G"], p.m, p.n, "G");
    }
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
}

std::string print_problem(const ProblemFile& p) {
  json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["l"] = p.l;
  if (p.F) j["F"] = print_matrix(*p.F);
  if (p.G) j["G"] = print_matrix(*p.G);
  return j.dump(2) + "\n";
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace pmi
