#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pmi/exact_matrix.hpp"
#include "pmi/poly_matrix.hpp"

namespace pmi {

enum class CertMode { kExact, kNumeric };

// S(x) = (I_l kron z(x))^T gram (I_l kron z(x)) with z the monomial basis;
// gram row/column index a * |basis| + u pairs matrix row a with monomial u.
struct SosBlock {
  std::vector<Exponent> basis;
  RationalSymMatrix gram;
};

// weight * P^T G P with P of size m x l and weight >= 0.
struct MultiplierTerm {
  ExtRational weight = 1;
  PolyMatrix p;
};

// generator * H, allowed only for generators declared as equality constraints
// (the sphere ||x||^2 - 1 in the homogenized setting).
struct IdealTerm {
  Polynomial generator;
  SymPolyMatrix h;
};

// Membership witness F = sum of SOS blocks + sum of multiplier terms + sum of ideal terms.
struct QMCertificate {
  std::size_t nvars = 0;
  std::size_t l = 1;  // size of F
  std::size_t m = 1;  // size of G
  unsigned degree = 0;  // declared truncation degree
  CertMode mode = CertMode::kExact;
  std::vector<SosBlock> sos;
  std::vector<MultiplierTerm> multipliers;
  std::vector<IdealTerm> ideal;
};

SymPolyMatrix sos_block_matrix(const SosBlock& block, std::size_t l, std::size_t nvars);
SymPolyMatrix reconstruct(const QMCertificate& cert, const SymPolyMatrix& g);
// Largest degree among the terms of the certificate.
unsigned certificate_term_degree(const QMCertificate& cert, const SymPolyMatrix& g);

struct BlockCheck {
  std::string name;  // "sos block 1", "multiplier 2", "ideal term 1"
  bool ok = true;
  double margin = 0.0;  // smallest eigenvalue or weight
  std::string detail;
};

struct VerifyReport {
  bool ok = false;
  bool residual_ok = false;
  double residual_norm = 0.0;  // Bernstein norm of F - reconstruction (0 when exactly zero)
  unsigned term_degree = 0;
  std::vector<BlockCheck> blocks;
  std::vector<std::string> failures;
};

// Never throws on failed checks; every problem is listed in failures.
VerifyReport verify_certificate(const SymPolyMatrix& f, const SymPolyMatrix& g, const QMCertificate& cert,
                                CertMode mode, double tol = 1e-6,
                                const std::vector<Polynomial>& equalities = {});

std::string serialize(const QMCertificate& cert);
QMCertificate deserialize(std::string_view text);

}  // namespace pmi
