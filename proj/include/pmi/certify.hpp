#pragma once

#include <cstddef>
#include <optional>

#include "pmi/certificate.hpp"
#include "pmi/polya.hpp"

namespace pmi {

enum class FacetKind {
  kLower,     // 1 + x_i
  kUpperSum,  // sqrt(n) - (x_1 + ... + x_n)
};

// The facet polynomial itself.
Polynomial facet_polynomial(FacetKind kind, std::size_t index, std::size_t nvars);

// Degree-2 certificate of the facet polynomial in QM[1 - ||x||^2] (G = [1 - ||x||^2]).
QMCertificate facet_certificate(FacetKind kind, std::size_t index, std::size_t nvars);

// Scalar certificate 1 - ||x||^2 = 1 * e_i^T G e_i when some diagonal entry of G
// equals 1 - ||x||^2; nullopt otherwise.
std::optional<QMCertificate> trivial_ball_witness(const SymPolyMatrix& g);

struct AssembleResult {
  QMCertificate certificate;
  unsigned polya_degree = 0;  // Bernstein degree t of the Polya expansion
  unsigned ball_degree = 0;   // degree of the supplied ball witness
  unsigned degree = 0;        // degree of the assembled certificate
};

// Builds F in QM[G] from a Polya expansion of F on the scaled simplex, facet
// certificates for each Bernstein basis function, and a certificate that
// 1 - ||x||^2 lies in QM[G]. Throws NotPositiveDefiniteOnSimplex from the
// Polya search and InputError for an invalid ball witness.
AssembleResult assemble_simplex_putinar(const SymPolyMatrix& f, const SymPolyMatrix& g,
                                        const QMCertificate& ball_witness,
                                        const PolyaOptions& options = {});

}  // namespace pmi
