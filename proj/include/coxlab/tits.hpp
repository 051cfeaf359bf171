#pragma once
// Tits-Vinberg reflection representation attached to a symmetric Cartan
// matrix A compatible with a diagram: generators act on the span of the
// b-basis by sigma_s(b_t) = b_t - A_st * b_s, and the bilinear form with Gram
// matrix A is invariant. When A is singular (but has no zero-type component)
// the action is expressed on a maximal independent subset of the b-vectors.

#include <optional>
#include <string>
#include <vector>

#include "coxlab/diagram.hpp"
#include "coxlab/linalg.hpp"
#include "coxlab/scalar.hpp"

namespace coxlab {

enum class BasisMode { full, reduced };

template <class T>
struct TitsRepresentation {
  int dim = 0;  // rank of A = dimension of the representation space
  BasisMode basis_mode = BasisMode::full;
  // Nodes whose b-vectors form the working basis; 0..n-1 in full mode.
  std::vector<int> basis;
  // Coordinates of every b_s in the working basis (row s), so invariance and
  // the defining action can be checked in either mode.
  std::vector<std::vector<T>> b_coords;
  SqMat<T> gram;                    // matrix of the form in the working basis
  std::vector<SqMat<T>> generators;  // one reflection per node
  Diagram diagram;
};

// Builds the representation. A must be symmetric, Cartan (diagonal 2,
// nonpositive off-diagonal), compatible with the diagram (entry equal to
// -2cos(pi/m) under a finite label m, 0 off edges, and <= -2 under an
// infinite label), and free of zero-type components; violations raise
// std::invalid_argument.
TitsRepresentation<AlgScalar> build_tits(const SqMat<AlgScalar>& a, const Diagram& d);
TitsRepresentation<QuadExt> build_tits(const SqMat<QuadExt>& a, const Diagram& d);

struct RelationCheck {
  int s = -1;
  int t = -1;  // -1 for the involution checks
  bool pass = false;
  std::string detail;
};

struct RelationReport {
  bool all_pass = false;
  std::vector<RelationCheck> checks;
};

// Exact Coxeter-relation check: rho(s)^2 = Id for every node, and for every
// pair (rho(s)rho(t))^m = Id under a finite label m, while under an infinite
// label no power up to cap may be the identity (a bounded semi-decision).
// cap must be at least the largest finite label.
RelationReport verify_relations(const TitsRepresentation<AlgScalar>& rep, int cap = 50);
RelationReport verify_relations(const TitsRepresentation<QuadExt>& rep, int cap = 50);

// Exact check that rho(s)^T * gram * rho(s) = gram for every generator.
bool verify_invariance(const TitsRepresentation<AlgScalar>& rep);
bool verify_invariance(const TitsRepresentation<QuadExt>& rep);

// Product of the generators named by the word (identity for the empty word).
SqMat<AlgScalar> word_to_matrix(const TitsRepresentation<AlgScalar>& rep,
                                const std::vector<int>& word);
SqMat<QuadExt> word_to_matrix(const TitsRepresentation<QuadExt>& rep,
                              const std::vector<int>& word);

// JSON export of basis, Gram matrix, and generators; entries are exact
// expression strings, or fixed-point decimals when digits is given.
std::string to_json(const TitsRepresentation<AlgScalar>& rep,
                    std::optional<int> digits = std::nullopt);
std::string to_json(const TitsRepresentation<QuadExt>& rep,
                    std::optional<int> digits = std::nullopt);

}  // namespace coxlab
