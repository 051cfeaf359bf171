#pragma once

// Classification logic: the spherical / affine / Lannér / large trichotomy for
// irreducible diagrams (with catalog names), Cartan types (positive / zero /
// negative, per connected component), the subset conditions (H0) and (H-), and
// Moussong's hyperbolicity criterion.
//
// The workhorse is an exhaustive scan over connected node subsets with
// memoized exact determinant signs: a connected subset is positive type iff
// all its one-node-deleted minors are positive definite and det > 0, zero type
// iff the same minors check holds with det = 0 (nullity is then exactly 1),
// negative type otherwise. Scans are capped at rank 16.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlab/diagram.hpp"
#include "coxlab/linalg.hpp"

namespace coxlab {

enum class DiagramKind { Spherical, Affine, Lanner, OtherLarge };

// "Spherical", "Affine", "Lanner", "OtherLarge".
std::string kind_text(DiagramKind k);

struct IrreducibleClass {
  DiagramKind kind = DiagramKind::OtherLarge;
  // Appendix-style name ("B_4", "Ã_2", "Lanner-4-cycle(5,3,4,3)"); present for
  // the three tabulated kinds.
  std::optional<std::string> catalog_name;
};

// Determinant/minor trichotomy for a connected diagram. Infinity labels use
// the -2 entry convention; diagrams whose matrix fails the minor condition are
// OtherLarge.
IrreducibleClass classify_irreducible(const Diagram& d);

struct SubsetClass {
  bool spherical = false;  // every component positive type
  bool affine = false;     // every component zero type
  bool lanner = false;     // irreducible and negative with all minors definite
};

SubsetClass subset_class(const Diagram& d, const std::vector<int>& t);

enum class CartanClass { Positive, Zero, Negative };

// Per-component types of a symmetric Cartan matrix (diagonal 2, off-diagonal
// <= 0), components ordered by least index.
std::vector<CartanClass> cartan_type(const SqMat<AlgScalar>& a);
std::vector<CartanClass> cartan_type(const SqMat<QuadExt>& a);

struct H0Result {
  bool holds = true;
  std::optional<std::vector<int>> witness;  // connected zero-type subset
};

struct HminusResult {
  bool holds = true;
  // Orthogonal pair of connected negative-type subsets.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
};

// (H0): no subset of zero type; (H-): no orthogonal pair of negative-type
// subsets. The matrix must be Cartan and match the diagram's edges.
H0Result check_H0(const SqMat<AlgScalar>& a, const Diagram& d);
H0Result check_H0(const SqMat<QuadExt>& a, const Diagram& d);
HminusResult check_Hminus(const SqMat<AlgScalar>& a, const Diagram& d);
HminusResult check_Hminus(const SqMat<QuadExt>& a, const Diagram& d);

// First (in ascending subset order) connected affine subset of rank >= 3.
std::optional<std::vector<int>> irreducible_affine_rank3(const Diagram& d);
// First orthogonal pair of connected non-spherical subsets.
std::optional<std::pair<std::vector<int>, std::vector<int>>> orthogonal_nonspherical_pair(
    const Diagram& d);

struct HyperbolicityVerdict {
  bool hyperbolic = false;
  std::optional<std::vector<int>> affine_witness;  // rank >= 3
  std::optional<std::pair<std::vector<int>, std::vector<int>>> orthogonal_witness;
};

// Moussong's criterion: hyperbolic iff no affine subset of rank >= 3 and no
// two orthogonal non-spherical subsets (connected witnesses suffice for both).
HyperbolicityVerdict moussong(const Diagram& d);

struct SubsetFlags {
  // Indexed by node bitmask (bit i = node i); entry 0 covers the empty set,
  // which is spherical. A subset is Lanner when it is connected, of negative
  // type, and every proper subset is spherical.
  std::vector<bool> spherical;
  std::vector<bool> lanner;
};

// Classifies every node subset in one pass over a shared exact-sign scan.
SubsetFlags subset_flags(const Diagram& d);

}  // namespace coxlab
