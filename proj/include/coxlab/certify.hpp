#pragma once
// Certification pipelines: the strictly GHC-regular and quasi-Fuchsian checks
// with re-verifiable evidence, Vinberg's determinant identities for one- and
// two-edge cuts, parameter sweeps with exact monotonicity, the lambda
// polynomial of a diagram with one infinite edge together with its
// discriminant factorization, the disconnectedness certificate, and the
// (p, q) region scan of the pentagon family.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlab/diagram.hpp"
#include "coxlab/linalg.hpp"
#include "coxlab/scalar.hpp"

namespace coxlab {

enum class CertificateKind { GHC, QuasiFuchsian, Disconnected };

std::string kind_name(CertificateKind k);  // "ghc", "quasi_fuchsian", "disconnected"

struct CertCheck {
  std::string name;
  bool pass = false;
  std::string evidence;  // witnesses and exact quantities for independent re-checking
};

struct Certificate {
  Diagram diagram;
  CertificateKind kind = CertificateKind::GHC;
  std::vector<CertCheck> checks;
  bool passed = false;  // every check passed
  // Conclusion; set only when passed.
  std::string theorem;
  std::string statement;
};

// Shared pipeline (every check runs even after a failure, so negative
// certificates carry their witnesses): finite labels, Moussong
// hyperbolicity, Lanner-join sphere nerve, Cosine signature, conditions (H0)
// and (H-), and a verified Tits representation. The target signature is
// (rank-2, 2, 0) for certify_ghc and (rank-1, 1, 0) for
// certify_quasi_fuchsian.
Certificate certify_ghc(const Diagram& d);
Certificate certify_quasi_fuchsian(const Diagram& d);

std::string to_json(const Certificate& c);

struct VinbergIdentity {
  std::vector<int> s1, s2;  // the partition induced by the cut
  AlgScalar lhs;            // determinant of the full Cosine matrix
  AlgScalar rhs;            // the factored side
  bool holds = false;
};

// det C_S = det C_{S1} det C_{S2} - 4 cos^2(pi/m) det C_{S1-s} det C_{S2-t}
// when the finite edge (s,t) with label m is the only edge between S1 (the
// part of s) and S2 (the part of t). Empty determinants are 1. Throws when
// the edge does not exist, is infinite, or does not disconnect.
VinbergIdentity vinberg_single_edge_identity(const Diagram& d, int s, int t);

// det C_S = det C_{S1} det C_{S2} + det C_{S2-t} (det C_{S1+t} - 2 det C_{S1})
// when the edges (r,t) and (s,t) are the only edges between S1 (containing r
// and s) and S2 (containing t).
VinbergIdentity vinberg_two_edge_identity(const Diagram& d, int r, int s, int t);

struct SweepRow {
  std::map<std::string, unsigned long> params;
  AlgScalar det;  // determinant of the Cosine matrix, exact
  Inertia sig;
  bool hyperbolic = false;  // Moussong's criterion
  // "spherical", "degenerate", "lorentzian", "ghc", "not-hyperbolic", "other".
  std::string verdict;
};

struct FamilySweep {
  std::string param;
  std::vector<SweepRow> rows;
  bool monotone_increasing = false;  // strict, by exact comparison
  AlgScalar limit_det;               // parameterized entries pushed to -2
};

// Sweeps the unique declared parameter of `shape` over [from, to].
FamilySweep sweep_family(const Diagram& shape, unsigned long from, unsigned long to);

struct LambdaQuadratic {
  AlgScalar a0, a1, a2;  // det C^lambda = a2 lambda^2 + a1 lambda + a0
  AlgScalar delta;       // a1^2 - 4 a0 a2
  // Present when a2 != 0 and delta > 0; lambda1 < lambda2, exact.
  std::optional<std::pair<QuadExt, QuadExt>> roots;
};

// Requires a concrete diagram with exactly one infinite edge. Coefficients
// are interpolated from exact evaluations at lambda = 0, 1, 2 (the
// determinant is quadratic in the single lambda entry).
LambdaQuadratic lambda_polynomial(const Diagram& d);

struct DiscriminantFactorization {
  std::pair<int, int> infinite_edge;
  std::vector<int> s1, s2;  // complements of the infinite edge's endpoints
  AlgScalar det1, det2;     // det C_{S1}, det C_{S2}
  AlgScalar delta;          // a1^2 - 4 a0 a2
  AlgScalar product;        // 16 det1 det2
  bool holds = false;       // delta == product
};

DiscriminantFactorization discriminant_identity(const Diagram& d);

// Disconnectedness certificate for a diagram with one infinite edge: the
// three sign conditions (det1 det2 > 0, a1 a2 < 0, a0 a2 > 0), two distinct
// positive roots, exact vanishing of det C^lambda at both, equal corank-one
// signatures (m, n, 1) with (m, n) the signature of C_{S1}, a non-vanishing
// minor witnessing nullity one, and hyperbolicity. The second overload also
// requires a nerve isomorphism onto the reference diagram's nerve.
Certificate disconnected_check(const Diagram& d);
Certificate disconnected_check(const Diagram& d, const Diagram& reference);

enum class RegionMembership { RD, RL, Neither };

struct RegionVerdict {
  unsigned long p = 0;
  unsigned long q = 0;
  RegionMembership membership = RegionMembership::Neither;
  // Exact signs of det C_{S1}, det C_{S2}, a0, a1, a2, delta.
  int sign_det1 = 0;
  int sign_det2 = 0;
  int sign_a0 = 0;
  int sign_a1 = 0;
  int sign_a2 = 0;
  int sign_delta = 0;
  bool boundary = false;  // some listed quantity vanished exactly
};

// Scans the two-parameter pentagon family (the rank-7 diagram with one
// infinite edge and pendant labels p, q) over 7 <= p <= q <= qmax, p <= pmax.
// Membership: the three sign conditions hold with delta > 0 and the common
// sign of det C_{S1}, det C_{S2} picks the side (+1 -> RD, -1 -> RL); any
// exact zero reports Neither with the boundary flag set.
std::vector<RegionVerdict> region_scan(unsigned long pmax, unsigned long qmax);

}  // namespace coxlab
