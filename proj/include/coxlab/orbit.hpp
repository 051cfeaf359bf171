#pragma once

// Floating-point exploration of a Tits representation at desk scale: BFS over
// the Cayley ball, proximal limit-point extraction, negative-cone sampling,
// and fundamental-domain disjointness sampling. Everything in this module is
// sampling-based numerical evidence, never a proof; reports carry a label
// saying so, and a fixed seed reproduces a report byte for byte.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxlab/classify.hpp"
#include "coxlab/diagram.hpp"
#include "coxlab/tits.hpp"

namespace coxlab {

using DVec = std::vector<double>;

// Double-precision view of a Tits representation in the b-basis: generator
// matrices (row-major, dim x dim) act on coordinate vectors, gram holds the
// invariant form, and the open fundamental chamber is
// {c : (gram c)_s < 0 for all s}. Exact facts that the sampling operations
// depend on ((H0), Cartan type per component) are computed from the exact
// representation at conversion time and carried along; they are only
// populated in full basis mode.
struct OrbitRep {
  int dim = 0;
  bool full_basis = true;
  std::vector<DVec> generators;
  DVec gram;
  Diagram diagram{1};
  bool h0 = false;
  std::vector<std::vector<int>> comps;
  std::vector<CartanClass> comp_types;
};

OrbitRep orbit_rep(const TitsRepresentation<AlgScalar>& rep);
OrbitRep orbit_rep(const Diagram& d);  // Cosine matrix + Tits build

struct OrbitBall {
  int dim = 0;
  int max_length = 0;
  double tol = 1e-9;
  // BFS order; words[0] is the identity. elements are row-major matrices.
  std::vector<std::vector<int>> words;
  std::vector<DVec> elements;
  // size_by_length[k] = number of elements of word length <= k, k = 0..max_length.
  std::vector<std::size_t> size_by_length;
};

// BFS over generator multiplication; a product is accepted iff its matrix
// differs from every accepted matrix by more than tol in max-norm (words are
// not trusted: the group decides equality). max_length is capped at 12 and
// the element count at 200000.
OrbitBall enumerate_ball(const OrbitRep& rep, int max_length, double tol = 1e-9);

struct LimitSample {
  // Attracting fixed points of proximal ball elements: unit Euclidean norm,
  // sign fixed so the B-pairing with the cone reference point is negative,
  // deduplicated at 1e-6 in max-norm.
  std::vector<DVec> points;
  std::vector<std::vector<int>> words;
  // Largest pairwise B-inner product (the value closest to violating < 0)
  // over pairs of non-collinear points; 0.0 when fewer than two points.
  double min_pairwise_inner = 0.0;
  double max_self_inner = 0.0;  // largest |B(x,x)|: isotropy residue
  std::size_t pairs = 0;
};

// Power iteration with Rayleigh-quotient convergence 1e-12; an element is
// proximal when the iteration converges to a simple real eigenvalue of
// modulus > 1 (residual-checked). Non-proximal elements are skipped.
LimitSample sample_limit_set(const OrbitRep& rep, const OrbitBall& ball);

struct LightReport {
  bool cone_found = false;  // an interior point of {c >= 0, gram c <= 0} was found
  int samples = 0;
  int violations = 0;      // accepted samples with B(x,x) >= 0
  double max_quadratic = 0.0;  // largest B(x,x) over accepted samples
  std::uint64_t seed = 0;
};

// Samples x = sum c_s b_s with c >= 0 and (gram c) <= 0, seeded by the Perron
// vector of a negative-type component, and checks B(x,x) < 0. Requires full
// basis mode, exact (H0), and a negative-type component.
LightReport check_lemma_light(const OrbitRep& rep, int n_samples, std::uint64_t seed);

struct TilingReport {
  int samples = 0;
  std::size_t elements = 0;  // non-identity ball elements tested per sample
  int violations = 0;        // images that stayed interior to the chamber
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

// Samples interior chamber points (margin 1e-6) and checks that every
// non-identity ball element maps them outside the open chamber: an image
// counts as a violation when all facet values stay below -tol. Requires full
// basis mode (the chamber needs a nonsingular form).
TilingReport check_tiling_disjoint(const OrbitRep& rep, const OrbitBall& ball, int n_samples,
                                   std::uint64_t seed, double tol = 1e-9);

// One row per limit point, coordinates at 17 significant digits.
std::string limit_points_csv(const LimitSample& sample);

struct OrbitReport {
  Diagram diagram{1};
  std::vector<std::size_t> ball_sizes;
  std::size_t n_proximal = 0;
  double min_pairwise_inner = 0.0;
  double max_self_inner = 0.0;
  bool light_cone_found = false;
  int light_samples = 0;
  int light_violations = 0;
  int tiling_samples = 0;
  std::size_t tiling_elements = 0;
  int tiling_violations = 0;
  std::uint64_t seed = 0;
  double dedup_tol = 0.0;
  double tiling_tol = 0.0;
};

// Full evidence pipeline: ball, limit sample, cone and tiling sampling.
// Sampling phases whose preconditions fail are skipped (their sample counts
// stay 0); the ball and the limit set always run.
OrbitReport orbit_evidence(const Diagram& d, int max_length, int light_samples,
                           int tiling_samples, std::uint64_t seed, double tol = 1e-9);

std::string to_json(const OrbitReport& r);

}  // namespace coxlab
