#include "coxlab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "json.hpp"

#include "coxlab/linalg.hpp"

namespace coxlab {
namespace {

constexpr std::size_t kBallCapacity = 200000;
constexpr int kMaxBallLength = 12;
constexpr double kRayleighTol = 1e-12;
constexpr double kResidualTol = 1e-8;
constexpr double kProximalMargin = 1e-8;  // |theta| must exceed 1 + this
constexpr double kPointDedupTol = 1e-6;
constexpr double kChamberMargin = 1e-6;
constexpr int kPowerIterations = 400;

// --- flat row-major matrix / vector helpers ---------------------------------

DVec flat(const SqMat<AlgScalar>& a) {
  const std::size_t n = a.size();
  DVec out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = a.at(i, j).to_double();
  return out;
}

DVec mat_mul(int n, const DVec& a, const DVec& b) {
  DVec c(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a[static_cast<std::size_t>(i) * n + k];
      if (aik == 0.0) continue;
      const std::size_t bi = static_cast<std::size_t>(k) * n;
      const std::size_t ci = static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) c[ci + j] += aik * b[bi + j];
    }
  return c;
}

DVec mat_vec(int n, const DVec& a, const DVec& v) {
  DVec w(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    const std::size_t ri = static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) s += a[ri + j] * v[j];
    w[i] = s;
  }
  return w;
}

double dot(const DVec& a, const DVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double euclid_norm(const DVec& v) { return std::sqrt(dot(v, v)); }

double max_abs(const DVec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_norm_diff(const DVec& a, const DVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// B(x, y) = x^T gram y on coordinate vectors.
double bform(const OrbitRep& rep, const DVec& x, const DVec& y) {
  return dot(x, mat_vec(rep.dim, rep.gram, y));
}

// --- tolerance-aware deduplication ------------------------------------------
//
// Vectors are bucketed on two quantized keys, the second offset by half a
// quantum, and a candidate is compared in max-norm against both buckets'
// members. A single coordinate sitting within tol of a grid boundary lands in
// a matching bucket on the other grid (the grids are half a quantum apart, far
// beyond tol), so near-duplicates are caught unless several coordinates
// straddle boundaries of different grids at once, which fp noise of order
// 1e-13 cannot arrange when the quantum is 1e-6. A miss would only double-count
// one element, never merge distinct ones.
class Deduper {
 public:
  explicit Deduper(const std::vector<DVec>& store, double quantum)
      : store_(store), quantum_(quantum) {}

  // True when v is farther than tol (max-norm) from every stored vector; the
  // caller is then expected to push v onto the store and call record().
  bool is_new(const DVec& v, double tol) const {
    for (int g = 0; g < 2; ++g) {
      auto it = buckets_[g].find(key(v, g));
      if (it == buckets_[g].end()) continue;
      for (std::size_t idx : it->second)
        if (max_norm_diff(store_[idx], v) <= tol) return false;
    }
    return true;
  }

  void record(std::size_t index) {
    const DVec& v = store_[index];
    for (int g = 0; g < 2; ++g) buckets_[g][key(v, g)].push_back(index);
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<long long>& k) const {
      std::size_t h = 1469598103934665603ull;
      for (long long x : k) {
        h ^= static_cast<std::size_t>(x);
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  std::vector<long long> key(const DVec& v, int grid) const {
    std::vector<long long> k(v.size());
    const double off = grid == 0 ? 0.0 : 0.5;
    for (std::size_t i = 0; i < v.size(); ++i) k[i] = std::llround(v[i] / quantum_ + off);
    return k;
  }

  const std::vector<DVec>& store_;
  double quantum_;
  std::unordered_map<std::vector<long long>, std::vector<std::size_t>, KeyHash> buckets_[2];
};

// --- eigen / linear solves ----------------------------------------------------

// Power iteration for a simple dominant real eigenvalue of modulus > 1.
// Returns the Rayleigh quotient and a unit eigenvector, or nullopt when the
// iteration fails to converge, the residual is large (complex or tied
// dominant spectrum), or the modulus is not above 1 + margin.
std::optional<std::pair<double, DVec>> dominant_eigen(int n, const DVec& m) {
  DVec v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * (i + 1);
  double nv = euclid_norm(v);
  for (double& x : v) x /= nv;

  double theta = 0.0;
  bool converged = false;
  for (int it = 0; it < kPowerIterations; ++it) {
    DVec w = mat_vec(n, m, v);
    const double nw = euclid_norm(w);
    if (nw < 1e-300) return std::nullopt;
    const double th = dot(v, w);  // Rayleigh quotient (v is unit)
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (it > 0 && std::abs(th - theta) < kRayleighTol * std::max(1.0, std::abs(th))) {
      theta = th;
      converged = true;
      break;
    }
    theta = th;
  }
  if (!converged) return std::nullopt;

  DVec w = mat_vec(n, m, v);
  const double th = dot(v, w);
  for (int i = 0; i < n; ++i) w[i] -= th * v[i];
  if (max_abs(w) > kResidualTol * std::max(1.0, std::abs(th))) return std::nullopt;
  if (std::abs(th) <= 1.0 + kProximalMargin) return std::nullopt;
  return std::make_pair(th, v);
}

// Gaussian elimination with partial pivoting; throws on (numerical)
// singularity. Used for the chamber point gram * c = -1.
DVec solve_linear(int n, DVec a, DVec b) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r) * n + col]) >
          std::abs(a[static_cast<std::size_t>(piv) * n + col]))
        piv = r;
    if (std::abs(a[static_cast<std::size_t>(piv) * n + col]) < 1e-12)
      throw std::runtime_error("orbit: chamber solve hit a singular form");
    if (piv != col) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<std::size_t>(piv) * n + j],
                  a[static_cast<std::size_t>(col) * n + j]);
      std::swap(b[piv], b[col]);
    }
    const double d = a[static_cast<std::size_t>(col) * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[static_cast<std::size_t>(r) * n + col] / d;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j)
        a[static_cast<std::size_t>(r) * n + j] -= f * a[static_cast<std::size_t>(col) * n + j];
      b[r] -= f * b[col];
    }
  }
  DVec x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a[static_cast<std::size_t>(r) * n + j] * x[j];
    x[r] = s / a[static_cast<std::size_t>(r) * n + r];
  }
  return x;
}

// Perron-seeded interior point of {c >= 0, gram c <= 0}: the Perron vector y
// of a negative-type component (power iteration on cI - A_comp) has y > 0 and
// A_comp y < 0; it is padded with zeros on the other components, which the
// orthogonality of components keeps consistent. Returns nullopt when no
// negative-type component exists.
std::optional<DVec> perron_cone_point(const OrbitRep& rep) {
  if (!rep.full_basis) return std::nullopt;
  for (std::size_t ci = 0; ci < rep.comps.size(); ++ci) {
    if (rep.comp_types[ci] != CartanClass::Negative) continue;
    const std::vector<int>& comp = rep.comps[ci];
    const int k = static_cast<int>(comp.size());
    DVec sub(static_cast<std::size_t>(k) * k);
    double row_sum = 0.0;
    for (int i = 0; i < k; ++i) {
      double r = 0.0;
      for (int j = 0; j < k; ++j) {
        const double e = rep.gram[static_cast<std::size_t>(comp[i]) * rep.dim + comp[j]];
        sub[static_cast<std::size_t>(i) * k + j] = e;
        r += std::abs(e);
      }
      row_sum = std::max(row_sum, r);
    }
    // cI - A is nonnegative with positive diagonal; its Perron vector is the
    // eigenvector of A's smallest eigenvalue, which is negative here.
    const double c = 1.0 + row_sum;
    DVec shifted(sub.size());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        shifted[static_cast<std::size_t>(i) * k + j] =
            (i == j ? c : 0.0) - sub[static_cast<std::size_t>(i) * k + j];
    DVec y(k, 1.0);
    for (int it = 0; it < kPowerIterations; ++it) {
      DVec w = mat_vec(k, shifted, y);
      const double nw = euclid_norm(w);
      for (int i = 0; i < k; ++i) y[i] = w[i] / nw;
    }
    if (y[0] < 0.0)
      for (double& x : y) x = -x;
    bool ok = true;
    DVec ay = mat_vec(k, sub, y);
    for (int i = 0; i < k; ++i)
      if (y[i] <= 0.0 || ay[i] >= 0.0) ok = false;
    if (!ok) continue;
    DVec full(rep.dim, 0.0);
    for (int i = 0; i < k; ++i) full[comp[i]] = y[i];
    return full;
  }
  return std::nullopt;
}

}  // namespace

// --- representation views -----------------------------------------------------

OrbitRep orbit_rep(const TitsRepresentation<AlgScalar>& rep) {
  OrbitRep out;
  out.dim = rep.dim;
  out.full_basis = rep.basis_mode == BasisMode::full;
  out.gram = flat(rep.gram);
  out.generators.reserve(rep.generators.size());
  for (const auto& g : rep.generators) out.generators.push_back(flat(g));
  out.diagram = rep.diagram;
  if (out.full_basis) {
    out.h0 = check_H0(rep.gram, rep.diagram).holds;
    out.comps = components(rep.diagram);
    out.comp_types = cartan_type(rep.gram);
  }
  return out;
}

OrbitRep orbit_rep(const Diagram& d) { return orbit_rep(build_tits(cosine_matrix(d), d)); }

// --- Cayley ball ----------------------------------------------------------------

OrbitBall enumerate_ball(const OrbitRep& rep, int max_length, double tol) {
  if (max_length < 0 || max_length > kMaxBallLength)
    throw std::invalid_argument("enumerate_ball: max_length must be between 0 and 12");
  OrbitBall ball;
  ball.dim = rep.dim;
  ball.max_length = max_length;
  ball.tol = tol;

  const int n = rep.dim;
  DVec id(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i) * n + i] = 1.0;

  Deduper dedup(ball.elements, 1e-6);
  ball.words.push_back({});
  ball.elements.push_back(std::move(id));
  dedup.record(0);
  ball.size_by_length.push_back(1);

  std::size_t lo = 0;
  std::size_t hi = 1;
  for (int len = 1; len <= max_length; ++len) {
    for (std::size_t k = lo; k < hi; ++k)
      for (std::size_t s = 0; s < rep.generators.size(); ++s) {
        DVec m = mat_mul(n, ball.elements[k], rep.generators[s]);
        if (!dedup.is_new(m, tol)) continue;
        if (ball.elements.size() >= kBallCapacity)
          throw std::runtime_error("enumerate_ball: element capacity exceeded");
        std::vector<int> w = ball.words[k];
        w.push_back(static_cast<int>(s));
        ball.words.push_back(std::move(w));
        ball.elements.push_back(std::move(m));
        dedup.record(ball.elements.size() - 1);
      }
    lo = hi;
    hi = ball.elements.size();
    ball.size_by_length.push_back(hi);
  }
  return ball;
}

// --- limit set -------------------------------------------------------------------

LimitSample sample_limit_set(const OrbitRep& rep, const OrbitBall& ball) {
  LimitSample out;
  // Reference interior point of the negative cone; all accepted points are
  // sign-fixed against it so pairwise products compare lifts on one side.
  DVec ref = perron_cone_point(rep).value_or(DVec(rep.dim, 1.0));

  Deduper dedup(out.points, 1e-4);
  for (std::size_t k = 1; k < ball.elements.size(); ++k) {
    auto eig = dominant_eigen(rep.dim, ball.elements[k]);
    if (!eig) continue;
    DVec v = std::move(eig->second);
    const double br = bform(rep, v, ref);
    if (br > 0.0) {
      for (double& x : v) x = -x;
    } else if (br == 0.0) {
      for (double x : v) {
        if (std::abs(x) > 1e-9) {
          if (x < 0.0)
            for (double& y : v) y = -y;
          break;
        }
      }
    }
    if (!dedup.is_new(v, kPointDedupTol)) continue;
    out.points.push_back(std::move(v));
    out.words.push_back(ball.words[k]);
    dedup.record(out.points.size() - 1);
  }

  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    out.max_self_inner =
        std::max(out.max_self_inner, std::abs(bform(rep, out.points[i], out.points[i])));
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      // Collinear pairs (within 1e-6 either way) carry no direction
      // information and are excluded from the pairwise bound.
      if (max_norm_diff(out.points[i], out.points[j]) < 1e-6) continue;
      DVec neg = out.points[j];
      for (double& x : neg) x = -x;
      if (max_norm_diff(out.points[i], neg) < 1e-6) continue;
      worst = std::max(worst, bform(rep, out.points[i], out.points[j]));
      ++out.pairs;
    }
  }
  out.min_pairwise_inner = out.pairs > 0 ? worst : 0.0;
  return out;
}

// --- cone sampling -----------------------------------------------------------------

LightReport check_lemma_light(const OrbitRep& rep, int n_samples, std::uint64_t seed) {
  if (!rep.full_basis)
    throw std::invalid_argument("check_lemma_light: full basis mode required");
  if (!rep.h0) throw std::invalid_argument("check_lemma_light: the form must satisfy (H0)");
  auto seedpoint = perron_cone_point(rep);
  if (!seedpoint)
    throw std::invalid_argument("check_lemma_light: no negative-type component");

  LightReport report;
  report.seed = seed;
  report.cone_found = true;
  DVec y = *seedpoint;

  // Perturb within the supporting component, rejection-testing the cone
  // conditions; the perturbation radius keeps most draws inside.
  std::vector<int> support;
  double ymin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rep.dim; ++i)
    if (y[i] != 0.0) {
      support.push_back(i);
      ymin = std::min(ymin, y[i]);
    }
  const double delta = 0.4 * ymin;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-delta, delta);
  report.max_quadratic = -std::numeric_limits<double>::infinity();

  long attempts = 0;
  const long attempt_cap = 200L * n_samples + 1000;
  while (report.samples < n_samples && attempts < attempt_cap) {
    ++attempts;
    DVec c = y;
    for (int i : support) c[i] += unif(rng);
    bool inside = true;
    for (int i : support)
      if (c[i] < 0.0) inside = false;
    DVec w = mat_vec(rep.dim, rep.gram, c);
    for (int i : support)
      if (w[i] > 0.0) inside = false;
    if (!inside) continue;
    ++report.samples;
    const double q = dot(c, w);
    report.max_quadratic = std::max(report.max_quadratic, q);
    if (q >= 0.0) ++report.violations;
  }
  if (report.samples == 0) {
    report.cone_found = false;
    report.max_quadratic = 0.0;
  }
  return report;
}

// --- tiling sampling ----------------------------------------------------------------

TilingReport check_tiling_disjoint(const OrbitRep& rep, const OrbitBall& ball, int n_samples,
                                   std::uint64_t seed, double tol) {
  if (!rep.full_basis)
    throw std::invalid_argument("check_tiling_disjoint: full basis mode required");

  TilingReport report;
  report.tol = tol;
  report.seed = seed;
  report.elements = ball.elements.empty() ? 0 : ball.elements.size() - 1;

  const int n = rep.dim;
  DVec center = solve_linear(n, rep.gram, DVec(n, -1.0));  // (gram c)_s = -1

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.25, 0.25);

  long attempts = 0;
  const long attempt_cap = 200L * n_samples + 1000;
  while (report.samples < n_samples && attempts < attempt_cap) {
    ++attempts;
    DVec c = center;
    for (int i = 0; i < n; ++i) c[i] += unif(rng) * std::max(1.0, std::abs(center[i]));
    DVec w = mat_vec(n, rep.gram, c);
    bool interior = true;
    for (int i = 0; i < n; ++i)
      if (w[i] > -kChamberMargin) interior = false;
    if (!interior) continue;
    ++report.samples;
    for (std::size_t k = 1; k < ball.elements.size(); ++k) {
      DVec image = mat_vec(n, ball.elements[k], c);
      DVec wi = mat_vec(n, rep.gram, image);
      bool still_interior = true;
      for (int i = 0; i < n; ++i)
        if (wi[i] >= -tol) still_interior = false;
      if (still_interior) ++report.violations;
    }
  }
  return report;
}

// --- reports ---------------------------------------------------------------------------

std::string limit_points_csv(const LimitSample& sample) {
  std::string out;
  if (sample.points.empty()) return out;
  const std::size_t dim = sample.points[0].size();
  for (std::size_t j = 0; j < dim; ++j) {
    if (j > 0) out += ',';
    out += 'x';
    out += std::to_string(j);
  }
  out += '\n';
  char buf[64];
  for (const DVec& p : sample.points) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (j > 0) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", p[j]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

OrbitReport orbit_evidence(const Diagram& d, int max_length, int light_samples,
                           int tiling_samples, std::uint64_t seed, double tol) {
  OrbitRep rep = orbit_rep(d);
  OrbitBall ball = enumerate_ball(rep, max_length, tol);
  LimitSample limit = sample_limit_set(rep, ball);

  OrbitReport report;
  report.diagram = d;
  report.ball_sizes = ball.size_by_length;
  report.n_proximal = limit.points.size();
  report.min_pairwise_inner = limit.min_pairwise_inner;
  report.max_self_inner = limit.max_self_inner;
  report.seed = seed;
  report.dedup_tol = tol;
  report.tiling_tol = tol;

  if (light_samples > 0) {
    try {
      LightReport light = check_lemma_light(rep, light_samples, seed);
      report.light_cone_found = light.cone_found;
      report.light_samples = light.samples;
      report.light_violations = light.violations;
    } catch (const std::invalid_argument&) {
      // preconditions not met; the phase is skipped, not failed
    }
  }
  if (tiling_samples > 0) {
    try {
      TilingReport tiling = check_tiling_disjoint(rep, ball, tiling_samples, seed, tol);
      report.tiling_samples = tiling.samples;
      report.tiling_elements = tiling.elements;
      report.tiling_violations = tiling.violations;
    } catch (const std::invalid_argument&) {
    } catch (const std::runtime_error&) {
      // singular form: no chamber interior to sample
    }
  }
  return report;
}

std::string to_json(const OrbitReport& r) {
  nlohmann::json j;
  j["label"] = "numerical evidence";
  j["diagram"] = serialize(r.diagram);
  j["ball_size"] = r.ball_sizes.empty() ? 0 : r.ball_sizes.back();
  j["ball_sizes"] = r.ball_sizes;
  j["n_proximal"] = r.n_proximal;
  j["min_pairwise_inner"] = r.min_pairwise_inner;
  j["max_self_inner"] = r.max_self_inner;
  j["samples"] = {{"lemma_light", r.light_samples}, {"tiling", r.tiling_samples}};
  j["violations"] = {{"lemma_light", r.light_violations}, {"tiling", r.tiling_violations}};
  j["light_cone_found"] = r.light_cone_found;
  j["tiling_elements"] = r.tiling_elements;
  j["seed"] = r.seed;
  j["tolerances"] = {{"dedup", r.dedup_tol}, {"tiling", r.tiling_tol}};
  return j.dump(2);
}

}  // namespace coxlab
