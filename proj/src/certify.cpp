#include "coxlab/certify.hpp"

#include <algorithm>
#include <cstddef>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "coxlab/catalog.hpp"
#include "coxlab/classify.hpp"
#include "coxlab/nerve.hpp"
#include "coxlab/tits.hpp"

namespace coxlab {

namespace {

// Node sets in evidence strings are 1-based, matching the serialized diagram.
std::string nodes_text(const std::vector<int>& nodes) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < nodes.size(); ++k) os << (k ? "," : "") << nodes[k] + 1;
  os << "}";
  return os.str();
}

std::string inertia_text(const Inertia& s) {
  return "(" + std::to_string(s.pos) + "," + std::to_string(s.neg) + "," +
         std::to_string(s.nul) + ")";
}

template <class T>
T subdet(const SqMat<T>& a, const std::vector<int>& nodes) {
  if (nodes.empty()) return T(1);
  std::vector<std::size_t> idx(nodes.begin(), nodes.end());
  return determinant(a.submatrix(idx));
}

std::vector<int> erased(std::vector<int> nodes, int drop) {
  nodes.erase(std::remove(nodes.begin(), nodes.end(), drop), nodes.end());
  return nodes;
}

std::vector<int> inserted(std::vector<int> nodes, int add) {
  nodes.insert(std::lower_bound(nodes.begin(), nodes.end(), add), add);
  return nodes;
}

// Reachability from `start` ignoring the listed edges (unordered pairs).
std::vector<char> reach_without(const Diagram& d, int start,
                                const std::vector<std::pair<int, int>>& removed) {
  auto is_removed = [&removed](int i, int j) {
    for (const auto& [a, b] : removed)
      if ((a == i && b == j) || (a == j && b == i)) return true;
    return false;
  };
  std::vector<std::vector<int>> adj(d.rank());
  for (const auto& [k, l] : d.edges()) {
    (void)l;
    if (is_removed(k.first, k.second)) continue;
    adj[k.first].push_back(k.second);
    adj[k.second].push_back(k.first);
  }
  std::vector<char> seen(d.rank(), 0);
  std::queue<int> q;
  q.push(start);
  seen[start] = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (int j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        q.push(j);
      }
  }
  return seen;
}

unsigned long max_finite_label(const Diagram& d) {
  unsigned long m = 2;
  for (const auto& [k, l] : d.edges()) {
    (void)k;
    if (l.is_finite()) m = std::max(m, l.value());
  }
  return m;
}

CertCheck moussong_check(const Diagram& d) {
  HyperbolicityVerdict hv = moussong(d);
  std::string ev;
  if (hv.hyperbolic) {
    ev = "no affine subset of rank >= 3 and no orthogonal pair of non-spherical subsets";
  } else if (hv.affine_witness) {
    ev = "affine subset " + nodes_text(*hv.affine_witness);
  } else if (hv.orthogonal_witness) {
    ev = "orthogonal non-spherical subsets " + nodes_text(hv.orthogonal_witness->first) + " and " +
         nodes_text(hv.orthogonal_witness->second);
  }
  return {"moussong", hv.hyperbolic, ev};
}

Certificate certify_impl(const Diagram& d, CertificateKind kind) {
  if (!d.is_concrete())
    throw std::invalid_argument("certify: diagram has unassigned parameters");
  const int n = d.rank();
  Certificate cert;
  cert.diagram = d;
  cert.kind = kind;
  const Inertia target =
      kind == CertificateKind::GHC ? Inertia{n - 2, 2, 0} : Inertia{n - 1, 1, 0};

  {
    std::ostringstream bad;
    int infinite = 0;
    for (const auto& [k, l] : d.edges())
      if (l.is_infinite()) bad << (infinite++ ? ", " : "") << "(" << k.first + 1 << ","
                               << k.second + 1 << ")";
    cert.checks.push_back({"no_infinite_label", infinite == 0,
                           infinite == 0 ? "all edge labels are finite"
                                         : "infinite labels on " + bad.str()});
  }
  cert.checks.push_back(moussong_check(d));
  {
    auto js = join_sphere_certificate(d);
    std::string ev = js ? "nerve is the join of the Lanner boundaries on " + nodes_text(js->s1) +
                              " and " + nodes_text(js->s2) + ": a PL sphere S^" +
                              std::to_string(js->d - 1)
                        : "no Lanner bipartition matches the spherical subsets";
    cert.checks.push_back({"join_sphere", js.has_value(), ev});
  }

  SqMat<AlgScalar> a = cosine_matrix(d);
  {
    Inertia sig = inertia(a);
    cert.checks.push_back({"signature", sig == target,
                           "inertia " + inertia_text(sig) + ", target " + inertia_text(target)});
  }
  {
    H0Result h0 = check_H0(a, d);
    cert.checks.push_back({"H0", h0.holds,
                           h0.holds ? "no subset of zero type"
                                    : "zero-type subset " + nodes_text(*h0.witness)});
  }
  {
    HminusResult hm = check_Hminus(a, d);
    cert.checks.push_back({"Hminus", hm.holds,
                           hm.holds ? "no orthogonal pair of negative-type subsets"
                                    : "negative-type subsets " + nodes_text(hm.witness->first) +
                                          " and " + nodes_text(hm.witness->second)});
  }
  try {
    auto rep = build_tits(a, d);
    int cap = static_cast<int>(std::max<unsigned long>(50, max_finite_label(d)));
    RelationReport rr = verify_relations(rep, cap);
    bool inv = verify_invariance(rep);
    std::ostringstream ev;
    ev << "dimension " << rep.dim << " ("
       << (rep.basis_mode == BasisMode::full ? "full" : "reduced") << " basis), "
       << rr.checks.size() << " relation checks, invariance " << (inv ? "exact" : "violated");
    if (!rr.all_pass)
      for (const auto& ck : rr.checks)
        if (!ck.pass) {
          ev << "; first failure: " << ck.detail;
          break;
        }
    cert.checks.push_back({"tits", rr.all_pass && inv, ev.str()});
  } catch (const std::invalid_argument& e) {
    cert.checks.push_back({"tits", false, e.what()});
  }

  cert.passed = std::all_of(cert.checks.begin(), cert.checks.end(),
                            [](const CertCheck& c) { return c.pass; });
  if (cert.passed) {
    const int dim = n - 2;
    if (kind == CertificateKind::GHC) {
      cert.theorem = "strictly GHC-regular criterion";
      cert.statement = "the group is word-hyperbolic, the nerve is a PL sphere of dimension " +
                       std::to_string(dim - 1) +
                       " split as a join of two Lanner boundaries, and the Cosine form is "
                       "nondegenerate of signature (" +
                       std::to_string(dim) +
                       ",2) satisfying (H0) and (H-); the Tits-Vinberg representation is "
                       "discrete, faithful, and strictly GHC-regular";
    } else {
      cert.theorem = "Lorentzian quasi-Fuchsian criterion";
      cert.statement = "the group is word-hyperbolic, the nerve is a PL sphere of dimension " +
                       std::to_string(dim - 1) +
                       ", and the Cosine form is Lorentzian of signature (" +
                       std::to_string(dim + 1) +
                       ",1) satisfying (H0) and (H-); the Tits-Vinberg representation is "
                       "discrete, faithful, and quasi-Fuchsian: convex-cocompact with limit set "
                       "a sphere of dimension " +
                       std::to_string(dim - 1);
    }
  }
  return cert;
}

// The single infinite edge, or a reason the precondition fails.
std::pair<int, int> the_infinite_edge(const Diagram& d, const char* caller) {
  if (!d.is_concrete())
    throw std::invalid_argument(std::string(caller) + ": diagram has unassigned parameters");
  std::optional<std::pair<int, int>> found;
  for (const auto& [k, l] : d.edges())
    if (l.is_infinite()) {
      if (found) throw std::invalid_argument(std::string(caller) + ": more than one infinite edge");
      found = k;
    }
  if (!found) throw std::invalid_argument(std::string(caller) + ": no infinite edge");
  return *found;
}

DiscriminantFactorization discriminant_impl(const Diagram& d, const LambdaQuadratic& lq) {
  DiscriminantFactorization out;
  out.infinite_edge = the_infinite_edge(d, "discriminant_identity");
  for (int i = 0; i < d.rank(); ++i) {
    if (i != out.infinite_edge.first) out.s1.push_back(i);
    if (i != out.infinite_edge.second) out.s2.push_back(i);
  }
  SqMat<AlgScalar> a = cosine_matrix(d);
  out.det1 = subdet(a, out.s1);
  out.det2 = subdet(a, out.s2);
  out.delta = lq.delta;
  out.product = AlgScalar(16) * out.det1 * out.det2;
  out.holds = out.delta == out.product;
  return out;
}

Certificate disconnected_impl(const Diagram& d, const Diagram* reference) {
  LambdaQuadratic lq = lambda_polynomial(d);
  DiscriminantFactorization df = discriminant_impl(d, lq);
  Certificate cert;
  cert.diagram = d;
  cert.kind = CertificateKind::Disconnected;

  const int sd1 = sign(df.det1), sd2 = sign(df.det2);
  const int sa0 = sign(lq.a0), sa1 = sign(lq.a1), sa2 = sign(lq.a2);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  {
    bool pass = sd1 * sd2 > 0 && sa1 * sa2 < 0 && sa0 * sa2 > 0;
    std::ostringstream ev;
    ev << "det1 det2 > 0: " << yn(sd1 * sd2 > 0) << "; a1 a2 < 0: " << yn(sa1 * sa2 < 0)
       << "; a0 a2 > 0: " << yn(sa0 * sa2 > 0) << " (signs det1=" << sd1 << " det2=" << sd2
       << " a0=" << sa0 << " a1=" << sa1 << " a2=" << sa2 << ")";
    cert.checks.push_back({"sign_conditions", pass, ev.str()});
  }
  cert.checks.push_back({"discriminant_factorization", df.holds,
                         "a1^2 - 4 a0 a2 = 16 det(C_S1) det(C_S2): " + df.delta.to_float(6) +
                             " vs " + df.product.to_float(6)});
  bool roots_positive = lq.roots && sign(lq.roots->first) > 0;  // then lambda2 > lambda1 > 0
  {
    std::string ev;
    if (!lq.roots) {
      ev = "no two distinct real roots (a2 = 0 or delta <= 0)";
    } else {
      ev = "lambda1 = " + lq.roots->first.to_float(6) +
           ", lambda2 = " + lq.roots->second.to_float(6);
      if (!roots_positive) ev += " (lambda1 is not positive)";
    }
    cert.checks.push_back({"distinct_positive_roots", roots_positive, ev});
  }

  if (roots_positive) {
    const auto& [l1, l2] = *lq.roots;
    SqMat<QuadExt> c1 = lambda_cosine_matrix(d, l1);
    SqMat<QuadExt> c2 = lambda_cosine_matrix(d, l2);
    {
      bool z1 = determinant(c1).is_zero();
      bool z2 = determinant(c2).is_zero();
      cert.checks.push_back({"roots_annihilate", z1 && z2,
                             std::string("det C^lambda1 = 0 exactly: ") + yn(z1) +
                                 "; det C^lambda2 = 0 exactly: " + yn(z2)});
    }
    {
      Inertia base = inertia(cosine_matrix(d).submatrix(
          std::vector<std::size_t>(df.s1.begin(), df.s1.end())));
      Inertia target{base.pos, base.neg, 1};
      Inertia i1 = inertia(c1);
      Inertia i2 = inertia(c2);
      cert.checks.push_back({"root_signatures", i1 == target && i2 == target,
                             "inertia " + inertia_text(i1) + " and " + inertia_text(i2) +
                                 ", target " + inertia_text(target) + " from C_S1 signature (" +
                                 std::to_string(base.pos) + "," + std::to_string(base.neg) + ")"});
    }
    {
      auto minor_witness = [&](const SqMat<QuadExt>& c) -> std::optional<std::pair<int, QuadExt>> {
        std::vector<int> order{df.infinite_edge.first, df.infinite_edge.second};
        for (int j = 0; j < d.rank(); ++j)
          if (j != order[0] && j != order[1]) order.push_back(j);
        std::vector<int> all(d.rank());
        for (int j = 0; j < d.rank(); ++j) all[j] = j;
        for (int j : order) {
          QuadExt m = subdet(c, erased(all, j));
          if (!m.is_zero()) return std::make_pair(j, m);
        }
        return std::nullopt;
      };
      auto w1 = minor_witness(c1);
      auto w2 = minor_witness(c2);
      std::string ev;
      if (w1 && w2)
        ev = "nullity is one: deleting node " + std::to_string(w1->first + 1) +
             " leaves minor " + w1->second.to_float(6) + " at lambda1, node " +
             std::to_string(w2->first + 1) + " leaves minor " + w2->second.to_float(6) +
             " at lambda2";
      else
        ev = "no non-vanishing maximal minor found";
      cert.checks.push_back({"corank_witness", w1.has_value() && w2.has_value(), ev});
    }
  } else {
    for (const char* name : {"roots_annihilate", "root_signatures", "corank_witness"})
      cert.checks.push_back({name, false, "not evaluated: no two distinct positive roots"});
  }

  cert.checks.push_back(moussong_check(d));
  if (reference != nullptr) {
    auto iso = complexes_isomorphic(nerve(d), nerve(*reference));
    std::string ev;
    if (iso) {
      std::ostringstream os;
      os << "nerve isomorphic to the reference nerve via (";
      for (std::size_t k = 0; k < iso->size(); ++k) os << (k ? " " : "") << (*iso)[k] + 1;
      os << ")";
      ev = os.str();
    } else {
      ev = "nerves are not isomorphic";
    }
    cert.checks.push_back({"nerve_reference", iso.has_value(), ev});
  }

  cert.passed = std::all_of(cert.checks.begin(), cert.checks.end(),
                            [](const CertCheck& c) { return c.pass; });
  if (cert.passed) {
    cert.theorem = "disconnectedness criterion";
    cert.statement =
        "the lambda-Cosine family degenerates at exactly two parameters, both positive, with "
        "equal corank-one signatures; the reflection representations at lambda1 and lambda2 are "
        "irreducible and lie in distinct connected components of the space of discrete faithful "
        "representations";
  }
  return cert;
}

std::string verdict_for(const Inertia& s, int n, bool hyperbolic) {
  if (s.nul > 0) return "degenerate";
  if (s.pos == n) return "spherical";
  if (s == Inertia{n - 1, 1, 0}) return "lorentzian";
  if (s == Inertia{n - 2, 2, 0}) return hyperbolic ? "ghc" : "not-hyperbolic";
  return "other";
}

}  // namespace

std::string kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::GHC:
      return "ghc";
    case CertificateKind::QuasiFuchsian:
      return "quasi_fuchsian";
    case CertificateKind::Disconnected:
      return "disconnected";
  }
  return "";
}

Certificate certify_ghc(const Diagram& d) { return certify_impl(d, CertificateKind::GHC); }

Certificate certify_quasi_fuchsian(const Diagram& d) {
  return certify_impl(d, CertificateKind::QuasiFuchsian);
}

std::string to_json(const Certificate& c) {
  nlohmann::json j;
  j["diagram"] = serialize(c.diagram);
  j["kind"] = kind_name(c.kind);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& ck : c.checks)
    checks.push_back({{"name", ck.name}, {"pass", ck.pass}, {"evidence", ck.evidence}});
  j["checks"] = checks;
  if (c.passed)
    j["conclusion"] = {{"theorem", c.theorem}, {"statement", c.statement}};
  else
    j["conclusion"] = nullptr;
  return j.dump(2);
}

VinbergIdentity vinberg_single_edge_identity(const Diagram& d, int s, int t) {
  if (!d.is_concrete())
    throw std::invalid_argument("vinberg_single_edge_identity: diagram has unassigned parameters");
  if (s < 0 || t < 0 || s >= d.rank() || t >= d.rank() || s == t)
    throw std::invalid_argument("vinberg_single_edge_identity: bad node pair");
  auto lab = d.edge_label(s, t);
  if (!lab || !lab->is_finite())
    throw std::invalid_argument("vinberg_single_edge_identity: (s,t) must carry a finite label");
  auto reach = reach_without(d, t, {{s, t}});
  if (reach[s])
    throw std::invalid_argument("vinberg_single_edge_identity: the edge does not separate s from t");
  VinbergIdentity out;
  for (int i = 0; i < d.rank(); ++i) (reach[i] ? out.s2 : out.s1).push_back(i);
  SqMat<AlgScalar> a = cosine_matrix(d);
  AlgScalar det1 = subdet(a, out.s1);
  AlgScalar det2 = subdet(a, out.s2);
  AlgScalar det1s = subdet(a, erased(out.s1, s));
  AlgScalar det2t = subdet(a, erased(out.s2, t));
  AlgScalar c = AlgScalar::two_cos_pi_over(lab->value());  // c^2 = 4 cos^2(pi/m)
  out.lhs = determinant(a);
  out.rhs = det1 * det2 - det1s * det2t * c * c;
  out.holds = out.lhs == out.rhs;
  return out;
}

VinbergIdentity vinberg_two_edge_identity(const Diagram& d, int r, int s, int t) {
  if (!d.is_concrete())
    throw std::invalid_argument("vinberg_two_edge_identity: diagram has unassigned parameters");
  if (r < 0 || s < 0 || t < 0 || r >= d.rank() || s >= d.rank() || t >= d.rank() || r == s ||
      r == t || s == t)
    throw std::invalid_argument("vinberg_two_edge_identity: bad node triple");
  if (!d.edge_label(r, t) || !d.edge_label(s, t))
    throw std::invalid_argument("vinberg_two_edge_identity: (r,t) and (s,t) must be edges");
  auto reach = reach_without(d, t, {{r, t}, {s, t}});
  if (reach[r] || reach[s])
    throw std::invalid_argument(
        "vinberg_two_edge_identity: the two edges do not separate {r,s} from t");
  VinbergIdentity out;
  for (int i = 0; i < d.rank(); ++i) (reach[i] ? out.s2 : out.s1).push_back(i);
  SqMat<AlgScalar> a = cosine_matrix(d);
  AlgScalar det1 = subdet(a, out.s1);
  AlgScalar det2 = subdet(a, out.s2);
  AlgScalar det2t = subdet(a, erased(out.s2, t));
  AlgScalar det1t = subdet(a, inserted(out.s1, t));
  out.lhs = determinant(a);
  out.rhs = det1 * det2 + det2t * (det1t - AlgScalar(2) * det1);
  out.holds = out.lhs == out.rhs;
  return out;
}

FamilySweep sweep_family(const Diagram& shape, unsigned long from, unsigned long to) {
  if (shape.params().size() != 1)
    throw std::invalid_argument("sweep_family: shape must declare exactly one parameter");
  if (from > to) throw std::invalid_argument("sweep_family: empty range");
  const ParamSpec& sp = shape.params().front();
  std::vector<std::pair<int, int>> swept;
  for (const auto& [k, l] : shape.edges())
    if (l.is_param() && l.param_name() == sp.name) swept.push_back(k);
  FamilySweep out;
  out.param = sp.name;
  // Labels are substituted directly so the sweep may reach below the declared
  // minimum (a family's degenerate boundary is itself of interest).
  for (unsigned long v = from; v <= to; ++v) {
    Diagram inst = shape;
    for (const auto& [i, j] : swept) inst.set_edge(i, j, Label::finite(v));
    SqMat<AlgScalar> a = cosine_matrix(inst);
    SweepRow row;
    row.params = {{sp.name, v}};
    row.det = determinant(a);
    row.sig = inertia(a);
    row.hyperbolic = moussong(inst).hyperbolic;
    row.verdict = verdict_for(row.sig, inst.rank(), row.hyperbolic);
    out.rows.push_back(std::move(row));
  }
  out.monotone_increasing = true;
  for (std::size_t k = 0; k + 1 < out.rows.size(); ++k)
    if (sign(out.rows[k + 1].det - out.rows[k].det) <= 0) {
      out.monotone_increasing = false;
      break;
    }
  // The limit diagram: every parameterized entry pushed to -2.
  Diagram lim = shape;
  std::vector<std::pair<int, int>> param_edges;
  for (const auto& [k, l] : shape.edges())
    if (l.is_param()) param_edges.push_back(k);
  for (const auto& [i, j] : param_edges) lim.set_edge(i, j, Label::infinity());
  out.limit_det = determinant(lambda_cosine_matrix(lim, mpq_class(0)));
  return out;
}

namespace {

// Coefficients and discriminant only. Root construction needs 1/(2 a2), and
// inverting an irrational element solves a dense linear system over the whole
// cyclotomic field, which grows expensive with the labels; sign-based
// consumers (the region scan, the factorization identity) stay on this path.
LambdaQuadratic quad_coeffs(const Diagram& d) {
  AlgScalar f0 = determinant(lambda_cosine_matrix(d, mpq_class(0)));
  AlgScalar f1 = determinant(lambda_cosine_matrix(d, mpq_class(1)));
  AlgScalar f2 = determinant(lambda_cosine_matrix(d, mpq_class(2)));
  LambdaQuadratic out;
  out.a0 = f0;
  out.a2 = (f2 - f1 - f1 + f0) / AlgScalar(2);
  out.a1 = f1 - f0 - out.a2;
  out.delta = out.a1 * out.a1 - AlgScalar(4) * out.a0 * out.a2;
  return out;
}

}  // namespace

LambdaQuadratic lambda_polynomial(const Diagram& d) {
  the_infinite_edge(d, "lambda_polynomial");  // validates the precondition
  LambdaQuadratic out = quad_coeffs(d);
  if (!out.a2.is_zero() && sign(out.delta) > 0) {
    AlgScalar q = AlgScalar(1) / (AlgScalar(2) * out.a2);
    QuadExt u(-out.a1 * q, q, out.delta);
    QuadExt v(-out.a1 * q, -q, out.delta);
    out.roots = sign(out.a2) > 0 ? std::make_pair(v, u) : std::make_pair(u, v);
  }
  return out;
}

DiscriminantFactorization discriminant_identity(const Diagram& d) {
  the_infinite_edge(d, "discriminant_identity");
  return discriminant_impl(d, quad_coeffs(d));
}

Certificate disconnected_check(const Diagram& d) { return disconnected_impl(d, nullptr); }

Certificate disconnected_check(const Diagram& d, const Diagram& reference) {
  return disconnected_impl(d, &reference);
}

std::vector<RegionVerdict> region_scan(unsigned long pmax, unsigned long qmax) {
  std::vector<RegionVerdict> out;
  for (unsigned long p = 7; p <= pmax; ++p) {
    for (unsigned long q = p; q <= qmax; ++q) {
      Diagram d = catalog_get("barbot2_dim4", "F1", {{"p", p}, {"q", q}});
      LambdaQuadratic lq = quad_coeffs(d);
      DiscriminantFactorization df = discriminant_impl(d, lq);
      RegionVerdict v;
      v.p = p;
      v.q = q;
      v.sign_det1 = sign(df.det1);
      v.sign_det2 = sign(df.det2);
      v.sign_a0 = sign(lq.a0);
      v.sign_a1 = sign(lq.a1);
      v.sign_a2 = sign(lq.a2);
      v.sign_delta = sign(lq.delta);
      v.boundary = v.sign_det1 == 0 || v.sign_det2 == 0 || v.sign_a0 == 0 || v.sign_a1 == 0 ||
                   v.sign_a2 == 0 || v.sign_delta == 0;
      bool common = !v.boundary && v.sign_det1 * v.sign_det2 > 0 && v.sign_a1 * v.sign_a2 < 0 &&
                    v.sign_a0 * v.sign_a2 > 0 && v.sign_delta > 0;
      v.membership = common ? (v.sign_det1 > 0 ? RegionMembership::RD : RegionMembership::RL)
                            : RegionMembership::Neither;
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace coxlab
