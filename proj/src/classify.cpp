#include "coxlab/classify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coxlab {
namespace {

constexpr int kMaxScanRank = 16;

void check_capacity(std::size_t n) {
  if (n > kMaxScanRank)
    throw std::length_error("classify: subset scans support at most 16 nodes");
}

std::vector<int> mask_nodes(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Validates the Cartan shape (diagonal 2, symmetric, off-diagonal <= 0) and
// returns per-node neighbor bitmasks (nonzero off-diagonal entries).
template <class T>
std::vector<std::uint32_t> cartan_adjacency(const SqMat<T>& a) {
  check_capacity(a.size());
  const int n = static_cast<int>(a.size());
  const T two(2);
  std::vector<std::uint32_t> adj(n, 0);
  for (int i = 0; i < n; ++i) {
    if (sign(a.at(i, i) - two) != 0)
      throw std::invalid_argument("cartan matrix: diagonal entries must equal 2");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (sign(a.at(i, j) - a.at(j, i)) != 0)
        throw std::invalid_argument("cartan matrix: must be symmetric");
      int s = sign(a.at(i, j));
      if (s > 0) throw std::invalid_argument("cartan matrix: positive off-diagonal entry");
      if (s != 0) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
    }
  }
  return adj;
}

std::vector<std::uint32_t> diagram_adjacency(const Diagram& d) {
  check_capacity(d.rank());
  std::vector<std::uint32_t> adj(d.rank(), 0);
  for (const auto& [key, label] : d.edges()) {
    adj[key.first] |= 1u << key.second;
    adj[key.second] |= 1u << key.first;
  }
  return adj;
}

// Subset scan engine: exact determinant signs of principal submatrices,
// memoized by node bitmask. Irrational entries are handled by interpolating
// the submatrix determinant as a polynomial in the distinct entry values
// (rational submatrices go straight to Bareiss). Positive definiteness runs
// down the leading-minor chain: a matrix is pd iff det > 0 and the
// lowest-node-deleted minor is pd (eigenvalue interlacing).
template <class T>
class CartanScan {
 public:
  CartanScan(const SqMat<T>& a, std::vector<std::uint32_t> adj)
      : n_(static_cast<int>(a.size())), adj_(std::move(adj)), split_(split_entries(a)) {
    powers_.resize(split_.values.size());
    for (auto& p : powers_) p.push_back(T(1));
  }

  int size() const { return n_; }
  std::uint32_t full_mask() const { return (1u << n_) - 1u; }

  bool connected(std::uint32_t mask) const {
    if (mask == 0) return false;
    std::uint32_t seen = mask & (~mask + 1u);
    for (;;) {
      std::uint32_t grown = seen;
      for (std::uint32_t m = seen; m != 0; m &= m - 1) grown |= adj_[std::countr_zero(m)];
      grown &= mask;
      if (grown == seen) return seen == mask;
      seen = grown;
    }
  }

  // mask plus every node adjacent to it.
  std::uint32_t closure(std::uint32_t mask) const {
    std::uint32_t out = mask;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) out |= adj_[std::countr_zero(m)];
    return out;
  }

  int det_sign(std::uint32_t mask) {
    if (mask == 0) return 1;
    if (auto it = det_memo_.find(mask); it != det_memo_.end()) return it->second;
    std::vector<std::size_t> idx;
    std::vector<int> where(n_, -1);
    for (int i = 0; i < n_; ++i) {
      if (mask & (1u << i)) {
        where[i] = static_cast<int>(idx.size());
        idx.push_back(static_cast<std::size_t>(i));
      }
    }
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> vars;
    std::vector<std::size_t> used;
    for (std::size_t v = 0; v < split_.positions.size(); ++v) {
      std::vector<std::pair<std::size_t, std::size_t>> pos;
      for (const auto& [pi, pj] : split_.positions[v]) {
        if (where[pi] >= 0 && where[pj] >= 0)
          pos.emplace_back(static_cast<std::size_t>(where[pi]), static_cast<std::size_t>(where[pj]));
      }
      if (!pos.empty()) {
        used.push_back(v);
        vars.push_back(std::move(pos));
      }
    }
    int s;
    if (used.empty()) {
      s = sign(det_bareiss(split_.base.submatrix(idx)));
    } else {
      detail::SparsePoly p = det_polynomial(split_.base.submatrix(idx), vars);
      std::vector<std::vector<T>> pw;
      pw.reserve(used.size());
      for (std::size_t k = 0; k < used.size(); ++k)
        pw.push_back(powers(used[k], static_cast<int>(vars[k].size())));
      s = sign(detail::eval_poly(p, pw));
    }
    det_memo_.emplace(mask, s);
    return s;
  }

  bool pos_def(std::uint32_t mask) {
    if (mask == 0) return true;
    if (auto it = pd_memo_.find(mask); it != pd_memo_.end()) return it->second;
    std::uint32_t low = mask & (~mask + 1u);
    bool pd = det_sign(mask) > 0 && pos_def(mask ^ low);
    pd_memo_.emplace(mask, pd);
    return pd;
  }

  // Type of a connected submatrix: pd is Positive; det = 0 with a pd
  // one-node-deleted minor is Zero (interlacing pins the nullity to 1, and
  // for connected Cartan matrices of zero type every proper minor is pd, so
  // checking one is enough); everything else is Negative.
  CartanClass type(std::uint32_t mask) {
    if (pos_def(mask)) return CartanClass::Positive;
    std::uint32_t low = mask & (~mask + 1u);
    if (det_sign(mask) == 0 && pos_def(mask ^ low)) return CartanClass::Zero;
    return CartanClass::Negative;
  }

  std::vector<std::uint32_t> component_masks(std::uint32_t within) const {
    std::vector<std::uint32_t> out;
    std::uint32_t remaining = within;
    while (remaining != 0) {
      std::uint32_t comp = remaining & (~remaining + 1u);
      for (;;) {
        std::uint32_t grown = closure(comp) & within;
        if (grown == comp) break;
        comp = grown;
      }
      out.push_back(comp);
      remaining &= ~comp;
    }
    return out;
  }

 private:
  const std::vector<T>& powers(std::size_t v, int deg) {
    auto& p = powers_[v];
    while (static_cast<int>(p.size()) <= deg) p.push_back(p.back() * split_.values[v]);
    return p;
  }

  int n_;
  std::vector<std::uint32_t> adj_;
  EntrySplit<T> split_;
  std::vector<std::vector<T>> powers_;
  std::map<std::uint32_t, int> det_memo_;
  std::map<std::uint32_t, bool> pd_memo_;
};

// First (ascending bitmask order) connected zero-type subset of >= min_size nodes.
template <class T>
std::optional<std::vector<int>> first_zero_subset(CartanScan<T>& scan, int min_size) {
  const std::uint32_t full = scan.full_mask();
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) < min_size) continue;
    if (!scan.connected(mask)) continue;
    if (scan.type(mask) == CartanClass::Zero) return mask_nodes(mask);
  }
  return std::nullopt;
}

// First orthogonal pair of connected subsets whose type satisfies bad,
// ordered by (first mask, second mask) ascending.
template <class T, class Pred>
std::optional<std::pair<std::vector<int>, std::vector<int>>> first_orthogonal_pair(
    CartanScan<T>& scan, Pred bad) {
  std::vector<std::uint32_t> hits;
  const std::uint32_t full = scan.full_mask();
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (scan.connected(mask) && bad(scan.type(mask))) hits.push_back(mask);
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    std::uint32_t cl = scan.closure(hits[i]);
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      if ((cl & hits[j]) == 0)
        return std::make_pair(mask_nodes(hits[i]), mask_nodes(hits[j]));
    }
  }
  return std::nullopt;
}

// ---- catalog-name recognition (structural; complete for the three tables) ----

struct LabeledGraph {
  int n = 0;
  int edge_count = 0;
  int max_deg = 0;
  bool has_inf = false;
  bool all_label3 = true;
  std::vector<int> deg;
  // (neighbor, label) with label 0 standing for infinity; sorted.
  std::vector<std::vector<std::pair<int, unsigned long>>> nb;
};

LabeledGraph labeled_graph(const Diagram& d) {
  LabeledGraph g;
  g.n = d.rank();
  g.deg.assign(g.n, 0);
  g.nb.resize(g.n);
  for (const auto& [key, label] : d.edges()) {
    unsigned long m = label.is_finite() ? label.value() : 0;
    if (label.is_infinite()) g.has_inf = true;
    if (m != 3) g.all_label3 = false;
    g.nb[key.first].emplace_back(key.second, m);
    g.nb[key.second].emplace_back(key.first, m);
    ++g.deg[key.first];
    ++g.deg[key.second];
    ++g.edge_count;
  }
  for (auto& v : g.nb) std::sort(v.begin(), v.end());
  for (int x : g.deg) g.max_deg = std::max(g.max_deg, x);
  return g;
}

bool is_path(const LabeledGraph& g) {
  return g.n >= 2 && g.edge_count == g.n - 1 && g.max_deg <= 2;
}

bool is_cycle(const LabeledGraph& g) {
  return g.n >= 3 && g.edge_count == g.n && g.max_deg == 2;
}

// End-to-end label sequence of a path, lexicographically greatest direction.
std::vector<unsigned long> path_labels(const LabeledGraph& g) {
  int start = 0;
  while (g.deg[start] != 1) ++start;
  std::vector<unsigned long> seq;
  int prev = -1, cur = start;
  while (static_cast<int>(seq.size()) < g.n - 1) {
    for (const auto& [nx, m] : g.nb[cur]) {
      if (nx != prev) {
        seq.push_back(m);
        prev = cur;
        cur = nx;
        break;
      }
    }
  }
  std::vector<unsigned long> rev(seq.rbegin(), seq.rend());
  return std::max(seq, rev);
}

// Cyclic label sequence, lexicographically greatest over rotations and
// reflections.
std::vector<unsigned long> cycle_labels(const LabeledGraph& g) {
  std::vector<unsigned long> seq;
  int prev = -1, cur = 0;
  for (int step = 0; step < g.n; ++step) {
    for (const auto& [nx, m] : g.nb[cur]) {
      if (nx != prev) {
        seq.push_back(m);
        prev = cur;
        cur = nx;
        break;
      }
    }
  }
  std::vector<unsigned long> best = seq;
  for (int refl = 0; refl < 2; ++refl) {
    for (std::size_t r = 0; r < seq.size(); ++r) {
      std::vector<unsigned long> rot(seq.begin() + r, seq.end());
      rot.insert(rot.end(), seq.begin(), seq.begin() + r);
      best = std::max(best, rot);
    }
    std::reverse(seq.begin(), seq.end());
  }
  return best;
}

// Label sequences of the arms hanging off node c, each read outward from c.
// Arms stop at leaves or at another branch node.
std::vector<std::vector<unsigned long>> arms_at(const LabeledGraph& g, int c) {
  std::vector<std::vector<unsigned long>> arms;
  for (const auto& [first, m0] : g.nb[c]) {
    std::vector<unsigned long> arm{m0};
    int prev = c, cur = first;
    while (g.deg[cur] == 2) {
      for (const auto& [nx, m] : g.nb[cur]) {
        if (nx != prev) {
          arm.push_back(m);
          prev = cur;
          cur = nx;
          break;
        }
      }
    }
    arms.push_back(std::move(arm));
  }
  return arms;
}

std::vector<int> sorted_arm_lengths(const std::vector<std::vector<unsigned long>>& arms) {
  std::vector<int> len;
  len.reserve(arms.size());
  for (const auto& a : arms) len.push_back(static_cast<int>(a.size()));
  std::sort(len.rbegin(), len.rend());
  return len;
}

std::string join_labels(const std::vector<unsigned long>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::optional<std::string> spherical_name(const Diagram& d) {
  LabeledGraph g = labeled_graph(d);
  const int n = g.n;
  if (n == 1) return "A_1";
  if (g.has_inf) return std::nullopt;
  if (is_path(g)) {
    std::vector<unsigned long> c = path_labels(g);
    if (g.all_label3) return "A_" + std::to_string(n);
    bool b_shape = c[0] == 4 && std::all_of(c.begin() + 1, c.end(), [](auto m) { return m == 3; });
    if (b_shape) return "B_" + std::to_string(n);
    if (n == 2 && c[0] >= 5) return "I_2(" + std::to_string(c[0]) + ")";
    if (c == std::vector<unsigned long>{5, 3}) return "H_3";
    if (c == std::vector<unsigned long>{5, 3, 3}) return "H_4";
    if (c == std::vector<unsigned long>{3, 4, 3}) return "F_4";
    return std::nullopt;
  }
  int branchers = 0;
  for (int x : g.deg) branchers += (x >= 3);
  if (g.edge_count == n - 1 && branchers == 1 && g.max_deg == 3 && g.all_label3) {
    int c = 0;
    while (g.deg[c] != 3) ++c;
    std::vector<int> len = sorted_arm_lengths(arms_at(g, c));
    if (len[1] == 1 && len[2] == 1) return "D_" + std::to_string(n);
    if (len == std::vector<int>{2, 2, 1}) return "E_6";
    if (len == std::vector<int>{3, 2, 1}) return "E_7";
    if (len == std::vector<int>{4, 2, 1}) return "E_8";
  }
  return std::nullopt;
}

std::optional<std::string> affine_name(const Diagram& d) {
  LabeledGraph g = labeled_graph(d);
  const int n = g.n;
  if (n == 2) return g.has_inf ? std::optional<std::string>("Ã_1") : std::nullopt;
  if (g.has_inf) return std::nullopt;
  if (is_cycle(g) && g.all_label3) return "Ã_" + std::to_string(n - 1);
  if (is_path(g)) {
    std::vector<unsigned long> c = path_labels(g);
    if (c == std::vector<unsigned long>{4, 4}) return "C̃_2";
    if (c == std::vector<unsigned long>{6, 3}) return "G̃_2";
    if (c == std::vector<unsigned long>{3, 4, 3, 3}) return "F̃_4";
    bool c_shape = n >= 4 && c.front() == 4 && c.back() == 4 &&
                   std::all_of(c.begin() + 1, c.end() - 1, [](auto m) { return m == 3; });
    if (c_shape) return "C̃_" + std::to_string(n - 1);
    return std::nullopt;
  }
  if (g.edge_count != n - 1) return std::nullopt;  // remaining families are trees
  std::vector<int> branch;
  for (int i = 0; i < n; ++i) {
    if (g.deg[i] >= 3) branch.push_back(i);
  }
  if (branch.size() == 1 && g.deg[branch[0]] == 4 && g.all_label3) {
    std::vector<int> len = sorted_arm_lengths(arms_at(g, branch[0]));
    if (len == std::vector<int>{1, 1, 1, 1}) return "D̃_4";
    return std::nullopt;
  }
  if (branch.size() == 1 && g.deg[branch[0]] == 3) {
    std::vector<std::vector<unsigned long>> arms = arms_at(g, branch[0]);
    if (g.all_label3) {
      std::vector<int> len = sorted_arm_lengths(arms);
      if (len == std::vector<int>{2, 2, 2}) return "Ẽ_6";
      if (len == std::vector<int>{3, 3, 1}) return "Ẽ_7";
      if (len == std::vector<int>{5, 2, 1}) return "Ẽ_8";
      return std::nullopt;
    }
    // B-tilde: two single-edge arms labeled 3, one arm all 3s ending in a 4.
    std::sort(arms.begin(), arms.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    if (arms[0] == std::vector<unsigned long>{3} && arms[1] == std::vector<unsigned long>{3} &&
        arms[2].back() == 4 &&
        std::all_of(arms[2].begin(), arms[2].end() - 1, [](auto m) { return m == 3; }))
      return "B̃_" + std::to_string(n - 1);
    return std::nullopt;
  }
  if (branch.size() == 2 && g.deg[branch[0]] == 3 && g.deg[branch[1]] == 3 && g.all_label3) {
    for (int b : branch) {
      int leaves = 0;
      for (const auto& [nx, m] : g.nb[b]) leaves += (g.deg[nx] == 1);
      if (leaves != 2) return std::nullopt;
    }
    return "D̃_" + std::to_string(n - 1);
  }
  return std::nullopt;
}

std::optional<std::string> lanner_name(const Diagram& d) {
  LabeledGraph g = labeled_graph(d);
  const int n = g.n;
  if (g.has_inf) return std::nullopt;
  if (is_cycle(g))
    return "Lanner-" + std::to_string(n) + "-cycle(" + join_labels(cycle_labels(g)) + ")";
  if (is_path(g)) return "Lanner-path(" + join_labels(path_labels(g)) + ")";
  std::vector<int> branch;
  for (int i = 0; i < n; ++i) {
    if (g.deg[i] >= 3) branch.push_back(i);
  }
  if (g.edge_count == n - 1 && branch.size() == 1 && g.deg[branch[0]] == 3) {
    std::vector<std::vector<unsigned long>> arms = arms_at(g, branch[0]);
    std::vector<int> len = sorted_arm_lengths(arms);
    if (len == std::vector<int>{1, 1, 1}) {
      std::vector<unsigned long> labels{arms[0][0], arms[1][0], arms[2][0]};
      std::sort(labels.rbegin(), labels.rend());
      return "Lanner-star(" + join_labels(labels) + ")";
    }
    if (len == std::vector<int>{2, 1, 1}) {
      std::sort(arms.begin(), arms.end(),
                [](const auto& a, const auto& b) { return a.size() > b.size(); });
      std::vector<unsigned long> shorts{arms[1][0], arms[2][0]};
      std::sort(shorts.rbegin(), shorts.rend());
      return "Lanner-fork(" + std::to_string(arms[0][1]) + "," + std::to_string(arms[0][0]) +
             ";" + join_labels(shorts) + ")";
    }
  }
  return std::nullopt;
}

// ---- shared scan drivers ----

template <class T>
CartanScan<T> matrix_scan(const SqMat<T>& a, const Diagram& d) {
  auto adj = cartan_adjacency(a);
  if (static_cast<int>(a.size()) != d.rank())
    throw std::invalid_argument("classify: matrix size does not match diagram rank");
  if (adj != diagram_adjacency(d))
    throw std::invalid_argument("classify: matrix adjacency does not match the diagram's edges");
  return CartanScan<T>(a, std::move(adj));
}

template <class T>
std::vector<CartanClass> cartan_type_impl(const SqMat<T>& a) {
  CartanScan<T> scan(a, cartan_adjacency(a));
  std::vector<CartanClass> out;
  for (std::uint32_t comp : scan.component_masks(scan.full_mask())) out.push_back(scan.type(comp));
  return out;
}

template <class T>
H0Result h0_impl(const SqMat<T>& a, const Diagram& d) {
  CartanScan<T> scan = matrix_scan(a, d);
  H0Result out;
  if (auto w = first_zero_subset(scan, 1)) {
    out.holds = false;
    out.witness = std::move(*w);
  }
  return out;
}

template <class T>
HminusResult hminus_impl(const SqMat<T>& a, const Diagram& d) {
  CartanScan<T> scan = matrix_scan(a, d);
  HminusResult out;
  if (auto w = first_orthogonal_pair(scan,
                                     [](CartanClass c) { return c == CartanClass::Negative; })) {
    out.holds = false;
    out.witness = std::move(*w);
  }
  return out;
}

CartanScan<AlgScalar> diagram_scan(const Diagram& d) {
  auto adj = diagram_adjacency(d);
  return CartanScan<AlgScalar>(cosine_matrix(d), std::move(adj));
}

}  // namespace

std::string kind_text(DiagramKind k) {
  switch (k) {
    case DiagramKind::Spherical: return "Spherical";
    case DiagramKind::Affine: return "Affine";
    case DiagramKind::Lanner: return "Lanner";
    case DiagramKind::OtherLarge: return "OtherLarge";
  }
  return "OtherLarge";
}

IrreducibleClass classify_irreducible(const Diagram& d) {
  if (components(d).size() != 1)
    throw std::invalid_argument("classify_irreducible: diagram must be connected");
  CartanScan<AlgScalar> scan = diagram_scan(d);
  const std::uint32_t full = scan.full_mask();
  IrreducibleClass out;
  switch (scan.type(full)) {
    case CartanClass::Positive:
      out.kind = DiagramKind::Spherical;
      out.catalog_name = spherical_name(d);
      break;
    case CartanClass::Zero:
      out.kind = DiagramKind::Affine;
      out.catalog_name = affine_name(d);
      break;
    case CartanClass::Negative: {
      bool minors_pd = true;
      for (int v = 0; v < scan.size() && minors_pd; ++v) minors_pd = scan.pos_def(full ^ (1u << v));
      out.kind = minors_pd ? DiagramKind::Lanner : DiagramKind::OtherLarge;
      if (minors_pd) out.catalog_name = lanner_name(d);
      break;
    }
  }
  return out;
}

SubsetClass subset_class(const Diagram& d, const std::vector<int>& t) {
  if (t.empty()) throw std::invalid_argument("subset_class: empty subset");
  std::vector<int> nodes = t;
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 || nodes[i] >= d.rank())
      throw std::invalid_argument("subset_class: node out of range");
    if (i > 0 && nodes[i] == nodes[i - 1])
      throw std::invalid_argument("subset_class: duplicate node");
  }
  CartanScan<AlgScalar> scan = diagram_scan(d);
  std::uint32_t tmask = 0;
  for (int v : nodes) tmask |= 1u << v;
  SubsetClass out;
  out.spherical = out.affine = true;
  for (std::uint32_t comp : scan.component_masks(tmask)) {
    CartanClass c = scan.type(comp);
    out.spherical = out.spherical && c == CartanClass::Positive;
    out.affine = out.affine && c == CartanClass::Zero;
  }
  if (scan.connected(tmask) && scan.type(tmask) == CartanClass::Negative) {
    bool minors_pd = true;
    for (int v : nodes) minors_pd = minors_pd && scan.pos_def(tmask ^ (1u << v));
    out.lanner = minors_pd;
  }
  return out;
}

std::vector<CartanClass> cartan_type(const SqMat<AlgScalar>& a) { return cartan_type_impl(a); }
std::vector<CartanClass> cartan_type(const SqMat<QuadExt>& a) { return cartan_type_impl(a); }

H0Result check_H0(const SqMat<AlgScalar>& a, const Diagram& d) { return h0_impl(a, d); }
H0Result check_H0(const SqMat<QuadExt>& a, const Diagram& d) { return h0_impl(a, d); }
HminusResult check_Hminus(const SqMat<AlgScalar>& a, const Diagram& d) { return hminus_impl(a, d); }
HminusResult check_Hminus(const SqMat<QuadExt>& a, const Diagram& d) {
  return hminus_impl(a, d);
}

std::optional<std::vector<int>> irreducible_affine_rank3(const Diagram& d) {
  CartanScan<AlgScalar> scan = diagram_scan(d);
  return first_zero_subset(scan, 3);
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> orthogonal_nonspherical_pair(
    const Diagram& d) {
  CartanScan<AlgScalar> scan = diagram_scan(d);
  return first_orthogonal_pair(scan, [](CartanClass c) { return c != CartanClass::Positive; });
}

HyperbolicityVerdict moussong(const Diagram& d) {
  CartanScan<AlgScalar> scan = diagram_scan(d);
  HyperbolicityVerdict v;
  v.affine_witness = first_zero_subset(scan, 3);
  v.orthogonal_witness =
      first_orthogonal_pair(scan, [](CartanClass c) { return c != CartanClass::Positive; });
  v.hyperbolic = !v.affine_witness && !v.orthogonal_witness;
  return v;
}

SubsetFlags subset_flags(const Diagram& d) {
  CartanScan<AlgScalar> scan = diagram_scan(d);
  const std::uint32_t full = (1u << d.rank()) - 1u;
  SubsetFlags out;
  out.spherical.assign(std::size_t(full) + 1, false);
  out.lanner.assign(std::size_t(full) + 1, false);
  out.spherical[0] = true;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    out.spherical[mask] = scan.pos_def(mask);
    if (out.spherical[mask] || !scan.connected(mask)) continue;
    if (scan.type(mask) != CartanClass::Negative) continue;
    bool minors_pd = true;
    for (std::uint32_t rest = mask; rest != 0 && minors_pd; rest &= rest - 1)
      minors_pd = scan.pos_def(mask ^ (rest & (~rest + 1u)));
    out.lanner[mask] = minors_pd;
  }
  return out;
}

}  // namespace coxlab
