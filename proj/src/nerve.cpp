#include "coxlab/nerve.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "coxlab/classify.hpp"
#include "json.hpp"

namespace coxlab {

namespace {

std::vector<int> mask_nodes(std::uint32_t mask) {
  std::vector<int> out;
  for (int v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1u) out.push_back(v);
  return out;
}

}  // namespace

SimplicialComplex::SimplicialComplex(int n_vertices, std::vector<std::vector<int>> faces)
    : n_(n_vertices) {
  if (n_vertices < 0) throw std::invalid_argument("SimplicialComplex: negative vertex count");
  for (auto& f : faces) {
    if (f.empty()) throw std::invalid_argument("SimplicialComplex: empty face");
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.front() < 0 || f.back() >= n_vertices)
      throw std::invalid_argument("SimplicialComplex: vertex out of range");
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  for (const auto& f : faces) {
    bool maximal = true;
    for (const auto& g : faces) {
      if (g.size() <= f.size()) continue;
      if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) facets_.push_back(f);
  }
}

int SimplicialComplex::dimension() const {
  int dim = -1;
  for (const auto& f : facets_) dim = std::max(dim, static_cast<int>(f.size()) - 1);
  return dim;
}

SimplicialComplex nerve(const Diagram& d) {
  const SubsetFlags flags = subset_flags(d);
  const std::uint32_t full = (1u << d.rank()) - 1u;
  std::vector<std::vector<int>> facets;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!flags.spherical[mask]) continue;
    bool maximal = true;
    for (int v = 0; v < d.rank() && maximal; ++v)
      if (!(mask & (1u << v)) && flags.spherical[mask | (1u << v)]) maximal = false;
    if (maximal) facets.push_back(mask_nodes(mask));
  }
  return SimplicialComplex(d.rank(), std::move(facets));
}

std::vector<long> f_vector(const SimplicialComplex& c) {
  std::set<std::vector<int>> faces;
  for (const auto& f : c.facets()) {
    const std::uint32_t full = (1u << f.size()) - 1u;
    for (std::uint32_t m = 1; m <= full; ++m) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (m & (1u << i)) sub.push_back(f[i]);
      faces.insert(std::move(sub));
    }
  }
  std::vector<long> out;
  for (const auto& f : faces) {
    const std::size_t k = f.size() - 1;
    if (out.size() <= k) out.resize(k + 1, 0);
    ++out[k];
  }
  return out;
}

long euler_characteristic(const SimplicialComplex& c) {
  long chi = 0;
  long sign = 1;
  for (long fk : f_vector(c)) {
    chi += sign * fk;
    sign = -sign;
  }
  return chi;
}

namespace {

// Sorted facet-size lists per vertex; any isomorphism must preserve them.
std::vector<std::vector<int>> vertex_signatures(const SimplicialComplex& c) {
  std::vector<std::vector<int>> sig(c.vertex_count());
  for (const auto& f : c.facets())
    for (int v : f) sig[v].push_back(static_cast<int>(f.size()));
  for (auto& s : sig) std::sort(s.begin(), s.end());
  return sig;
}

struct IsoSearch {
  int n = 0;
  const std::vector<std::vector<int>>* sig_a = nullptr;
  const std::vector<std::vector<int>>* sig_b = nullptr;
  // Facets of a grouped by their largest vertex: once that vertex is mapped
  // the whole image is known and can be checked.
  std::vector<std::vector<const std::vector<int>*>> by_max;
  const std::set<std::vector<int>>* facets_b = nullptr;
  std::vector<int> img;
  std::vector<bool> used;

  bool extend(int v) {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || (*sig_a)[v] != (*sig_b)[w]) continue;
      img[v] = w;
      used[w] = true;
      bool ok = true;
      for (const auto* f : by_max[v]) {
        std::vector<int> mapped;
        mapped.reserve(f->size());
        for (int x : *f) mapped.push_back(img[x]);
        std::sort(mapped.begin(), mapped.end());
        if (!facets_b->count(mapped)) {
          ok = false;
          break;
        }
      }
      if (ok && extend(v + 1)) return true;
      used[w] = false;
      img[v] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> complexes_isomorphic(const SimplicialComplex& a,
                                                     const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count()) return std::nullopt;
  if (a.facets().size() != b.facets().size()) return std::nullopt;
  auto sizes = [](const SimplicialComplex& c) {
    std::vector<std::size_t> s;
    for (const auto& f : c.facets()) s.push_back(f.size());
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sizes(a) != sizes(b)) return std::nullopt;

  IsoSearch search;
  search.n = a.vertex_count();
  const auto sig_a = vertex_signatures(a);
  const auto sig_b = vertex_signatures(b);
  search.sig_a = &sig_a;
  search.sig_b = &sig_b;
  search.by_max.resize(search.n);
  for (const auto& f : a.facets()) search.by_max[f.back()].push_back(&f);
  const std::set<std::vector<int>> facets_b(b.facets().begin(), b.facets().end());
  search.facets_b = &facets_b;
  search.img.assign(search.n, -1);
  search.used.assign(search.n, false);
  // Image candidates are tried in ascending order, so the first completed
  // assignment is the lexicographically least one. Every facet of a lands in
  // facets_b; injectivity and equal counts make the facet map onto.
  if (search.extend(0)) return search.img;
  return std::nullopt;
}

std::optional<JoinCertificate> join_sphere_certificate(const Diagram& d) {
  const int n = d.rank();
  const SubsetFlags flags = subset_flags(d);
  const std::uint32_t full = (1u << n) - 1u;

  std::optional<std::pair<std::uint32_t, std::uint32_t>> found;
  bool second = false;
  // Lanner diagrams have 3, 4, or 5 nodes, so only those part sizes can
  // certify; candidates go by increasing smaller-part size.
  for (int size = 3; size <= n - size && size <= 5 && !second; ++size) {
    for (std::uint32_t part = 1; part <= full && !second; ++part) {
      if (std::popcount(part) != size) continue;
      const std::uint32_t other = full ^ part;
      if (std::popcount(other) == size && other < part) continue;  // unordered
      if (!flags.lanner[part] || !flags.lanner[other]) continue;
      bool match = true;
      for (std::uint32_t t = 1; t <= full && match; ++t) {
        const bool contains_part = (t & part) == part || (t & other) == other;
        match = flags.spherical[t] == !contains_part;
      }
      if (!match) continue;
      if (!found) {
        found = {part, other};
      } else if (*found != std::pair{part, other} && *found != std::pair{other, part}) {
        second = true;
      }
    }
  }
  if (!found) return std::nullopt;
  JoinCertificate cert;
  std::uint32_t s1 = found->first, s2 = found->second;
  if (!(s1 & 1u)) std::swap(s1, s2);
  cert.s1 = mask_nodes(s1);
  cert.s2 = mask_nodes(s2);
  cert.d = n - 2;
  cert.alternative_exists = second;
  return cert;
}

std::string to_json(const SimplicialComplex& c) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < c.vertex_count(); ++v) j["vertices"].push_back(v);
  j["facets"] = c.facets();
  return j.dump();
}

std::string to_dot(const SimplicialComplex& c) {
  std::string out = "graph complex {\n";
  for (int v = 0; v < c.vertex_count(); ++v) out += "  v" + std::to_string(v) + ";\n";
  std::set<std::pair<int, int>> edges;
  for (const auto& f : c.facets())
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) edges.insert({f[i], f[j]});
  for (const auto& [u, v] : edges)
    out += "  v" + std::to_string(u) + " -- v" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace coxlab
