#include "coxlab/catalog.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <gmpxx.h>

#include "coxlab/certify.hpp"
#include "coxlab/classify.hpp"
#include "coxlab/linalg.hpp"

namespace coxlab {

namespace {

// 1-based endpoints; m > 0 is a finite label, 0 is infinity, -k refers to the
// k-th declared parameter.
struct EdgeSpec {
  int i;
  int j;
  int m;
};

Diagram make_shape(int rank, const std::vector<EdgeSpec>& edges,
                   const std::vector<ParamSpec>& params) {
  Diagram d(rank);
  for (const auto& p : params) d.declare_param(p);
  for (const auto& e : edges) {
    Label l = e.m > 0    ? Label::finite(static_cast<unsigned long>(e.m))
              : e.m == 0 ? Label::infinity()
                         : Label::parameter(params.at(static_cast<size_t>(-e.m) - 1).name);
    d.set_edge(e.i - 1, e.j - 1, l);
  }
  return d;
}

// Classical rank families.

Diagram build_path_family(unsigned long rank, unsigned long first, unsigned long last) {
  Diagram d(static_cast<int>(rank));
  for (unsigned long i = 0; i + 1 < rank; ++i) {
    unsigned long m = i == 0 ? first : i + 2 == rank ? last : 3;
    d.set_edge(static_cast<int>(i), static_cast<int>(i) + 1, m);
  }
  return d;
}

Diagram build_a(unsigned long n) { return build_path_family(n, 3, 3); }

Diagram build_b(unsigned long n) { return build_path_family(n, 4, 3); }

Diagram build_d(unsigned long n) {
  // Chain of n - 2 nodes with two extra leaves on node 0.
  Diagram d(static_cast<int>(n));
  for (unsigned long i = 0; i + 3 < n; ++i)
    d.set_edge(static_cast<int>(i), static_cast<int>(i) + 1, 3ul);
  d.set_edge(0, static_cast<int>(n) - 2, 3ul);
  d.set_edge(0, static_cast<int>(n) - 1, 3ul);
  return d;
}

Diagram build_i2(unsigned long m) {
  Diagram d(2);
  d.set_edge(0, 1, m);
  return d;
}

Diagram build_affine_a(unsigned long n) {
  Diagram d(static_cast<int>(n) + 1);
  for (unsigned long i = 0; i < n; ++i) d.set_edge(static_cast<int>(i), static_cast<int>(i) + 1, 3ul);
  d.set_edge(0, static_cast<int>(n), 3ul);
  return d;
}

Diagram build_affine_b(unsigned long n) {
  // Chain of n - 1 nodes ending in a 4-edge, two extra leaves on node 0.
  Diagram d(static_cast<int>(n) + 1);
  for (unsigned long i = 0; i + 2 < n; ++i) {
    unsigned long m = i + 3 == n ? 4 : 3;
    d.set_edge(static_cast<int>(i), static_cast<int>(i) + 1, m);
  }
  d.set_edge(0, static_cast<int>(n) - 1, 3ul);
  d.set_edge(0, static_cast<int>(n), 3ul);
  return d;
}

Diagram build_affine_c(unsigned long n) { return build_path_family(n + 1, 4, 4); }

Diagram build_affine_d(unsigned long n) {
  // Chain of n - 3 nodes with two extra leaves on each end.
  Diagram d(static_cast<int>(n) + 1);
  int chain = static_cast<int>(n) - 3;
  for (int i = 0; i + 1 < chain; ++i) d.set_edge(i, i + 1, 3ul);
  d.set_edge(0, chain, 3ul);
  d.set_edge(0, chain + 1, 3ul);
  d.set_edge(chain - 1, chain + 2, 3ul);
  d.set_edge(chain - 1, chain + 3, 3ul);
  return d;
}

// Registry construction helpers.

struct ItemBuilder {
  CatalogItem it;
  ItemBuilder& allowed(std::vector<std::vector<unsigned long>> a) {
    it.allowed = std::move(a);
    return *this;
  }
  ItemBuilder& excluded(std::vector<std::vector<unsigned long>> e) {
    it.excluded = std::move(e);
    return *this;
  }
  ItemBuilder& unordered() {
    it.unordered_pair = true;
    return *this;
  }
  ItemBuilder& constraint(ParamConstraint c) {
    it.constraint = c;
    return *this;
  }
  ItemBuilder& display(std::string s) {
    it.display = std::move(s);
    return *this;
  }
  ItemBuilder& reference(std::map<std::string, unsigned long> r) {
    it.reference = std::move(r);
    return *this;
  }
};

ItemBuilder item(std::string table, std::string id, int rank, const std::vector<EdgeSpec>& edges,
                 const std::vector<ParamSpec>& params = {}) {
  ItemBuilder b;
  b.it.table = std::move(table);
  b.it.id = std::move(id);
  b.it.display = b.it.id;
  b.it.shape = make_shape(rank, edges, params);
  for (const auto& p : params) b.it.param_order.push_back(p.name);
  return b;
}

ItemBuilder family(std::string table, std::string id, Diagram (*builder)(unsigned long),
                   ParamSpec spec) {
  ItemBuilder b;
  b.it.table = std::move(table);
  b.it.id = std::move(id);
  b.it.display = b.it.id;
  b.it.builder = builder;
  b.it.builder_param = spec;
  b.it.param_order = {spec.name};
  return b;
}

const ParamSpec* spec_of(const CatalogItem& it, const std::string& name) {
  if (it.builder) return it.builder_param.name == name ? &it.builder_param : nullptr;
  return it.shape.param(name);
}

bool admissible_values(const CatalogItem& it, const std::vector<unsigned long>& v) {
  for (size_t k = 0; k < it.param_order.size(); ++k) {
    const ParamSpec* sp = spec_of(it, it.param_order[k]);
    if (sp == nullptr) return false;
    if (v[k] < sp->min || (sp->max && v[k] > *sp->max)) return false;
  }
  auto norm = [&it](std::vector<unsigned long> w) {
    if (it.unordered_pair) std::sort(w.begin(), w.end());
    return w;
  };
  const auto nv = norm(v);
  if (!it.allowed.empty() &&
      std::none_of(it.allowed.begin(), it.allowed.end(),
                   [&](const std::vector<unsigned long>& a) { return norm(a) == nv; }))
    return false;
  if (std::any_of(it.excluded.begin(), it.excluded.end(),
                  [&](const std::vector<unsigned long>& e) { return norm(e) == nv; }))
    return false;
  switch (it.constraint) {
    case ParamConstraint::none:
      break;
    case ParamConstraint::reciprocal_sum_below_one: {
      mpq_class sum = mpq_class(1, v[0]) + mpq_class(1, v[1]) + mpq_class(1, v[2]);
      if (sum >= 1) return false;
      break;
    }
    case ParamConstraint::reciprocal_sum_below_half: {
      mpq_class sum = mpq_class(1, v[0]) + mpq_class(1, v[1]);
      if (sum >= mpq_class(1, 2)) return false;
      break;
    }
  }
  return true;
}

void compute_reference(CatalogItem& it) {
  if (it.param_order.empty()) return;  // concrete; any preset reference is documentation
  if (!it.allowed.empty()) {
    for (size_t k = 0; k < it.param_order.size(); ++k)
      it.reference[it.param_order[k]] = it.allowed.front()[k];
    return;
  }
  std::vector<unsigned long> v;
  for (const auto& name : it.param_order) v.push_back(spec_of(it, name)->min);
  for (int guard = 0; !admissible_values(it, v); ++guard) {
    ++v.back();
    if (guard > 1000) throw std::logic_error("catalog: no admissible reference for " + it.id);
  }
  for (size_t k = 0; k < it.param_order.size(); ++k) it.reference[it.param_order[k]] = v[k];
}

// Shared shapes of the infinite-edge families (F1-F6 rank 7, F7 rank 9). The
// pentagon is the 5-cycle 1-2-3-4-5-1 with labels 3 except the infinite edge
// 4-5; the hexagon is the 6-cycle with labels 4, p, 4, 3, 3 and infinite edge
// 6-1.
std::vector<EdgeSpec> barbot_edges(int which) {
  const std::vector<EdgeSpec> pentagon = {{1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 0}, {1, 5, 3}};
  const std::vector<EdgeSpec> hexagon = {{1, 2, 4}, {2, 3, -1}, {3, 4, 4},
                                         {4, 5, 3}, {5, 6, 3},  {1, 6, 0}};
  auto plus = [](std::vector<EdgeSpec> base, const std::vector<EdgeSpec>& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
  };
  switch (which) {
    case 1:
      return plus(pentagon, {{1, 6, -2}, {3, 7, -1}});
    case 2:
      return plus(pentagon, {{1, 6, -1}, {2, 7, 3}, {3, 7, 5}, {4, 7, 3}});
    case 3:
      return plus(hexagon, {{5, 7, -2}});
    case 4:
      return {{1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 0}, {1, 5, 4}, {1, 6, -2}, {3, 7, -1}};
    case 5:
      return {{1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 0}, {1, 5, 4},
              {1, 6, -1}, {2, 7, 3}, {3, 7, 4}, {4, 7, 4}};
    case 6:
      return plus(hexagon, {{4, 7, 3}, {5, 7, 4}, {6, 7, 3}});
    case 7:
      return plus(pentagon, {{1, 6, 3}, {6, 7, 3}, {7, 8, 5}, {3, 9, -1}});
    default:
      throw std::logic_error("barbot_edges: bad index");
  }
}

int barbot_rank(int which) { return which == 7 ? 9 : 7; }

bool barbot_two_params(int which) { return which == 1 || which == 3 || which == 4; }

std::vector<CatalogItem> build_registry() {
  std::vector<CatalogItem> reg;
  auto add = [&reg](ItemBuilder b) { reg.push_back(std::move(b.it)); };

  // Rank-6 Esselmann-type groups: concrete, cocompact on a rank-1 degenerate
  // form.
  add(item("examples_Esselmann", "E1", 6,
           {{1, 3, 5}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 6, 10}}));
  add(item("examples_Esselmann", "E2", 6,
           {{1, 3, 5}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, 5}}));
  add(item("examples_Esselmann", "E3", 6,
           {{1, 2, 4}, {1, 3, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {5, 6, 8}}));
  add(item("examples_Esselmann", "E4", 6,
           {{1, 2, 4}, {1, 3, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {4, 6, 3}, {5, 6, 4}}));
  add(item("examples_Esselmann", "E5", 6,
           {{1, 2, 8}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {5, 6, 8}}));
  add(item("examples_Esselmann", "E6", 6,
           {{1, 2, 5}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 10}}));
  add(item("examples_Esselmann", "E7", 6,
           {{1, 2, 5}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, 5}}));

  // Rank-6 quasi-Fuchsian groups: Lorentzian signature, finite admissible
  // lists.
  add(item("Hexamples_dim4", "E1", 6, {{1, 3, 5}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}},
           {{"p", 7, 9}})
          .allowed({{7}, {8}, {9}}));
  add(item("Hexamples_dim4", "Q1", 6, {{1, 3, 5}, {2, 3, 5}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}},
           {{"p", 7, 8}})
          .allowed({{7}, {8}}));
  add(item("Hexamples_dim4", "E2", 6,
           {{1, 3, 5}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, 4}}));
  add(item("Hexamples_dim4", "Q2", 6,
           {{1, 3, 5}, {2, 3, 5}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, 4}}));
  add(item("Hexamples_dim4", "Q3", 6,
           {{1, 2, 4}, {1, 3, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 7}}));
  add(item("Hexamples_dim4", "Q4", 6,
           {{1, 2, 3}, {1, 3, 3}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 6, 7}}));
  add(item("Hexamples_dim4", "Q5", 6,
           {{1, 2, 3}, {1, 3, 3}, {2, 3, 5}, {3, 4, 3}, {4, 5, 3}, {5, 6, 7}}));
  add(item("Hexamples_dim4", "E3", 6,
           {{1, 2, 4}, {1, 3, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {5, 6, 7}}));
  add(item("Hexamples_dim4", "Q6", 6,
           {{1, 2, 4}, {1, 3, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 5}, {5, 6, 4}}));
  add(item("Hexamples_dim4", "Q7", 6, {{1, 2, -1}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, -2}},
           {{"p", 7, 8}, {"q", 7, 8}})
          .allowed({{7, 7}, {7, 8}})
          .unordered());
  add(item("Hexamples_dim4", "Q8", 6,
           {{1, 2, 5}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 6, 7}}));
  add(item("Hexamples_dim4", "Q9", 6, {{1, 2, -1}, {2, 3, 5}, {3, 4, 3}, {4, 5, 3}, {5, 6, -2}},
           {{"p", 4, 4}, {"q", 7, 8}})
          .allowed({{4, 7}, {4, 8}}));
  add(item("Hexamples_dim4", "E5", 6, {{1, 2, -1}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {5, 6, -2}},
           {{"p", 7, 9}, {"q", 7, 9}})
          .allowed({{7, 7}, {7, 8}, {7, 9}})
          .unordered());
  add(item("Hexamples_dim4", "Q10", 6,
           {{1, 2, 4}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}}, {{"p", 7, 12}})
          .allowed({{7}, {8}, {9}, {10}, {11}, {12}}));
  add(item("Hexamples_dim4", "E6", 6,
           {{1, 2, 5}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}}, {{"p", 7, 9}})
          .allowed({{7}, {8}, {9}}));
  add(item("Hexamples_dim4", "Q11", 6,
           {{1, 2, 4}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, -1}},
           {{"p", 4, 6}})
          .allowed({{4}, {5}, {6}}));
  add(item("Hexamples_dim4", "E7", 6,
           {{1, 2, 5}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, 4}}));

  // Infinite-edge families (one infinite edge, open parameter ranges).
  for (int which = 1; which <= 7; ++which) {
    std::string table = which == 7 ? "barbot2_dim6" : "barbot2_dim4";
    std::string id = "F" + std::to_string(which);
    std::vector<ParamSpec> params = barbot_two_params(which)
                                        ? std::vector<ParamSpec>{{"p", 7}, {"q", 7}}
                                        : std::vector<ParamSpec>{{"p", 7}};
    add(item(table, id, barbot_rank(which), barbot_edges(which), params));
  }

  // Rank-6 families with two Lanner pieces glued along a spherical bridge.
  const std::vector<EdgeSpec> tail = {{3, 4, 3}, {4, 5, 3}, {5, 6, -1}};
  const std::vector<EdgeSpec> triangle_tail = {{3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, -1}};
  auto with_head = [](std::vector<EdgeSpec> head, const std::vector<EdgeSpec>& rest) {
    head.insert(head.end(), rest.begin(), rest.end());
    return head;
  };
  add(item("examples_dim4", "E1", 6, {{1, 3, 5}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}},
           {{"p", 11}}));
  add(item("examples_dim4", "Q1", 6, {{1, 3, 5}, {2, 3, 5}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}},
           {{"p", 9}}));
  add(item("examples_dim4", "E2", 6,
           {{1, 3, 5}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, -1}}, {{"p", 6}}));
  add(item("examples_dim4", "Q2", 6,
           {{1, 3, 5}, {2, 3, 5}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, -1}}, {{"p", 5}}));
  add(item("examples_dim4", "Q3", 6, with_head({{1, 2, -2}, {1, 3, 3}, {2, 3, 3}}, tail),
           {{"p", 7}, {"q", 4}})
          .excluded({{7, 4}}));
  add(item("examples_dim4", "Q4", 6, with_head({{1, 2, -2}, {1, 3, 3}, {2, 3, 4}}, tail),
           {{"p", 7}, {"q", 3}})
          .excluded({{7, 3}}));
  add(item("examples_dim4", "X1", 6, with_head({{1, 2, -2}, {1, 3, 4}, {2, 3, 4}}, tail),
           {{"p", 7}, {"q", 3}}));
  add(item("examples_dim4", "Q5", 6, with_head({{1, 2, -2}, {1, 3, 3}, {2, 3, 5}}, tail),
           {{"p", 7}, {"q", 3}})
          .excluded({{7, 3}}));
  add(item("examples_dim4", "X2", 6, with_head({{1, 2, -2}, {1, 3, 4}, {2, 3, 5}}, tail),
           {{"p", 7}, {"q", 3}}));
  add(item("examples_dim4", "X3", 6, with_head({{1, 2, -2}, {1, 3, 5}, {2, 3, 5}}, tail),
           {{"p", 7}, {"q", 3}}));
  add(item("examples_dim4", "E3", 6,
           {{1, 2, -2}, {1, 3, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {5, 6, -1}},
           {{"p", 7}, {"q", 4}})
          .excluded({{7, 4}, {8, 4}}));
  add(item("examples_dim4", "X4", 6,
           {{1, 2, -2}, {1, 3, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 4}, {5, 6, -1}},
           {{"p", 5}, {"q", 4}}));
  add(item("examples_dim4", "Q6", 6,
           {{1, 2, -2}, {1, 3, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 5}, {5, 6, -1}},
           {{"p", 4}, {"q", 4}})
          .excluded({{4, 4}}));
  add(item("examples_dim4", "E4", 6,
           {{1, 2, -2}, {1, 3, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {4, 6, 3}, {5, 6, -1}},
           {{"p", 4}, {"q", 4}})
          .excluded({{4, 4}}));
  add(item("examples_dim4", "X5", 6,
           with_head({{1, 2, -2}, {1, 3, 3}, {2, 3, 3}}, triangle_tail), {{"p", 4}, {"q", 4}}));
  add(item("examples_dim4", "X6", 6,
           with_head({{1, 2, -2}, {1, 3, 3}, {2, 3, 4}}, triangle_tail), {{"p", 4}, {"q", 3}}));
  add(item("examples_dim4", "X7", 6,
           with_head({{1, 2, -2}, {1, 3, 3}, {2, 3, 5}}, triangle_tail), {{"p", 4}, {"q", 3}}));
  add(item("examples_dim4", "X8", 6,
           with_head({{1, 2, -2}, {1, 3, 4}, {2, 3, 4}}, triangle_tail), {{"p", 4}, {"q", 3}}));
  add(item("examples_dim4", "X9", 6,
           with_head({{1, 2, -2}, {1, 3, 4}, {2, 3, 5}}, triangle_tail), {{"p", 4}, {"q", 3}}));
  add(item("examples_dim4", "X10", 6,
           with_head({{1, 2, -2}, {1, 3, 5}, {2, 3, 5}}, triangle_tail), {{"p", 4}, {"q", 3}}));
  add(item("examples_dim4", "Q7", 6, {{1, 2, -1}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, -2}},
           {{"p", 7}, {"q", 7}})
          .excluded({{7, 7}, {7, 8}})
          .unordered());
  add(item("examples_dim4", "Q8", 6, {{1, 2, -1}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}, {5, 6, -2}},
           {{"p", 5}, {"q", 7}})
          .excluded({{5, 7}}));
  add(item("examples_dim4", "Q9", 6, {{1, 2, -1}, {2, 3, 5}, {3, 4, 3}, {4, 5, 3}, {5, 6, -2}},
           {{"p", 4}, {"q", 7}})
          .excluded({{4, 7}, {4, 8}}));
  add(item("examples_dim4", "E5", 6, {{1, 2, -1}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {5, 6, -2}},
           {{"p", 7}, {"q", 7}})
          .excluded({{7, 7}, {7, 8}, {7, 9}, {8, 8}})
          .unordered());
  add(item("examples_dim4", "Q10", 6,
           {{1, 2, 4}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}}, {{"p", 13}}));
  add(item("examples_dim4", "E6", 6,
           {{1, 2, 5}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, -1}}, {{"p", 11}}));
  add(item("examples_dim4", "Q11", 6,
           {{1, 2, 4}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, -1}},
           {{"p", 7}}));
  add(item("examples_dim4", "E7", 6,
           {{1, 2, 5}, {1, 3, 5}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}, {5, 6, -1}},
           {{"p", 6}}));

  // Higher-dimensional families.
  add(item("examples_dim5", "X1", 7,
           {{1, 2, 4}, {1, 3, 3}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, -1}},
           {{"p", 7}}));
  add(item("examples_dim5", "X2", 7,
           {{1, 2, 4}, {1, 3, 3}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {5, 7, 3},
            {6, 7, -1}},
           {{"p", 4}}));
  add(item("examples_dim6", "X1", 8,
           {{1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {1, 5, 3}, {1, 6, 3}, {6, 7, 3},
            {6, 8, 3}, {7, 8, -1}},
           {{"p", 4}}));
  add(item("examples_dim6", "X2", 8,
           {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {6, 8, 3},
            {7, 8, -1}},
           {{"p", 4}}));
  add(item("examples_dim6", "X3", 8,
           {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {7, 8, -1}},
           {{"p", 7}}));
  add(item("examples_dim6", "X4", 8,
           {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 4}, {7, 8, -1}},
           {{"p", 5}}));
  add(item("examples_dim7", "X1", 9,
           {{1, 2, 4}, {1, 3, 3}, {2, 4, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3},
            {7, 8, 3}, {8, 9, 5}}));
  add(item("examples_dim8", "X1", 10,
           {{1, 2, 3}, {2, 3, 3}, {3, 4, 4}, {4, 5, 3}, {1, 5, 3}, {1, 6, 3}, {6, 7, 3},
            {7, 8, 3}, {8, 9, 3}, {9, 10, 5}}));
  add(item("examples_dim8", "X2", 10,
           {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {7, 8, 3},
            {8, 9, 3}, {9, 10, 5}}));

  // Infinite-edge families restricted to the parameters with two timelike
  // eigendirections at both quadratic roots.
  add(item("barbot2_not_poincare_hyp_dim4", "T1", 7, barbot_edges(1), {{"p", 9}, {"q", 9}})
          .excluded({{9, 9}, {9, 10}, {9, 11}, {9, 12}, {9, 13}, {9, 14}, {9, 15}, {9, 16},
                     {9, 17}, {9, 18}, {10, 10}})
          .unordered());
  add(item("barbot2_not_poincare_hyp_dim4", "T2", 7, barbot_edges(2), {{"p", 11}}));
  add(item("barbot2_not_poincare_hyp_dim4", "T3", 7, barbot_edges(3), {{"p", 7}, {"q", 8}})
          .excluded({{7, 8}, {7, 9}, {8, 8}}));
  add(item("barbot2_not_poincare_hyp_dim4", "T4", 7, barbot_edges(4), {{"p", 8}, {"q", 8}})
          .excluded({{8, 8}})
          .unordered());
  add(item("barbot2_not_poincare_hyp_dim4", "T5", 7, barbot_edges(5), {{"p", 9}}));
  add(item("barbot2_not_poincare_hyp_dim4", "T6", 7, barbot_edges(6), {{"p", 9}}));
  add(item("barbot2_not_poincare_hyp_dim6", "T7", 9, barbot_edges(7), {{"p", 11}}));

  // Infinite-edge families restricted to the parameters that stay Lorentzian
  // at both quadratic roots.
  add(item("barbot2_Quasi_Fuchsian_dim4", "T1", 7, barbot_edges(1),
           {{"p", 7, 13}, {"q", 7, 13}})
          .allowed({{7, 13}, {8, 10}, {8, 11}, {9, 9}, {9, 10}})
          .unordered());
  add(item("barbot2_Quasi_Fuchsian_dim4", "T2", 7, barbot_edges(2), {{"p", 8, 9}})
          .allowed({{8}, {9}}));
  add(item("barbot2_Quasi_Fuchsian_dim4", "T3", 7, barbot_edges(3), {{"p", 7, 9}, {"q", 7, 8}})
          .allowed({{7, 8}, {9, 7}}));
  add(item("barbot2_Quasi_Fuchsian_dim4", "T4", 7, barbot_edges(4), {{"p", 7, 8}, {"q", 7, 8}})
          .allowed({{7, 7}, {7, 8}})
          .unordered());
  add(item("barbot2_Quasi_Fuchsian_dim4", "T5", 7, barbot_edges(5), {{"p", 7, 7}})
          .allowed({{7}}));
  add(item("barbot2_Quasi_Fuchsian_dim4", "T6", 7, barbot_edges(6), {{"p", 7, 7}})
          .allowed({{7}}));
  add(item("barbot2_Quasi_Fuchsian_dim6", "T7", 9, barbot_edges(7), {{"p", 8, 9}})
          .allowed({{8}, {9}}));

  // Boundary instances at the reference parameters.
  auto tumarkin = [&add](const std::string& table, int which,
                         std::map<std::string, unsigned long> ref) {
    std::vector<ParamSpec> params = barbot_two_params(which)
                                        ? std::vector<ParamSpec>{{"p", 7}, {"q", 7}}
                                        : std::vector<ParamSpec>{{"p", 7}};
    Diagram shape = make_shape(barbot_rank(which), barbot_edges(which), params);
    ItemBuilder b;
    b.it.table = table;
    b.it.id = "T" + std::to_string(which);
    b.it.display = b.it.id;
    b.it.shape = instantiate(shape, ref);
    b.it.reference = std::move(ref);
    add(std::move(b));
  };
  tumarkin("Tumarkin_dim4", 1, {{"p", 10}, {"q", 10}});
  tumarkin("Tumarkin_dim4", 2, {{"p", 10}});
  tumarkin("Tumarkin_dim4", 3, {{"p", 8}, {"q", 8}});
  tumarkin("Tumarkin_dim4", 4, {{"p", 8}, {"q", 8}});
  tumarkin("Tumarkin_dim4", 5, {{"p", 8}});
  tumarkin("Tumarkin_dim4", 6, {{"p", 8}});
  tumarkin("Tumarkin_dim6", 7, {{"p", 10}});

  // Classical catalogs.
  add(family("spherical", "A", build_a, {"n", 1}).display("A_n"));
  add(family("spherical", "B", build_b, {"n", 2}).display("B_n"));
  add(family("spherical", "D", build_d, {"n", 4}).display("D_n"));
  add(family("spherical", "I2", build_i2, {"m", 5}).display("I_2(m)"));
  add(item("spherical", "H3", 3, {{1, 2, 5}, {2, 3, 3}}).display("H_3"));
  add(item("spherical", "H4", 4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}}).display("H_4"));
  add(item("spherical", "F4", 4, {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}}).display("F_4"));
  add(item("spherical", "E6", 6, {{1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {3, 6, 3}})
          .display("E_6"));
  add(item("spherical", "E7", 7,
           {{1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {3, 7, 3}})
          .display("E_7"));
  add(item("spherical", "E8", 8,
           {{1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {3, 8, 3}})
          .display("E_8"));

  add(item("affine", "At1", 2, {{1, 2, 0}}).display("affine A_1"));
  add(family("affine", "At", build_affine_a, {"n", 2}).display("affine A_n"));
  add(family("affine", "Bt", build_affine_b, {"n", 3}).display("affine B_n"));
  add(item("affine", "Ct2", 3, {{1, 2, 4}, {2, 3, 4}}).display("affine C_2"));
  add(family("affine", "Ct", build_affine_c, {"n", 3}).display("affine C_n"));
  add(family("affine", "Dt", build_affine_d, {"n", 4}).display("affine D_n"));
  add(item("affine", "Gt2", 3, {{1, 2, 6}, {2, 3, 3}}).display("affine G_2"));
  add(item("affine", "Ft4", 5, {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}}).display("affine F_4"));
  add(item("affine", "Et6", 7, {{1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {3, 6, 3}, {6, 7, 3}})
          .display("affine E_6"));
  add(item("affine", "Et7", 8,
           {{1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {4, 8, 3}})
          .display("affine E_7"));
  add(item("affine", "Et8", 9,
           {{1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {7, 8, 3},
            {3, 9, 3}})
          .display("affine E_8"));

  add(item("lanner", "triangle", 3, {{1, 2, -1}, {2, 3, -2}, {1, 3, -3}},
           {{"p", 3}, {"q", 3}, {"r", 3}})
          .constraint(ParamConstraint::reciprocal_sum_below_one)
          .display("(p q r) triangle"));
  add(item("lanner", "path", 3, {{1, 2, -1}, {2, 3, -2}}, {{"p", 3}, {"q", 3}})
          .constraint(ParamConstraint::reciprocal_sum_below_half)
          .display("[p, q] path"));
  add(item("lanner", "path_353", 4, {{1, 2, 3}, {2, 3, 5}, {3, 4, 3}}));
  add(item("lanner", "path_534", 4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 4}}));
  add(item("lanner", "path_535", 4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 5}}));
  add(item("lanner", "star_533", 4, {{1, 2, 5}, {1, 3, 3}, {1, 4, 3}}));
  add(item("lanner", "cycle_4333", 4, {{1, 2, 4}, {2, 3, 3}, {3, 4, 3}, {1, 4, 3}}));
  add(item("lanner", "cycle_5333", 4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {1, 4, 3}}));
  add(item("lanner", "cycle_4343", 4, {{1, 2, 4}, {2, 3, 3}, {3, 4, 4}, {1, 4, 3}}));
  add(item("lanner", "cycle_5343", 4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 4}, {1, 4, 3}}));
  add(item("lanner", "cycle_5353", 4, {{1, 2, 5}, {2, 3, 3}, {3, 4, 5}, {1, 4, 3}}));
  add(item("lanner", "cycle_43333", 5, {{1, 2, 4}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {1, 5, 3}}));
  add(item("lanner", "fork_5333", 5, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {3, 5, 3}}));
  add(item("lanner", "path_5333", 5, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}}));
  add(item("lanner", "path_5335", 5, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 5}}));
  add(item("lanner", "path_5334", 5, {{1, 2, 5}, {2, 3, 3}, {3, 4, 3}, {4, 5, 4}}));

  for (auto& it : reg) compute_reference(it);
  return reg;
}

std::vector<unsigned long> values_in_order(const CatalogItem& it,
                                           const std::map<std::string, unsigned long>& params,
                                           bool* ok) {
  *ok = params.size() == it.param_order.size();
  std::vector<unsigned long> v;
  for (const auto& name : it.param_order) {
    auto p = params.find(name);
    if (p == params.end()) {
      *ok = false;
      return v;
    }
    v.push_back(p->second);
  }
  return v;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

// One CSV row per item, recomputed at the item's reference parameters. The
// precision is pinned at six digits so the output is byte-stable.
void render_item_row(std::ostream& os, const CatalogItem& it) {
  constexpr int prec = 6;
  // Not catalog_get: a reference may sit on the boundary of the admissible set
  // (that is the point of the boundary tables).
  const Diagram d = [&it] {
    if (it.builder) return it.builder(it.reference.at(it.builder_param.name));
    if (it.param_order.empty()) return it.shape;
    return instantiate(it.shape, it.reference);
  }();

  std::string params;
  for (const auto& [name, value] : it.reference)
    params += (params.empty() ? "" : " ") + name + "=" + std::to_string(value);

  SqMat<AlgScalar> a = cosine_matrix(d);
  AlgScalar det = determinant(a);
  Inertia sig = inertia(a);

  std::string kind, name;
  if (components(d).size() == 1) {
    IrreducibleClass cls = classify_irreducible(d);
    kind = kind_text(cls.kind);
    if (cls.catalog_name) name = *cls.catalog_name;
  } else {
    kind = "Reducible";
  }

  os << it.id << "," << csv_quote(params) << "," << d.rank() << "," << kind << ","
     << csv_quote(name) << "," << csv_quote(det.repr()) << "," << det.to_float(prec) << ","
     << sig.pos << "," << sig.neg << "," << sig.nul;

  int infinite_edges = 0;
  for (const auto& [k, lab] : d.edges()) {
    (void)k;
    if (lab.is_infinite()) ++infinite_edges;
  }
  if (infinite_edges == 1) {
    LambdaQuadratic lq = lambda_polynomial(d);
    DiscriminantFactorization df = discriminant_identity(d);
    os << "," << lq.a0.to_float(prec) << "," << lq.a1.to_float(prec) << ","
       << lq.a2.to_float(prec) << "," << lq.delta.to_float(prec) << ","
       << df.det1.to_float(prec) << "," << df.det2.to_float(prec);
    if (lq.roots)
      os << "," << lq.roots->first.to_float(prec) << "," << lq.roots->second.to_float(prec);
    else
      os << ",,";
  } else {
    os << ",,,,,,,,";
  }
  os << "\n";
}

}  // namespace

const std::vector<CatalogItem>& catalog_items() {
  static const std::vector<CatalogItem> registry = build_registry();
  return registry;
}

std::vector<std::string> catalog_tables() {
  std::vector<std::string> out;
  for (const auto& it : catalog_items())
    if (out.empty() || out.back() != it.table) out.push_back(it.table);
  return out;
}

std::vector<const CatalogItem*> catalog_table(const std::string& table) {
  std::vector<const CatalogItem*> out;
  for (const auto& it : catalog_items())
    if (it.table == table) out.push_back(&it);
  if (out.empty()) throw std::invalid_argument("catalog: unknown table " + table);
  return out;
}

const CatalogItem& catalog_item(const std::string& table, const std::string& id) {
  for (const auto& it : catalog_items())
    if (it.table == table && it.id == id) return it;
  throw std::invalid_argument("catalog: no item " + table + ":" + id);
}

const CatalogItem& catalog_item(const std::string& table, int index) {
  auto items = catalog_table(table);
  if (index < 1 || static_cast<size_t>(index) > items.size())
    throw std::invalid_argument("catalog: index " + std::to_string(index) + " out of range for " +
                                table);
  return *items[static_cast<size_t>(index) - 1];
}

bool catalog_admissible(const CatalogItem& item,
                        const std::map<std::string, unsigned long>& params) {
  bool ok = false;
  auto v = values_in_order(item, params, &ok);
  return ok && admissible_values(item, v);
}

namespace {

Diagram get_impl(const CatalogItem& it, const std::map<std::string, unsigned long>& params) {
  bool ok = false;
  auto v = values_in_order(it, params, &ok);
  if (!ok)
    throw std::invalid_argument("catalog: " + it.table + ":" + it.id + " takes parameters " +
                                [&it] {
                                  std::string s;
                                  for (const auto& n : it.param_order) s += (s.empty() ? "" : ", ") + n;
                                  return s.empty() ? std::string("none") : s;
                                }());
  if (!admissible_values(it, v))
    throw std::invalid_argument("catalog: parameters outside the admissible set of " + it.table +
                                ":" + it.id);
  if (it.builder) return it.builder(v[0]);
  if (it.param_order.empty()) return it.shape;
  return instantiate(it.shape, params);
}

}  // namespace

Diagram catalog_get(const std::string& table, const std::string& id,
                    const std::map<std::string, unsigned long>& params) {
  return get_impl(catalog_item(table, id), params);
}

Diagram catalog_get(const std::string& table, int index,
                    const std::map<std::string, unsigned long>& params) {
  return get_impl(catalog_item(table, index), params);
}

std::vector<std::map<std::string, unsigned long>> item_instances(const CatalogItem& item,
                                                                 int extra) {
  std::vector<std::map<std::string, unsigned long>> out;
  if (item.param_order.empty()) {
    out.emplace_back();
    return out;
  }
  auto to_map = [&item](const std::vector<unsigned long>& v) {
    std::map<std::string, unsigned long> m;
    for (size_t k = 0; k < item.param_order.size(); ++k) m[item.param_order[k]] = v[k];
    return m;
  };
  if (!item.allowed.empty()) {
    for (const auto& a : item.allowed) out.push_back(to_map(a));
    return out;
  }
  std::vector<unsigned long> v;
  for (const auto& name : item.param_order) v.push_back(item.reference.at(name));
  for (int found = 0, guard = 0; found < extra; ++guard) {
    if (admissible_values(item, v)) {
      out.push_back(to_map(v));
      ++found;
    }
    for (auto& x : v) ++x;
    if (guard > 1000) throw std::logic_error("catalog: instance enumeration stalled");
  }
  return out;
}

std::string render_table(const std::string& table) {
  std::ostringstream os;
  os << "# table: " << table << "\n";
  os << "item,params,rank,kind,name,det_exact,det_float,sig_p,sig_q,sig_r,"
        "a0_float,a1_float,a2_float,delta_float,det1_float,det2_float,"
        "lambda1_float,lambda2_float\n";
  for (const CatalogItem* it : catalog_table(table)) render_item_row(os, *it);
  return os.str();
}

std::string render_tables() {
  std::string out;
  for (const auto& table : catalog_tables()) {
    if (!out.empty()) out += "\n";
    out += render_table(table);
  }
  return out;
}

}  // namespace coxlab
