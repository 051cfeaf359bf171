#include "coxlab/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace coxlab {

Label Label::finite(unsigned long m) {
  if (m < 2) throw std::invalid_argument("Label: finite value must be >= 2");
  return Label(Kind::Finite, m, {});
}

Label Label::parameter(std::string name) {
  if (name.empty()) throw std::invalid_argument("Label: empty parameter name");
  return Label(Kind::Param, 0, std::move(name));
}

unsigned long Label::value() const {
  if (!is_finite()) throw std::logic_error("Label: value() on non-finite label");
  return m_;
}

const std::string& Label::param_name() const {
  if (!is_param()) throw std::logic_error("Label: param_name() on non-parameter label");
  return name_;
}

std::string Label::text() const {
  switch (kind_) {
    case Kind::Finite:
      return std::to_string(m_);
    case Kind::Infinite:
      return "inf";
    case Kind::Param:
      return "$" + name_;
  }
  return {};
}

DiagramError::DiagramError(int line_, int col_, const std::string& what_)
    : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                         ": " + what_),
      line(line_),
      col(col_) {}

Diagram::Diagram(int rank) : rank_(rank) {
  if (rank < 1) throw std::invalid_argument("Diagram: rank must be >= 1");
  if (rank > 512) throw std::invalid_argument("Diagram: rank too large");
}

void Diagram::check_node(int i) const {
  if (i < 0 || i >= rank_) throw std::out_of_range("Diagram: node index out of range");
}

std::optional<Label> Diagram::edge_label(int i, int j) const {
  check_node(i);
  check_node(j);
  auto it = edges_.find({std::min(i, j), std::max(i, j)});
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

void Diagram::set_edge(int i, int j, const Label& l) {
  check_node(i);
  check_node(j);
  if (i == j) throw std::invalid_argument("Diagram: loops are not allowed");
  if (l.is_param() && param(l.param_name()) == nullptr)
    throw std::invalid_argument("Diagram: undeclared parameter '" + l.param_name() + "'");
  std::pair<int, int> key{std::min(i, j), std::max(i, j)};
  if (l.is_finite() && l.value() == 2) {
    edges_.erase(key);
    return;
  }
  edges_.insert_or_assign(key, l);
}

void Diagram::declare_param(const ParamSpec& spec) {
  if (spec.name.empty()) throw std::invalid_argument("Diagram: empty parameter name");
  if (spec.min < 3) throw std::invalid_argument("Diagram: parameter minimum must be >= 3");
  if (spec.max && *spec.max < spec.min)
    throw std::invalid_argument("Diagram: parameter maximum below minimum");
  if (param(spec.name) != nullptr)
    throw std::invalid_argument("Diagram: duplicate parameter '" + spec.name + "'");
  auto pos = std::lower_bound(params_.begin(), params_.end(), spec.name,
                              [](const ParamSpec& a, const std::string& n) { return a.name < n; });
  params_.insert(pos, spec);
}

const ParamSpec* Diagram::param(const std::string& name) const {
  for (const auto& p : params_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool Diagram::is_concrete() const {
  for (const auto& [k, l] : edges_) {
    (void)k;
    if (l.is_param()) return false;
  }
  return true;
}

void Diagram::set_node_names(std::vector<std::string> names) {
  if (!names.empty() && (int)names.size() != rank_)
    throw std::invalid_argument("Diagram: node name list must be empty or of size rank");
  node_names_ = std::move(names);
}

namespace {

struct Tok {
  std::string s;
  int col;  // 1-based
};

std::vector<Tok> tokenize(const std::string& line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace((unsigned char)line[j]) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), (int)i + 1});
    i = j;
  }
  return out;
}

unsigned long parse_uint(int line, const Tok& t, const char* what) {
  if (t.s.empty() || t.s.find_first_not_of("0123456789") != std::string::npos)
    throw DiagramError(line, t.col,
                       std::string(what) + " must be an integer, got '" + t.s + "'");
  try {
    return std::stoul(t.s);
  } catch (const std::out_of_range&) {
    throw DiagramError(line, t.col, std::string(what) + " is out of range: '" + t.s + "'");
  }
}

bool valid_param_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha((unsigned char)s[0]) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  }
  return true;
}

void expect_arity(int line, const std::vector<Tok>& toks, std::size_t lo, std::size_t hi) {
  if (toks.size() < lo)
    throw DiagramError(line, toks.back().col + (int)toks.back().s.size(),
                       "missing argument to '" + toks[0].s + "'");
  if (toks.size() > hi)
    throw DiagramError(line, toks[hi].col, "unexpected token '" + toks[hi].s + "'");
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
  std::optional<Diagram> d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int last_line = 1;
  while (std::getline(in, line)) {
    ++lineno;
    last_line = lineno;
    std::vector<Tok> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& cmd = toks[0].s;
    if (cmd == "rank") {
      if (d) throw DiagramError(lineno, toks[0].col, "duplicate 'rank' directive");
      expect_arity(lineno, toks, 2, 2);
      unsigned long n = parse_uint(lineno, toks[1], "rank");
      if (n < 1) throw DiagramError(lineno, toks[1].col, "rank must be >= 1");
      if (n > 512) throw DiagramError(lineno, toks[1].col, "rank too large");
      d = Diagram((int)n);
      continue;
    }
    if (!d) throw DiagramError(lineno, toks[0].col, "expected 'rank <n>' as the first directive");
    if (cmd == "param") {
      expect_arity(lineno, toks, 3, 4);
      if (!valid_param_name(toks[1].s))
        throw DiagramError(lineno, toks[1].col, "invalid parameter name '" + toks[1].s + "'");
      ParamSpec spec;
      spec.name = toks[1].s;
      spec.min = parse_uint(lineno, toks[2], "parameter minimum");
      if (spec.min < 3) throw DiagramError(lineno, toks[2].col, "parameter minimum must be >= 3");
      if (toks.size() == 4) {
        spec.max = parse_uint(lineno, toks[3], "parameter maximum");
        if (*spec.max < spec.min)
          throw DiagramError(lineno, toks[3].col, "parameter maximum below minimum");
      }
      try {
        d->declare_param(spec);
      } catch (const std::invalid_argument& e) {
        throw DiagramError(lineno, toks[1].col, e.what());
      }
    } else if (cmd == "edge") {
      expect_arity(lineno, toks, 4, 4);
      unsigned long iu = parse_uint(lineno, toks[1], "node index");
      unsigned long ju = parse_uint(lineno, toks[2], "node index");
      if (iu < 1 || iu > (unsigned long)d->rank())
        throw DiagramError(lineno, toks[1].col, "node index out of range (rank " +
                                                    std::to_string(d->rank()) + ")");
      if (ju < 1 || ju > (unsigned long)d->rank())
        throw DiagramError(lineno, toks[2].col, "node index out of range (rank " +
                                                    std::to_string(d->rank()) + ")");
      if (iu == ju) throw DiagramError(lineno, toks[2].col, "edge endpoints must differ");
      const Tok& lt = toks[3];
      Label lab = Label::infinity();
      if (lt.s == "inf") {
        lab = Label::infinity();
      } else if (!lt.s.empty() && lt.s[0] == '$') {
        std::string name = lt.s.substr(1);
        if (!valid_param_name(name))
          throw DiagramError(lineno, lt.col, "invalid parameter reference '" + lt.s + "'");
        if (d->param(name) == nullptr)
          throw DiagramError(lineno, lt.col, "unknown parameter '" + name + "'");
        lab = Label::parameter(name);
      } else if (!lt.s.empty() && std::isdigit((unsigned char)lt.s[0])) {
        unsigned long m = parse_uint(lineno, lt, "edge label");
        if (m < 3)
          throw DiagramError(lineno, lt.col, "edge label must be >= 3 or 'inf' (2 means no edge)");
        lab = Label::finite(m);
      } else {
        throw DiagramError(lineno, lt.col, "bad edge label '" + lt.s + "'");
      }
      int i0 = (int)iu - 1, j0 = (int)ju - 1;
      if (auto prev = d->edge_label(i0, j0)) {
        if (!(*prev == lab))
          throw DiagramError(lineno, lt.col, "conflicting duplicate edge " + std::to_string(iu) +
                                                 " " + std::to_string(ju));
        continue;
      }
      d->set_edge(i0, j0, lab);
    } else {
      throw DiagramError(lineno, toks[0].col, "unknown directive '" + cmd + "'");
    }
  }
  if (!d) throw DiagramError(last_line, 1, "empty input: expected 'rank <n>'");
  return *d;
}

std::string serialize(const Diagram& d) {
  std::ostringstream o;
  o << "rank " << d.rank() << "\n";
  for (const auto& p : d.params()) {
    o << "param " << p.name << " " << p.min;
    if (p.max) o << " " << *p.max;
    o << "\n";
  }
  for (const auto& [k, l] : d.edges()) {
    o << "edge " << k.first + 1 << " " << k.second + 1 << " " << l.text() << "\n";
  }
  return o.str();
}

std::string to_dot(const Diagram& d) {
  std::ostringstream o;
  o << "graph coxeter {\n  node [shape=circle];\n";
  for (int i = 0; i < d.rank(); ++i) {
    o << "  s" << i + 1;
    if (!d.node_names().empty()) o << " [label=\"" << d.node_names()[i] << "\"]";
    o << ";\n";
  }
  for (const auto& [k, l] : d.edges()) {
    o << "  s" << k.first + 1 << " -- s" << k.second + 1;
    if (!(l.is_finite() && l.value() == 3)) o << " [label=\"" << l.text() << "\"]";
    o << ";\n";
  }
  o << "}\n";
  return o.str();
}

Diagram instantiate(const Diagram& d, const std::map<std::string, unsigned long>& values) {
  for (const auto& [name, v] : values) {
    const ParamSpec* spec = d.param(name);
    if (!spec) throw std::invalid_argument("instantiate: unknown parameter '" + name + "'");
    if (v < spec->min)
      throw std::out_of_range("instantiate: " + name + "=" + std::to_string(v) +
                              " below minimum " + std::to_string(spec->min));
    if (spec->max && v > *spec->max)
      throw std::out_of_range("instantiate: " + name + "=" + std::to_string(v) +
                              " above maximum " + std::to_string(*spec->max));
    if (v < 3) throw std::out_of_range("instantiate: labels must be >= 3");
  }
  for (const auto& p : d.params()) {
    if (!values.count(p.name))
      throw std::invalid_argument("instantiate: missing value for parameter '" + p.name + "'");
  }
  Diagram out(d.rank());
  out.set_node_names(d.node_names());
  for (const auto& [k, l] : d.edges()) {
    if (l.is_param()) {
      out.set_edge(k.first, k.second, Label::finite(values.at(l.param_name())));
    } else {
      out.set_edge(k.first, k.second, l);
    }
  }
  return out;
}

namespace {

AlgScalar finite_entry(unsigned long m) { return -AlgScalar::two_cos_pi_over(m); }

void require_concrete(const Diagram& d, const char* who) {
  if (!d.is_concrete())
    throw std::invalid_argument(std::string(who) + ": diagram has unresolved parameters");
}

}  // namespace

SqMat<AlgScalar> cosine_matrix(const Diagram& d) {
  require_concrete(d, "cosine_matrix");
  SqMat<AlgScalar> m((std::size_t)d.rank());
  for (int i = 0; i < d.rank(); ++i) m.at(i, i) = AlgScalar(2);
  for (const auto& [k, l] : d.edges()) {
    AlgScalar e = l.is_infinite() ? AlgScalar(-2) : finite_entry(l.value());
    m.at(k.first, k.second) = e;
    m.at(k.second, k.first) = e;
  }
  return m;
}

SqMat<AlgScalar> lambda_cosine_matrix(const Diagram& d, const mpq_class& lambda) {
  require_concrete(d, "lambda_cosine_matrix");
  if (sgn(lambda) < 0) throw std::invalid_argument("lambda_cosine_matrix: lambda must be >= 0");
  SqMat<AlgScalar> m((std::size_t)d.rank());
  AlgScalar inf_entry = AlgScalar(-2) - AlgScalar(2) * AlgScalar(lambda);
  for (int i = 0; i < d.rank(); ++i) m.at(i, i) = AlgScalar(2);
  for (const auto& [k, l] : d.edges()) {
    AlgScalar e = l.is_infinite() ? inf_entry : finite_entry(l.value());
    m.at(k.first, k.second) = e;
    m.at(k.second, k.first) = e;
  }
  return m;
}

SqMat<QuadExt> lambda_cosine_matrix(const Diagram& d, const QuadExt& lambda) {
  require_concrete(d, "lambda_cosine_matrix");
  if (lambda.sign() < 0) throw std::invalid_argument("lambda_cosine_matrix: lambda must be >= 0");
  SqMat<QuadExt> m((std::size_t)d.rank());
  QuadExt inf_entry = QuadExt(-2) - QuadExt(2) * lambda;
  for (int i = 0; i < d.rank(); ++i) m.at(i, i) = QuadExt(2);
  for (const auto& [k, l] : d.edges()) {
    QuadExt e = l.is_infinite() ? inf_entry : QuadExt(finite_entry(l.value()));
    m.at(k.first, k.second) = e;
    m.at(k.second, k.first) = e;
  }
  return m;
}

Diagram restrict_to(const Diagram& d, const std::vector<int>& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 || nodes[i] >= d.rank())
      throw std::out_of_range("restrict_to: node index out of range");
    if (i > 0 && nodes[i] <= nodes[i - 1])
      throw std::invalid_argument("restrict_to: node list must be strictly increasing");
  }
  if (nodes.empty()) throw std::invalid_argument("restrict_to: empty node list");
  Diagram out((int)nodes.size());
  std::vector<int> pos(d.rank(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = (int)i;
  // Keep parameter declarations that remain referenced.
  std::vector<std::string> used;
  for (const auto& [k, l] : d.edges()) {
    if (pos[k.first] >= 0 && pos[k.second] >= 0 && l.is_param()) used.push_back(l.param_name());
  }
  for (const auto& p : d.params()) {
    if (std::find(used.begin(), used.end(), p.name) != used.end()) out.declare_param(p);
  }
  for (const auto& [k, l] : d.edges()) {
    if (pos[k.first] >= 0 && pos[k.second] >= 0) out.set_edge(pos[k.first], pos[k.second], l);
  }
  if (!d.node_names().empty()) {
    std::vector<std::string> names;
    for (int v : nodes) names.push_back(d.node_names()[v]);
    out.set_node_names(std::move(names));
  }
  return out;
}

std::vector<std::vector<int>> components_within(const Diagram& d, const std::vector<int>& subset) {
  std::vector<bool> in(d.rank(), false);
  for (int v : subset) {
    if (v < 0 || v >= d.rank()) throw std::out_of_range("components: node index out of range");
    in[v] = true;
  }
  std::vector<std::vector<int>> adj(d.rank());
  for (const auto& [k, l] : d.edges()) {
    (void)l;
    if (in[k.first] && in[k.second]) {
      adj[k.first].push_back(k.second);
      adj[k.second].push_back(k.first);
    }
  }
  std::vector<bool> seen(d.rank(), false);
  std::vector<std::vector<int>> out;
  for (int v : subset) {
    if (seen[v]) continue;
    std::vector<int> comp;
    std::vector<int> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : adj[u]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> components(const Diagram& d) {
  std::vector<int> all(d.rank());
  for (int i = 0; i < d.rank(); ++i) all[i] = i;
  return components_within(d, all);
}

bool orthogonal(const Diagram& d, const std::vector<int>& t, const std::vector<int>& u) {
  std::vector<int> mark(d.rank(), 0);
  for (int v : t) {
    if (v < 0 || v >= d.rank()) throw std::out_of_range("orthogonal: node index out of range");
    mark[v] = 1;
  }
  for (int v : u) {
    if (v < 0 || v >= d.rank()) throw std::out_of_range("orthogonal: node index out of range");
    if (mark[v] == 1) throw std::invalid_argument("orthogonal: subsets must be disjoint");
    mark[v] = 2;
  }
  for (const auto& [k, l] : d.edges()) {
    (void)l;
    if (mark[k.first] + mark[k.second] == 3) return false;  // one in each side
  }
  return true;
}

namespace {

// Edge-class key under the requested label matching; "" encodes "no edge".
std::string edge_class(const std::optional<Label>& l, LabelMatch match) {
  if (!l) return "";
  if (match == LabelMatch::CoarseBucket7 && l->is_finite() && l->value() >= 7) return "7+";
  return l->text();
}

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Diagram& a, const Diagram& b,
                                              LabelMatch match) {
  if (a.rank() != b.rank()) return std::nullopt;
  const int n = a.rank();
  std::vector<std::vector<std::string>> ca(n, std::vector<std::string>(n)),
      cb(n, std::vector<std::string>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      ca[i][j] = edge_class(a.edge_label(i, j), match);
      cb[i][j] = edge_class(b.edge_label(i, j), match);
    }
  }
  // Per-node incident class multisets for pruning.
  auto signature = [n](const std::vector<std::vector<std::string>>& c, int v) {
    std::vector<std::string> s;
    for (int j = 0; j < n; ++j) {
      if (j != v && !c[v][j].empty()) s.push_back(c[v][j]);
    }
    std::sort(s.begin(), s.end());
    return s;
  };
  std::vector<std::vector<std::string>> sa(n), sb(n);
  for (int v = 0; v < n; ++v) {
    sa[v] = signature(ca, v);
    sb[v] = signature(cb, v);
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  // Depth-first in node order, candidates ascending: the first complete match
  // is the lexicographically least image vector.
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || sa[v] != sb[w]) continue;
      bool ok = true;
      for (int u = 0; u < v; ++u) {
        if (ca[v][u] != cb[w][map[u]]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (self(self, v + 1)) return true;
      used[w] = false;
      map[v] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return map;
}

}  // namespace coxlab
