// coxlab: exact analysis of Coxeter diagrams from the command line.
//
// Exit codes: 0 completed (and the certificate passed, for certifying
// commands), 1 completed but the certificate failed, 2 usage or input error,
// 3 I/O or internal failure. Text output is human-oriented and may change;
// JSON and CSV are the stable surfaces.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coxlab/catalog.hpp"
#include "coxlab/certify.hpp"
#include "coxlab/classify.hpp"
#include "coxlab/diagram.hpp"
#include "coxlab/linalg.hpp"
#include "coxlab/nerve.hpp"
#include "coxlab/orbit.hpp"
#include "coxlab/scalar.hpp"

namespace {

using namespace coxlab;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_precision() {
  const char* env = std::getenv("COXLAB_PRECISION");
  if (!env || !*env) return 6;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end || v < 1 || v > 60)
    throw UsageError("COXLAB_PRECISION must be an integer between 1 and 60");
  return static_cast<int>(v);
}

struct Common {
  std::string file;
  std::string cat;
  std::vector<std::string> params;
  std::string format = "text";
  std::string out;
  int precision = 6;
  std::uint64_t seed = 20240817;
  double tol = 1e-9;
};

void add_io_opts(CLI::App* c, Common& o) {
  c->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv", "dot"}));
  c->add_option("--out", o.out, "write output to this file instead of stdout");
  c->add_option("--precision", o.precision,
                "fractional digits for floating output (env COXLAB_PRECISION)");
}

void add_input_opts(CLI::App* c, Common& o) {
  c->add_option("--file,-f", o.file, "diagram file in the line-oriented text format");
  c->add_option("--catalog", o.cat, "built-in diagram reference, table:item");
  c->add_option("--param", o.params, "parameter assignment name=value (repeatable)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void emit(const Common& o, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw IoError("cannot open " + o.out + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("cannot write " + o.out);
}

std::map<std::string, unsigned long> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, unsigned long> out;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects name=value, got '" + kv + "'");
    const std::string name = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    char* end = nullptr;
    unsigned long v = std::strtoul(val.c_str(), &end, 10);
    if (end == val.c_str() || *end)
      throw UsageError("--param " + name + ": '" + val + "' is not an unsigned integer");
    if (!out.emplace(name, v).second) throw UsageError("--param " + name + " given twice");
  }
  return out;
}

std::pair<std::string, std::string> split_catalog_ref(const std::string& ref) {
  auto colon = ref.find(':');
  if (colon == std::string::npos) return {ref, ""};
  return {ref.substr(0, colon), ref.substr(colon + 1)};
}

// Concrete diagram from --file or --catalog (+ --param).
Diagram load_diagram(const Common& o) {
  const bool has_file = !o.file.empty();
  const bool has_cat = !o.cat.empty();
  if (has_file == has_cat) throw UsageError("exactly one of --file or --catalog is required");
  if (has_file) {
    const std::string text = read_file(o.file);
    try {
      Diagram d = parse_diagram(text);
      if (!o.params.empty()) return instantiate(d, parse_params(o.params));
      return d;
    } catch (const DiagramError& e) {
      throw UsageError(o.file + ": " + e.what());
    }
  }
  auto [table, id] = split_catalog_ref(o.cat);
  if (id.empty()) throw UsageError("--catalog expects table:item");
  return catalog_get(table, id, parse_params(o.params));
}

// Shape with parameter slots: --file as-is, --catalog without instantiation.
Diagram load_shape(const Common& o) {
  const bool has_file = !o.file.empty();
  const bool has_cat = !o.cat.empty();
  if (has_file == has_cat) throw UsageError("exactly one of --file or --catalog is required");
  if (has_file) {
    try {
      return parse_diagram(read_file(o.file));
    } catch (const DiagramError& e) {
      throw UsageError(o.file + ": " + e.what());
    }
  }
  auto [table, id] = split_catalog_ref(o.cat);
  if (id.empty()) throw UsageError("--catalog expects table:item");
  const CatalogItem& item = catalog_item(table, id);
  if (item.builder)
    throw UsageError(o.cat + " is rank-parameterized; this command needs a labeled parameter");
  return item.shape;
}

// Substitutes the given parameters, keeping the others declared.
Diagram fix_params(const Diagram& shape, const std::map<std::string, unsigned long>& fixed) {
  for (const auto& [name, v] : fixed) {
    (void)v;
    if (!shape.param(name)) throw UsageError("diagram declares no parameter '" + name + "'");
  }
  Diagram out(shape.rank());
  for (const auto& ps : shape.params())
    if (!fixed.count(ps.name)) out.declare_param(ps);
  for (const auto& [k, lab] : shape.edges()) {
    if (lab.is_param() && fixed.count(lab.param_name()))
      out.set_edge(k.first, k.second, Label::finite(fixed.at(lab.param_name())));
    else
      out.set_edge(k.first, k.second, lab);
  }
  out.set_node_names(shape.node_names());
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

std::string nodes_text(const std::vector<int>& nodes) {
  std::string s = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(nodes[i] + 1);
  }
  return s + "}";
}

nlohmann::json nodes_json(const std::vector<int>& nodes) {
  nlohmann::json a = nlohmann::json::array();
  for (int v : nodes) a.push_back(v + 1);
  return a;
}

void reject_format(const Common& o, const char* cmd) {
  throw UsageError(std::string("format '") + o.format + "' is not supported by " + cmd);
}

// --- classify ---------------------------------------------------------------

int do_classify(const Common& o) {
  Diagram d = load_diagram(o);
  auto comps = components(d);
  struct Row {
    std::vector<int> nodes;
    IrreducibleClass cls;
  };
  std::vector<Row> rows;
  for (const auto& comp : comps)
    rows.push_back({comp, classify_irreducible(restrict_to(d, comp))});

  if (o.format == "json") {
    nlohmann::json j;
    j["diagram"] = serialize(d);
    j["components"] = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json c;
      c["nodes"] = nodes_json(r.nodes);
      c["kind"] = kind_text(r.cls.kind);
      c["name"] = r.cls.catalog_name ? nlohmann::json(*r.cls.catalog_name) : nullptr;
      j["components"].push_back(std::move(c));
    }
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "csv") {
    std::string s = "component,kind,name\n";
    for (const auto& r : rows) {
      std::string nodes;
      for (std::size_t i = 0; i < r.nodes.size(); ++i)
        nodes += (i ? " " : "") + std::to_string(r.nodes[i] + 1);
      s += csv_field(nodes) + "," + kind_text(r.cls.kind) + "," +
           csv_field(r.cls.catalog_name.value_or("")) + "\n";
    }
    emit(o, s);
  } else if (o.format == "text") {
    std::string s;
    if (rows.size() == 1) {
      s += "kind: " + kind_text(rows[0].cls.kind) + "\n";
      s += "name: " + rows[0].cls.catalog_name.value_or("-") + "\n";
    } else {
      for (const auto& r : rows)
        s += "component " + nodes_text(r.nodes) + ": " + kind_text(r.cls.kind) +
             (r.cls.catalog_name ? " " + *r.cls.catalog_name : "") + "\n";
    }
    emit(o, s);
  } else {
    reject_format(o, "classify");
  }
  return 0;
}

// --- signature --------------------------------------------------------------

int do_signature(const Common& o) {
  Diagram d = load_diagram(o);
  SqMat<AlgScalar> a = cosine_matrix(d);
  AlgScalar det = determinant(a);
  Inertia sig = inertia(a);
  if (o.format == "json") {
    nlohmann::json j;
    j["diagram"] = serialize(d);
    j["det_exact"] = det.repr();
    j["det_float"] = det.to_float(o.precision);
    j["signature"] = {sig.pos, sig.neg, sig.nul};
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "csv") {
    std::string s = "det_exact,det_float,sig_p,sig_q,sig_r\n";
    s += csv_field(det.repr()) + "," + det.to_float(o.precision) + "," +
         std::to_string(sig.pos) + "," + std::to_string(sig.neg) + "," + std::to_string(sig.nul) +
         "\n";
    emit(o, s);
  } else if (o.format == "text") {
    std::string s;
    s += "signature: (" + std::to_string(sig.pos) + ", " + std::to_string(sig.neg) + ", " +
         std::to_string(sig.nul) + ")\n";
    s += "det exact: " + det.repr() + "\n";
    s += "det float: " + det.to_float(o.precision) + "\n";
    emit(o, s);
  } else {
    reject_format(o, "signature");
  }
  return 0;
}

// --- moussong ---------------------------------------------------------------

int do_moussong(const Common& o) {
  Diagram d = load_diagram(o);
  HyperbolicityVerdict v = moussong(d);
  if (o.format == "json") {
    nlohmann::json j;
    j["diagram"] = serialize(d);
    j["hyperbolic"] = v.hyperbolic;
    j["affine_witness"] = v.affine_witness ? nodes_json(*v.affine_witness) : nlohmann::json();
    if (v.orthogonal_witness)
      j["orthogonal_witness"] = {nodes_json(v.orthogonal_witness->first),
                                 nodes_json(v.orthogonal_witness->second)};
    else
      j["orthogonal_witness"] = nullptr;
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "text") {
    std::string s = std::string("hyperbolic: ") + (v.hyperbolic ? "yes" : "no") + "\n";
    if (v.affine_witness) s += "affine subset: " + nodes_text(*v.affine_witness) + "\n";
    if (v.orthogonal_witness)
      s += "orthogonal non-spherical subsets: " + nodes_text(v.orthogonal_witness->first) +
           " and " + nodes_text(v.orthogonal_witness->second) + "\n";
    emit(o, s);
  } else {
    reject_format(o, "moussong");
  }
  return 0;
}

// --- nerve --------------------------------------------------------------------

int do_nerve(const Common& o) {
  Diagram d = load_diagram(o);
  SimplicialComplex c = nerve(d);
  auto join = join_sphere_certificate(d);
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::parse(to_json(c));
    j["f_vector"] = f_vector(c);
    j["euler_characteristic"] = euler_characteristic(c);
    if (join)
      j["join_sphere"] = {{"s1", nodes_json(join->s1)},
                          {"s2", nodes_json(join->s2)},
                          {"sphere_dimension", join->d - 1}};
    else
      j["join_sphere"] = nullptr;
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "dot") {
    emit(o, to_dot(c));
  } else if (o.format == "csv") {
    std::string s = "dim,count\n";
    auto fv = f_vector(c);
    for (std::size_t k = 0; k < fv.size(); ++k)
      s += std::to_string(k) + "," + std::to_string(fv[k]) + "\n";
    emit(o, s);
  } else if (o.format == "text") {
    std::string s;
    s += "vertices: " + std::to_string(c.vertex_count()) + "\n";
    s += "dimension: " + std::to_string(c.dimension()) + "\n";
    s += "facets:";
    for (const auto& f : c.facets()) s += " " + nodes_text(f);
    s += "\n";
    s += "euler characteristic: " + std::to_string(euler_characteristic(c)) + "\n";
    if (join)
      s += "join sphere: S^" + std::to_string(join->d - 1) + " from Lanner parts " +
           nodes_text(join->s1) + " and " + nodes_text(join->s2) + "\n";
    else
      s += "join sphere: none found\n";
    emit(o, s);
  } else {
    reject_format(o, "nerve");
  }
  return 0;
}

// --- certify -------------------------------------------------------------------

std::string certificate_text(const Certificate& cert) {
  std::string s = "kind: " + kind_name(cert.kind) + "\n";
  for (const auto& c : cert.checks)
    s += std::string(c.pass ? "  pass  " : "  FAIL  ") + c.name +
         (c.evidence.empty() ? "" : " — " + c.evidence) + "\n";
  if (cert.passed) {
    s += "result: certified — " + cert.theorem + "\n";
    s += cert.statement + "\n";
  } else {
    s += "result: not certified\n";
  }
  return s;
}

int emit_certificate(const Common& o, const Certificate& cert) {
  if (o.format == "json") {
    emit(o, to_json(cert) + "\n");
  } else if (o.format == "csv") {
    std::string s = "check,pass,evidence\n";
    for (const auto& c : cert.checks)
      s += c.name + "," + (c.pass ? "1" : "0") + "," + csv_field(c.evidence) + "\n";
    emit(o, s);
  } else if (o.format == "text") {
    emit(o, certificate_text(cert));
  } else {
    reject_format(o, "certify");
  }
  return cert.passed ? 0 : 1;
}

// --- lambda --------------------------------------------------------------------

int do_lambda(const Common& o) {
  Diagram d = load_diagram(o);
  LambdaQuadratic lq = lambda_polynomial(d);
  DiscriminantFactorization df = discriminant_identity(d);
  if (o.format == "json") {
    nlohmann::json j;
    j["diagram"] = serialize(d);
    auto coef = [&](const AlgScalar& x) {
      return nlohmann::json{{"exact", x.repr()}, {"float", x.to_float(o.precision)}};
    };
    j["a0"] = coef(lq.a0);
    j["a1"] = coef(lq.a1);
    j["a2"] = coef(lq.a2);
    j["delta"] = coef(lq.delta);
    if (lq.roots)
      j["roots"] = {{{"exact", lq.roots->first.repr()},
                     {"float", lq.roots->first.to_float(o.precision)}},
                    {{"exact", lq.roots->second.repr()},
                     {"float", lq.roots->second.to_float(o.precision)}}};
    else
      j["roots"] = nullptr;
    j["factorization"] = {{"infinite_edge",
                           {df.infinite_edge.first + 1, df.infinite_edge.second + 1}},
                          {"s1", nodes_json(df.s1)},
                          {"s2", nodes_json(df.s2)},
                          {"det1", coef(df.det1)},
                          {"det2", coef(df.det2)},
                          {"holds", df.holds}};
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "csv") {
    std::string s =
        "a0_exact,a0_float,a1_exact,a1_float,a2_exact,a2_float,delta_exact,delta_float,"
        "det1_float,det2_float,factorization_holds,root1_float,root2_float\n";
    auto field = [&](const AlgScalar& x) {
      return csv_field(x.repr()) + "," + x.to_float(o.precision);
    };
    s += field(lq.a0) + "," + field(lq.a1) + "," + field(lq.a2) + "," + field(lq.delta) + "," +
         df.det1.to_float(o.precision) + "," + df.det2.to_float(o.precision) + "," +
         (df.holds ? "1" : "0") + ",";
    if (lq.roots)
      s += lq.roots->first.to_float(o.precision) + "," + lq.roots->second.to_float(o.precision);
    else
      s += ",";
    s += "\n";
    emit(o, s);
  } else if (o.format == "text") {
    std::string s;
    s += "det C^lambda = a2 lambda^2 + a1 lambda + a0\n";
    s += "a0: " + lq.a0.repr() + " = " + lq.a0.to_float(o.precision) + "\n";
    s += "a1: " + lq.a1.repr() + " = " + lq.a1.to_float(o.precision) + "\n";
    s += "a2: " + lq.a2.repr() + " = " + lq.a2.to_float(o.precision) + "\n";
    s += "delta: " + lq.delta.repr() + " = " + lq.delta.to_float(o.precision) + "\n";
    s += "delta = 16 det1 det2: ";
    s += df.holds ? "holds" : "FAILS";
    s += "  (det1 = " + df.det1.to_float(o.precision) + ", det2 = " +
         df.det2.to_float(o.precision) + ")\n";
    if (lq.roots) {
      s += "roots: lambda1 = " + lq.roots->first.to_float(o.precision) +
           ", lambda2 = " + lq.roots->second.to_float(o.precision) + "\n";
    } else {
      s += "roots: none (a2 = 0 or delta <= 0)\n";
    }
    emit(o, s);
  } else {
    reject_format(o, "lambda");
  }
  return 0;
}

// --- sweep ----------------------------------------------------------------------

int do_sweep(const Common& o, unsigned long from, unsigned long to) {
  Diagram shape = load_shape(o);
  if (!o.params.empty()) shape = fix_params(shape, parse_params(o.params));
  FamilySweep fs = sweep_family(shape, from, to);
  if (o.format == "csv") {
    std::string s = fs.param + ",det_exact,det_float,sig_p,sig_q,sig_r,verdict\n";
    for (const auto& r : fs.rows) {
      s += std::to_string(r.params.at(fs.param)) + "," + csv_field(r.det.repr()) + "," +
           r.det.to_float(o.precision) + "," + std::to_string(r.sig.pos) + "," +
           std::to_string(r.sig.neg) + "," + std::to_string(r.sig.nul) + "," + r.verdict + "\n";
    }
    emit(o, s);
  } else if (o.format == "json") {
    nlohmann::json j;
    j["param"] = fs.param;
    j["monotone_increasing"] = fs.monotone_increasing;
    j["limit_det"] = {{"exact", fs.limit_det.repr()},
                      {"float", fs.limit_det.to_float(o.precision)}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : fs.rows) {
      j["rows"].push_back({{fs.param, r.params.at(fs.param)},
                           {"det_exact", r.det.repr()},
                           {"det_float", r.det.to_float(o.precision)},
                           {"signature", {r.sig.pos, r.sig.neg, r.sig.nul}},
                           {"verdict", r.verdict}});
    }
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "text") {
    std::string s;
    for (const auto& r : fs.rows)
      s += fs.param + " = " + std::to_string(r.params.at(fs.param)) +
           ": det = " + r.det.to_float(o.precision) + ", signature (" +
           std::to_string(r.sig.pos) + ", " + std::to_string(r.sig.neg) + ", " +
           std::to_string(r.sig.nul) + "), " + r.verdict + "\n";
    s += std::string("monotone increasing: ") + (fs.monotone_increasing ? "yes" : "no") + "\n";
    s += "limit det: " + fs.limit_det.to_float(o.precision) + "\n";
    emit(o, s);
  } else {
    reject_format(o, "sweep");
  }
  return 0;
}

// --- region ---------------------------------------------------------------------

int do_region(const Common& o, unsigned long pmax, unsigned long qmax) {
  if (qmax == 0) qmax = pmax;
  std::vector<RegionVerdict> rows = region_scan(pmax, qmax);
  auto verdict = [](const RegionVerdict& r) -> std::string {
    if (r.boundary) return "boundary";
    switch (r.membership) {
      case RegionMembership::RD: return "R_D";
      case RegionMembership::RL: return "R_L";
      case RegionMembership::Neither: return "neither";
    }
    return "neither";
  };
  if (o.format == "csv") {
    std::string s = "p,q,det_exact,det_float,sig_p,sig_q,sig_r,verdict\n";
    for (const auto& r : rows) {
      Diagram d = catalog_get("barbot2_dim4", "F1", {{"p", r.p}, {"q", r.q}});
      SqMat<AlgScalar> a = cosine_matrix(d);
      AlgScalar det = determinant(a);
      Inertia sig = inertia(a);
      s += std::to_string(r.p) + "," + std::to_string(r.q) + "," + csv_field(det.repr()) + "," +
           det.to_float(o.precision) + "," + std::to_string(sig.pos) + "," +
           std::to_string(sig.neg) + "," + std::to_string(sig.nul) + "," + verdict(r) + "\n";
    }
    emit(o, s);
  } else if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"p", r.p},
                   {"q", r.q},
                   {"membership", verdict(r)},
                   {"boundary", r.boundary},
                   {"signs",
                    {{"det1", r.sign_det1},
                     {"det2", r.sign_det2},
                     {"a0", r.sign_a0},
                     {"a1", r.sign_a1},
                     {"a2", r.sign_a2},
                     {"delta", r.sign_delta}}}});
    }
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "text") {
    std::string s;
    std::size_t rd = 0, rl = 0;
    for (const auto& r : rows) {
      if (r.membership == RegionMembership::RD) ++rd;
      if (r.membership == RegionMembership::RL) ++rl;
      if (r.membership != RegionMembership::Neither || r.boundary)
        s += "(" + std::to_string(r.p) + ", " + std::to_string(r.q) + "): " + verdict(r) + "\n";
    }
    s += "scanned " + std::to_string(rows.size()) + " pairs: " + std::to_string(rd) + " in R_D, " +
         std::to_string(rl) + " in R_L\n";
    emit(o, s);
  } else {
    reject_format(o, "region");
  }
  return 0;
}

// --- orbit ----------------------------------------------------------------------

int do_orbit(const Common& o, int length, int light_samples, int tiling_samples) {
  Diagram d = load_diagram(o);
  if (o.format == "csv") {
    OrbitRep rep = orbit_rep(d);
    OrbitBall ball = enumerate_ball(rep, length, o.tol);
    LimitSample ls = sample_limit_set(rep, ball);
    emit(o, limit_points_csv(ls));
    return 0;
  }
  OrbitReport r = orbit_evidence(d, length, light_samples, tiling_samples, o.seed, o.tol);
  if (o.format == "json") {
    emit(o, to_json(r) + "\n");
  } else if (o.format == "text") {
    std::string s;
    s += "ball sizes:";
    for (auto n : r.ball_sizes) s += " " + std::to_string(n);
    s += "\n";
    s += "proximal limit points: " + std::to_string(r.n_proximal) + "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", r.min_pairwise_inner);
    s += std::string("worst pairwise inner product: ") + buf + "\n";
    std::snprintf(buf, sizeof buf, "%.3g", r.max_self_inner);
    s += std::string("max |B(x,x)| at limit points: ") + buf + "\n";
    s += "negative-cone samples: " + std::to_string(r.light_samples) + " (" +
         std::to_string(r.light_violations) + " violations)\n";
    s += "tiling samples: " + std::to_string(r.tiling_samples) + " (" +
         std::to_string(r.tiling_violations) + " violations)\n";
    s += "seed: " + std::to_string(r.seed) + "\n";
    s += "note: sampling evidence, not a proof\n";
    emit(o, s);
  } else {
    reject_format(o, "orbit");
  }
  return 0;
}

// --- catalog ----------------------------------------------------------------------

int do_catalog(const Common& o) {
  if (!o.file.empty()) throw UsageError("catalog browses built-ins; --file is not accepted");
  std::string table, id;
  if (!o.cat.empty()) std::tie(table, id) = split_catalog_ref(o.cat);

  if (!id.empty()) {  // one item
    const CatalogItem& item = catalog_item(table, id);
    Diagram preview = item.builder || !item.reference.empty()
                          ? catalog_get(table, id, item.reference)
                          : item.shape;
    if (o.format == "dot") {
      emit(o, to_dot(item.builder ? preview : item.shape));
      return 0;
    }
    if (o.format == "json") {
      nlohmann::json j;
      j["table"] = item.table;
      j["id"] = item.id;
      j["display"] = item.display.empty() ? item.id : item.display;
      j["params"] = nlohmann::json::array();
      auto add_spec = [&](const ParamSpec& ps) {
        nlohmann::json p{{"name", ps.name}, {"min", ps.min}};
        p["max"] = ps.max ? nlohmann::json(*ps.max) : nlohmann::json();
        j["params"].push_back(std::move(p));
      };
      if (item.builder)
        add_spec(item.builder_param);
      else
        for (const auto& ps : item.shape.params()) add_spec(ps);
      j["reference"] = item.reference;
      j["diagram"] = serialize(item.builder ? preview : item.shape);
      j["reference_diagram"] = serialize(preview);
      emit(o, j.dump(2) + "\n");
      return 0;
    }
    if (o.format == "text") {
      std::string s = item.table + ":" + item.id;
      if (!item.display.empty() && item.display != item.id) s += " (" + item.display + ")";
      s += "\n";
      if (item.builder) {
        s += "rank parameter: " + item.builder_param.name +
             " >= " + std::to_string(item.builder_param.min);
        if (item.builder_param.max) s += ", <= " + std::to_string(*item.builder_param.max);
        s += "\n";
      }
      s += serialize(item.builder ? preview : item.shape);
      emit(o, s);
      return 0;
    }
    reject_format(o, "catalog");
  }

  // listing (all tables, or one)
  std::vector<std::string> tables;
  if (table.empty())
    tables = catalog_tables();
  else
    tables.push_back(table);
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : tables) {
      nlohmann::json e{{"table", t}, {"items", nlohmann::json::array()}};
      for (const CatalogItem* it : catalog_table(t)) e["items"].push_back(it->id);
      j.push_back(std::move(e));
    }
    emit(o, j.dump(2) + "\n");
  } else if (o.format == "csv") {
    std::string s = "table,id,display\n";
    for (const auto& t : tables)
      for (const CatalogItem* it : catalog_table(t))
        s += t + "," + it->id + "," + csv_field(it->display.empty() ? it->id : it->display) + "\n";
    emit(o, s);
  } else if (o.format == "text") {
    std::string s;
    for (const auto& t : tables) {
      auto items = catalog_table(t);
      s += t + " (" + std::to_string(items.size()) + " items):";
      for (const CatalogItem* it : items) s += " " + it->id;
      s += "\n";
    }
    emit(o, s);
  } else {
    reject_format(o, "catalog");
  }
  return 0;
}

// --- tables -----------------------------------------------------------------------

int do_tables(const Common& o, const std::string& which) {
  std::string content = which == "all" ? render_tables() : render_table(which);
  emit(o, content);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact analysis and certification of Coxeter diagrams"};
  app.require_subcommand(1);

  Common o;
  std::function<int()> action;

  auto* classify = app.add_subcommand("classify", "spherical/affine/Lanner/large trichotomy");
  auto* signature = app.add_subcommand("signature", "exact determinant and inertia of the Cosine matrix");
  auto* mouss = app.add_subcommand("moussong", "Moussong's hyperbolicity criterion with witnesses");
  auto* nerve_cmd = app.add_subcommand("nerve", "nerve complex and Lanner-join sphere certificate");
  auto* certify = app.add_subcommand("certify", "run a certification pipeline");
  certify->require_subcommand(1);
  auto* cert_ghc = certify->add_subcommand("ghc", "strictly GHC-regular criterion");
  auto* cert_qf = certify->add_subcommand("qf", "Lorentzian quasi-Fuchsian criterion");
  auto* cert_dis = certify->add_subcommand("disconnected", "disconnectedness criterion");
  auto* lambda = app.add_subcommand("lambda", "lambda polynomial and discriminant factorization");
  auto* sweep = app.add_subcommand("sweep", "sweep a one-parameter family");
  auto* region = app.add_subcommand("region", "R_D / R_L scan of the pentagon family");
  auto* orbit = app.add_subcommand("orbit", "floating-point orbit evidence for a representation");
  auto* catalog = app.add_subcommand("catalog", "browse the built-in diagram registry");
  auto* tables = app.add_subcommand("tables", "render the built-in tables as CSV");

  for (CLI::App* c : {classify, signature, mouss, nerve_cmd, cert_ghc, cert_qf, cert_dis, lambda,
                      orbit}) {
    add_input_opts(c, o);
    add_io_opts(c, o);
  }

  unsigned long sweep_from = 0, sweep_to = 0;
  add_input_opts(sweep, o);
  add_io_opts(sweep, o);
  sweep->add_option("--from", sweep_from, "first parameter value")->required();
  sweep->add_option("--to", sweep_to, "last parameter value")->required();

  unsigned long pmax = 40, qmax = 0;
  add_io_opts(region, o);
  region->add_option("--pmax", pmax, "largest p (scan starts at 7)");
  region->add_option("--qmax", qmax, "largest q (defaults to --pmax)");

  int orbit_length = 6, light_samples = 1000, tiling_samples = 200;
  orbit->add_option("--length", orbit_length, "Cayley ball radius (max 12)");
  orbit->add_option("--light-samples", light_samples, "negative-cone sample count");
  orbit->add_option("--tiling-samples", tiling_samples, "chamber disjointness sample count");
  orbit->add_option("--seed", o.seed, "RNG seed");
  orbit->add_option("--tol", o.tol, "dedup / disjointness tolerance");

  add_input_opts(catalog, o);
  add_io_opts(catalog, o);

  std::string which = "all";
  tables->add_option("which", which, "table name, or 'all'");
  add_io_opts(tables, o);

  classify->callback([&] { action = [&] { return do_classify(o); }; });
  signature->callback([&] { action = [&] { return do_signature(o); }; });
  mouss->callback([&] { action = [&] { return do_moussong(o); }; });
  nerve_cmd->callback([&] { action = [&] { return do_nerve(o); }; });
  cert_ghc->callback([&] { action = [&] { return emit_certificate(o, certify_ghc(load_diagram(o))); }; });
  cert_qf->callback(
      [&] { action = [&] { return emit_certificate(o, certify_quasi_fuchsian(load_diagram(o))); }; });
  cert_dis->callback(
      [&] { action = [&] { return emit_certificate(o, disconnected_check(load_diagram(o))); }; });
  lambda->callback([&] { action = [&] { return do_lambda(o); }; });
  sweep->callback([&] { action = [&] { return do_sweep(o, sweep_from, sweep_to); }; });
  region->callback([&] { action = [&] { return do_region(o, pmax, qmax); }; });
  orbit->callback(
      [&] { action = [&] { return do_orbit(o, orbit_length, light_samples, tiling_samples); }; });
  catalog->callback([&] { action = [&] { return do_catalog(o); }; });
  tables->callback([&] { action = [&] { return do_tables(o, which); }; });

  try {
    o.precision = default_precision();
    app.parse(argc, argv);
    if (!action) return 2;
    return action();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DiagramError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
