#pragma once

// Coxeter diagrams: the labeled-graph data model, a line-oriented text format,
// structural queries (restriction, connected components, orthogonality,
// label-preserving isomorphism) and the Cosine / lambda-Cosine matrices.
//
// Node indices are 1-based in the text format and 0-based in the API. An edge
// exists iff the stored label is >= 3, infinity, or a parameter slot; pairs
// with no stored label have Coxeter matrix entry 2.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxlab/linalg.hpp"
#include "coxlab/scalar.hpp"

namespace coxlab {

// Edge label: a finite integer >= 3, infinity, or a named parameter slot.
class Label {
 public:
  static Label finite(unsigned long m);
  static Label infinity() { return Label(Kind::Infinite, 0, {}); }
  static Label parameter(std::string name);

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  bool is_param() const { return kind_ == Kind::Param; }
  unsigned long value() const;
  const std::string& param_name() const;
  // "7", "inf", or "$p" — the text-format token.
  std::string text() const;

  bool operator==(const Label&) const = default;

 private:
  enum class Kind { Finite, Infinite, Param };
  Label(Kind k, unsigned long m, std::string name) : kind_(k), m_(m), name_(std::move(name)) {}
  Kind kind_;
  unsigned long m_;
  std::string name_;
};

struct ParamSpec {
  std::string name;
  unsigned long min = 3;
  std::optional<unsigned long> max{};
  bool operator==(const ParamSpec&) const = default;
};

// Parse failure with 1-based source position.
struct DiagramError : std::runtime_error {
  DiagramError(int line, int col, const std::string& what);
  int line;
  int col;
};

class Diagram {
 public:
  explicit Diagram(int rank = 1);

  int rank() const { return rank_; }
  // 0-based endpoints, any order. Absent = Coxeter entry 2.
  std::optional<Label> edge_label(int i, int j) const;
  // Setting a finite label 2 removes the edge; labels < 2 are rejected.
  void set_edge(int i, int j, const Label& l);
  void set_edge(int i, int j, unsigned long m) { set_edge(i, j, Label::finite(m)); }
  const std::map<std::pair<int, int>, Label>& edges() const { return edges_; }

  // Declared parameter slots, kept sorted by name.
  const std::vector<ParamSpec>& params() const { return params_; }
  void declare_param(const ParamSpec& spec);
  const ParamSpec* param(const std::string& name) const;
  bool is_concrete() const;  // no parameter-labeled edges

  // Optional display names (empty or size rank).
  const std::vector<std::string>& node_names() const { return node_names_; }
  void set_node_names(std::vector<std::string> names);

  bool operator==(const Diagram&) const = default;

 private:
  void check_node(int i) const;
  int rank_;
  std::map<std::pair<int, int>, Label> edges_;  // key: (min, max)
  std::vector<ParamSpec> params_;
  std::vector<std::string> node_names_;
};

// Text format (line-oriented, '#' comments):
//   rank <n>              required first directive
//   param <name> <min> [<max>]
//   edge <i> <j> <m|inf|$name>
Diagram parse_diagram(const std::string& text);
std::string serialize(const Diagram& d);
std::string to_dot(const Diagram& d);

// Substitutes every parameter (all must be assigned, within declared range).
Diagram instantiate(const Diagram& d, const std::map<std::string, unsigned long>& values);

// Entries: diagonal 2, -2cos(pi/m) for finite labels, -2 for infinity.
SqMat<AlgScalar> cosine_matrix(const Diagram& d);
// Infinity entries become -2(1+lambda) instead; lambda >= 0 required.
SqMat<AlgScalar> lambda_cosine_matrix(const Diagram& d, const mpq_class& lambda);
SqMat<QuadExt> lambda_cosine_matrix(const Diagram& d, const QuadExt& lambda);

// Restriction to a node subset (0-based, strictly increasing); node i of the
// result is nodes[i] of the input.
Diagram restrict_to(const Diagram& d, const std::vector<int>& nodes);

// Connected components of the underlying graph, each sorted, ordered by least
// element; components_within restricts attention to a subset.
std::vector<std::vector<int>> components(const Diagram& d);
std::vector<std::vector<int>> components_within(const Diagram& d, const std::vector<int>& subset);

// True iff every cross label is 2. The subsets must be disjoint.
bool orthogonal(const Diagram& d, const std::vector<int>& t, const std::vector<int>& u);

enum class LabelMatch {
  Exact,
  // Labels 3,4,5,6 distinct classes; every finite label >= 7 one shared class;
  // infinity its own class. Parameters match by name.
  CoarseBucket7,
};

// Label-preserving node bijection (image of node i at position i),
// lexicographically least, or absent.
std::optional<std::vector<int>> is_isomorphic(const Diagram& a, const Diagram& b,
                                              LabelMatch match = LabelMatch::Exact);

}  // namespace coxlab
