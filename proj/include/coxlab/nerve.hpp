#pragma once
// Finite abstract simplicial complexes and the nerve of a Coxeter system: the
// complex on the diagram's nodes whose faces are the nonempty spherical
// subsets. For the groups studied here the nerve is certified to be a PL
// sphere by exhibiting a partition of the nodes into two Lanner subsets whose
// sphericality pattern forces the nerve to be the join of two simplex
// boundaries.

#include <optional>
#include <string>
#include <vector>

#include "coxlab/diagram.hpp"

namespace coxlab {

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Faces may be given in any order and with duplicates; vertices inside a
  // face are deduplicated, non-maximal faces are dropped, and the stored
  // facets are sorted (each facet ascending, facets in lexicographic order).
  // Vertices must lie in [0, n_vertices); empty faces are rejected.
  SimplicialComplex(int n_vertices, std::vector<std::vector<int>> faces);

  int vertex_count() const { return n_; }
  const std::vector<std::vector<int>>& facets() const { return facets_; }

  // Largest facet size minus one; -1 for a complex with no faces.
  int dimension() const;

  bool operator==(const SimplicialComplex&) const = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> facets_;
};

// Nerve of the Coxeter system: vertices are the diagram's nodes, facets the
// maximal spherical subsets.
SimplicialComplex nerve(const Diagram& d);

// Face counts by dimension: entry k is the number of k-faces, so entry 0
// counts the vertices that lie in some face. Empty for a complex without
// faces.
std::vector<long> f_vector(const SimplicialComplex& c);

// Alternating sum of the face counts.
long euler_characteristic(const SimplicialComplex& c);

// Vertex bijection carrying the facet set of a onto the facet set of b
// (entry i is the image of vertex i), lexicographically least among all such
// bijections, or nullopt when none exists.
std::optional<std::vector<int>> complexes_isomorphic(const SimplicialComplex& a,
                                                     const SimplicialComplex& b);

struct JoinCertificate {
  std::vector<int> s1;  // the part containing node 0
  std::vector<int> s2;
  // (|s1| - 1) + (|s2| - 1); the certificate proves the nerve is a PL sphere
  // of dimension d - 1.
  int d = 0;
  // True when a second, distinct partition also satisfies the certificate
  // (never observed; the partition is provably unique, see the test suite).
  bool alternative_exists = false;
};

// Searches for a partition S = S1 (disjoint union) S2 of the nodes with both
// parts Lanner such that a subset is spherical exactly when it contains
// neither part. The nerve is then the join of the boundaries of the two
// simplexes spanned by the parts, hence a PL (d-1)-sphere. Candidates are
// scanned by increasing smaller-part size; the first match is returned.
std::optional<JoinCertificate> join_sphere_certificate(const Diagram& d);

// {"vertices": [...], "facets": [[...], ...]} with both lists sorted.
std::string to_json(const SimplicialComplex& c);

// Graphviz rendering of the 1-skeleton.
std::string to_dot(const SimplicialComplex& c);

}  // namespace coxlab
