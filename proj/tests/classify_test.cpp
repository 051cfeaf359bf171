#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "coxlab/classify.hpp"
#include "coxlab/diagram.hpp"
#include "doctest.h"

using namespace coxlab;

namespace {

constexpr unsigned long kInf = 0;  // edge-list shorthand

Label as_label(unsigned long m);

Diagram from_edges(int rank, const std::vector<std::tuple<int, int, unsigned long>>& edges) {
  Diagram d(rank);
  for (const auto& [i, j, m] : edges) d.set_edge(i, j, as_label(m));
  return d;
}

Label as_label(unsigned long m) { return m == kInf ? Label::infinity() : Label::finite(m); }

Diagram path_d(const std::vector<unsigned long>& labels) {
  Diagram d(static_cast<int>(labels.size()) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) d.set_edge(i, i + 1, as_label(labels[i]));
  return d;
}

Diagram cycle_d(const std::vector<unsigned long>& labels) {
  const int n = static_cast<int>(labels.size());
  Diagram d(n);
  for (int i = 0; i + 1 < n; ++i) d.set_edge(i, i + 1, as_label(labels[i]));
  d.set_edge(n - 1, 0, as_label(labels[n - 1]));
  return d;
}

// Chain 0-1-...-(chain-1), all labels 3, plus label-3 leaves attached where
// requested; rank = chain + leaves.
Diagram tree_d(int chain, const std::vector<int>& leaf_at) {
  Diagram d(chain + static_cast<int>(leaf_at.size()));
  for (int i = 0; i + 1 < chain; ++i) d.set_edge(i, i + 1, 3);
  for (std::size_t k = 0; k < leaf_at.size(); ++k)
    d.set_edge(leaf_at[k], chain + static_cast<int>(k), 3);
  return d;
}

Diagram infinite_dihedral() {
  Diagram d(2);
  d.set_edge(0, 1, Label::infinity());
  return d;
}

// Two infinity edges on disjoint node pairs.
Diagram two_infinity_pairs() {
  return from_edges(4, {{0, 1, kInf}, {2, 3, kInf}});
}

// Rank-6 item: chain with a 5 and a 4 fanning into node 2, free parameter at
// the far end (dim-4 family, first entry).
Diagram dim4_e1(unsigned long p) {
  return from_edges(6, {{0, 2, 5}, {1, 2, 4}, {2, 3, 3}, {3, 4, 3}, {4, 5, p}});
}

// Rank-7 item: labeled 4-cycle joined by a bridge to a path (dim-5 family).
Diagram dim5_x1(unsigned long p) {
  return from_edges(7, {{0, 1, 4}, {0, 2, 3}, {1, 3, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, p}});
}

// Rank-8 item: labeled 5-cycle, bridge, triangle (dim-6 family).
Diagram dim6_x1(unsigned long p) {
  return from_edges(8, {{0, 1, 3},
                        {1, 2, 3},
                        {2, 3, 4},
                        {3, 4, 3},
                        {0, 4, 3},
                        {0, 5, 3},
                        {5, 6, 3},
                        {5, 7, 3},
                        {6, 7, p}});
}

// Rank-7 item with one infinity edge: pentagon plus two pendant edges (the
// first disconnected-family shape, at its reference parameters).
Diagram pentagon_family(unsigned long p, unsigned long q) {
  return from_edges(7, {{0, 1, 3},
                        {1, 2, 3},
                        {2, 3, 3},
                        {3, 4, kInf},
                        {0, 4, 3},
                        {0, 5, q},
                        {2, 6, p}});
}

std::string name_of(const Diagram& d) {
  IrreducibleClass c = classify_irreducible(d);
  REQUIRE(c.catalog_name.has_value());
  return *c.catalog_name;
}

SqMat<AlgScalar> restrict_matrix(const SqMat<AlgScalar>& a, const std::vector<int>& nodes) {
  std::vector<std::size_t> idx(nodes.begin(), nodes.end());
  return a.submatrix(idx);
}

}  // namespace

TEST_CASE("irreducible trichotomy on the defining examples") {
  IrreducibleClass a3 = classify_irreducible(path_d({3, 3}));
  CHECK(a3.kind == DiagramKind::Spherical);
  CHECK(a3.catalog_name == "A_3");

  IrreducibleClass aff = classify_irreducible(cycle_d({3, 3, 3}));
  CHECK(aff.kind == DiagramKind::Affine);
  CHECK(aff.catalog_name == "Ã_2");

  IrreducibleClass lan = classify_irreducible(path_d({5, 3, 5}));
  CHECK(lan.kind == DiagramKind::Lanner);
  CHECK(lan.catalog_name == "Lanner-path(5,3,5)");

  IrreducibleClass a1t = classify_irreducible(infinite_dihedral());
  CHECK(a1t.kind == DiagramKind::Affine);
  CHECK(a1t.catalog_name == "Ã_1");

  IrreducibleClass a1 = classify_irreducible(Diagram(1));
  CHECK(a1.kind == DiagramKind::Spherical);
  CHECK(a1.catalog_name == "A_1");

  CHECK_THROWS_AS(classify_irreducible(from_edges(3, {{0, 1, 3}})), std::invalid_argument);
  CHECK_THROWS_AS(classify_irreducible(path_d(std::vector<unsigned long>(16, 3))),
                  std::length_error);
}

TEST_CASE("spherical catalog names") {
  CHECK(name_of(path_d({3})) == "A_2");
  CHECK(name_of(path_d({3, 3, 3, 3})) == "A_5");
  CHECK(name_of(path_d({4})) == "B_2");
  CHECK(name_of(path_d({4, 3})) == "B_3");
  CHECK(name_of(path_d({3, 3, 3, 4})) == "B_5");
  CHECK(name_of(path_d({5})) == "I_2(5)");
  CHECK(name_of(path_d({6})) == "I_2(6)");
  CHECK(name_of(path_d({30})) == "I_2(30)");
  CHECK(name_of(path_d({5, 3})) == "H_3");
  CHECK(name_of(path_d({3, 5})) == "H_3");
  CHECK(name_of(path_d({5, 3, 3})) == "H_4");
  CHECK(name_of(path_d({3, 4, 3})) == "F_4");
  CHECK(name_of(tree_d(3, {1})) == "D_4");
  CHECK(name_of(tree_d(5, {3})) == "D_6");
  CHECK(name_of(tree_d(5, {2})) == "E_6");
  CHECK(name_of(tree_d(6, {2})) == "E_7");
  CHECK(name_of(tree_d(7, {2})) == "E_8");
  for (const auto& d : {path_d({3, 3}), path_d({4, 3, 3}), tree_d(6, {2}), path_d({7})}) {
    CHECK(classify_irreducible(d).kind == DiagramKind::Spherical);
  }
}

TEST_CASE("affine catalog names") {
  CHECK(name_of(cycle_d({3, 3, 3, 3})) == "Ã_3");
  CHECK(name_of(cycle_d({3, 3, 3, 3, 3, 3})) == "Ã_5");
  CHECK(name_of(path_d({4, 4})) == "C̃_2");
  CHECK(name_of(path_d({4, 3, 4})) == "C̃_3");
  CHECK(name_of(path_d({4, 3, 3, 3, 4})) == "C̃_5");
  CHECK(name_of(path_d({6, 3})) == "G̃_2");
  CHECK(name_of(path_d({3, 6})) == "G̃_2");
  CHECK(name_of(path_d({3, 4, 3, 3})) == "F̃_4");
  CHECK(name_of(path_d({3, 3, 4, 3})) == "F̃_4");

  // B-tilde: 4 at the far end of the long arm, fork at the other end.
  Diagram b3t = from_edges(4, {{0, 1, 4}, {1, 2, 3}, {1, 3, 3}});
  CHECK(name_of(b3t) == "B̃_3");
  Diagram b5t = from_edges(6, {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {3, 5, 3}});
  CHECK(name_of(b5t) == "B̃_5");

  // D-tilde: the rank-5 star, then two forked ends.
  Diagram d4t = from_edges(5, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}});
  CHECK(name_of(d4t) == "D̃_4");
  Diagram d5t = from_edges(6, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {3, 5, 3}});
  CHECK(name_of(d5t) == "D̃_5");
  Diagram d6t = from_edges(7, {{0, 2, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {4, 6, 3}});
  CHECK(name_of(d6t) == "D̃_6");

  CHECK(name_of(tree_d(5, {2, 5})) == "Ẽ_6");  // arm of length 2 below the center
  CHECK(name_of(tree_d(7, {3})) == "Ẽ_7");
  CHECK(name_of(tree_d(8, {2})) == "Ẽ_8");

  for (const auto& d : {cycle_d({3, 3, 3}), path_d({4, 3, 3, 4}), b3t, d5t}) {
    CHECK(classify_irreducible(d).kind == DiagramKind::Affine);
  }
}

TEST_CASE("Lanner catalog names") {
  // Rank 3: triangles with 1/p+1/q+1/r < 1 and paths with 1/p+1/q < 1/2.
  CHECK(name_of(cycle_d({3, 4, 4})) == "Lanner-3-cycle(4,4,3)");
  CHECK(name_of(cycle_d({7, 3, 3})) == "Lanner-3-cycle(7,3,3)");
  CHECK(name_of(path_d({3, 7})) == "Lanner-path(7,3)");
  CHECK(name_of(path_d({5, 5})) == "Lanner-path(5,5)");

  // Rank 4: three paths, one star, five cycles.
  CHECK(name_of(path_d({3, 5, 3})) == "Lanner-path(3,5,3)");
  CHECK(name_of(path_d({4, 3, 5})) == "Lanner-path(5,3,4)");
  CHECK(name_of(path_d({5, 3, 5})) == "Lanner-path(5,3,5)");
  Diagram star = from_edges(4, {{0, 1, 5}, {0, 2, 3}, {0, 3, 3}});
  CHECK(name_of(star) == "Lanner-star(5,3,3)");
  CHECK(name_of(cycle_d({4, 3, 3, 3})) == "Lanner-4-cycle(4,3,3,3)");
  CHECK(name_of(cycle_d({3, 3, 5, 3})) == "Lanner-4-cycle(5,3,3,3)");
  CHECK(name_of(cycle_d({4, 3, 4, 3})) == "Lanner-4-cycle(4,3,4,3)");
  CHECK(name_of(cycle_d({3, 4, 3, 5})) == "Lanner-4-cycle(5,3,4,3)");
  CHECK(name_of(cycle_d({5, 3, 5, 3})) == "Lanner-4-cycle(5,3,5,3)");

  // Rank 5: one cycle, one fork, three paths.
  CHECK(name_of(cycle_d({3, 3, 4, 3, 3})) == "Lanner-5-cycle(4,3,3,3,3)");
  Diagram fork = from_edges(5, {{0, 1, 5}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}});
  CHECK(name_of(fork) == "Lanner-fork(5,3;3,3)");
  CHECK(name_of(path_d({3, 3, 3, 5})) == "Lanner-path(5,3,3,3)");
  CHECK(name_of(path_d({5, 3, 3, 5})) == "Lanner-path(5,3,3,5)");
  CHECK(name_of(path_d({4, 3, 3, 5})) == "Lanner-path(5,3,3,4)");

  for (const auto& d : {cycle_d({3, 4, 3, 5}), path_d({3, 7}), fork, star}) {
    IrreducibleClass c = classify_irreducible(d);
    CHECK(c.kind == DiagramKind::Lanner);
    // Definition cross-check: every one-node-deleted subset is spherical.
    for (int v = 0; v < d.rank(); ++v) {
      std::vector<int> rest;
      for (int u = 0; u < d.rank(); ++u) {
        if (u != v) rest.push_back(u);
      }
      CHECK(subset_class(d, rest).spherical);
    }
  }
}

TEST_CASE("large diagrams that are neither Lanner nor affine") {
  // Star with three 4-labels: contains an affine [4,4] subpath.
  Diagram star44 = from_edges(4, {{0, 1, 4}, {0, 2, 4}, {0, 3, 4}});
  IrreducibleClass c = classify_irreducible(star44);
  CHECK(c.kind == DiagramKind::OtherLarge);
  CHECK(!c.catalog_name.has_value());

  // Infinity label outside rank 2 always lands in OtherLarge.
  CHECK(classify_irreducible(from_edges(3, {{0, 1, kInf}, {1, 2, 3}})).kind ==
        DiagramKind::OtherLarge);
  CHECK(classify_irreducible(cycle_d({kInf, kInf, kInf, kInf})).kind == DiagramKind::OtherLarge);

  // A rank-6 path with 5s at both ends properly contains the rank-5 Lanner
  // path, so it cannot be Lanner itself.
  CHECK(classify_irreducible(path_d({5, 3, 3, 3, 5})).kind == DiagramKind::OtherLarge);
}

TEST_CASE("subset_class componentwise flags") {
  Diagram x1 = dim5_x1(7);
  SubsetClass s1 = subset_class(x1, {0, 1, 2, 3});
  CHECK(s1.lanner);
  CHECK(!s1.spherical);
  CHECK(!s1.affine);
  SubsetClass s2 = subset_class(x1, {4, 5, 6});
  CHECK(s2.lanner);
  SubsetClass whole = subset_class(x1, {0, 1, 2, 3, 4, 5, 6});
  CHECK(!whole.lanner);
  CHECK(!whole.spherical);
  CHECK(!whole.affine);

  CHECK(subset_class(x1, {0}).spherical);
  CHECK(subset_class(x1, {5, 0}).spherical);  // order-insensitive, disconnected pair

  Diagram ait = infinite_dihedral();
  SubsetClass aff = subset_class(ait, {0, 1});
  CHECK(aff.affine);
  CHECK(!aff.spherical);
  CHECK(!aff.lanner);

  // Disconnected subset with one affine and one spherical component.
  Diagram mix = from_edges(6, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}, {4, 5, 3}});
  SubsetClass both = subset_class(mix, {0, 1, 2, 4});
  CHECK(!both.spherical);
  CHECK(!both.affine);
  CHECK(!both.lanner);
  CHECK(subset_class(mix, {0, 1, 2}).affine);

  CHECK_THROWS_AS(subset_class(x1, {}), std::invalid_argument);
  CHECK_THROWS_AS(subset_class(x1, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(subset_class(x1, {7}), std::invalid_argument);
}

TEST_CASE("cartan_type per component") {
  SqMat<AlgScalar> one(1);
  one.at(0, 0) = AlgScalar(2);
  CHECK(cartan_type(one) == std::vector<CartanClass>{CartanClass::Positive});

  Diagram ait = infinite_dihedral();
  CHECK(cartan_type(cosine_matrix(ait)) == std::vector<CartanClass>{CartanClass::Zero});
  CHECK(cartan_type(lambda_cosine_matrix(ait, mpq_class(1))) ==
        std::vector<CartanClass>{CartanClass::Negative});

  // Spherical + affine + Lanner components in one matrix.
  Diagram mix = from_edges(9, {{0, 1, 3},
                               {2, 3, 3},
                               {3, 4, 3},
                               {2, 4, 3},
                               {5, 6, 5},
                               {6, 7, 3},
                               {7, 8, 5}});
  std::vector<CartanClass> expect{CartanClass::Positive, CartanClass::Zero,
                                  CartanClass::Negative};
  CHECK(cartan_type(cosine_matrix(mix)) == expect);

  SqMat<AlgScalar> bad(2);
  bad.at(0, 0) = AlgScalar(2);
  bad.at(1, 1) = AlgScalar(3);
  CHECK_THROWS_AS(cartan_type(bad), std::invalid_argument);
  bad.at(1, 1) = AlgScalar(2);
  bad.at(0, 1) = AlgScalar(1);
  bad.at(1, 0) = AlgScalar(1);
  CHECK_THROWS_AS(cartan_type(bad), std::invalid_argument);
  bad.at(0, 1) = AlgScalar(-1);
  bad.at(1, 0) = AlgScalar(-2);
  CHECK_THROWS_AS(cartan_type(bad), std::invalid_argument);
}

TEST_CASE("cartan_type on quadratic-extension matrices") {
  Diagram ait = infinite_dihedral();
  QuadExt golden(AlgScalar(1), AlgScalar(1), AlgScalar(5));  // 1 + sqrt(5)
  CHECK(cartan_type(lambda_cosine_matrix(ait, golden)) ==
        std::vector<CartanClass>{CartanClass::Negative});
  CHECK(cartan_type(lambda_cosine_matrix(ait, QuadExt(0))) ==
        std::vector<CartanClass>{CartanClass::Zero});

  // Mixed entries: irrational cosines next to quadratic-extension values.
  Diagram mixed = from_edges(3, {{0, 1, 5}, {1, 2, kInf}});
  SqMat<QuadExt> m = lambda_cosine_matrix(mixed, golden);
  std::vector<CartanClass> t = cartan_type(m);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == CartanClass::Negative);
}

TEST_CASE("check_H0 finds zero-type subsets") {
  Diagram a2 = path_d({3});
  H0Result ok = check_H0(cosine_matrix(a2), a2);
  CHECK(ok.holds);
  CHECK(!ok.witness.has_value());

  Diagram affine = cycle_d({3, 3, 3});
  H0Result bad = check_H0(cosine_matrix(affine), affine);
  CHECK(!bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == std::vector<int>{0, 1, 2});
  CHECK(subset_class(affine, *bad.witness).affine);

  Diagram e1 = dim4_e1(11);
  CHECK(check_H0(cosine_matrix(e1), e1).holds);

  // At lambda > 0 the infinity pairs are negative, not zero.
  Diagram pairs = two_infinity_pairs();
  CHECK(check_H0(lambda_cosine_matrix(pairs, mpq_class(1)), pairs).holds);
  // At lambda = 0 they are zero type.
  H0Result z = check_H0(lambda_cosine_matrix(pairs, mpq_class(0)), pairs);
  CHECK(!z.holds);
  CHECK(*z.witness == std::vector<int>{0, 1});

  Diagram wrong = cycle_d({3, 3, 3, 3});
  CHECK_THROWS_AS(check_H0(cosine_matrix(a2), wrong), std::invalid_argument);
  // Same rank, different edge set.
  Diagram reshuffled = from_edges(3, {{0, 1, 3}, {0, 2, 3}});
  CHECK_THROWS_AS(check_H0(cosine_matrix(path_d({3, 3})), reshuffled), std::invalid_argument);
}

TEST_CASE("check_Hminus finds orthogonal negative pairs") {
  Diagram h3 = path_d({5, 3});
  CHECK(check_Hminus(cosine_matrix(h3), h3).holds);

  Diagram pairs = two_infinity_pairs();
  SqMat<AlgScalar> at1 = lambda_cosine_matrix(pairs, mpq_class(1));
  HminusResult bad = check_Hminus(at1, pairs);
  CHECK(!bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->first == std::vector<int>{0, 1});
  CHECK(bad.witness->second == std::vector<int>{2, 3});
  CHECK(orthogonal(pairs, bad.witness->first, bad.witness->second));
  CHECK(cartan_type(restrict_matrix(at1, bad.witness->first)) ==
        std::vector<CartanClass>{CartanClass::Negative});

  Diagram x1 = dim6_x1(4);
  CHECK(check_Hminus(cosine_matrix(x1), x1).holds);
  CHECK(check_H0(cosine_matrix(x1), x1).holds);
}

TEST_CASE("moussong criterion with witnesses") {
  HyperbolicityVerdict aff = moussong(cycle_d({3, 3, 3}));
  CHECK(!aff.hyperbolic);
  REQUIRE(aff.affine_witness.has_value());
  CHECK(*aff.affine_witness == std::vector<int>{0, 1, 2});
  CHECK(!aff.orthogonal_witness.has_value());

  // Two orthogonal infinite dihedrals: affine pieces are rank 2, so only the
  // orthogonal-pair condition can fire.
  HyperbolicityVerdict pairs = moussong(two_infinity_pairs());
  CHECK(!pairs.hyperbolic);
  CHECK(!pairs.affine_witness.has_value());
  REQUIRE(pairs.orthogonal_witness.has_value());
  CHECK(pairs.orthogonal_witness->first == std::vector<int>{0, 1});
  CHECK(pairs.orthogonal_witness->second == std::vector<int>{2, 3});

  CHECK(moussong(path_d({5, 3})).hyperbolic);
  CHECK(moussong(path_d({5, 3, 5})).hyperbolic);
  CHECK(moussong(infinite_dihedral()).hyperbolic);

  // Catalog items at small parameters.
  CHECK(moussong(dim4_e1(11)).hyperbolic);
  CHECK(moussong(dim5_x1(7)).hyperbolic);
  CHECK(moussong(dim6_x1(4)).hyperbolic);

  CHECK(!moussong(from_edges(4, {{0, 1, 4}, {1, 2, 3}, {1, 3, 3}})).hyperbolic);  // affine tree

  // Two orthogonal Lanner components.
  Diagram twol = from_edges(8, {{0, 1, 5}, {1, 2, 3}, {2, 3, 5}, {4, 5, 5}, {5, 6, 3}, {6, 7, 5}});
  HyperbolicityVerdict tw = moussong(twol);
  CHECK(!tw.hyperbolic);
  REQUIRE(tw.orthogonal_witness.has_value());
  CHECK(tw.orthogonal_witness->first == std::vector<int>{0, 1, 2, 3});
  CHECK(tw.orthogonal_witness->second == std::vector<int>{4, 5, 6, 7});

  // Determinism.
  HyperbolicityVerdict again = moussong(two_infinity_pairs());
  CHECK(again.orthogonal_witness == pairs.orthogonal_witness);

  CHECK(irreducible_affine_rank3(cycle_d({3, 3, 3})) == std::vector<int>{0, 1, 2});
  CHECK(!irreducible_affine_rank3(two_infinity_pairs()).has_value());
  CHECK(orthogonal_nonspherical_pair(two_infinity_pairs()).has_value());
}

TEST_CASE("lambda-Cosine H0/H- match the diagram-level conditions") {
  std::vector<Diagram> basket;
  basket.push_back(two_infinity_pairs());
  basket.push_back(cycle_d({kInf, kInf, kInf, kInf}));
  basket.push_back(cycle_d({3, 3, 3}));
  basket.push_back(dim4_e1(11));
  basket.push_back(pentagon_family(10, 10));
  basket.push_back(from_edges(4, {{0, 1, 4}, {1, 2, 3}, {1, 3, 3}}));  // affine tree
  basket.push_back(infinite_dihedral());

  for (const Diagram& d : basket) {
    CAPTURE(serialize(d));
    bool no_affine3 = !irreducible_affine_rank3(d).has_value();
    bool no_orth = !orthogonal_nonspherical_pair(d).has_value();
    for (const mpq_class& lambda : {mpq_class(1, 2), mpq_class(1), mpq_class(3)}) {
      SqMat<AlgScalar> a = lambda_cosine_matrix(d, lambda);
      H0Result h0 = check_H0(a, d);
      CHECK(h0.holds == no_affine3);
      if (h0.holds) CHECK(check_Hminus(a, d).holds == no_orth);
      bool both = h0.holds && check_Hminus(a, d).holds;
      CHECK(both == moussong(d).hyperbolic);
    }
  }
}

TEST_CASE("scan capacity is bounded") {
  Diagram big = path_d(std::vector<unsigned long>(17, 3));
  CHECK_THROWS_AS(moussong(big), std::length_error);
  CHECK_THROWS_AS(subset_class(big, {0, 1}), std::length_error);
  SqMat<AlgScalar> wide(18);
  for (int i = 0; i < 18; ++i) wide.at(i, i) = AlgScalar(2);
  CHECK_THROWS_AS(cartan_type(wide), std::length_error);
}
