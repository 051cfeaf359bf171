#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "coxlab/diagram.hpp"

#include <vector>

#include "doctest.h"

using namespace coxlab;

namespace {

const char* kFig1A =
    "rank 7\n"
    "param p 7\n"
    "edge 1 2 4\n"
    "edge 1 3 3\n"
    "edge 2 4 3\n"
    "edge 3 4 3\n"
    "edge 4 5 3\n"
    "edge 5 6 3\n"
    "edge 6 7 $p\n";

AlgScalar tc(unsigned long m) { return AlgScalar::two_cos_pi_over(m); }

int err_line(const std::string& text) {
  try {
    parse_diagram(text);
  } catch (const DiagramError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("parse basics") {
  Diagram a1 = parse_diagram("rank 2\nedge 1 2 inf\n");
  CHECK(a1.rank() == 2);
  REQUIRE(a1.edge_label(0, 1).has_value());
  CHECK(a1.edge_label(0, 1)->is_infinite());

  Diagram a2t = parse_diagram("rank 3\nedge 1 2 3\nedge 2 3 3\nedge 1 3 3");
  CHECK(a2t.rank() == 3);
  CHECK(a2t.edges().size() == 3);
  CHECK(a2t.edge_label(2, 0)->value() == 3);

  Diagram f = parse_diagram(kFig1A);
  CHECK(f.rank() == 7);
  CHECK(f.params().size() == 1);
  CHECK(f.params()[0].name == "p");
  CHECK(f.params()[0].min == 7);
  CHECK(!f.params()[0].max.has_value());
  CHECK(f.edge_label(5, 6)->is_param());
  CHECK(!f.is_concrete());
  CHECK(!f.edge_label(0, 3).has_value());

  // Comments, blank lines, and agreeing duplicates are fine.
  Diagram c = parse_diagram("# header\nrank 2\n\nedge 1 2 5 # I2(5)\nedge 2 1 5\n");
  CHECK(c.edge_label(0, 1)->value() == 5);
}

TEST_CASE("parse errors carry positions") {
  CHECK(err_line("edge 1 2 3\n") == 1);                    // rank must come first
  CHECK(err_line("rank 2\nrank 2\n") == 2);                // duplicate rank
  CHECK(err_line("rank 0\n") == 1);                        // rank >= 1
  CHECK(err_line("rank 2\nedge 1 2 2\n") == 2);            // label 2 not writable
  CHECK(err_line("rank 2\nedge 1 2 1\n") == 2);            // label < 2
  CHECK(err_line("rank 2\nedge 1 3 3\n") == 2);            // node out of range
  CHECK(err_line("rank 2\nedge 0 1 3\n") == 2);            // node out of range
  CHECK(err_line("rank 2\nedge 1 1 3\n") == 2);            // loop
  CHECK(err_line("rank 2\nedge 1 2 $p\n") == 2);           // unknown parameter
  CHECK(err_line("rank 2\nedge 1 2 $p\nparam p 7\n") == 2);  // declared after use
  CHECK(err_line("rank 2\nedge 1 2 3\nedge 2 1 4\n") == 3);  // conflicting duplicate
  CHECK(err_line("rank 2\nedge 1 2 x\n") == 2);            // bad label token
  CHECK(err_line("rank 2\nparam p 2\n") == 2);             // parameter min < 3
  CHECK(err_line("rank 2\nparam p 7 5\n") == 2);           // max below min
  CHECK(err_line("rank 2\nparam p 7\nparam p 8\n") == 3);  // duplicate parameter
  CHECK(err_line("rank 2\nfrobnicate\n") == 2);            // unknown directive
  CHECK(err_line("rank 2\nedge 1 2 3 9\n") == 2);          // trailing token
  CHECK(err_line("rank 2\nedge 1 2\n") == 2);              // missing argument
  CHECK(err_line("") == 1);                                // empty input
  CHECK(err_line("# only a comment\n") == 1);

  try {
    parse_diagram("rank 3\nedge 1 99 3\n");
    CHECK(false);
  } catch (const DiagramError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 8);  // the offending token "99"
    CHECK(std::string(e.what()).find("line 2, col 8") != std::string::npos);
  }
}

TEST_CASE("serialize is canonical and round-trips") {
  Diagram f = parse_diagram(kFig1A);
  CHECK(serialize(f) == kFig1A);
  CHECK(parse_diagram(serialize(f)) == f);

  // Out-of-order input serializes sorted.
  Diagram shuffled = parse_diagram("rank 3\nedge 2 3 5\nedge 1 2 4\n");
  CHECK(serialize(shuffled) == "rank 3\nedge 1 2 4\nedge 2 3 5\n");
  CHECK(parse_diagram(serialize(shuffled)) == shuffled);

  // Parameters serialize sorted by name, with optional max.
  Diagram p = parse_diagram("rank 3\nparam q 3 9\nparam p 7\nedge 1 2 $p\nedge 2 3 $q\n");
  CHECK(serialize(p) ==
        "rank 3\nparam p 7\nparam q 3 9\nedge 1 2 $p\nedge 2 3 $q\n");
  CHECK(parse_diagram(serialize(p)) == p);
}

TEST_CASE("cosine matrix entries") {
  Diagram a2 = parse_diagram("rank 2\nedge 1 2 3\n");
  auto m = cosine_matrix(a2);
  CHECK(m.at(0, 0) == AlgScalar(2));
  CHECK(m.at(0, 1) == AlgScalar(-1));
  CHECK(m.at(1, 0) == AlgScalar(-1));

  Diagram a1t = parse_diagram("rank 2\nedge 1 2 inf\n");
  auto mi = cosine_matrix(a1t);
  CHECK(mi.at(0, 1) == AlgScalar(-2));

  // Unlisted pair -> entry 0.
  Diagram two = parse_diagram("rank 2\n");
  CHECK(cosine_matrix(two).at(0, 1).is_zero());

  // Rank-10 path with end labels 5: entries are -2cos(pi/5) at the 5-edges,
  // -1 along the rest, 0 elsewhere, 2 on the diagonal.
  std::string t8 = "rank 10\nedge 1 2 5\nedge 9 10 5\n";
  for (int i = 2; i <= 8; ++i)
    t8 += "edge " + std::to_string(i) + " " + std::to_string(i + 1) + " 3\n";
  auto m8 = cosine_matrix(parse_diagram(t8));
  CHECK(m8.at(0, 1) == -tc(5));
  CHECK(m8.at(9, 8) == -tc(5));
  CHECK(m8.at(4, 5) == AlgScalar(-1));
  CHECK(m8.at(0, 2).is_zero());
  for (int i = 0; i < 10; ++i) CHECK(m8.at(i, i) == AlgScalar(2));

  CHECK_THROWS_AS(cosine_matrix(parse_diagram(kFig1A)), std::invalid_argument);
}

TEST_CASE("lambda cosine matrix") {
  Diagram a1t = parse_diagram("rank 2\nedge 1 2 inf\n");
  auto m0 = lambda_cosine_matrix(a1t, mpq_class(0));
  CHECK(m0.at(0, 1) == AlgScalar(-2));
  auto m1 = lambda_cosine_matrix(a1t, mpq_class(1));
  CHECK(m1.at(0, 1) == AlgScalar(-4));
  CHECK(m1.at(0, 0) == AlgScalar(2));
  CHECK_THROWS_AS(lambda_cosine_matrix(a1t, mpq_class(-1)), std::invalid_argument);

  // lambda = 0 reproduces cosine_matrix on any diagram.
  Diagram mix = parse_diagram("rank 3\nedge 1 2 inf\nedge 2 3 5\n");
  auto c = cosine_matrix(mix);
  auto l0 = lambda_cosine_matrix(mix, mpq_class(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(c.at(i, j) == l0.at(i, j));

  // Quadratic-extension lambda: entry is -2 - 2*sqrt(5).
  QuadExt r5(AlgScalar(0), AlgScalar(1), AlgScalar(5));
  auto mq = lambda_cosine_matrix(a1t, r5);
  CHECK(mq.at(0, 1) == QuadExt(AlgScalar(-2), AlgScalar(-2), AlgScalar(5)));
  CHECK(mq.at(1, 1) == QuadExt(2));
  QuadExt neg = QuadExt(-1) * r5;
  CHECK_THROWS_AS(lambda_cosine_matrix(a1t, neg), std::invalid_argument);
}

TEST_CASE("restriction, components, orthogonality") {
  Diagram f = instantiate(parse_diagram(kFig1A), {{"p", 7}});
  // Remove nodes 4 and 5 (1-based): B3 x I2(7) remains.
  Diagram r = restrict_to(f, {0, 1, 2, 5, 6});
  CHECK(r.rank() == 5);
  CHECK(r.edge_label(0, 1)->value() == 4);
  CHECK(r.edge_label(0, 2)->value() == 3);
  CHECK(r.edge_label(3, 4)->value() == 7);
  CHECK(r.edges().size() == 3);
  auto comps = components(r);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{0, 1, 2});
  CHECK(comps[1] == std::vector<int>{3, 4});
  CHECK(orthogonal(r, {0, 1, 2}, {3, 4}));
  CHECK(!orthogonal(f, {0, 1, 2}, {3, 4, 5, 6}));
  CHECK_THROWS_AS(orthogonal(r, {0, 1}, {1, 2}), std::invalid_argument);

  // restrict(d, S) = d
  std::vector<int> all{0, 1, 2, 3, 4, 5, 6};
  CHECK(restrict_to(f, all) == f);

  // Composition: restricting twice equals restricting once to the image.
  Diagram r2 = restrict_to(r, {0, 1, 2});
  CHECK(r2 == restrict_to(f, {0, 1, 2}));

  // Components of an edgeless diagram are singletons.
  auto singles = components(parse_diagram("rank 2\n"));
  REQUIRE(singles.size() == 2);
  CHECK(singles[0] == std::vector<int>{0});

  // components_within ignores outside nodes.
  auto w = components_within(f, {0, 1, 2, 5, 6});
  REQUIRE(w.size() == 2);
  CHECK(w[0] == std::vector<int>{0, 1, 2});
  CHECK(w[1] == std::vector<int>{5, 6});

  // A parameter edge still counts as an edge of the underlying graph.
  Diagram t = parse_diagram(kFig1A);
  CHECK(components(t).size() == 1);
}

TEST_CASE("instantiation enforces ranges") {
  Diagram f = parse_diagram(kFig1A);
  Diagram at7 = instantiate(f, {{"p", 7}});
  CHECK(at7.is_concrete());
  CHECK(at7.edge_label(5, 6)->value() == 7);
  CHECK(at7.params().empty());
  CHECK_THROWS_AS(instantiate(f, {{"p", 6}}), std::out_of_range);
  CHECK_THROWS_AS(instantiate(f, {{"q", 7}}), std::invalid_argument);
  CHECK_THROWS_AS(instantiate(f, {}), std::invalid_argument);

  Diagram bounded = parse_diagram("rank 2\nparam p 4 6\nedge 1 2 $p\n");
  CHECK(instantiate(bounded, {{"p", 6}}).edge_label(0, 1)->value() == 6);
  CHECK_THROWS_AS(instantiate(bounded, {{"p", 7}}), std::out_of_range);
}

TEST_CASE("isomorphism with exact and coarse labels") {
  // A3 path vs the same path rooted differently: lex-least bijection.
  Diagram path = parse_diagram("rank 3\nedge 1 2 3\nedge 2 3 3\n");
  Diagram star = parse_diagram("rank 3\nedge 1 2 3\nedge 1 3 3\n");
  auto bij = is_isomorphic(path, star);
  REQUIRE(bij.has_value());
  CHECK(*bij == std::vector<int>{1, 0, 2});

  // A3 vs B3: no label-preserving bijection.
  Diagram b3 = parse_diagram("rank 3\nedge 1 2 4\nedge 2 3 3\n");
  CHECK(!is_isomorphic(path, b3).has_value());
  // ... but with the coarse classes 4 is still its own class.
  CHECK(!is_isomorphic(path, b3, LabelMatch::CoarseBucket7).has_value());

  // Family diagram at p=11 vs p=13: not label-isomorphic, coarsely isomorphic.
  std::string e1 =
      "rank 6\nparam p 11\nedge 1 3 5\nedge 2 3 4\nedge 3 4 3\nedge 4 5 3\nedge 5 6 $p\n";
  Diagram d11 = instantiate(parse_diagram(e1), {{"p", 11}});
  Diagram d13 = instantiate(parse_diagram(e1), {{"p", 13}});
  CHECK(!is_isomorphic(d11, d13).has_value());
  auto coarse = is_isomorphic(d11, d13, LabelMatch::CoarseBucket7);
  REQUIRE(coarse.has_value());
  CHECK(*coarse == std::vector<int>{0, 1, 2, 3, 4, 5});

  // Infinity is its own class even coarsely.
  Diagram i1 = parse_diagram("rank 2\nedge 1 2 inf\n");
  Diagram i2 = parse_diagram("rank 2\nedge 1 2 9\n");
  CHECK(!is_isomorphic(i1, i2, LabelMatch::CoarseBucket7).has_value());
  CHECK(is_isomorphic(i2, parse_diagram("rank 2\nedge 1 2 12\n"), LabelMatch::CoarseBucket7)
            .has_value());

  // Different ranks, and rank-1 identity.
  CHECK(!is_isomorphic(path, i1).has_value());
  Diagram one = parse_diagram("rank 1\n");
  auto self = is_isomorphic(one, one);
  REQUIRE(self.has_value());
  CHECK(*self == std::vector<int>{0});
}

TEST_CASE("dot export") {
  Diagram f = parse_diagram("rank 3\nparam p 7\nedge 1 2 3\nedge 2 3 $p\n");
  std::string dot = to_dot(f);
  CHECK(dot.find("s1 -- s2;") != std::string::npos);        // label 3 omitted
  CHECK(dot.find("s2 -- s3 [label=\"$p\"]") != std::string::npos);
  Diagram i = parse_diagram("rank 2\nedge 1 2 inf\n");
  CHECK(to_dot(i).find("[label=\"inf\"]") != std::string::npos);
}
