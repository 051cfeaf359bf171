#include "coxlab/orbit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "coxlab/catalog.hpp"
#include "coxlab/diagram.hpp"
#include "coxlab/linalg.hpp"

using namespace coxlab;

namespace {

Diagram dihedral(int m) {
  Diagram d(2);
  d.set_edge(0, 1, Label::finite(m));
  return d;
}

Diagram e1_at_11() { return catalog_get("examples_dim4", "E1", {{"p", 11}}); }

}  // namespace

TEST_CASE("ball enumeration matches small group orders") {
  SUBCASE("I2(3) closes at order 6") {
    OrbitRep rep = orbit_rep(dihedral(3));
    OrbitBall ball = enumerate_ball(rep, 3);
    CHECK(ball.size_by_length == std::vector<std::size_t>{1, 3, 5, 6});
    CHECK(ball.elements.size() == 6);
    CHECK(ball.words.size() == 6);
    CHECK(ball.words[0].empty());
    // one more length layer finds nothing new
    OrbitBall deeper = enumerate_ball(rep, 5);
    CHECK(deeper.elements.size() == 6);
  }
  SUBCASE("A1 x A1 closes at order 4 (st = ts deduplicated)") {
    Diagram d(2);
    OrbitBall ball = enumerate_ball(orbit_rep(d), 2);
    CHECK(ball.size_by_length == std::vector<std::size_t>{1, 3, 4});
  }
  SUBCASE("an infinite group grows strictly") {
    OrbitRep rep = orbit_rep(e1_at_11());
    OrbitBall ball = enumerate_ball(rep, 5);
    REQUIRE(ball.size_by_length.size() == 6);
    for (std::size_t k = 1; k < ball.size_by_length.size(); ++k)
      CHECK(ball.size_by_length[k] > ball.size_by_length[k - 1]);
  }
  SUBCASE("depth guard") {
    CHECK_THROWS_AS(enumerate_ball(orbit_rep(dihedral(3)), 13), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_ball(orbit_rep(dihedral(3)), -1), std::invalid_argument);
  }
}

TEST_CASE("limit sampling") {
  SUBCASE("finite groups yield no proximal elements") {
    OrbitRep rep = orbit_rep(dihedral(5));
    OrbitBall ball = enumerate_ball(rep, 6);
    LimitSample ls = sample_limit_set(rep, ball);
    CHECK(ls.points.empty());
    CHECK(ls.min_pairwise_inner == 0.0);
  }
  SUBCASE("a strictly GHC-regular group produces a negative-cone limit sample") {
    OrbitRep rep = orbit_rep(e1_at_11());
    OrbitBall ball = enumerate_ball(rep, 6);
    LimitSample ls = sample_limit_set(rep, ball);
    REQUIRE(ls.points.size() >= 20);
    CHECK(ls.words.size() == ls.points.size());
    CHECK(ls.pairs > 0);
    // lifts pairwise strictly on one side of the light cone
    CHECK(ls.min_pairwise_inner < -1e-6);
    // attracting fixed points are isotropic up to round-off
    CHECK(ls.max_self_inner < 1e-8);
    for (const DVec& p : ls.points) {
      double n2 = 0.0;
      for (double x : p) n2 += x * x;
      CHECK(std::abs(n2 - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("negative-cone sampling") {
  SUBCASE("1000 samples stay strictly inside the cone") {
    OrbitRep rep = orbit_rep(e1_at_11());
    LightReport lr = check_lemma_light(rep, 1000, 20240817);
    CHECK(lr.cone_found);
    CHECK(lr.samples == 1000);
    CHECK(lr.violations == 0);
    CHECK(lr.max_quadratic < 0.0);
    CHECK(lr.seed == 20240817);
  }
  SUBCASE("a positive-type form is refused") {
    Diagram a4(4);
    for (int i = 0; i + 1 < 4; ++i) a4.set_edge(i, i + 1, Label::finite(3));
    CHECK_THROWS_AS(check_lemma_light(orbit_rep(a4), 10, 1), std::invalid_argument);
  }
  SUBCASE("a zero-type component never reaches the sampler") {
    Diagram affine(3);
    affine.set_edge(0, 1, Label::finite(3));
    affine.set_edge(1, 2, Label::finite(3));
    affine.set_edge(0, 2, Label::finite(3));
    CHECK_THROWS_AS(orbit_rep(affine), std::invalid_argument);
  }
  SUBCASE("a zero-type subset breaks the hypothesis and admits a null direction") {
    // affine triangle plus a far node: negative type overall, but {1,2,3}
    // is a zero-type subset, so the hypothesis fails
    Diagram d(4);
    d.set_edge(0, 1, Label::finite(3));
    d.set_edge(1, 2, Label::finite(3));
    d.set_edge(0, 2, Label::finite(3));
    d.set_edge(2, 3, Label::finite(7));
    OrbitRep rep = orbit_rep(d);
    CHECK_FALSE(rep.h0);
    CHECK_THROWS_AS(check_lemma_light(rep, 10, 1), std::invalid_argument);
    // the kernel vector of the affine subset is a cone direction with
    // B(x, x) = 0: exactly the violation the hypothesis exists to exclude
    DVec c{1.0, 1.0, 1.0, 0.0};
    double q = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) q += c[i] * rep.gram[std::size_t(i) * 4 + j] * c[j];
    CHECK(std::abs(q) < 1e-12);
    CHECK(q >= -1e-9);  // would be flagged as a violation by the sampler
  }
}

TEST_CASE("tiling disjointness sampling") {
  SUBCASE("I2(3): every non-identity element moves the open chamber off itself") {
    OrbitRep rep = orbit_rep(dihedral(3));
    OrbitBall ball = enumerate_ball(rep, 3);
    TilingReport tr = check_tiling_disjoint(rep, ball, 50, 7);
    CHECK(tr.samples == 50);
    CHECK(tr.elements == 5);
    CHECK(tr.violations == 0);
  }
  SUBCASE("200 interior samples, no violations at tol 1e-9") {
    OrbitRep rep = orbit_rep(e1_at_11());
    OrbitBall ball = enumerate_ball(rep, 5);
    TilingReport tr = check_tiling_disjoint(rep, ball, 200, 20240817);
    CHECK(tr.samples == 200);
    CHECK(tr.elements == ball.elements.size() - 1);
    CHECK(tr.violations == 0);
    CHECK(tr.tol == 1e-9);
  }
}

TEST_CASE("evidence report") {
  SUBCASE("fields and determinism") {
    Diagram d = e1_at_11();
    OrbitReport r1 = orbit_evidence(d, 5, 200, 50, 42);
    OrbitReport r2 = orbit_evidence(d, 5, 200, 50, 42);
    std::string j1 = to_json(r1);
    CHECK(j1 == to_json(r2));  // fixed seed, byte-identical report

    auto j = nlohmann::json::parse(j1);
    CHECK(j["label"] == "numerical evidence");
    CHECK(j["diagram"] == serialize(d));
    CHECK(j["ball_size"].get<std::size_t>() == r1.ball_sizes.back());
    CHECK(j["n_proximal"].get<std::size_t>() >= 20);
    CHECK(j["min_pairwise_inner"].get<double>() < -1e-6);
    CHECK(j["samples"]["lemma_light"] == 200);
    CHECK(j["samples"]["tiling"] == 50);
    CHECK(j["violations"]["lemma_light"] == 0);
    CHECK(j["violations"]["tiling"] == 0);
    CHECK(j["seed"] == 42);
    CHECK(j["tolerances"]["dedup"].get<double>() == 1e-9);
  }
  SUBCASE("sampling phases without preconditions are skipped, not failed") {
    OrbitReport r = orbit_evidence(dihedral(3), 3, 100, 0, 1);
    CHECK(r.ball_sizes.back() == 6);
    CHECK(r.n_proximal == 0);
    CHECK(r.light_samples == 0);  // positive type: no negative cone to sample
    CHECK_FALSE(r.light_cone_found);
  }
  SUBCASE("limit points export as CSV at full precision") {
    OrbitRep rep = orbit_rep(e1_at_11());
    OrbitBall ball = enumerate_ball(rep, 4);
    LimitSample ls = sample_limit_set(rep, ball);
    REQUIRE(!ls.points.empty());
    std::string csv = limit_points_csv(ls);
    CHECK(csv.substr(0, 11) == "x0,x1,x2,x3");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == (long)ls.points.size() + 1);
  }
}
