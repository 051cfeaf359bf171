#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "coxlab/scalar.hpp"

using coxlab::AlgScalar;
using coxlab::QuadExt;

namespace {

// 2cos(pi * k / n) for arbitrary rational angle, used as an independent builder.
AlgScalar two_cos_frac(unsigned long k, unsigned long n) {
  return AlgScalar::from_terms(2 * n, {{k, mpq_class(1)}, {2 * n - k, mpq_class(1)}});
}

AlgScalar sqrt5() { return AlgScalar(2) * AlgScalar::two_cos_pi_over(5) - AlgScalar(1); }

}  // namespace

TEST_CASE("rational basics") {
  AlgScalar zero;
  CHECK(zero.is_zero());
  CHECK(zero.sign() == 0);
  CHECK(zero.conductor() == 1);
  CHECK(zero.to_float(6) == "0.000000");

  AlgScalar half(mpq_class(1, 2));
  CHECK(half.is_rational());
  CHECK((half + half) == AlgScalar(1));
  CHECK((half - half).is_zero());
  CHECK(half.sign() == 1);
  CHECK((-half).sign() == -1);
}

TEST_CASE("two_cos_pi_over small labels") {
  CHECK(AlgScalar::two_cos_pi_over(2).is_zero());
  CHECK(AlgScalar::two_cos_pi_over(3) == AlgScalar(1));
  AlgScalar r2 = AlgScalar::two_cos_pi_over(4);
  CHECK(r2 * r2 == AlgScalar(2));
  AlgScalar r3 = AlgScalar::two_cos_pi_over(6);
  CHECK(r3 * r3 == AlgScalar(3));
  CHECK_THROWS_AS(AlgScalar::two_cos_pi_over(1), std::invalid_argument);
}

TEST_CASE("minimal polynomial of 2cos(pi/5)") {
  AlgScalar x = AlgScalar::two_cos_pi_over(5);
  CHECK((x * x - x - AlgScalar(1)).is_zero());
  CHECK(x.sign() == 1);
}

TEST_CASE("minimal polynomial of 2cos(pi/7)") {
  AlgScalar x = AlgScalar::two_cos_pi_over(7);
  AlgScalar p = x * x * x - x * x - AlgScalar(2) * x + AlgScalar(1);
  CHECK(p.is_zero());
}

TEST_CASE("conductor stays minimal") {
  CHECK(AlgScalar::two_cos_pi_over(3).conductor() == 1);
  CHECK(AlgScalar::two_cos_pi_over(5).conductor() == 5);
  CHECK(AlgScalar::two_cos_pi_over(9).conductor() == 9);
  CHECK(AlgScalar::two_cos_pi_over(4).conductor() == 8);
  AlgScalar x = AlgScalar::two_cos_pi_over(4);
  CHECK((x * x).conductor() == 1);  // collapses to 2
  AlgScalar five = sqrt5() * sqrt5();
  CHECK(five == AlgScalar(5));
  CHECK(five.conductor() == 1);
}

TEST_CASE("product-to-sum identity") {
  // 2cos(a) * 2cos(b) = 2cos(a+b) + 2cos(a-b) with a = pi/m, b = pi/k.
  for (auto [m, k] : {std::pair<int, int>{5, 7}, {4, 9}, {8, 12}, {7, 13}}) {
    AlgScalar lhs = AlgScalar::two_cos_pi_over(m) * AlgScalar::two_cos_pi_over(k);
    unsigned long n = (unsigned long)m * k;
    AlgScalar rhs = two_cos_frac(m + k, n) + two_cos_frac(k - m, n);
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("classic exact zero: 4cos(2pi/9)cos(pi/9) = 1 + 2cos(pi/9)") {
  AlgScalar lhs = two_cos_frac(2, 9) * AlgScalar::two_cos_pi_over(9);
  AlgScalar rhs = AlgScalar(1) + AlgScalar::two_cos_pi_over(9);
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("sqrt(2)*sqrt(5) squares to 10") {
  AlgScalar s10 = AlgScalar::two_cos_pi_over(4) * sqrt5();
  CHECK(s10.sign() == 1);
  CHECK(s10 * s10 == AlgScalar(10));
  CHECK_FALSE(s10.is_rational());
}

TEST_CASE("sign agrees with floating evaluation") {
  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<int> label(3, 15);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    AlgScalar x;
    double approx = 0.0;
    for (int t = 0; t < 3; ++t) {
      int m = label(rng), c = coef(rng);
      x += AlgScalar(c) * AlgScalar::two_cos_pi_over(m);
      approx += 2.0 * c * std::cos(M_PI / m);
    }
    if (std::abs(approx) < 1e-9) continue;  // stay away from accidental zeros
    CHECK(x.sign() == (approx > 0 ? 1 : -1));
    CHECK(x.to_double() == doctest::Approx(approx).epsilon(1e-12));
  }
}

TEST_CASE("division is exact") {
  AlgScalar x = AlgScalar::two_cos_pi_over(7);
  AlgScalar num = x * x - AlgScalar(1);
  AlgScalar den = x - AlgScalar(1);
  CHECK((num / den) == (x + AlgScalar(1)));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> label(3, 12);
  for (int trial = 0; trial < 12; ++trial) {
    AlgScalar a = AlgScalar::two_cos_pi_over(label(rng)) + AlgScalar(trial % 3);
    AlgScalar b = AlgScalar::two_cos_pi_over(label(rng)) + AlgScalar(2);
    if (b.is_zero()) continue;
    CHECK(((a * b) / b) == a);
  }
  CHECK_THROWS_AS(x / AlgScalar(0), std::domain_error);
}

TEST_CASE("to_float fixed point, round half to even") {
  CHECK(AlgScalar(mpq_class(1, 3)).to_float(6) == "0.333333");
  CHECK(AlgScalar(mpq_class(2, 3)).to_float(6) == "0.666667");
  CHECK(AlgScalar(mpq_class(1, 2)).to_float(0) == "0");
  CHECK(AlgScalar(mpq_class(3, 2)).to_float(0) == "2");
  CHECK(AlgScalar(mpq_class(1, 4)).to_float(1) == "0.2");
  CHECK(AlgScalar(mpq_class(7, 20)).to_float(1) == "0.4");
  CHECK(AlgScalar(mpq_class(9, 20)).to_float(1) == "0.4");
  CHECK(AlgScalar(mpq_class(-1, 8)).to_float(2) == "-0.12");
  CHECK(AlgScalar(mpq_class(-1, 3)).to_float(4) == "-0.3333");
  // Tiny negatives that round to zero print unsigned.
  CHECK(AlgScalar(mpq_class(-1, 10000000)).to_float(6) == "0.000000");

  AlgScalar r2 = AlgScalar::two_cos_pi_over(4);
  CHECK(r2.to_float(6) == "1.414214");
  CHECK(r2.to_float(12) == "1.414213562373");
}

TEST_CASE("golden value (25 - 11*sqrt(5))/2") {
  AlgScalar v = (AlgScalar(25) - AlgScalar(11) * sqrt5()) / AlgScalar(2);
  CHECK(v.sign() == 1);
  CHECK(v.to_float(6) == "0.201626");
}

TEST_CASE("enclosure brackets the value") {
  AlgScalar x = AlgScalar::two_cos_pi_over(11) - AlgScalar::two_cos_pi_over(12);
  auto [lo, hi] = x.enclosure(256);
  double v = 2 * std::cos(M_PI / 11) - 2 * std::cos(M_PI / 12);
  CHECK(lo.get_d() <= v + 1e-12);
  CHECK(hi.get_d() >= v - 1e-12);
  CHECK(mpq_class(hi - lo) < mpq_class(1, 1000000));
  CHECK(lo <= hi);
}

TEST_CASE("QuadExt arithmetic and signs") {
  AlgScalar five(5);
  QuadExt q(AlgScalar(1), AlgScalar(1), five);  // 1 + sqrt5
  CHECK(q.sign() == 1);
  QuadExt sq = q * q;  // 6 + 2 sqrt5
  CHECK(sq.a() == AlgScalar(6));
  CHECK(sq.b() == AlgScalar(2));

  QuadExt conj(AlgScalar(1), AlgScalar(-1), five);  // 1 - sqrt5 < 0
  CHECK(conj.sign() == -1);
  QuadExt prod = q * conj;
  CHECK(prod.is_zero() == false);
  CHECK(prod.b().is_zero());
  CHECK(prod.a() == AlgScalar(-4));

  CHECK((q / q - QuadExt(1)).is_zero());
  QuadExt ratio = q / conj;  // (1+sqrt5)/(1-sqrt5) = -(3+sqrt5)/2
  CHECK(ratio.sign() == -1);

  // a + b sqrt(delta) that collapses to zero exactly.
  QuadExt z(-sqrt5(), AlgScalar(1), five);
  CHECK(z.is_zero());
  CHECK(z.sign() == 0);

  CHECK(QuadExt(AlgScalar(1), AlgScalar(1), five).to_float(6) == "3.236068");
  CHECK_THROWS_AS(QuadExt(AlgScalar(0), AlgScalar(1), AlgScalar(-1)), std::invalid_argument);
}

TEST_CASE("QuadExt with degenerate (square) radicand divides correctly") {
  // delta = 4: sqrt(delta) = 2. With divisor 3 + sqrt(4) = 5 the conjugate norm
  // is nonzero and the value is 7/5 even if the representation keeps the root.
  QuadExt d(AlgScalar(3), AlgScalar(1), AlgScalar(4));
  QuadExt x(AlgScalar(7));
  CHECK((x / d) == QuadExt(AlgScalar(mpq_class(7, 5))));
  // Divisor 2 + sqrt(4) = 4 has conjugate norm zero; the collapsing branch
  // must still produce the exact quotient 7/4.
  QuadExt d2(AlgScalar(2), AlgScalar(1), AlgScalar(4));
  QuadExt r2 = x / d2;
  CHECK(r2.b().is_zero());
  CHECK(r2.a() == AlgScalar(mpq_class(7, 4)));
}

TEST_CASE("ring laws on random elements") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> label(3, 13);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto rand_elt = [&]() {
    AlgScalar x(coef(rng));
    for (int t = 0; t < 2; ++t) x += AlgScalar(coef(rng)) * AlgScalar::two_cos_pi_over(label(rng));
    return x;
  };
  for (int trial = 0; trial < 15; ++trial) {
    AlgScalar a = rand_elt(), b = rand_elt(), c = rand_elt();
    CHECK((a + b) == (b + a));
    CHECK((a * b) == (b * a));
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK(((a * b) * c) == (a * (b * c)));
  }
}
