#pragma once

// Exact arithmetic for the real algebraic numbers this project lives on:
// Q-linear combinations of roots of unity (values like 2cos(pi/m), their sums,
// products and quotients) plus quadratic extensions a + b*sqrt(delta) used for
// the roots of the lambda-determinant quadratic.
//
// An AlgScalar is an element of Q(zeta_n) stored as sparse rational coordinates
// over the canonical tensor basis of Q(zeta_n): factor n into prime powers q_i,
// write zeta_n^j as a product of zeta_{q_i}^{d_i(j)}; j is a basis exponent iff
// d_i(j) < phi(q_i) for every i, and a non-basis exponent rewrites through the
// cyclotomic polynomial of one q_i in a single fan-out step. Uniqueness of the
// canonical coordinates makes the zero test syntactic (empty support), and the
// conductor is kept minimal by folding n = 2 (mod 4) and dividing out the gcd of
// the support exponents. Signs and decimal output are obtained from MPFR
// interval enclosures refined at doubling precision; a nonzero element is
// detected symbolically, so refinement always terminates.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coxlab {

class AlgScalar {
 public:
  AlgScalar() : n_(1) {}
  AlgScalar(long v);
  AlgScalar(const mpq_class& v);

  // 2cos(pi/m) for m >= 2 (m = 2 gives 0, m = 3 gives 1, m = 4 gives sqrt(2)).
  static AlgScalar two_cos_pi_over(unsigned long m);

  // Internal constructor: sum of c * zeta_n^j terms (exponents arbitrary).
  static AlgScalar from_terms(
      unsigned long n, const std::vector<std::pair<unsigned long, mpq_class>>& terms);

  AlgScalar& operator+=(const AlgScalar& o);
  AlgScalar& operator-=(const AlgScalar& o);
  AlgScalar& operator*=(const AlgScalar& o);
  AlgScalar& operator/=(const AlgScalar& o);

  friend AlgScalar operator+(AlgScalar a, const AlgScalar& b) { return a += b; }
  friend AlgScalar operator-(AlgScalar a, const AlgScalar& b) { return a -= b; }
  friend AlgScalar operator*(AlgScalar a, const AlgScalar& b) { return a *= b; }
  friend AlgScalar operator/(AlgScalar a, const AlgScalar& b) { return a /= b; }
  AlgScalar operator-() const;

  bool operator==(const AlgScalar& o) const { return (*this - o).is_zero(); }
  bool operator!=(const AlgScalar& o) const { return !(*this == o); }

  bool is_zero() const { return coords_.empty(); }
  bool is_rational() const;
  std::optional<mpq_class> as_rational() const;

  // -1 / 0 / +1, exact.
  int sign() const;

  // Fixed-point decimal with `digits` fractional digits, round half to even.
  std::string to_float(int digits) const;
  double to_double() const;

  unsigned long conductor() const { return n_; }
  const std::map<unsigned long, mpq_class>& coords() const { return coords_; }
  std::size_t support_size() const { return coords_.size(); }

  // Deterministic content string; usable as a map key.
  std::string key() const;
  // Human-oriented rendering, e.g. "z20^1 - z20^9" or "5/2".
  std::string repr() const;

  // Exact rational enclosure [lo, hi] at roughly `prec` bits.
  std::pair<mpq_class, mpq_class> enclosure(long prec) const;

 private:
  void add_term(unsigned long j, const mpq_class& c);  // j canonical for n_
  void canonicalize();
  void lift_to(unsigned long n);  // n_ | n, re-embed

  unsigned long n_;                          // conductor, 1 or != 2 (mod 4)
  std::map<unsigned long, mpq_class> coords_;  // canonical exponent -> coefficient
};

inline int sign(const AlgScalar& x) { return x.sign(); }

// Round an exact rational to fixed-point decimal, half to even.
std::string format_fixed(const mpq_class& v, int digits);

// a + b * sqrt(delta) with delta >= 0. Values with b = 0 or delta = 0 act as
// plain AlgScalars and mix freely; two genuine quadratic parts must share delta.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(long v) : a_(v) {}
  QuadExt(AlgScalar a) : a_(std::move(a)) {}
  QuadExt(AlgScalar a, AlgScalar b, AlgScalar delta);

  const AlgScalar& a() const { return a_; }
  const AlgScalar& b() const { return b_; }
  const AlgScalar& delta() const { return delta_; }

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);
  friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
  friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
  friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
  friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
  QuadExt operator-() const;

  bool is_zero() const;
  bool operator==(const QuadExt& o) const { return (*this - o).is_zero(); }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  int sign() const;
  std::string to_float(int digits) const;
  double to_double() const;
  std::string repr() const;

 private:
  // Quadratic part dropped when b = 0 or delta = 0 so mixed-origin zeros merge.
  void normalize();

  AlgScalar a_, b_, delta_;
};

inline int sign(const QuadExt& x) { return x.sign(); }

}  // namespace coxlab
