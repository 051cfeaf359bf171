#pragma once

// Exact linear algebra on small symmetric matrices over the project scalars.
//
// Primary routes are division-free in the irrational field: characteristic
// polynomials via Faddeev–LeVerrier (integer divisions only), determinants as
// their constant term, inertia by Descartes sign counting (exact for symmetric
// matrices, whose eigenvalues are all real; the zero-eigenvalue multiplicity
// is the trailing-zero coefficient count). On top of that sits a
// structure-aware fast path: determinant and charpoly coefficients are
// polynomials over Q in the distinct irrational entry values, with per-value
// degree bounded by the number of matrix positions holding that value. The
// EntryPolynomials class recovers those polynomials exactly by interpolation
// from rational-matrix evaluations on a small integer grid, after which any
// number of exact evaluations (AlgScalar or QuadExt assignments) are cheap.
// A classic congruence diagonalization (with hyperbolic 2x2 blocks) and a
// fraction-free Bareiss determinant are kept as independent cross-check
// routes; tests compare all of them.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxlab/scalar.hpp"

namespace coxlab {

inline int sign(const mpq_class& q) { return sgn(q); }

template <class T>
class SqMat {
 public:
  SqMat() : n_(0) {}
  explicit SqMat(std::size_t n) : n_(n), e_(n * n) {}

  std::size_t size() const { return n_; }
  T& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  SqMat<T> submatrix(const std::vector<std::size_t>& idx) const {
    SqMat<T> s(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) s.at(i, j) = at(idx[i], idx[j]);
    }
    return s;
  }

 private:
  std::size_t n_;
  std::vector<T> e_;
};

struct Inertia {
  int pos = 0;
  int neg = 0;
  int nul = 0;
  bool operator==(const Inertia&) const = default;
};

// Monic characteristic polynomial of x*I - A by Faddeev–LeVerrier; c[k] is the
// coefficient of x^k, c[n] = 1. Divisions are by integers only.
template <class T>
std::vector<T> char_poly_fl(const SqMat<T>& a) {
  const std::size_t n = a.size();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  if (n == 0) return c;
  SqMat<T> m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A * M_{k-1} + c_{n-k+1} * I
    SqMat<T> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        T s(0);
        if (k > 1) {
          for (std::size_t l = 0; l < n; ++l) s += a.at(i, l) * m.at(l, j);
        }
        if (i == j) s += c[n - k + 1];
        next.at(i, j) = s;
      }
    }
    m = std::move(next);
    // c_{n-k} = -tr(A * M_k) / k
    T tr(0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) tr += a.at(i, l) * m.at(l, i);
    }
    c[n - k] = -(tr / T((long)k));
  }
  return c;
}

template <class T>
T determinant_fl(const SqMat<T>& a) {
  std::vector<T> c = char_poly_fl(a);
  T d = c[0];
  if (a.size() % 2 == 1) d = -d;
  return d;
}

// Inertia from a monic all-real-roots charpoly, given low-to-high coefficient
// signs: trailing zeros give the nullity, Descartes variation counts of
// chi(x) and chi(-x) give the positive and negative eigenvalue counts.
Inertia inertia_from_signs(const std::vector<int>& signs);

template <class T>
Inertia inertia_from_charpoly(const std::vector<T>& c) {
  std::vector<int> signs;
  signs.reserve(c.size());
  for (const auto& x : c) signs.push_back(sign(x));
  return inertia_from_signs(signs);
}

// Fraction-free Bareiss determinant over the rationals (denominators cleared
// row-wise, integer Bareiss, scale restored).
mpq_class det_bareiss(SqMat<mpq_class> a);
std::vector<mpq_class> char_poly_rational(const SqMat<mpq_class>& a);

namespace detail {

// Sparse multivariate polynomial over Q: monomial exponent tuple -> coefficient.
struct SparsePoly {
  std::map<std::vector<int>, mpq_class> terms;
};

template <class T>
T scalar_from_mpq(const mpq_class& q) {
  if constexpr (std::is_same_v<T, QuadExt>) {
    return QuadExt(AlgScalar(q));
  } else {
    return T(q);
  }
}

// powers[v][e] = value_v^e, precomputed by the caller.
template <class T>
T eval_poly(const SparsePoly& p, const std::vector<std::vector<T>>& powers) {
  T acc(0);
  for (const auto& [mono, coeff] : p.terms) {
    T term = scalar_from_mpq<T>(coeff);
    for (std::size_t v = 0; v < mono.size(); ++v) {
      if (mono[v] > 0) term = term * powers[v][mono[v]];
    }
    acc += term;
  }
  return acc;
}

std::optional<mpq_class> entry_rational(const AlgScalar& x);
std::optional<mpq_class> entry_rational(const QuadExt& x);
std::string entry_key(const AlgScalar& x);
std::string entry_key(const QuadExt& x);

}  // namespace detail

// Characteristic polynomial of a fixed matrix shape viewed as exact
// polynomials in designated entry slots. Construction interpolates from
// rational evaluations; evaluation substitutes arbitrary exact values.
class EntryPolynomials {
 public:
  // base holds the rational entries (variable positions ignored); vars[v]
  // lists the positions sharing variable v. Throws if the interpolation grid
  // would exceed an internal cap.
  EntryPolynomials(SqMat<mpq_class> base,
                   std::vector<std::vector<std::pair<std::size_t, std::size_t>>> vars);

  std::size_t dim() const { return n_; }
  std::size_t num_vars() const { return degs_.size(); }
  const detail::SparsePoly& coeff(std::size_t k) const { return coeff_[k]; }

  // Full charpoly (c[0..n], monic) at the given variable values.
  template <class T>
  std::vector<T> charpoly_at(const std::vector<T>& values) const {
    auto powers = power_table(values);
    std::vector<T> out;
    out.reserve(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k) out.push_back(detail::eval_poly(coeff_[k], powers));
    return out;
  }

  template <class T>
  T det_at(const std::vector<T>& values) const {
    auto powers = power_table(values);
    T d = detail::eval_poly(coeff_[0], powers);
    if (n_ % 2 == 1) d = -d;
    return d;
  }

  template <class T>
  Inertia inertia_at(const std::vector<T>& values) const {
    return inertia_from_charpoly(charpoly_at(values));
  }

 private:
  template <class T>
  std::vector<std::vector<T>> power_table(const std::vector<T>& values) const {
    if (values.size() != degs_.size())
      throw std::invalid_argument("EntryPolynomials: wrong number of variable values");
    std::vector<std::vector<T>> powers(values.size());
    for (std::size_t v = 0; v < values.size(); ++v) {
      powers[v].push_back(T(1));
      for (int e = 1; e <= degs_[v]; ++e) powers[v].push_back(powers[v].back() * values[v]);
    }
    return powers;
  }

  std::size_t n_ = 0;
  std::vector<int> degs_;
  std::vector<detail::SparsePoly> coeff_;  // index k: coefficient of x^k
};

// Splits a matrix into rational base + distinct irrational entry values
// (deduplicated exactly), the input form of EntryPolynomials.
template <class T>
struct EntrySplit {
  SqMat<mpq_class> base;
  std::vector<T> values;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> positions;
};

template <class T>
EntrySplit<T> split_entries(const SqMat<T>& a) {
  EntrySplit<T> out;
  const std::size_t n = a.size();
  out.base = SqMat<mpq_class>(n);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const T& x = a.at(i, j);
      if (auto r = detail::entry_rational(x)) {
        out.base.at(i, j) = *r;
        continue;
      }
      std::string key = detail::entry_key(x);
      auto it = index.find(key);
      std::size_t v;
      if (it == index.end()) {
        v = out.values.size();
        index.emplace(std::move(key), v);
        out.values.push_back(x);
        out.positions.emplace_back();
      } else {
        v = it->second;
      }
      out.positions[v].push_back({i, j});
    }
  }
  return out;
}

// Determinant of the shape as a sparse polynomial in the designated entry
// slots (same variable convention as EntryPolynomials, Bareiss per grid
// point). Evaluate with detail::eval_poly against caller-built power tables.
detail::SparsePoly det_polynomial(
    const SqMat<mpq_class>& base,
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& vars);

// Structure-aware exact routes (interpolation fast path, with a direct
// Faddeev–LeVerrier fallback when the grid would be too large).
AlgScalar determinant(const SqMat<AlgScalar>& a);
std::vector<AlgScalar> char_poly(const SqMat<AlgScalar>& a);
Inertia inertia(const SqMat<AlgScalar>& a);
QuadExt determinant(const SqMat<QuadExt>& a);
std::vector<QuadExt> char_poly(const SqMat<QuadExt>& a);
Inertia inertia(const SqMat<QuadExt>& a);

AlgScalar principal_minor(const SqMat<AlgScalar>& a, const std::vector<std::size_t>& subset);

// Congruence diagonalization inertia: diagonal pivots where available, else
// hyperbolic [[0,e],[e,0]] blocks each contributing (1,1,0), with the matching
// Schur update. Exact but uses field division; kept as a secondary route.
template <class T>
Inertia inertia_congruence(SqMat<T> a) {
  const std::size_t n = a.size();
  std::vector<bool> done(n, false);
  Inertia out;
  std::size_t handled = 0;
  while (handled < n) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && sign(a.at(i, i)) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < n) {
      T p = a.at(piv, piv);
      (sign(p) > 0 ? out.pos : out.neg) += 1;
      for (std::size_t u = 0; u < n; ++u) {
        if (done[u] || u == piv || sign(a.at(u, piv)) == 0) continue;
        T f = a.at(u, piv) / p;
        for (std::size_t v = 0; v < n; ++v) {
          if (done[v] || v == piv) continue;
          a.at(u, v) = a.at(u, v) - f * a.at(piv, v);
        }
      }
      done[piv] = true;
      ++handled;
      continue;
    }
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n && bi == n; ++i) {
      if (done[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!done[j] && sign(a.at(i, j)) != 0) {
          bi = i;
          bj = j;
          break;
        }
      }
    }
    if (bi == n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i]) {
          done[i] = true;
          ++out.nul;
          ++handled;
        }
      }
      break;
    }
    T e = a.at(bi, bj);
    out.pos += 1;
    out.neg += 1;
    for (std::size_t u = 0; u < n; ++u) {
      if (done[u] || u == bi || u == bj) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v] || v == bi || v == bj) continue;
        a.at(u, v) = a.at(u, v) - (a.at(u, bi) * a.at(bj, v) + a.at(u, bj) * a.at(bi, v)) / e;
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      a.at(u, bi) = T(0);
      a.at(bi, u) = T(0);
      a.at(u, bj) = T(0);
      a.at(bj, u) = T(0);
    }
    done[bi] = done[bj] = true;
    handled += 2;
  }
  return out;
}

// Exact rank and a kernel basis via Gauss-Jordan elimination.
template <class T>
struct RankKernel {
  std::size_t rank = 0;
  std::vector<std::vector<T>> kernel;  // each of length n, A * v = 0
};

template <class T>
RankKernel<T> rank_and_kernel(const SqMat<T>& a_in) {
  const std::size_t n = a_in.size();
  SqMat<T> a = a_in;
  std::vector<std::size_t> pivot_of_col(n, n);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t pr = row;
    while (pr < n && sign(a.at(pr, col)) == 0) ++pr;
    if (pr == n) continue;
    for (std::size_t k = 0; k < n; ++k) std::swap(a.at(pr, k), a.at(row, k));
    T inv = a.at(row, col);
    for (std::size_t k = 0; k < n; ++k) a.at(row, k) = a.at(row, k) / inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || sign(a.at(r, col)) == 0) continue;
      T f = a.at(r, col);
      for (std::size_t k = 0; k < n; ++k) a.at(r, k) = a.at(r, k) - f * a.at(row, k);
    }
    pivot_of_col[col] = row;
    ++row;
  }
  RankKernel<T> out;
  out.rank = row;
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] != n) continue;
    std::vector<T> v(n, T(0));
    v[col] = T(1);
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      if (pivot_of_col[c2] != n) v[c2] = -a.at(pivot_of_col[c2], col);
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// Solves A x = b exactly; empty optional when A is singular.
template <class T>
std::optional<std::vector<T>> solve_linear(const SqMat<T>& a_in, const std::vector<T>& b_in) {
  const std::size_t n = a_in.size();
  if (b_in.size() != n) throw std::invalid_argument("solve_linear: size mismatch");
  SqMat<T> a = a_in;
  std::vector<T> b = b_in;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pr = col;
    while (pr < n && sign(a.at(pr, col)) == 0) ++pr;
    if (pr == n) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) std::swap(a.at(pr, k), a.at(col, k));
    std::swap(b[pr], b[col]);
    T inv = a.at(col, col);
    for (std::size_t k = 0; k < n; ++k) a.at(col, k) = a.at(col, k) / inv;
    b[col] = b[col] / inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sign(a.at(r, col)) == 0) continue;
      T f = a.at(r, col);
      for (std::size_t k = 0; k < n; ++k) a.at(r, k) = a.at(r, k) - f * a.at(col, k);
      b[r] = b[r] - f * b[col];
    }
  }
  return b;
}

}  // namespace coxlab
