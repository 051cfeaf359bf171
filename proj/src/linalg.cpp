#include "coxlab/linalg.hpp"

#include <algorithm>

namespace coxlab {

Inertia inertia_from_signs(const std::vector<int>& signs) {
  if (signs.empty() || signs.back() == 0)
    throw std::invalid_argument("inertia_from_signs: polynomial must be monic and nonzero");
  Inertia out;
  std::size_t r = 0;
  while (signs[r] == 0) ++r;
  out.nul = (int)r;
  int last = 0;
  for (std::size_t k = r; k < signs.size(); ++k) {
    if (signs[k] == 0) continue;
    if (last != 0 && signs[k] != last) ++out.pos;
    last = signs[k];
  }
  last = 0;
  for (std::size_t k = r; k < signs.size(); ++k) {
    if (signs[k] == 0) continue;
    int s = (k % 2 == 1) ? -signs[k] : signs[k];
    if (last != 0 && s != last) ++out.neg;
    last = s;
  }
  if (out.pos + out.neg + out.nul != (int)signs.size() - 1)
    throw std::logic_error("inertia_from_signs: variation counts disagree with the degree");
  return out;
}

mpq_class det_bareiss(SqMat<mpq_class> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  // Clear denominators row by row, then run integer Bareiss.
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.at(i, j).get_den().get_mpz_t());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class q = a.at(i, j) * mpq_class(l);
      q.canonicalize();
      m[i][j] = q.get_num();
    }
  }
  int sgn_acc = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t pr = k + 1;
      while (pr < n && m[pr][k] == 0) ++pr;
      if (pr == n) return 0;
      std::swap(m[pr], m[k]);
      sgn_acc = -sgn_acc;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    }
    prev = m[k][k];
  }
  mpq_class det(m[n - 1][n - 1] * sgn_acc, scale);
  det.canonicalize();
  return det;
}

std::vector<mpq_class> char_poly_rational(const SqMat<mpq_class>& a) {
  return char_poly_fl(a);
}

namespace detail {

std::optional<mpq_class> entry_rational(const AlgScalar& x) { return x.as_rational(); }

std::optional<mpq_class> entry_rational(const QuadExt& x) {
  if (!x.b().is_zero()) return std::nullopt;
  return x.a().as_rational();
}

std::string entry_key(const AlgScalar& x) { return x.key(); }

std::string entry_key(const QuadExt& x) { return x.repr(); }

namespace {

constexpr long kGridCap = 20000;

// lagrange_basis(d)[t][c]: coefficient of x^c in prod_{u != t} (x - u)/(t - u),
// nodes 0..d.
std::vector<std::vector<mpq_class>> lagrange_basis(int d) {
  std::vector<std::vector<mpq_class>> basis;
  basis.reserve(d + 1);
  for (int t = 0; t <= d; ++t) {
    std::vector<mpq_class> num{1};
    mpq_class den = 1;
    for (int u = 0; u <= d; ++u) {
      if (u == t) continue;
      std::vector<mpq_class> next(num.size() + 1, mpq_class(0));
      for (std::size_t c = 0; c < num.size(); ++c) {
        next[c + 1] += num[c];
        next[c] -= mpq_class(u) * num[c];
      }
      num = std::move(next);
      den *= mpq_class(t - u);
    }
    for (auto& x : num) x /= den;
    basis.push_back(std::move(num));
  }
  return basis;
}

using Table = std::map<std::vector<int>, mpq_class>;

// Converts axis `axis` of the table from values-at-nodes 0..deg to monomial
// coefficients 0..deg.
Table axis_to_coeffs(const Table& in, std::size_t axis, int deg,
                     const std::vector<std::vector<mpq_class>>& basis) {
  std::map<std::vector<int>, std::vector<mpq_class>> groups;
  for (const auto& [pt, val] : in) {
    std::vector<int> key = pt;
    int node = key[axis];
    key[axis] = 0;
    auto& g = groups[key];
    if (g.empty()) g.assign(deg + 1, mpq_class(0));
    g[node] = val;
  }
  Table out;
  for (auto& [key, ys] : groups) {
    for (int c = 0; c <= deg; ++c) {
      mpq_class coeff = 0;
      for (int t = 0; t <= deg; ++t) {
        if (ys[t] != 0) coeff += ys[t] * basis[t][c];
      }
      if (coeff != 0) {
        std::vector<int> k2 = key;
        k2[axis] = c;
        out.emplace(std::move(k2), std::move(coeff));
      }
    }
  }
  return out;
}

long grid_size(const std::vector<int>& degs) {
  long g = 1;
  for (int d : degs) {
    g *= (d + 1);
    if (g > kGridCap) return g;
  }
  return g;
}

}  // namespace
}  // namespace detail

EntryPolynomials::EntryPolynomials(
    SqMat<mpq_class> base, std::vector<std::vector<std::pair<std::size_t, std::size_t>>> vars) {
  n_ = base.size();
  const std::size_t nv = vars.size();
  degs_.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (vars[v].empty()) throw std::invalid_argument("EntryPolynomials: variable with no position");
    degs_[v] = (int)vars[v].size();
  }
  if (detail::grid_size(degs_) > detail::kGridCap)
    throw std::length_error("EntryPolynomials: interpolation grid too large");

  // Evaluate the charpoly on the integer grid.
  std::vector<detail::Table> tables(n_ + 1);
  std::vector<int> pt(nv, 0);
  for (;;) {
    SqMat<mpq_class> m = base;
    for (std::size_t v = 0; v < nv; ++v) {
      for (auto [i, j] : vars[v]) m.at(i, j) = pt[v];
    }
    std::vector<mpq_class> cp = char_poly_rational(m);
    for (std::size_t k = 0; k <= n_; ++k) {
      if (cp[k] != 0) tables[k][pt] = cp[k];
    }
    std::size_t ax = 0;
    while (ax < nv && ++pt[ax] > degs_[ax]) pt[ax++] = 0;
    if (ax == nv) break;
  }

  std::map<int, std::vector<std::vector<mpq_class>>> bases;
  for (int d : degs_) {
    if (!bases.count(d)) bases.emplace(d, detail::lagrange_basis(d));
  }
  coeff_.resize(n_ + 1);
  for (std::size_t k = 0; k <= n_; ++k) {
    detail::Table t = std::move(tables[k]);
    for (std::size_t v = 0; v < nv; ++v) t = detail::axis_to_coeffs(t, v, degs_[v], bases.at(degs_[v]));
    coeff_[k].terms = std::move(t);
  }
}

detail::SparsePoly det_polynomial(
    const SqMat<mpq_class>& base,
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& vars) {
  const std::size_t nv = vars.size();
  std::vector<int> degs(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (vars[v].empty()) throw std::invalid_argument("det_polynomial: variable with no position");
    degs[v] = (int)vars[v].size();
  }
  if (detail::grid_size(degs) > detail::kGridCap)
    throw std::length_error("det_polynomial: interpolation grid too large");
  detail::Table table;
  std::vector<int> pt(nv, 0);
  for (;;) {
    SqMat<mpq_class> m = base;
    for (std::size_t v = 0; v < nv; ++v) {
      for (auto [i, j] : vars[v]) m.at(i, j) = pt[v];
    }
    mpq_class dv = det_bareiss(m);
    if (dv != 0) table[pt] = dv;
    std::size_t ax = 0;
    while (ax < nv && ++pt[ax] > degs[ax]) pt[ax++] = 0;
    if (ax == nv) break;
  }
  std::map<int, std::vector<std::vector<mpq_class>>> bases;
  for (int d : degs) {
    if (!bases.count(d)) bases.emplace(d, detail::lagrange_basis(d));
  }
  for (std::size_t v = 0; v < nv; ++v)
    table = detail::axis_to_coeffs(table, v, degs[v], bases.at(degs[v]));
  detail::SparsePoly out;
  out.terms = std::move(table);
  return out;
}

namespace {

template <class T>
std::vector<T> char_poly_smart(const SqMat<T>& a) {
  EntrySplit<T> sp = split_entries(a);
  if (sp.values.empty()) {
    std::vector<mpq_class> cp = char_poly_rational(sp.base);
    std::vector<T> out;
    out.reserve(cp.size());
    for (const auto& q : cp) out.push_back(detail::scalar_from_mpq<T>(q));
    return out;
  }
  try {
    EntryPolynomials ep(sp.base, sp.positions);
    return ep.charpoly_at(sp.values);
  } catch (const std::length_error&) {
    return char_poly_fl(a);  // grid too large: direct route
  }
}

}  // namespace

AlgScalar determinant(const SqMat<AlgScalar>& a) {
  std::vector<AlgScalar> c = char_poly_smart(a);
  AlgScalar d = c[0];
  if (a.size() % 2 == 1) d = -d;
  return d;
}

std::vector<AlgScalar> char_poly(const SqMat<AlgScalar>& a) { return char_poly_smart(a); }

Inertia inertia(const SqMat<AlgScalar>& a) { return inertia_from_charpoly(char_poly_smart(a)); }

QuadExt determinant(const SqMat<QuadExt>& a) {
  std::vector<QuadExt> c = char_poly_smart(a);
  QuadExt d = c[0];
  if (a.size() % 2 == 1) d = -d;
  return d;
}

std::vector<QuadExt> char_poly(const SqMat<QuadExt>& a) { return char_poly_smart(a); }

Inertia inertia(const SqMat<QuadExt>& a) { return inertia_from_charpoly(char_poly_smart(a)); }

AlgScalar principal_minor(const SqMat<AlgScalar>& a, const std::vector<std::size_t>& subset) {
  return determinant(a.submatrix(subset));
}

}  // namespace coxlab
