#include "coxlab/tits.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxlab/classify.hpp"
#include "json.hpp"

namespace coxlab {

namespace {

template <class T>
SqMat<T> identity_mat(std::size_t n) {
  SqMat<T> m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
  return m;
}

template <class T>
SqMat<T> mat_mul(const SqMat<T>& a, const SqMat<T>& b) {
  const std::size_t n = a.size();
  SqMat<T> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sign(a.at(i, k)) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
    }
  }
  return c;
}

template <class T>
bool mat_equal(const SqMat<T>& a, const SqMat<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!(a.at(i, j) == b.at(i, j))) return false;
    }
  }
  return true;
}

// Leftmost maximal independent column set, by Gauss-Jordan with columns
// scanned in order.
template <class T>
std::vector<std::size_t> pivot_columns(const SqMat<T>& a_in) {
  const std::size_t n = a_in.size();
  SqMat<T> a = a_in;
  std::vector<std::size_t> chosen;
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
    chosen.push_back(col);
    ++row;
  }
  return chosen;
}

template <class T>
void check_compatible(const SqMat<T>& a, const Diagram& d) {
  if (a.size() != static_cast<std::size_t>(d.rank()))
    throw std::invalid_argument("tits: matrix size does not match diagram rank");
  const int n = d.rank();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto label = d.edge_label(i, j);
      const T& entry = a.at(i, j);
      if (!label) {
        if (sign(entry) != 0)
          throw std::invalid_argument("tits: nonzero entry between non-adjacent nodes");
      } else if (label->is_finite()) {
        const T expected = T(0) - T(AlgScalar::two_cos_pi_over(label->value()));
        if (!(entry == expected))
          throw std::invalid_argument("tits: entry does not match -2cos(pi/m) for its label");
      } else {
        if (sign(entry + T(2)) > 0)
          throw std::invalid_argument("tits: entry above -2 under an infinite label");
      }
    }
  }
}

template <class T>
TitsRepresentation<T> build_impl(const SqMat<T>& a, const Diagram& d) {
  check_compatible(a, d);
  // cartan_type also validates symmetry, the diagonal, and entry signs.
  for (CartanClass c : cartan_type(a)) {
    if (c == CartanClass::Zero)
      throw std::invalid_argument("tits: matrix has a zero-type component");
  }

  const std::size_t n = a.size();
  TitsRepresentation<T> rep;
  rep.diagram = d;

  const auto rk = rank_and_kernel(a);
  rep.dim = static_cast<int>(rk.rank);
  std::vector<std::size_t> cols;
  if (rk.rank == n) {
    rep.basis_mode = BasisMode::full;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(j);
  } else {
    rep.basis_mode = BasisMode::reduced;
    cols = pivot_columns(a);
  }
  for (std::size_t j : cols) rep.basis.push_back(static_cast<int>(j));
  rep.gram = a.submatrix(cols);

  const std::size_t r = cols.size();
  std::vector<std::size_t> pos(n, n);
  for (std::size_t jj = 0; jj < r; ++jj) pos[cols[jj]] = jj;
  rep.b_coords.assign(n, std::vector<T>(r, T(0)));
  for (std::size_t s = 0; s < n; ++s) {
    if (pos[s] < n) {
      rep.b_coords[s][pos[s]] = T(1);
      continue;
    }
    std::vector<T> rhs(r);
    for (std::size_t jj = 0; jj < r; ++jj) rhs[jj] = a.at(cols[jj], s);
    auto x = solve_linear(rep.gram, rhs);
    if (!x) throw std::logic_error("tits: independent columns produced a singular Gram block");
    rep.b_coords[s] = std::move(*x);
  }

  for (std::size_t s = 0; s < n; ++s) {
    SqMat<T> g = identity_mat<T>(r);
    for (std::size_t jj = 0; jj < r; ++jj) {
      const T& a_sj = a.at(s, cols[jj]);
      if (sign(a_sj) == 0) continue;
      for (std::size_t i = 0; i < r; ++i)
        g.at(i, jj) = g.at(i, jj) - a_sj * rep.b_coords[s][i];
    }
    rep.generators.push_back(std::move(g));
  }
  return rep;
}

template <class T>
RelationReport relations_impl(const TitsRepresentation<T>& rep, int cap) {
  const int n = rep.diagram.rank();
  unsigned long max_finite = 2;
  for (const auto& [nodes, label] : rep.diagram.edges()) {
    if (label.is_finite()) max_finite = std::max(max_finite, label.value());
  }
  if (cap < static_cast<int>(max_finite))
    throw std::invalid_argument("tits: relation cap below the largest finite label");

  RelationReport report;
  report.all_pass = true;
  const SqMat<T> id = identity_mat<T>(static_cast<std::size_t>(rep.dim));
  for (int s = 0; s < n; ++s) {
    const bool ok = mat_equal(mat_mul(rep.generators[s], rep.generators[s]), id);
    report.checks.push_back(
        {s, -1, ok, "r" + std::to_string(s) + "^2 " + (ok ? "=" : "!=") + " Id"});
    report.all_pass = report.all_pass && ok;
  }
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      const auto label = rep.diagram.edge_label(s, t);
      const unsigned long m = !label ? 2 : (label->is_finite() ? label->value() : 0);
      const SqMat<T> p = mat_mul(rep.generators[s], rep.generators[t]);
      const std::string pair = "(r" + std::to_string(s) + " r" + std::to_string(t) + ")";
      if (m != 0) {
        SqMat<T> pw = id;
        for (unsigned long k = 0; k < m; ++k) pw = mat_mul(pw, p);
        const bool ok = mat_equal(pw, id);
        report.checks.push_back(
            {s, t, ok, pair + "^" + std::to_string(m) + (ok ? " = Id" : " != Id")});
        report.all_pass = report.all_pass && ok;
      } else {
        SqMat<T> pw = id;
        bool ok = true;
        int bad_k = 0;
        for (int k = 1; k <= cap && ok; ++k) {
          pw = mat_mul(pw, p);
          if (mat_equal(pw, id)) {
            ok = false;
            bad_k = k;
          }
        }
        report.checks.push_back(
            {s, t, ok,
             ok ? pair + "^k != Id for k <= " + std::to_string(cap)
                : pair + "^" + std::to_string(bad_k) + " = Id under an infinite label"});
        report.all_pass = report.all_pass && ok;
      }
    }
  }
  return report;
}

template <class T>
bool invariance_impl(const TitsRepresentation<T>& rep) {
  const std::size_t r = rep.gram.size();
  for (const SqMat<T>& g : rep.generators) {
    SqMat<T> gt(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) gt.at(i, j) = g.at(j, i);
    if (!mat_equal(mat_mul(gt, mat_mul(rep.gram, g)), rep.gram)) return false;
  }
  return true;
}

template <class T>
SqMat<T> word_impl(const TitsRepresentation<T>& rep, const std::vector<int>& word) {
  SqMat<T> m = identity_mat<T>(static_cast<std::size_t>(rep.dim));
  for (int s : word) {
    if (s < 0 || s >= rep.diagram.rank())
      throw std::invalid_argument("tits: word index out of range");
    m = mat_mul(m, rep.generators[s]);
  }
  return m;
}

template <class T>
std::string json_impl(const TitsRepresentation<T>& rep, std::optional<int> digits) {
  auto entry = [&](const T& x) {
    return digits ? x.to_float(*digits) : x.repr();
  };
  auto matrix = [&](const SqMat<T>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < m.size(); ++j) row.push_back(entry(m.at(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  nlohmann::json j;
  j["dim"] = rep.dim;
  j["basis_mode"] = rep.basis_mode == BasisMode::full ? "full" : "reduced";
  j["basis"] = rep.basis;
  j["gram"] = matrix(rep.gram);
  j["generators"] = nlohmann::json::array();
  for (const auto& g : rep.generators) j["generators"].push_back(matrix(g));
  return j.dump();
}

}  // namespace

TitsRepresentation<AlgScalar> build_tits(const SqMat<AlgScalar>& a, const Diagram& d) {
  return build_impl(a, d);
}
TitsRepresentation<QuadExt> build_tits(const SqMat<QuadExt>& a, const Diagram& d) {
  return build_impl(a, d);
}

RelationReport verify_relations(const TitsRepresentation<AlgScalar>& rep, int cap) {
  return relations_impl(rep, cap);
}
RelationReport verify_relations(const TitsRepresentation<QuadExt>& rep, int cap) {
  return relations_impl(rep, cap);
}

bool verify_invariance(const TitsRepresentation<AlgScalar>& rep) { return invariance_impl(rep); }
bool verify_invariance(const TitsRepresentation<QuadExt>& rep) { return invariance_impl(rep); }

SqMat<AlgScalar> word_to_matrix(const TitsRepresentation<AlgScalar>& rep,
                                const std::vector<int>& word) {
  return word_impl(rep, word);
}
SqMat<QuadExt> word_to_matrix(const TitsRepresentation<QuadExt>& rep,
                              const std::vector<int>& word) {
  return word_impl(rep, word);
}

std::string to_json(const TitsRepresentation<AlgScalar>& rep, std::optional<int> digits) {
  return json_impl(rep, digits);
}
std::string to_json(const TitsRepresentation<QuadExt>& rep, std::optional<int> digits) {
  return json_impl(rep, digits);
}

}  // namespace coxlab
