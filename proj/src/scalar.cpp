#include "coxlab/scalar.hpp"

#include <mpfr.h>

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coxlab {
namespace {

// ---------------------------------------------------------------------------
// Conductor contexts: factorization data plus a memo for rewriting arbitrary
// exponents of zeta_n into the canonical tensor basis.
// ---------------------------------------------------------------------------

struct PrimePower {
  unsigned long p;     // prime
  unsigned long q;     // p^a, the full power dividing n
  unsigned long phi;   // phi(q) = q - q/p
  unsigned long u;     // n / q
  unsigned long v;     // u^{-1} mod q
  unsigned long step;  // q / p
};

unsigned long mod_inverse(unsigned long a, unsigned long m) {
  long long t = 0, nt = 1, r = (long long)m, nr = (long long)(a % m);
  while (nr != 0) {
    long long f = r / nr;
    t -= f * nt;
    std::swap(t, nt);
    r -= f * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += (long long)m;
  return (unsigned long)t;
}

struct CycloCtx {
  unsigned long n = 1;
  std::vector<PrimePower> pps;
  // exponent -> canonical expansion as (exponent, +-1) pairs
  std::map<unsigned long, std::vector<std::pair<unsigned long, int>>> memo;

  explicit CycloCtx(unsigned long n_in) : n(n_in) {
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      unsigned long q = 1;
      while (m % p == 0) {
        m /= p;
        q *= p;
      }
      pps.push_back({p, q, q - q / p, n / q, 0, q / p});
    }
    if (m > 1) pps.push_back({m, m, m - 1, n / m, 0, 1});
    for (auto& pp : pps) pp.v = mod_inverse(pp.u % pp.q, pp.q);
  }

  bool is_canonical(unsigned long j) const {
    for (const auto& pp : pps) {
      if ((j % pp.q) * pp.v % pp.q >= pp.phi) return false;
    }
    return true;
  }

  // Expansion of zeta_n^j over canonical exponents. Not thread-safe on its own;
  // callers go through the locked registry below.
  const std::vector<std::pair<unsigned long, int>>& expand(unsigned long j) {
    auto it = memo.find(j);
    if (it != memo.end()) return it->second;

    std::vector<std::pair<unsigned long, int>> work{{j, 1}};
    for (const auto& pp : pps) {
      std::vector<std::pair<unsigned long, int>> next;
      next.reserve(work.size());
      for (auto [e, s] : work) {
        unsigned long d = (e % pp.q) * pp.v % pp.q;
        if (d < pp.phi) {
          next.emplace_back(e, s);
          continue;
        }
        // zeta_q^d = -sum_{t=0}^{p-2} zeta_q^{r + t*q/p} with r = d - phi(q).
        unsigned long r = d - pp.phi;
        for (unsigned long t = 0; t + 1 < pp.p; ++t) {
          unsigned long dp = r + t * pp.step;
          // Adjust only this prime-power component: e' = e + (dp - d) * u.
          long long delta = ((long long)dp - (long long)d) % (long long)pp.q;
          long long e2 = ((long long)e + delta * (long long)pp.u) % (long long)n;
          if (e2 < 0) e2 += (long long)n;
          next.emplace_back((unsigned long)e2, -s);
        }
      }
      work = std::move(next);
    }
    return memo.emplace(j, std::move(work)).first->second;
  }
};

std::mutex g_ctx_mutex;
std::map<unsigned long, CycloCtx>& ctx_registry() {
  static std::map<unsigned long, CycloCtx> reg;
  return reg;
}

// Copies the expansion out under the lock.
std::vector<std::pair<unsigned long, int>> expand_exponent(unsigned long n, unsigned long j) {
  std::lock_guard<std::mutex> lk(g_ctx_mutex);
  auto& reg = ctx_registry();
  auto it = reg.find(n);
  if (it == reg.end()) it = reg.emplace(n, CycloCtx(n)).first;
  return it->second.expand(j);
}

unsigned long lcm_ul(unsigned long a, unsigned long b) { return std::lcm(a, b); }

// Canonical coordinates at fixed conductor n (valid: n == 1 or n != 2 mod 4)
// from raw (exponent, coefficient) terms. No conductor shrinking here.
std::map<unsigned long, mpq_class> expand_terms(
    unsigned long n, const std::vector<std::pair<unsigned long, mpq_class>>& terms) {
  std::map<unsigned long, mpq_class> out;
  for (const auto& [j, c] : terms) {
    if (c == 0) continue;
    for (const auto& [e, s] : expand_exponent(n, j % n)) {
      auto it = out.find(e);
      if (it == out.end()) it = out.emplace(e, mpq_class(0)).first;
      it->second += (s > 0) ? c : mpq_class(-c);
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

// Rewrites raw terms at conductor n so that n is valid (folds n = 2 mod 4,
// including n = 2 -> 1). Mutates terms and returns the folded conductor.
unsigned long fold_conductor(unsigned long n,
                             std::vector<std::pair<unsigned long, mpq_class>>& terms) {
  while (n % 4 == 2) {
    unsigned long m = n / 2;  // odd
    for (auto& [j, c] : terms) {
      unsigned long jm = j % n;
      if (jm % 2 == 1) c = -c;
      j = (unsigned long)(((unsigned long long)(jm % m) * ((m + 1) / 2)) % m);
    }
    n = m;
  }
  return n;
}

// ---------------------------------------------------------------------------
// MPFR interval helpers (plain structs, explicit clear discipline via RAII).
// ---------------------------------------------------------------------------

struct Mpfr {
  mpfr_t x;
  explicit Mpfr(long prec) { mpfr_init2(x, prec); }
  ~Mpfr() { mpfr_clear(x); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

struct Interval {
  Mpfr lo, hi;
  explicit Interval(long prec) : lo(prec), hi(prec) {
    mpfr_set_zero(lo.x, 1);
    mpfr_set_zero(hi.x, 1);
  }
  void add(const Interval& o) {
    mpfr_add(lo.x, lo.x, o.lo.x, MPFR_RNDD);
    mpfr_add(hi.x, hi.x, o.hi.x, MPFR_RNDU);
  }
};

// [lo,hi] *= [olo,ohi], directed rounding on every candidate product.
void interval_mul(Interval& a, const Interval& b, long prec) {
  Mpfr cand(prec), best_lo(prec), best_hi(prec);
  bool first = true;
  const mpfr_srcptr as[2] = {a.lo.x, a.hi.x};
  const mpfr_srcptr bs[2] = {b.lo.x, b.hi.x};
  for (auto av : as) {
    for (auto bv : bs) {
      mpfr_mul(cand.x, av, bv, MPFR_RNDD);
      if (first || mpfr_cmp(cand.x, best_lo.x) < 0) mpfr_set(best_lo.x, cand.x, MPFR_RNDD);
      mpfr_mul(cand.x, av, bv, MPFR_RNDU);
      if (first || mpfr_cmp(cand.x, best_hi.x) > 0) mpfr_set(best_hi.x, cand.x, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set(a.lo.x, best_lo.x, MPFR_RNDD);
  mpfr_set(a.hi.x, best_hi.x, MPFR_RNDU);
}

void interval_from_mpq(Interval& out, const mpq_class& q) {
  mpfr_set_q(out.lo.x, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi.x, q.get_mpq_t(), MPFR_RNDU);
}

// Enclosure of cos(2*pi*j/n).
void interval_cos_2pi(Interval& out, unsigned long j, unsigned long n, long prec) {
  Mpfr pi_lo(prec), pi_hi(prec), th_lo(prec), th_hi(prec), w(prec), c(prec);
  mpfr_const_pi(pi_lo.x, MPFR_RNDD);
  mpfr_const_pi(pi_hi.x, MPFR_RNDU);
  mpq_class ratio(mpz_class(2) * (unsigned long)j, mpz_class(n));
  ratio.canonicalize();
  Interval r(prec);
  interval_from_mpq(r, ratio);
  mpfr_mul(th_lo.x, r.lo.x, pi_lo.x, MPFR_RNDD);
  mpfr_mul(th_hi.x, r.hi.x, pi_hi.x, MPFR_RNDU);
  // |cos x - cos th_lo| <= width over the angle interval.
  mpfr_sub(w.x, th_hi.x, th_lo.x, MPFR_RNDU);
  mpfr_cos(c.x, th_lo.x, MPFR_RNDD);
  mpfr_sub(out.lo.x, c.x, w.x, MPFR_RNDD);
  mpfr_cos(c.x, th_lo.x, MPFR_RNDU);
  mpfr_add(out.hi.x, c.x, w.x, MPFR_RNDU);
}

mpq_class mpq_from_mpfr(const mpfr_t x) {
  if (mpfr_zero_p(x)) return mpq_class(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  mpq_class out(m);
  if (e >= 0) {
    mpz_class shift;
    mpz_ui_pow_ui(shift.get_mpz_t(), 2, (unsigned long)e);
    out *= mpq_class(shift);
  } else {
    mpz_class shift;
    mpz_ui_pow_ui(shift.get_mpz_t(), 2, (unsigned long)(-e));
    out /= mpq_class(shift);
  }
  out.canonicalize();
  return out;
}

constexpr long kPrecStart = 128;
constexpr long kPrecCap = 1L << 20;

}  // namespace

// ---------------------------------------------------------------------------
// AlgScalar
// ---------------------------------------------------------------------------

AlgScalar::AlgScalar(long v) : n_(1) {
  if (v != 0) coords_[0] = mpq_class(v);
}

AlgScalar::AlgScalar(const mpq_class& v) : n_(1) {
  if (v != 0) coords_[0] = v;
}

AlgScalar AlgScalar::two_cos_pi_over(unsigned long m) {
  if (m < 2) throw std::invalid_argument("two_cos_pi_over: label must be >= 2");
  // 2cos(pi/m) = zeta_{2m} + zeta_{2m}^{2m-1}.
  return from_terms(2 * m, {{1, mpq_class(1)}, {2 * m - 1, mpq_class(1)}});
}

AlgScalar AlgScalar::from_terms(
    unsigned long n, const std::vector<std::pair<unsigned long, mpq_class>>& terms) {
  std::vector<std::pair<unsigned long, mpq_class>> work;
  work.reserve(terms.size());
  for (const auto& [j, c] : terms) work.emplace_back(j % n, c);
  n = fold_conductor(n, work);

  AlgScalar out;
  out.n_ = n;
  out.coords_ = expand_terms(n, work);
  out.canonicalize();
  return out;
}

void AlgScalar::add_term(unsigned long j, const mpq_class& c) {
  auto it = coords_.find(j);
  if (it == coords_.end()) it = coords_.emplace(j, mpq_class(0)).first;
  it->second += c;
  if (it->second == 0) coords_.erase(it);
}

void AlgScalar::canonicalize() {
  for (auto it = coords_.begin(); it != coords_.end();) {
    it = (it->second == 0) ? coords_.erase(it) : std::next(it);
  }
  while (!coords_.empty()) {
    unsigned long g = n_;
    for (const auto& [j, c] : coords_) g = std::gcd(g, j);
    if (g <= 1) return;
    // Support lives in Q(zeta_{n/g}); shrink and re-canonicalize there.
    std::vector<std::pair<unsigned long, mpq_class>> terms;
    terms.reserve(coords_.size());
    for (const auto& [j, c] : coords_) terms.emplace_back(j / g, c);
    n_ = fold_conductor(n_ / g, terms);
    coords_ = expand_terms(n_, terms);
  }
  n_ = 1;
}

void AlgScalar::lift_to(unsigned long n) {
  if (n == n_) return;
  unsigned long f = n / n_;
  std::vector<std::pair<unsigned long, mpq_class>> terms;
  terms.reserve(coords_.size());
  for (const auto& [j, c] : coords_) terms.emplace_back(j * f, c);
  n_ = n;
  coords_ = expand_terms(n, terms);
}

AlgScalar& AlgScalar::operator+=(const AlgScalar& o) {
  unsigned long n = lcm_ul(n_, o.n_);
  lift_to(n);
  AlgScalar rhs = o;
  rhs.lift_to(n);
  for (const auto& [j, c] : rhs.coords_) add_term(j, c);
  canonicalize();
  return *this;
}

AlgScalar& AlgScalar::operator-=(const AlgScalar& o) { return *this += -o; }

AlgScalar AlgScalar::operator-() const {
  AlgScalar out = *this;
  for (auto& [j, c] : out.coords_) c = -c;
  return out;
}

AlgScalar& AlgScalar::operator*=(const AlgScalar& o) {
  if (is_zero() || o.is_zero()) {
    n_ = 1;
    coords_.clear();
    return *this;
  }
  // Rational fast paths.
  if (o.is_rational()) {
    mpq_class f = o.coords_.begin()->second;
    for (auto& [j, c] : coords_) c *= f;
    return *this;
  }
  if (is_rational()) {
    mpq_class f = coords_.begin()->second;
    *this = o;
    for (auto& [j, c] : coords_) c *= f;
    return *this;
  }
  unsigned long n = lcm_ul(n_, o.n_);
  lift_to(n);
  AlgScalar rhs = o;
  rhs.lift_to(n);
  std::map<unsigned long, mpq_class> prod;
  for (const auto& [j1, c1] : coords_) {
    for (const auto& [j2, c2] : rhs.coords_) {
      mpq_class c = c1 * c2;
      unsigned long e = (j1 + j2) % n;
      for (const auto& [e2, s] : expand_exponent(n, e)) {
        auto it = prod.find(e2);
        if (it == prod.end()) it = prod.emplace(e2, mpq_class(0)).first;
        it->second += (s > 0) ? c : mpq_class(-c);
        if (it->second == 0) prod.erase(it);
      }
    }
  }
  coords_ = std::move(prod);
  canonicalize();
  return *this;
}

AlgScalar& AlgScalar::operator/=(const AlgScalar& o) {
  if (o.is_zero()) throw std::domain_error("AlgScalar: division by zero");
  if (is_zero()) return *this;
  if (o.is_rational()) {
    mpq_class f = o.coords_.begin()->second;
    for (auto& [j, c] : coords_) c /= f;
    return *this;
  }
  // Solve y * o = *this over the joined field as a rational linear system.
  unsigned long n = lcm_ul(n_, o.n_);
  lift_to(n);
  AlgScalar rhs = o;
  rhs.lift_to(n);

  std::vector<unsigned long> basis;
  {
    std::lock_guard<std::mutex> lk(g_ctx_mutex);
    auto& reg = ctx_registry();
    auto it = reg.find(n);
    if (it == reg.end()) it = reg.emplace(n, CycloCtx(n)).first;
    for (unsigned long j = 0; j < n; ++j) {
      if (it->second.is_canonical(j)) basis.push_back(j);
    }
  }
  const std::size_t dim = basis.size();
  std::map<unsigned long, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index[basis[i]] = i;

  // Column l = canonical coordinates of zeta^{basis[l]} * o.
  std::vector<std::vector<mpq_class>> m(dim, std::vector<mpq_class>(dim + 1, mpq_class(0)));
  for (std::size_t l = 0; l < dim; ++l) {
    for (const auto& [j, c] : rhs.coords_) {
      unsigned long e = (basis[l] + j) % n;
      for (const auto& [e2, s] : expand_exponent(n, e)) {
        m[index.at(e2)][l] += (s > 0) ? c : mpq_class(-c);
      }
    }
  }
  for (const auto& [j, c] : coords_) m[index.at(j)][dim] = c;

  // Gaussian elimination with first-nonzero pivoting.
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col(dim, dim);
  for (std::size_t col = 0; col < dim && row < dim; ++col) {
    std::size_t pr = row;
    while (pr < dim && m[pr][col] == 0) ++pr;
    if (pr == dim) continue;
    std::swap(m[pr], m[row]);
    mpq_class inv = m[row][col];
    for (std::size_t k = col; k <= dim; ++k) m[row][k] /= inv;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == row || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (std::size_t k = col; k <= dim; ++k) m[r][k] -= f * m[row][k];
    }
    pivot_col[row] = col;
    ++row;
  }
  std::vector<mpq_class> y(dim, mpq_class(0));
  for (std::size_t r = 0; r < row; ++r) y[pivot_col[r]] = m[r][dim];
  // The system is consistent by construction (o is invertible in the field).
  coords_.clear();
  for (std::size_t l = 0; l < dim; ++l) {
    if (y[l] != 0) coords_[basis[l]] = y[l];
  }
  canonicalize();
  return *this;
}

bool AlgScalar::is_rational() const {
  return coords_.empty() || (coords_.size() == 1 && coords_.begin()->first == 0);
}

std::optional<mpq_class> AlgScalar::as_rational() const {
  if (coords_.empty()) return mpq_class(0);
  if (is_rational()) return coords_.begin()->second;
  return std::nullopt;
}

std::pair<mpq_class, mpq_class> AlgScalar::enclosure(long prec) const {
  Interval acc(prec);
  for (const auto& [j, c] : coords_) {
    Interval term(prec);
    interval_cos_2pi(term, j, n_, prec);
    Interval coef(prec);
    interval_from_mpq(coef, c);
    interval_mul(term, coef, prec);
    acc.add(term);
  }
  return {mpq_from_mpfr(acc.lo.x), mpq_from_mpfr(acc.hi.x)};
}

int AlgScalar::sign() const {
  if (coords_.empty()) return 0;
  if (auto r = as_rational()) return sgn(*r);
  for (long prec = kPrecStart; prec <= kPrecCap; prec *= 2) {
    auto [lo, hi] = enclosure(prec);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  throw std::runtime_error("AlgScalar::sign: enclosure refinement exhausted");
}

std::string format_fixed(const mpq_class& v, int digits) {
  if (digits < 0) throw std::invalid_argument("format_fixed: negative digit count");
  mpq_class w = v < 0 ? mpq_class(-v) : v;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, (unsigned long)digits);
  mpz_class num = w.get_num() * scale;
  mpz_class den = w.get_den();
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  int cmp = mpz_cmp(mpz_class(2 * r).get_mpz_t(), den.get_mpz_t());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  std::string s = q.get_str();
  if ((int)s.size() <= digits) s.insert(0, std::string(digits + 1 - s.size(), '0'));
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (v < 0 && q != 0) s.insert(0, "-");
  return s;
}

std::string AlgScalar::to_float(int digits) const {
  if (auto r = as_rational()) return format_fixed(*r, digits);
  for (long prec = kPrecStart; prec <= kPrecCap; prec *= 2) {
    auto [lo, hi] = enclosure(prec);
    std::string a = format_fixed(lo, digits);
    std::string b = format_fixed(hi, digits);
    if (a == b) return a;
  }
  throw std::runtime_error("AlgScalar::to_float: enclosure refinement exhausted");
}

double AlgScalar::to_double() const {
  if (coords_.empty()) return 0.0;
  auto [lo, hi] = enclosure(128);
  mpq_class mid = (lo + hi) / 2;
  return mid.get_d();
}

std::string AlgScalar::key() const {
  std::ostringstream os;
  os << n_;
  for (const auto& [j, c] : coords_) os << '|' << j << '=' << c.get_str();
  return os.str();
}

std::string AlgScalar::repr() const {
  if (auto r = as_rational()) return r->get_str();
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, c] : coords_) {
    mpq_class a = c < 0 ? mpq_class(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (j == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << "(" << a.get_str() << ")";
    os << "z" << n_ << "^" << j;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// QuadExt
// ---------------------------------------------------------------------------

QuadExt::QuadExt(AlgScalar a, AlgScalar b, AlgScalar delta)
    : a_(std::move(a)), b_(std::move(b)), delta_(std::move(delta)) {
  if (delta_.sign() < 0) throw std::invalid_argument("QuadExt: negative radicand");
  normalize();
}

void QuadExt::normalize() {
  if (b_.is_zero() || delta_.is_zero()) {
    b_ = AlgScalar();
    delta_ = AlgScalar();
  }
}

namespace {
// Shared radicand for a binary operation; throws on a genuine mismatch.
const AlgScalar* join_delta(const QuadExt& x, const QuadExt& y) {
  if (x.b().is_zero()) return y.b().is_zero() ? nullptr : &y.delta();
  if (y.b().is_zero()) return &x.delta();
  if (x.delta() != y.delta()) throw std::invalid_argument("QuadExt: radicand mismatch");
  return &x.delta();
}
}  // namespace

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  const AlgScalar* d = join_delta(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  delta_ = d ? *d : AlgScalar();
  normalize();
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) { return *this += -o; }

QuadExt QuadExt::operator-() const {
  QuadExt out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  const AlgScalar* d = join_delta(*this, o);
  AlgScalar na = a_ * o.a_;
  if (d && !b_.is_zero() && !o.b_.is_zero()) na += b_ * o.b_ * (*d);
  AlgScalar nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  delta_ = d ? *d : AlgScalar();
  normalize();
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  if (o.is_zero()) throw std::domain_error("QuadExt: division by zero");
  if (o.b_.is_zero()) {
    a_ /= o.a_;
    if (!b_.is_zero()) b_ /= o.a_;
    normalize();
    return *this;
  }
  const AlgScalar* d = join_delta(*this, o);
  AlgScalar norm = o.a_ * o.a_ - o.b_ * o.b_ * (*d);
  if (!norm.is_zero()) {
    // Multiply by the conjugate.
    QuadExt conj;
    conj.a_ = o.a_;
    conj.b_ = -o.b_;
    conj.delta_ = *d;
    *this *= conj;
    a_ /= norm;
    if (!b_.is_zero()) b_ /= norm;
    normalize();
    return *this;
  }
  // Degenerate radicand: delta = (o.a/o.b)^2, so sqrt(delta) = |o.a/o.b| and
  // everything collapses into the base field.
  AlgScalar t = o.a_ / o.b_;
  AlgScalar root = (t.sign() >= 0) ? t : -t;
  AlgScalar denom = o.a_ + o.b_ * root;   // nonzero: o itself is nonzero
  AlgScalar numer = a_ + b_ * root;
  a_ = numer / denom;
  b_ = AlgScalar();
  delta_ = AlgScalar();
  return *this;
}

bool QuadExt::is_zero() const {
  if (b_.is_zero()) return a_.is_zero();
  if (a_.is_zero()) return false;  // b*sqrt(delta) with delta > 0
  int sa = a_.sign(), sb = b_.sign();
  if (sa == sb) return false;
  return (a_ * a_ - b_ * b_ * delta_).is_zero();
}

int QuadExt::sign() const {
  if (b_.is_zero()) return a_.sign();
  if (a_.is_zero()) return b_.sign();
  int sa = a_.sign(), sb = b_.sign();
  if (sa == sb) return sa;
  int t = (a_ * a_ - b_ * b_ * delta_).sign();
  if (t == 0) return 0;
  return t > 0 ? sa : sb;
}

namespace {

// Enclosure of a + b*sqrt(delta) as exact rationals, at working precision prec.
std::pair<mpq_class, mpq_class> quad_enclosure(const AlgScalar& a, const AlgScalar& b,
                                               const AlgScalar& delta, long prec) {
  auto [alo, ahi] = a.enclosure(prec);
  if (b.is_zero()) return {alo, ahi};
  auto [blo, bhi] = b.enclosure(prec);
  auto [dlo, dhi] = delta.enclosure(prec);
  if (dlo < 0) dlo = 0;  // delta >= 0 exactly; clip interval noise

  Interval bs(prec);
  Mpfr t(prec);
  mpfr_set_q(t.x, dlo.get_mpq_t(), MPFR_RNDD);
  mpfr_sqrt(t.x, t.x, MPFR_RNDD);
  mpfr_set(bs.lo.x, t.x, MPFR_RNDD);
  mpfr_set_q(t.x, dhi.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(t.x, t.x, MPFR_RNDU);
  mpfr_set(bs.hi.x, t.x, MPFR_RNDU);

  Interval bi(prec);
  mpfr_set_q(bi.lo.x, blo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(bi.hi.x, bhi.get_mpq_t(), MPFR_RNDU);
  interval_mul(bi, bs, prec);

  Interval ai(prec);
  mpfr_set_q(ai.lo.x, alo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(ai.hi.x, ahi.get_mpq_t(), MPFR_RNDU);
  ai.add(bi);
  return {mpq_from_mpfr(ai.lo.x), mpq_from_mpfr(ai.hi.x)};
}

}  // namespace

std::string QuadExt::to_float(int digits) const {
  if (b_.is_zero()) return a_.to_float(digits);
  for (long prec = kPrecStart; prec <= kPrecCap; prec *= 2) {
    auto [lo, hi] = quad_enclosure(a_, b_, delta_, prec);
    std::string x = format_fixed(lo, digits);
    std::string y = format_fixed(hi, digits);
    if (x == y) return x;
  }
  throw std::runtime_error("QuadExt::to_float: enclosure refinement exhausted");
}

double QuadExt::to_double() const {
  if (b_.is_zero()) return a_.to_double();
  auto [lo, hi] = quad_enclosure(a_, b_, delta_, 128);
  mpq_class mid = (lo + hi) / 2;
  return mid.get_d();
}

std::string QuadExt::repr() const {
  if (b_.is_zero()) return a_.repr();
  std::ostringstream os;
  os << "(" << a_.repr() << ") + (" << b_.repr() << ")*sqrt(" << delta_.repr() << ")";
  return os.str();
}

}  // namespace coxlab
