#pragma once

// Dense univariate polynomials over any field type (see field.hpp) and
// arithmetic in quotient rings F[x]/(h).

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "endotrace/field.hpp"

namespace endotrace {

template <class F>
struct Poly {
  using Elt = typename F::Elt;
  std::vector<Elt> c;  // coefficient of x^i at index i; no trailing zeros

  Poly() = default;
  explicit Poly(std::vector<Elt> coeffs) : c(std::move(coeffs)) {}

  // -1 stands for the degree of the zero polynomial.
  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Elt& lead() const { return c.back(); }

  bool operator==(const Poly&) const = default;
};

template <class F>
class NotInvertibleError : public Error {
 public:
  NotInvertibleError(ErrorCode code, Poly<F> g, const std::string& what)
      : Error(code, what), gcd_(std::move(g)) {}
  const Poly<F>& gcd() const { return gcd_; }

 private:
  Poly<F> gcd_;
};

template <class F>
class PolyRing {
 public:
  using Elt = typename F::Elt;
  using P = Poly<F>;

  static constexpr std::size_t kKaratsubaThreshold = 32;

  explicit PolyRing(const F& f) : f_(f) {}

  const F& field() const { return f_; }

  void trim(P& a) const {
    while (!a.c.empty() && f_.is_zero(a.c.back())) a.c.pop_back();
  }
  P make(std::vector<Elt> coeffs) const {
    P p(std::move(coeffs));
    trim(p);
    return p;
  }
  P constant(const Elt& e) const { return make({e}); }
  P one() const { return constant(f_.one()); }
  P x() const { return make({f_.zero(), f_.one()}); }
  P from_ints(std::initializer_list<long long> v) const {
    std::vector<Elt> out;
    for (auto k : v) out.push_back(f_.from_int(k));
    return make(std::move(out));
  }

  P add(const P& a, const P& b) const {
    const P& big = a.c.size() >= b.c.size() ? a : b;
    const P& small = a.c.size() >= b.c.size() ? b : a;
    P r = big;
    for (std::size_t i = 0; i < small.c.size(); ++i) r.c[i] = f_.add(r.c[i], small.c[i]);
    trim(r);
    return r;
  }
  P neg(const P& a) const {
    P r = a;
    for (auto& e : r.c) e = f_.neg(e);
    return r;
  }
  P sub(const P& a, const P& b) const {
    P r = a;
    if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), f_.zero());
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f_.sub(r.c[i], b.c[i]);
    trim(r);
    return r;
  }
  P scale(const P& a, const Elt& k) const {
    if (f_.is_zero(k)) return {};
    P r = a;
    for (auto& e : r.c) e = f_.mul(e, k);
    return r;
  }
  P shift(const P& a, std::size_t k) const {
    if (a.is_zero()) return a;
    P r;
    r.c.assign(k, f_.zero());
    r.c.insert(r.c.end(), a.c.begin(), a.c.end());
    return r;
  }

  P mul(const P& a, const P& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    P r;
    r.c.assign(a.c.size() + b.c.size() - 1, f_.zero());
    mul_raw(a.c.data(), a.c.size(), b.c.data(), b.c.size(), r.c.data());
    trim(r);
    return r;
  }
  P sqr(const P& a) const { return mul(a, a); }

  P monic(const P& a) const {
    if (a.is_zero()) return a;
    return scale(a, f_.inv(a.lead()));
  }

  void divrem(const P& a, const P& b, P* q, P* r) const {
    if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    if (a.deg() < b.deg()) {
      if (q) *q = P{};
      if (r) *r = a;
      return;
    }
    std::vector<Elt> rem = a.c;
    std::size_t nb = b.c.size();
    std::size_t nq = a.c.size() - nb + 1;
    std::vector<Elt> quo(nq, f_.zero());
    Elt li = f_.inv(b.lead());
    bool monic_b = f_.equal(b.lead(), f_.one());
    for (std::size_t k = nq; k-- > 0;) {
      Elt coef = rem[k + nb - 1];
      if (f_.is_zero(coef)) continue;
      if (!monic_b) coef = f_.mul(coef, li);
      quo[k] = coef;
      for (std::size_t j = 0; j < nb; ++j) rem[k + j] = f_.sub(rem[k + j], f_.mul(coef, b.c[j]));
    }
    if (q) *q = make(std::move(quo));
    if (r) {
      rem.resize(nb - 1);
      *r = make(std::move(rem));
    }
  }
  P rem(const P& a, const P& b) const {
    P r;
    divrem(a, b, nullptr, &r);
    return r;
  }
  P div(const P& a, const P& b) const {
    P q;
    divrem(a, b, &q, nullptr);
    return q;
  }
  bool divides(const P& b, const P& a) const { return rem(a, b).is_zero(); }

  P deriv(const P& a) const {
    if (a.c.size() <= 1) return {};
    std::vector<Elt> out(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i)
      out[i - 1] = f_.mul(a.c[i], f_.from_int(static_cast<std::int64_t>(i)));
    return make(std::move(out));
  }

  Elt eval(const P& a, const Elt& x) const {
    Elt r = f_.zero();
    for (std::size_t i = a.c.size(); i-- > 0;) r = f_.add(f_.mul(r, x), a.c[i]);
    return r;
  }

  P gcd(P a, P b) const {
    while (!b.is_zero()) {
      P r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  struct Xgcd {
    P g, s, t;
  };
  // g = s*a + t*b with g monic.
  Xgcd xgcd(const P& a, const P& b) const {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::BothZero, "xgcd of two zero polynomials");
    P r0 = a, r1 = b, s0 = one(), s1, t0, t1 = one();
    while (!r1.is_zero()) {
      P q, r;
      divrem(r0, r1, &q, &r);
      r0 = std::move(r1);
      r1 = std::move(r);
      P s2 = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      P t2 = sub(t0, mul(q, t1));
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    Elt li = f_.inv(r0.lead());
    return {scale(r0, li), scale(s0, li), scale(t0, li)};
  }

  // Inverse of f modulo h. Throws NotInvertibleError carrying gcd(f, h).
  P invmod(const P& f, const P& h, ErrorCode code = ErrorCode::NotInvertible) const {
    if (h.deg() < 1) throw Error(ErrorCode::InvalidArgument, "modulus of degree < 1");
    P r0 = h, r1 = rem(f, h), s0, s1 = one();
    while (!r1.is_zero() && r1.deg() > 0) {
      P q, r;
      divrem(r0, r1, &q, &r);
      r0 = std::move(r1);
      r1 = std::move(r);
      P s2 = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.is_zero()) throw NotInvertibleError<F>(code, monic(r0), "element is not a unit modulo h");
    return rem(scale(s1, f_.inv(r1.c[0])), h);
  }

  P mulmod(const P& a, const P& b, const P& h) const { return rem(mul(a, b), h); }

  P powmod(const P& a, const BigInt& e, const P& h) const {
    P r = rem(one(), h);
    P base = rem(a, h);
    auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = mulmod(r, r, h);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, base, h);
    }
    return r;
  }

  // a(b(x)) mod h, Horner.
  P compose_mod(const P& a, const P& b, const P& h) const {
    P r;
    for (std::size_t i = a.c.size(); i-- > 0;) r = add(mulmod(r, b, h), constant(a.c[i]));
    return rem(r, h);
  }

 private:
  void mul_raw(const Elt* a, std::size_t na, const Elt* b, std::size_t nb, Elt* out) const {
    if (na < nb) {
      std::swap(a, b);
      std::swap(na, nb);
    }
    if (nb < kKaratsubaThreshold) {
      std::fill(out, out + na + nb - 1, f_.zero());
      for (std::size_t i = 0; i < na; ++i) {
        if (f_.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < nb; ++j) out[i + j] = f_.add(out[i + j], f_.mul(a[i], b[j]));
      }
      return;
    }
    if (na > nb) {
      std::fill(out, out + na + nb - 1, f_.zero());
      std::vector<Elt> tmp(2 * nb - 1);
      for (std::size_t off = 0; off < na; off += nb) {
        std::size_t len = std::min(nb, na - off);
        mul_raw(a + off, len, b, nb, tmp.data());
        for (std::size_t i = 0; i < len + nb - 1; ++i) out[off + i] = f_.add(out[off + i], tmp[i]);
      }
      return;
    }
    std::size_t n = na, m = n / 2, h = n - m;
    std::vector<Elt> z0(2 * m - 1), z2(2 * h - 1), z1(2 * h - 1), sa(h), sb(h);
    mul_raw(a, m, b, m, z0.data());
    mul_raw(a + m, h, b + m, h, z2.data());
    for (std::size_t i = 0; i < h; ++i) {
      sa[i] = i < m ? f_.add(a[i], a[m + i]) : a[m + i];
      sb[i] = i < m ? f_.add(b[i], b[m + i]) : b[m + i];
    }
    mul_raw(sa.data(), h, sb.data(), h, z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = f_.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = f_.sub(z1[i], z2[i]);
    std::fill(out, out + 2 * n - 1, f_.zero());
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = f_.add(out[i], z0[i]);
    for (std::size_t i = 0; i < z1.size(); ++i) out[m + i] = f_.add(out[m + i], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * m + i] = f_.add(out[2 * m + i], z2[i]);
  }

  F f_;
};

// A fixed monic modulus with a precomputed reversed inverse, so products of
// reduced residues are reduced with two multiplications instead of long
// division once the modulus is large.
template <class F>
class Modulus {
 public:
  using P = Poly<F>;
  using Elt = typename F::Elt;

  static constexpr long kBarrettMinDegree = 48;

  Modulus(const PolyRing<F>& ring, P m) : ring_(ring), m_(ring.monic(std::move(m))) {
    if (m_.deg() < 1) throw Error(ErrorCode::InvalidArgument, "modulus of degree < 1");
    long n = m_.deg();
    if (n >= kBarrettMinDegree) {
      const F& f = ring_.field();
      std::size_t k = static_cast<std::size_t>(n - 1);
      std::vector<Elt> rev(m_.c.rbegin(), m_.c.rend());
      std::vector<Elt> inv(k, f.zero());
      if (k > 0) inv[0] = f.one();
      for (std::size_t i = 1; i < k; ++i) {
        Elt acc = f.zero();
        for (std::size_t j = 1; j <= i && j < rev.size(); ++j) acc = f.add(acc, f.mul(rev[j], inv[i - j]));
        inv[i] = f.neg(acc);
      }
      inv_rev_ = ring_.make(std::move(inv));
    }
  }

  const P& poly() const { return m_; }
  long deg() const { return m_.deg(); }
  const PolyRing<F>& ring() const { return ring_; }

  P reduce(const P& a) const {
    long n = m_.deg();
    if (a.deg() < n) return a;
    if (n < kBarrettMinDegree || a.deg() > 2 * n - 2) return ring_.rem(a, m_);
    std::size_t k = static_cast<std::size_t>(a.deg() - n + 1);
    std::vector<Elt> top(k);
    for (std::size_t i = 0; i < k; ++i) top[i] = a.c[a.c.size() - 1 - i];
    P inv_k = inv_rev_;
    if (inv_k.c.size() > k) inv_k.c.resize(k);
    ring_.trim(inv_k);
    P rq = ring_.mul(ring_.make(std::move(top)), inv_k);
    rq.c.resize(k, ring_.field().zero());
    std::reverse(rq.c.begin(), rq.c.end());
    ring_.trim(rq);
    P qm = ring_.mul(rq, m_);
    std::vector<Elt> r(static_cast<std::size_t>(n), ring_.field().zero());
    const F& f = ring_.field();
    for (std::size_t i = 0; i < r.size(); ++i) {
      Elt ai = i < a.c.size() ? a.c[i] : f.zero();
      Elt bi = i < qm.c.size() ? qm.c[i] : f.zero();
      r[i] = f.sub(ai, bi);
    }
    return ring_.make(std::move(r));
  }

  P mul(const P& a, const P& b) const { return reduce(ring_.mul(a, b)); }
  P sqr(const P& a) const { return reduce(ring_.sqr(a)); }
  P inv(const P& a, ErrorCode code = ErrorCode::NotInvertible) const { return ring_.invmod(a, m_, code); }

 private:
  PolyRing<F> ring_;
  P m_;
  P inv_rev_;
};

// ---------------------------------------------------------------------------
// Factorisation over finite fields: squarefree decomposition, distinct-degree
// and equal-degree (Cantor-Zassenhaus) splitting.

template <class F>
struct Factor {
  Poly<F> poly;
  int multiplicity;
};

namespace detail {

template <class F>
Poly<F> pth_root(const PolyRing<F>& R, const Poly<F>& a) {
  const F& f = R.field();
  std::uint64_t p = f.characteristic();
  BigInt e = f.order() / BigInt(static_cast<unsigned long>(p));
  std::vector<typename F::Elt> out;
  for (std::size_t i = 0; i < a.c.size(); i += p) out.push_back(field_pow(f, a.c[i], e));
  return R.make(std::move(out));
}

template <class F>
void squarefree(const PolyRing<F>& R, const Poly<F>& f, int mult, std::vector<Factor<F>>& out) {
  Poly<F> c = R.gcd(f, R.deriv(f));
  Poly<F> w = R.div(f, c);
  int i = 1;
  while (w.deg() > 0) {
    Poly<F> y = R.gcd(w, c);
    Poly<F> fac = R.div(w, y);
    if (fac.deg() > 0) out.push_back({R.monic(fac), i * mult});
    w = y;
    c = R.div(c, y);
    ++i;
  }
  if (c.deg() > 0) {
    int p = static_cast<int>(R.field().characteristic());
    squarefree(R, pth_root(R, c), mult * p, out);
  }
}

template <class F>
std::vector<std::pair<Poly<F>, int>> distinct_degree(const PolyRing<F>& R, Poly<F> f) {
  std::vector<std::pair<Poly<F>, int>> out;
  const BigInt& q = R.field().order();
  Poly<F> h = R.x();
  int d = 0;
  while (f.deg() >= 2 * (d + 1)) {
    ++d;
    h = R.powmod(h, q, f);
    Poly<F> g = R.gcd(R.sub(h, R.x()), f);
    if (g.deg() > 0) {
      out.push_back({g, d});
      f = R.div(f, g);
      h = R.rem(h, f);
    }
  }
  if (f.deg() > 0) out.push_back({R.monic(f), static_cast<int>(f.deg())});
  return out;
}

template <class F>
void equal_degree(const PolyRing<F>& R, const Poly<F>& g, int d, Rng& rng, std::vector<Poly<F>>& out) {
  if (g.deg() == d) {
    out.push_back(R.monic(g));
    return;
  }
  const F& f = R.field();
  BigInt qd;
  mpz_pow_ui(qd.get_mpz_t(), f.order().get_mpz_t(), static_cast<unsigned long>(d));
  BigInt e = (qd - 1) / 2;
  for (;;) {
    std::vector<typename F::Elt> coeffs(static_cast<std::size_t>(g.deg()));
    for (auto& cf : coeffs) cf = f.random(rng);
    Poly<F> a = R.make(std::move(coeffs));
    if (a.deg() < 1) continue;
    Poly<F> b = R.sub(R.powmod(a, e, g), R.one());
    Poly<F> s = R.gcd(b, g);
    if (s.deg() > 0 && s.deg() < g.deg()) {
      equal_degree(R, s, d, rng, out);
      equal_degree(R, R.div(g, s), d, rng, out);
      return;
    }
  }
}

}  // namespace detail

// Monic irreducible factors with multiplicities, sorted by degree and then
// by canonical coefficients. Deterministic for a given seed.
template <class F>
std::vector<Factor<F>> poly_factor(const PolyRing<F>& R, const Poly<F>& f, std::uint64_t seed = 0) {
  if (f.deg() < 1) throw Error(ErrorCode::InvalidArgument, "cannot factor a constant");
  Rng rng(seed);
  std::vector<Factor<F>> sqf, out;
  detail::squarefree(R, R.monic(f), 1, sqf);
  for (const auto& part : sqf) {
    for (auto& [g, d] : detail::distinct_degree(R, part.poly)) {
      std::vector<Poly<F>> pieces;
      detail::equal_degree(R, g, d, rng, pieces);
      for (auto& pc : pieces) out.push_back({std::move(pc), part.multiplicity});
    }
  }
  const F& fld = R.field();
  auto key = [&](const Poly<F>& p) {
    std::vector<std::uint64_t> k;
    for (const auto& cf : p.c) fld.coords(cf, k);
    return k;
  };
  std::sort(out.begin(), out.end(), [&](const Factor<F>& a, const Factor<F>& b) {
    if (a.poly.deg() != b.poly.deg()) return a.poly.deg() < b.poly.deg();
    return key(a.poly) < key(b.poly);
  });
  return out;
}

// Rabin's irreducibility test.
template <class F>
bool is_irreducible(const PolyRing<F>& R, const Poly<F>& f) {
  long n = f.deg();
  if (n < 1) return false;
  if (n == 1) return true;
  Poly<F> g = R.monic(f);
  const BigInt& q = R.field().order();
  std::vector<Poly<F>> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = R.x();
  for (long i = 1; i <= n; ++i) frob[static_cast<std::size_t>(i)] = R.powmod(frob[static_cast<std::size_t>(i - 1)], q, g);
  if (!(frob[static_cast<std::size_t>(n)] == R.rem(R.x(), g))) return false;
  long m = n;
  for (long r = 2; r <= m; ++r) {
    if (m % r != 0) continue;
    while (m % r == 0) m /= r;
    auto h = R.sub(frob[static_cast<std::size_t>(n / r)], R.x());
    if (R.gcd(h, g).deg() != 0) return false;
  }
  return true;
}

template <class F>
Poly<F> random_irreducible(const PolyRing<F>& R, long degree, Rng& rng) {
  const F& f = R.field();
  for (;;) {
    std::vector<typename F::Elt> c(static_cast<std::size_t>(degree) + 1);
    for (long i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = f.random(rng);
    c.back() = f.one();
    Poly<F> cand = R.make(std::move(c));
    if (is_irreducible(R, cand)) return cand;
  }
}

}  // namespace endotrace
