#pragma once

// Finite fields of odd characteristic p > 3: the prime field, the quadratic
// extension Fp2 and generic helpers (powering, square roots) shared by every
// field type in the library.
//
// A field type F provides:
//   using Elt;                         value type, canonical when reduced
//   zero(), one(), add, sub, neg, mul, sqr, inv, is_zero, equal
//   from_int(int64_t)                  image of an integer
//   order()                            number of elements, as a BigInt
//   coords(e, out)                     canonical Fp coordinates, low first
//   random(rng)
// Elements never carry a pointer to their field; every operation takes the
// field explicitly, which keeps the hot polynomial loops allocation free.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "endotrace/errors.hpp"

namespace endotrace {

using BigInt = mpz_class;
using Rng = std::mt19937_64;

std::string to_decimal(const BigInt& v);
BigInt from_decimal(const std::string& s);

// Uniform integer in [0, bound) by rejection sampling; portable across
// standard libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

bool is_probable_prime(const BigInt& n);

class PrimeField {
 public:
  using Elt = std::uint64_t;  // Montgomery representative

  explicit PrimeField(std::uint64_t p);

  std::uint64_t characteristic() const { return p_; }
  const BigInt& order() const { return order_; }
  std::size_t coord_count() const { return 1; }

  Elt zero() const { return 0; }
  Elt one() const { return one_; }

  Elt from_u64(std::uint64_t v) const { return to_mont(v % p_); }
  Elt from_int(std::int64_t v) const {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) % p_;
    return neg(add(to_mont(m), one_));
  }
  Elt from_big(const BigInt& v) const;
  std::uint64_t to_u64(Elt a) const { return redc(a); }

  Elt add(Elt a, Elt b) const {
    Elt s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p_ - b; }
  Elt neg(Elt a) const { return a == 0 ? 0 : p_ - a; }
  Elt mul(Elt a, Elt b) const { return redc(static_cast<unsigned __int128>(a) * b); }
  Elt sqr(Elt a) const { return mul(a, a); }
  Elt inv(Elt a) const;
  bool is_zero(Elt a) const { return a == 0; }
  bool equal(Elt a, Elt b) const { return a == b; }

  void coords(Elt a, std::vector<std::uint64_t>& out) const { out.push_back(to_u64(a)); }
  Elt from_coords(std::span<const std::uint64_t> c) const;

  Elt random(Rng& rng) const { return to_mont(uniform_below(rng, p_)); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  Elt to_mont(std::uint64_t a) const { return redc(static_cast<unsigned __int128>(a) * r2_); }
  std::uint64_t redc(unsigned __int128 t) const {
    std::uint64_t m = static_cast<std::uint64_t>(t) * nprime_;
    unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
    std::uint64_t r = static_cast<std::uint64_t>(u);
    return r >= p_ ? r - p_ : r;
  }

  std::uint64_t p_;
  std::uint64_t nprime_;
  std::uint64_t r2_;
  Elt one_;
  BigInt order_;
};

struct Fp2Elt {
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;
  bool operator==(const Fp2Elt&) const = default;
};

struct Fp2EltHash {
  std::size_t operator()(const Fp2Elt& e) const noexcept {
    return std::hash<std::uint64_t>{}(e.c0 * 0x9e3779b97f4a7c15ULL ^ e.c1);
  }
};

// Fp[i]/(i^2 - n) with n = -1 when p = 3 (mod 4), otherwise the smallest
// quadratic non-residue of Fp.
class Fp2Field {
 public:
  using Elt = Fp2Elt;
  using BaseField = PrimeField;

  explicit Fp2Field(std::uint64_t p);

  const PrimeField& base() const { return fp_; }
  std::uint64_t characteristic() const { return fp_.characteristic(); }
  const BigInt& order() const { return order_; }
  std::size_t coord_count() const { return 2; }
  // Defining polynomial i^2 - n as canonical coefficients, low first.
  std::vector<std::uint64_t> modulus_coeffs() const;
  std::uint64_t nonresidue() const { return fp_.to_u64(n_); }

  Elt zero() const { return {}; }
  Elt one() const { return {fp_.one(), 0}; }
  Elt from_int(std::int64_t v) const { return {fp_.from_int(v), 0}; }
  Elt embed(PrimeField::Elt a) const { return {a, 0}; }
  Elt make(std::uint64_t c0, std::uint64_t c1) const { return {fp_.from_u64(c0), fp_.from_u64(c1)}; }

  Elt add(const Elt& a, const Elt& b) const { return {fp_.add(a.c0, b.c0), fp_.add(a.c1, b.c1)}; }
  Elt sub(const Elt& a, const Elt& b) const { return {fp_.sub(a.c0, b.c0), fp_.sub(a.c1, b.c1)}; }
  Elt neg(const Elt& a) const { return {fp_.neg(a.c0), fp_.neg(a.c1)}; }
  Elt mul(const Elt& a, const Elt& b) const {
    auto t0 = fp_.mul(a.c0, b.c0);
    auto t1 = fp_.mul(a.c1, b.c1);
    auto mid = fp_.sub(fp_.sub(fp_.mul(fp_.add(a.c0, a.c1), fp_.add(b.c0, b.c1)), t0), t1);
    auto re = minus_one_ ? fp_.sub(t0, t1) : fp_.add(t0, fp_.mul(n_, t1));
    return {re, mid};
  }
  Elt sqr(const Elt& a) const { return mul(a, a); }
  Elt scale(const Elt& a, PrimeField::Elt k) const { return {fp_.mul(a.c0, k), fp_.mul(a.c1, k)}; }
  Elt inv(const Elt& a) const;
  Elt conj(const Elt& a) const { return {a.c0, fp_.neg(a.c1)}; }
  bool is_zero(const Elt& a) const { return a.c0 == 0 && a.c1 == 0; }
  bool equal(const Elt& a, const Elt& b) const { return a == b; }
  bool in_base(const Elt& a) const { return a.c1 == 0; }

  void coords(const Elt& a, std::vector<std::uint64_t>& out) const {
    out.push_back(fp_.to_u64(a.c0));
    out.push_back(fp_.to_u64(a.c1));
  }
  Elt from_coords(std::span<const std::uint64_t> c) const;

  Elt random(Rng& rng) const {
    auto a = fp_.random(rng);
    return {a, fp_.random(rng)};
  }

  bool operator==(const Fp2Field& o) const { return fp_ == o.fp_; }

 private:
  PrimeField fp_;
  PrimeField::Elt n_;
  bool minus_one_;
  BigInt order_;
};

// ---------------------------------------------------------------------------
// Generic helpers over any field type.

template <class F>
typename F::Elt field_pow(const F& f, typename F::Elt a, const BigInt& e) {
  typename F::Elt r = f.one();
  if (e < 0) {
    a = f.inv(a);
    BigInt ne = -e;
    return field_pow(f, a, ne);
  }
  auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = f.sqr(r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = f.mul(r, a);
  }
  return r;
}

template <class F>
std::vector<std::uint64_t> canonical_coords(const F& f, const typename F::Elt& a) {
  std::vector<std::uint64_t> out;
  f.coords(a, out);
  return out;
}

// Lexicographic order on canonical coordinate vectors, constant term first.
template <class F>
bool canonical_less(const F& f, const typename F::Elt& a, const typename F::Elt& b) {
  return canonical_coords(f, a) < canonical_coords(f, b);
}

template <class F>
typename F::Elt field_inv(const F& f, const typename F::Elt& a) {
  if (f.is_zero(a)) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
  return f.inv(a);
}

template <class F>
bool is_square(const F& f, const typename F::Elt& a) {
  if (f.is_zero(a)) return true;
  BigInt e = (f.order() - 1) / 2;
  return f.equal(field_pow(f, a, e), f.one());
}

// Tonelli-Shanks. Returns the root with the smaller canonical form, or false
// when a is not a square.
template <class F>
bool field_sqrt(const F& f, const typename F::Elt& a, typename F::Elt& out, std::uint64_t seed = 0) {
  using E = typename F::Elt;
  if (f.is_zero(a)) {
    out = f.zero();
    return true;
  }
  if (!is_square(f, a)) return false;
  BigInt q1 = f.order() - 1;
  unsigned long s = mpz_scan1(q1.get_mpz_t(), 0);
  BigInt m = q1 >> s;
  Rng rng(seed ^ 0x5eedULL);
  E z = f.random(rng);
  while (f.is_zero(z) || is_square(f, z)) z = f.random(rng);
  E c = field_pow(f, z, m);
  E t = field_pow(f, a, m);
  E r = field_pow(f, a, BigInt((m + 1) / 2));
  unsigned long mm = s;
  while (!f.equal(t, f.one())) {
    unsigned long i = 0;
    E tt = t;
    while (!f.equal(tt, f.one())) {
      tt = f.sqr(tt);
      ++i;
    }
    E b = c;
    for (unsigned long j = 0; j + i + 1 < mm; ++j) b = f.sqr(b);
    mm = i;
    c = f.sqr(b);
    t = f.mul(t, c);
    r = f.mul(r, b);
  }
  E other = f.neg(r);
  out = canonical_less(f, other, r) ? other : r;
  return true;
}

}  // namespace endotrace
