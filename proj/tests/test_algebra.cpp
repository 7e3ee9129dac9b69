#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endotrace/extension.hpp"
#include "endotrace/field.hpp"
#include "endotrace/poly.hpp"

using namespace endotrace;

namespace {

// Naive integer-vector arithmetic mod p used as an independent oracle for
// multiplication and reduction.
std::vector<std::uint64_t> naive_mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                     std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint64_t>((r[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p);
  return r;
}

std::uint64_t naive_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint64_t> naive_rem(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& m, std::uint64_t p) {
  std::uint64_t li = naive_pow(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    std::uint64_t c = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.back()) * li % p);
    std::size_t off = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j)
      a[off + j] = static_cast<std::uint64_t>((a[off + j] + p - static_cast<unsigned __int128>(c) * m[j] % p) % p);
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<std::uint64_t> to_ints(const PrimeField& f, const Poly<PrimeField>& a) {
  std::vector<std::uint64_t> r;
  for (auto c : a.c) r.push_back(f.to_u64(c));
  return r;
}

template <class F>
Poly<F> random_poly(const PolyRing<F>& R, long deg, Rng& rng) {
  std::vector<typename F::Elt> c(static_cast<std::size_t>(deg) + 1);
  for (auto& e : c) e = R.field().random(rng);
  while (R.field().is_zero(c.back())) c.back() = R.field().random(rng);
  return R.make(std::move(c));
}

template <class F>
Poly<F> reconstruct(const PolyRing<F>& R, const std::vector<Factor<F>>& fs) {
  Poly<F> r = R.one();
  for (const auto& fc : fs)
    for (int i = 0; i < fc.multiplicity; ++i) r = R.mul(r, fc.poly);
  return r;
}

template <class F>
void check_field_axioms(const F& f, Rng& rng, int samples) {
  for (int i = 0; i < samples; ++i) {
    auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
    CHECK(f.equal(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
    CHECK(f.equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
    CHECK(f.equal(f.add(a, f.neg(a)), f.zero()));
    if (!f.is_zero(a)) CHECK(f.equal(f.mul(a, f.inv(a)), f.one()));
  }
}

}  // namespace

TEST_CASE("prime field inverse") {
  PrimeField f(7);
  CHECK(f.to_u64(f.inv(f.from_u64(3))) == 5);
  CHECK(f.equal(f.inv(f.one()), f.one()));
  try {
    field_inv(f, f.zero());
    FAIL("expected ZeroInverse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInverse);
  }
  CHECK_THROWS_AS(PrimeField(3), Error);
  CHECK_THROWS_AS(PrimeField(15), Error);
}

TEST_CASE("prime field square roots") {
  PrimeField f(7);
  PrimeField::Elt r;
  REQUIRE(field_sqrt(f, f.from_u64(2), r));
  CHECK(f.to_u64(r) == 3);
  REQUIRE(field_sqrt(f, f.zero(), r));
  CHECK(f.is_zero(r));
  CHECK_FALSE(field_sqrt(f, f.from_u64(3), r));
}

TEST_CASE("fp2 modulus choice") {
  Fp2Field a(7);
  CHECK(a.modulus_coeffs() == std::vector<std::uint64_t>{1, 0, 1});
  Fp2Field b(13);  // 2 is the least non-residue mod 13
  CHECK(b.nonresidue() == 2);
  CHECK(b.modulus_coeffs() == std::vector<std::uint64_t>{11, 0, 1});
}

TEST_CASE("field axioms and Frobenius on random samples") {
  Rng rng(1);
  for (std::uint64_t p : {7ULL, 13ULL, 1000003ULL, (1ULL << 61) - 1}) {
    Fp2Field f(p);
    check_field_axioms(f.base(), rng, 100);
    check_field_axioms(f, rng, 100);
    BigInt bp(static_cast<unsigned long>(p));
    for (int i = 0; i < 50; ++i) {
      auto a = f.random(rng), b = f.random(rng);
      auto fa = field_pow(f, a, bp), fb = field_pow(f, b, bp);
      CHECK(f.equal(field_pow(f, f.add(a, b), bp), f.add(fa, fb)));
      CHECK(f.equal(field_pow(f, f.mul(a, b), bp), f.mul(fa, fb)));
      CHECK(f.equal(fa, f.conj(a)));
    }
  }
}

TEST_CASE("square roots in Fp2") {
  Rng rng(2);
  for (std::uint64_t p : {7ULL, 13ULL, 17ULL, 1000033ULL}) {
    Fp2Field f(p);
    BigInt half = (f.order() - 1) / 2;
    for (int i = 0; i < 200; ++i) {
      auto a = f.random(rng);
      Fp2Elt r;
      if (field_sqrt(f, a, r, i)) {
        CHECK(f.equal(f.sqr(r), a));
        CHECK_FALSE(canonical_less(f, f.neg(r), r));
      } else {
        CHECK_FALSE(f.equal(field_pow(f, a, half), f.one()));
      }
    }
    // every element of Fp is a square in Fp2
    for (int i = 0; i < 20; ++i) CHECK(is_square(f, f.embed(f.base().random(rng))));
  }
}

TEST_CASE("xgcd examples") {
  PrimeField f(7);
  PolyRing<PrimeField> R(f);
  auto a = R.from_ints({-1, 0, 1});
  auto b = R.from_ints({-1, 1});
  auto x = R.xgcd(a, b);
  CHECK(x.g == b);
  auto y = R.xgcd(R.from_ints({2, 4}), R.make({}));
  CHECK(y.g == R.from_ints({4, 1}));
  try {
    R.xgcd({}, {});
    FAIL("expected BothZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BothZero);
  }
}

TEST_CASE("xgcd Bezout identity on random pairs") {
  Rng rng(3);
  Fp2Field f(1009);
  PolyRing<Fp2Field> R(f);
  int coprime = 0;
  for (int i = 0; i < 1000; ++i) {
    auto a = random_poly(R, 1 + static_cast<long>(uniform_below(rng, 12)), rng);
    auto b = random_poly(R, static_cast<long>(uniform_below(rng, 12)), rng);
    if (i % 5 == 0) {
      auto common = random_poly(R, 2, rng);
      a = R.mul(a, common);
      b = R.mul(b, common);
    }
    auto x = R.xgcd(a, b);
    CHECK(R.add(R.mul(x.s, a), R.mul(x.t, b)) == x.g);
    CHECK(f.equal(x.g.lead(), f.one()));
    CHECK(R.divides(x.g, a));
    CHECK(R.divides(x.g, b));
    if (x.g.deg() == 0) ++coprime;
  }
  CHECK(coprime > 500);
}

TEST_CASE("invmod examples") {
  PrimeField f(7);
  PolyRing<PrimeField> R(f);
  auto h = R.from_ints({1, 0, 1});
  CHECK(R.invmod(R.x(), h) == R.from_ints({0, 6}));
  CHECK(R.invmod(R.one(), h) == R.one());
  try {
    R.invmod(R.from_ints({-1, 1}), R.from_ints({-1, 0, 1}));
    FAIL("expected NotInvertible");
  } catch (const NotInvertibleError<PrimeField>& e) {
    CHECK(e.code() == ErrorCode::NotInvertible);
    CHECK(e.gcd() == R.from_ints({-1, 1}));
  }
}

TEST_CASE("invmod on random residues") {
  Rng rng(4);
  Fp2Field f(101);
  PolyRing<Fp2Field> R(f);
  for (int i = 0; i < 200; ++i) {
    auto h = random_poly(R, 1 + static_cast<long>(uniform_below(rng, 30)), rng);
    auto a = random_poly(R, static_cast<long>(uniform_below(rng, 30)), rng);
    try {
      auto inv = R.invmod(a, h);
      CHECK(inv.deg() < h.deg());
      CHECK(R.rem(R.mul(inv, a), h) == R.rem(R.one(), h));
    } catch (const NotInvertibleError<Fp2Field>& e) {
      CHECK(e.gcd().deg() >= 1);
      CHECK(R.divides(e.gcd(), h));
      CHECK(R.divides(e.gcd(), R.rem(a, h)));
    }
  }
}

TEST_CASE("mulmod examples and long-division oracle") {
  PrimeField f(7);
  PolyRing<PrimeField> R(f);
  auto h = R.from_ints({1, 0, 1});
  CHECK(R.mulmod(R.x(), R.x(), h) == R.from_ints({-1}));
  auto g = R.from_ints({3, 1, 4, 1, 5});
  CHECK(R.mulmod(g, R.one(), h) == R.rem(g, h));

  Rng rng(5);
  const std::uint64_t p = 1000003;
  PrimeField fp(p);
  PolyRing<PrimeField> Rp(fp);
  for (long n : {5L, 40L, 70L, 150L}) {
    auto m = random_poly(Rp, n, rng);
    Modulus<PrimeField> mod(Rp, m);
    auto mi = to_ints(fp, mod.poly());
    for (int i = 0; i < 10; ++i) {
      auto a = random_poly(Rp, n - 1, rng);
      auto b = random_poly(Rp, n - 1 - static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(n))), rng);
      auto expect = naive_rem(naive_mul(to_ints(fp, a), to_ints(fp, b), p), mi, p);
      CHECK(to_ints(fp, mod.mul(a, b)) == expect);
      CHECK(to_ints(fp, Rp.mulmod(a, b, m)) == expect);
      CHECK(to_ints(fp, Rp.mul(a, b)) == naive_mul(to_ints(fp, a), to_ints(fp, b), p));
    }
  }
}

TEST_CASE("factor small examples") {
  PrimeField f(7);
  PolyRing<PrimeField> R(f);
  auto fs = poly_factor(R, R.from_ints({-1, 0, 1}));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].poly == R.from_ints({1, 1}));
  CHECK(fs[1].poly == R.from_ints({-1, 1}));
  CHECK(fs[0].multiplicity == 1);
  auto irr = poly_factor(R, R.from_ints({1, 0, 1}));
  REQUIRE(irr.size() == 1);
  CHECK(irr[0].poly == R.from_ints({1, 0, 1}));
  CHECK(is_irreducible(R, R.from_ints({1, 0, 1})));
  CHECK_FALSE(is_irreducible(R, R.from_ints({-1, 0, 1})));

  // p-th powers need the p-th root branch of the squarefree decomposition.
  Poly<PrimeField> pw = R.one();
  for (int i = 0; i < 7; ++i) pw = R.mul(pw, R.from_ints({3, 1}));
  auto target = R.mul(R.mul(pw, R.from_ints({1, 0, 1})), R.from_ints({3, 1}));
  auto fp = poly_factor(R, target);
  REQUIRE(fp.size() == 2);
  CHECK(fp[0].poly == R.from_ints({3, 1}));
  CHECK(fp[0].multiplicity == 8);
  CHECK(fp[1].multiplicity == 1);
}

TEST_CASE("factor random polynomials reconstructs and yields irreducibles") {
  Rng rng(6);
  for (std::uint64_t p : {5ULL, 101ULL}) {
    Fp2Field f(p);
    PolyRing<Fp2Field> R(f);
    for (int i = 0; i < 30; ++i) {
      auto a = R.monic(random_poly(R, 1 + static_cast<long>(uniform_below(rng, 7)), rng));
      if (i % 3 == 0) a = R.mul(a, R.sqr(R.monic(random_poly(R, 2, rng))));
      auto fs = poly_factor(R, a, static_cast<std::uint64_t>(i));
      CHECK(reconstruct(R, fs) == a);
      for (const auto& fc : fs) CHECK(is_irreducible(R, fc.poly));
      auto again = poly_factor(R, a, static_cast<std::uint64_t>(i));
      REQUIRE(again.size() == fs.size());
      for (std::size_t k = 0; k < fs.size(); ++k) CHECK(again[k].poly == fs[k].poly);
    }
  }
}

TEST_CASE("extension field tower") {
  Rng rng(7);
  Fp2Field f(103);
  PolyRing<Fp2Field> R(f);
  for (long d : {1L, 2L, 3L, 5L}) {
    auto m = random_irreducible(R, d, rng);
    ExtField<Fp2Field> K(f, m);
    CHECK(K.coord_count() == static_cast<std::size_t>(2 * d));
    check_field_axioms(K, rng, 50);
    auto a = K.random(rng);
    CHECK(K.equal(field_pow(K, a, K.order()), a));
    auto t = K.generator();
    // the generator is a root of the modulus
    auto acc = K.zero();
    for (std::size_t i = m.c.size(); i-- > 0;) acc = K.add(K.mul(acc, t), K.embed(m.c[i]));
    CHECK(K.is_zero(acc));
  }
}
