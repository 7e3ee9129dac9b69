#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endotrace/endgen.hpp"
#include "endotrace/isogeny.hpp"

using namespace endotrace;

namespace {

void check_additive_on_points(const IsogenyStep& st, std::uint64_t seed) {
  const auto& f = st.domain.field();
  Rng rng(seed);
  for (int i = 0; i < 20; ++i) {
    auto P = st.domain.random_point(rng);
    auto Q = st.domain.random_point(rng);
    auto fP = st.evaluate(P), fQ = st.evaluate(Q);
    CHECK(st.codomain.on_curve(fP));
    CHECK(st.evaluate(st.domain.add(P, Q)) == st.codomain.add(fP, fQ));
  }
  // and over a quadratic extension of Fp2
  PolyRing<Fp2Field> R(f);
  Fp2Ext K(f, random_irreducible(R, 2, rng));
  auto EK = lift_curve(K, st.domain);
  auto CK = lift_curve(K, st.codomain);
  for (int i = 0; i < 5; ++i) {
    auto P = EK.random_point(rng);
    auto Q = EK.random_point(rng);
    auto fP = st.evaluate(K, P);
    CHECK(CK.on_curve(fP));
    CHECK(st.evaluate(K, EK.add(P, Q)) == CK.add(fP, st.evaluate(K, Q)));
  }
}

}  // namespace

TEST_CASE("Velu degree 2 on y^2 = x^3 + x over F7") {
  Fp2Field f(7);
  Fp2Curve E(f, f.one(), f.zero());
  PolyRing<Fp2Field> R(f);
  auto st = velu_from_kernel(E, R.x());
  // u/v = x + 1/x
  CHECK(st.u == R.from_ints({1, 0, 1}));
  CHECK(st.v == R.x());
  CHECK(st.degree() == 2);
  CHECK(step_map_identity_holds(st));
  CHECK(f.equal(normalization_constant(st), f.one()));
  auto P = Point<Fp2Field>::affine(f.zero(), f.zero());
  CHECK(st.evaluate(P).inf);
}

TEST_CASE("odd Velu steps from kernel polynomials") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto E = random_supersingular_curve(431, seed);
    const auto& f = E.field();
    PolyRing<Fp2Field> R(f);
    BigInt N = group_order_supersingular(E, seed);
    for (int ell : {3, 5, 7, 11}) {
      Rng rng(seed * 100 + static_cast<std::uint64_t>(ell));
      auto setup = make_torsion_setup(E, ell, N, rng);
      auto sp = random_order_ell_point(E, setup, rng);
      auto h = kernel_polynomial_of_point(E, setup, sp);
      CHECK(h.deg() == (ell - 1) / 2);
      CHECK(R.divides(h, division_polynomial(E, ell)));
      auto st = velu_from_kernel(E, h);
      CHECK(st.degree() == ell);
      CHECK(st.v.deg() == ell - 1);
      CHECK(st.v == R.sqr(h));
      CHECK(st.h == h);
      CHECK(step_map_identity_holds(st));
      // s/t = (u/v)' by cross multiplication
      auto num = R.sub(R.mul(R.deriv(st.u), st.v), R.mul(st.u, R.deriv(st.v)));
      CHECK(R.mul(num, st.t) == R.mul(st.s, R.sqr(st.v)));
      // kernel points map to infinity, other points land on the codomain
      for (auto Q = sp.P; !Q.inf; Q = lift_curve(setup.K, E).add(Q, sp.P, sp.g))
        CHECK(st.evaluate(setup.K, Q).inf);
      check_additive_on_points(st, seed + static_cast<std::uint64_t>(ell));
    }
  }
}

TEST_CASE("kernel_polynomials") {
  auto E = random_supersingular_curve(431, 4);
  PolyRing<Fp2Field> R(E.field());
  for (int ell : {3, 5, 7, 13}) {
    auto hs = kernel_polynomials(E, ell, 2, 7);
    REQUIRE(hs.size() == 2);
    auto psi = division_polynomial(E, ell);
    for (const auto& h : hs) {
      CHECK(h.deg() == (ell - 1) / 2);
      CHECK(R.divides(h, psi));
    }
    CHECK(R.gcd(hs[0], hs[1]).deg() == 0);
    auto again = kernel_polynomials(E, ell, 2, 7);
    CHECK(again[0] == hs[0]);
    CHECK(again[1] == hs[1]);
  }
  // all l + 1 kernels together multiply to psi_l up to its leading coefficient
  std::vector<Fp2Poly> seen;
  for (std::uint64_t seed = 0; seen.size() < 4 && seed < 200; ++seed) {
    auto h = kernel_polynomials(E, 3, 1, seed)[0];
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == h;
    if (!dup) seen.push_back(h);
  }
  REQUIRE(seen.size() == 4);
  Fp2Poly prod = R.one();
  for (const auto& s : seen) prod = R.mul(prod, s);
  CHECK(prod == R.monic(division_polynomial(E, 3)));
}

TEST_CASE("normalization constants") {
  auto E = random_supersingular_curve(1019, 1);
  const auto& f = E.field();
  auto roots = two_torsion_roots(E);
  PolyRing<Fp2Field> R(f);
  auto st = velu_from_kernel(E, R.make({f.neg(roots[0]), f.one()}));
  CHECK(f.equal(normalization_constant(st), f.one()));
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    Fp2Elt k = f.random(rng);
    if (f.is_zero(k)) continue;
    auto st2 = post_compose_iso(st, k);
    CHECK(step_map_identity_holds(st2));
    Fp2Elt c = normalization_constant(st2);
    // post-composition with (x, y) -> (k^-2 x, k^-3 y) scales c by k^-1
    CHECK(f.equal(c, f.inv(k)));
    CHECK(f.equal(st2.u.lead(), f.sqr(c)));
    auto P = E.random_point(rng);
    CHECK(st2.evaluate(P) == st.codomain.transport_point(k, st.evaluate(P)));
  }
}

TEST_CASE("chains") {
  auto E = random_supersingular_curve(431, 0);
  Chain empty{E, {}};
  CHECK_NOTHROW(chain_validate(empty));
  CHECK(chain_degree(empty) == 1);

  auto c = random_cycle(E, 12, 3);
  CHECK(c.steps.size() >= 12);
  CHECK_NOTHROW(chain_validate(c));
  BigInt d = 1;
  d <<= static_cast<unsigned>(c.steps.size());
  CHECK(chain_degree(c) == d);
  for (const auto& st : c.steps) {
    CHECK(st.degree() == 2);
    CHECK(step_map_identity_holds(st));
    CHECK(E.field().is_zero(st.domain.rhs(E.field().neg(st.h.c[0]))));
  }

  auto swapped = c;
  std::swap(swapped.steps[3], swapped.steps[4]);
  try {
    chain_validate(swapped);
    FAIL("expected BrokenChain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BrokenChain);
  }
  auto open = c;
  open.steps.pop_back();
  CHECK_NOTHROW(chain_validate(open, false));
  try {
    chain_validate(open);
    FAIL("expected NotEndomorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEndomorphism);
  }
  // the chain is a group homomorphism E -> E
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    auto P = E.random_point(rng), Q = E.random_point(rng);
    CHECK(c.evaluate(E.add(P, Q)) == E.add(c.evaluate(P), c.evaluate(Q)));
  }
}

TEST_CASE("scalar two chain") {
  auto E = random_supersingular_curve(1019, 5);
  auto c = scalar_two_chain(E, 0);
  Rng rng(4);
  auto P = E.random_point(rng);
  auto img = c.evaluate(P);
  CHECK((img == E.mul(2L, P) || img == E.mul(-2L, P)));
}

TEST_CASE("endgen determinism and preconditions") {
  auto a = random_supersingular_curve(431, 7);
  auto b = random_supersingular_curve(431, 7);
  CHECK(a.same_coefficients(b));
  CHECK(is_supersingular(a));
  CHECK_FALSE(a.field().is_zero(a.A()));
  CHECK_FALSE(a.field().is_zero(a.B()));
  try {
    random_supersingular_curve(13, 0);
    FAIL("expected UnsupportedPrime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedPrime);
  }
  auto c1 = random_cycle(a, 20, 9);
  auto c2 = random_cycle(a, 20, 9);
  REQUIRE(c1.steps.size() == c2.steps.size());
  for (std::size_t i = 0; i < c1.steps.size(); ++i) CHECK(c1.steps[i].u == c2.steps[i].u);
  CHECK(c1.steps.size() >= 20);
  CHECK(c1.steps.size() <= 36);
  auto p = random_prime_3mod4(16, 1);
  CHECK(p % 4 == 3);
  CHECK((p >> 15) == 1U);
}

TEST_CASE("short cycles over a larger prime") {
  // L far below the meet-in-the-middle depth for p = 65167
  auto E = random_supersingular_curve(65167, 3);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto c = random_cycle(E, 8 + static_cast<int>(seed % 8), seed);
    CHECK(c.steps.size() >= 8);
    CHECK_NOTHROW(chain_validate(c));
  }
}
