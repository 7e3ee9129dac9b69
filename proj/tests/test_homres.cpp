#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "endotrace/endgen.hpp"
#include "endotrace/homres.hpp"

using namespace endotrace;

namespace {

struct Fixture {
  Fp2Curve E;
  BigInt order;
  int ell;
  TorsionSetup setup;
  ScaledPoint gen;
  Fp2Poly h;
};

Fixture make_fixture(std::uint64_t p, std::uint64_t seed, int ell) {
  auto E = random_supersingular_curve(p, seed);
  BigInt N = group_order_supersingular(E, seed);
  Rng rng(seed + 1000 * static_cast<std::uint64_t>(ell));
  auto setup = make_torsion_setup(E, ell, N, rng);
  auto gen = random_order_ell_point(E, setup, rng);
  auto h = kernel_polynomial_of_point(E, setup, gen);
  return Fixture{E, N, ell, std::move(setup), std::move(gen), std::move(h)};
}

// Checks that phi_h interpolates the point-wise images phi(P) over all
// nonzero P in the kernel; `image` computes phi on the scaled model.
template <class Fn>
void check_interpolates(const Fixture& fx, const RestrictedPoint& r, Fn image) {
  const auto& K = fx.setup.K;
  auto EK = lift_curve(K, fx.E);
  auto P = fx.gen.P;
  for (int i = 1; i < fx.ell; ++i) {
    auto img = image(P);
    if (r.zero) {
      CHECK(img.inf);
    } else {
      REQUIRE_FALSE(img.inf);
      CHECK(K.equal(eval_lifted(K, r.a, P.x), img.x));
      CHECK(K.equal(K.mul(eval_lifted(K, r.b, P.x), P.y), img.y));
    }
    P = EK.add(P, fx.gen.P, fx.gen.g);
  }
}

}  // namespace

TEST_CASE("identity restriction") {
  auto fx = make_fixture(431, 0, 5);
  QuotientRing ring(fx.E, fx.h, 5);
  auto id = restrict_identity(ring);
  PolyRing<Fp2Field> R(fx.E.field());
  CHECK(id.a == R.x());
  CHECK(id.b == R.one());
  check_interpolates(fx, id, [](const Point<Fp2Ext>& P) { return P; });
  CHECK(restricted_scalar_mul(ring, fx.E, 5, id).zero);
  CHECK_THROWS_AS(QuotientRing(fx.E, fx.h, 2), Error);
}

TEST_CASE("restricted group law") {
  for (int ell : {3, 5, 7}) {
    auto fx = make_fixture(1019, 2, ell);
    QuotientRing ring(fx.E, fx.h, ell);
    auto id = restrict_identity(ring);
    auto zero = restricted_zero(ring);
    CHECK(restricted_add(ring, fx.E, id, zero) == id);
    CHECK(restricted_add(ring, fx.E, id, restricted_neg(ring, id)).zero);
    CHECK(restricted_neg(ring, zero).zero);
    std::vector<RestrictedPoint> mult;
    for (int a = 0; a < ell; ++a) mult.push_back(restricted_scalar_mul(ring, fx.E, a, id));
    auto EK = lift_curve(fx.setup.K, fx.E);
    for (int a = 0; a < ell; ++a) {
      check_interpolates(fx, mult[static_cast<std::size_t>(a)],
                         [&](const Point<Fp2Ext>& P) { return EK.mul(BigInt(a), P, fx.gen.g); });
      for (int b = 0; b < ell; ++b)
        CHECK(restricted_add(ring, fx.E, mult[static_cast<std::size_t>(a)], mult[static_cast<std::size_t>(b)]) ==
              mult[static_cast<std::size_t>((a + b) % ell)]);
    }
    if (ell >= 5) {
      auto two = restricted_scalar_mul(ring, fx.E, 2, id), three = restricted_scalar_mul(ring, fx.E, 3, id);
      CHECK(restricted_add(ring, fx.E, two, three) == restricted_scalar_mul(ring, fx.E, 5, id));
    }
  }
}

TEST_CASE("scalar multiplication equals iterated addition") {
  auto fx = make_fixture(431, 3, 11);
  QuotientRing ring(fx.E, fx.h, 11);
  auto c = random_cycle(fx.E, 10, 1);
  auto alpha = restrict_chain(ring, c);
  REQUIRE_FALSE(alpha.zero);
  auto acc = restricted_zero(ring);
  for (int k = 0; k <= 10; ++k) {
    CHECK(restricted_scalar_mul(ring, fx.E, k, alpha) == acc);
    acc = restricted_add(ring, fx.E, acc, alpha);
  }
}

TEST_CASE("step evaluation and chain restriction") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    for (int ell : {3, 5, 7, 13}) {
      auto fx = make_fixture(431, seed, ell);
      QuotientRing ring(fx.E, fx.h, ell);
      auto id = restrict_identity(ring);
      auto chain = random_cycle(fx.E, 20, seed);
      REQUIRE(chain.steps.size() >= 20);
      CHECK(evaluate_step(ring, chain.steps[0], restricted_zero(ring)).zero);

      Chain empty{fx.E, {}};
      CHECK(restrict_chain(ring, empty) == id);
      Chain one{fx.E, {chain.steps[0]}};
      CHECK(restrict_chain(ring, one) == evaluate_step(ring, chain.steps[0], id));

      auto fold = id;
      for (const auto& st : chain.steps) fold = evaluate_step(ring, st, fold);
      auto proj = restrict_chain(ring, chain);
      CHECK(proj == fold);
      const auto& K = fx.setup.K;
      check_interpolates(fx, proj, [&](const Point<Fp2Ext>& P) { return chain.evaluate(K, P); });

      // alpha^2 by continuing from alpha_h
      auto sq = restrict_chain(ring, chain, proj);
      check_interpolates(fx, sq, [&](const Point<Fp2Ext>& P) { return chain.evaluate(K, chain.evaluate(K, P)); });
    }
  }
}

TEST_CASE("odd-degree steps inside chains") {
  // A 3-isogeny restricted to its own kernel is Zero; on another kernel it
  // interpolates the point-wise map.
  auto fx = make_fixture(1019, 4, 5);
  auto h3 = kernel_polynomials(fx.E, 3, 1, 0, fx.order)[0];
  auto st = velu_from_kernel(fx.E, h3);
  QuotientRing own(fx.E, h3, 3);
  CHECK(evaluate_step(own, st, restrict_identity(own)).zero);
  QuotientRing ring(fx.E, fx.h, 5);
  auto r = evaluate_step(ring, st, restrict_identity(ring));
  const auto& K = fx.setup.K;
  check_interpolates(fx, r, [&](const Point<Fp2Ext>& P) { return st.evaluate(K, P); });
  Chain ch{fx.E, {st}};
  chain_validate(ch, false);
  CHECK(restrict_chain(ring, ch) == r);
}

TEST_CASE("ring mismatch") {
  auto fx = make_fixture(431, 1, 5);
  QuotientRing r1(fx.E, fx.h, 5), r2(fx.E, fx.h, 5);
  try {
    restricted_add(r1, fx.E, restrict_identity(r1), restrict_identity(r2));
    FAIL("expected RingMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RingMismatch);
  }
}
