#include "endotrace/homres.hpp"

#include <algorithm>
#include <atomic>

namespace endotrace {

namespace {

std::atomic<std::uint64_t> next_ring_id{1};

Fp2Poly checked_monic(const PolyRing<Fp2Field>& R, Fp2Poly h) {
  if (h.deg() < 1) throw Error(ErrorCode::InvalidArgument, "restriction modulus of degree < 1");
  return R.monic(std::move(h));
}

void same_ring(const QuotientRing& ring, const RestrictedPoint& P) {
  if (P.ring_id != ring.id()) throw Error(ErrorCode::RingMismatch, "restricted point belongs to another ring");
}

RestrictedPoint make_point(const QuotientRing& ring, Fp2Poly a, Fp2Poly b) {
  return RestrictedPoint{ring.id(), false, std::move(a), std::move(b)};
}

}  // namespace

QuotientRing::QuotientRing(const Fp2Curve& E, Fp2Poly h, int ell)
    : E_(E), R_(E.field()), mod_(R_, checked_monic(R_, std::move(h))), ell_(ell), id_(next_ring_id++) {
  if (ell < 3 || ell % 2 == 0) throw Error(ErrorCode::InvalidArgument, "restriction rings need an odd prime l");
  f_ = mod_.reduce(E.rhs_poly());
  f_inv_ = mod_.inv(f_, ErrorCode::InvalidKernel);
}

Fp2Poly QuotientRing::compose(const Fp2Poly& a, const Fp2Poly& b) const {
  Fp2Poly r;
  for (std::size_t i = a.c.size(); i-- > 0;) r = R_.add(mul(r, b), R_.constant(a.c[i]));
  return reduce(r);
}

RestrictedPoint restricted_zero(const QuotientRing& ring) { return RestrictedPoint{ring.id(), true, {}, {}}; }

RestrictedPoint restrict_identity(const QuotientRing& ring) {
  const auto& R = ring.poly_ring();
  return make_point(ring, ring.reduce(R.x()), R.one());
}

RestrictedPoint restricted_neg(const QuotientRing& ring, const RestrictedPoint& P) {
  same_ring(ring, P);
  if (P.zero) return P;
  return make_point(ring, P.a, ring.poly_ring().neg(P.b));
}

RestrictedPoint restricted_double(const QuotientRing& ring, const Fp2Curve& target, const RestrictedPoint& P) {
  same_ring(ring, P);
  if (P.zero) return P;
  const auto& f = ring.field();
  // slope m(x) y with m = (3a^2 + A') / (2 b f)
  Fp2Poly num = ring.add(ring.scale(ring.sqr(P.a), f.from_int(3)), ring.poly_ring().constant(target.A()));
  Fp2Poly den_inv = ring.mul(ring.inv(P.b, ErrorCode::NonUnitSlope), ring.f_inv());
  Fp2Poly m = ring.scale(ring.mul(num, den_inv), f.inv(f.from_int(2)));
  Fp2Poly x3 = ring.sub(ring.mul(ring.sqr(m), ring.f()), ring.add(P.a, P.a));
  Fp2Poly y3 = ring.sub(ring.mul(m, ring.sub(P.a, x3)), P.b);
  return make_point(ring, std::move(x3), std::move(y3));
}

RestrictedPoint restricted_add(const QuotientRing& ring, const Fp2Curve& target, const RestrictedPoint& P,
                               const RestrictedPoint& Q) {
  same_ring(ring, P);
  same_ring(ring, Q);
  if (P.zero) return Q;
  if (Q.zero) return P;
  if (P.a == Q.a) {
    if (ring.add(P.b, Q.b).is_zero()) return restricted_zero(ring);
    if (P.b == Q.b) return restricted_double(ring, target, P);
    Fp2Poly g = ring.poly_ring().gcd(ring.sub(P.b, Q.b), ring.h());
    throw ZeroDivisorError(ErrorCode::NonUnitSlope, g, "equal x-coordinates with unrelated y-coordinates");
  }
  Fp2Poly m = ring.mul(ring.sub(Q.b, P.b), ring.inv(ring.sub(Q.a, P.a), ErrorCode::NonUnitSlope));
  Fp2Poly x3 = ring.sub(ring.sub(ring.mul(ring.sqr(m), ring.f()), P.a), Q.a);
  Fp2Poly y3 = ring.sub(ring.mul(m, ring.sub(P.a, x3)), P.b);
  return make_point(ring, std::move(x3), std::move(y3));
}

RestrictedPoint restricted_scalar_mul(const QuotientRing& ring, const Fp2Curve& target, long c,
                                      const RestrictedPoint& P) {
  same_ring(ring, P);
  long ell = ring.ell();
  c = ((c % ell) + ell) % ell;
  RestrictedPoint r = restricted_zero(ring);
  for (int bit = 62; bit >= 0; --bit) {
    r = restricted_double(ring, target, r);
    if ((c >> bit) & 1) r = restricted_add(ring, target, r, P);
  }
  return r;
}

RestrictedPoint evaluate_step(const QuotientRing& ring, const IsogenyStep& step, const RestrictedPoint& P) {
  same_ring(ring, P);
  if (P.zero) return P;
  Fp2Poly va = ring.compose(step.v, P.a);
  if (va.is_zero()) return restricted_zero(ring);
  Fp2Poly x = ring.mul(ring.compose(step.u, P.a), ring.inv(va, ErrorCode::NonUnitDenominator));
  Fp2Poly ratio = ring.mul(ring.compose(step.s, P.a), ring.inv(ring.compose(step.t, P.a), ErrorCode::NonUnitDenominator));
  Fp2Poly y = ring.scale(ring.mul(P.b, ratio), step.c);
  return make_point(ring, std::move(x), std::move(y));
}

RestrictedPoint restrict_chain(const QuotientRing& ring, const Chain& chain, const RestrictedPoint& start) {
  same_ring(ring, start);
  if (start.zero) return start;
  const auto& R = ring.poly_ring();
  // x = an/ad, y-coefficient = bn/bd
  Fp2Poly an = start.a, ad = R.one(), bn = start.b, bd = R.one();
  std::vector<Fp2Poly> pa, pd;
  auto powers = [&](const Fp2Poly& base, std::vector<Fp2Poly>& out, long n) {
    out.assign(1, R.one());
    for (long i = 1; i <= n; ++i) out.push_back(ring.mul(out.back(), base));
  };
  // sum_i p_i an^i ad^(D - i)
  auto hom = [&](const Fp2Poly& p, long D) {
    Fp2Poly acc;
    for (long i = 0; i <= p.deg(); ++i) {
      const auto& cf = p.c[static_cast<std::size_t>(i)];
      if (ring.field().is_zero(cf)) continue;
      acc = R.add(acc, R.scale(ring.mul(pa[static_cast<std::size_t>(i)], pd[static_cast<std::size_t>(D - i)]), cf));
    }
    return acc;
  };
  for (const auto& st : chain.steps) {
    long du = st.u.deg(), dv = st.v.deg(), ds = st.s.deg(), dt = st.t.deg();
    long top = std::max({du, ds, dt});
    powers(an, pa, top);
    powers(ad, pd, top);
    Fp2Poly U = hom(st.u, du), V = hom(st.v, dv), S = hom(st.s, ds), T = hom(st.t, dt);
    Fp2Poly ad_new = ring.mul(ad, V);
    for (long i = 1; i < du - dv; ++i) ad_new = ring.mul(ad_new, ad);
    Fp2Poly bn_new = ring.scale(ring.mul(bn, S), st.c);
    Fp2Poly bd_new = ring.mul(bd, T);
    if (dt > ds) bn_new = ring.mul(bn_new, pd[static_cast<std::size_t>(dt - ds)]);
    if (ds > dt) bd_new = ring.mul(bd_new, pd[static_cast<std::size_t>(ds - dt)]);
    an = std::move(U);
    ad = std::move(ad_new);
    bn = std::move(bn_new);
    bd = std::move(bd_new);
    if (ad.is_zero()) return restricted_zero(ring);
  }
  Fp2Poly a = ring.mul(an, ring.inv(ad, ErrorCode::NonUnitDenominator));
  Fp2Poly b = ring.mul(bn, ring.inv(bd, ErrorCode::NonUnitDenominator));
  return make_point(ring, std::move(a), std::move(b));
}

RestrictedPoint restrict_chain(const QuotientRing& ring, const Chain& chain) {
  return restrict_chain(ring, chain, restrict_identity(ring));
}

}  // namespace endotrace
