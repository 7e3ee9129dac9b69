#pragma once

// Separable isogenies in standard form
//   (x, y) -> (u(x)/v(x), c * y * s(x)/t(x))
// between curves over Fp2, and chains of them.

#include <vector>

#include "endotrace/curve.hpp"
#include "endotrace/extension.hpp"

namespace endotrace {

using Fp2Poly = Poly<Fp2Field>;
using Fp2Curve = Curve<Fp2Field>;
using Fp2Ext = ExtField<Fp2Field>;

// Embedding of Fp2 into the fields points may live in.
inline Fp2Elt lift(const Fp2Field&, const Fp2Elt& a) { return a; }
inline Fp2Ext::Elt lift(const Fp2Ext& K, const Fp2Elt& a) { return K.embed(a); }

template <class K>
typename K::Elt eval_lifted(const K& k, const Fp2Poly& a, const typename K::Elt& x) {
  typename K::Elt r = k.zero();
  for (std::size_t i = a.c.size(); i-- > 0;) r = k.add(k.mul(r, x), lift(k, a.c[i]));
  return r;
}

template <class K>
Curve<K> lift_curve(const K& k, const Fp2Curve& E) {
  return Curve<K>(k, lift(k, E.A()), lift(k, E.B()));
}

struct IsogenyStep {
  Fp2Curve domain;
  Fp2Curve codomain;
  Fp2Poly u, v, s, t;
  Fp2Elt c;
  Fp2Poly h;  // kernel polynomial, derived from v

  long degree() const { return u.deg(); }

  // Image of a point over an extension. Works unchanged on the scaled model
  // g*y^2 = f(x): the image satisfies g*Y^2 = f'(X) on the codomain.
  template <class K>
  Point<K> evaluate(const K& k, const Point<K>& P) const {
    if (P.inf) return P;
    auto vx = eval_lifted(k, v, P.x);
    if (k.is_zero(vx)) return Point<K>::infinity();
    auto X = k.mul(eval_lifted(k, u, P.x), k.inv(vx));
    auto Y = k.mul(k.mul(lift(k, c), P.y), k.mul(eval_lifted(k, s, P.x), k.inv(eval_lifted(k, t, P.x))));
    return Point<K>::affine(X, Y);
  }
  Point<Fp2Field> evaluate(const Point<Fp2Field>& P) const { return evaluate(domain.field(), P); }
};

// Builds a step from (domain, codomain, u, v, c), deriving s/t = (u/v)' in
// lowest terms with t monic, and h = v / gcd(v, v').
IsogenyStep make_step(const Fp2Curve& domain, const Fp2Curve& codomain, Fp2Poly u, Fp2Poly v, const Fp2Elt& c);

// Normalised (c = 1) step with kernel polynomial h: either h = x - x0 with
// f(x0) = 0 (degree 2) or an odd-degree kernel polynomial of an odd prime
// order subgroup. Throws InvalidKernel when the resulting map is not an
// isogeny onto the computed codomain.
IsogenyStep velu_from_kernel(const Fp2Curve& E, const Fp2Poly& h);

// (c s)^2 f_E v^3 == t^2 (u^3 + A' u v^2 + B' v^3).
bool step_map_identity_holds(const IsogenyStep& st);

// lead(c s) / lead(u).
Fp2Elt normalization_constant(const IsogenyStep& st);

// The step followed by (x, y) -> (k^-2 x, k^-3 y).
IsogenyStep post_compose_iso(const IsogenyStep& st, const Fp2Elt& k);

struct Chain {
  Fp2Curve curve;  // domain of the first step; the identity when steps is empty
  std::vector<IsogenyStep> steps;

  const Fp2Field& field() const { return curve.field(); }

  template <class K>
  Point<K> evaluate(const K& k, Point<K> P) const {
    for (const auto& st : steps) P = st.evaluate(k, P);
    return P;
  }
  Point<Fp2Field> evaluate(const Point<Fp2Field>& P) const { return evaluate(field(), P); }
};

// Throws BrokenChain naming the first mismatching index, and NotEndomorphism
// when require_endomorphism is set and the last codomain is not the start.
void chain_validate(const Chain& chain, bool require_endomorphism = true);
BigInt chain_degree(const Chain& chain);

// ---------------------------------------------------------------------------
// Odd prime order kernels over Fp2.
//
// For supersingular E/Fp2 with #E = (p -/+ 1)^2 the Frobenius acts as the
// scalar s0 = +-p. Over the degree-k extension it is s0^k, so E(K) is
// E[s0^k - 1] and the quadratic twist over K is E[s0^k + 1]. With k minimal
// such that s0^k = +-1 (mod l), all of E[l] has x-coordinates in K.

struct TorsionSetup {
  Fp2Ext K;
  int ell;
  bool square_side;  // true: points with f(x) square in K carry E[l]
  BigInt cofactor;   // |s0^k -+ 1| with the l-part removed
};

TorsionSetup make_torsion_setup(const Fp2Curve& E, int ell, const BigInt& group_order, Rng& rng);

// A point of exact order l on the scaled model g*y^2 = f(x) over setup.K,
// written as (x, 1) with g = f(x) before scaling by the cofactor.
struct ScaledPoint {
  Point<Fp2Ext> P;
  Fp2Ext::Elt g;
};
ScaledPoint random_order_ell_point(const Fp2Curve& E, const TorsionSetup& setup, Rng& rng);

// Kernel polynomial prod_{i=1}^{(l-1)/2} (x - x([i]P)), descended to Fp2.
Fp2Poly kernel_polynomial_of_point(const Fp2Curve& E, const TorsionSetup& setup, const ScaledPoint& P);

// `count` (1 or 2) distinct kernel polynomials of order-l subgroups.
std::vector<Fp2Poly> kernel_polynomials(const Fp2Curve& E, int ell, int count, std::uint64_t seed,
                                        const BigInt& group_order);
std::vector<Fp2Poly> kernel_polynomials(const Fp2Curve& E, int ell, int count, std::uint64_t seed);

}  // namespace endotrace
