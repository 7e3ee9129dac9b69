#pragma once

// Restrictions of isogenies to the kernel of an odd prime degree isogeny
// psi with kernel polynomial h. An isogeny phi: E -> E' restricted to
// ker(psi) is an R-point (a(x), b(x) y) of E', R = Fp2[x, y]/(y^2 - f_E, h),
// or Zero when phi kills ker(psi).
//
// The same code also runs with h replaced by a division polynomial (the
// Schoof setting); there R is a product of fields and failed inversions
// report the gcd so callers can split the modulus.

#include <cstdint>

#include "endotrace/isogeny.hpp"

namespace endotrace {

using ZeroDivisorError = NotInvertibleError<Fp2Field>;

class QuotientRing {
 public:
  // ell is the odd prime the modulus belongs to (used to reduce scalars).
  QuotientRing(const Fp2Curve& E, Fp2Poly h, int ell);

  const Fp2Field& field() const { return E_.field(); }
  const PolyRing<Fp2Field>& poly_ring() const { return R_; }
  const Fp2Poly& h() const { return mod_.poly(); }
  const Fp2Curve& curve() const { return E_; }
  int ell() const { return ell_; }
  std::uint64_t id() const { return id_; }
  const Fp2Poly& f() const { return f_; }
  const Fp2Poly& f_inv() const { return f_inv_; }

  Fp2Poly reduce(const Fp2Poly& a) const { return mod_.reduce(a); }
  Fp2Poly mul(const Fp2Poly& a, const Fp2Poly& b) const { return mod_.mul(a, b); }
  Fp2Poly sqr(const Fp2Poly& a) const { return mod_.sqr(a); }
  Fp2Poly add(const Fp2Poly& a, const Fp2Poly& b) const { return R_.add(a, b); }
  Fp2Poly sub(const Fp2Poly& a, const Fp2Poly& b) const { return R_.sub(a, b); }
  Fp2Poly scale(const Fp2Poly& a, const Fp2Elt& k) const { return R_.scale(a, k); }
  // Throws ZeroDivisorError(code, gcd(a, h)) when a is not a unit.
  Fp2Poly inv(const Fp2Poly& a, ErrorCode code) const { return mod_.inv(a, code); }
  // a(b(x)) mod h
  Fp2Poly compose(const Fp2Poly& a, const Fp2Poly& b) const;

 private:
  Fp2Curve E_;
  PolyRing<Fp2Field> R_;
  Modulus<Fp2Field> mod_;
  int ell_;
  std::uint64_t id_;
  Fp2Poly f_, f_inv_;
};

struct RestrictedPoint {
  std::uint64_t ring_id = 0;
  bool zero = true;
  Fp2Poly a, b;  // the point (a(x), b(x) y), reduced mod h

  bool operator==(const RestrictedPoint& o) const {
    if (ring_id != o.ring_id || zero != o.zero) return false;
    return zero || (a == o.a && b == o.b);
  }
};

RestrictedPoint restricted_zero(const QuotientRing& ring);
RestrictedPoint restrict_identity(const QuotientRing& ring);
RestrictedPoint restricted_neg(const QuotientRing& ring, const RestrictedPoint& P);
// Group law on the target curve E' (only its A coefficient is used).
RestrictedPoint restricted_add(const QuotientRing& ring, const Fp2Curve& target, const RestrictedPoint& P,
                               const RestrictedPoint& Q);
RestrictedPoint restricted_double(const QuotientRing& ring, const Fp2Curve& target, const RestrictedPoint& P);
RestrictedPoint restricted_scalar_mul(const QuotientRing& ring, const Fp2Curve& target, long c,
                                      const RestrictedPoint& P);

// (step o phi)_h from phi_h.
RestrictedPoint evaluate_step(const QuotientRing& ring, const IsogenyStep& step, const RestrictedPoint& P);

// (chain o phi)_h from phi_h using projective coordinates and two
// inversions at the end. With no start point phi is the identity.
RestrictedPoint restrict_chain(const QuotientRing& ring, const Chain& chain, const RestrictedPoint& start);
RestrictedPoint restrict_chain(const QuotientRing& ring, const Chain& chain);

}  // namespace endotrace
