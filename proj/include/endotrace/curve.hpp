#pragma once

// Short Weierstrass curves y^2 = x^3 + Ax + B over any field type.
//
// Point arithmetic optionally works on the scaled model g*y^2 = x^3+Ax+B.
// For a non-square g this is the quadratic twist written over the same
// field; a point (x0, 1) with g = f(x0) then stands for (x0, sqrt(f(x0)))
// without adjoining the square root. All formulas below take g explicitly
// and default to the ordinary model g = 1.

#include <functional>
#include <map>
#include <optional>

#include "endotrace/field.hpp"
#include "endotrace/poly.hpp"

namespace endotrace {

template <class F>
struct Point {
  using Elt = typename F::Elt;
  bool inf = true;
  Elt x{};
  Elt y{};

  static Point infinity() { return {}; }
  static Point affine(Elt x, Elt y) { return {false, std::move(x), std::move(y)}; }
  bool operator==(const Point& o) const {
    if (inf || o.inf) return inf == o.inf;
    return x == o.x && y == o.y;
  }
};

template <class F>
class Curve {
 public:
  using Elt = typename F::Elt;
  using Pt = Point<F>;

  Curve(const F& f, Elt A, Elt B) : f_(f), A_(std::move(A)), B_(std::move(B)) {
    if (f_.is_zero(discriminant_part()))
      throw Error(ErrorCode::SingularCurve, "4A^3 + 27B^2 = 0");
  }

  const F& field() const { return f_; }
  const Elt& A() const { return A_; }
  const Elt& B() const { return B_; }

  bool same_coefficients(const Curve& o) const { return f_.equal(A_, o.A_) && f_.equal(B_, o.B_); }

  Elt rhs(const Elt& x) const { return f_.add(f_.mul(f_.add(f_.sqr(x), A_), x), B_); }
  Poly<F> rhs_poly() const { return PolyRing<F>(f_).make({B_, A_, f_.zero(), f_.one()}); }

  Elt j_invariant() const {
    Elt a3 = f_.mul(f_.from_int(4), f_.mul(f_.sqr(A_), A_));
    return f_.mul(f_.from_int(1728), f_.mul(a3, f_.inv(discriminant_part())));
  }

  bool on_curve(const Pt& P, const Elt& g) const {
    return P.inf || f_.equal(f_.mul(g, f_.sqr(P.y)), rhs(P.x));
  }
  bool on_curve(const Pt& P) const { return on_curve(P, f_.one()); }

  Pt neg(const Pt& P) const { return P.inf ? P : Pt::affine(P.x, f_.neg(P.y)); }

  Pt dbl(const Pt& P, const Elt& g) const {
    if (P.inf || f_.is_zero(P.y)) return Pt::infinity();
    Elt num = f_.add(f_.mul(f_.from_int(3), f_.sqr(P.x)), A_);
    Elt lam = f_.mul(num, f_.inv(f_.mul(f_.from_int(2), f_.mul(g, P.y))));
    Elt x3 = f_.sub(f_.mul(g, f_.sqr(lam)), f_.add(P.x, P.x));
    Elt y3 = f_.sub(f_.mul(lam, f_.sub(P.x, x3)), P.y);
    return Pt::affine(x3, y3);
  }
  Pt dbl(const Pt& P) const { return dbl(P, f_.one()); }

  Pt add(const Pt& P, const Pt& Q, const Elt& g) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (f_.equal(P.x, Q.x)) {
      if (f_.equal(P.y, Q.y)) return dbl(P, g);
      return Pt::infinity();
    }
    Elt lam = f_.mul(f_.sub(Q.y, P.y), f_.inv(f_.sub(Q.x, P.x)));
    Elt x3 = f_.sub(f_.sub(f_.mul(g, f_.sqr(lam)), P.x), Q.x);
    Elt y3 = f_.sub(f_.mul(lam, f_.sub(P.x, x3)), P.y);
    return Pt::affine(x3, y3);
  }
  Pt add(const Pt& P, const Pt& Q) const { return add(P, Q, f_.one()); }
  Pt sub(const Pt& P, const Pt& Q, const Elt& g) const { return add(P, neg(Q), g); }

  Pt mul(const BigInt& m, const Pt& P, const Elt& g) const {
    if (m < 0) return mul(BigInt(-m), neg(P), g);
    Pt r = Pt::infinity();
    auto bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = dbl(r, g);
      if (mpz_tstbit(m.get_mpz_t(), i)) r = add(r, P, g);
    }
    return r;
  }
  Pt mul(const BigInt& m, const Pt& P) const { return mul(m, P, f_.one()); }
  Pt mul(long m, const Pt& P) const { return mul(BigInt(m), P, f_.one()); }

  // Curve reached by (x, y) -> (u^-2 x, u^-3 y).
  Curve transport(const Elt& u) const {
    Elt ui = f_.inv(u);
    Elt ui2 = f_.sqr(ui);
    Elt ui4 = f_.sqr(ui2);
    return Curve(f_, f_.mul(ui4, A_), f_.mul(f_.mul(ui4, ui2), B_));
  }
  Pt transport_point(const Elt& u, const Pt& P) const {
    if (P.inf) return P;
    Elt ui = f_.inv(u);
    Elt ui2 = f_.sqr(ui);
    return Pt::affine(f_.mul(ui2, P.x), f_.mul(f_.mul(ui2, ui), P.y));
  }

  // Uniformly random x with f(x) square, then a random sign for y.
  Pt random_point(Rng& rng) const {
    for (;;) {
      Elt x = f_.random(rng);
      Elt y;
      if (field_sqrt(f_, rhs(x), y, rng())) {
        if (rng() & 1) y = f_.neg(y);
        return Pt::affine(x, y);
      }
    }
  }

 private:
  Elt discriminant_part() const {
    Elt a3 = f_.mul(f_.sqr(A_), A_);
    return f_.add(f_.mul(f_.from_int(4), a3), f_.mul(f_.from_int(27), f_.sqr(B_)));
  }

  F f_;
  Elt A_, B_;
};

// Odd-index division polynomial psi_l as a polynomial in x, of degree
// (l^2 - 1)/2. Internally g_n = psi_n for odd n and psi_n / y for even n.
template <class F>
Poly<F> division_polynomial(const Curve<F>& E, int ell) {
  if (ell < 3 || ell % 2 == 0) throw Error(ErrorCode::InvalidArgument, "division polynomial needs odd l >= 3");
  const F& f = E.field();
  PolyRing<F> R(f);
  using P = Poly<F>;
  const auto& A = E.A();
  const auto& B = E.B();
  auto k = [&](long v) { return f.from_int(v); };
  P fE = E.rhs_poly();
  P f2 = R.sqr(fE);
  std::map<int, P> memo;
  memo[0] = P{};
  memo[1] = R.one();
  memo[2] = R.constant(k(2));
  memo[3] = R.make({f.neg(f.sqr(A)), f.mul(k(12), B), f.mul(k(6), A), f.zero(), k(3)});
  {
    auto A2 = f.sqr(A), A3 = f.mul(A2, A);
    P inner = R.make({f.sub(f.neg(f.mul(k(8), f.sqr(B))), A3), f.neg(f.mul(k(4), f.mul(A, B))),
                      f.neg(f.mul(k(5), A2)), f.mul(k(20), B), f.mul(k(5), A), f.zero(), f.one()});
    memo[4] = R.scale(inner, k(4));
  }
  auto half = f.inv(k(2));
  std::function<const P&(int)> g = [&](int n) -> const P& {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    int m = n / 2;
    P val;
    if (n % 2 == 1) {
      P t1 = R.mul(g(m + 2), R.mul(R.sqr(g(m)), g(m)));
      P t2 = R.mul(g(m - 1), R.mul(R.sqr(g(m + 1)), g(m + 1)));
      if (m % 2 == 0) t1 = R.mul(f2, t1);
      else t2 = R.mul(f2, t2);
      val = R.sub(t1, t2);
    } else {
      P t1 = R.mul(g(m + 2), R.sqr(g(m - 1)));
      P t2 = R.mul(g(m - 2), R.sqr(g(m + 1)));
      val = R.scale(R.mul(g(m), R.sub(t1, t2)), half);
    }
    return memo.emplace(n, std::move(val)).first->second;
  };
  return g(ell);
}

// ---------------------------------------------------------------------------
// Supersingular curves over Fp2.

// #E(Fp2) for supersingular E with j not in {0, 1728}: (p+1)^2 or (p-1)^2,
// decided by which of [p+1], [p-1] kills random points. Three agreeing
// samples are required.
template <class F>
BigInt group_order_supersingular(const Curve<F>& E, std::uint64_t seed = 0) {
  const F& f = E.field();
  BigInt p(static_cast<unsigned long>(f.characteristic()));
  Rng rng(seed ^ 0x6f72646572ULL);
  int plus = 0, minus = 0;
  for (int attempt = 0; attempt < 64 && plus + minus < 3; ++attempt) {
    auto P = E.random_point(rng);
    bool kp = E.mul(BigInt(p + 1), P).inf;
    bool km = E.mul(BigInt(p - 1), P).inf;
    if (kp && km) continue;  // order divides 2, no information
    if (kp) ++plus;
    else if (km) ++minus;
    else throw Error(ErrorCode::Undecided, "random point killed by neither p+1 nor p-1");
    if (plus && minus) throw Error(ErrorCode::Undecided, "samples disagree on p+1 versus p-1");
  }
  if (plus + minus < 3) throw Error(ErrorCode::Undecided, "not enough informative samples");
  BigInt n = plus ? BigInt(p + 1) : BigInt(p - 1);
  return n * n;
}

template <class F>
bool is_supersingular(const Curve<F>& E, int samples = 8, std::uint64_t seed = 0) {
  const F& f = E.field();
  BigInt p(static_cast<unsigned long>(f.characteristic()));
  Rng rng(seed ^ 0x73757065ULL);
  bool all_plus = true, all_minus = true, informative = false;
  for (int i = 0; i < samples; ++i) {
    auto P = E.random_point(rng);
    bool kp = E.mul(BigInt(p + 1), P).inf;
    bool km = E.mul(BigInt(p - 1), P).inf;
    all_plus = all_plus && kp;
    all_minus = all_minus && km;
    if (kp != km) informative = true;
  }
  return informative && (all_plus || all_minus);
}

// u with (x, y) -> (u^-2 x, u^-3 y) mapping E onto E2, i.e. A2 = u^-4 A and
// B2 = u^-6 B. nullopt when E2 is only isomorphic to the quadratic twist
// over this field. Of the two solutions +-u the canonically smaller one is
// returned.
template <class F>
std::optional<typename F::Elt> isomorphism_u(const Curve<F>& E, const Curve<F>& E2) {
  const F& f = E.field();
  if (!f.equal(E.j_invariant(), E2.j_invariant()))
    throw Error(ErrorCode::JInvariantMismatch, "curves have different j-invariants");
  if (f.is_zero(E.A()) || f.is_zero(E.B()))
    throw Error(ErrorCode::InvalidArgument, "isomorphism_u requires j not in {0, 1728}");
  // u^-2 = (B2/B) / (A2/A)
  auto r = f.mul(f.mul(E2.B(), E.A()), f.inv(f.mul(E.B(), E2.A())));
  typename F::Elt u;
  if (!field_sqrt(f, f.inv(r), u)) return std::nullopt;
  return u;
}

}  // namespace endotrace
