#include "endotrace/isogeny.hpp"

#include <string>

namespace endotrace {

namespace {

Fp2Elt coeff(const Fp2Field& f, const Fp2Poly& a, long i) {
  return (i >= 0 && i < static_cast<long>(a.c.size())) ? a.c[static_cast<std::size_t>(i)] : f.zero();
}

}  // namespace

IsogenyStep make_step(const Fp2Curve& domain, const Fp2Curve& codomain, Fp2Poly u, Fp2Poly v, const Fp2Elt& c) {
  const Fp2Field& f = domain.field();
  PolyRing<Fp2Field> R(f);
  if (u.is_zero() || v.is_zero()) throw Error(ErrorCode::InvalidKernel, "isogeny with zero numerator or denominator");
  Fp2Poly num = R.sub(R.mul(R.deriv(u), v), R.mul(u, R.deriv(v)));
  Fp2Poly den = R.sqr(v);
  Fp2Poly g = R.gcd(num, den);
  Fp2Poly s = R.div(num, g), t = R.div(den, g);
  auto li = f.inv(t.lead());
  s = R.scale(s, li);
  t = R.scale(t, li);
  Fp2Poly h = R.monic(R.div(v, R.gcd(v, R.deriv(v))));
  return IsogenyStep{domain, codomain, std::move(u), std::move(v), std::move(s), std::move(t), c, std::move(h)};
}

IsogenyStep velu_from_kernel(const Fp2Curve& E, const Fp2Poly& h_in) {
  const Fp2Field& f = E.field();
  PolyRing<Fp2Field> R(f);
  if (h_in.deg() < 1) throw Error(ErrorCode::InvalidKernel, "kernel polynomial of degree < 1");
  Fp2Poly h = R.monic(h_in);
  const auto& A = E.A();
  const auto& B = E.B();
  auto k = [&](long v) { return f.from_int(v); };

  Fp2Poly u, v;
  Fp2Elt A2, B2;
  if (h.deg() == 1 && f.is_zero(E.rhs(f.neg(h.c[0])))) {
    // Kernel {O, (x0, 0)}.
    Fp2Elt x0 = f.neg(h.c[0]);
    Fp2Elt T = f.add(f.mul(k(3), f.sqr(x0)), A);
    u = R.add(R.mul(R.x(), h), R.constant(T));
    v = h;
    A2 = f.sub(A, f.mul(k(5), T));
    B2 = f.sub(B, f.mul(k(7), f.mul(x0, T)));
  } else {
    long n = h.deg();
    long ell = 2 * n + 1;
    Fp2Elt e1 = f.neg(coeff(f, h, n - 1));
    Fp2Elt e2 = coeff(f, h, n - 2);
    Fp2Elt e3 = f.neg(coeff(f, h, n - 3));
    Fp2Elt p1 = e1;
    Fp2Elt p2 = f.sub(f.mul(e1, p1), f.mul(k(2), e2));
    Fp2Elt p3 = f.add(f.sub(f.mul(e1, p2), f.mul(e2, p1)), f.mul(k(3), e3));
    Fp2Elt nn = k(n);
    Fp2Elt tsum = f.add(f.mul(k(6), p2), f.mul(k(2), f.mul(A, nn)));
    Fp2Elt wsum = f.add(f.add(f.mul(k(10), p3), f.mul(k(6), f.mul(A, p1))), f.mul(k(4), f.mul(B, nn)));
    A2 = f.sub(A, f.mul(k(5), tsum));
    B2 = f.sub(B, f.mul(k(7), wsum));

    Fp2Poly fx = E.rhs_poly();
    Fp2Poly dfx = R.deriv(fx);
    Fp2Poly d1 = R.deriv(h), d2 = R.deriv(d1);
    Fp2Elt sigma = f.mul(k(2), p1);
    Fp2Poly lin = R.make({f.neg(sigma), k(ell)});
    Fp2Poly hh = R.sqr(h);
    u = R.mul(lin, hh);
    u = R.sub(u, R.scale(R.mul(dfx, R.mul(d1, h)), k(2)));
    u = R.sub(u, R.scale(R.mul(fx, R.sub(R.mul(d2, h), R.sqr(d1))), k(4)));
    v = hh;
  }
  std::optional<Fp2Curve> codomain;
  try {
    codomain.emplace(f, A2, B2);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidKernel, "Velu codomain is singular");
  }
  IsogenyStep st = make_step(E, *codomain, std::move(u), std::move(v), f.one());
  if (!step_map_identity_holds(st)) throw Error(ErrorCode::InvalidKernel, "kernel polynomial does not define an isogeny");
  return st;
}

bool step_map_identity_holds(const IsogenyStep& st) {
  const Fp2Field& f = st.domain.field();
  PolyRing<Fp2Field> R(f);
  Fp2Poly v2 = R.sqr(st.v);
  Fp2Poly v3 = R.mul(v2, st.v);
  Fp2Poly lhs = R.scale(R.mul(R.mul(R.sqr(st.s), st.domain.rhs_poly()), v3), f.sqr(st.c));
  Fp2Poly cub = R.mul(R.sqr(st.u), st.u);
  cub = R.add(cub, R.scale(R.mul(st.u, v2), st.codomain.A()));
  cub = R.add(cub, R.scale(v3, st.codomain.B()));
  return lhs == R.mul(R.sqr(st.t), cub);
}

Fp2Elt normalization_constant(const IsogenyStep& st) {
  const Fp2Field& f = st.domain.field();
  return f.mul(f.mul(st.c, st.s.lead()), f.inv(st.u.lead()));
}

IsogenyStep post_compose_iso(const IsogenyStep& st, const Fp2Elt& k) {
  const Fp2Field& f = st.domain.field();
  PolyRing<Fp2Field> R(f);
  Fp2Elt ki = f.inv(k);
  Fp2Elt ki2 = f.sqr(ki);
  IsogenyStep out = st;
  out.codomain = st.codomain.transport(k);
  out.u = R.scale(st.u, ki2);
  out.s = R.scale(st.s, ki2);
  out.c = f.mul(st.c, ki);
  return out;
}

void chain_validate(const Chain& chain, bool require_endomorphism) {
  const Fp2Curve* prev = &chain.curve;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& st = chain.steps[i];
    if (!(st.domain.field() == chain.field()))
      throw Error(ErrorCode::FieldMismatch, "step " + std::to_string(i) + " is over a different field");
    if (!st.domain.same_coefficients(*prev))
      throw Error(ErrorCode::BrokenChain, "step " + std::to_string(i) + " domain does not match the previous codomain");
    if (st.u.deg() < 1 || st.v.deg() != st.u.deg() - 1 || st.t.is_zero() || st.s.is_zero() ||
        st.domain.field().is_zero(st.c))
      throw Error(ErrorCode::BrokenChain, "step " + std::to_string(i) + " is not in standard form");
    prev = &st.codomain;
  }
  if (require_endomorphism && !prev->same_coefficients(chain.curve))
    throw Error(ErrorCode::NotEndomorphism, "last codomain differs from the starting curve");
}

BigInt chain_degree(const Chain& chain) {
  BigInt d = 1;
  for (const auto& st : chain.steps) d *= st.degree();
  return d;
}

// ---------------------------------------------------------------------------

TorsionSetup make_torsion_setup(const Fp2Curve& E, int ell, const BigInt& group_order, Rng& rng) {
  const Fp2Field& f = E.field();
  BigInt p(static_cast<unsigned long>(f.characteristic()));
  if (ell < 3 || ell % 2 == 0 || !is_probable_prime(BigInt(ell)))
    throw Error(ErrorCode::InvalidArgument, "l must be an odd prime");
  if (p == ell) throw Error(ErrorCode::InvalidArgument, "l must differ from p");
  BigInt s0;
  if (group_order == (p + 1) * (p + 1)) s0 = -p;
  else if (group_order == (p - 1) * (p - 1)) s0 = p;
  else throw Error(ErrorCode::InvalidArgument, "group order is not (p+1)^2 or (p-1)^2");

  long r = mpz_fdiv_ui(s0.get_mpz_t(), static_cast<unsigned long>(ell));
  long acc = r;
  int k = 1;
  while (acc != 1 && acc != ell - 1) {
    acc = acc * r % ell;
    ++k;
  }
  bool square_side = acc == 1;
  BigInt s;
  mpz_pow_ui(s.get_mpz_t(), s0.get_mpz_t(), static_cast<unsigned long>(k));
  BigInt M = square_side ? BigInt(s - 1) : BigInt(s + 1);
  M = abs(M);
  while (mpz_divisible_ui_p(M.get_mpz_t(), static_cast<unsigned long>(ell))) M /= ell;

  PolyRing<Fp2Field> R(f);
  Fp2Poly m = random_irreducible(R, k, rng);
  return TorsionSetup{Fp2Ext(f, m), ell, square_side, M};
}

ScaledPoint random_order_ell_point(const Fp2Curve& E, const TorsionSetup& setup, Rng& rng) {
  const Fp2Ext& K = setup.K;
  Curve<Fp2Ext> EK = lift_curve(K, E);
  BigInt L(setup.ell);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto x = K.random(rng);
    auto g = EK.rhs(x);
    if (K.is_zero(g) || is_square(K, g) != setup.square_side) continue;
    auto P = EK.mul(setup.cofactor, Point<Fp2Ext>::affine(x, K.one()), g);
    if (P.inf) continue;
    for (;;) {
      auto Q = EK.mul(L, P, g);
      if (Q.inf) break;
      P = Q;
    }
    return {P, g};
  }
  throw Error(ErrorCode::GiveUp, "no point of order l found");
}

Fp2Poly kernel_polynomial_of_point(const Fp2Curve& E, const TorsionSetup& setup, const ScaledPoint& sp) {
  const Fp2Ext& K = setup.K;
  Curve<Fp2Ext> EK = lift_curve(K, E);
  PolyRing<Fp2Ext> RK(K);
  Poly<Fp2Ext> h = RK.one();
  auto Q = sp.P;
  for (int i = 1; i <= (setup.ell - 1) / 2; ++i) {
    if (Q.inf) throw Error(ErrorCode::InvalidKernel, "point order is smaller than l");
    h = RK.mul(h, RK.make({K.neg(Q.x), K.one()}));
    Q = EK.add(Q, sp.P, sp.g);
  }
  std::vector<Fp2Elt> out;
  for (const auto& cf : h.c) {
    if (!K.in_base(cf)) throw Error(ErrorCode::CoefficientLeak, "kernel polynomial is not defined over Fp2");
    out.push_back(cf[0]);
  }
  return PolyRing<Fp2Field>(E.field()).make(std::move(out));
}

std::vector<Fp2Poly> kernel_polynomials(const Fp2Curve& E, int ell, int count, std::uint64_t seed,
                                        const BigInt& group_order) {
  if (count != 1 && count != 2) throw Error(ErrorCode::InvalidArgument, "count must be 1 or 2");
  Rng rng(seed ^ (0x6b65726eULL + static_cast<std::uint64_t>(ell)));
  TorsionSetup setup = make_torsion_setup(E, ell, group_order, rng);
  std::vector<Fp2Poly> out;
  out.push_back(kernel_polynomial_of_point(E, setup, random_order_ell_point(E, setup, rng)));
  for (int attempt = 0; count == 2 && out.size() < 2; ++attempt) {
    if (attempt >= 64) throw Error(ErrorCode::GiveUp, "no second kernel found");
    auto h = kernel_polynomial_of_point(E, setup, random_order_ell_point(E, setup, rng));
    if (!(h == out[0])) out.push_back(std::move(h));
  }
  return out;
}

std::vector<Fp2Poly> kernel_polynomials(const Fp2Curve& E, int ell, int count, std::uint64_t seed) {
  return kernel_polynomials(E, ell, count, seed, group_order_supersingular(E, seed));
}

}  // namespace endotrace
