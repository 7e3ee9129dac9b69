#include "endotrace/trace.hpp"

#include <chrono>
#include <functional>
#include <unordered_map>

#include "endotrace/homres.hpp"

namespace endotrace {

namespace {

BigInt characteristic(const Chain& chain) { return BigInt(static_cast<unsigned long>(chain.field().characteristic())); }

BigInt mod_nonneg(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

long degree_mod(const Chain& chain, long ell) {
  BigInt d = mod_nonneg(chain_degree(chain), BigInt(ell));
  return d.get_si();
}

// c with (alpha^2 + [d]) = [c] alpha on the ring, scanning c = 0 .. l-1.
long scan_restricted(const QuotientRing& ring, const Chain& chain, const RestrictedPoint& alpha) {
  const auto& E = chain.curve;
  long d = degree_mod(chain, ring.ell());
  auto sq = restrict_chain(ring, chain, alpha);
  auto lhs = restricted_add(ring, E, sq, restricted_scalar_mul(ring, E, d, restrict_identity(ring)));
  auto acc = restricted_zero(ring);
  for (long c = 0; c < ring.ell(); ++c) {
    if (acc == lhs) return c;
    acc = restricted_add(ring, E, acc, alpha);
  }
  throw Error(ErrorCode::NoMatch, "no c in [0, l) satisfies the characteristic equation");
}

std::optional<long> schoof_on(const Chain& chain, int ell, const Fp2Poly& m) {
  const auto& R = PolyRing<Fp2Field>(chain.field());
  try {
    QuotientRing ring(chain.curve, m, ell);
    auto alpha = restrict_chain(ring, chain);
    if (alpha.zero) return std::nullopt;
    return scan_restricted(ring, chain, alpha);
  } catch (const ZeroDivisorError& e) {
    Fp2Poly g = R.monic(e.gcd());
    if (g.deg() < 1 || g.deg() >= m.deg()) throw;
    auto r1 = schoof_on(chain, ell, g);
    auto r2 = schoof_on(chain, ell, R.div(m, g));
    if (r1 && r2 && *r1 != *r2)
      throw Error(ErrorCode::InconsistentResidues, "factors of the division polynomial give different residues");
    return r1 ? r1 : r2;
  }
}

template <class F>
using Pt = Point<F>;

// Smallest e' with [l^e'] Q = O; Q must have l-power order.
template <class F>
int ell_power_order(const Curve<F>& E, Pt<F> Q, long ell, int cap) {
  int e = 0;
  while (!Q.inf) {
    if (e > cap) throw Error(ErrorCode::WrongOrderStructure, "point order is not a power of l");
    Q = E.mul(BigInt(ell), Q);
    ++e;
  }
  return e;
}

// Discrete log of H to base gamma of prime order l, baby-step giant-step.
long bsgs(const Fp2Curve& E, const Pt<Fp2Field>& gamma, const Pt<Fp2Field>& H, long ell) {
  if (H.inf) return 0;
  long m = 1;
  while (m * m < ell) ++m;
  std::unordered_map<Fp2Elt, std::vector<std::pair<long, Fp2Elt>>, Fp2EltHash> baby;
  auto P = Pt<Fp2Field>::infinity();
  for (long j = 0; j < m; ++j) {
    if (!P.inf) baby[P.x].push_back({j, P.y});
    P = E.add(P, gamma);
  }
  auto giant = E.neg(E.mul(BigInt(m), gamma));
  auto cur = H;
  for (long i = 0; i <= m; ++i) {
    if (cur.inf) return (i * m) % ell;
    auto it = baby.find(cur.x);
    if (it != baby.end())
      for (const auto& [j, y] : it->second)
        if (y == cur.y) return (i * m + j) % ell;
    cur = E.add(cur, giant);
  }
  throw Error(ErrorCode::DlogFailure, "point is not in the cyclic group");
}

// Pohlig-Hellman in a cyclic group of order l^e.
BigInt dlog_prime_power(const Fp2Curve& E, const Pt<Fp2Field>& Q, const Pt<Fp2Field>& R, long ell, int e) {
  BigInt L(ell), x = 0, lk = 1;
  BigInt top;
  mpz_pow_ui(top.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(e - 1));
  auto gamma = E.mul(top, Q);
  for (int k = 0; k < e; ++k) {
    BigInt s;
    mpz_pow_ui(s.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(e - 1 - k));
    auto H = E.mul(s, E.sub(R, E.mul(x, Q), E.field().one()));
    x += lk * bsgs(E, gamma, H, ell);
    lk *= L;
  }
  if (!(E.mul(x, Q) == R)) throw Error(ErrorCode::DlogFailure, "discrete logarithm does not verify");
  return x;
}

int valuation(BigInt n, long ell) {
  int e = 0;
  while (n != 0 && n % ell == 0) {
    n /= ell;
    ++e;
  }
  return e;
}

// c with alpha^2(P) + [d]P = [c] alpha(P), for P of order l on the scaled model.
template <class K>
long scan_points(const Curve<K>& EK, const Chain& chain, const Pt<K>& P, const typename K::Elt& g, long ell) {
  long d = degree_mod(chain, ell);
  auto aP = chain.evaluate(EK.field(), P);
  auto lhs = EK.add(chain.evaluate(EK.field(), aP), EK.mul(BigInt(d), P, g), g);
  auto acc = Pt<K>::infinity();
  for (long c = 0; c < ell; ++c) {
    if (acc == lhs) return c;
    acc = EK.add(acc, aP, g);
  }
  throw Error(ErrorCode::NoMatch, "no c in [0, l) satisfies the characteristic equation");
}

Fp2Ext torsion_field(const Fp2Field& f, const Fp2Poly& factor) {
  PolyRing<Fp2Field> R(f);
  return Fp2Ext(f, R.monic(factor));
}

bool is_odd_prime(long n) {
  if (n < 3 || n % 2 == 0) return false;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace

const char* method_name(TraceMethod m) {
  switch (m) {
    case TraceMethod::Schoof: return "schoof";
    case TraceMethod::Sea: return "sea";
    case TraceMethod::SeaP: return "sea+p";
    case TraceMethod::SeaPPoints: return "sea+p+points";
  }
  return "?";
}

std::optional<TraceMethod> parse_method(const std::string& s) {
  for (auto m : {TraceMethod::Schoof, TraceMethod::Sea, TraceMethod::SeaP, TraceMethod::SeaPPoints})
    if (s == method_name(m)) return m;
  return std::nullopt;
}

long trace_mod_ell(const Chain& chain, int ell, std::uint64_t seed, const BigInt& group_order) {
  if (!is_odd_prime(ell)) throw Error(ErrorCode::InvalidArgument, "l must be an odd prime");
  const auto& E = chain.curve;
  auto hs = kernel_polynomials(E, ell, 1, seed, group_order);
  for (int attempt = 0; attempt < 2; ++attempt) {
    QuotientRing ring(E, hs.back(), ell);
    auto alpha = restrict_chain(ring, chain);
    if (!alpha.zero) return scan_restricted(ring, chain, alpha);
    if (attempt == 0) hs = kernel_polynomials(E, ell, 2, seed, group_order);
  }
  // alpha kills two independent kernels, hence all of E[l]
  return 0;
}

long trace_mod_ell(const Chain& chain, int ell, std::uint64_t seed) {
  return trace_mod_ell(chain, ell, seed, group_order_supersingular(chain.curve, seed));
}

long trace_schoof_mod_ell(const Chain& chain, int ell) {
  if (!is_odd_prime(ell)) throw Error(ErrorCode::InvalidArgument, "l must be an odd prime");
  PolyRing<Fp2Field> R(chain.field());
  auto r = schoof_on(chain, ell, R.monic(division_polynomial(chain.curve, ell)));
  return r.value_or(0);
}

Fp2Elt differential_scalar(const Chain& chain) {
  const auto& f = chain.field();
  Fp2Elt a = f.one();
  for (const auto& st : chain.steps) a = f.mul(a, f.inv(normalization_constant(st)));
  return a;
}

std::uint64_t trace_mod_p(const Chain& chain) {
  const auto& f = chain.field();
  Fp2Elt a = differential_scalar(chain);
  // a + a^p
  std::vector<std::uint64_t> c;
  f.coords(f.add(a, f.conj(a)), c);
  if (c[1] != 0) throw Error(ErrorCode::InconsistentResidues, "a + a^p is not in Fp");
  return c[0];
}

PointResidue trace_mod_prime_power_points(const Chain& chain, long ell, std::uint64_t seed, const BigInt& group_order) {
  const auto& E = chain.curve;
  BigInt p = characteristic(chain);
  BigInt n = (group_order == (p + 1) * (p + 1)) ? BigInt(p + 1) : BigInt(p - 1);
  if (n * n != group_order) throw Error(ErrorCode::WrongOrderStructure, "group order is not (p -+ 1)^2");
  int e = valuation(n, ell);
  if (ell < 3 || e == 0) throw Error(ErrorCode::WrongOrderStructure, "l does not divide the group exponent");
  BigInt le;
  mpz_pow_ui(le.get_mpz_t(), BigInt(ell).get_mpz_t(), static_cast<unsigned long>(e));
  BigInt cof = n / le, top = le / ell;
  BigInt deg = chain_degree(chain);
  Rng rng(seed ^ (0x706f696e74ULL + static_cast<std::uint64_t>(ell)));

  auto full_order_point = [&] {
    for (int i = 0; i < 256; ++i) {
      auto P = E.mul(cof, E.random_point(rng));
      if (!E.mul(top, P).inf) return P;
    }
    throw Error(ErrorCode::GiveUp, "no point of order l^e found");
  };

  PointResidue best{0, 1};
  std::optional<Pt<Fp2Field>> killed;
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto P = full_order_point();
    auto Q = chain.evaluate(P);
    if (Q.inf) {
      auto low = E.mul(top, P);
      if (killed) {
        // independent of the earlier killed point?
        auto prev = E.mul(top, *killed);
        bool dependent = false;
        auto m = Pt<Fp2Field>::infinity();
        for (long k = 0; k < ell && !dependent; ++k, m = E.add(m, prev)) dependent = (m == low);
        if (!dependent) return PointResidue{0, BigInt(ell)};
      } else {
        killed = P;
      }
      continue;
    }
    int eq = ell_power_order(E, Q, ell, e);
    BigInt mod;
    mpz_pow_ui(mod.get_mpz_t(), BigInt(ell).get_mpz_t(), static_cast<unsigned long>(eq));
    if (mod <= best.modulus) continue;
    auto Rpt = E.add(chain.evaluate(Q), E.mul(mod_nonneg(deg, le), P));
    best = PointResidue{dlog_prime_power(E, Q, Rpt, ell, eq), mod};
    if (eq == e) break;
  }
  if (best.modulus == 1) {
    // every sampled point was killed; search for an independent one
    for (int i = 0; i < 64; ++i) {
      auto P = full_order_point();
      if (!chain.evaluate(P).inf) return trace_mod_prime_power_points(chain, ell, seed + 1, group_order);
      auto low = E.mul(top, P), prev = E.mul(top, *killed);
      bool dependent = false;
      auto m = Pt<Fp2Field>::infinity();
      for (long k = 0; k < ell && !dependent; ++k, m = E.add(m, prev)) dependent = (m == low);
      if (!dependent) return PointResidue{0, BigInt(ell)};
    }
    throw Error(ErrorCode::GiveUp, "could not certify that alpha kills E[l]");
  }
  return best;
}

long trace_oracle_bruteforce(const Chain& chain, int ell, std::uint64_t seed) {
  if (!is_odd_prime(ell) || ell > 13) throw Error(ErrorCode::InvalidArgument, "oracle supports odd primes l <= 13");
  const auto& E = chain.curve;
  const auto& f = chain.field();
  PolyRing<Fp2Field> R(f);
  auto factors = poly_factor(R, division_polynomial(E, ell), seed);
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.poly.deg() < b.poly.deg(); });

  // (x, 1) on g y^2 = f(x) with x a root of `factor`
  auto point_on = [&](const Fp2Poly& factor, auto&& use) {
    Fp2Ext K = torsion_field(f, factor);
    auto EK = lift_curve(K, E);
    auto x = K.generator();
    auto g = EK.rhs(x);
    return use(K, EK, Pt<Fp2Ext>::affine(x, K.one()), g);
  };

  std::vector<Fp2Ext::Elt> kernel_x;
  std::optional<long> first = point_on(factors[0].poly, [&](const Fp2Ext& K, const Curve<Fp2Ext>& EK,
                                                             const Pt<Fp2Ext>& P, const Fp2Ext::Elt& g)
                                                             -> std::optional<long> {
    if (chain.evaluate(K, P).inf) {
      for (auto Q = P; !Q.inf; Q = EK.add(Q, P, g)) kernel_x.push_back(Q.x);
      return std::nullopt;
    }
    return scan_points(EK, chain, P, g, ell);
  });
  if (first) return *first;

  for (std::size_t i = 1; i < factors.size(); ++i) {
    const auto& h = factors[i].poly;
    bool in_kernel = false;
    Fp2Ext K0 = torsion_field(f, factors[0].poly);
    for (const auto& x : kernel_x) in_kernel = in_kernel || K0.is_zero(eval_lifted(K0, h, x));
    if (in_kernel) continue;
    return point_on(h, [&](const Fp2Ext& K, const Curve<Fp2Ext>& EK, const Pt<Fp2Ext>& P, const Fp2Ext::Elt& g) {
      if (chain.evaluate(K, P).inf) return 0L;
      return scan_points(EK, chain, P, g, ell);
    });
  }
  throw Error(ErrorCode::InvalidKernel, "division polynomial has no factor outside the first kernel");
}

BigInt combine_residues(const std::vector<Residue>& residues, const BigInt& degree, BigInt* modulus) {
  BigInt N = 1, r = 0;
  for (const auto& res : residues) {
    BigInt g, inv;
    mpz_gcd(g.get_mpz_t(), N.get_mpz_t(), res.modulus.get_mpz_t());
    if (g != 1) throw Error(ErrorCode::InvalidArgument, "moduli are not pairwise coprime");
    mpz_invert(inv.get_mpz_t(), N.get_mpz_t(), res.modulus.get_mpz_t());
    r += N * mod_nonneg((res.residue - r) * inv, res.modulus);
    N *= res.modulus;
  }
  if (N * N <= 16 * degree) throw Error(ErrorCode::InconsistentResidues, "CRT modulus does not exceed 4 sqrt(deg)");
  BigInt t = r > N / 2 ? BigInt(r - N) : r;
  if (t * t > 4 * degree) throw Error(ErrorCode::InconsistentResidues, "lifted trace violates the Hasse bound");
  if (modulus) *modulus = N;
  return t;
}

TraceResult compute_trace(const Chain& chain, TraceMethod method, std::uint64_t seed) {
  chain_validate(chain);
  const auto& E = chain.curve;
  const auto& f = chain.field();
  if (f.is_zero(E.A()) || f.is_zero(E.B()))
    throw Error(ErrorCode::InvalidArgument, "curves with j in {0, 1728} are not supported");
  BigInt p = characteristic(chain);

  TraceResult out;
  out.method = method;
  out.degree = chain_degree(chain);
  BigInt need = 16 * out.degree;
  BigInt N = 1;
  std::vector<long> used;

  auto add_residue = [&](const BigInt& res, const BigInt& mod, const char* tag, double ms) {
    out.residues.push_back(Residue{mod, mod_nonneg(res, mod), tag, ms});
    N *= mod;
  };
  auto done = [&] { return N * N > need; };

  BigInt order;
  if (method != TraceMethod::Schoof) order = group_order_supersingular(E, seed);

  if (method == TraceMethod::SeaP || method == TraceMethod::SeaPPoints) {
    Timer t;
    BigInt res(static_cast<unsigned long>(trace_mod_p(chain)));
    add_residue(res, p, "p", t.ms());
  }
  if (method == TraceMethod::SeaPPoints && !done()) {
    BigInt n = (order == (p + 1) * (p + 1)) ? BigInt(p + 1) : BigInt(p - 1);
    while (n % 2 == 0) n /= 2;
    auto take = [&](long ell) {
      Timer t;
      auto pr = trace_mod_prime_power_points(chain, ell, seed, order);
      add_residue(pr.residue, pr.modulus, "points", t.ms());
      used.push_back(ell);
    };
    for (long ell = 3; !done() && n > 1 && BigInt(ell) * ell <= n && ell < 1000000; ell += 2) {
      if (n % ell != 0) continue;
      while (n % ell == 0) n /= ell;
      take(ell);
    }
    if (!done() && n > 1 && n.fits_slong_p() && mpz_probab_prime_p(n.get_mpz_t(), 30)) take(n.get_si());
  }
  for (long ell = 3; !done(); ell += 2) {
    if (!is_odd_prime(ell) || BigInt(ell) == p) continue;
    if (std::find(used.begin(), used.end(), ell) != used.end()) continue;
    if (ell > 2000) throw Error(ErrorCode::GiveUp, "ran out of small primes");
    Timer t;
    long res = method == TraceMethod::Schoof ? trace_schoof_mod_ell(chain, static_cast<int>(ell))
                                             : trace_mod_ell(chain, static_cast<int>(ell), seed, order);
    add_residue(BigInt(res), BigInt(ell), method == TraceMethod::Schoof ? "schoof" : "sea", t.ms());
  }

  std::sort(out.residues.begin(), out.residues.end(),
            [](const Residue& a, const Residue& b) { return a.modulus < b.modulus; });
  out.trace = combine_residues(out.residues, out.degree, &out.modulus);
  return out;
}

bool check_characteristic_equation(const Chain& chain, const BigInt& t, int samples, std::uint64_t seed) {
  const auto& E = chain.curve;
  const auto& f = chain.field();
  BigInt deg = chain_degree(chain);
  Rng rng(seed ^ 0x636865636bULL);
  PolyRing<Fp2Field> R(f);
  Fp2Ext K(f, random_irreducible(R, 3, rng));
  auto EK = lift_curve(K, E);
  for (int i = 0; i < samples; ++i) {
    if (i % 2 == 0) {
      auto P = E.random_point(rng);
      auto aP = chain.evaluate(P);
      auto lhs = E.add(E.sub(chain.evaluate(aP), E.mul(t, aP), f.one()), E.mul(deg, P));
      if (!lhs.inf) return false;
    } else {
      auto P = EK.random_point(rng);
      auto aP = chain.evaluate(K, P);
      auto lhs = EK.add(EK.sub(chain.evaluate(K, aP), EK.mul(t, aP, K.one()), K.one()), EK.mul(deg, P, K.one()));
      if (!lhs.inf) return false;
    }
  }
  return true;
}

std::vector<CheckResult> verify_chain(const Chain& chain, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto record = [&](const char* name, bool ok, std::string detail) {
    out.push_back(CheckResult{name, ok, std::move(detail)});
    return ok;
  };
  PolyRing<Fp2Field> R(chain.field());
  std::string bad;
  for (std::size_t i = 0; i < chain.steps.size() && bad.empty(); ++i)
    if (!step_map_identity_holds(chain.steps[i])) bad = "step " + std::to_string(i);
  if (!record("step_identity", bad.empty(), bad.empty() ? "all steps map onto their codomains" : bad)) return out;

  for (std::size_t i = 0; i < chain.steps.size() && bad.empty(); ++i) {
    const auto& st = chain.steps[i];
    auto num = R.sub(R.mul(R.deriv(st.u), st.v), R.mul(st.u, R.deriv(st.v)));
    if (!(R.mul(num, st.t) == R.mul(st.s, R.sqr(st.v)))) bad = "step " + std::to_string(i);
  }
  if (!record("derivative", bad.empty(), bad.empty() ? "s/t = (u/v)' for all steps" : bad)) return out;

  try {
    chain_validate(chain);
    record("endomorphism", true, "chain closes on its curve");
  } catch (const Error& e) {
    record("endomorphism", false, e.what());
    return out;
  }

  TraceResult tr;
  try {
    tr = compute_trace(chain, TraceMethod::SeaP, seed);
    record("trace", true, tr.trace.get_str());
  } catch (const Error& e) {
    record("trace", false, e.what());
    return out;
  }
  bool ok = check_characteristic_equation(chain, tr.trace, 10, seed);
  record("characteristic_equation", ok, ok ? "10 random points" : "alpha^2 - [t] alpha + [deg] != 0");

  BigInt p = characteristic(chain);
  std::string detail;
  ok = true;
  for (int ell : {3, 5, 7}) {
    if (BigInt(ell) == p) continue;
    long o = trace_oracle_bruteforce(chain, ell, seed);
    BigInt want = mod_nonneg(tr.trace, BigInt(ell));
    if (want != o) {
      ok = false;
      detail += "l=" + std::to_string(ell) + " oracle " + std::to_string(o) + " trace " + want.get_str() + "; ";
    }
  }
  record("oracle_residues", ok, ok ? "l in {3, 5, 7}" : detail);
  return out;
}

}  // namespace endotrace
