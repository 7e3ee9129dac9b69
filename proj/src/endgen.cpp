#include "endotrace/endgen.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>

namespace endotrace {

namespace {

bool special_j(const Fp2Curve& E) {
  const auto& f = E.field();
  return f.is_zero(E.A()) || f.is_zero(E.B());
}

Fp2Poly kernel_of_root(const Fp2Field& f, const Fp2Elt& x0) { return PolyRing<Fp2Field>(f).make({f.neg(x0), f.one()}); }

void sort_canonical(const Fp2Field& f, Fp2Elt* begin, Fp2Elt* end) {
  std::sort(begin, end, [&](const Fp2Elt& a, const Fp2Elt& b) { return canonical_less(f, a, b); });
}

struct Node {
  Fp2Elt A, B;
  int parent;
  Fp2Elt kernel;  // root on the parent's curve
  Fp2Elt back;    // dual kernel root on this curve
};

// Non-backtracking tree of 2-isogenies avoiding j in {0, 1728}. Levels are
// stored contiguously; the leaves are the last level.
struct Tree {
  std::vector<Node> nodes;
  std::size_t leaves_begin = 0;
};

Tree grow_tree(const Fp2Curve& root, const std::array<Fp2Elt, 3>& roots, std::optional<Fp2Elt> back, int depth) {
  const auto& f = root.field();
  Tree T;
  T.nodes.push_back({root.A(), root.B(), -1, f.zero(), back.value_or(f.zero())});
  std::vector<std::array<Fp2Elt, 3>> frontier_roots{roots};
  std::vector<bool> has_back{back.has_value()};
  std::size_t level_begin = 0;
  for (int d = 0; d < depth; ++d) {
    std::size_t level_end = T.nodes.size();
    std::vector<std::array<Fp2Elt, 3>> next_roots;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const auto& rs = frontier_roots[i - level_begin];
      Fp2Curve C(f, T.nodes[i].A, T.nodes[i].B);
      for (const auto& x0 : rs) {
        if ((i != 0 || has_back[0]) && f.equal(x0, T.nodes[i].back)) continue;
        IsogenyStep st = velu_from_kernel(C, kernel_of_root(f, x0));
        if (special_j(st.codomain)) continue;
        auto cr = codomain_two_torsion_roots(st, rs);
        T.nodes.push_back({st.codomain.A(), st.codomain.B(), static_cast<int>(i), x0, cr[0]});
        next_roots.push_back(cr);
      }
    }
    level_begin = level_end;
    frontier_roots = std::move(next_roots);
  }
  T.leaves_begin = level_begin;
  return T;
}

std::vector<Fp2Elt> path_kernels(const Tree& T, int leaf) {
  std::vector<Fp2Elt> ks;
  for (int i = leaf; T.nodes[static_cast<std::size_t>(i)].parent >= 0; i = T.nodes[static_cast<std::size_t>(i)].parent)
    ks.push_back(T.nodes[static_cast<std::size_t>(i)].kernel);
  std::reverse(ks.begin(), ks.end());
  return ks;
}

}  // namespace

std::array<Fp2Elt, 3> two_torsion_roots(const Fp2Curve& E) {
  const auto& f = E.field();
  PolyRing<Fp2Field> R(f);
  auto fs = poly_factor(R, E.rhs_poly(), 0);
  std::array<Fp2Elt, 3> out{};
  std::size_t n = 0;
  for (const auto& fc : fs) {
    if (fc.poly.deg() != 1) break;
    out[n++] = f.neg(fc.poly.c[0]);
  }
  if (n != 3) throw Error(ErrorCode::InvalidArgument, "curve does not have full rational 2-torsion");
  sort_canonical(f, out.data(), out.data() + 3);
  return out;
}

std::array<Fp2Elt, 3> codomain_two_torsion_roots(const IsogenyStep& st, const std::array<Fp2Elt, 3>& domain_roots) {
  const auto& f = st.domain.field();
  PolyRing<Fp2Field> R(f);
  Fp2Elt x0 = f.neg(st.h.c[0]);
  const Fp2Elt* other = nullptr;
  for (const auto& r : domain_roots)
    if (!f.equal(r, x0)) {
      other = &r;
      break;
    }
  if (!other) throw Error(ErrorCode::InvalidArgument, "kernel root not among the domain roots");
  Fp2Elt r = f.mul(R.eval(st.u, *other), f.inv(R.eval(st.v, *other)));
  // f'(x) = (x - r)(x^2 + r x + r^2 + A')
  Fp2Elt disc = f.sub(f.neg(f.mul(f.from_int(3), f.sqr(r))), f.mul(f.from_int(4), st.codomain.A()));
  Fp2Elt sq;
  if (!field_sqrt(f, disc, sq)) throw Error(ErrorCode::InvalidArgument, "codomain lacks rational 2-torsion");
  Fp2Elt half = f.inv(f.from_int(2));
  std::array<Fp2Elt, 3> out{r, f.mul(f.sub(sq, r), half), f.mul(f.sub(f.neg(sq), r), half)};
  sort_canonical(f, out.data() + 1, out.data() + 3);
  return out;
}

IsogenyStep dual_two_isogeny(const IsogenyStep& st, const std::array<Fp2Elt, 3>& domain_roots) {
  const auto& f = st.domain.field();
  auto cr = codomain_two_torsion_roots(st, domain_roots);
  IsogenyStep back = velu_from_kernel(st.codomain, kernel_of_root(f, cr[0]));
  auto u = isomorphism_u(back.codomain, st.domain);
  if (!u) throw Error(ErrorCode::InvalidArgument, "dual isogeny lands on the quadratic twist");
  return post_compose_iso(back, *u);
}

Fp2Curve random_supersingular_curve(std::uint64_t p, std::uint64_t seed) {
  if (p % 4 != 3) throw Error(ErrorCode::UnsupportedPrime, "curve generation needs p = 3 (mod 4)");
  Fp2Field f(p);
  Fp2Curve E(f, f.one(), f.zero());
  Rng rng(seed ^ 0x63757276ULL);
  auto roots = two_torsion_roots(E);
  std::optional<Fp2Elt> back;
  int min_steps = 5 + static_cast<int>(uniform_below(rng, 6));
  for (int step = 0; step < 1000; ++step) {
    if (step >= min_steps && !special_j(E)) return E;
    std::vector<Fp2Elt> options;
    for (const auto& r : roots)
      if (!back || !f.equal(r, *back)) options.push_back(r);
    Fp2Elt x0 = options[uniform_below(rng, options.size())];
    IsogenyStep st = velu_from_kernel(E, kernel_of_root(f, x0));
    auto cr = codomain_two_torsion_roots(st, roots);
    E = st.codomain;
    roots = cr;
    back = cr[0];
  }
  throw Error(ErrorCode::GiveUp, "walk stayed on j in {0, 1728}");
}

std::uint64_t random_prime_3mod4(int bits, std::uint64_t seed) {
  if (bits < 4 || bits > 62) throw Error(ErrorCode::InvalidArgument, "prime bit length must be in [4, 62]");
  Rng rng(seed ^ 0x7072696dULL);
  for (;;) {
    std::uint64_t c = rng() & ((1ULL << bits) - 1);
    c |= 1ULL << (bits - 1);
    c |= 3;
    if (c > 3 && is_probable_prime(BigInt(static_cast<unsigned long>(c)))) return c;
  }
}

Chain random_cycle(const Fp2Curve& E, int L, std::uint64_t seed) {
  const auto& f = E.field();
  if (L < 2) throw Error(ErrorCode::InvalidArgument, "cycle length must be at least 2");
  if (special_j(E)) throw Error(ErrorCode::InvalidArgument, "starting curve must have j not in {0, 1728}");
  auto roots0 = two_torsion_roots(E);

  // Leaf counts 2^d1 (forward tree, no backtracking at its root) and
  // 3*2^(d2-1) (tree around E) should cover the ~p/12 vertices a few times.
  double vertices = static_cast<double>(f.characteristic()) / 12.0 + 2.0;
  int d1 = 1, d2 = 1;
  while (std::ldexp(3.0, d1 + d2 - 1) < 4.0 * vertices) {
    if (d1 <= d2) ++d1;
    else ++d2;
  }
  // At least two random steps so that restarts explore different trees.
  int prefix_len = std::max(2, L - d1 - d2);

  Rng rng(seed ^ 0x6379636cULL);
  for (int restart = 0; restart < 64; ++restart) {
    if (restart > 0 && restart % 8 == 0) ++d1;
    Chain chain{E, {}};
    Fp2Curve cur = E;
    auto roots = roots0;
    std::optional<Fp2Elt> back;
    bool ok = true;
    for (int i = 0; i < prefix_len && ok; ++i) {
      std::vector<IsogenyStep> options;
      for (const auto& r : roots) {
        if (back && f.equal(r, *back)) continue;
        IsogenyStep st = velu_from_kernel(cur, kernel_of_root(f, r));
        if (!special_j(st.codomain)) options.push_back(std::move(st));
      }
      if (options.empty()) {
        ok = false;
        break;
      }
      IsogenyStep st = options[uniform_below(rng, options.size())];
      auto cr = codomain_two_torsion_roots(st, roots);
      cur = st.codomain;
      roots = cr;
      back = cr[0];
      chain.steps.push_back(std::move(st));
    }
    if (!ok) continue;

    Tree fwd = grow_tree(cur, roots, back, d1);
    Tree bwd = grow_tree(E, roots0, std::nullopt, d2);
    std::unordered_map<Fp2Elt, std::vector<int>, Fp2EltHash> by_j;
    for (std::size_t i = bwd.leaves_begin; i < bwd.nodes.size(); ++i) {
      Fp2Curve C(f, bwd.nodes[i].A, bwd.nodes[i].B);
      by_j[C.j_invariant()].push_back(static_cast<int>(i));
    }
    // Start scanning forward leaves at a random offset so restarts differ.
    std::size_t nfwd = fwd.nodes.size() - fwd.leaves_begin;
    if (nfwd == 0) continue;
    std::size_t offset = uniform_below(rng, nfwd);
    for (std::size_t k = 0; k < nfwd; ++k) {
      std::size_t i = fwd.leaves_begin + (offset + k) % nfwd;
      const Node& a = fwd.nodes[i];
      Fp2Curve M1(f, a.A, a.B);
      auto it = by_j.find(M1.j_invariant());
      if (it == by_j.end()) continue;
      for (int j : it->second) {
        const Node& b = bwd.nodes[static_cast<std::size_t>(j)];
        Fp2Curve M2(f, b.A, b.B);
        auto u = isomorphism_u(M1, M2);
        if (!u) continue;
        Fp2Elt arrived_back = f.mul(f.sqr(f.inv(*u)), a.back);
        if (f.equal(arrived_back, b.back)) continue;

        Chain out = chain;
        Fp2Curve c1 = cur;
        for (const auto& k1 : path_kernels(fwd, static_cast<int>(i))) {
          out.steps.push_back(velu_from_kernel(c1, kernel_of_root(f, k1)));
          c1 = out.steps.back().codomain;
        }
        out.steps.back() = post_compose_iso(out.steps.back(), *u);

        std::vector<IsogenyStep> path2;
        std::vector<std::array<Fp2Elt, 3>> path2_roots;
        Fp2Curve c2 = E;
        auto r2 = roots0;
        for (const auto& k2 : path_kernels(bwd, j)) {
          path2.push_back(velu_from_kernel(c2, kernel_of_root(f, k2)));
          path2_roots.push_back(r2);
          r2 = codomain_two_torsion_roots(path2.back(), r2);
          c2 = path2.back().codomain;
        }
        for (std::size_t s = path2.size(); s-- > 0;) out.steps.push_back(dual_two_isogeny(path2[s], path2_roots[s]));
        chain_validate(out, true);
        return out;
      }
    }
  }
  throw Error(ErrorCode::GiveUp, "no cycle found after 64 restarts");
}

Chain scalar_two_chain(const Fp2Curve& E, std::uint64_t seed) {
  const auto& f = E.field();
  auto roots = two_torsion_roots(E);
  Rng rng(seed ^ 0x74776fULL);
  Fp2Elt x0 = roots[uniform_below(rng, 3)];
  IsogenyStep st = velu_from_kernel(E, kernel_of_root(f, x0));
  Chain c{E, {st, dual_two_isogeny(st, roots)}};
  chain_validate(c, true);
  return c;
}

}  // namespace endotrace
