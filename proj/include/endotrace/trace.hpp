#pragma once

// Trace of an endomorphism given as a chain of isogenies, from residues
// modulo odd primes l (restriction to an l-isogeny kernel, or to all of
// E[l] as in Schoof's algorithm), modulo p (action on differentials) and
// modulo prime powers dividing p -+ 1 (rational points), joined by CRT.

#include <optional>
#include <string>
#include <vector>

#include "endotrace/isogeny.hpp"

namespace endotrace {

enum class TraceMethod { Schoof, Sea, SeaP, SeaPPoints };

const char* method_name(TraceMethod m);
std::optional<TraceMethod> parse_method(const std::string& s);

struct Residue {
  BigInt modulus;
  BigInt residue;
  std::string method;  // "schoof", "sea", "p" or "points"
  double time_ms = 0;
};

struct TraceResult {
  BigInt trace;
  BigInt degree;
  BigInt modulus;
  TraceMethod method = TraceMethod::Sea;
  std::vector<Residue> residues;  // ascending modulus
};

// tr(alpha) mod l through a kernel polynomial of an l-isogeny.
long trace_mod_ell(const Chain& chain, int ell, std::uint64_t seed, const BigInt& group_order);
long trace_mod_ell(const Chain& chain, int ell, std::uint64_t seed = 0);

// Same residue with the full division polynomial as modulus.
long trace_schoof_mod_ell(const Chain& chain, int ell);

// a_alpha with alpha^* omega = a_alpha omega, and tr(alpha) mod p.
Fp2Elt differential_scalar(const Chain& chain);
std::uint64_t trace_mod_p(const Chain& chain);

struct PointResidue {
  BigInt residue;
  BigInt modulus;
};
// tr(alpha) mod l^e' from points of l-power order in E(Fp2).
PointResidue trace_mod_prime_power_points(const Chain& chain, long ell, std::uint64_t seed, const BigInt& group_order);

// Independent reference for small l: explicit l-torsion points from the
// factorisation of the division polynomial and point-wise evaluation.
long trace_oracle_bruteforce(const Chain& chain, int ell, std::uint64_t seed = 0);

// Symmetric CRT lift of residues modulo pairwise coprime moduli: the unique
// t matching all of them with |t| <= 2 sqrt(degree). Throws
// InconsistentResidues when N <= 4 sqrt(degree) or no such t exists.
BigInt combine_residues(const std::vector<Residue>& residues, const BigInt& degree, BigInt* modulus = nullptr);

TraceResult compute_trace(const Chain& chain, TraceMethod method, std::uint64_t seed = 0);

// alpha^2(P) - [t] alpha(P) + [deg alpha] P == O on `samples` random points.
bool check_characteristic_equation(const Chain& chain, const BigInt& t, int samples, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};
// Named checks on a (possibly untrusted) chain: step identities, closure,
// trace, characteristic equation and oracle residues for l in {3, 5, 7}.
// Checks that depend on a failed one are not run.
std::vector<CheckResult> verify_chain(const Chain& chain, std::uint64_t seed);

}  // namespace endotrace
