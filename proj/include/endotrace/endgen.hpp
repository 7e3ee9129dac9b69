#pragma once

// Test-input generation: supersingular curves over Fp2 reached by 2-isogeny
// walks from y^2 = x^3 + x, and endomorphisms as closed 2-isogeny cycles.

#include <array>

#include "endotrace/isogeny.hpp"

namespace endotrace {

// Roots of x^3 + Ax + B in Fp2, canonically sorted. Throws InvalidArgument
// unless all three exist.
std::array<Fp2Elt, 3> two_torsion_roots(const Fp2Curve& E);

// Roots of the codomain's cubic for a 2-isogeny step taken from a curve
// with the given roots. Element 0 is the dual kernel root.
std::array<Fp2Elt, 3> codomain_two_torsion_roots(const IsogenyStep& st, const std::array<Fp2Elt, 3>& domain_roots);

// The 2-isogeny in the reverse direction, landing exactly on st.domain.
IsogenyStep dual_two_isogeny(const IsogenyStep& st, const std::array<Fp2Elt, 3>& domain_roots);

Fp2Curve random_supersingular_curve(std::uint64_t p, std::uint64_t seed);

// Random prime of the given bit length with p = 3 (mod 4).
std::uint64_t random_prime_3mod4(int bits, std::uint64_t seed);

// Closed non-backtracking cycle of 2-isogenies from E to E with at least L
// steps (more only when L is below what the meet-in-the-middle needs).
Chain random_cycle(const Fp2Curve& E, int L, std::uint64_t seed);

// phi followed by its dual: an endomorphism equal to [+-2].
Chain scalar_two_chain(const Fp2Curve& E, std::uint64_t seed);

}  // namespace endotrace
