#include "endotrace/field.hpp"

namespace endotrace {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::JInvariantMismatch: return "JInvariantMismatch";
    case ErrorCode::InvalidKernel: return "InvalidKernel";
    case ErrorCode::CoefficientLeak: return "CoefficientLeak";
    case ErrorCode::BrokenChain: return "BrokenChain";
    case ErrorCode::NotEndomorphism: return "NotEndomorphism";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NonUnitSlope: return "NonUnitSlope";
    case ErrorCode::NonUnitDenominator: return "NonUnitDenominator";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::WrongOrderStructure: return "WrongOrderStructure";
    case ErrorCode::DlogFailure: return "DlogFailure";
    case ErrorCode::InconsistentResidues: return "InconsistentResidues";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::GiveUp: return "GiveUp";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

BigInt from_decimal(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::Parse, "empty integer");
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size()) throw Error(ErrorCode::Parse, "bad integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::Parse, "bad integer '" + s + "'");
  return BigInt(s, 10);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  std::uint64_t mask = ~0ULL;
  if (bound > 1) mask >>= __builtin_clzll(bound - 1);
  else mask = 0;
  for (;;) {
    std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p <= 3 || (p >> 63) != 0 || !is_probable_prime(BigInt(static_cast<unsigned long>(p))))
    throw Error(ErrorCode::InvalidArgument,
                "characteristic must be a prime with 3 < p < 2^63, got " + std::to_string(p));
  std::uint64_t inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  nprime_ = ~inv + 1;
  unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % p;
  r2_ = static_cast<std::uint64_t>((r * r) % p);
  one_ = to_mont(1);
  order_ = BigInt(static_cast<unsigned long>(p));
}

PrimeField::Elt PrimeField::from_big(const BigInt& v) const {
  BigInt r = v % order_;
  if (r < 0) r += order_;
  return to_mont(r.get_ui());
}

PrimeField::Elt PrimeField::inv(Elt a) const {
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "inverse of zero in Fp");
  // Extended Euclid on the canonical value, then back to Montgomery form.
  std::int64_t t0 = 0, t1 = 1;
  std::uint64_t r0 = p_, r1 = to_u64(a);
  while (r1 != 0) {
    std::uint64_t q = r0 / r1;
    std::uint64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    __int128 t2 = static_cast<__int128>(t0) - static_cast<__int128>(q) * t1;
    t0 = t1;
    t1 = static_cast<std::int64_t>(t2 % static_cast<__int128>(p_));
  }
  std::int64_t res = t0 % static_cast<std::int64_t>(p_);
  if (res < 0) res += static_cast<std::int64_t>(p_);
  return to_mont(static_cast<std::uint64_t>(res));
}

PrimeField::Elt PrimeField::from_coords(std::span<const std::uint64_t> c) const {
  if (c.size() != 1 || c[0] >= p_) throw Error(ErrorCode::Parse, "Fp coordinate out of range");
  return to_mont(c[0]);
}

Fp2Field::Fp2Field(std::uint64_t p) : fp_(p) {
  if (p % 4 == 3) {
    minus_one_ = true;
    n_ = fp_.neg(fp_.one());
  } else {
    minus_one_ = false;
    for (std::uint64_t k = 2;; ++k) {
      auto e = fp_.from_u64(k);
      if (!is_square(fp_, e)) {
        n_ = e;
        break;
      }
    }
  }
  order_ = fp_.order() * fp_.order();
}

std::vector<std::uint64_t> Fp2Field::modulus_coeffs() const {
  return {fp_.to_u64(fp_.neg(n_)), 0, 1};
}

Fp2Field::Elt Fp2Field::inv(const Elt& a) const {
  if (is_zero(a)) throw Error(ErrorCode::ZeroInverse, "inverse of zero in Fp2");
  // 1/(a0 + a1 i) = (a0 - a1 i)/(a0^2 - n a1^2)
  auto norm = fp_.sub(fp_.sqr(a.c0), fp_.mul(n_, fp_.sqr(a.c1)));
  auto ni = fp_.inv(norm);
  return {fp_.mul(a.c0, ni), fp_.neg(fp_.mul(a.c1, ni))};
}

Fp2Field::Elt Fp2Field::from_coords(std::span<const std::uint64_t> c) const {
  if (c.size() != 2) throw Error(ErrorCode::Parse, "Fp2 element needs two coordinates");
  return {fp_.from_coords(c.subspan(0, 1)), fp_.from_coords(c.subspan(1, 1))};
}

}  // namespace endotrace
