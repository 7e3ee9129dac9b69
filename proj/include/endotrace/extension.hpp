#pragma once

// Finite extensions Base[t]/(m(t)) of a finite field, used to find torsion
// points whose coordinates are not defined over Fp2.

#include <vector>

#include "endotrace/field.hpp"
#include "endotrace/poly.hpp"

namespace endotrace {

template <class Base>
class ExtField {
 public:
  using BaseElt = typename Base::Elt;
  using Elt = std::vector<BaseElt>;  // exactly degree() coefficients, low first

  // modulus must be monic and irreducible over Base.
  ExtField(const Base& base, Poly<Base> modulus) : base_(base), ring_(base), m_(std::move(modulus)) {
    if (m_.deg() < 1 || !base_.equal(m_.lead(), base_.one()))
      throw Error(ErrorCode::InvalidArgument, "extension modulus must be monic of degree >= 1");
    d_ = static_cast<std::size_t>(m_.deg());
    mpz_pow_ui(order_.get_mpz_t(), base_.order().get_mpz_t(), d_);
  }

  const Base& base() const { return base_; }
  const Poly<Base>& modulus() const { return m_; }
  std::size_t degree() const { return d_; }
  std::uint64_t characteristic() const { return base_.characteristic(); }
  const BigInt& order() const { return order_; }
  std::size_t coord_count() const { return d_ * base_.coord_count(); }

  Elt zero() const { return Elt(d_, base_.zero()); }
  Elt one() const { return embed(base_.one()); }
  Elt embed(const BaseElt& a) const {
    Elt r = zero();
    r[0] = a;
    return r;
  }
  Elt from_int(std::int64_t v) const { return embed(base_.from_int(v)); }
  Elt generator() const {
    if (d_ == 1) return embed(base_.neg(m_.c[0]));
    Elt r = zero();
    r[1] = base_.one();
    return r;
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = base_.add(a[i], b[i]);
    return r;
  }
  Elt sub(const Elt& a, const Elt& b) const {
    Elt r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = base_.sub(a[i], b[i]);
    return r;
  }
  Elt neg(const Elt& a) const {
    Elt r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = base_.neg(a[i]);
    return r;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    std::vector<BaseElt> prod(2 * d_ - 1, base_.zero());
    for (std::size_t i = 0; i < d_; ++i) {
      if (base_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < d_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
    }
    for (std::size_t k = prod.size(); k-- > d_;) {
      const BaseElt c = prod[k];
      if (base_.is_zero(c)) continue;
      for (std::size_t j = 0; j < d_; ++j) prod[k - d_ + j] = base_.sub(prod[k - d_ + j], base_.mul(c, m_.c[j]));
    }
    prod.resize(d_);
    return prod;
  }
  Elt sqr(const Elt& a) const { return mul(a, a); }
  Elt inv(const Elt& a) const {
    if (is_zero(a)) throw Error(ErrorCode::ZeroInverse, "inverse of zero in extension field");
    Poly<Base> r = ring_.invmod(ring_.make(a), m_);
    return pad(std::move(r.c));
  }
  bool is_zero(const Elt& a) const {
    for (const auto& e : a)
      if (!base_.is_zero(e)) return false;
    return true;
  }
  bool equal(const Elt& a, const Elt& b) const { return a == b; }
  // True when a lies in the base field.
  bool in_base(const Elt& a) const {
    for (std::size_t i = 1; i < d_; ++i)
      if (!base_.is_zero(a[i])) return false;
    return true;
  }

  void coords(const Elt& a, std::vector<std::uint64_t>& out) const {
    for (const auto& e : a) base_.coords(e, out);
  }
  Elt random(Rng& rng) const {
    Elt r(d_);
    for (auto& e : r) e = base_.random(rng);
    return r;
  }

 private:
  Elt pad(std::vector<BaseElt> v) const {
    v.resize(d_, base_.zero());
    return v;
  }

  Base base_;
  PolyRing<Base> ring_;
  Poly<Base> m_;
  std::size_t d_ = 0;
  BigInt order_;
};

}  // namespace endotrace
