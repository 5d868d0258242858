#ifndef SINGER_GF_HPP
#define SINGER_GF_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "singer/error.hpp"
#include "singer/ntheory.hpp"

namespace singer {

class Fe;

/// The finite field F_p[x]/(m(x)) for a monic irreducible m of degree n.
///
/// Elements are stored as their integer encoding sum c_i p^i, where c_i is the
/// coefficient of x^i in the reduced representative. All arithmetic below works on
/// encodings; `Fe` is the typed wrapper that carries a pointer back to the field.
class GaloisField {
 public:
  GaloisField(u64 p, std::vector<u64> modulus);

  u64 characteristic() const { return p_; }
  unsigned degree() const { return n_; }
  u64 size() const { return size_; }
  const std::vector<u64>& modulus() const { return mod_; }
  bool same_as(const GaloisField& o) const { return this == &o || (p_ == o.p_ && mod_ == o.mod_); }

  Fe zero() const;
  Fe one() const;
  Fe element(u64 code) const;
  Fe from_int(i64 n) const;
  /// The class of x in F_p[x]/(m), i.e. the polynomial-basis generator.
  Fe gen() const;

  u64 add(u64 a, u64 b) const;
  u64 sub(u64 a, u64 b) const;
  u64 neg(u64 a) const;
  u64 mul(u64 a, u64 b) const;
  u64 inv(u64 a) const;
  u64 pow(u64 a, u64 e) const;
  u64 reduce_int(i64 n) const;

  std::vector<u64> digits(u64 a) const;
  u64 encode(const std::vector<u64>& digits) const;

  /// Smallest encoding that generates the multiplicative group.
  u64 primitive() const { return prim_; }
  /// Prime factorization of size() - 1, computed once.
  const std::vector<std::pair<u64, unsigned>>& group_factors() const { return gfac_; }
  u64 order_of(u64 a) const;

 private:
  u64 mul_poly(u64 a, u64 b) const;

  u64 p_;
  unsigned n_;
  u64 size_;
  std::vector<u64> mod_;
  std::vector<u64> ppow_;
  std::vector<std::pair<u64, unsigned>> gfac_;
  u64 prim_ = 0;
  // log/exp tables, only populated for small fields
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Exact field element usable as an Eigen scalar.
///
/// A default-constructed or integer-constructed value has no field attached; it acts
/// like an integer constant and is lifted into whichever field it meets. Eigen
/// creates such constants internally (`Scalar(0)`, `Scalar(1)`).
class Fe {
 public:
  Fe() = default;
  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  Fe(I n) : f_(nullptr), v_(static_cast<u64>(static_cast<i64>(n))) {}
  Fe(const GaloisField* f, u64 v) : f_(f), v_(v) {}

  const GaloisField* field() const { return f_; }
  bool typed() const { return f_ != nullptr; }
  /// Canonical encoding; for an untyped constant this is the raw integer.
  u64 value() const { return v_; }
  i64 raw() const { return static_cast<i64>(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return f_ ? v_ == 1 : raw() == 1; }

  /// Same value, attached to F (integers are reduced mod p).
  Fe in(const GaloisField& F) const;

  Fe inverse() const;
  Fe pow(u64 e) const;

  Fe& operator+=(const Fe& o);
  Fe& operator-=(const Fe& o);
  Fe& operator*=(const Fe& o);
  Fe& operator/=(const Fe& o);
  Fe operator-() const;

  friend Fe operator+(Fe a, const Fe& b) { return a += b; }
  friend Fe operator-(Fe a, const Fe& b) { return a -= b; }
  friend Fe operator*(Fe a, const Fe& b) { return a *= b; }
  friend Fe operator/(Fe a, const Fe& b) { return a /= b; }
  friend bool operator==(const Fe& a, const Fe& b);
  friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Fe& a);

 private:
  const GaloisField* f_ = nullptr;
  u64 v_ = 0;
};

/// Multiplicative order of a nonzero element.
u64 element_order(const Fe& x);

/// Smallest E >= 0 with base^E == target (Pohlig-Hellman with baby-step/giant-step).
u64 discrete_log(const Fe& target, const Fe& base);

/// Field size limit for discrete_log.
inline constexpr u64 kDlogFieldLimit = u64{1} << 48;

} // namespace singer

namespace Eigen {

template <>
struct NumTraits<singer::Fe> : GenericNumTraits<singer::Fe> {
  typedef singer::Fe Real;
  typedef singer::Fe NonInteger;
  typedef singer::Fe Nested;
  typedef singer::Fe Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

} // namespace Eigen

#endif
