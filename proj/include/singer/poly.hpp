#ifndef SINGER_POLY_HPP
#define SINGER_POLY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "singer/gf.hpp"

namespace singer {

/// Dense univariate polynomial over a GaloisField, coefficients lowest degree first.
/// The stored coefficient list never ends in zero; the zero polynomial is empty.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(const GaloisField* F) : F_(F) {}
  DensePoly(const GaloisField* F, std::vector<u64> coeffs);
  static DensePoly from_fe(const std::vector<Fe>& coeffs);
  static DensePoly constant(const GaloisField* F, u64 c) { return DensePoly(F, {c}); }
  static DensePoly x(const GaloisField* F) { return DensePoly(F, {0, 1}); }

  const GaloisField* field() const { return F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Fe coeff_fe(std::size_t i) const { return Fe(F_, coeff(i)); }
  u64 lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u64>& coeffs() const { return c_; }

  Fe operator()(const Fe& x) const;

  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const DensePoly& f);

 private:
  void trim();
  const GaloisField* F_ = nullptr;
  std::vector<u64> c_;
};

DensePoly operator+(const DensePoly& a, const DensePoly& b);
DensePoly operator-(const DensePoly& a, const DensePoly& b);
DensePoly operator*(const DensePoly& a, const DensePoly& b);
DensePoly scale(const DensePoly& a, u64 c);

/// Quotient and remainder; throws DivisionByZero for b == 0.
std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b);
DensePoly operator/(const DensePoly& a, const DensePoly& b);
DensePoly operator%(const DensePoly& a, const DensePoly& b);

DensePoly monic(const DensePoly& a);
DensePoly gcd(const DensePoly& a, const DensePoly& b);
DensePoly derivative(const DensePoly& a);
DensePoly powmod(const DensePoly& base, u64 e, const DensePoly& m);

/// Lexicographic order on coefficient lists, comparing from the constant term upward.
bool lex_less(const DensePoly& a, const DensePoly& b);

/// Lexicographically smallest monic irreducible of degree n over F_p.
std::vector<u64> find_irreducible(u64 p, unsigned n);

bool is_irreducible(const DensePoly& f);
bool is_squarefree(const DensePoly& f);

/// Full factorization into monic irreducibles with multiplicities, sorted by degree then lex.
std::vector<std::pair<DensePoly, unsigned>> factor_poly(const DensePoly& g);

/// Roots of g inside its own coefficient field, with multiplicity, sorted by encoding.
std::vector<std::pair<Fe, unsigned>> roots_in_field(const DensePoly& g);

/// Re-express a polynomial over another field through an explicit coefficient map.
template <class Map>
DensePoly map_coeffs(const DensePoly& g, const GaloisField* target, Map&& m) {
  std::vector<u64> out(g.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m(g.coeff_fe(i)).value();
  return DensePoly(target, std::move(out));
}

} // namespace singer

#endif
