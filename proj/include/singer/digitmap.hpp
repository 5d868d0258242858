#ifndef SINGER_DIGITMAP_HPP
#define SINGER_DIGITMAP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "singer/field_ctx.hpp"

namespace singer {

using BigInt = boost::multiprecision::cpp_int;

/// Digit counts (c_1, ..., c_d); index 0 holds the least significant base-q digit.
using DigitVector = std::vector<unsigned>;

std::string to_string(const DigitVector& c);

/// Base-q digits of E, least significant first. Requires 0 <= E < q^d.
DigitVector base_q_expansion(const BigInt& E, const BigInt& q, unsigned d);

/// sum_i b_i q^(i-1) mod (q^d - 1), on integers.
BigInt phi(const DigitVector& b, const BigInt& q);

struct InjectivityResult {
  bool injective = true;
  std::uint64_t count = 0;  // vectors examined
  DigitVector first, second;  // collision pair, in enumeration order
  BigInt residue;
};

/// Default enumeration budget for the exhaustive checks.
inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;

/// Exhaustive check of phi on {0..C}^d in lexicographic order (last coordinate fastest).
InjectivityResult check_injectivity(const BigInt& q, unsigned d, unsigned C,
                                    std::uint64_t budget = kEnumerationBudget);

/// Streaming generator of compositions of K into d parts, in lexicographic order.
class PatternEnumerator {
 public:
  PatternEnumerator(unsigned d, unsigned K);
  bool done() const { return done_; }
  const DigitVector& current() const { return cur_; }
  void next();

 private:
  unsigned d_, K_;
  DigitVector cur_;
  bool done_ = false;
};

std::vector<DigitVector> enumerate_patterns(unsigned d, unsigned K);

/// Injectivity of phi restricted to the compositions of K.
InjectivityResult check_injectivity_sumK(const BigInt& q, unsigned d, unsigned K,
                                         std::uint64_t budget = kEnumerationBudget);

struct TwistedPart {
  DigitVector b;
  unsigned twist = 0;
};

/// c_j = sum_t b_t[(j - e_t) mod d]: each twist rotates the digits towards higher positions.
DigitVector twisted_aggregate(const std::vector<TwistedPart>& parts, unsigned d);

/// E = discrete_log(lambda, omega) together with its base-q digits.
std::pair<u64, DigitVector> exponent_and_digits(const Fe& lambda, const Fe& omega, const FieldCtx& ctx);

/// phi(c) reduced into a machine word; requires q^d to fit in 64 bits.
u64 exponent_u64(const DigitVector& c, u64 q);

} // namespace singer

#endif
