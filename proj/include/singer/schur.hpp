#ifndef SINGER_SCHUR_HPP
#define SINGER_SCHUR_HPP

#include <string>
#include <vector>

#include "singer/digitmap.hpp"
#include "singer/matrix.hpp"

namespace singer {

enum class FactorKind { Natural, Sym, Ext };

/// One tensor factor of W: a polynomial functor applied to V, then twisted by F^twist.
struct FactorSpec {
  FactorKind kind = FactorKind::Natural;
  unsigned k = 1;
  unsigned twist = 0;

  static FactorSpec nat(unsigned e = 0) { return {FactorKind::Natural, 1, e}; }
  static FactorSpec sym(unsigned k, unsigned e = 0) { return {FactorKind::Sym, k, e}; }
  static FactorSpec ext(unsigned k, unsigned e = 0) { return {FactorKind::Ext, k, e}; }

  unsigned degree() const { return kind == FactorKind::Natural ? 1 : k; }
  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

struct ModuleSpec {
  unsigned d = 1;
  u64 q = 2;
  std::vector<FactorSpec> factors;
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

std::string to_string(const FactorSpec& f);
/// Comma-separated factor list, e.g. "sym(2)@0,nat@1".
std::string factors_to_string(const std::vector<FactorSpec>& fs);
/// Full form "d=3 q=7 factors=[sym(2)@0]".
std::string to_string(const ModuleSpec& s);

/// Parses "sym(k)@e", "ext(k)@e", "nat@e" separated by commas; brackets and "@0" optional.
std::vector<FactorSpec> parse_factors(const std::string& text);
ModuleSpec parse_module_spec(const std::string& text);

u64 dim(const FactorSpec& f, unsigned d);
u64 dim(const ModuleSpec& s);
unsigned total_degree(const ModuleSpec& s);

/// Per-factor basis labels in lexicographic order; indices are 0-based.
std::vector<std::vector<unsigned>> factor_labels(const FactorSpec& f, unsigned d);

/// Untwisted digit vector of one factor label.
DigitVector factor_digits(const FactorSpec& f, const std::vector<unsigned>& label, unsigned d);

struct BasisLabel {
  std::vector<std::vector<unsigned>> parts;  // one index list per factor
  DigitVector digits;                        // twisted aggregate
};

/// Product order across factors, the first factor varying slowest.
std::vector<BasisLabel> basis_labels(const ModuleSpec& s);
/// 1-based human-readable label, e.g. "{1,2}|(3)".
std::string to_string(const BasisLabel& l);

/// Matrix of A on one untwisted factor (monomial basis for Sym, k x k minors for Ext).
Mat factor_matrix(const FactorSpec& f, const Mat& A);

/// M_W(A): factor matrices with entries raised to q^twist, combined by Kronecker product.
Mat induced_matrix(const ModuleSpec& s, const Mat& A);

struct ConstraintReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr u64 kDimBudget = 100'000;

ConstraintReport check_constraints(const ModuleSpec& s, u64 p, u64 dim_budget = kDimBudget);

struct MultiplicityReport {
  bool multiplicity_free = true;
  DigitVector witness;
  unsigned count = 0;
};

MultiplicityReport check_multiplicity_free(const ModuleSpec& s);

} // namespace singer

#endif
