#ifndef SINGER_SINGER_HPP
#define SINGER_SINGER_HPP

#include <map>
#include <string>
#include <vector>

#include "singer/schur.hpp"

namespace singer {

/// Companion matrix S of the minimal polynomial of a primitive element omega of F_{q^d}.
/// S is the matrix of multiplication by omega on the basis 1, omega, ..., omega^(d-1).
struct SingerElement {
  FieldCtx ctx;
  Mat S;
  Fe omega;
  DensePoly minpoly;  // over F_q
};

/// Companion matrix with ones on the subdiagonal and last column -c_0, ..., -c_{d-1}.
Mat companion(const DensePoly& monic_poly);

/// Minimal polynomial over F_q of an element of F_{q^d}.
DensePoly minimal_polynomial(const Fe& x, const FieldCtx& ctx);

SingerElement make_singer(const FieldCtx& ctx, u64 seed);

/// Eigenvalue -> omega^E(c) for every aggregated pattern of the module.
std::map<DigitVector, Fe> model_eigenvalues(const FieldCtx& ctx, const ModuleSpec& spec, const Fe& omega);

/// Eigenvalues of induced_matrix(spec, S) in F_{q^d}, with algebraic multiplicity, sorted by encoding.
std::vector<std::pair<Fe, unsigned>> spectrum_on_module(const SingerElement& s, const ModuleSpec& spec);

struct ModelMatch {
  bool match = false;
  std::string details;
};

ModelMatch verify_model_match(const SingerElement& s, const ModuleSpec& spec);

struct SpectrumReport {
  bool simple = true;
  Fe eigenvalue;
  unsigned multiplicity = 0;
  std::size_t eigenspace_dim = 0;
};

SpectrumReport verify_simple_spectrum(const SingerElement& s, const ModuleSpec& spec);

/// Primes dividing q^d - 1 but no q^i - 1 with i < d.
std::vector<u64> ppd_primes(u64 q, unsigned d);

} // namespace singer

#endif
