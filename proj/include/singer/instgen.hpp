#ifndef SINGER_INSTGEN_HPP
#define SINGER_INSTGEN_HPP

#include <optional>
#include <string>
#include <vector>

#include "singer/rewrite.hpp"

namespace singer {

/// Hidden side of a planted instance.
struct Oracle {
  std::vector<Mat> A;  // planted d x d generators over F_q
  Mat T;               // scrambler on W
  bool singer = false; // A[0] is a Singer cycle
};

struct PlantedInstance {
  FieldCtx ctx;
  ModuleSpec spec;
  std::vector<Mat> generators;  // T * induced(A_x) * T^-1
  u64 seed = 0;
  std::optional<Oracle> oracle;
};

/// T * induced_matrix(spec, A) * T^-1.
Mat scramble(const ModuleSpec& spec, const Mat& A, const Mat& T);

/// Throws ConstraintViolation unless the spec passes check_constraints and is multiplicity-free,
/// or `allow_violations` is set (for negative tests).
PlantedInstance gen_instance(const ModuleSpec& spec, std::size_t n_generators, bool plant_singer, u64 seed,
                             bool allow_violations = false);

struct OracleVerdict {
  bool consistent = false;
  std::string witness;
};

/// Searches for one B with phi(x) = nu_x * B * A_x * B^-1 for all x.
OracleVerdict oracle_check(const std::vector<Mat>& phi, const PlantedInstance& instance);
OracleVerdict oracle_check(const RewriteResult& result, const PlantedInstance& instance);

} // namespace singer

#endif
