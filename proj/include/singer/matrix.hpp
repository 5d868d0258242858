#ifndef SINGER_MATRIX_HPP
#define SINGER_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "singer/field_ctx.hpp"
#include "singer/gf.hpp"
#include "singer/poly.hpp"

namespace singer {

using Mat = Eigen::Matrix<Fe, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Fe, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

Mat zeros(const GaloisField& F, Index rows, Index cols);
Mat identity(const GaloisField& F, Index n);
/// Matrix from integer encodings, row-major nested list.
Mat from_codes(const GaloisField& F, const std::vector<std::vector<u64>>& rows);
std::vector<std::vector<u64>> to_codes(const Mat& A);

/// Field of the first typed entry, or nullptr for an all-untyped matrix.
const GaloisField* field_of(const Mat& A);
/// Same entries with every untyped constant attached to F.
Mat attach(const Mat& A, const GaloisField& F);

/// Entrywise embedding of a matrix over F_q into F_{q^d}.
Mat embed(const Mat& A, const FieldCtx& ctx);
/// Entrywise x -> x^(q^e) over F_{q^d}; identity on F_q matrices.
Mat frobenius(const Mat& A, const FieldCtx& ctx, long long e);

Mat kron(const Mat& A, const Mat& B);
Fe det(const Mat& A);
Mat inverse(const Mat& A);
std::size_t rank(const Mat& A);
bool is_zero(const Mat& A);

/// Reduced row echelon form; pivots are chosen as the first nonzero entry
/// scanning columns left to right and, within a column, rows top to bottom.
Mat rref(const Mat& A, std::vector<Index>* pivot_cols = nullptr);

/// Echelonized basis of the right null space, one vector per free column.
std::vector<Vec> kernel_basis(const Mat& A);

/// Characteristic polynomial via Hessenberg reduction (no integer divisions).
DensePoly char_poly(const Mat& A);

/// Scale so that the first nonzero coordinate (row-major for matrices) equals 1.
Vec normalize_first(const Vec& v);
Mat normalize_pivot(const Mat& A);

/// Returns c with A == c * B entrywise, if such a nonzero c exists.
std::optional<Fe> proportionality(const Mat& A, const Mat& B);

struct EigenPair {
  Fe value;
  Vec vector;
  unsigned multiplicity = 0;
  std::size_t geometric = 0;
};

/// Eigenpairs of A (over F_q or F_{q^d}) for eigenvalues lying in F_{q^d}, sorted by encoding.
std::vector<EigenPair> eigenpairs_over_extension(const Mat& A, const FieldCtx& ctx);

Mat random_matrix(const GaloisField& F, Index rows, Index cols, std::mt19937_64& rng);
Mat random_invertible(const GaloisField& F, Index n, std::mt19937_64& rng);

} // namespace singer

#endif
