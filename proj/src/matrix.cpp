#include "singer/matrix.hpp"

namespace singer {

namespace {

// Row-major encoding buffer; elimination runs on raw encodings for speed.
struct Buf {
  const GaloisField* F;
  Index r, c;
  std::vector<u64> a;
  u64& at(Index i, Index j) { return a[static_cast<std::size_t>(i * c + j)]; }
  u64 at(Index i, Index j) const { return a[static_cast<std::size_t>(i * c + j)]; }
  void swap_rows(Index i, Index k) {
    if (i == k) return;
    for (Index j = 0; j < c; ++j) std::swap(at(i, j), at(k, j));
  }
};

const GaloisField& require_field(const Mat& A) {
  const GaloisField* F = field_of(A);
  if (!F) throw Error(ErrorCode::InvalidInput, "matrix carries no field");
  return *F;
}

Buf to_buf(const Mat& A, const GaloisField& F) {
  Buf b{&F, A.rows(), A.cols(), std::vector<u64>(static_cast<std::size_t>(A.size()))};
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) b.at(i, j) = A(i, j).in(F).value();
  return b;
}

Mat from_buf(const Buf& b) {
  Mat M(b.r, b.c);
  for (Index i = 0; i < b.r; ++i)
    for (Index j = 0; j < b.c; ++j) M(i, j) = Fe(b.F, b.at(i, j));
  return M;
}

// In-place RREF; returns pivot columns. Only the first `limit` columns are used as pivots.
std::vector<Index> rref_buf(Buf& b, Index limit) {
  const GaloisField& F = *b.F;
  std::vector<Index> piv;
  Index row = 0;
  for (Index col = 0; col < limit && row < b.r; ++col) {
    Index sel = -1;
    for (Index i = row; i < b.r; ++i)
      if (b.at(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    b.swap_rows(sel, row);
    u64 inv = F.inv(b.at(row, col));
    for (Index j = col; j < b.c; ++j) b.at(row, j) = F.mul(b.at(row, j), inv);
    for (Index i = 0; i < b.r; ++i) {
      if (i == row) continue;
      u64 t = b.at(i, col);
      if (!t) continue;
      for (Index j = col; j < b.c; ++j) {
        u64 v = b.at(row, j);
        if (v) b.at(i, j) = F.sub(b.at(i, j), F.mul(t, v));
      }
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

} // namespace

Mat zeros(const GaloisField& F, Index rows, Index cols) { return Mat::Constant(rows, cols, F.zero()); }

Mat identity(const GaloisField& F, Index n) {
  Mat I = zeros(F, n, n);
  for (Index i = 0; i < n; ++i) I(i, i) = F.one();
  return I;
}

Mat from_codes(const GaloisField& F, const std::vector<std::vector<u64>>& rows) {
  Index r = static_cast<Index>(rows.size());
  Index c = r ? static_cast<Index>(rows[0].size()) : 0;
  Mat M(r, c);
  for (Index i = 0; i < r; ++i) {
    if (static_cast<Index>(rows[i].size()) != c) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (Index j = 0; j < c; ++j) M(i, j) = F.element(rows[i][j]);
  }
  return M;
}

std::vector<std::vector<u64>> to_codes(const Mat& A) {
  std::vector<std::vector<u64>> out(A.rows(), std::vector<u64>(A.cols()));
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) out[i][j] = A(i, j).value();
  return out;
}

const GaloisField* field_of(const Mat& A) {
  for (Index k = 0; k < A.size(); ++k)
    if (A.data()[k].typed()) return A.data()[k].field();
  return nullptr;
}

Mat attach(const Mat& A, const GaloisField& F) {
  return A.unaryExpr([&](const Fe& x) { return x.in(F); });
}

Mat embed(const Mat& A, const FieldCtx& ctx) {
  return A.unaryExpr([&](const Fe& x) { return ctx.embed(x); });
}

Mat frobenius(const Mat& A, const FieldCtx& ctx, long long e) {
  if (e % static_cast<long long>(ctx.d()) == 0) return A;
  return A.unaryExpr([&](const Fe& x) { return ctx.frobenius(x, e); });
}

Mat kron(const Mat& A, const Mat& B) {
  Mat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

bool is_zero(const Mat& A) {
  for (Index k = 0; k < A.size(); ++k)
    if (!A.data()[k].is_zero()) return false;
  return true;
}

Fe det(const Mat& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::ShapeMismatch, "det of non-square matrix");
  if (A.rows() == 0) return Fe(1);
  const GaloisField& F = require_field(A);
  Buf b = to_buf(A, F);
  const Index n = b.r;
  u64 acc = 1;
  for (Index col = 0; col < n; ++col) {
    Index sel = -1;
    for (Index i = col; i < n; ++i)
      if (b.at(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) return F.zero();
    if (sel != col) {
      b.swap_rows(sel, col);
      acc = F.neg(acc);
    }
    u64 pv = b.at(col, col);
    acc = F.mul(acc, pv);
    u64 inv = F.inv(pv);
    for (Index i = col + 1; i < n; ++i) {
      u64 t = b.at(i, col);
      if (!t) continue;
      t = F.mul(t, inv);
      for (Index j = col; j < n; ++j) b.at(i, j) = F.sub(b.at(i, j), F.mul(t, b.at(col, j)));
    }
  }
  return Fe(&F, acc);
}

Mat inverse(const Mat& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
  const GaloisField& F = require_field(A);
  const Index n = A.rows();
  Buf b{&F, n, 2 * n, std::vector<u64>(static_cast<std::size_t>(2 * n * n), 0)};
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) b.at(i, j) = A(i, j).in(F).value();
    b.at(i, n + i) = 1;
  }
  auto piv = rref_buf(b, n);
  if (static_cast<Index>(piv.size()) != n) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  Mat inv(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) inv(i, j) = Fe(&F, b.at(i, n + j));
  return inv;
}

Mat rref(const Mat& A, std::vector<Index>* pivot_cols) {
  const GaloisField* F = field_of(A);
  if (!F) {
    if (pivot_cols) pivot_cols->clear();
    return A;
  }
  Buf b = to_buf(A, *F);
  auto piv = rref_buf(b, b.c);
  if (pivot_cols) *pivot_cols = piv;
  return from_buf(b);
}

std::size_t rank(const Mat& A) {
  std::vector<Index> piv;
  rref(A, &piv);
  return piv.size();
}

std::vector<Vec> kernel_basis(const Mat& A) {
  const GaloisField* F = field_of(A);
  std::vector<Vec> out;
  if (!F) {
    // an all-zero untyped matrix: standard basis with untyped entries
    for (Index j = 0; j < A.cols(); ++j) {
      Vec v = Vec::Constant(A.cols(), Fe(0));
      v(j) = Fe(1);
      out.push_back(v);
    }
    return out;
  }
  Buf b = to_buf(A, *F);
  auto piv = rref_buf(b, b.c);
  std::vector<bool> is_piv(static_cast<std::size_t>(b.c), false);
  for (Index c : piv) is_piv[static_cast<std::size_t>(c)] = true;
  for (Index fcol = 0; fcol < b.c; ++fcol) {
    if (is_piv[static_cast<std::size_t>(fcol)]) continue;
    Vec v = Vec::Constant(b.c, F->zero());
    v(fcol) = F->one();
    for (std::size_t r = 0; r < piv.size(); ++r) v(piv[r]) = Fe(F, F->neg(b.at(static_cast<Index>(r), fcol)));
    out.push_back(v);
  }
  return out;
}

DensePoly char_poly(const Mat& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::ShapeMismatch, "char_poly of non-square matrix");
  const GaloisField& F = require_field(A);
  Buf H = to_buf(A, F);
  const Index n = H.r;

  // Similarity reduction to upper Hessenberg form.
  for (Index m = 1; m + 1 < n; ++m) {
    Index sel = -1;
    for (Index i = m; i < n; ++i)
      if (H.at(i, m - 1) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != m) {
      H.swap_rows(sel, m);
      for (Index i = 0; i < n; ++i) std::swap(H.at(i, sel), H.at(i, m));
    }
    u64 inv = F.inv(H.at(m, m - 1));
    for (Index i = m + 1; i < n; ++i) {
      u64 t = H.at(i, m - 1);
      if (!t) continue;
      t = F.mul(t, inv);
      for (Index j = 0; j < n; ++j) H.at(i, j) = F.sub(H.at(i, j), F.mul(t, H.at(m, j)));
      for (Index j = 0; j < n; ++j) H.at(j, m) = F.add(H.at(j, m), F.mul(t, H.at(j, i)));
    }
  }

  // p[k] is the characteristic polynomial of the leading k x k block.
  std::vector<std::vector<u64>> p(static_cast<std::size_t>(n + 1));
  p[0] = {1};
  for (Index k = 1; k <= n; ++k) {
    std::vector<u64> next(static_cast<std::size_t>(k + 1), 0);
    const auto& prev = p[static_cast<std::size_t>(k - 1)];
    u64 hkk = H.at(k - 1, k - 1);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] = F.add(next[i + 1], prev[i]);
      next[i] = F.sub(next[i], F.mul(hkk, prev[i]));
    }
    u64 t = 1;
    for (Index i = 1; i < k; ++i) {
      t = F.mul(t, H.at(k - i, k - i - 1));
      if (!t) break;
      u64 coef = F.mul(t, H.at(k - i - 1, k - 1));
      if (!coef) continue;
      const auto& pp = p[static_cast<std::size_t>(k - i - 1)];
      for (std::size_t j = 0; j < pp.size(); ++j) next[j] = F.sub(next[j], F.mul(coef, pp[j]));
    }
    p[static_cast<std::size_t>(k)] = std::move(next);
  }
  return DensePoly(&F, p[static_cast<std::size_t>(n)]);
}

Vec normalize_first(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) {
      Fe s = v(i).inverse();
      return v * s;
    }
  return v;
}

Mat normalize_pivot(const Mat& A) {
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      if (!A(i, j).is_zero()) {
        Fe s = A(i, j).inverse();
        return A * s;
      }
  return A;
}

std::optional<Fe> proportionality(const Mat& A, const Mat& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return std::nullopt;
  std::optional<Fe> c;
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) {
      const Fe& a = A(i, j);
      const Fe& b = B(i, j);
      if (b.is_zero()) {
        if (!a.is_zero()) return std::nullopt;
        continue;
      }
      if (a.is_zero()) return std::nullopt;
      if (!c) c = a / b;
    }
  if (!c) return std::nullopt;
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      if (A(i, j) != *c * B(i, j)) return std::nullopt;
  return c;
}

std::vector<EigenPair> eigenpairs_over_extension(const Mat& A, const FieldCtx& ctx) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::ShapeMismatch, "eigenpairs of non-square matrix");
  const GaloisField& F = require_field(A);
  DensePoly cp = char_poly(A);
  auto roots = F.same_as(ctx.Fqd()) ? roots_in_field(cp) : roots_in_extension(cp, ctx);
  Mat Ae = embed(A, ctx);
  std::vector<EigenPair> out;
  for (auto& [lam, mult] : roots) {
    Mat shifted = Ae;
    for (Index i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lam;
    auto ker = kernel_basis(shifted);
    EigenPair ep;
    ep.value = lam;
    ep.vector = ker.empty() ? Vec() : normalize_first(ker.front());
    ep.multiplicity = mult;
    ep.geometric = ker.size();
    out.push_back(std::move(ep));
  }
  return out;
}

Mat random_matrix(const GaloisField& F, Index rows, Index cols, std::mt19937_64& rng) {
  Mat M(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = Fe(&F, rng() % F.size());
  return M;
}

Mat random_invertible(const GaloisField& F, Index n, std::mt19937_64& rng) {
  for (;;) {
    Mat M = random_matrix(F, n, n, rng);
    if (!det(M).is_zero()) return M;
  }
}

} // namespace singer
