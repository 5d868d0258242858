#include "singer/field_ctx.hpp"

#include <algorithm>

namespace singer {

FieldCtx::FieldCtx(u64 p, unsigned f, unsigned d) : p_(p), f_(f), d_(d) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
  if (f < 1 || d < 1) throw Error(ErrorCode::InvalidInput, "f and d must be positive");
  Fp_ = std::make_shared<GaloisField>(p, find_irreducible(p, 1));
  Fq_ = f == 1 ? Fp_ : std::make_shared<GaloisField>(p, find_irreducible(p, f));
  Fqd_ = d == 1 ? Fq_ : std::make_shared<GaloisField>(p, find_irreducible(p, f * d));

  if (d == 1 || f == 1) {
    root_ = Fqd_->gen().value();
    if (f == 1) root_ = 0;
  } else {
    DensePoly m(Fqd_.get(), Fq_->modulus());
    auto roots = roots_in_field(m);
    if (roots.empty()) throw Error(ErrorCode::InvalidInput, "defining polynomial of F_q has no root in F_{q^d}");
    auto key = [&](u64 v) { return Fqd_->digits(v); };
    auto best = std::min_element(roots.begin(), roots.end(),
                                 [&](const auto& a, const auto& b) { return key(a.first.value()) < key(b.first.value()); });
    root_ = best->first.value();
  }
  root_pows_.assign(f, 1);
  for (unsigned i = 1; i < f; ++i) root_pows_[i] = Fqd_->mul(root_pows_[i - 1], root_);
}

FieldCtx FieldCtx::for_q(u64 q, unsigned d) {
  auto [p, f] = prime_power(q);
  if (p == 0) throw Error(ErrorCode::InvalidInput, "q must be a prime power");
  return FieldCtx(p, f, d);
}

Fe FieldCtx::embed(const Fe& x) const {
  if (!x.typed()) return Fqd_->from_int(x.raw());
  if (x.field()->same_as(*Fqd_)) return Fe(Fqd_.get(), x.value());
  if (x.field()->same_as(*Fq_)) {
    auto dg = Fq_->digits(x.value());
    u64 acc = 0;
    for (unsigned i = 0; i < f_; ++i) {
      if (dg[i]) acc = Fqd_->add(acc, Fqd_->mul(dg[i], root_pows_[i]));
    }
    return Fe(Fqd_.get(), acc);
  }
  if (x.field()->same_as(*Fp_)) return Fe(Fqd_.get(), x.value());
  throw Error(ErrorCode::FieldMismatch, "element is not in this tower");
}

std::optional<Fe> FieldCtx::restrict_to_q(const Fe& y) const {
  if (is_q(y)) return Fe(Fq_.get(), y.value());
  if (!is_qd(y)) throw Error(ErrorCode::FieldMismatch, "restrict_to_q expects an element of F_{q^d}");
  if (f_ == 1) {
    if (y.value() < p_) return Fe(Fq_.get(), y.value());
    return std::nullopt;
  }
  // Solve sum_i c_i root^i = y over F_p by elimination on the digit columns.
  const unsigned rows = f_ * d_, cols = f_;
  std::vector<std::vector<u64>> M(rows, std::vector<u64>(cols + 1));
  for (unsigned j = 0; j < cols; ++j) {
    auto dg = Fqd_->digits(root_pows_[j]);
    for (unsigned i = 0; i < rows; ++i) M[i][j] = dg[i];
  }
  auto yd = Fqd_->digits(y.value());
  for (unsigned i = 0; i < rows; ++i) M[i][cols] = yd[i];
  std::vector<int> pivcol;
  unsigned r = 0;
  for (unsigned c = 0; c < cols && r < rows; ++c) {
    unsigned piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    u64 inv = invmod(M[r][c], p_);
    for (auto& v : M[r]) v = mulmod(v, inv, p_);
    for (unsigned i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      u64 t = M[i][c];
      for (unsigned k = 0; k <= cols; ++k) M[i][k] = (M[i][k] + p_ - mulmod(t, M[r][k], p_)) % p_;
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  for (unsigned i = r; i < rows; ++i)
    if (M[i][cols] != 0) return std::nullopt;
  std::vector<u64> coeff(cols, 0);
  for (unsigned i = 0; i < r; ++i) coeff[pivcol[i]] = M[i][cols];
  return Fe(Fq_.get(), Fq_->encode(coeff));
}

Fe FieldCtx::frobenius(const Fe& x, long long e) const {
  if (!x.typed()) return x;
  if (d_ == 1 || (x.field()->same_as(*Fq_) && !x.field()->same_as(*Fqd_))) return x;
  if (!x.field()->same_as(*Fqd_)) throw Error(ErrorCode::FieldMismatch, "frobenius expects an element of the tower");
  long long r = e % static_cast<long long>(d_);
  if (r < 0) r += d_;
  return Fe(Fqd_.get(), Fqd_->pow(x.value(), ipow(q(), static_cast<unsigned>(r))));
}

DensePoly embed_poly(const DensePoly& g, const FieldCtx& ctx) {
  return map_coeffs(g, &ctx.Fqd(), [&](const Fe& c) { return ctx.embed(c); });
}

std::vector<std::pair<Fe, unsigned>> roots_in_extension(const DensePoly& g, const FieldCtx& ctx) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidInput, "roots of the zero polynomial");
  return roots_in_field(embed_poly(g, ctx));
}

} // namespace singer
