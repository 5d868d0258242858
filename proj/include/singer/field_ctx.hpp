#ifndef SINGER_FIELD_CTX_HPP
#define SINGER_FIELD_CTX_HPP

#include <memory>
#include <optional>
#include <vector>

#include "singer/gf.hpp"
#include "singer/poly.hpp"

namespace singer {

/// The tower F_p <= F_q <= F_{q^d}.
///
/// Both extensions are built directly over F_p from the lexicographically smallest
/// irreducible of the right degree. F_q sits inside F_{q^d} through a fixed root of
/// the defining polynomial of F_q. Copies share the underlying fields, so elements
/// stay valid as long as any copy of the context is alive.
class FieldCtx {
 public:
  FieldCtx(u64 p, unsigned f, unsigned d);
  /// Build from a prime power q; throws InvalidInput if q is not one.
  static FieldCtx for_q(u64 q, unsigned d);

  u64 p() const { return p_; }
  unsigned f() const { return f_; }
  unsigned d() const { return d_; }
  u64 q() const { return Fq_->size(); }
  /// q^d - 1, the order of the Singer group.
  u64 N() const { return Fqd_->size() - 1; }

  const GaloisField& Fp() const { return *Fp_; }
  const GaloisField& Fq() const { return *Fq_; }
  const GaloisField& Fqd() const { return *Fqd_; }

  const std::vector<u64>& defining_poly_q() const { return Fq_->modulus(); }
  const std::vector<u64>& defining_poly_qd() const { return Fqd_->modulus(); }

  /// Image of the polynomial generator of F_q inside F_{q^d}.
  Fe embedding_root() const { return Fe(Fqd_.get(), root_); }

  /// Embed an element of F_p or F_q (or an integer) into F_{q^d}; elements already in F_{q^d} pass through.
  Fe embed(const Fe& x) const;
  /// Preimage in F_q of an element of F_{q^d}, if it lies in the subfield.
  std::optional<Fe> restrict_to_q(const Fe& y) const;
  /// x^(q^e) for x in F_{q^d}, e reduced mod d (negative e allowed). Elements of F_q are returned unchanged.
  Fe frobenius(const Fe& x, long long e) const;

  bool is_qd(const Fe& x) const { return x.typed() && x.field()->same_as(*Fqd_); }
  bool is_q(const Fe& x) const { return x.typed() && x.field()->same_as(*Fq_); }

  /// Canonical primitive element of F_{q^d} (smallest encoding).
  Fe primitive_qd() const { return Fe(Fqd_.get(), Fqd_->primitive()); }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) { return a.p_ == b.p_ && a.f_ == b.f_ && a.d_ == b.d_; }

 private:
  u64 p_;
  unsigned f_, d_;
  std::shared_ptr<const GaloisField> Fp_, Fq_, Fqd_;
  u64 root_ = 0;
  std::vector<u64> root_pows_;
};

/// Roots of g (over F_q) lying in F_{q^d}, with multiplicity, sorted by encoding.
std::vector<std::pair<Fe, unsigned>> roots_in_extension(const DensePoly& g, const FieldCtx& ctx);

/// Lift a polynomial over F_q into F_{q^d}[x].
DensePoly embed_poly(const DensePoly& g, const FieldCtx& ctx);

} // namespace singer

#endif
