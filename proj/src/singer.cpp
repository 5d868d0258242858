#include "singer/singer.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace singer {

Mat companion(const DensePoly& f) {
  const GaloisField& F = *f.field();
  const Index d = f.degree();
  if (d < 1 || f.lead() != 1) throw Error(ErrorCode::InvalidInput, "companion matrix needs a monic polynomial of degree >= 1");
  Mat C = zeros(F, d, d);
  for (Index i = 0; i + 1 < d; ++i) C(i + 1, i) = F.one();
  for (Index i = 0; i < d; ++i) C(i, d - 1) = -f.coeff_fe(static_cast<std::size_t>(i));
  return C;
}

DensePoly minimal_polynomial(const Fe& x, const FieldCtx& ctx) {
  const GaloisField& Fqd = ctx.Fqd();
  Fe y = ctx.embed(x);
  // product over the distinct Frobenius conjugates of y
  std::vector<Fe> orbit{y};
  for (Fe z = ctx.frobenius(y, 1); z != y; z = ctx.frobenius(z, 1)) orbit.push_back(z);
  DensePoly m = DensePoly::constant(&Fqd, 1);
  for (const Fe& z : orbit) m = m * DensePoly(&Fqd, {(-z).value(), 1});
  std::vector<u64> coeffs;
  for (int i = 0; i <= m.degree(); ++i) {
    auto c = ctx.restrict_to_q(m.coeff_fe(static_cast<std::size_t>(i)));
    if (!c) throw Error(ErrorCode::InvalidInput, "minimal polynomial left F_q");
    coeffs.push_back(c->value());
  }
  return DensePoly(&ctx.Fq(), coeffs);
}

SingerElement make_singer(const FieldCtx& ctx, u64 seed) {
  const GaloisField& F = ctx.Fqd();
  const u64 N = ctx.N();
  std::mt19937_64 rng(seed);
  u64 a = N ? 1 + rng() % N : 1;
  for (u64 step = 0; step < N; ++step, a = a % N + 1) {
    if (F.order_of(a) != N) continue;
    Fe w(&F, a);
    DensePoly mp = minimal_polynomial(w, ctx);
    if (mp.degree() != static_cast<int>(ctx.d())) continue;
    return SingerElement{ctx, companion(mp), w, mp};
  }
  throw Error(ErrorCode::NotPrimitive, "no primitive element found");
}

std::map<DigitVector, Fe> model_eigenvalues(const FieldCtx& ctx, const ModuleSpec& spec, const Fe& omega) {
  if (!ctx.is_qd(omega) || omega.is_zero() || element_order(omega) != ctx.N())
    throw Error(ErrorCode::NotPrimitive, "omega does not generate the multiplicative group of F_{q^d}");
  std::map<DigitVector, Fe> out;
  for (const auto& l : basis_labels(spec)) out.emplace(l.digits, omega.pow(exponent_u64(l.digits, ctx.q())));
  return out;
}

std::vector<std::pair<Fe, unsigned>> spectrum_on_module(const SingerElement& s, const ModuleSpec& spec) {
  Mat M = induced_matrix(spec, s.S);
  return roots_in_extension(char_poly(M), s.ctx);
}

ModelMatch verify_model_match(const SingerElement& s, const ModuleSpec& spec) {
  ModelMatch res;
  std::vector<u64> actual;
  for (auto& [v, m] : spectrum_on_module(s, spec))
    for (unsigned i = 0; i < m; ++i) actual.push_back(v.value());
  std::vector<u64> model;
  const u64 q = s.ctx.q();
  for (const auto& l : basis_labels(spec)) model.push_back(s.omega.pow(exponent_u64(l.digits, q)).value());
  std::sort(model.begin(), model.end());
  std::sort(actual.begin(), actual.end());
  res.match = model == actual;
  if (!res.match) {
    std::ostringstream os;
    os << "spectrum has " << actual.size() << " roots in F_{q^d}, model has " << model.size();
    std::vector<u64> only_model, only_actual;
    std::set_difference(model.begin(), model.end(), actual.begin(), actual.end(), std::back_inserter(only_model));
    std::set_difference(actual.begin(), actual.end(), model.begin(), model.end(), std::back_inserter(only_actual));
    if (!only_model.empty()) os << "; first model-only value " << only_model.front();
    if (!only_actual.empty()) os << "; first spectrum-only value " << only_actual.front();
    res.details = os.str();
  }
  return res;
}

SpectrumReport verify_simple_spectrum(const SingerElement& s, const ModuleSpec& spec) {
  SpectrumReport rep;
  Mat M = induced_matrix(spec, s.S);
  auto pairs = eigenpairs_over_extension(M, s.ctx);
  unsigned total = 0;
  for (const auto& ep : pairs) {
    total += ep.multiplicity;
    if (rep.simple && (ep.multiplicity != 1 || ep.geometric != 1)) {
      rep.simple = false;
      rep.eigenvalue = ep.value;
      rep.multiplicity = ep.multiplicity;
      rep.eigenspace_dim = ep.geometric;
    }
  }
  if (rep.simple && total != static_cast<unsigned>(M.rows())) {
    // the spectrum did not split over F_{q^d}; no witness eigenvalue to report
    rep.simple = false;
  }
  return rep;
}

std::vector<u64> ppd_primes(u64 q, unsigned d) {
  std::vector<u64> out;
  u64 N = ipow(q, d) - 1;
  for (auto [r, e] : factorize(N)) {
    bool prim = true;
    for (unsigned i = 1; i < d && prim; ++i)
      if ((ipow(q, i) - 1) % r == 0) prim = false;
    if (prim) out.push_back(r);
  }
  return out;
}

} // namespace singer
