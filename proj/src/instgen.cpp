#include "singer/instgen.hpp"

#include <random>

namespace singer {

Mat scramble(const ModuleSpec& spec, const Mat& A, const Mat& T) { return T * induced_matrix(spec, A) * inverse(T); }

PlantedInstance gen_instance(const ModuleSpec& spec, std::size_t n_generators, bool plant_singer, u64 seed,
                             bool allow_violations) {
  if (n_generators < 1) throw Error(ErrorCode::InvalidInput, "need at least one generator");
  FieldCtx ctx = FieldCtx::for_q(spec.q, spec.d);
  if (!allow_violations) {
    auto rep = check_constraints(spec, ctx.p());
    if (!rep.ok()) throw Error(ErrorCode::ConstraintViolation, rep.violations.front());
    auto mf = check_multiplicity_free(spec);
    if (!mf.multiplicity_free)
      throw Error(ErrorCode::ConstraintViolation, "W is not multiplicity-free: digits " + to_string(mf.witness) + " repeat");
  }
  std::mt19937_64 rng(seed);
  Oracle o;
  o.singer = plant_singer;
  for (std::size_t i = 0; i < n_generators; ++i) {
    if (i == 0 && plant_singer) o.A.push_back(make_singer(ctx, rng()).S);
    else o.A.push_back(random_invertible(ctx.Fq(), spec.d, rng));
  }
  o.T = random_invertible(ctx.Fq(), static_cast<Index>(dim(spec)), rng);
  PlantedInstance inst{ctx, spec, {}, seed, std::nullopt};
  for (const Mat& A : o.A) inst.generators.push_back(scramble(spec, A, o.T));
  inst.oracle = std::move(o);
  return inst;
}

namespace {

// Column-major vec: vec(P B - nu B A) = (I (x) P - nu A^T (x) I) vec(B).
Mat intertwiner_system(const Mat& P, const Mat& A, const Fe& nu) {
  const GaloisField& F = *field_of(P);
  const Index d = P.rows();
  Mat I = identity(F, d);
  return kron(I, P) - Mat(kron(Mat(A.transpose()), I) * nu);
}

struct Search {
  const std::vector<Mat>& phi;
  const std::vector<Mat>& A;
  std::vector<std::vector<Fe>> roots;
  std::optional<Mat> found;
  std::size_t ambiguous = 0;

  void run(std::size_t x, const Mat& K) {
    if (found) return;
    if (x == phi.size()) {
      if (K.cols() != 1) {
        ++ambiguous;
        return;
      }
      const Index d = phi[0].rows();
      Mat B(d, d);
      for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) B(i, j) = K(j * d + i, 0);
      if (!det(B).is_zero()) found = B;
      return;
    }
    for (const Fe& nu : roots[x]) {
      Mat S = intertwiner_system(phi[x], A[x], nu) * K;
      auto ker = kernel_basis(S);
      if (ker.empty()) continue;
      Mat Y(S.cols(), static_cast<Index>(ker.size()));
      for (std::size_t c = 0; c < ker.size(); ++c) Y.col(static_cast<Index>(c)) = ker[c];
      run(x + 1, Mat(K * Y));
    }
  }
};

} // namespace

OracleVerdict oracle_check(const std::vector<Mat>& phi, const PlantedInstance& instance) {
  OracleVerdict v;
  if (!instance.oracle) {
    v.witness = "instance carries no oracle block";
    return v;
  }
  const FieldCtx& ctx = instance.ctx;
  const auto& planted = instance.oracle->A;
  if (phi.size() != planted.size()) {
    v.witness = "result has " + std::to_string(phi.size()) + " matrices, instance has " + std::to_string(planted.size());
    return v;
  }
  const Index d = static_cast<Index>(ctx.d());
  std::vector<Mat> P, A;
  for (std::size_t x = 0; x < phi.size(); ++x) {
    if (phi[x].rows() != d || phi[x].cols() != d) {
      v.witness = "phi(" + std::to_string(x) + ") is not d x d";
      return v;
    }
    P.push_back(embed(phi[x], ctx));
    A.push_back(embed(planted[x], ctx));
  }
  Search s{P, A, {}, std::nullopt, 0};
  const GaloisField& F = ctx.Fqd();
  for (std::size_t x = 0; x < P.size(); ++x) {
    Fe dp = det(P[x]);
    if (dp.is_zero()) {
      v.witness = "phi(" + std::to_string(x) + ") is singular";
      return v;
    }
    // nu^d = det(phi(x)) / det(A_x)
    std::vector<u64> c(static_cast<std::size_t>(d) + 1, 0);
    c[0] = (-(dp / det(A[x]))).value();
    c.back() = 1;
    std::vector<Fe> r;
    for (auto& [root, m] : roots_in_field(DensePoly(&F, c))) r.push_back(root);
    if (r.empty()) {
      v.witness = "det ratio of generator " + std::to_string(x) + " has no d-th root";
      return v;
    }
    s.roots.push_back(r);
  }
  s.run(0, identity(F, d * d));
  if (s.found) {
    v.consistent = true;
    return v;
  }
  v.witness = s.ambiguous ? "intertwiner space has dimension above 1" : "no invertible intertwiner with the planted generators";
  return v;
}

OracleVerdict oracle_check(const RewriteResult& result, const PlantedInstance& instance) {
  return oracle_check(result.phi, instance);
}

} // namespace singer
