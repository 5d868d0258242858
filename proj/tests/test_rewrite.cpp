#include <gtest/gtest.h>

#include <random>
#include <set>

#include "singer/instgen.hpp"
#include "singer/rewrite.hpp"

using namespace singer;

namespace {

ModuleSpec make(unsigned d, u64 q, const std::string& factors) { return ModuleSpec{d, q, parse_factors(factors)}; }

RewriteResult must_rewrite(const PlantedInstance& inst, u64 seed) {
  RewriteConfig cfg;
  cfg.seed = seed;
  auto out = rewrite(inst.generators, inst.spec, cfg);
  if (auto* f = std::get_if<Failure>(&out)) ADD_FAILURE() << to_string(f->kind) << ": " << f->message;
  return std::get<RewriteResult>(out);
}

Mat power(const Mat& g, u64 k) {
  Mat r = identity(*field_of(g), g.rows());
  for (u64 i = 0; i < k; ++i) r = r * g;
  return r;
}

} // namespace

TEST(Config, DerivedTrialBudget) {
  RewriteConfig cfg;
  EXPECT_EQ(cfg.element_trials(), 56u);
  cfg.epsilon = 0.5;
  EXPECT_EQ(cfg.element_trials(), 8u);
  cfg.max_element_trials = 3;
  EXPECT_EQ(cfg.element_trials(), 3u);
  cfg.max_element_trials = 0;
  cfg.epsilon = 1.5;
  EXPECT_THROW(cfg.element_trials(), Error);
}

TEST(ProductReplacement, SingleGeneratorGivesPowers) {
  FieldCtx ctx(5, 1, 1);
  std::mt19937_64 rng(1);
  Mat g = from_codes(ctx.Fq(), {{2}});  // order 4
  std::set<u64> powers;
  for (u64 k = 1; k <= 4; ++k) powers.insert(power(g, k)(0, 0).value());
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(powers.count(random_element({g}, rng)(0, 0).value()));
  FieldCtx c3(7, 1, 1);
  Mat h = from_codes(c3.Fq(), {{1, 1}, {0, 1}});
  Mat s = random_element({h}, rng);
  // s = h^k with k >= 1: unipotent with nonzero corner
  EXPECT_EQ(s(0, 0), c3.Fq().one());
  EXPECT_EQ(s(1, 1), c3.Fq().one());
  EXPECT_TRUE(s(1, 0).is_zero());
}

TEST(ProductReplacement, IdentityStaysIdentity) {
  FieldCtx ctx(7, 1, 3);
  std::mt19937_64 rng(2);
  Mat I = identity(ctx.Fq(), 3);
  EXPECT_EQ(random_element({I, I}, rng), I);
}

TEST(ProductReplacement, SpreadsOverGL2F5) {
  FieldCtx ctx(5, 1, 2);
  std::mt19937_64 rng(3);
  std::vector<Mat> gens{from_codes(ctx.Fq(), {{2, 0}, {0, 1}}), from_codes(ctx.Fq(), {{4, 1}, {4, 0}})};
  ProductReplacement pr(gens, rng);
  std::set<std::vector<std::vector<u64>>> seen;
  for (int i = 0; i < 500; ++i) seen.insert(to_codes(pr.next()));
  EXPECT_GE(seen.size(), 20u);
}

TEST(ExtractionFactor, SkipsTopExteriorPower) {
  EXPECT_EQ(extraction_factor(make(3, 7, "sym(2)")), 0u);
  EXPECT_EQ(extraction_factor(make(3, 7, "ext(3),nat@1")), 1u);
  EXPECT_FALSE(extraction_factor(make(3, 7, "ext(3)")).has_value());
  EXPECT_FALSE(extraction_factor(make(3, 7, "")).has_value());
  EXPECT_EQ(extraction_factor(make(1, 7, "ext(1)")), 0u);
}

TEST(RecoverOmega, Sym3ModelSpectrum) {
  FieldCtx ctx(7, 1, 3);
  SingerElement s = make_singer(ctx, 11);
  ModuleSpec spec = make(3, 7, "sym(3)");
  std::vector<Fe> eig;
  for (auto& [c, v] : model_eigenvalues(ctx, spec, s.omega)) eig.push_back(v);
  std::sort(eig.begin(), eig.end(), [](const Fe& a, const Fe& b) { return a.value() < b.value(); });
  RewriteStats stats;
  auto r = recover_omega(eig, spec, ctx, &stats);
  ASSERT_TRUE(std::holds_alternative<OmegaLabeling>(r));
  const auto& lab = std::get<OmegaLabeling>(r);
  EXPECT_EQ(stats.dlog_calls, 1u);
  EXPECT_EQ(element_order(lab.omega), ctx.N());
  auto labels = basis_labels(spec);
  ASSERT_EQ(lab.label_of.size(), 10u);
  std::set<std::size_t> used(lab.label_of.begin(), lab.label_of.end());
  EXPECT_EQ(used.size(), 10u);
  for (std::size_t i = 0; i < eig.size(); ++i)
    EXPECT_EQ(lab.omega.pow(exponent_u64(labels[lab.label_of[i]].digits, 7)), eig[i]);
  // any valid omega is a Frobenius conjugate of the planted one
  bool conj = false;
  for (unsigned e = 0; e < 3; ++e) conj |= ctx.frobenius(s.omega, e) == lab.omega;
  EXPECT_TRUE(conj);
}

TEST(RecoverOmega, RejectsForeignValue) {
  FieldCtx ctx(7, 1, 3);
  SingerElement s = make_singer(ctx, 11);
  ModuleSpec spec = make(3, 7, "sym(2)");
  std::vector<Fe> eig;
  std::set<u64> vals;
  for (auto& [c, v] : model_eigenvalues(ctx, spec, s.omega)) eig.push_back(v), vals.insert(v.value());
  for (u64 a = 1;; ++a)
    if (!vals.count(a)) {
      eig.back() = ctx.Fqd().element(a);
      break;
    }
  auto r = recover_omega(eig, spec, ctx);
  ASSERT_TRUE(std::holds_alternative<Failure>(r));
  EXPECT_EQ(std::get<Failure>(r).kind, FailureKind::NotSingerSpectrum);
}

TEST(RecoverOmega, SquareRootsWhenKIsEven) {
  // K = 2 at (7,3): gcd(2, 342) = 2, so every label has at most two preimages of omega
  FieldCtx ctx(7, 1, 3);
  SingerElement s = make_singer(ctx, 4);
  ModuleSpec spec = make(3, 7, "sym(2)");
  std::vector<Fe> eig;
  for (auto& [c, v] : model_eigenvalues(ctx, spec, s.omega)) eig.push_back(v);
  auto r = recover_omega(eig, spec, ctx);
  ASSERT_TRUE(std::holds_alternative<OmegaLabeling>(r));
}

TEST(Reconstruct, WorkedSym2Example) {
  FieldCtx ctx(7, 1, 2);
  ModuleSpec spec = make(2, 7, "sym(2)");
  Mat A = from_codes(ctx.Fq(), {{6, 2}, {2, 4}});
  auto out = reconstruct_generator(induced_matrix(spec, A), spec, ctx);
  ASSERT_TRUE(std::holds_alternative<Mat>(out));
  const Mat& B = std::get<Mat>(out);
  EXPECT_EQ(to_codes(B), (std::vector<std::vector<u64>>{{1, 5}, {5, 3}}));
  auto lam = proportionality(A, B);
  ASSERT_TRUE(lam.has_value());
  EXPECT_EQ(lam->value(), 6u);
}

TEST(Reconstruct, RoundTripAcrossSpecs) {
  std::mt19937_64 rng(5);
  struct Case {
    unsigned d;
    u64 q;
    std::string f;
  };
  for (const Case& c : {Case{2, 7, "sym(2)"}, Case{3, 7, "sym(3)"}, Case{3, 7, "nat@1"}, Case{4, 7, "ext(2)"},
                        Case{4, 7, "ext(3)@2"}, Case{3, 5, "sym(2)@1"}, Case{3, 7, "ext(3),nat@1"}, Case{4, 11, "sym(2),ext(2)@1"},
                        Case{2, 5, "nat,sym(3)"}, Case{1, 7, "sym(2)"}}) {
    ModuleSpec spec = make(c.d, c.q, c.f);
    FieldCtx ctx = FieldCtx::for_q(c.q, c.d);
    for (int t = 0; t < 100; ++t) {
      const GaloisField& F = (t % 2) ? ctx.Fqd() : ctx.Fq();
      Mat A = random_invertible(F, c.d, rng);
      Fe s = F.element(1 + rng() % (F.size() - 1));
      auto out = reconstruct_generator(Mat(induced_matrix(spec, A) * s), spec, ctx);
      ASSERT_TRUE(std::holds_alternative<Mat>(out)) << c.f;
      EXPECT_TRUE(proportionality(std::get<Mat>(out), A).has_value()) << c.f;
    }
  }
}

TEST(DiagonalGauge, RemovesRandomRowScaling) {
  std::mt19937_64 rng(6);
  for (const std::string f : {"sym(2)", "sym(3)", "ext(2)", "nat,ext(4)", "ext(2)@1,ext(4)", "sym(2)@1"}) {
    ModuleSpec spec = make(4, 7, f);
    FieldCtx ctx(7, 1, 4);
    const GaloisField& F = ctx.Fqd();
    const Index n = static_cast<Index>(dim(spec));
    int solved = 0;
    for (int t = 0; t < 10; ++t) {
      Mat B = random_invertible(F, 4, rng);
      Mat G = identity(F, n), Gi = identity(F, n);
      for (Index i = 0; i < n; ++i) {
        G(i, i) = F.element(1 + rng() % (F.size() - 1));
        Gi(i, i) = G(i, i).inverse();
      }
      Mat Mhat = G * induced_matrix(spec, B) * Gi;
      auto h = find_diagonal_gauge(Mhat, spec, ctx);
      if (!h) continue;
      ++solved;
      Mat Hm = identity(F, n), Hi = identity(F, n);
      for (Index i = 0; i < n; ++i) Hm(i, i) = (*h)[i], Hi(i, i) = (*h)[i].inverse();
      // the same gauge straightens every other element of the group
      Mat B2 = random_invertible(F, 4, rng);
      Mat other = Hi * G * induced_matrix(spec, B2) * Gi * Hm;
      auto out = reconstruct_generator(other, spec, ctx);
      ASSERT_TRUE(std::holds_alternative<Mat>(out)) << f;
      EXPECT_TRUE(proportionality(induced_matrix(spec, std::get<Mat>(out)), other).has_value()) << f;
    }
    EXPECT_GE(solved, 8) << f;
  }
}

TEST(FindCandidate, IdentityGeneratorsFail) {
  ModuleSpec spec = make(3, 7, "sym(2)");
  FieldCtx ctx(7, 1, 3);
  RewriteConfig cfg;
  auto r = find_singer_candidate({identity(ctx.Fq(), 6)}, spec, ctx, cfg);
  ASSERT_TRUE(std::holds_alternative<Failure>(r));
  EXPECT_EQ(std::get<Failure>(r).kind, FailureKind::BudgetExhausted);
}

TEST(FindCandidate, PlantedSym2HasSixEigenvalues) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 7);
  RewriteConfig cfg;
  cfg.seed = 3;
  auto r = find_singer_candidate(inst.generators, inst.spec, inst.ctx, cfg);
  ASSERT_TRUE(std::holds_alternative<SingerCandidate>(r));
  const auto& c = std::get<SingerCandidate>(r);
  EXPECT_EQ(c.eigenvalues.size(), 6u);
  std::set<u64> distinct;
  for (const Fe& e : c.eigenvalues) distinct.insert(e.value());
  EXPECT_EQ(distinct.size(), 6u);
}

TEST(Eigenbasis, DiagonalizesInLabelOrder) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 8);
  RewriteConfig cfg;
  auto r = find_singer_candidate(inst.generators, inst.spec, inst.ctx, cfg);
  ASSERT_TRUE(std::holds_alternative<SingerCandidate>(r));
  const auto& c = std::get<SingerCandidate>(r);
  Mat C = build_eigenbasis(c.element, c.eigenvalues, c.labeling, inst.ctx);
  Mat D = C * embed(c.element, inst.ctx) * inverse(C);
  auto labels = basis_labels(inst.spec);
  for (Index i = 0; i < D.rows(); ++i)
    for (Index j = 0; j < D.cols(); ++j) {
      if (i != j) EXPECT_TRUE(D(i, j).is_zero());
      else EXPECT_EQ(D(i, i), c.labeling.omega.pow(exponent_u64(labels[i].digits, 7)));
    }
  for (Index i = 0; i < C.rows(); ++i) {
    Index j = 0;
    while (C(i, j).is_zero()) ++j;
    EXPECT_TRUE(C(i, j).is_one());
  }
}

TEST(Verify, IdentityGeneratorIsVerified) {
  ModuleSpec spec = make(3, 7, "sym(2)");
  FieldCtx ctx(7, 1, 3);
  RewriteConfig cfg;
  Mat phi = identity(ctx.Fqd(), 3) * ctx.Fqd().element(5);
  Verdict v = verify_projective({phi}, {identity(ctx.Fq(), 6)}, identity(ctx.Fqd(), 6), spec, ctx, cfg);
  EXPECT_TRUE(v.verified) << v.witness;
  ASSERT_EQ(v.scalars.size(), 1u);
  EXPECT_EQ(v.scalars[0], ctx.Fqd().element(5).pow(2));
}

TEST(Rewrite, PlantedSym2) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 21);
  RewriteResult r = must_rewrite(inst, 1);
  ASSERT_EQ(r.phi.size(), 2u);
  EXPECT_TRUE(oracle_check(r, inst).consistent);
  RewriteConfig cfg;
  EXPECT_TRUE(verify_projective(r.phi, inst.generators, r.C, inst.spec, r.ctx, cfg).verified);
  // labeling is a bijection onto basis_labels
  std::set<std::size_t> used(r.labels.begin(), r.labels.end());
  EXPECT_EQ(used.size(), 6u);
  EXPECT_GE(r.stats.elements_sampled, 1u);
  EXPECT_GE(r.stats.dlog_calls, 1u);
}

TEST(Rewrite, PlantedExt2AndSym3) {
  for (auto [d, f] : {std::pair{4u, "ext(2)"}, {3u, "sym(3)"}, {4u, "ext(2)@1"}, {3u, "sym(2)@1"}}) {
    auto inst = gen_instance(make(d, 7, f), 2, true, 33);
    RewriteResult r = must_rewrite(inst, 2);
    EXPECT_TRUE(oracle_check(r, inst).consistent) << f;
  }
}

TEST(Rewrite, TwistedSecondFactorAfterDeterminant) {
  auto inst = gen_instance(make(3, 7, "ext(3),nat@1"), 3, false, 44);
  RewriteResult r = must_rewrite(inst, 5);
  EXPECT_TRUE(oracle_check(r, inst).consistent);
}

TEST(Rewrite, ScalarCoherence) {
  auto inst = gen_instance(make(4, 7, "ext(2)"), 3, true, 55);
  RewriteResult r = must_rewrite(inst, 6);
  const Mat Ci = inverse(r.C);
  const u64 n = dim(inst.spec);
  for (std::size_t x = 0; x < r.phi.size(); ++x) {
    Mat conj = r.C * embed(inst.generators[x], r.ctx) * Ci;
    Fe ratio = det(induced_matrix(inst.spec, r.phi[x])) / det(conj);
    EXPECT_EQ(r.scalars[x].pow(n), ratio);
  }
}

TEST(Rewrite, DeterministicGivenSeed) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, false, 66);
  RewriteResult a = must_rewrite(inst, 9);
  RewriteResult b = must_rewrite(inst, 9);
  ASSERT_EQ(a.phi.size(), b.phi.size());
  for (std::size_t i = 0; i < a.phi.size(); ++i) EXPECT_EQ(a.phi[i], b.phi[i]);
  EXPECT_EQ(a.stats.elements_sampled, b.stats.elements_sampled);
}

TEST(Rewrite, DimensionOne) {
  auto inst = gen_instance(make(1, 7, "sym(2)"), 2, true, 3);
  RewriteResult r = must_rewrite(inst, 1);
  for (const Mat& m : r.phi) EXPECT_EQ(m, identity(r.ctx.Fqd(), 1));
  EXPECT_TRUE(oracle_check(r, inst).consistent);
}

TEST(Rewrite, RejectsInvalidSpecs) {
  FieldCtx ctx(5, 1, 3);
  try {
    (void)rewrite({identity(ctx.Fq(), 9)}, make(3, 5, "nat,nat@1"), RewriteConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstraintViolation);
  }
  EXPECT_THROW(rewrite({identity(ctx.Fq(), 15)}, make(3, 5, "sym(4)"), RewriteConfig{}), Error);
}

TEST(Rewrite, TamperedGeneratorNeverVerifies) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 77);
  std::mt19937_64 rng(1);
  auto gens = inst.generators;
  gens[1](2, 3) += inst.ctx.Fq().one();
  RewriteConfig cfg;
  cfg.seed = 4;
  auto out = rewrite(gens, inst.spec, cfg);
  if (auto* r = std::get_if<RewriteResult>(&out)) {
    // a returned result must satisfy the certificate for the tampered generators
    EXPECT_TRUE(verify_projective(r->phi, gens, r->C, inst.spec, r->ctx, cfg).verified);
  } else {
    EXPECT_EQ(std::get<Failure>(out).kind, FailureKind::BudgetExhausted);
  }
}

TEST(Verify, TamperedPhiIsRejected) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 88);
  RewriteResult r = must_rewrite(inst, 1);
  auto phi = r.phi;
  phi[0](1, 2) += r.ctx.Fqd().one();
  Verdict v = verify_projective(phi, inst.generators, r.C, inst.spec, r.ctx, RewriteConfig{});
  EXPECT_FALSE(v.verified);
  EXPECT_NE(v.witness.find("generator 0"), std::string::npos) << v.witness;
}
