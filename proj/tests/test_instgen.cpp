#include <gtest/gtest.h>

#include <random>

#include "singer/instgen.hpp"
#include "singer/serialize.hpp"

using namespace singer;

namespace {

ModuleSpec make(unsigned d, u64 q, const std::string& factors) { return ModuleSpec{d, q, parse_factors(factors)}; }

} // namespace

TEST(GenInstance, Sym2Shape) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 1);
  ASSERT_EQ(inst.generators.size(), 2u);
  for (const Mat& g : inst.generators) {
    EXPECT_EQ(g.rows(), 6);
    EXPECT_EQ(g.cols(), 6);
    EXPECT_TRUE(inst.ctx.is_q(g(0, 0)));
  }
  ASSERT_TRUE(inst.oracle.has_value());
  EXPECT_TRUE(inst.oracle->singer);
  // the planted first generator is a Singer cycle
  EXPECT_TRUE(is_irreducible(char_poly(inst.oracle->A[0])));
  EXPECT_EQ(element_order(make_singer(inst.ctx, 1).omega), inst.ctx.N());
}

TEST(GenInstance, PublicEqualsScrambledPlant) {
  auto inst = gen_instance(make(4, 7, "ext(2)"), 3, false, 2);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_EQ(inst.generators[i] * inst.oracle->T, inst.oracle->T * induced_matrix(inst.spec, inst.oracle->A[i]));
}

TEST(GenInstance, TrivialScrambleOfIdentity) {
  FieldCtx ctx(7, 1, 3);
  ModuleSpec spec = make(3, 7, "sym(2)");
  EXPECT_EQ(scramble(spec, identity(ctx.Fq(), 3), identity(ctx.Fq(), 6)), identity(ctx.Fq(), 6));
}

TEST(GenInstance, FunctorialityAudit) {
  auto inst = gen_instance(make(3, 7, "sym(3)"), 2, false, 3);
  const auto& o = *inst.oracle;
  EXPECT_EQ(inst.generators[0] * inst.generators[1], scramble(inst.spec, o.A[0] * o.A[1], o.T));
}

TEST(GenInstance, ScramblingKeepsSpectrum) {
  for (u64 seed = 0; seed < 5; ++seed) {
    auto inst = gen_instance(make(3, 5, "sym(2)"), 2, seed % 2 == 0, seed);
    for (std::size_t i = 0; i < 2; ++i)
      EXPECT_EQ(char_poly(inst.generators[i]), char_poly(induced_matrix(inst.spec, inst.oracle->A[i])));
  }
}

TEST(GenInstance, ConstraintViolations) {
  EXPECT_THROW(gen_instance(make(3, 5, "nat,nat@1"), 2, false, 1), Error);
  EXPECT_THROW(gen_instance(make(3, 5, "sym(4)"), 2, false, 1), Error);
  EXPECT_NO_THROW(gen_instance(make(3, 5, "nat,nat@1"), 2, false, 1, true));
  EXPECT_THROW(gen_instance(make(3, 7, "sym(2)"), 0, false, 1), Error);
}

TEST(OracleCheck, DetectsReplacedMatrix) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 4);
  // phi = A itself is consistent with B = I
  std::vector<Mat> phi{embed(inst.oracle->A[0], inst.ctx), embed(inst.oracle->A[1], inst.ctx)};
  EXPECT_TRUE(oracle_check(phi, inst).consistent);
  // a common conjugate with scalars stays consistent
  std::mt19937_64 rng(9);
  Mat B = random_invertible(inst.ctx.Fqd(), 3, rng);
  std::vector<Mat> conj{B * phi[0] * inverse(B) * inst.ctx.Fqd().element(7), B * phi[1] * inverse(B)};
  EXPECT_TRUE(oracle_check(conj, inst).consistent);
  conj[1] = random_invertible(inst.ctx.Fqd(), 3, rng);
  auto v = oracle_check(conj, inst);
  EXPECT_FALSE(v.consistent);
  EXPECT_FALSE(v.witness.empty());
}

TEST(OracleCheck, DimensionOne) {
  auto inst = gen_instance(make(1, 7, "nat"), 2, false, 5);
  std::vector<Mat> phi{identity(inst.ctx.Fqd(), 1), identity(inst.ctx.Fqd(), 1) * inst.ctx.Fqd().element(3)};
  EXPECT_TRUE(oracle_check(phi, inst).consistent);
}

TEST(Serialize, InstanceRoundTripIsBitExact) {
  auto inst = gen_instance(make(4, 7, "ext(2)@1"), 2, true, 6);
  std::string text = instance_to_json(inst).dump(2);
  PlantedInstance back = instance_from_json(parse_json(text));
  EXPECT_EQ(instance_to_json(back).dump(2), text);
  EXPECT_EQ(back.spec, inst.spec);
  ASSERT_TRUE(back.oracle.has_value());
  EXPECT_EQ(back.oracle->T, inst.oracle->T);
  std::string pub = instance_to_json(inst, false).dump();
  EXPECT_FALSE(instance_from_json(parse_json(pub)).oracle.has_value());
}

TEST(Serialize, ResultRoundTripIsBitExact) {
  auto inst = gen_instance(make(3, 7, "sym(2)"), 2, true, 7);
  RewriteConfig cfg;
  auto out = rewrite(inst.generators, inst.spec, cfg);
  ASSERT_TRUE(std::holds_alternative<RewriteResult>(out));
  std::string text = result_to_json(std::get<RewriteResult>(out)).dump(2);
  RewriteResult back = result_from_json(parse_json(text));
  EXPECT_EQ(result_to_json(back).dump(2), text);
  EXPECT_TRUE(verify_projective(back.phi, inst.generators, back.C, back.spec, back.ctx, cfg).verified);
}

TEST(Serialize, MalformedInputsCarryLocations) {
  auto expect_parse_error = [](const std::string& text, const std::string& where) {
    try {
      (void)instance_from_json(parse_json(text));
      ADD_FAILURE() << "accepted " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  expect_parse_error("{\"format\": ", "byte");
  expect_parse_error("{\"format\": \"other\"}", "$.format");
  auto inst = gen_instance(make(3, 7, "sym(2)"), 1, false, 8);
  Json j = instance_to_json(inst);
  j["generators"][0][1][2] = 49;
  expect_parse_error(j.dump(), "$.generators[0][1][2]");
  j = instance_to_json(inst);
  j["defining_poly_qd"] = {1, 1, 1, 1};
  expect_parse_error(j.dump(), "$.defining_poly_qd");
  j = instance_to_json(inst);
  j["generators"][0].erase(0);
  expect_parse_error(j.dump(), "$.generators[0]");
}
