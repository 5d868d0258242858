#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "singer/field_ctx.hpp"
#include "singer/poly.hpp"

using namespace singer;

namespace {

// Plain-integer polynomial helpers over F_p, independent of the library.
using IntPoly = std::vector<long>;

IntPoly imod(IntPoly a, const IntPoly& m, long p) {
  while (a.size() >= m.size()) {
    long c = a.back() % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) a[shift + j] = ((a[shift + j] - c * m[j]) % p + p) % p;
    a.pop_back();
  }
  return a;
}

bool brute_irreducible(const IntPoly& f, long p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    long total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= p;
    for (long t = 0; t < total; ++t) {
      IntPoly g(k + 1, 0);
      long v = t;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = v % p;
        v /= p;
      }
      g[k] = 1;
      IntPoly r = imod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](long c) { return c == 0; })) return false;
    }
  }
  return true;
}

} // namespace

TEST(PrimeField, InverseOfSixMod7) {
  FieldCtx ctx(7, 1, 1);
  EXPECT_EQ(ctx.Fq().element(6).inverse().value(), 6u);
  EXPECT_EQ(ctx.Fq().one().inverse().value(), 1u);
}

TEST(PrimeField, DivisionByZeroThrows) {
  FieldCtx ctx(7, 1, 1);
  try {
    (void)ctx.Fq().zero().inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(ExtensionField, MixedFieldOperandsThrow) {
  FieldCtx ctx(7, 1, 3);
  try {
    (void)(ctx.Fq().one() + ctx.Fqd().gen());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldMismatch);
  }
}

TEST(ExtensionField, LagrangeOrderF343) {
  FieldCtx ctx(7, 1, 3);
  Fe a = ctx.Fqd().gen();
  EXPECT_TRUE(a.pow(342).is_one());
}

TEST(ExtensionField, InverseAndFermatRoundTrip) {
  for (auto [p, f, d] : {std::tuple{7ull, 1u, 3u}, {3ull, 2u, 2u}, {2ull, 3u, 2u}, {5ull, 2u, 3u}}) {
    FieldCtx ctx(p, f, d);
    std::mt19937_64 rng(11);
    const GaloisField& F = ctx.Fqd();
    for (int i = 0; i < 100; ++i) {
      Fe x = F.element(1 + rng() % (F.size() - 1));
      EXPECT_TRUE((x.inverse() * x).is_one());
      EXPECT_TRUE(x.pow(F.size() - 1).is_one());
    }
  }
}

TEST(ExtensionField, FieldAxiomsWithoutLogTables) {
  // 3^13 elements is above the log-table threshold, so this runs the schoolbook multiply
  FieldCtx big(3, 1, 13);
  std::mt19937_64 rng(3);
  const GaloisField& F = big.Fqd();
  for (int i = 0; i < 50; ++i) {
    Fe x = F.element(rng() % F.size());
    Fe y = F.element(rng() % F.size());
    Fe z = F.element(rng() % F.size());
    EXPECT_EQ(x * (y + z), x * y + x * z);
    if (!x.is_zero()) EXPECT_TRUE((x * x.inverse()).is_one());
  }
}

TEST(FindIrreducible, DegreeOneIsX) {
  auto c = find_irreducible(7, 1);
  EXPECT_EQ(c, (std::vector<u64>{0, 1}));
}

TEST(FindIrreducible, MatchesExhaustiveTrialDivision) {
  for (auto [p, n] : {std::pair{2ull, 4u}, {3ull, 3u}, {5ull, 2u}, {7ull, 3u}, {2ull, 6u}}) {
    auto c = find_irreducible(p, n);
    IntPoly f(c.begin(), c.end());
    EXPECT_TRUE(brute_irreducible(f, static_cast<long>(p)));
    // every lexicographically smaller monic candidate must be reducible
    long total = 1;
    for (unsigned i = 0; i < n; ++i) total *= static_cast<long>(p);
    for (long t = 0; t < total; ++t) {
      IntPoly g(n + 1, 0);
      long v = t;
      for (unsigned j = n; j-- > 0;) {
        g[j] = v % static_cast<long>(p);
        v /= static_cast<long>(p);
      }
      g[n] = 1;
      if (g == f) break;
      EXPECT_FALSE(brute_irreducible(g, static_cast<long>(p)));
    }
  }
}

TEST(FindIrreducible, F16QuotientHasNoRootsAndNoQuadraticFactor) {
  auto c = find_irreducible(2, 4);
  GaloisField F(2, c);
  EXPECT_EQ(F.size(), 16u);
  IntPoly f(c.begin(), c.end());
  EXPECT_NE(imod(f, {0, 1}, 2), IntPoly{0});
  EXPECT_NE(imod(f, {1, 1}, 2), IntPoly{0});
  EXPECT_NE(imod(f, {1, 1, 1}, 2), (IntPoly{0, 0}));
}

TEST(FactorPoly, DifferenceOfSquares) {
  FieldCtx ctx(7, 1, 1);
  const GaloisField* F = &ctx.Fq();
  auto fac = factor_poly(DensePoly(F, {6, 0, 1}));
  ASSERT_EQ(fac.size(), 2u);
  EXPECT_EQ(fac[0].first, DensePoly(F, {1, 1}));  // x + 1
  EXPECT_EQ(fac[1].first, DensePoly(F, {6, 1}));  // x - 1
  EXPECT_EQ(fac[0].second, 1u);
}

TEST(FactorPoly, WorkedCubicIsIrreducible) {
  FieldCtx ctx(7, 1, 1);
  DensePoly f(&ctx.Fq(), {4, 0, 6, 1});  // x^3 - x^2 - 3
  auto fac = factor_poly(f);
  ASSERT_EQ(fac.size(), 1u);
  EXPECT_EQ(fac[0].first, f);
  EXPECT_EQ(fac[0].second, 1u);
}

TEST(FactorPoly, RepeatedLinearTimesQuadratic) {
  FieldCtx ctx(5, 1, 1);
  const GaloisField* F = &ctx.Fq();
  DensePoly lin(F, {4, 1});
  DensePoly h(F, {2, 0, 1});  // x^2 + 2 has no root mod 5
  auto fac = factor_poly(lin * lin * h);
  ASSERT_EQ(fac.size(), 2u);
  EXPECT_EQ(fac[0].first, lin);
  EXPECT_EQ(fac[0].second, 2u);
  EXPECT_EQ(fac[1].first, h);
  EXPECT_EQ(fac[1].second, 1u);
}

TEST(FactorPoly, ZeroPolynomialRejected) {
  FieldCtx ctx(5, 1, 1);
  EXPECT_THROW(factor_poly(DensePoly(&ctx.Fq())), Error);
}

TEST(FactorPoly, RandomRemultiply) {
  std::mt19937_64 rng(2024);
  for (u64 q : {3ull, 5ull, 7ull, 9ull}) {
    FieldCtx ctx = FieldCtx::for_q(q, 1);
    const GaloisField* F = &ctx.Fq();
    for (int trial = 0; trial < 25; ++trial) {
      int deg = 1 + static_cast<int>(rng() % 12);
      std::vector<u64> c(deg + 1);
      for (auto& v : c) v = rng() % q;
      c[deg] = 1 + rng() % (q - 1);
      DensePoly g(F, c);
      auto fac = factor_poly(g);
      DensePoly prod = DensePoly::constant(F, g.lead());
      for (auto& [h, m] : fac) {
        EXPECT_TRUE(is_irreducible(h));
        for (unsigned i = 0; i < m; ++i) prod = prod * h;
      }
      EXPECT_EQ(prod, g);
      for (std::size_t i = 1; i < fac.size(); ++i) {
        const auto& a = fac[i - 1].first;
        const auto& b = fac[i].first;
        EXPECT_TRUE(a.degree() < b.degree() || (a.degree() == b.degree() && lex_less(a, b)));
      }
    }
  }
}

TEST(FactorPoly, CharacteristicTwoSplitting) {
  FieldCtx ctx(2, 2, 1);
  std::mt19937_64 rng(5);
  const GaloisField* F = &ctx.Fq();
  for (int trial = 0; trial < 30; ++trial) {
    int deg = 2 + static_cast<int>(rng() % 9);
    std::vector<u64> c(deg + 1);
    for (auto& v : c) v = rng() % 4;
    c[deg] = 1;
    DensePoly g(F, c);
    DensePoly prod = DensePoly::constant(F, 1);
    for (auto& [h, m] : factor_poly(g))
      for (unsigned i = 0; i < m; ++i) prod = prod * h;
    EXPECT_EQ(prod, g);
  }
}

TEST(RootsInExtension, IrreducibleCubicHasFrobeniusOrbit) {
  FieldCtx ctx(7, 1, 3);
  DensePoly f(&ctx.Fq(), {4, 0, 6, 1});
  auto roots = roots_in_extension(f, ctx);
  ASSERT_EQ(roots.size(), 3u);
  std::set<u64> vals;
  for (auto& [r, m] : roots) {
    EXPECT_EQ(m, 1u);
    vals.insert(r.value());
  }
  for (auto& [r, m] : roots) EXPECT_TRUE(vals.count(r.pow(7).value()));
  // brute force: the roots are exactly the field elements where f vanishes
  DensePoly fe = embed_poly(f, ctx);
  std::set<u64> brute;
  for (u64 v = 0; v < ctx.Fqd().size(); ++v)
    if (fe(ctx.Fqd().element(v)).is_zero()) brute.insert(v);
  EXPECT_EQ(brute, vals);
}

TEST(RootsInExtension, LinearAndQuadratic) {
  FieldCtx ctx(7, 1, 3);
  auto r = roots_in_extension(DensePoly(&ctx.Fq(), {4, 1}), ctx);  // x - 3
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].first, ctx.embed(ctx.Fq().element(3)));
  // x^2 + 1 is irreducible over F_7 and 2 does not divide 3
  EXPECT_TRUE(roots_in_extension(DensePoly(&ctx.Fq(), {1, 0, 1}), ctx).empty());
}

TEST(Order, KnownOrders) {
  FieldCtx ctx(7, 1, 3);
  EXPECT_EQ(element_order(ctx.Fqd().one()), 1u);
  EXPECT_EQ(element_order(ctx.Fq().element(6)), 2u);
  Fe g = ctx.primitive_qd();
  EXPECT_EQ(element_order(g), 342u);
  EXPECT_TRUE(g.pow(342).is_one());
  for (u64 r : {2ull, 3ull, 19ull}) EXPECT_FALSE(g.pow(342 / r).is_one());
  EXPECT_THROW(element_order(ctx.Fqd().zero()), Error);
}

TEST(DiscreteLog, Exponent147) {
  FieldCtx ctx(7, 1, 3);
  Fe w = ctx.primitive_qd();
  EXPECT_EQ(discrete_log(w.pow(147), w), 147u);
  EXPECT_EQ(discrete_log(ctx.Fqd().one(), w), 0u);
}

TEST(DiscreteLog, RandomRoundTrip) {
  std::mt19937_64 rng(99);
  for (auto [p, f, d] : {std::tuple{7ull, 1u, 3u}, {3ull, 2u, 3u}, {2ull, 1u, 20u}, {5ull, 1u, 9u}}) {
    FieldCtx ctx(p, f, d);
    Fe w = ctx.primitive_qd();
    for (int i = 0; i < 50; ++i) {
      u64 k = rng() % ctx.N();
      EXPECT_EQ(discrete_log(w.pow(k), w), k);
    }
    // non-primitive base: answers are reduced mod ord(base)
    Fe b = w.pow(2);
    u64 ob = element_order(b);
    for (int i = 0; i < 10; ++i) {
      u64 k = rng() % (3 * ob);
      EXPECT_EQ(discrete_log(b.pow(k), b), k % ob);
    }
  }
}

TEST(DiscreteLog, NotInSubgroup) {
  FieldCtx ctx(7, 1, 3);
  Fe w = ctx.primitive_qd();
  try {
    (void)discrete_log(w, w.pow(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInSubgroup);
  }
}

TEST(Embedding, HomomorphismOnRandomPairs) {
  for (auto [p, f, d] : {std::tuple{3ull, 2u, 3u}, {2ull, 3u, 2u}, {5ull, 2u, 2u}, {7ull, 1u, 3u}}) {
    FieldCtx ctx(p, f, d);
    std::mt19937_64 rng(8);
    const GaloisField& Fq = ctx.Fq();
    DensePoly m(&Fq, Fq.modulus());
    EXPECT_TRUE(embed_poly(m, ctx)(ctx.embedding_root()).is_zero());
    for (int i = 0; i < 100; ++i) {
      Fe x = Fq.element(rng() % Fq.size());
      Fe y = Fq.element(rng() % Fq.size());
      EXPECT_EQ(ctx.embed(x * y), ctx.embed(x) * ctx.embed(y));
      EXPECT_EQ(ctx.embed(x + y), ctx.embed(x) + ctx.embed(y));
      auto back = ctx.restrict_to_q(ctx.embed(x));
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, x);
    }
  }
}

TEST(Frobenius, FixesSubfieldExhaustively) {
  for (u64 q : {3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 25ull, 27ull, 49ull}) {
    FieldCtx ctx = FieldCtx::for_q(q, 2);
    for (u64 v = 0; v < q; ++v) {
      Fe e = ctx.embed(ctx.Fq().element(v));
      EXPECT_EQ(ctx.frobenius(e, 1), e);
    }
  }
}

TEST(Frobenius, InverseAndDefinition) {
  FieldCtx ctx(7, 1, 3);
  std::mt19937_64 rng(1);
  Fe w = ctx.primitive_qd();
  EXPECT_EQ(ctx.frobenius(w, 1), w.pow(7));
  for (int i = 0; i < 20; ++i) {
    Fe x = ctx.Fqd().element(rng() % ctx.Fqd().size());
    EXPECT_EQ(ctx.frobenius(x, 0), x);
    EXPECT_EQ(ctx.frobenius(ctx.frobenius(x, 1), 2), x);
    EXPECT_EQ(ctx.frobenius(ctx.frobenius(x, 2), -2), x);
  }
}
