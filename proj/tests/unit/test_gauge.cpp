#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qrenyi/gauge.hpp"

using namespace qrenyi;
using namespace testing_oracles;

namespace {
RVector vec(std::initializer_list<double> v) {
  RVector r(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

double scalar_gauge(double p, const RVector& x) {
  double acc = 0;
  for (Index i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x(i)), p);
  return std::pow(acc, 1.0 / p);
}
}  // namespace

TEST(GaugeValue, Examples) {
  EXPECT_DOUBLE_EQ(gauge_value(GaugeSpec::schatten(1), vec({1, -2, 3})), 6.0);
  EXPECT_DOUBLE_EQ(gauge_value(GaugeSpec::schatten(2), vec({3, 4})), 5.0);
  EXPECT_NEAR(gauge_value(GaugeSpec::schatten(-1), vec({2, 4})), 4.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(gauge_value(GaugeSpec::op(), vec({1, -7, 3})), 7.0);
  EXPECT_DOUBLE_EQ(gauge_value(GaugeSpec::trace(), vec({1, -7, 3})), 11.0);
  EXPECT_DOUBLE_EQ(gauge_value(GaugeSpec::kyfan(2), vec({1, -7, 3})), 10.0);
  EXPECT_DOUBLE_EQ(gauge_value(GaugeSpec::kyfan(9), vec({1, -7, 3})), 11.0);
}

TEST(GaugeValue, MatchesScalarFormula) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    RVector x(5);
    for (Index i = 0; i < 5; ++i) x(i) = rng.uniform(0.1, 3.0) * (rng.uniform() < 0.5 ? -1 : 1);
    const double p = rng.uniform(-3, 4);
    if (std::abs(p) < 0.05) continue;
    const double got = gauge_value(GaugeSpec::schatten(p), x);
    EXPECT_NEAR(got / scalar_gauge(p, x), 1.0, 1e-12);
  }
}

TEST(GaugeValue, Errors) {
  try {
    gauge_value(GaugeSpec::schatten(2), RVector());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyVector);
  }
  try {
    gauge_value(GaugeSpec::schatten(-1), vec({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroEntryWithNegativeExponent);
  }
}

TEST(SymNorm, Examples) {
  EXPECT_DOUBLE_EQ(sym_norm(GaugeSpec::op(), GeneralMatrix(cdiag({1, -5, 2}))), 5.0);
  CMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  EXPECT_NEAR(sym_norm(GaugeSpec::schatten(2), GeneralMatrix(swap)), std::sqrt(2.0), 1e-15);
  try {
    sym_norm(GaugeSpec::schatten(-1), GeneralMatrix(cdiag({1, 0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularInputForNegativeExponent);
  }
}

TEST(SymNorm, HermitianFastPathsMatchGeneric) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const HermitianMatrix h = random_hermitian(1 + static_cast<Index>(seed % 6), rng);
    for (const GaugeSpec& spec : {GaugeSpec::op(), GaugeSpec::trace()}) {
      const double fast = sym_norm(spec, h);
      const double generic = sym_norm(spec, h.as_general());
      EXPECT_LE(std::abs(fast - generic), 1e-12 * std::max(1.0, generic));
    }
  }
}

TEST(SymNorm, FrobeniusOracle) {
  Rng rng(13);
  const CMatrix m = random_ginibre(4, 3, rng);
  EXPECT_NEAR(sym_norm(GaugeSpec::schatten(2), GeneralMatrix(m)), m.norm(), 1e-12);
}

TEST(AntiNorm, Examples) {
  const GaugeSpec tr1 = GaugeSpec::anti_derived(GaugeSpec::trace(), 1);
  EXPECT_NEAR(anti_norm(tr1, pd_diag({2, 2})), 1.0, 1e-15);
  EXPECT_NEAR(anti_norm(GaugeSpec::anti_derived(GaugeSpec::op(), 1), pd_diag({2, 5})), 2.0, 1e-15);
  for (const GaugeSpec& base : {GaugeSpec::trace(), GaugeSpec::schatten(2), GaugeSpec::kyfan(2)}) {
    for (double p : {0.5, 1.0, 3.0}) {
      const double expect = std::pow(sym_norm(base, HermitianMatrix::identity(3)), -1.0 / p);
      EXPECT_NEAR(anti_norm(GaugeSpec::anti_derived(base, p), PositiveDefiniteMatrix::identity(3)), expect, 1e-14);
    }
  }
  EXPECT_NEAR(anti_norm(GaugeSpec::schatten(0.5), pd_diag({1, 4})), 9.0, 1e-13);
  try {
    anti_norm(GaugeSpec::schatten(2), pd_diag({1, 4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeClassMismatch);
  }
}

TEST(AntiNorm, SuperAdditive) {
  const GaugeSpec specs[] = {GaugeSpec::schatten(0.5), GaugeSpec::schatten(-1),
                             GaugeSpec::anti_derived(GaugeSpec::trace(), 1),
                             GaugeSpec::anti_derived(GaugeSpec::op(), 2),
                             GaugeSpec::anti_derived(GaugeSpec::schatten(3), 0.5)};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const Index n = 1 + static_cast<Index>(seed % 6);
    const PositiveDefiniteMatrix a = random_pd(n, rng, ConditionNumber{100});
    const PositiveDefiniteMatrix b = random_pd(n, rng, ConditionNumber{100});
    const PositiveDefiniteMatrix ab = pd_of(a.matrix() + b.matrix());
    for (const GaugeSpec& spec : specs) {
      const double lhs = anti_norm(spec, ab);
      const double rhs = anti_norm(spec, a) + anti_norm(spec, b);
      ASSERT_GE(lhs, rhs - 1e-9 * std::max(1.0, rhs)) << spec.to_string() << " seed " << seed;
    }
  }
}

TEST(SymNorm, UnitaryInvariance) {
  const GaugeSpec specs[] = {GaugeSpec::schatten(1), GaugeSpec::schatten(2.5), GaugeSpec::schatten(0.5),
                             GaugeSpec::kyfan(2), GaugeSpec::op(), GaugeSpec::trace()};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Index n = 2 + static_cast<Index>(seed % 4);
    const CMatrix m = random_ginibre(n, n, rng);
    const CMatrix u = decompose(random_hermitian(n, rng)).eigenvectors;
    const CMatrix v = decompose(random_hermitian(n, rng)).eigenvectors;
    for (const GaugeSpec& spec : specs) {
      const double a = sym_norm(spec, GeneralMatrix(m));
      const double b = sym_norm(spec, GeneralMatrix(u * m * v));
      EXPECT_LE(std::abs(a - b), 1e-9 * a);
    }
  }
}

TEST(SymNorm, MonotoneUnderWeakMajorization) {
  const GaugeSpec specs[] = {GaugeSpec::schatten(1), GaugeSpec::schatten(3), GaugeSpec::kyfan(2),
                             GaugeSpec::op(), GaugeSpec::trace()};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const Index n = 4;
    // s(N) is obtained from s(M) by averaging a pair and shrinking, so
    // s(N) <_w s(M) by construction.
    std::vector<double> sm(n);
    for (auto& x : sm) x = rng.uniform(0.1, 5);
    std::sort(sm.rbegin(), sm.rend());
    std::vector<double> sn = sm;
    const double avg = 0.5 * (sn[0] + sn[3]);
    sn[0] = sn[3] = avg;
    for (auto& x : sn) x *= rng.uniform(0.5, 1.0);
    const CMatrix u1 = random_unitary(n, rng), v1 = random_unitary(n, rng);
    const CMatrix u2 = random_unitary(n, rng), v2 = random_unitary(n, rng);
    const CMatrix m = u1 * cdiag(sm) * v1, nn = u2 * cdiag(sn) * v2;
    for (const GaugeSpec& spec : specs)
      EXPECT_GE(sym_norm(spec, GeneralMatrix(m)), sym_norm(spec, GeneralMatrix(nn)) - 1e-10);
  }
}

TEST(SymNorm, TriangleInequalityForSchattenNorms) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const double p = rng.uniform(1, 6);
    const GaugeSpec spec = GaugeSpec::schatten(p);
    const CMatrix a = random_ginibre(3, 3, rng), b = random_ginibre(3, 3, rng);
    const double lhs = sym_norm(spec, GeneralMatrix(a + b));
    const double rhs = sym_norm(spec, GeneralMatrix(a)) + sym_norm(spec, GeneralMatrix(b));
    ASSERT_LE(lhs, rhs * (1 + 1e-10));
  }
}

TEST(GaugeAxioms, Suites) {
  const VerificationReport r = check_gauge_axioms(GaugeSpec::schatten(2), 5, 1000, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.max_gap, 1e-12);
  const VerificationReport q = check_gauge_axioms(GaugeSpec::schatten(0.5), 2, 200, 3);
  EXPECT_FALSE(q.pass);
  EXPECT_EQ(q.params.at("classification"), "quasi_anti_norm");
  const VerificationReport one = check_gauge_axioms(GaugeSpec::schatten(3), 1, 200, 3);
  EXPECT_TRUE(one.pass);
  EXPECT_EQ(one.max_gap, 0.0);
  EXPECT_EQ(check_gauge_axioms(GaugeSpec::kyfan(2), 4, 100, 9).to_canonical_json(),
            check_gauge_axioms(GaugeSpec::kyfan(2), 4, 100, 9).to_canonical_json());
}

TEST(GaugeSpecParse, Grammar) {
  EXPECT_EQ(GaugeSpec::parse("schatten:2").to_string(), "schatten:2");
  EXPECT_EQ(GaugeSpec::parse("schatten:-0.5").exponent(), -0.5);
  EXPECT_EQ(GaugeSpec::parse("kyfan:3").k(), 3);
  EXPECT_EQ(GaugeSpec::parse("op").kind(), GaugeSpec::Kind::Operator);
  EXPECT_EQ(GaugeSpec::parse("trace").kind(), GaugeSpec::Kind::Trace);
  const GaugeSpec a = GaugeSpec::parse("anti:schatten:2:1.5");
  EXPECT_EQ(a.kind(), GaugeSpec::Kind::AntiDerived);
  EXPECT_EQ(a.base().exponent(), 2.0);
  EXPECT_EQ(a.exponent(), 1.5);
  EXPECT_EQ(GaugeSpec::parse(a.to_string()).to_string(), a.to_string());
  EXPECT_EQ(GaugeSpec::parse("anti:op:1").base().kind(), GaugeSpec::Kind::Operator);
  try {
    GaugeSpec::parse("anti:schatten:0.5:1");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeClassMismatch);
  }
  for (const char* bad : {"schatten:0", "kyfan:0", "kyfan:1.5", "schatten:", "frob", "anti:op:-1", "schatten:abc",
                          "op:1", ""}) {
    try {
      GaugeSpec::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidGaugeSpec) << bad;
    }
  }
}

TEST(GaugeSpecClass, Classification) {
  EXPECT_TRUE(GaugeSpec::schatten(1).is_norm());
  EXPECT_TRUE(GaugeSpec::kyfan(2).is_norm());
  EXPECT_TRUE(GaugeSpec::op().is_norm());
  EXPECT_TRUE(GaugeSpec::trace().is_norm());
  EXPECT_FALSE(GaugeSpec::schatten(0.5).is_norm());
  EXPECT_FALSE(GaugeSpec::schatten(-2).is_norm());
  EXPECT_FALSE(GaugeSpec::anti_derived(GaugeSpec::op(), 1).is_norm());
  EXPECT_TRUE(GaugeSpec::schatten(0.5).supports_holder());
  EXPECT_FALSE(GaugeSpec::schatten(-2).supports_holder());
  EXPECT_FALSE(GaugeSpec::schatten(2).supports_holder());
  EXPECT_FALSE(GaugeSpec::anti_derived(GaugeSpec::op(), 1).supports_holder());
}
