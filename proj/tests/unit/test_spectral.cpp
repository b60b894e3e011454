#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qrenyi/sampling.hpp"
#include "qrenyi/spectral.hpp"

using namespace qrenyi;
using namespace testing_oracles;

namespace {
const Complex I1(0.0, 1.0);
}

TEST(HermitianFrom, DiagonalUnchanged) {
  CMatrix m = cdiag({2, 3});
  const HermitianMatrix h = hermitian_from(m);
  EXPECT_EQ(h.matrix(), m);
  EXPECT_EQ(h.max_asymmetry(), 0.0);
}

TEST(HermitianFrom, PauliYPattern) {
  CMatrix m(2, 2);
  m << 0.0, I1, -I1, 0.0;
  EXPECT_EQ(hermitian_from(m).matrix(), m);
}

TEST(HermitianFrom, SmallDriftIsAveraged) {
  CMatrix m(2, 2);
  m << 1.0, Complex(0.1, 1e-14), 0.1, 1.0;
  const HermitianMatrix h = hermitian_from(m);
  const CMatrix oracle = (m + m.adjoint()) / 2.0;
  EXPECT_LT(max_abs_diff(h.matrix(), oracle), 1e-17);
  EXPECT_EQ(h.matrix()(0, 1), std::conj(h.matrix()(1, 0)));
  EXPECT_GT(h.max_asymmetry(), 0.0);
}

TEST(HermitianFrom, Errors) {
  try {
    hermitian_from(CMatrix::Zero(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSquare);
  }
  CMatrix nan = CMatrix::Identity(2, 2);
  nan(0, 1) = std::nan("");
  try {
    hermitian_from(nan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
  CMatrix skew(2, 2);
  skew << 1.0, 0.5, 0.2, 1.0;
  try {
    hermitian_from(skew);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AsymmetryExceedsTolerance);
  }
}

TEST(PdFrom, AcceptsAndRejects) {
  const PositiveDefiniteMatrix p = pd_diag({1, 2});
  EXPECT_DOUBLE_EQ(p.min_eig(), 1.0);
  try {
    pd_diag({1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}

TEST(PdFrom, WishartPlusShift) {
  Rng rng(11);
  const CMatrix g = random_ginibre(4, 4, rng);
  const CMatrix w = g * g.adjoint() + 0.1 * CMatrix::Identity(4, 4);
  const PositiveDefiniteMatrix p = pd_of(w);
  EXPECT_NEAR(p.min_eig(), eigen_reference(w)(3), 1e-12);
  EXPECT_GT(p.min_eig(), 0.1 - 1e-12);
}

TEST(Decompose, DiagonalSorted) {
  const SpectralDecomposition d = decompose(hermitian_from(cdiag({3, 1, 2})));
  EXPECT_DOUBLE_EQ(d.eigenvalues(0), 3);
  EXPECT_DOUBLE_EQ(d.eigenvalues(1), 2);
  EXPECT_DOUBLE_EQ(d.eigenvalues(2), 1);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.eigenvectors(2, 1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.eigenvectors(1, 2)), 1.0, 1e-15);
}

TEST(Decompose, StandardTwoByTwo) {
  CMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  const SpectralDecomposition d = decompose(hermitian_from(m));
  EXPECT_NEAR(d.eigenvalues(0), 3.0, 1e-14);
  EXPECT_NEAR(d.eigenvalues(1), 1.0, 1e-14);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0)), r, 1e-14);
  EXPECT_NEAR(std::abs(d.eigenvectors(1, 0)), r, 1e-14);
  EXPECT_NEAR(std::abs(d.eigenvectors.col(0).dot(CMatrix::Ones(2, 1).col(0))), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 1) + d.eigenvectors(1, 1)), 0.0, 1e-14);
}

TEST(Decompose, RandomRoundTripAndUnitarity) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Index n = 1 + static_cast<Index>(seed % 8);
    const HermitianMatrix h = random_hermitian(n, rng, rng.log_uniform(1e-3, 1e3));
    const SpectralDecomposition d = decompose(h);
    EXPECT_LE(relative_frobenius(d.reconstruct(), h.matrix()), 1e-10);
    EXPECT_LE((d.eigenvectors.adjoint() * d.eigenvectors - CMatrix::Identity(n, n)).norm(), 1e-12);
    for (Index i = 0; i + 1 < n; ++i) EXPECT_GE(d.eigenvalues(i), d.eigenvalues(i + 1));
    const RVector ref = eigen_reference(h.matrix());
    EXPECT_LE((d.eigenvalues - ref).norm(), 1e-12 * std::max(1.0, ref.norm()));
  }
}

TEST(Decompose, DegenerateSpectrum) {
  Rng rng(5);
  const CMatrix u = random_unitary(4, rng);
  const CMatrix m = u * cdiag({2, 2, 2, 1}) * u.adjoint();
  const SpectralDecomposition d = decompose(HermitianMatrix::symmetrized(m));
  EXPECT_NEAR(d.eigenvalues(0), 2, 1e-13);
  EXPECT_NEAR(d.eigenvalues(2), 2, 1e-13);
  EXPECT_NEAR(d.eigenvalues(3), 1, 1e-13);
  EXPECT_LE(relative_frobenius(d.reconstruct(), m), 1e-12);
}

TEST(MatrixPower, Examples) {
  EXPECT_LT(max_abs_diff(matrix_power(pd_diag({4, 9}), 0.5).matrix(), cdiag({2, 3})), 1e-15);
  EXPECT_LT(max_abs_diff(matrix_power(pd_diag({2, 5}), -1).matrix(), cdiag({0.5, 0.2})), 1e-15);
  Rng rng(3);
  const PositiveDefiniteMatrix p = random_pd(3, rng, ConditionNumber{50});
  EXPECT_LE(relative_frobenius(matrix_power(p, 2).matrix(), p.matrix() * p.matrix()), 1e-10);
  EXPECT_EQ(matrix_power(p, 0).matrix(), CMatrix::Identity(3, 3));
  EXPECT_EQ(matrix_power(p, 1).matrix(), p.matrix());
}

TEST(MatrixPower, SemigroupAndInverse) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Index n = 1 + static_cast<Index>(seed % 6);
    const PositiveDefiniteMatrix p = random_pd(n, rng, ConditionNumber{1e3});
    const double t = rng.uniform(-2, 2), u = rng.uniform(-2, 2);
    EXPECT_LE(relative_frobenius(matrix_power(matrix_power(p, t), u).matrix(), matrix_power(p, t * u).matrix()),
              1e-8);
    EXPECT_LE(relative_frobenius(matrix_power(p, t).matrix() * matrix_power(p, -t).matrix(),
                                 CMatrix::Identity(n, n)),
              1e-8);
    const CMatrix ref = function_reference(p.matrix(), [t](double x) { return std::pow(x, t); });
    EXPECT_LE(relative_frobenius(matrix_power(p, t).matrix(), ref), 1e-10);
  }
}

TEST(MatrixLog, Examples) {
  EXPECT_LT(matrix_log(PositiveDefiniteMatrix::identity(3)).matrix().cwiseAbs().maxCoeff(), 1e-300);
  const double e = std::exp(1.0);
  EXPECT_LT(max_abs_diff(matrix_log(pd_diag({e, e * e})).matrix(), cdiag({1, 2})), 1e-15);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const PositiveDefiniteMatrix p = random_pd(4, rng, ConditionNumber{100});
    const CMatrix ref = function_reference(p.matrix(), [](double x) { return std::log(x); });
    EXPECT_LE(max_abs_diff(matrix_log(p).matrix(), ref), 1e-10);
    EXPECT_LE(relative_frobenius(matrix_exp(matrix_log(p)).matrix(), p.matrix()), 1e-10);
  }
}

TEST(SingularValues, Examples) {
  const RVector s = singular_values(GeneralMatrix(cdiag({3, -4}))).values;
  EXPECT_DOUBLE_EQ(s(0), 4);
  EXPECT_DOUBLE_EQ(s(1), 3);
  Rng rng(2);
  const RVector su = singular_values(GeneralMatrix(random_unitary(5, rng))).values;
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(su(i), 1.0, 1e-14);
}

TEST(SingularValues, MatchesGramEigenvalues) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const CMatrix m = random_ginibre(4, 4, rng);
    const RVector s = singular_values(GeneralMatrix(m)).values;
    const RVector ref = eigen_reference(m.adjoint() * m).cwiseMax(0.0).cwiseSqrt();
    EXPECT_LE((s - ref).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SingularValues, RectangularAndPd) {
  Rng rng(8);
  const CMatrix tall = random_ginibre(5, 3, rng);
  const RVector st = singular_values(GeneralMatrix(tall)).values;
  const RVector sw = singular_values(GeneralMatrix(tall.adjoint())).values;
  ASSERT_EQ(st.size(), 3);
  ASSERT_EQ(sw.size(), 3);
  EXPECT_LE((st - sw).cwiseAbs().maxCoeff(), 1e-12);
  const PositiveDefiniteMatrix p = random_pd(5, rng, ConditionNumber{1e4});
  EXPECT_LE((singular_values(p.as_general()).values - p.spectrum().eigenvalues).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SingularValues, SmallValuesKeepRelativeAccuracy) {
  Rng rng(4);
  const CMatrix u = random_unitary(3, rng), v = random_unitary(3, rng);
  const CMatrix m = u * cdiag({1.0, 1e-5, 1e-10}) * v.adjoint();
  const RVector s = singular_values(GeneralMatrix(m)).values;
  EXPECT_NEAR(s(2) / 1e-10, 1.0, 1e-5);
}

TEST(ConjugateForm, Examples) {
  Rng rng(6);
  const CMatrix x = random_ginibre(3, 3, rng);
  EXPECT_LT(max_abs_diff(conjugate_form(HermitianMatrix::identity(3), GeneralMatrix(x)).matrix(), x.adjoint() * x),
            1e-14);
  const HermitianMatrix m = random_hermitian(3, rng);
  EXPECT_EQ(conjugate_form(m, GeneralMatrix::identity(3)).matrix(), m.matrix());
  EXPECT_LT(max_abs_diff(conjugate_form(m, GeneralMatrix(x)).matrix(), x.adjoint() * m.matrix() * x), 1e-12);
  try {
    conjugate_form(m, GeneralMatrix(CMatrix::Identity(2, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ConjugateForm, InvertibleCongruencePreservesPositivity) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const PositiveDefiniteMatrix p = random_pd(3, rng, ConditionNumber{100});
    const GeneralMatrix x = random_invertible(3, rng, 100);
    EXPECT_GT(decompose(conjugate_form(p.hermitian(), x)).eigenvalues(2), 0.0);
  }
}

TEST(RandomPd, Examples) {
  const PositiveDefiniteMatrix one = random_pd(1, 77, ConditionNumber{10});
  EXPECT_GT(one.matrix()(0, 0).real(), 0.0);
  const PositiveDefiniteMatrix p = random_pd(3, 5, ExplicitEigenvalues{{1, 2, 3}});
  const RVector ev = decompose(p.hermitian()).eigenvalues;
  EXPECT_NEAR(ev(0), 3, 1e-10);
  EXPECT_NEAR(ev(1), 2, 1e-10);
  EXPECT_NEAR(ev(2), 1, 1e-10);
  EXPECT_EQ(random_pd(4, 9, ConditionNumber{100}).matrix(), random_pd(4, 9, ConditionNumber{100}).matrix());
  try {
    random_pd(2, 1, ExplicitEigenvalues{{1, -1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSpectrum);
  }
}

TEST(RandomPd, ConditionNumberRespected) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PositiveDefiniteMatrix p = random_pd(4, seed, ConditionNumber{100});
    const RVector ev = eigen_reference(p.matrix());
    EXPECT_LE(ev(0) / ev(3), 100 * (1 + 1e-10));
  }
}
