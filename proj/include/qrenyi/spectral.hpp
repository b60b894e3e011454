#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>

#include "qrenyi/error.hpp"

namespace qrenyi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance on |M_ij - conj(M_ji)| (scaled by max |entry|) accepted
/// by hermitian_from before the input is rejected.
inline constexpr double kHermiticityTol = 1e-10;
/// A Hermitian matrix is positive definite when its smallest eigenvalue
/// exceeds kPdTolerance * (largest |eigenvalue|).
inline constexpr double kPdTolerance = 1e-12;
/// Relative (Frobenius) reconstruction tolerance of decompose().
inline constexpr double kReconstructionTol = 1e-9;
inline constexpr int kJacobiMaxSweeps = 100;
/// Jacobi stops once the off-diagonal Frobenius mass is below this times ||H||_F.
inline constexpr double kJacobiOffDiagonalTol = 1e-14;

/// Dense complex matrix with finite entries; not necessarily square.
class GeneralMatrix {
 public:
  explicit GeneralMatrix(CMatrix entries);

  static GeneralMatrix identity(Index n);

  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

/// Square matrix equal to its conjugate transpose. Construction always
/// symmetrizes, so entries[i][j] == conj(entries[j][i]) holds bit-exactly.
class HermitianMatrix {
 public:
  static HermitianMatrix identity(Index n);
  static HermitianMatrix diagonal(const RVector& d);

  /// Returns (M + M*)/2 without a tolerance gate. Intended for results of
  /// computations that are Hermitian up to rounding.
  static HermitianMatrix symmetrized(const CMatrix& m);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  /// Largest |M_ij - conj(M_ji)| of the raw input before symmetrization.
  double max_asymmetry() const { return max_asymmetry_; }
  double trace() const { return m_.trace().real(); }

  GeneralMatrix as_general() const { return GeneralMatrix(m_); }

 private:
  friend HermitianMatrix hermitian_from(const CMatrix& entries);
  HermitianMatrix(CMatrix m, double asym) : m_(std::move(m)), max_asymmetry_(asym) {}
  CMatrix m_;
  double max_asymmetry_ = 0.0;
};

/// Eigen-decomposition of a Hermitian matrix: eigenvalues descending and the
/// unitary whose columns are the matching eigenvectors.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;

  /// U diag(f(lambda)) U*.
  CMatrix reconstruct_with(const std::function<double(double)>& f) const;
  CMatrix reconstruct() const;
};

struct SingularValues {
  RVector values;  // descending, non-negative
};

class PositiveDefiniteMatrix {
 public:
  static PositiveDefiniteMatrix identity(Index n);

  /// Builds U diag(lambda) U* from a decomposition whose eigenvalues are all
  /// finite and strictly positive; the decomposition is kept as the cached
  /// spectrum. Throws NotPositiveDefinite / NonFinite otherwise.
  static PositiveDefiniteMatrix from_decomposition(SpectralDecomposition d);

  Index dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  double min_eig() const { return spectrum_.eigenvalues(spectrum_.eigenvalues.size() - 1); }
  double max_eig() const { return spectrum_.eigenvalues(0); }
  double trace() const { return h_.trace(); }

  GeneralMatrix as_general() const { return h_.as_general(); }

 private:
  friend PositiveDefiniteMatrix pd_from(const HermitianMatrix& h);
  PositiveDefiniteMatrix(HermitianMatrix h, SpectralDecomposition d)
      : h_(std::move(h)), spectrum_(std::move(d)) {}

  HermitianMatrix h_;
  SpectralDecomposition spectrum_;
};

/// Validates a square complex array and returns its Hermitian part.
/// Errors: NonSquare, NonFinite, AsymmetryExceedsTolerance.
HermitianMatrix hermitian_from(const CMatrix& entries);

/// Errors: NotPositiveDefinite.
PositiveDefiniteMatrix pd_from(const HermitianMatrix& h);

/// Cyclic complex Jacobi. Errors: ConvergenceFailure.
SpectralDecomposition decompose(const HermitianMatrix& h);

PositiveDefiniteMatrix matrix_power(const PositiveDefiniteMatrix& p, double t);
HermitianMatrix matrix_log(const PositiveDefiniteMatrix& p);
PositiveDefiniteMatrix matrix_exp(const HermitianMatrix& h);

/// f applied through the spectrum of h.
HermitianMatrix spectral_function(const HermitianMatrix& h, const std::function<double(double)>& f);

/// One-sided (Hestenes) Jacobi; high relative accuracy for the small
/// singular values of ill-conditioned inputs.
SingularValues singular_values(const GeneralMatrix& m);

/// X* M X, re-symmetrized. Errors: DimensionMismatch.
HermitianMatrix conjugate_form(const HermitianMatrix& m, const GeneralMatrix& x);

/// Relative Frobenius distance ||a - b||_F / max(||b||_F, tiny).
double relative_frobenius(const CMatrix& a, const CMatrix& b);

}  // namespace qrenyi
