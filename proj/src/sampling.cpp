#include "qrenyi/sampling.hpp"

#include <cmath>
#include <sstream>

namespace qrenyi {

CMatrix random_ginibre(Index rows, Index cols, Rng& rng) {
  CMatrix g(rows, cols);
  const double scale = std::sqrt(0.5);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(scale * re, scale * im);
    }
  return g;
}

CMatrix random_unitary(Index dim, Rng& rng) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0);
    q.col(k) *= phase;
  }
  return q;
}

HermitianMatrix random_hermitian(Index dim, Rng& rng, double scale) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  return HermitianMatrix::symmetrized(scale * (g + g.adjoint()) / std::sqrt(2.0));
}

PositiveDefiniteMatrix random_pd(Index dim, Rng& rng, const SpectrumSpec& spectrum) {
  if (dim < 1) throw Error(ErrorCode::InvalidSpectrum, "dimension must be at least 1");
  RVector eig(dim);
  if (const auto* cond = std::get_if<ConditionNumber>(&spectrum)) {
    if (!(cond->value >= 1.0) || !std::isfinite(cond->value))
      throw Error(ErrorCode::InvalidSpectrum, "condition number must be a finite value >= 1");
    for (Index i = 0; i < dim; ++i) eig(i) = rng.log_uniform(1.0, cond->value);
  } else {
    const auto& values = std::get<ExplicitEigenvalues>(spectrum).values;
    if (static_cast<Index>(values.size()) != dim) {
      std::ostringstream os;
      os << "expected " << dim << " eigenvalues, got " << values.size();
      throw Error(ErrorCode::InvalidSpectrum, os.str());
    }
    for (Index i = 0; i < dim; ++i) {
      if (!(values[static_cast<std::size_t>(i)] > 0.0) ||
          !std::isfinite(values[static_cast<std::size_t>(i)]))
        throw Error(ErrorCode::InvalidSpectrum, "requested eigenvalues must be positive and finite");
      eig(i) = values[static_cast<std::size_t>(i)];
    }
  }
  CMatrix u = random_unitary(dim, rng);
  return PositiveDefiniteMatrix::from_decomposition({std::move(eig), std::move(u)});
}

PositiveDefiniteMatrix random_pd(Index dim, std::uint64_t seed, const SpectrumSpec& spectrum) {
  Rng rng(seed);
  return random_pd(dim, rng, spectrum);
}

GeneralMatrix random_invertible(Index dim, Rng& rng, double max_condition) {
  const double kappa = rng.log_uniform(1.0, max_condition);
  RVector sigma(dim);
  for (Index i = 0; i < dim; ++i) sigma(i) = rng.log_uniform(1.0 / kappa, 1.0);
  if (dim > 1) {
    sigma(0) = 1.0;
    sigma(dim - 1) = 1.0 / kappa;
  }
  sigma *= rng.log_uniform(0.5, 2.0);
  const CMatrix u = random_unitary(dim, rng);
  const CMatrix v = random_unitary(dim, rng);
  return GeneralMatrix(u * sigma.asDiagonal() * v.adjoint());
}

PositiveDefiniteMatrix random_density(Index dim, Rng& rng, double max_condition) {
  PositiveDefiniteMatrix p = random_pd(dim, rng, ConditionNumber{max_condition});
  SpectralDecomposition d = p.spectrum();
  d.eigenvalues /= d.eigenvalues.sum();
  return PositiveDefiniteMatrix::from_decomposition(std::move(d));
}

}  // namespace qrenyi
