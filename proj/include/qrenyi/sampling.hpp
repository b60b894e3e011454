#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qrenyi/random.hpp"
#include "qrenyi/spectral.hpp"

namespace qrenyi {

/// Eigenvalues drawn log-uniformly from [1, value]; value >= 1.
struct ConditionNumber {
  double value;
};

/// Eigenvalues given verbatim (any order); one per dimension.
struct ExplicitEigenvalues {
  std::vector<double> values;
};

using SpectrumSpec = std::variant<ConditionNumber, ExplicitEigenvalues>;

/// U diag(lambda) U* with U Haar-distributed. Deterministic in
/// (dim, seed, spectrum). Errors: InvalidSpectrum.
PositiveDefiniteMatrix random_pd(Index dim, std::uint64_t seed, const SpectrumSpec& spectrum);
PositiveDefiniteMatrix random_pd(Index dim, Rng& rng, const SpectrumSpec& spectrum);

/// Haar unitary: QR of a complex Ginibre matrix with the R-diagonal phases
/// folded back into Q.
CMatrix random_unitary(Index dim, Rng& rng);

/// Complex Ginibre matrix, entries with E|z|^2 = 1.
CMatrix random_ginibre(Index rows, Index cols, Rng& rng);

/// GUE-like Hermitian matrix with unit-variance entries.
HermitianMatrix random_hermitian(Index dim, Rng& rng, double scale = 1.0);

/// U diag(sigma) V* with sigma log-uniform in [1, max_condition], scaled so
/// the largest singular value is drawn log-uniformly from [0.5, 2].
GeneralMatrix random_invertible(Index dim, Rng& rng, double max_condition);

/// Positive definite with unit trace and condition number at most
/// max_condition.
PositiveDefiniteMatrix random_density(Index dim, Rng& rng, double max_condition = 20.0);

}  // namespace qrenyi
