#pragma once

#include "qrenyi/spectral.hpp"

namespace qrenyi {

/// Weighted geometric mean A #_alpha B = A^{1/2} (A^{-1/2} B A^{-1/2})^alpha A^{1/2}.
/// Any finite alpha is accepted. Evaluation order is fixed (A^{-1/2}
/// congruence, inner power, A^{1/2} congruence) so results are reproducible.
/// Errors: DimensionMismatch, NonFinite, plus spectral errors.
PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                      double alpha);

}  // namespace qrenyi
