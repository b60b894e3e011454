#include "qrenyi/means.hpp"

#include <cmath>
#include <sstream>

namespace qrenyi {

PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                      double alpha) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "geometric mean of " << a.dim() << "x" << a.dim() << " and " << b.dim() << "x" << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (!std::isfinite(alpha)) throw Error(ErrorCode::NonFinite, "mean weight must be finite");

  const PositiveDefiniteMatrix a_inv_half = matrix_power(a, -0.5);
  const PositiveDefiniteMatrix inner = pd_from(conjugate_form(b.hermitian(), a_inv_half.as_general()));
  const PositiveDefiniteMatrix inner_pow = matrix_power(inner, alpha);
  const PositiveDefiniteMatrix a_half = matrix_power(a, 0.5);
  return pd_from(conjugate_form(inner_pow.hermitian(), a_half.as_general()));
}

}  // namespace qrenyi
