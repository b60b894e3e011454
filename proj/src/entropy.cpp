#include "qrenyi/entropy.hpp"

#include <cmath>
#include <sstream>

#include "qrenyi/gauge.hpp"

namespace qrenyi {

namespace {

void check_pair(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "entropy arguments have dimensions " << a.dim() << " and " << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

void check_alpha(double alpha, bool divergence) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::AlphaNotPositive, "alpha must be a positive finite number");
  if (divergence && alpha == 1.0)
    throw Error(ErrorCode::AlphaIsOne, "the divergence is undefined at alpha = 1");
}

// Eigenvalues of a Hermitian matrix known to be positive definite.
RVector positive_spectrum(const HermitianMatrix& h) {
  RVector eig = decompose(h).eigenvalues;
  if (!(eig(eig.size() - 1) > 0.0))
    throw Error(ErrorCode::NotPositiveDefinite, "sandwiched matrix lost positivity to rounding");
  return eig;
}

// log sum_i lambda_i^t without overflow.
double log_trace_power(const RVector& eig, double t) {
  double m = -INFINITY;
  for (Index i = 0; i < eig.size(); ++i) m = std::max(m, t * std::log(eig(i)));
  double sum = 0.0;
  for (Index i = 0; i < eig.size(); ++i) sum += std::exp(t * std::log(eig(i)) - m);
  return m + std::log(sum);
}

// tr(X Y) for Hermitian X, Y.
double trace_product(const CMatrix& x, const CMatrix& y) {
  return x.cwiseProduct(y.conjugate()).sum().real();
}

HermitianMatrix sandwich(const PositiveDefiniteMatrix& outer, double outer_power, const HermitianMatrix& inner) {
  return conjugate_form(inner, matrix_power(outer, outer_power).as_general());
}

}  // namespace

double petz_renyi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha) {
  check_pair(a, b);
  check_alpha(alpha, true);
  const double tr = trace_product(matrix_power(a, alpha).matrix(), matrix_power(b, 1.0 - alpha).matrix());
  return std::log(tr) / (alpha - 1.0);
}

double sandwiched_quasi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha) {
  check_pair(a, b);
  check_alpha(alpha, false);
  const RVector eig = positive_spectrum(sandwich(b, (1.0 - alpha) / (2.0 * alpha), a.hermitian()));
  return eig.array().pow(alpha).sum();
}

double log_sandwiched_quasi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                            double alpha) {
  check_pair(a, b);
  check_alpha(alpha, false);
  const RVector eig = positive_spectrum(sandwich(b, (1.0 - alpha) / (2.0 * alpha), a.hermitian()));
  return log_trace_power(eig, alpha);
}

double sandwiched_renyi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha) {
  check_alpha(alpha, true);
  return log_sandwiched_quasi(a, b, alpha) / (alpha - 1.0);
}

double alpha_z(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha, double z) {
  check_pair(a, b);
  check_alpha(alpha, true);
  if (!(z > 0.0) || !std::isfinite(z)) throw Error(ErrorCode::ZNotPositive, "z must be positive");
  const PositiveDefiniteMatrix a_pow = matrix_power(a, alpha / z);
  const RVector eig = positive_spectrum(sandwich(b, (1.0 - alpha) / (2.0 * z), a_pow.hermitian()));
  return log_trace_power(eig, z) / (alpha - 1.0);
}

double fidelity(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  check_pair(a, b);
  const RVector eig = positive_spectrum(sandwich(b, 0.5, a.hermitian()));
  return eig.array().sqrt().sum();
}

double umegaki(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  check_pair(a, b);
  const CMatrix diff = matrix_log(a).matrix() - matrix_log(b).matrix();
  return trace_product(a.matrix(), diff) / a.trace();
}

double max_relative(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  check_pair(a, b);
  const RVector eig = positive_spectrum(sandwich(b, -0.5, a.hermitian()));
  return std::log(eig(0));
}

double thompson_metric(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  return std::max(max_relative(a, b), max_relative(b, a));
}

double log_operator_norm(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  check_pair(a, b);
  const PositiveDefiniteMatrix inner = pd_from(sandwich(b, -0.5, a.hermitian()));
  return sym_norm(GaugeSpec::op(), matrix_log(inner));
}

}  // namespace qrenyi
