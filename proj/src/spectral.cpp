#include "qrenyi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace qrenyi {

namespace {

bool all_finite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

// 2x2 unitary G with G* [[a, g], [conj(g), b]] G diagonal, where
// a = app, b = aqq, g = apq != 0. G = diag(1, conj(e)) * [[c, s], [-s, c]]
// with e = g/|g|, i.e. a phase change followed by a real Jacobi rotation.
struct Rotation {
  Complex g00, g01, g10, g11;
};

Rotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  const Complex phase = std::conj(apq / mag);
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return {c, s, -s * phase, c * phase};
}

// columns p, q of m  <-  [m_p, m_q] G
void rotate_columns(CMatrix& m, Index p, Index q, const Rotation& r) {
  for (Index k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = mp * r.g00 + mq * r.g10;
    m(k, q) = mp * r.g01 + mq * r.g11;
  }
}

// rows p, q of m  <-  G* [m_p; m_q]
void rotate_rows(CMatrix& m, Index p, Index q, const Rotation& r) {
  for (Index k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = std::conj(r.g00) * mp + std::conj(r.g10) * mq;
    m(q, k) = std::conj(r.g01) * mp + std::conj(r.g11) * mq;
  }
}

double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Indices ordering `values` descending; ties keep original order.
std::vector<Index> descending_order(const RVector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values(a) > values(b); });
  return order;
}

}  // namespace

GeneralMatrix::GeneralMatrix(CMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() < 1 || m_.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "matrix must have at least one row and column");
  if (!all_finite(m_)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
}

GeneralMatrix GeneralMatrix::identity(Index n) { return GeneralMatrix(CMatrix::Identity(n, n)); }

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n), 0.0);
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  CMatrix m = CMatrix::Zero(d.size(), d.size());
  for (Index i = 0; i < d.size(); ++i) m(i, i) = d(i);
  return HermitianMatrix(std::move(m), 0.0);
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  for (Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return HermitianMatrix(std::move(h), 0.0);
}

HermitianMatrix hermitian_from(const CMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    std::ostringstream os;
    os << "expected a non-empty square matrix, got " << entries.rows() << "x" << entries.cols();
    throw Error(ErrorCode::NonSquare, os.str());
  }
  if (!all_finite(entries)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");

  double max_entry = 0.0;
  double max_asym = 0.0;
  Index bad_i = 0, bad_j = 0;
  for (Index j = 0; j < entries.cols(); ++j) {
    for (Index i = 0; i < entries.rows(); ++i) {
      max_entry = std::max(max_entry, std::abs(entries(i, j)));
      const double asym = std::abs(entries(i, j) - std::conj(entries(j, i)));
      if (asym > max_asym) {
        max_asym = asym;
        bad_i = i;
        bad_j = j;
      }
    }
  }
  if (max_asym > kHermiticityTol * max_entry) {
    std::ostringstream os;
    os << "entry (" << bad_i << "," << bad_j << ") differs from the conjugate of its transpose by "
       << max_asym;
    throw Error(ErrorCode::AsymmetryExceedsTolerance, os.str());
  }
  HermitianMatrix h = HermitianMatrix::symmetrized(entries);
  h.max_asymmetry_ = max_asym;
  return h;
}

CMatrix SpectralDecomposition::reconstruct_with(const std::function<double(double)>& f) const {
  RVector mapped(eigenvalues.size());
  for (Index i = 0; i < eigenvalues.size(); ++i) mapped(i) = f(eigenvalues(i));
  return eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
}

CMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition decompose(const HermitianMatrix& h) {
  const Index n = h.dim();
  CMatrix a = h.matrix();
  CMatrix v = CMatrix::Identity(n, n);
  const double threshold = kJacobiOffDiagonalTol * a.norm();

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (apq == Complex(0.0)) continue;
        const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
    }
  }
  if (!converged)
    throw Error(ErrorCode::ConvergenceFailure, "Jacobi eigensolver exhausted its sweep budget");

  RVector raw(n);
  for (Index i = 0; i < n; ++i) raw(i) = a(i, i).real();
  const auto order = descending_order(raw);
  SpectralDecomposition d{RVector(n), CMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    d.eigenvalues(k) = raw(order[static_cast<std::size_t>(k)]);
    d.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return d;
}

PositiveDefiniteMatrix pd_from(const HermitianMatrix& h) {
  SpectralDecomposition d = decompose(h);
  const double largest = d.eigenvalues.cwiseAbs().maxCoeff();
  const double smallest = d.eigenvalues(d.eigenvalues.size() - 1);
  if (!(smallest > kPdTolerance * largest)) {
    std::ostringstream os;
    os << "smallest eigenvalue " << smallest << " is not above " << kPdTolerance
       << " * largest |eigenvalue| (" << largest << ")";
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  return PositiveDefiniteMatrix(h, std::move(d));
}

PositiveDefiniteMatrix PositiveDefiniteMatrix::identity(Index n) {
  return from_decomposition({RVector::Ones(n), CMatrix::Identity(n, n)});
}

PositiveDefiniteMatrix PositiveDefiniteMatrix::from_decomposition(SpectralDecomposition d) {
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    if (!std::isfinite(d.eigenvalues(i)))
      throw Error(ErrorCode::NonFinite, "non-finite eigenvalue");
    if (!(d.eigenvalues(i) > 0.0))
      throw Error(ErrorCode::NotPositiveDefinite, "non-positive eigenvalue");
  }
  const auto order = descending_order(d.eigenvalues);
  const Index n = d.eigenvalues.size();
  SpectralDecomposition sorted{RVector(n), CMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    sorted.eigenvalues(k) = d.eigenvalues(order[static_cast<std::size_t>(k)]);
    sorted.eigenvectors.col(k) = d.eigenvectors.col(order[static_cast<std::size_t>(k)]);
  }
  HermitianMatrix h = HermitianMatrix::symmetrized(sorted.reconstruct());
  return PositiveDefiniteMatrix(std::move(h), std::move(sorted));
}

PositiveDefiniteMatrix matrix_power(const PositiveDefiniteMatrix& p, double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "non-finite exponent");
  if (t == 0.0) return PositiveDefiniteMatrix::identity(p.dim());
  if (t == 1.0) return p;
  SpectralDecomposition d = p.spectrum();
  for (Index i = 0; i < d.eigenvalues.size(); ++i) d.eigenvalues(i) = std::pow(d.eigenvalues(i), t);
  return PositiveDefiniteMatrix::from_decomposition(std::move(d));
}

HermitianMatrix matrix_log(const PositiveDefiniteMatrix& p) {
  return HermitianMatrix::symmetrized(
      p.spectrum().reconstruct_with([](double x) { return std::log(x); }));
}

PositiveDefiniteMatrix matrix_exp(const HermitianMatrix& h) {
  SpectralDecomposition d = decompose(h);
  for (Index i = 0; i < d.eigenvalues.size(); ++i) d.eigenvalues(i) = std::exp(d.eigenvalues(i));
  return PositiveDefiniteMatrix::from_decomposition(std::move(d));
}

HermitianMatrix spectral_function(const HermitianMatrix& h, const std::function<double(double)>& f) {
  return HermitianMatrix::symmetrized(decompose(h).reconstruct_with(f));
}

SingularValues singular_values(const GeneralMatrix& m) {
  // Work on whichever orientation has no more columns than rows.
  CMatrix w = m.cols() <= m.rows() ? m.matrix() : CMatrix(m.matrix().adjoint());
  const Index n = w.cols();
  constexpr double kOrthogonalityTol = 1e-15;

  bool converged = (n < 2);
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (Index i = 0; i < n - 1; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const double alpha = w.col(i).squaredNorm();
        const double beta = w.col(j).squaredNorm();
        const Complex gamma = w.col(i).dot(w.col(j));
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= kOrthogonalityTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        rotate_columns(w, i, j, jacobi_rotation(alpha, beta, gamma));
      }
    }
    converged = !rotated;
  }
  if (!converged)
    throw Error(ErrorCode::ConvergenceFailure, "one-sided Jacobi exhausted its sweep budget");

  RVector norms(n);
  for (Index k = 0; k < n; ++k) norms(k) = w.col(k).norm();
  std::vector<double> sorted(norms.data(), norms.data() + n);
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
  return {Eigen::Map<RVector>(sorted.data(), n)};
}

HermitianMatrix conjugate_form(const HermitianMatrix& m, const GeneralMatrix& x) {
  if (x.rows() != m.dim()) {
    std::ostringstream os;
    os << "cannot form X* M X with M " << m.dim() << "x" << m.dim() << " and X " << x.rows() << "x"
       << x.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return HermitianMatrix::symmetrized(x.matrix().adjoint() * m.matrix() * x.matrix());
}

double relative_frobenius(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(b.norm(), std::numeric_limits<double>::min());
}

}  // namespace qrenyi
