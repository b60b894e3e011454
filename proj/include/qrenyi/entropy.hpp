#pragma once

#include "qrenyi/spectral.hpp"

namespace qrenyi {

// Relative entropies and their trace functionals on pairs of positive
// definite matrices of equal dimension. Natural logarithm throughout.
// Singular second arguments are not supported: regularize explicitly
// (B + eps I) before calling.
//
// Shared errors: DimensionMismatch; AlphaNotPositive (alpha <= 0);
// AlphaIsOne for the divergence forms.

/// Petz: log tr(A^alpha B^{1-alpha}) / (alpha - 1).
double petz_renyi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha);

/// F_alpha(A,B) = tr (B^{(1-alpha)/(2 alpha)} A B^{(1-alpha)/(2 alpha)})^alpha.
double sandwiched_quasi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha);

/// log F_alpha(A,B), evaluated as a log-sum-exp over the spectrum so that
/// large alpha does not overflow.
double log_sandwiched_quasi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                            double alpha);

/// log F_alpha(A,B) / (alpha - 1).
double sandwiched_renyi(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha);

/// log tr (B^{(1-alpha)/(2z)} A^{alpha/z} B^{(1-alpha)/(2z)})^z / (alpha - 1).
/// Errors additionally: ZNotPositive.
double alpha_z(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b, double alpha, double z);

/// tr (B^{1/2} A B^{1/2})^{1/2}.
double fidelity(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

/// Umegaki relative entropy with the 1/tr A normalization:
/// tr A (log A - log B) / tr A.
double umegaki(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

/// log lambda_1(A B^{-1}), computed as log lambda_1(B^{-1/2} A B^{-1/2}).
double max_relative(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

/// max(log lambda_1(A B^{-1}), log lambda_1(B A^{-1})).
double thompson_metric(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

/// || log(B^{-1/2} A B^{-1/2}) || in the operator norm, evaluated literally
/// (matrix log, then operator norm). Mathematically equal to
/// thompson_metric; the two routes are kept separate so their agreement can
/// be tested.
double log_operator_norm(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

}  // namespace qrenyi
