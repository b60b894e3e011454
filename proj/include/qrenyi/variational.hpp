#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qrenyi/gauge.hpp"
#include "qrenyi/spectral.hpp"

namespace qrenyi {

/// Exponents of Psi_{p,q,s}(A,B) = tr (B^{q/2} K* A^p K B^{q/2})^s.
struct PsiParams {
  double p = 1.0;
  double q = 1.0;
  double s = 1.0;
};

/// Which min/max representation of Psi over Z > 0 applies.
enum class VariationalTag { Min31, Max31, Min32, Max32 };

/// Joint concavity/convexity class of Psi_{p,q,s}.
enum class ConvexityTag { Concave42i, Convex42ii, Convex42iii, Unknown };

/// Concavity/convexity class of Upsilon_{p,s}(A) = tr (K* A^p K)^s.
enum class UpsilonRegime { Concave41i, Convex41ii, Convex41iii, Unknown };

std::string_view to_string(VariationalTag tag) noexcept;
std::string_view to_string(ConvexityTag tag) noexcept;
std::string_view to_string(UpsilonRegime tag) noexcept;

struct RegimeTag {
  std::vector<VariationalTag> variational;  // in the order min_31, max_31, min_32, max_32
  ConvexityTag convexity = ConvexityTag::Unknown;

  bool has(VariationalTag tag) const;
  /// Comma-joined tags, e.g. "min_31,min_32,concave_42i"; an unknown
  /// convexity class is omitted and an empty set prints as "none".
  std::string to_string() const;
};

/// Below this |p+q| the weights p/(p+q), q/(p+q) are treated as degenerate.
inline constexpr double kDegenerateExponentSum = 1e-10;

RegimeTag classify(const PsiParams& params);
UpsilonRegime classify_upsilon(double p, double s);

/// The two ways of splitting the exponent between the A-side and B-side
/// factors. `PQ`: exponents s(p+q)/p and s(p+q)/q with weights p/(p+q),
/// q/(p+q) (tags *_31). `SQ`: exponents s/(1-sq) and 1/q with weights 1-sq,
/// sq (tags *_32).
enum class Split { PQ, SQ };
enum class Form { Product, Sum };

/// Lower: the min representation applies, so psi is a lower bound for the
/// objective at every Z. Upper: the max representation applies.
enum class BoundDirection { Lower, Upper };

std::string_view to_string(Split split) noexcept;
std::string_view to_string(Form form) noexcept;
std::string_view to_string(BoundDirection direction) noexcept;

/// Errors: RegimeMismatch when `params` admit no representation for `split`.
BoundDirection bound_direction(const PsiParams& params, Split split);

/// Psi_{p,q,s}(A,B) for K with K.rows() == A.dim(), K.cols() == B.dim().
/// Errors: DimensionMismatch; SingularCore when K*A^pK is not positive
/// definite but s is fractional or negative.
double psi(const PsiParams& params, const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
           const GeneralMatrix& k);

/// |||(B^{q/2} K* A^p K B^{q/2})^s||| under `spec`.
double psi_norm(const PsiParams& params, const GaugeSpec& spec, const PositiveDefiniteMatrix& a,
                const PositiveDefiniteMatrix& b, const GeneralMatrix& k);

/// tr (K* A^p K)^s.
double upsilon(double p, double s, const PositiveDefiniteMatrix& a, const GeneralMatrix& k);

/// Variational objective at Z. Product form: N1^{w1} N2^{w2}; sum form:
/// w1 N1 + w2 N2, where N1 = |||(Z^{-1/2} K*A^pK Z^{-1/2})^{e1}|||,
/// N2 = |||(Z^{1/2} B^q Z^{1/2})^{e2}||| and (e1, e2, w1, w2) depend on
/// the split. Errors: RegimeMismatch, SingularCore.
double split_objective(Split split, const PsiParams& params, const GaugeSpec& spec,
                       const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                       const GeneralMatrix& k, const PositiveDefiniteMatrix& z, Form form);

/// Closed-form critical point B^{-q} #_w (K* A^p K), with w = q/(p+q) for
/// the PQ split and w = sq for the SQ split. Errors: RegimeMismatch,
/// SingularCore.
PositiveDefiniteMatrix split_optimizer(Split split, const PsiParams& params, const PositiveDefiniteMatrix& a,
                                       const PositiveDefiniteMatrix& b, const GeneralMatrix& k);

struct VariationalResult {
  double psi_value = 0.0;
  PositiveDefiniteMatrix optimizer;
  double objective_at_optimizer = 0.0;
  /// |objective_at_optimizer - psi_value| / max(|psi_value|, 1e-300)
  double relative_gap = 0.0;
  BoundDirection bound_direction = BoundDirection::Lower;
};

double relative_gap(double value, double reference);

/// psi_norm together with the objective evaluated at the closed-form optimizer.
VariationalResult closed_form(Split split, Form form, const PsiParams& params, const GaugeSpec& spec,
                              const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                              const GeneralMatrix& k);

enum class SearchStart { Identity, ClosedForm };

struct SearchOptions {
  int budget = 2000;  // objective evaluations
  std::uint64_t seed = 0;
  SearchStart start = SearchStart::Identity;
  double initial_step = 0.5;
  double grow = 1.3;
  double shrink = 0.5;
  double step_floor = 1e-10;
};

struct SearchResult {
  /// optimizer / objective_at_optimizer hold the best point found;
  /// relative_gap is measured against psi_value.
  VariationalResult best;
  double closed_form_objective = 0.0;
  int evaluations = 0;
  int accepted = 0;
  int restarts = 0;
  /// The search found a Z beating the closed-form value by more than
  /// kSearchBreachTol (relative) in the bound direction.
  bool bound_breached = false;
};

inline constexpr double kSearchBreachTol = 1e-7;

/// Derivative-free adaptive random search over Z = exp(H), H Hermitian,
/// minimizing or maximizing per the regime. Each proposal is a Gaussian
/// Hermitian perturbation of unit Frobenius norm scaled by the current step;
/// the step grows on improvement and shrinks on rejection, and is reset to
/// the initial step when it reaches the floor. `observer`, when set, sees the
/// objective of every evaluated point.
SearchResult numeric_search(Split split, Form form, const PsiParams& params, const GaugeSpec& spec,
                            const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                            const GeneralMatrix& k, const SearchOptions& options,
                            const std::function<void(double)>& observer = {});

/// F_t(A,B) through the PQ split with s = t, p = 1, q = (1-t)/t, K = I and
/// the trace; min form for 0 < t < 1, max form for t > 1.
/// Errors: InvalidParameter for t <= 0 or t == 1.
VariationalResult fidelity_variational(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                       double t, Form form);

}  // namespace qrenyi
