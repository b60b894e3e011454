#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrenyi/gauge.hpp"
#include "qrenyi/report.hpp"
#include "qrenyi/spectral.hpp"
#include "qrenyi/variational.hpp"

namespace qrenyi {

// Seeded property suites. Every suite draws trial i from its own sub-seed
// trial_seed(seed, i), so reports are byte-identical for identical inputs.
// Unless noted, gaps are signed and relative to max(|lhs|, |rhs|).

inline constexpr double kInequalityTol = 1e-9;

// ---- majorization -------------------------------------------------------

enum class MajorizationKind { Weak, Log };

struct MajorizationVerdict {
  MajorizationKind kind;
  bool holds;
  /// Largest signed relative prefix excess (positive means violated).
  double worst_prefix_gap;
  /// 1-based prefix length where worst_prefix_gap occurs.
  Index worst_prefix;
};

inline constexpr double kMajorizationTol = 1e-10;
inline constexpr double kLogProductTol = 1e-8;

/// x <_w y: prefix sums of x never exceed those of y (relative 1e-10).
/// Errors: LengthMismatch, NotSorted, NegativeEntry, EmptyVector.
MajorizationVerdict weak_majorization(const RVector& x, const RVector& y);

/// x <_log y: prefix products bounded for k < n (relative 1e-10) and the
/// full products equal (relative 1e-8).
/// Errors: LengthMismatch, NotSorted, NonPositiveEntry, EmptyVector.
MajorizationVerdict log_majorization(const RVector& x, const RVector& y);

/// (s_i(A) s_{n-i+1}(B)) <_log s(AB) for random invertible A, B.
VerificationReport check_gelfand_naimark(Index dim, std::int64_t trials, std::uint64_t seed,
                                         double tolerance = kInequalityTol);

// ---- Hoelder / Young ----------------------------------------------------

/// 1/r0 = 1/r1 + 1/r2.
struct HolderExponents {
  double r0;
  double r1;
  double r2;
};

/// Errors: BadExponents when an exponent is zero or non-finite or the
/// reciprocal relation is off by more than 1e-14 (relative).
void validate_exponents(const HolderExponents& e);

/// Forward Hoelder |||ST|^{r0}|||^{1/r0} <= |||S|^{r1}|||^{1/r1} |||T|^{r2}|||^{1/r2}
/// and the weighted-sum (Young) bound it implies, on random pairs; parts
/// "holder-product" and "holder-young". General complex inputs unless
/// `positive_inputs`. Errors: BadExponents (any r <= 0), TypeClassMismatch
/// for specs that are neither norms nor Hoelder-compatible anti-norms.
VerificationReport check_holder(const GaugeSpec& spec, const HolderExponents& e, Index dim, std::int64_t trials,
                                std::uint64_t seed, double tolerance = kInequalityTol,
                                bool positive_inputs = false);

/// Reverse inequalities for r0 = r > 0, r1 = p > 0, r2 = q < 0 with B
/// invertible (condition number log-uniform up to `max_condition`). Parts:
/// "reverse-holder-norm", "reverse-young-norm", "reverse-holder-trace",
/// "reverse-young-trace", "reverse-holder-schatten".
/// Errors: BadExponents, TypeClassMismatch (spec must be a norm).
VerificationReport check_reverse_holder(const GaugeSpec& spec, const HolderExponents& e, Index dim,
                                        std::int64_t trials, std::uint64_t seed,
                                        double tolerance = kInequalityTol, double max_condition = 1e6);

/// Scalar reverse Young |xy|^r / r >= |x|^p / p + |y|^q / q and its vector
/// form under the gauges schatten:1, schatten:2 and kyfan:2 (length-4
/// vectors), with random admissible (r, p, q) per trial.
VerificationReport check_scalar_reverse_young(std::int64_t trials, std::uint64_t seed,
                                              double tolerance = kInequalityTol);

// ---- variational --------------------------------------------------------

inline constexpr double kVariationalIdentityTol = 1e-7;
inline constexpr double kFormOrderTol = 1e-10;

/// |objective(Z*) - psi_norm| / psi_norm for both forms on random (A, B, K).
VerificationReport check_variational_identity(const PsiParams& params, Split split, const GaugeSpec& spec,
                                              Index dim, std::int64_t trials, std::uint64_t seed,
                                              double tolerance = kVariationalIdentityTol);

/// `probes` random Z per instance (half near Z*, half spread over the cone):
/// the objective stays on the bound side of psi_norm (part
/// "variational-bound", relative `tolerance`), and the product form is
/// below the sum form in min regimes and above it in max regimes (part
/// "variational-form-order", relative 1e-10).
VerificationReport check_bound_direction(const PsiParams& params, Split split, const GaugeSpec& spec, Index dim,
                                         std::int64_t instances, int probes, std::uint64_t seed,
                                         double tolerance = kInequalityTol);

/// Identity (tolerance `tolerance`) plus 20 bound probes per trial.
VerificationReport check_variational(const PsiParams& params, Split split, const GaugeSpec& spec, Index dim,
                                     std::int64_t trials, std::uint64_t seed,
                                     double tolerance = kVariationalIdentityTol);

// ---- convexity ----------------------------------------------------------

enum class Curvature { Concave, Convex };

std::string_view to_string(Curvature c) noexcept;

/// Curvature claimed by the regime. Errors: RegimeMismatch ("regime unknown").
Curvature regime_curvature(const PsiParams& params);
Curvature regime_curvature(UpsilonRegime regime);

/// Midpoint joint concavity/convexity of Psi_{p,q,s} along
/// lambda in {1/2, uniform(0,1)}. `assert_direction` replaces the regime's
/// direction (negative controls). Errors: RegimeMismatch.
VerificationReport check_joint_convexity(const PsiParams& params, Index dim, std::int64_t trials,
                                         std::uint64_t seed, double tolerance = kInequalityTol,
                                         std::optional<Curvature> assert_direction = std::nullopt);

/// Same for Upsilon_{p,s}(A) = tr (K* A^p K)^s. Errors: RegimeMismatch.
VerificationReport check_upsilon_convexity(double p, double s, Index dim, std::int64_t trials,
                                           std::uint64_t seed, double tolerance = kInequalityTol,
                                           std::optional<Curvature> assert_direction = std::nullopt);

/// Midpoint joint concavity of |||(B^{q/2}K*A^pKB^{q/2})^s|||_! for an
/// anti-norm with the Hoelder property, plus a forward Hoelder spot-check of
/// the anti-norm on positive pairs (part "antinorm-holder").
/// Errors: UnsupportedAntiNorm, RegimeMismatch (needs 0 <= p,q <= 1 and
/// 0 < s <= 1/(p+q)).
VerificationReport check_antinorm_concavity(const GaugeSpec& spec, const PsiParams& params, Index dim,
                                            std::int64_t trials, std::uint64_t seed,
                                            double tolerance = kInequalityTol, std::int64_t holder_trials = 200);

// ---- channels -----------------------------------------------------------

struct QuantumChannel {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<CMatrix> kraus;  // each dim_out x dim_in
};

inline constexpr double kTracePreservingTol = 1e-10;
/// Channel outputs get 1e-12 * tr(rho) * I / dim added before entropy evaluation.
inline constexpr double kOutputRegularization = 1e-12;

/// ||sum K_i* K_i - I||_F.
double trace_preservation_error(const QuantumChannel& ch);

/// Kraus operators are the row blocks of a Haar isometry C^dim -> C^{dim k}.
/// Errors: InvalidParameter for dim < 1 or kraus_count < 1.
QuantumChannel random_cptp(Index dim, int kraus_count, std::uint64_t seed);

/// (1 - lambda) rho + lambda tr(rho) I / dim with Kraus set
/// sqrt(1-lambda) I and sqrt(lambda/dim) |i><j|; zero-weight operators are
/// omitted. Errors: LambdaOutOfRange.
QuantumChannel depolarizing(Index dim, double lambda);

/// sum K_i rho K_i*. Errors: DimensionMismatch.
HermitianMatrix apply_channel(const QuantumChannel& ch, const HermitianMatrix& rho);
HermitianMatrix apply_channel(const QuantumChannel& ch, const PositiveDefiniteMatrix& rho);

/// rho + kOutputRegularization tr(rho) I / dim, rescaled to the original trace.
PositiveDefiniteMatrix regularize_output(const HermitianMatrix& rho);

// ---- data processing ----------------------------------------------------

enum class DivergenceKind { Petz, Sandwiched, AlphaZ };

std::string_view to_string(DivergenceKind kind) noexcept;

struct DivergenceParams {
  double alpha = 2.0;
  double z = 1.0;  // alpha-z only
};

inline constexpr double kDpiTol = 1e-8;

/// Whether the inequality is asserted for these parameters (sandwiched,
/// alpha in [1/2, 1) or (1, inf)); other settings run in exploratory mode,
/// where violations are counted in params but never fail the report.
bool dpi_asserted(DivergenceKind kind, const DivergenceParams& params);

/// D(Phi rho || Phi sigma) <= D(rho || sigma) + tolerance (absolute) for
/// random density pairs, a random channel with 2-4 Kraus operators and the
/// depolarizing channels lambda in {0, 0.5, 1} per trial.
VerificationReport check_dpi(DivergenceKind kind, const DivergenceParams& params, Index dim, std::int64_t trials,
                             std::uint64_t seed, double tolerance = kDpiTol);

// ---- entropy limits -----------------------------------------------------

/// Random density pairs of dimension min_dim..max_dim (cycled). Parts:
/// "limit-alpha-one": the error of D~ at alpha = 1 +- h against the Umegaki
/// entropy shrinks by a factor in [5, 20] from h = 1e-3 to 1e-4 (gap =
/// distance of the ratio outside the interval).
/// "limit-alpha-infinity": |D~_alpha - ||log B^{-1/2}AB^{-1/2}||_op| is at
/// most 5/alpha at alpha = 1e3, 1e4, at most 0.01 at 1e4, and does not
/// increase from 1e3 to 1e4 (gap = absolute excess).
/// "limit-alpha-infinity-dmax": the same checks against log lambda_1(A B^{-1}).
VerificationReport check_limits(Index min_dim, Index max_dim, std::int64_t pairs, std::uint64_t seed);

// ---- spectral kernel ----------------------------------------------------

/// decompose/reconstruct round trips (relative Frobenius <= kReconstructionTol)
/// on random Hermitian matrices of dimension 1..max_dim (cycled), and
/// P^a P^b = P^{a+b}, P^t P^{-t} = I on random positive definite matrices
/// (relative 1e-8).
VerificationReport check_spectral_kernel(Index max_dim, std::int64_t trials, std::uint64_t seed);

}  // namespace qrenyi
