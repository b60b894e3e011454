#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "qrenyi/report.hpp"
#include "qrenyi/spectral.hpp"

namespace qrenyi {

enum class NormClass { SymmetricNorm, QuasiAntiNorm };

std::string_view to_string(NormClass c) noexcept;

/// A symmetric gauge function on R^n and, through singular values, the
/// unitarily invariant functional it induces on matrices.
///
/// String grammar: `schatten:<p>`, `kyfan:<k>`, `op`, `trace`,
/// `anti:<base-spec>:<p>`.
class GaugeSpec {
 public:
  enum class Kind { Schatten, KyFan, Operator, Trace, AntiDerived };

  /// (sum |x_i|^p)^(1/p); p != 0. Norm for p >= 1, quasi-norm for 0 < p < 1,
  /// anti-norm for p < 0.
  static GaugeSpec schatten(double p);
  /// Sum of the k largest |x_i|; k >= 1 (k > n acts as k = n).
  static GaugeSpec kyfan(int k);
  static GaugeSpec op();
  static GaugeSpec trace();
  /// |||A|||_! = |||A^{-p}|||^{-1/p} for a symmetric norm `base` and p > 0.
  static GaugeSpec anti_derived(const GaugeSpec& base, double p);

  /// Errors: InvalidGaugeSpec.
  static GaugeSpec parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  double exponent() const { return p_; }
  int k() const { return k_; }
  const GaugeSpec& base() const { return *base_; }

  NormClass classify() const;
  bool is_norm() const { return classify() == NormClass::SymmetricNorm; }
  /// Whether the Hoelder inequality is known to hold for this anti-norm;
  /// only Schatten quasi-norms 0 < p < 1 qualify.
  bool supports_holder() const;
  /// Evaluation raises singular values to a negative power.
  bool needs_invertible() const;

 private:
  GaugeSpec(Kind kind, double p, int k, std::shared_ptr<const GaugeSpec> base)
      : kind_(kind), p_(p), k_(k), base_(std::move(base)) {}

  Kind kind_;
  double p_ = 0.0;
  int k_ = 0;
  std::shared_ptr<const GaugeSpec> base_;
};

/// Phi(x). Errors: EmptyVector, ZeroEntryWithNegativeExponent.
double gauge_value(const GaugeSpec& spec, const RVector& x);

/// Phi applied to precomputed singular values; checks invertibility when the
/// spec needs negative powers. Errors: SingularInputForNegativeExponent.
double gauge_of_singular_values(const GaugeSpec& spec, const RVector& s);

/// Phi(s(M)).
double sym_norm(const GaugeSpec& spec, const GeneralMatrix& m);

/// Hermitian input: `op` and `trace` take the eigenvalue fast path
/// (max |lambda|, sum |lambda|); every other spec goes through singular values.
double sym_norm(const GaugeSpec& spec, const HermitianMatrix& m);

/// Anti-norm of a positive definite matrix. `anti:` specs use
/// |||A^{-p}|||^{-1/p}; Schatten specs with p < 1 evaluate directly.
/// Errors: TypeClassMismatch for norm-class specs.
double anti_norm(const GaugeSpec& spec, const PositiveDefiniteMatrix& a);

/// Samples random vectors, permutations and sign flips and records the
/// largest violation of each gauge axiom (triangle inequality, permutation
/// and sign invariance, Phi(e_1) = 1). Quasi/anti specs run too; their
/// failures are the expected outcome and the classification is reported.
VerificationReport check_gauge_axioms(const GaugeSpec& spec, Index dim, std::int64_t trials,
                                      std::uint64_t seed, double tolerance = 1e-12);

}  // namespace qrenyi
