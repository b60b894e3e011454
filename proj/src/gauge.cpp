#include "qrenyi/gauge.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "qrenyi/random.hpp"

namespace qrenyi {

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value))
    throw Error(ErrorCode::InvalidGaugeSpec,
                "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return value;
}

double schatten_value(double p, const RVector& a) {
  // a holds |x_i|. Factor out max (p > 0) or min (p < 0) so the powered
  // terms stay in (0, 1].
  if (p > 0.0) {
    const double m = a.maxCoeff();
    if (m == 0.0) return 0.0;
    if (p == 1.0) return a.sum();
    double sum = 0.0;
    for (Index i = 0; i < a.size(); ++i) sum += std::pow(a(i) / m, p);
    return m * std::pow(sum, 1.0 / p);
  }
  const double m = a.minCoeff();
  double sum = 0.0;
  for (Index i = 0; i < a.size(); ++i) sum += std::pow(a(i) / m, p);
  return m * std::pow(sum, 1.0 / p);
}

}  // namespace

std::string_view to_string(NormClass c) noexcept {
  return c == NormClass::SymmetricNorm ? "symmetric_norm" : "quasi_anti_norm";
}

GaugeSpec GaugeSpec::schatten(double p) {
  if (p == 0.0 || !std::isfinite(p))
    throw Error(ErrorCode::InvalidGaugeSpec, "schatten exponent must be finite and nonzero");
  return GaugeSpec(Kind::Schatten, p, 0, nullptr);
}

GaugeSpec GaugeSpec::kyfan(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidGaugeSpec, "kyfan index must be at least 1");
  return GaugeSpec(Kind::KyFan, 0.0, k, nullptr);
}

GaugeSpec GaugeSpec::op() { return GaugeSpec(Kind::Operator, 0.0, 0, nullptr); }

GaugeSpec GaugeSpec::trace() { return GaugeSpec(Kind::Trace, 0.0, 0, nullptr); }

GaugeSpec GaugeSpec::anti_derived(const GaugeSpec& base, double p) {
  if (!base.is_norm())
    throw Error(ErrorCode::TypeClassMismatch,
                "anti-norm base must be a symmetric norm, got " + base.to_string());
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidGaugeSpec, "anti-norm exponent must be positive");
  return GaugeSpec(Kind::AntiDerived, p, 0, std::make_shared<const GaugeSpec>(base));
}

GaugeSpec GaugeSpec::parse(std::string_view text) {
  if (text == "op") return op();
  if (text == "trace") return trace();
  if (text.starts_with("schatten:")) return schatten(parse_number(text.substr(9), "schatten exponent"));
  if (text.starts_with("kyfan:")) {
    const auto digits = text.substr(6);
    int k = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || end != digits.data() + digits.size())
      throw Error(ErrorCode::InvalidGaugeSpec, "cannot parse kyfan index from '" + std::string(digits) + "'");
    return kyfan(k);
  }
  if (text.starts_with("anti:")) {
    const auto rest = text.substr(5);
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
      throw Error(ErrorCode::InvalidGaugeSpec, "expected anti:<base-spec>:<p>");
    const GaugeSpec base = parse(rest.substr(0, colon));
    return anti_derived(base, parse_number(rest.substr(colon + 1), "anti-norm exponent"));
  }
  throw Error(ErrorCode::InvalidGaugeSpec, "unknown norm spec '" + std::string(text) + "'");
}

std::string GaugeSpec::to_string() const {
  switch (kind_) {
    case Kind::Schatten: return "schatten:" + format_number(p_);
    case Kind::KyFan: return "kyfan:" + std::to_string(k_);
    case Kind::Operator: return "op";
    case Kind::Trace: return "trace";
    case Kind::AntiDerived: return "anti:" + base_->to_string() + ":" + format_number(p_);
  }
  return {};
}

NormClass GaugeSpec::classify() const {
  switch (kind_) {
    case Kind::Schatten: return p_ >= 1.0 ? NormClass::SymmetricNorm : NormClass::QuasiAntiNorm;
    case Kind::AntiDerived: return NormClass::QuasiAntiNorm;
    default: return NormClass::SymmetricNorm;
  }
}

bool GaugeSpec::supports_holder() const { return kind_ == Kind::Schatten && p_ > 0.0 && p_ < 1.0; }

bool GaugeSpec::needs_invertible() const {
  return (kind_ == Kind::Schatten && p_ < 0.0) || kind_ == Kind::AntiDerived;
}

double gauge_value(const GaugeSpec& spec, const RVector& x) {
  if (x.size() == 0) throw Error(ErrorCode::EmptyVector, "gauge of an empty vector");
  const RVector a = x.cwiseAbs();
  if (spec.needs_invertible() && !(a.minCoeff() > 0.0))
    throw Error(ErrorCode::ZeroEntryWithNegativeExponent,
                "spec " + spec.to_string() + " needs all entries nonzero");

  switch (spec.kind()) {
    case GaugeSpec::Kind::Schatten: return schatten_value(spec.exponent(), a);
    case GaugeSpec::Kind::Operator: return a.maxCoeff();
    case GaugeSpec::Kind::Trace: return a.sum();
    case GaugeSpec::Kind::KyFan: {
      std::vector<double> v(a.data(), a.data() + a.size());
      std::stable_sort(v.begin(), v.end(), std::greater<>());
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(spec.k()), v.size());
      return std::accumulate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
    }
    case GaugeSpec::Kind::AntiDerived: {
      const double p = spec.exponent();
      const RVector powered = a.array().pow(-p).matrix();
      return std::pow(gauge_value(spec.base(), powered), -1.0 / p);
    }
  }
  return 0.0;
}

double gauge_of_singular_values(const GaugeSpec& spec, const RVector& s) {
  if (s.size() == 0) throw Error(ErrorCode::EmptyVector, "no singular values");
  if (spec.needs_invertible()) {
    const double largest = s.maxCoeff();
    const double smallest = s.minCoeff();
    if (!(smallest > kPdTolerance * largest))
      throw Error(ErrorCode::SingularInputForNegativeExponent,
                  "spec " + spec.to_string() + " needs an invertible matrix");
  }
  return gauge_value(spec, s);
}

double sym_norm(const GaugeSpec& spec, const GeneralMatrix& m) {
  return gauge_of_singular_values(spec, singular_values(m).values);
}

double sym_norm(const GaugeSpec& spec, const HermitianMatrix& m) {
  if (spec.kind() == GaugeSpec::Kind::Operator || spec.kind() == GaugeSpec::Kind::Trace) {
    const RVector abs_eig = decompose(m).eigenvalues.cwiseAbs();
    return spec.kind() == GaugeSpec::Kind::Operator ? abs_eig.maxCoeff() : abs_eig.sum();
  }
  return sym_norm(spec, m.as_general());
}

double anti_norm(const GaugeSpec& spec, const PositiveDefiniteMatrix& a) {
  if (spec.is_norm())
    throw Error(ErrorCode::TypeClassMismatch, spec.to_string() + " is a norm, not an anti-norm");
  if (spec.kind() == GaugeSpec::Kind::AntiDerived) {
    const double p = spec.exponent();
    return std::pow(sym_norm(spec.base(), matrix_power(a, -p).hermitian()), -1.0 / p);
  }
  return sym_norm(spec, a.as_general());
}

VerificationReport check_gauge_axioms(const GaugeSpec& spec, Index dim, std::int64_t trials,
                                      std::uint64_t seed, double tolerance) {
  if (dim < 1) throw Error(ErrorCode::InvalidParameter, "dimension must be at least 1");
  ReportBuilder report("gauge-axioms", trials, seed, tolerance);
  report.params()["spec"] = spec.to_string();
  report.params()["classification"] = std::string(to_string(spec.classify()));
  report.params()["dim"] = dim;

  double worst_triangle = 0.0, worst_permutation = 0.0, worst_sign = 0.0, worst_normalization = 0.0;
  const bool zeros_allowed = !spec.needs_invertible();

  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    RVector x(dim), y(dim);
    for (Index i = 0; i < dim; ++i) x(i) = rng.normal();
    for (Index i = 0; i < dim; ++i) y(i) = rng.normal();
    // Trial 0 probes the disjoint-support pair (e_1, e_2), the classic
    // quasi-norm counterexample.
    if (t == 0 && dim >= 2 && zeros_allowed) {
      x = RVector::Zero(dim);
      y = RVector::Zero(dim);
      x(0) = 1.0;
      y(1) = 1.0;
    }

    const double fx = gauge_value(spec, x);
    const double fy = gauge_value(spec, y);
    const RVector sum = x + y;
    if (zeros_allowed || sum.cwiseAbs().minCoeff() > 0.0) {
      const double fsum = gauge_value(spec, sum);
      const double g = gap_le(fsum, fx + fy);
      worst_triangle = std::max(worst_triangle, g);
      report.record(t, fsum, fx + fy, g);
    }

    std::vector<Index> perm(static_cast<std::size_t>(dim));
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = dim - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i)))]);
    RVector px(dim), sx(dim);
    for (Index i = 0; i < dim; ++i) px(i) = x(perm[static_cast<std::size_t>(i)]);
    for (Index i = 0; i < dim; ++i) sx(i) = rng.uniform() < 0.5 ? -x(i) : x(i);

    const double fpx = gauge_value(spec, px);
    const double gp = std::abs(gap_le(fpx, fx));
    worst_permutation = std::max(worst_permutation, gp);
    report.record(t, fpx, fx, gp);

    const double fsx = gauge_value(spec, sx);
    const double gs = std::abs(gap_le(fsx, fx));
    worst_sign = std::max(worst_sign, gs);
    report.record(t, fsx, fx, gs);

    if (zeros_allowed) {
      RVector e1 = RVector::Zero(dim);
      e1(0) = 1.0;
      const double fe = gauge_value(spec, e1);
      const double gn = std::abs(gap_le(fe, 1.0));
      worst_normalization = std::max(worst_normalization, gn);
      report.record(t, fe, 1.0, gn);
    }
  }
  report.params()["max_gap_triangle"] = worst_triangle;
  report.params()["max_gap_permutation"] = worst_permutation;
  report.params()["max_gap_sign"] = worst_sign;
  report.params()["max_gap_normalization"] = worst_normalization;
  return std::move(report).finish();
}

}  // namespace qrenyi
