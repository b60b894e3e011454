#include "qrenyi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrenyi/entropy.hpp"
#include "qrenyi/random.hpp"
#include "qrenyi/sampling.hpp"

namespace qrenyi {

namespace {

void check_same_shape(const RVector& x, const RVector& y) {
  if (x.size() != y.size()) {
    std::ostringstream os;
    os << "vectors have lengths " << x.size() << " and " << y.size();
    throw Error(ErrorCode::LengthMismatch, os.str());
  }
  if (x.size() == 0) throw Error(ErrorCode::EmptyVector, "majorization of empty vectors");
}

void check_descending(const RVector& v, const char* name) {
  for (Index i = 0; i + 1 < v.size(); ++i)
    if (v(i + 1) > v(i)) {
      std::ostringstream os;
      os << name << " is not sorted in descending order at index " << i + 1;
      throw Error(ErrorCode::NotSorted, os.str());
    }
}

// Signed relative gap of exp(lx) <= exp(ly), computed from logs.
double log_domain_gap(double lx, double ly) {
  const double d = lx - ly;
  return d > 0 ? -std::expm1(-d) : std::expm1(d);
}

RVector descending(RVector v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

PositiveDefiniteMatrix scaled(const PositiveDefiniteMatrix& a, double c) {
  SpectralDecomposition d = a.spectrum();
  d.eigenvalues *= c;
  return PositiveDefiniteMatrix::from_decomposition(std::move(d));
}

// Positive definite with condition number at most `cond`, random overall scale.
PositiveDefiniteMatrix sample_pd(Index dim, Rng& rng, double cond) {
  const PositiveDefiniteMatrix a = random_pd(dim, rng, ConditionNumber{cond});
  return scaled(a, rng.log_uniform(0.5, 2.0) / a.max_eig());
}

PositiveDefiniteMatrix combination(double lambda, const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& y) {
  return pd_from(HermitianMatrix::symmetrized(lambda * x.matrix() + (1.0 - lambda) * y.matrix()));
}

// ||| |X|^t ||| from the singular values of X.
double power_norm(const GaugeSpec& spec, const RVector& sv, double t) {
  return gauge_of_singular_values(spec, sv.array().pow(t).matrix());
}

}  // namespace

// ---- majorization -------------------------------------------------------

MajorizationVerdict weak_majorization(const RVector& x, const RVector& y) {
  check_same_shape(x, y);
  check_descending(x, "x");
  check_descending(y, "y");
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) < 0.0 || y(i) < 0.0) throw Error(ErrorCode::NegativeEntry, "weak majorization needs non-negative entries");
  MajorizationVerdict v{MajorizationKind::Weak, true, -INFINITY, 1};
  double sx = 0.0, sy = 0.0;
  for (Index k = 0; k < x.size(); ++k) {
    sx += x(k);
    sy += y(k);
    const double gap = gap_le(sx, sy);
    if (gap > v.worst_prefix_gap) {
      v.worst_prefix_gap = gap;
      v.worst_prefix = k + 1;
    }
  }
  v.holds = v.worst_prefix_gap <= kMajorizationTol;
  return v;
}

MajorizationVerdict log_majorization(const RVector& x, const RVector& y) {
  check_same_shape(x, y);
  for (Index i = 0; i < x.size(); ++i)
    if (!(x(i) > 0.0) || !(y(i) > 0.0))
      throw Error(ErrorCode::NonPositiveEntry, "log majorization needs strictly positive entries");
  check_descending(x, "x");
  check_descending(y, "y");
  MajorizationVerdict v{MajorizationKind::Log, true, -INFINITY, 1};
  double lx = 0.0, ly = 0.0;
  const Index n = x.size();
  for (Index k = 0; k < n; ++k) {
    lx += std::log(x(k));
    ly += std::log(y(k));
    double gap = log_domain_gap(lx, ly);
    if (k + 1 == n) {
      gap = std::abs(gap);
      if (gap > kLogProductTol) v.holds = false;
    } else if (gap > kMajorizationTol) {
      v.holds = false;
    }
    if (gap > v.worst_prefix_gap) {
      v.worst_prefix_gap = gap;
      v.worst_prefix = k + 1;
    }
  }
  return v;
}

VerificationReport check_gelfand_naimark(Index dim, std::int64_t trials, std::uint64_t seed, double tolerance) {
  if (dim < 1) throw Error(ErrorCode::InvalidParameter, "dimension must be at least 1");
  ReportBuilder rb("gelfand-naimark", trials, seed, tolerance);
  rb.params()["dim"] = dim;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const GeneralMatrix a = random_invertible(dim, rng, 1e3);
    const GeneralMatrix b = random_invertible(dim, rng, 1e3);
    const RVector sa = singular_values(a).values;
    const RVector sb = singular_values(b).values;
    RVector x(dim);
    for (Index i = 0; i < dim; ++i) x(i) = sa(i) * sb(dim - 1 - i);
    const RVector y = singular_values(GeneralMatrix(a.matrix() * b.matrix())).values;
    const MajorizationVerdict v = log_majorization(descending(x), y);
    double px = 1.0, py = 1.0;
    const RVector xs = descending(x);
    for (Index i = 0; i < v.worst_prefix; ++i) {
      px *= xs(i);
      py *= y(i);
    }
    rb.record(t, px, py, v.worst_prefix_gap);
  }
  return std::move(rb).finish();
}

// ---- Hoelder / Young ----------------------------------------------------

void validate_exponents(const HolderExponents& e) {
  for (double r : {e.r0, e.r1, e.r2})
    if (!std::isfinite(r) || r == 0.0) throw Error(ErrorCode::BadExponents, "exponents must be finite and nonzero");
  const double lhs = 1.0 / e.r0, rhs = 1.0 / e.r1 + 1.0 / e.r2;
  const double scale = std::max({std::abs(lhs), std::abs(1.0 / e.r1), std::abs(1.0 / e.r2)});
  if (std::abs(lhs - rhs) > 1e-14 * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "exponents (" << e.r0 << ", " << e.r1 << ", " << e.r2 << ") violate 1/r0 = 1/r1 + 1/r2";
    throw Error(ErrorCode::BadExponents, os.str());
  }
}

VerificationReport check_holder(const GaugeSpec& spec, const HolderExponents& e, Index dim, std::int64_t trials,
                                std::uint64_t seed, double tolerance, bool positive_inputs) {
  validate_exponents(e);
  if (!(e.r0 > 0 && e.r1 > 0 && e.r2 > 0))
    throw Error(ErrorCode::BadExponents, "the forward inequality needs r0, r1, r2 > 0");
  if (!spec.is_norm() && !spec.supports_holder())
    throw Error(ErrorCode::TypeClassMismatch, spec.to_string() + " is not known to satisfy the Hoelder inequality");

  ReportBuilder product("holder-product", trials, seed, tolerance);
  ReportBuilder young("holder-young", trials, seed, tolerance);
  for (ReportBuilder* rb : {&product, &young}) {
    rb->params()["spec"] = spec.to_string();
    rb->params()["r0"] = e.r0;
    rb->params()["r1"] = e.r1;
    rb->params()["r2"] = e.r2;
    rb->params()["dim"] = dim;
    rb->params()["positive_inputs"] = positive_inputs;
  }
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    CMatrix s, u;
    if (positive_inputs) {
      s = sample_pd(dim, rng, 1e3).matrix();
      u = sample_pd(dim, rng, 1e3).matrix();
    } else {
      s = random_ginibre(dim, dim, rng);
      u = random_ginibre(dim, dim, rng);
    }
    const double n0 = power_norm(spec, singular_values(GeneralMatrix(s * u)).values, e.r0);
    const double n1 = power_norm(spec, singular_values(GeneralMatrix(s)).values, e.r1);
    const double n2 = power_norm(spec, singular_values(GeneralMatrix(u)).values, e.r2);
    const double lhs = std::pow(n0, 1.0 / e.r0);
    const double rhs = std::pow(n1, 1.0 / e.r1) * std::pow(n2, 1.0 / e.r2);
    product.record(t, lhs, rhs, gap_le(lhs, rhs));
    const double ylhs = n0 / e.r0;
    const double yrhs = n1 / e.r1 + n2 / e.r2;
    young.record(t, ylhs, yrhs, gap_le(ylhs, yrhs));
  }
  return merge_reports("holder", {std::move(product).finish(), std::move(young).finish()});
}

VerificationReport check_reverse_holder(const GaugeSpec& spec, const HolderExponents& e, Index dim,
                                        std::int64_t trials, std::uint64_t seed, double tolerance,
                                        double max_condition) {
  validate_exponents(e);
  const double r = e.r0, p = e.r1, q = e.r2;
  if (!(r > 0 && p > 0 && q < 0))
    throw Error(ErrorCode::BadExponents, "the reverse inequalities need r0 > 0, r1 > 0 and r2 < 0");
  if (!spec.is_norm()) throw Error(ErrorCode::TypeClassMismatch, spec.to_string() + " is not a symmetric norm");

  const char* names[] = {"reverse-holder-norm", "reverse-young-norm", "reverse-holder-trace", "reverse-young-trace",
                         "reverse-holder-schatten"};
  std::vector<ReportBuilder> parts;
  for (const char* name : names) {
    parts.emplace_back(name, trials, seed, tolerance);
    parts.back().params()["r0"] = r;
    parts.back().params()["r1"] = p;
    parts.back().params()["r2"] = q;
    parts.back().params()["dim"] = dim;
    parts.back().params()["max_condition"] = max_condition;
  }
  parts[0].params()["spec"] = spec.to_string();
  parts[1].params()["spec"] = spec.to_string();

  const GaugeSpec tr = GaugeSpec::trace();
  const GaugeSpec sch_r = GaugeSpec::schatten(r), sch_p = GaugeSpec::schatten(p), sch_q = GaugeSpec::schatten(q);
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const GeneralMatrix a(random_ginibre(dim, dim, rng));
    const GeneralMatrix b = random_invertible(dim, rng, max_condition);
    const GeneralMatrix ab(a.matrix() * b.matrix());
    const RVector s_ab = singular_values(ab).values;
    const RVector s_a = singular_values(a).values;
    const RVector s_b = singular_values(b).values;

    const double n0 = power_norm(spec, s_ab, r), n1 = power_norm(spec, s_a, p), n2 = power_norm(spec, s_b, q);
    double lhs = std::pow(n0, 1.0 / r), rhs = std::pow(n1, 1.0 / p) * std::pow(n2, 1.0 / q);
    parts[0].record(t, lhs, rhs, gap_ge(lhs, rhs));
    lhs = n0 / r;
    rhs = n1 / p + n2 / q;
    parts[1].record(t, lhs, rhs, gap_ge(lhs, rhs));

    const double t0 = power_norm(tr, s_ab, r), t1 = power_norm(tr, s_a, p), t2 = power_norm(tr, s_b, q);
    lhs = std::pow(t0, 1.0 / r);
    rhs = std::pow(t1, 1.0 / p) * std::pow(t2, 1.0 / q);
    parts[2].record(t, lhs, rhs, gap_ge(lhs, rhs));
    lhs = t0 / r;
    rhs = t1 / p + t2 / q;
    parts[3].record(t, lhs, rhs, gap_ge(lhs, rhs));

    lhs = sym_norm(sch_r, ab);
    rhs = sym_norm(sch_p, a) * sym_norm(sch_q, b);
    parts[4].record(t, lhs, rhs, gap_ge(lhs, rhs));
  }
  std::vector<VerificationReport> done;
  for (auto& part : parts) done.push_back(std::move(part).finish());
  return merge_reports("reverse-holder", done);
}

VerificationReport check_scalar_reverse_young(std::int64_t trials, std::uint64_t seed, double tolerance) {
  ReportBuilder rb("scalar-young", trials, seed, tolerance);
  const std::vector<GaugeSpec> gauges = {GaugeSpec::schatten(1.0), GaugeSpec::schatten(2.0), GaugeSpec::kyfan(2)};
  nlohmann::json names = nlohmann::json::array();
  for (const auto& g : gauges) names.push_back(g.to_string());
  rb.params()["gauges"] = names;
  rb.params()["vector_length"] = 4;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const double p = rng.log_uniform(0.2, 5.0);
    const double q = -p * rng.log_uniform(1.05, 20.0);
    const double r = 1.0 / (1.0 / p + 1.0 / q);
    RVector x(4), y(4);
    for (Index i = 0; i < 4; ++i) {
      x(i) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.log_uniform(0.05, 20.0);
      y(i) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.log_uniform(0.05, 20.0);
    }
    for (Index i = 0; i < 4; ++i) {
      const double lhs = std::pow(std::abs(x(i) * y(i)), r) / r;
      const double rhs = std::pow(std::abs(x(i)), p) / p + std::pow(std::abs(y(i)), q) / q;
      rb.record(t, lhs, rhs, gap_ge(lhs, rhs));
    }
    const RVector xy = x.cwiseProduct(y).cwiseAbs();
    const RVector ax = x.cwiseAbs(), ay = y.cwiseAbs();
    for (const auto& g : gauges) {
      const double f0 = gauge_value(g, xy.array().pow(r).matrix());
      const double f1 = gauge_value(g, ax.array().pow(p).matrix());
      const double f2 = gauge_value(g, ay.array().pow(q).matrix());
      const double lhs = std::pow(f0, 1.0 / r);
      const double rhs = std::pow(f1, 1.0 / p) * std::pow(f2, 1.0 / q);
      rb.record(t, lhs, rhs, gap_ge(lhs, rhs));
      const double ylhs = f0 / r, yrhs = f1 / p + f2 / q;
      rb.record(t, ylhs, yrhs, gap_ge(ylhs, yrhs));
    }
  }
  return std::move(rb).finish();
}

// ---- variational --------------------------------------------------------

namespace {

struct PsiInstance {
  PositiveDefiniteMatrix a;
  PositiveDefiniteMatrix b;
  GeneralMatrix k;
};

PsiInstance sample_instance(Index dim, Rng& rng) {
  PositiveDefiniteMatrix a = sample_pd(dim, rng, 20.0);
  PositiveDefiniteMatrix b = sample_pd(dim, rng, 20.0);
  GeneralMatrix k = random_invertible(dim, rng, 10.0);
  return {std::move(a), std::move(b), std::move(k)};
}

void describe_params(nlohmann::json& j, const PsiParams& params) {
  j["p"] = params.p;
  j["q"] = params.q;
  j["s"] = params.s;
}

}  // namespace

VerificationReport check_variational_identity(const PsiParams& params, Split split, const GaugeSpec& spec,
                                              Index dim, std::int64_t trials, std::uint64_t seed,
                                              double tolerance) {
  bound_direction(params, split);
  ReportBuilder rb("variational-identity", trials, seed, tolerance);
  describe_params(rb.params(), params);
  rb.params()["theorem"] = to_string(split);
  rb.params()["spec"] = spec.to_string();
  rb.params()["dim"] = dim;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const PsiInstance in = sample_instance(dim, rng);
    for (Form form : {Form::Product, Form::Sum}) {
      const VariationalResult res = closed_form(split, form, params, spec, in.a, in.b, in.k);
      rb.record(t, res.objective_at_optimizer, res.psi_value, res.relative_gap);
    }
  }
  return std::move(rb).finish();
}

VerificationReport check_bound_direction(const PsiParams& params, Split split, const GaugeSpec& spec, Index dim,
                                         std::int64_t instances, int probes, std::uint64_t seed, double tolerance) {
  const BoundDirection dir = bound_direction(params, split);
  ReportBuilder bound("variational-bound", instances, seed, tolerance);
  ReportBuilder order("variational-form-order", instances, seed, kFormOrderTol);
  for (ReportBuilder* rb : {&bound, &order}) {
    describe_params(rb->params(), params);
    rb->params()["theorem"] = to_string(split);
    rb->params()["spec"] = spec.to_string();
    rb->params()["dim"] = dim;
    rb->params()["probes"] = probes;
    rb->params()["direction"] = to_string(dir);
  }
  for (std::int64_t t = 0; t < instances; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const PsiInstance in = sample_instance(dim, rng);
    const double target = psi_norm(params, spec, in.a, in.b, in.k);
    const PositiveDefiniteMatrix z_star = split_optimizer(split, params, in.a, in.b, in.k);
    const PositiveDefiniteMatrix z_half = matrix_power(z_star, 0.5);
    for (int j = 0; j < probes; ++j) {
      PositiveDefiniteMatrix z = PositiveDefiniteMatrix::identity(dim);
      if (j % 2 == 0) {
        const HermitianMatrix h = random_hermitian(dim, rng);
        const double eps = rng.log_uniform(1e-3, 1.0) / h.matrix().norm();
        const PositiveDefiniteMatrix e = matrix_exp(HermitianMatrix::symmetrized(eps * h.matrix()));
        z = pd_from(conjugate_form(e.hermitian(), z_half.as_general()));
      } else {
        z = sample_pd(dim, rng, 100.0);
        z = scaled(z, rng.log_uniform(0.1, 10.0));
      }
      const double prod = split_objective(split, params, spec, in.a, in.b, in.k, z, Form::Product);
      const double sum = split_objective(split, params, spec, in.a, in.b, in.k, z, Form::Sum);
      if (dir == BoundDirection::Lower) {
        bound.record(t, prod, target, gap_ge(prod, target));
        bound.record(t, sum, target, gap_ge(sum, target));
        order.record(t, prod, sum, gap_le(prod, sum));
      } else {
        bound.record(t, prod, target, gap_le(prod, target));
        bound.record(t, sum, target, gap_le(sum, target));
        order.record(t, prod, sum, gap_ge(prod, sum));
      }
    }
  }
  return merge_reports("variational-bound", {std::move(bound).finish(), std::move(order).finish()});
}

VerificationReport check_variational(const PsiParams& params, Split split, const GaugeSpec& spec, Index dim,
                                     std::int64_t trials, std::uint64_t seed, double tolerance) {
  VerificationReport identity = check_variational_identity(params, split, spec, dim, trials, seed, tolerance);
  VerificationReport bound = check_bound_direction(params, split, spec, dim, trials, 20, mix_seed(seed ^ 0xB0D4D),
                                                   kInequalityTol);
  VerificationReport merged = merge_reports("variational", {identity, bound});
  merged.seed = seed;
  return merged;
}

// ---- convexity ----------------------------------------------------------

std::string_view to_string(Curvature c) noexcept { return c == Curvature::Concave ? "concave" : "convex"; }

Curvature regime_curvature(const PsiParams& params) {
  switch (classify(params).convexity) {
    case ConvexityTag::Concave42i: return Curvature::Concave;
    case ConvexityTag::Convex42ii:
    case ConvexityTag::Convex42iii: return Curvature::Convex;
    case ConvexityTag::Unknown: break;
  }
  std::ostringstream os;
  os << "regime unknown: no concavity/convexity class for (p,q,s) = (" << params.p << ", " << params.q << ", "
     << params.s << ")";
  throw Error(ErrorCode::RegimeMismatch, os.str());
}

Curvature regime_curvature(UpsilonRegime regime) {
  switch (regime) {
    case UpsilonRegime::Concave41i: return Curvature::Concave;
    case UpsilonRegime::Convex41ii:
    case UpsilonRegime::Convex41iii: return Curvature::Convex;
    case UpsilonRegime::Unknown: break;
  }
  throw Error(ErrorCode::RegimeMismatch, "regime unknown: no concavity/convexity class for (p,s)");
}

namespace {

template <class Eval>
void midpoint_checks(ReportBuilder& rb, std::int64_t t, Rng& rng, Curvature dir, const Eval& eval) {
  for (int j = 0; j < 2; ++j) {
    const double lambda = j == 0 ? 0.5 : rng.uniform(0.05, 0.95);
    const auto [mid, comb] = eval(lambda);
    rb.record(t, mid, comb, dir == Curvature::Concave ? gap_ge(mid, comb) : gap_le(mid, comb));
  }
}

}  // namespace

VerificationReport check_joint_convexity(const PsiParams& params, Index dim, std::int64_t trials,
                                         std::uint64_t seed, double tolerance,
                                         std::optional<Curvature> assert_direction) {
  const Curvature regime = regime_curvature(params);
  const Curvature dir = assert_direction.value_or(regime);
  ReportBuilder rb("convexity", trials, seed, tolerance);
  describe_params(rb.params(), params);
  rb.params()["dim"] = dim;
  rb.params()["regime"] = to_string(classify(params).convexity);
  rb.params()["asserted"] = to_string(dir);
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const PositiveDefiniteMatrix a1 = sample_pd(dim, rng, 20.0), a2 = sample_pd(dim, rng, 20.0);
    const PositiveDefiniteMatrix b1 = sample_pd(dim, rng, 20.0), b2 = sample_pd(dim, rng, 20.0);
    const GeneralMatrix k = random_invertible(dim, rng, 10.0);
    const double v1 = psi(params, a1, b1, k), v2 = psi(params, a2, b2, k);
    midpoint_checks(rb, t, rng, dir, [&](double lambda) {
      const double mid = psi(params, combination(lambda, a1, a2), combination(lambda, b1, b2), k);
      return std::pair{mid, lambda * v1 + (1.0 - lambda) * v2};
    });
  }
  return std::move(rb).finish();
}

VerificationReport check_upsilon_convexity(double p, double s, Index dim, std::int64_t trials, std::uint64_t seed,
                                           double tolerance, std::optional<Curvature> assert_direction) {
  const UpsilonRegime regime = classify_upsilon(p, s);
  const Curvature dir = assert_direction.value_or(regime_curvature(regime));
  ReportBuilder rb("upsilon-convexity", trials, seed, tolerance);
  rb.params()["p"] = p;
  rb.params()["s"] = s;
  rb.params()["dim"] = dim;
  rb.params()["regime"] = to_string(regime);
  rb.params()["asserted"] = to_string(dir);
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const PositiveDefiniteMatrix a1 = sample_pd(dim, rng, 20.0), a2 = sample_pd(dim, rng, 20.0);
    const GeneralMatrix k = random_invertible(dim, rng, 10.0);
    const double v1 = upsilon(p, s, a1, k), v2 = upsilon(p, s, a2, k);
    midpoint_checks(rb, t, rng, dir, [&](double lambda) {
      return std::pair{upsilon(p, s, combination(lambda, a1, a2), k), lambda * v1 + (1.0 - lambda) * v2};
    });
  }
  return std::move(rb).finish();
}

VerificationReport check_antinorm_concavity(const GaugeSpec& spec, const PsiParams& params, Index dim,
                                            std::int64_t trials, std::uint64_t seed, double tolerance,
                                            std::int64_t holder_trials) {
  if (!spec.supports_holder())
    throw Error(ErrorCode::UnsupportedAntiNorm,
                spec.to_string() + " is not an anti-norm known to satisfy the Hoelder inequality");
  const double p = params.p, q = params.q, s = params.s;
  if (!(p >= 0 && p <= 1 && q >= 0 && q <= 1 && s > 0 && s * (p + q) <= 1.0)) {
    std::ostringstream os;
    os << "regime unknown: anti-norm concavity needs 0 <= p,q <= 1 and 0 < s <= 1/(p+q), got (p,q,s) = (" << p
       << ", " << q << ", " << s << ")";
    throw Error(ErrorCode::RegimeMismatch, os.str());
  }
  ReportBuilder rb("antinorm-concavity", trials, seed, tolerance);
  describe_params(rb.params(), params);
  rb.params()["spec"] = spec.to_string();
  rb.params()["dim"] = dim;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const PositiveDefiniteMatrix a1 = sample_pd(dim, rng, 20.0), a2 = sample_pd(dim, rng, 20.0);
    const PositiveDefiniteMatrix b1 = sample_pd(dim, rng, 20.0), b2 = sample_pd(dim, rng, 20.0);
    const GeneralMatrix k = random_invertible(dim, rng, 10.0);
    const double v1 = psi_norm(params, spec, a1, b1, k), v2 = psi_norm(params, spec, a2, b2, k);
    midpoint_checks(rb, t, rng, Curvature::Concave, [&](double lambda) {
      const double mid = psi_norm(params, spec, combination(lambda, a1, a2), combination(lambda, b1, b2), k);
      return std::pair{mid, lambda * v1 + (1.0 - lambda) * v2};
    });
  }
  VerificationReport holder = check_holder(spec, {1.0, 2.0, 2.0}, dim, holder_trials, mix_seed(seed ^ 0x401D),
                                           tolerance, true);
  holder.suite = "antinorm-holder";
  VerificationReport merged = merge_reports("antinorm", {std::move(rb).finish(), holder});
  merged.seed = seed;
  return merged;
}

// ---- channels -----------------------------------------------------------

double trace_preservation_error(const QuantumChannel& ch) {
  CMatrix sum = CMatrix::Zero(ch.dim_in, ch.dim_in);
  for (const CMatrix& k : ch.kraus) sum += k.adjoint() * k;
  return (sum - CMatrix::Identity(ch.dim_in, ch.dim_in)).norm();
}

QuantumChannel random_cptp(Index dim, int kraus_count, std::uint64_t seed) {
  if (dim < 1 || kraus_count < 1)
    throw Error(ErrorCode::InvalidParameter, "channel needs dim >= 1 and at least one Kraus operator");
  Rng rng(seed);
  const CMatrix u = random_unitary(dim * kraus_count, rng);
  QuantumChannel ch{dim, dim, {}};
  for (int i = 0; i < kraus_count; ++i) ch.kraus.push_back(u.block(i * dim, 0, dim, dim));
  return ch;
}

QuantumChannel depolarizing(Index dim, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 1]");
  if (dim < 1) throw Error(ErrorCode::InvalidParameter, "channel needs dim >= 1");
  QuantumChannel ch{dim, dim, {}};
  if (lambda < 1.0) ch.kraus.push_back(std::sqrt(1.0 - lambda) * CMatrix::Identity(dim, dim));
  if (lambda > 0.0) {
    const double w = std::sqrt(lambda / static_cast<double>(dim));
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j) {
        CMatrix e = CMatrix::Zero(dim, dim);
        e(i, j) = w;
        ch.kraus.push_back(std::move(e));
      }
  }
  return ch;
}

HermitianMatrix apply_channel(const QuantumChannel& ch, const HermitianMatrix& rho) {
  if (rho.dim() != ch.dim_in) {
    std::ostringstream os;
    os << "channel input dimension is " << ch.dim_in << " but the state is " << rho.dim() << "x" << rho.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  CMatrix out = CMatrix::Zero(ch.dim_out, ch.dim_out);
  for (const CMatrix& k : ch.kraus) out += k * rho.matrix() * k.adjoint();
  return HermitianMatrix::symmetrized(out);
}

HermitianMatrix apply_channel(const QuantumChannel& ch, const PositiveDefiniteMatrix& rho) {
  return apply_channel(ch, rho.hermitian());
}

PositiveDefiniteMatrix regularize_output(const HermitianMatrix& rho) {
  const double tr = rho.trace();
  const double n = static_cast<double>(rho.dim());
  const CMatrix shifted = rho.matrix() + (kOutputRegularization * tr / n) * CMatrix::Identity(rho.dim(), rho.dim());
  // The shift sits at the pd_from gate for rank-deficient outputs, so only
  // strict positivity of the computed spectrum is required here.
  return PositiveDefiniteMatrix::from_decomposition(
      decompose(HermitianMatrix::symmetrized(shifted * (tr / shifted.trace().real()))));
}

// ---- data processing ----------------------------------------------------

std::string_view to_string(DivergenceKind kind) noexcept {
  switch (kind) {
    case DivergenceKind::Petz: return "petz";
    case DivergenceKind::Sandwiched: return "sandwiched";
    case DivergenceKind::AlphaZ: return "alpha-z";
  }
  return "sandwiched";
}

bool dpi_asserted(DivergenceKind kind, const DivergenceParams& params) {
  return kind == DivergenceKind::Sandwiched && params.alpha >= 0.5 && params.alpha != 1.0 &&
         std::isfinite(params.alpha);
}

namespace {

double divergence(DivergenceKind kind, const DivergenceParams& params, const PositiveDefiniteMatrix& a,
                  const PositiveDefiniteMatrix& b) {
  switch (kind) {
    case DivergenceKind::Petz: return petz_renyi(a, b, params.alpha);
    case DivergenceKind::Sandwiched: return sandwiched_renyi(a, b, params.alpha);
    case DivergenceKind::AlphaZ: return alpha_z(a, b, params.alpha, params.z);
  }
  return 0.0;
}

}  // namespace

VerificationReport check_dpi(DivergenceKind kind, const DivergenceParams& params, Index dim, std::int64_t trials,
                             std::uint64_t seed, double tolerance) {
  const bool asserted = dpi_asserted(kind, params);
  ReportBuilder rb("dpi", trials, seed, tolerance);
  rb.params()["kind"] = to_string(kind);
  rb.params()["alpha"] = params.alpha;
  if (kind == DivergenceKind::AlphaZ) rb.params()["z"] = params.z;
  rb.params()["dim"] = dim;
  rb.params()["mode"] = asserted ? "asserted" : "exploratory";
  rb.params()["gap"] = "absolute";
  std::int64_t observed = 0;
  double observed_max = 0.0;
  const double lambdas[] = {0.0, 0.5, 1.0};
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const PositiveDefiniteMatrix rho = random_density(dim, rng);
    const PositiveDefiniteMatrix sigma = random_density(dim, rng);
    const double before = divergence(kind, params, rho, sigma);
    std::vector<QuantumChannel> channels;
    channels.push_back(random_cptp(dim, rng.uniform_int(2, 4), rng.next_u64()));
    for (double lambda : lambdas) channels.push_back(depolarizing(dim, lambda));
    for (const QuantumChannel& ch : channels) {
      const double after = divergence(kind, params, regularize_output(apply_channel(ch, rho)),
                                      regularize_output(apply_channel(ch, sigma)));
      const double gap = after - before;
      if (asserted) {
        rb.record(t, after, before, gap);
      } else {
        observed_max = std::max(observed_max, gap);
        if (gap > tolerance) ++observed;
      }
    }
  }
  if (!asserted) {
    rb.params()["observed_violations"] = observed;
    rb.params()["observed_max_gap"] = observed_max;
  }
  return std::move(rb).finish();
}

// ---- entropy limits -----------------------------------------------------

VerificationReport check_limits(Index min_dim, Index max_dim, std::int64_t pairs, std::uint64_t seed) {
  if (min_dim < 1 || max_dim < min_dim) throw Error(ErrorCode::InvalidParameter, "bad dimension range");
  ReportBuilder one("limit-alpha-one", pairs, seed, 0.0);
  ReportBuilder inf("limit-alpha-infinity", pairs, seed, 0.0);
  ReportBuilder dmax("limit-alpha-infinity-dmax", pairs, seed, 0.0);
  for (ReportBuilder* rb : {&one, &inf, &dmax}) {
    rb->params()["min_dim"] = min_dim;
    rb->params()["max_dim"] = max_dim;
  }
  one.params()["gap"] = "distance of the error ratio outside [5, 20]";
  inf.params()["target"] = "log_operator_norm";
  dmax.params()["target"] = "max_relative";
  for (ReportBuilder* rb : {&inf, &dmax}) rb->params()["gap"] = "absolute excess over threshold";

  for (std::int64_t t = 0; t < pairs; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const Index dim = min_dim + static_cast<Index>(t % (max_dim - min_dim + 1));
    const PositiveDefiniteMatrix rho = random_density(dim, rng);
    const PositiveDefiniteMatrix sigma = random_density(dim, rng);

    const double u = umegaki(rho, sigma);
    for (double sign : {1.0, -1.0}) {
      const double e3 = std::abs(sandwiched_renyi(rho, sigma, 1.0 + sign * 1e-3) - u);
      const double e4 = std::abs(sandwiched_renyi(rho, sigma, 1.0 + sign * 1e-4) - u);
      const double ratio = e3 / e4;
      one.record(t, ratio, ratio < 5.0 ? 5.0 : 20.0, std::isfinite(ratio) ? std::max(5.0 - ratio, ratio - 20.0) : INFINITY);
    }

    const double d3 = sandwiched_renyi(rho, sigma, 1e3);
    const double d4 = sandwiched_renyi(rho, sigma, 1e4);
    const auto tail = [&](ReportBuilder& rb, double target) {
      const double g3 = std::abs(d3 - target), g4 = std::abs(d4 - target);
      rb.record(t, g3, 5.0 / 1e3, g3 - 5.0 / 1e3);
      rb.record(t, g4, 5.0 / 1e4, g4 - 5.0 / 1e4);
      rb.record(t, g4, 0.01, g4 - 0.01);
      rb.record(t, g4, g3, g4 - g3);
    };
    tail(inf, log_operator_norm(rho, sigma));
    tail(dmax, max_relative(rho, sigma));
  }
  VerificationReport merged =
      merge_reports("limits", {std::move(one).finish(), std::move(inf).finish(), std::move(dmax).finish()});
  merged.seed = seed;
  return merged;
}

// ---- spectral kernel ----------------------------------------------------

VerificationReport check_spectral_kernel(Index max_dim, std::int64_t trials, std::uint64_t seed) {
  if (max_dim < 1) throw Error(ErrorCode::InvalidParameter, "max_dim must be at least 1");
  ReportBuilder round("spectral-roundtrip", trials, seed, kReconstructionTol);
  ReportBuilder powers("spectral-powers", trials, seed, 1e-8);
  round.params()["max_dim"] = max_dim;
  powers.params()["max_dim"] = max_dim;
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const Index dim = 1 + static_cast<Index>(t % max_dim);
    const HermitianMatrix h = random_hermitian(dim, rng, rng.log_uniform(1e-3, 1e3));
    const double err = relative_frobenius(decompose(h).reconstruct(), h.matrix());
    round.record(t, err, kReconstructionTol, err);

    const PositiveDefiniteMatrix p = random_pd(dim, rng, ConditionNumber{1e3});
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    const CMatrix ab = matrix_power(p, a).matrix() * matrix_power(p, b).matrix();
    const double e1 = relative_frobenius(ab, matrix_power(p, a + b).matrix());
    powers.record(t, e1, 1e-8, e1);
    const double e2 = relative_frobenius(matrix_power(p, a).matrix() * matrix_power(p, -a).matrix(),
                                         CMatrix::Identity(dim, dim));
    powers.record(t, e2, 1e-8, e2);
  }
  VerificationReport merged = merge_reports("spectral", {std::move(round).finish(), std::move(powers).finish()});
  merged.seed = seed;
  return merged;
}

}  // namespace qrenyi
