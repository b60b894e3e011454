#include "qrenyi/variational.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qrenyi/means.hpp"
#include "qrenyi/random.hpp"
#include "qrenyi/sampling.hpp"

namespace qrenyi {

std::string_view to_string(VariationalTag tag) noexcept {
  switch (tag) {
    case VariationalTag::Min31: return "min_31";
    case VariationalTag::Max31: return "max_31";
    case VariationalTag::Min32: return "min_32";
    case VariationalTag::Max32: return "max_32";
  }
  return "none";
}

std::string_view to_string(ConvexityTag tag) noexcept {
  switch (tag) {
    case ConvexityTag::Concave42i: return "concave_42i";
    case ConvexityTag::Convex42ii: return "convex_42ii";
    case ConvexityTag::Convex42iii: return "convex_42iii";
    case ConvexityTag::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(UpsilonRegime tag) noexcept {
  switch (tag) {
    case UpsilonRegime::Concave41i: return "concave_41i";
    case UpsilonRegime::Convex41ii: return "convex_41ii";
    case UpsilonRegime::Convex41iii: return "convex_41iii";
    case UpsilonRegime::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Split split) noexcept { return split == Split::PQ ? "31" : "32"; }
std::string_view to_string(Form form) noexcept { return form == Form::Product ? "product" : "sum"; }
std::string_view to_string(BoundDirection d) noexcept { return d == BoundDirection::Lower ? "lower" : "upper"; }

bool RegimeTag::has(VariationalTag tag) const {
  for (VariationalTag t : variational)
    if (t == tag) return true;
  return false;
}

std::string RegimeTag::to_string() const {
  std::string out;
  for (VariationalTag t : variational) {
    if (!out.empty()) out += ',';
    out += qrenyi::to_string(t);
  }
  if (convexity != ConvexityTag::Unknown) {
    if (!out.empty()) out += ',';
    out += qrenyi::to_string(convexity);
  }
  return out.empty() ? "none" : out;
}

RegimeTag classify(const PsiParams& params) {
  const double p = params.p, q = params.q, s = params.s;
  RegimeTag tag;
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(s)) return tag;

  if ((s > 0 && p > 0 && q > 0) || (s > 0 && p < 0 && q < 0)) tag.variational.push_back(VariationalTag::Min31);
  if ((s > 0 && p > 0 && q < 0 && p + q > 0) || (s > 0 && p < 0 && q > 0 && p + q < 0))
    tag.variational.push_back(VariationalTag::Max31);
  if (s > 0 && q > 0 && s < 1.0 / q) tag.variational.push_back(VariationalTag::Min32);
  if (s > 0 && q < 0) tag.variational.push_back(VariationalTag::Max32);

  if (p >= 0 && p <= 1 && q >= 0 && q <= 1 && s > 0 && s * (p + q) <= 1.0)
    tag.convexity = ConvexityTag::Concave42i;
  else if (p >= -1 && p <= 0 && q >= -1 && q <= 0 && s > 0)
    tag.convexity = ConvexityTag::Convex42ii;
  else if (p >= 1 && p <= 2 && q >= -1 && q <= 0 && !(p == 1 && q == -1) && s * (p + q) >= 1.0)
    tag.convexity = ConvexityTag::Convex42iii;
  return tag;
}

UpsilonRegime classify_upsilon(double p, double s) {
  if (!std::isfinite(p) || !std::isfinite(s)) return UpsilonRegime::Unknown;
  if (p >= 0 && p <= 1 && s > 0 && s * p <= 1.0) return UpsilonRegime::Concave41i;
  if (p >= -1 && p <= 0 && s > 0) return UpsilonRegime::Convex41ii;
  if (p >= 1 && p <= 2 && s * p >= 1.0) return UpsilonRegime::Convex41iii;
  return UpsilonRegime::Unknown;
}

namespace {

std::string describe(const PsiParams& params) {
  std::ostringstream os;
  os << "(p,q,s) = (" << params.p << ", " << params.q << ", " << params.s << ")";
  return os.str();
}

bool is_positive_integer(double s) { return s > 0 && s == std::floor(s); }

HermitianMatrix core_form(double p, const PositiveDefiniteMatrix& a, const GeneralMatrix& k) {
  if (k.rows() != a.dim()) {
    std::ostringstream os;
    os << "K has " << k.rows() << " rows but A is " << a.dim() << "x" << a.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return conjugate_form(matrix_power(a, p).hermitian(), k);
}

PositiveDefiniteMatrix require_pd_core(const HermitianMatrix& core) {
  try {
    return pd_from(core);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    throw Error(ErrorCode::SingularCore, "K*A^pK is not positive definite but a fractional or negative power is needed");
  }
}

// B^{q/2} K* A^p K B^{q/2}; enforces the core PD gate when s needs it.
HermitianMatrix psi_argument(const PsiParams& params, const PositiveDefiniteMatrix& a,
                             const PositiveDefiniteMatrix& b, const GeneralMatrix& k) {
  const HermitianMatrix core = core_form(params.p, a, k);
  if (core.dim() != b.dim()) {
    std::ostringstream os;
    os << "K has " << core.dim() << " columns but B is " << b.dim() << "x" << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (!is_positive_integer(params.s)) require_pd_core(core);
  return conjugate_form(core, matrix_power(b, params.q / 2.0).as_general());
}

// lambda^t for an eigenvalue that is mathematically >= 0 (or > 0 when t is
// not a positive integer); rounding noise below zero is clamped.
double eig_power(double lambda, double t) {
  if (is_positive_integer(t)) return std::pow(lambda, t);
  if (lambda <= 0.0) {
    if (t > 0) return 0.0;
    throw Error(ErrorCode::SingularCore, "negative power of a singular matrix");
  }
  return std::pow(lambda, t);
}

HermitianMatrix power_of(const HermitianMatrix& m, double t) {
  const SpectralDecomposition d = decompose(m);
  return HermitianMatrix::symmetrized(d.reconstruct_with([t](double x) { return eig_power(x, t); }));
}

struct SplitShape {
  double e1, e2, w1, w2;
  BoundDirection direction;
};

SplitShape split_shape(Split split, const PsiParams& params) {
  const RegimeTag tag = classify(params);
  const double p = params.p, q = params.q, s = params.s;
  if (split == Split::PQ) {
    const bool lower = tag.has(VariationalTag::Min31);
    if (!lower && !tag.has(VariationalTag::Max31))
      throw Error(ErrorCode::RegimeMismatch, describe(params) + " admits neither min_31 nor max_31");
    if (std::abs(p + q) < kDegenerateExponentSum)
      throw Error(ErrorCode::RegimeMismatch, describe(params) + " has p + q = 0");
    return {s * (p + q) / p, s * (p + q) / q, p / (p + q), q / (p + q),
            lower ? BoundDirection::Lower : BoundDirection::Upper};
  }
  const bool lower = tag.has(VariationalTag::Min32);
  if (!lower && !tag.has(VariationalTag::Max32))
    throw Error(ErrorCode::RegimeMismatch, describe(params) + " admits neither min_32 nor max_32");
  if (s * q == 1.0) throw Error(ErrorCode::RegimeMismatch, describe(params) + " has sq = 1");
  return {s / (1.0 - s * q), 1.0 / q, 1.0 - s * q, s * q, lower ? BoundDirection::Lower : BoundDirection::Upper};
}

double combine(const SplitShape& shape, double n1, double n2, Form form) {
  if (form == Form::Product) return std::pow(n1, shape.w1) * std::pow(n2, shape.w2);
  return shape.w1 * n1 + shape.w2 * n2;
}

// Everything the objective needs that does not depend on Z.
struct Instance {
  SplitShape shape;
  PositiveDefiniteMatrix core;
  PositiveDefiniteMatrix b_q;
};

Instance prepare(Split split, const PsiParams& params, const PositiveDefiniteMatrix& a,
                 const PositiveDefiniteMatrix& b, const GeneralMatrix& k) {
  SplitShape shape = split_shape(split, params);
  HermitianMatrix core = core_form(params.p, a, k);
  if (core.dim() != b.dim()) {
    std::ostringstream os;
    os << "K has " << core.dim() << " columns but B is " << b.dim() << "x" << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return {shape, require_pd_core(core), matrix_power(b, params.q)};
}

double evaluate(const Instance& inst, const GaugeSpec& spec, const PositiveDefiniteMatrix& z, Form form) {
  if (z.dim() != inst.core.dim()) {
    std::ostringstream os;
    os << "Z is " << z.dim() << "x" << z.dim() << " but the core is " << inst.core.dim() << "x" << inst.core.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const HermitianMatrix x1 = conjugate_form(inst.core.hermitian(), matrix_power(z, -0.5).as_general());
  const HermitianMatrix x2 = conjugate_form(inst.b_q.hermitian(), matrix_power(z, 0.5).as_general());
  const double n1 = sym_norm(spec, power_of(x1, inst.shape.e1));
  const double n2 = sym_norm(spec, power_of(x2, inst.shape.e2));
  return combine(inst.shape, n1, n2, form);
}

PositiveDefiniteMatrix closed_optimizer(Split split, const PsiParams& params, const Instance& inst) {
  const double w = split == Split::PQ ? params.q / (params.p + params.q) : params.s * params.q;
  return geometric_mean(matrix_power(inst.b_q, -1.0), inst.core, w);
}

}  // namespace

BoundDirection bound_direction(const PsiParams& params, Split split) { return split_shape(split, params).direction; }

double psi(const PsiParams& params, const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
           const GeneralMatrix& k) {
  const RVector eig = decompose(psi_argument(params, a, b, k)).eigenvalues;
  double sum = 0.0;
  for (Index i = 0; i < eig.size(); ++i) sum += eig_power(eig(i), params.s);
  return sum;
}

double psi_norm(const PsiParams& params, const GaugeSpec& spec, const PositiveDefiniteMatrix& a,
                const PositiveDefiniteMatrix& b, const GeneralMatrix& k) {
  return sym_norm(spec, power_of(psi_argument(params, a, b, k), params.s));
}

double upsilon(double p, double s, const PositiveDefiniteMatrix& a, const GeneralMatrix& k) {
  const HermitianMatrix core = core_form(p, a, k);
  if (!is_positive_integer(s)) require_pd_core(core);
  const RVector eig = decompose(core).eigenvalues;
  double sum = 0.0;
  for (Index i = 0; i < eig.size(); ++i) sum += eig_power(eig(i), s);
  return sum;
}

double split_objective(Split split, const PsiParams& params, const GaugeSpec& spec,
                       const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                       const GeneralMatrix& k, const PositiveDefiniteMatrix& z, Form form) {
  return evaluate(prepare(split, params, a, b, k), spec, z, form);
}

PositiveDefiniteMatrix split_optimizer(Split split, const PsiParams& params, const PositiveDefiniteMatrix& a,
                                       const PositiveDefiniteMatrix& b, const GeneralMatrix& k) {
  return closed_optimizer(split, params, prepare(split, params, a, b, k));
}

double relative_gap(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

VariationalResult closed_form(Split split, Form form, const PsiParams& params, const GaugeSpec& spec,
                              const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                              const GeneralMatrix& k) {
  const Instance inst = prepare(split, params, a, b, k);
  const double target = psi_norm(params, spec, a, b, k);
  PositiveDefiniteMatrix z = closed_optimizer(split, params, inst);
  const double value = evaluate(inst, spec, z, form);
  return {target, std::move(z), value, relative_gap(value, target), inst.shape.direction};
}

SearchResult numeric_search(Split split, Form form, const PsiParams& params, const GaugeSpec& spec,
                            const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                            const GeneralMatrix& k, const SearchOptions& options,
                            const std::function<void(double)>& observer) {
  const Instance inst = prepare(split, params, a, b, k);
  const double target = psi_norm(params, spec, a, b, k);
  PositiveDefiniteMatrix z_star = closed_optimizer(split, params, inst);
  const double closed_value = evaluate(inst, spec, z_star, form);
  const bool minimize = inst.shape.direction == BoundDirection::Lower;
  const auto better = [minimize](double x, double y) { return minimize ? x < y : x > y; };

  const Index n = inst.core.dim();
  HermitianMatrix h = options.start == SearchStart::ClosedForm ? matrix_log(z_star) : HermitianMatrix::diagonal(RVector::Zero(n));
  PositiveDefiniteMatrix best_z = options.start == SearchStart::ClosedForm ? z_star : PositiveDefiniteMatrix::identity(n);
  double best = evaluate(inst, spec, best_z, form);

  SearchResult out{{target, best_z, best, relative_gap(best, target), inst.shape.direction}, closed_value, 0, 0, 0, false};
  Rng rng(options.seed);
  double step = options.initial_step;
  for (int it = 0; it < options.budget; ++it) {
    const HermitianMatrix g = random_hermitian(n, rng);
    const double gnorm = g.matrix().norm();
    if (!(gnorm > 0.0)) continue;
    const HermitianMatrix trial = HermitianMatrix::symmetrized(h.matrix() + (step / gnorm) * g.matrix());
    ++out.evaluations;
    double value;
    PositiveDefiniteMatrix z = PositiveDefiniteMatrix::identity(n);
    try {
      z = matrix_exp(trial);
      value = evaluate(inst, spec, z, form);
    } catch (const Error&) {
      value = std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isfinite(value) && observer) observer(value);
    if (std::isfinite(value) && better(value, best)) {
      best = value;
      best_z = std::move(z);
      h = trial;
      ++out.accepted;
      step *= options.grow;
    } else {
      step *= options.shrink;
      if (step < options.step_floor) {
        step = options.initial_step;
        ++out.restarts;
      }
    }
  }

  out.best = {target, std::move(best_z), best, relative_gap(best, target), inst.shape.direction};
  const double excess = minimize ? (closed_value - best) : (best - closed_value);
  out.bound_breached = excess > kSearchBreachTol * std::max(std::abs(closed_value), 1e-300);
  return out;
}

VariationalResult fidelity_variational(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                       double t, Form form) {
  if (!(t > 0.0) || !std::isfinite(t) || t == 1.0)
    throw Error(ErrorCode::InvalidParameter, "fidelity parameter t must be positive, finite and different from 1");
  const PsiParams params{1.0, (1.0 - t) / t, t};
  return closed_form(Split::PQ, form, params, GaugeSpec::trace(), a, b, GeneralMatrix::identity(a.dim()));
}

}  // namespace qrenyi
