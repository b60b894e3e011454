#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "qrenyi/entropy.hpp"
#include "qrenyi/gauge.hpp"
#include "qrenyi/matrix_io.hpp"
#include "qrenyi/variational.hpp"
#include "qrenyi/verify.hpp"

namespace qrenyi::cli {

using nlohmann::json;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::NonSquare:
    case ErrorCode::AsymmetryExceedsTolerance:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidSpectrum:
    case ErrorCode::TypeClassMismatch:
    case ErrorCode::InvalidGaugeSpec:
    case ErrorCode::AlphaIsOne:
    case ErrorCode::AlphaNotPositive:
    case ErrorCode::ZNotPositive:
    case ErrorCode::RegimeMismatch:
    case ErrorCode::InvalidParameter:
    case ErrorCode::LengthMismatch:
    case ErrorCode::NotSorted:
    case ErrorCode::NegativeEntry:
    case ErrorCode::NonPositiveEntry:
    case ErrorCode::BadExponents:
    case ErrorCode::UnsupportedAntiNorm:
    case ErrorCode::LambdaOutOfRange:
      return Usage;
    default:
      return Numeric;
  }
}

namespace {

struct Options {
  std::string format = "json";

  std::string kind;
  std::optional<double> alpha, z;
  std::string a_path, b_path, k_path;

  std::optional<double> p, q, s;
  std::string norm;
  std::string theorem;
  std::string form = "product";
  std::optional<double> tol;
  int budget = 2000;
  std::optional<std::uint64_t> seed;

  std::string suite;
  int dim = 3;
  int min_dim = 2;
  std::int64_t trials = 100;
  std::string out_path;
  std::optional<double> r0, r1, r2;
  bool upsilon = false;
  std::string assert_direction;
};

std::string text_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(std::ostream& out, const Options& opt, const json& doc) {
  if (opt.format == "text") {
    for (const auto& [key, value] : doc.items()) out << key << ": " << text_value(value) << '\n';
  } else {
    out << doc.dump() << '\n';
  }
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::InvalidParameter, std::string("missing required flag ") + flag);
  return *v;
}

std::uint64_t need_seed(const Options& opt) {
  if (!opt.seed) throw Error(ErrorCode::InvalidParameter, "--seed is required for randomized commands");
  return *opt.seed;
}

PsiParams psi_params(const Options& opt) { return {need(opt.p, "--p"), need(opt.q, "--q"), need(opt.s, "--s")}; }

GeneralMatrix k_matrix(const Options& opt, Index dim) {
  return opt.k_path.empty() ? GeneralMatrix::identity(dim) : load_general(opt.k_path);
}

GaugeSpec norm_spec(const Options& opt, const char* fallback) {
  return GaugeSpec::parse(opt.norm.empty() ? std::string(fallback) : opt.norm);
}

json tags_json(const RegimeTag& tag) {
  json variational = json::array();
  for (VariationalTag t : tag.variational) variational.push_back(to_string(t));
  return {{"variational", variational}, {"convexity", to_string(tag.convexity)}};
}

Split parse_theorem(const std::string& t) {
  if (t == "3.1" || t == "31") return Split::PQ;
  if (t == "3.2" || t == "32") return Split::SQ;
  throw Error(ErrorCode::InvalidParameter, "--theorem must be 3.1 or 3.2");
}

Form parse_form(const std::string& f) {
  if (f == "product") return Form::Product;
  if (f == "sum") return Form::Sum;
  throw Error(ErrorCode::InvalidParameter, "--form must be product or sum");
}

int cmd_entropy(const Options& opt, std::ostream& out) {
  const PositiveDefiniteMatrix a = load_pd(opt.a_path);
  const PositiveDefiniteMatrix b = load_pd(opt.b_path);
  json params = json::object();
  double value;
  const std::string& k = opt.kind;
  if (k == "petz") {
    params["alpha"] = need(opt.alpha, "--alpha");
    value = petz_renyi(a, b, *opt.alpha);
  } else if (k == "sandwiched") {
    params["alpha"] = need(opt.alpha, "--alpha");
    value = sandwiched_renyi(a, b, *opt.alpha);
  } else if (k == "quasi") {
    params["alpha"] = need(opt.alpha, "--alpha");
    value = sandwiched_quasi(a, b, *opt.alpha);
  } else if (k == "alpha-z") {
    params["alpha"] = need(opt.alpha, "--alpha");
    params["z"] = need(opt.z, "--z");
    value = alpha_z(a, b, *opt.alpha, *opt.z);
  } else if (k == "fidelity") {
    value = fidelity(a, b);
  } else if (k == "umegaki") {
    value = umegaki(a, b);
  } else if (k == "max") {
    value = max_relative(a, b);
  } else if (k == "thompson") {
    value = thompson_metric(a, b);
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown --kind " + k);
  }
  emit(out, opt, {{"kind", k}, {"params", params}, {"value", value}});
  return Ok;
}

int cmd_psi(const Options& opt, std::ostream& out) {
  const PsiParams params = psi_params(opt);
  const PositiveDefiniteMatrix a = load_pd(opt.a_path);
  const PositiveDefiniteMatrix b = load_pd(opt.b_path);
  const GeneralMatrix k = k_matrix(opt, a.dim());
  const GaugeSpec spec = norm_spec(opt, "trace");
  const double value =
      spec.kind() == GaugeSpec::Kind::Trace ? psi(params, a, b, k) : psi_norm(params, spec, a, b, k);
  const RegimeTag tag = classify(params);
  emit(out, opt,
       {{"params", {{"p", params.p}, {"q", params.q}, {"s", params.s}}},
        {"norm", spec.to_string()},
        {"value", value},
        {"tags", tag.to_string()},
        {"regime", tags_json(tag)}});
  return Ok;
}

int cmd_variational(const Options& opt, std::ostream& out) {
  const PsiParams params = psi_params(opt);
  const Split split = parse_theorem(opt.theorem);
  const Form form = parse_form(opt.form);
  const std::uint64_t seed = need_seed(opt);
  const PositiveDefiniteMatrix a = load_pd(opt.a_path);
  const PositiveDefiniteMatrix b = load_pd(opt.b_path);
  const GeneralMatrix k = k_matrix(opt, a.dim());
  const GaugeSpec spec = norm_spec(opt, "trace");
  const double tol = opt.tol.value_or(kVariationalIdentityTol);
  if (opt.budget < 0) throw Error(ErrorCode::InvalidParameter, "--budget must be non-negative");

  SearchOptions so;
  so.budget = opt.budget;
  so.seed = seed;
  const SearchResult search = numeric_search(split, form, params, spec, a, b, k, so);
  const VariationalResult closed = closed_form(split, form, params, spec, a, b, k);
  const bool certified = closed.relative_gap <= tol && !search.bound_breached;
  emit(out, opt,
       {{"theorem", split == Split::PQ ? "3.1" : "3.2"},
        {"form", to_string(form)},
        {"norm", spec.to_string()},
        {"params", {{"p", params.p}, {"q", params.q}, {"s", params.s}}},
        {"tags", classify(params).to_string()},
        {"psi", closed.psi_value},
        {"objective_at_Zstar", closed.objective_at_optimizer},
        {"relative_gap", closed.relative_gap},
        {"tolerance", tol},
        {"search_best", search.best.objective_at_optimizer},
        {"search_gap", search.best.relative_gap},
        {"search_evaluations", search.evaluations},
        {"bound_breached", search.bound_breached},
        {"bound_direction", to_string(closed.bound_direction)},
        {"certified", certified}});
  return certified ? Ok : Failed;
}

VerificationReport run_suite(const Options& opt) {
  const std::uint64_t seed = need_seed(opt);
  const std::string& suite = opt.suite;
  if (opt.dim < 1) throw Error(ErrorCode::InvalidParameter, "--dim must be at least 1");
  if (opt.trials < 0) throw Error(ErrorCode::InvalidParameter, "--trials must be non-negative");
  const Index dim = opt.dim;
  const auto tol = [&](double fallback) { return opt.tol.value_or(fallback); };
  const auto exponents = [&](HolderExponents fallback) {
    return HolderExponents{opt.r0.value_or(fallback.r0), opt.r1.value_or(fallback.r1), opt.r2.value_or(fallback.r2)};
  };
  std::optional<Curvature> direction;
  if (opt.assert_direction == "concave") direction = Curvature::Concave;
  else if (opt.assert_direction == "convex") direction = Curvature::Convex;
  else if (!opt.assert_direction.empty())
    throw Error(ErrorCode::InvalidParameter, "--assert-direction must be concave or convex");

  if (suite == "gauge-axioms")
    return check_gauge_axioms(norm_spec(opt, "trace"), dim, opt.trials, seed, tol(1e-12));
  if (suite == "holder")
    return check_holder(norm_spec(opt, "trace"), exponents({1.0, 2.0, 2.0}), dim, opt.trials, seed,
                        tol(kInequalityTol));
  if (suite == "reverse-holder")
    return check_reverse_holder(norm_spec(opt, "trace"), exponents({2.0, 1.0, -2.0}), dim, opt.trials, seed,
                                tol(kInequalityTol));
  if (suite == "scalar-young") return check_scalar_reverse_young(opt.trials, seed, tol(kInequalityTol));
  if (suite == "gelfand-naimark") return check_gelfand_naimark(dim, opt.trials, seed, tol(kInequalityTol));
  if (suite == "variational")
    return check_variational(psi_params(opt), parse_theorem(opt.theorem), norm_spec(opt, "trace"), dim,
                             opt.trials, seed, tol(kVariationalIdentityTol));
  if (suite == "convexity") {
    if (opt.upsilon)
      return check_upsilon_convexity(need(opt.p, "--p"), need(opt.s, "--s"), dim, opt.trials, seed,
                                     tol(kInequalityTol), direction);
    return check_joint_convexity(psi_params(opt), dim, opt.trials, seed, tol(kInequalityTol), direction);
  }
  if (suite == "antinorm")
    return check_antinorm_concavity(norm_spec(opt, "schatten:0.5"), psi_params(opt), dim, opt.trials, seed,
                                    tol(kInequalityTol));
  if (suite == "dpi") {
    DivergenceKind kind;
    const std::string k = opt.kind.empty() ? "sandwiched" : opt.kind;
    if (k == "petz") kind = DivergenceKind::Petz;
    else if (k == "sandwiched") kind = DivergenceKind::Sandwiched;
    else if (k == "alpha-z") kind = DivergenceKind::AlphaZ;
    else throw Error(ErrorCode::InvalidParameter, "dpi --kind must be petz, sandwiched or alpha-z");
    return check_dpi(kind, {need(opt.alpha, "--alpha"), opt.z.value_or(1.0)}, dim, opt.trials, seed,
                     tol(kDpiTol));
  }
  if (suite == "limits") return check_limits(opt.min_dim, dim, opt.trials, seed);
  throw Error(ErrorCode::InvalidParameter, "unknown --suite " + suite);
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const VerificationReport report = run_suite(opt);
  const std::string doc = report.to_canonical_json();
  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path);
    if (!f) throw Error(ErrorCode::InvalidParameter, "cannot write " + opt.out_path);
    f << doc << '\n';
  }
  if (opt.format == "text") {
    out << "suite: " << report.suite << '\n'
        << "pass: " << (report.pass ? "true" : "false") << '\n'
        << "trials: " << report.trials << '\n'
        << "violations: " << report.violations.size() << '\n'
        << "max_gap: " << json(report.max_gap).dump() << '\n';
  } else {
    out << doc << '\n';
  }
  return report.pass ? Ok : Failed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Quantum Renyi divergences, trace functionals and their inequalities"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  const auto pq_flags = [&](CLI::App* c) {
    c->add_option("--p", opt.p, "Exponent p");
    c->add_option("--q", opt.q, "Exponent q");
    c->add_option("--s", opt.s, "Exponent s");
  };
  const auto matrix_flags = [&](CLI::App* c) {
    c->add_option("--a", opt.a_path, "Matrix file for A")->required();
    c->add_option("--b", opt.b_path, "Matrix file for B")->required();
  };

  CLI::App* entropy = app.add_subcommand("entropy", "Evaluate a relative entropy");
  entropy->add_option("--kind", opt.kind, "petz, sandwiched, quasi, alpha-z, fidelity, umegaki, max, thompson")
      ->required();
  entropy->add_option("--alpha", opt.alpha, "Order alpha");
  entropy->add_option("--z", opt.z, "Parameter z of the alpha-z family");
  matrix_flags(entropy);

  CLI::App* psi_cmd = app.add_subcommand("psi", "Evaluate the trace functional or its norm version");
  pq_flags(psi_cmd);
  matrix_flags(psi_cmd);
  psi_cmd->add_option("--k", opt.k_path, "Matrix file for K (default identity)");
  psi_cmd->add_option("--norm", opt.norm, "Gauge spec (default trace)");

  CLI::App* var = app.add_subcommand("variational", "Certify a variational representation");
  pq_flags(var);
  matrix_flags(var);
  var->add_option("--k", opt.k_path, "Matrix file for K (default identity)");
  var->add_option("--norm", opt.norm, "Gauge spec (default trace)");
  var->add_option("--theorem", opt.theorem, "3.1 or 3.2")->required();
  var->add_option("--form", opt.form, "product or sum")->check(CLI::IsMember({"product", "sum"}));
  var->add_option("--tol", opt.tol, "Certification tolerance on the relative gap");
  var->add_option("--budget", opt.budget, "Objective evaluations of the numeric search");
  var->add_option("--seed", opt.seed, "Seed of the numeric search")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  verify->add_option("--suite", opt.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"gauge-axioms", "holder", "reverse-holder", "scalar-young", "gelfand-naimark",
                             "variational", "convexity", "antinorm", "dpi", "limits"}));
  verify->add_option("--dim", opt.dim, "Matrix dimension (largest dimension for limits)");
  verify->add_option("--min-dim", opt.min_dim, "Smallest dimension for limits");
  verify->add_option("--trials", opt.trials, "Number of trials");
  verify->add_option("--seed", opt.seed, "Suite seed")->required();
  verify->add_option("--tol", opt.tol, "Override the suite tolerance");
  verify->add_option("--out", opt.out_path, "Write the report here");
  verify->add_option("--norm", opt.norm, "Gauge spec");
  verify->add_option("--r0", opt.r0, "Hoelder exponent r0");
  verify->add_option("--r1", opt.r1, "Hoelder exponent r1");
  verify->add_option("--r2", opt.r2, "Hoelder exponent r2");
  verify->add_option("--theorem", opt.theorem, "3.1 or 3.2");
  verify->add_option("--kind", opt.kind, "Divergence for dpi");
  verify->add_option("--alpha", opt.alpha, "Order alpha for dpi");
  verify->add_option("--z", opt.z, "Parameter z for dpi");
  verify->add_flag("--upsilon", opt.upsilon, "Check the one-matrix functional tr (K*A^pK)^s");
  verify->add_option("--assert-direction", opt.assert_direction, "Override the asserted curvature");
  pq_flags(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }

  try {
    if (entropy->parsed()) return cmd_entropy(opt, out);
    if (psi_cmd->parsed()) return cmd_psi(opt, out);
    if (var->parsed()) return cmd_variational(opt, out);
    return cmd_verify(opt, out);
  } catch (const qrenyi::Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Numeric;
  }
}

}  // namespace qrenyi::cli
