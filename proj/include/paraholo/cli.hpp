#pragma once

// Batch front-end: problem files in, check reports out.

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "paraholo/connection.hpp"
#include "paraholo/curvature.hpp"
#include "paraholo/einstein.hpp"
#include "paraholo/lie_group.hpp"
#include "paraholo/parser.hpp"
#include "paraholo/report.hpp"

namespace paraholo {

/// Problem file does not match the expected layout; `where` is a JSON path.
class SchemaError : public InputError {
 public:
  SchemaError(std::string where, const std::string& what)
      : InputError(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum ExitCode { exit_pass = 0, exit_check_failed = 1, exit_input_error = 2, exit_degenerate = 3 };

struct RunConfig {
  std::string subcommand = "all";
  std::string input;
  std::optional<double> tolerance;
  std::string output;
  std::string format = "json";
  std::optional<std::vector<EvalPoint>> samples;
  double constant_c = 1.0;
};

struct RunResult {
  int status = exit_pass;
  std::optional<Report> report;
  std::string error;
};

inline constexpr int max_dimension = 8;
inline constexpr double default_metric_tolerance = 1e-9;
inline constexpr double default_lie_tolerance = 1e-6;
inline constexpr double lie_sample_radius = 1e-2;

namespace detail {

inline const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path, std::string("missing key \"") + key + "\"");
  return *it;
}

inline int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

inline double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

inline ParaComplex get_pc(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [re, im]");
  return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
}

inline const Json& get_array(const Json& j, const std::string& path, std::size_t size) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  if (j.size() != size) throw SchemaError(path, "expected " + std::to_string(size) + " entries");
  return j;
}

inline Expression get_expr(const Json& j, const std::string& path, int n) {
  if (!j.is_string()) throw SchemaError(path, "expected an expression string");
  try {
    return parse_expr(j.get<std::string>(), n);
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
}

inline int get_dimension(const Json& j, const std::string& path) {
  int n = get_int(j, path);
  if (n < 1 || n > max_dimension) throw SchemaError(path, "dimension must be in [1, " + std::to_string(max_dimension) + "]");
  return n;
}

inline std::vector<EvalPoint> get_samples(const Json& j, const std::string& path, int n) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a non-empty array of points");
  std::vector<EvalPoint> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string pp = path + "[" + std::to_string(i) + "]";
    get_array(j[i], pp, std::size_t(n));
    std::vector<ParaComplex> c;
    for (int a = 0; a < n; ++a) c.push_back(get_pc(j[i][a], pp + "[" + std::to_string(a) + "]"));
    out.emplace_back(std::move(c));
  }
  return out;
}

inline double get_tolerance(const Json& j, const std::string& path) {
  double t = get_number(j, path);
  if (!(t > 0.0)) throw SchemaError(path, "tolerance must be positive");
  return t;
}

}  // namespace detail

struct MetricProblem {
  ParaMetric metric;
  std::vector<EvalPoint> samples;
  double tolerance = default_metric_tolerance;
};

struct LieProblem {
  LieAlgebraData algebra;
  LambdaFrame frame;
  std::optional<int> series_order;
  std::vector<EvalPoint> samples;
  double tolerance = default_lie_tolerance;
};

inline bool is_lie_problem(const Json& j) { return j.is_object() && j.contains("structure_constants"); }

inline MetricProblem load_metric_problem(const Json& j) {
  const int n = detail::get_dimension(detail::field(j, "$", "dimension"), "$.dimension");
  const Json& G = detail::get_array(detail::field(j, "$", "G"), "$.G", std::size_t(n));
  std::vector<std::vector<std::optional<Expression>>> entries(n, std::vector<std::optional<Expression>>(n));
  for (int a = 0; a < n; ++a) {
    const std::string row = "$.G[" + std::to_string(a) + "]";
    detail::get_array(G[a], row, std::size_t(n));
    for (int b = 0; b < n; ++b) {
      if (G[a][b].is_null()) continue;
      entries[a][b] = detail::get_expr(G[a][b], row + "[" + std::to_string(b) + "]", n);
    }
  }
  std::vector<EvalPoint> samples =
      j.contains("samples") ? detail::get_samples(j["samples"], "$.samples", n) : default_sample_grid(n);
  double tol = j.contains("tolerance") ? detail::get_tolerance(j["tolerance"], "$.tolerance") : default_metric_tolerance;
  ParaMetric metric = build_metric(n, entries, samples);
  return {std::move(metric), std::move(samples), tol};
}

inline LieProblem load_lie_problem(const Json& j) {
  const int m = detail::get_dimension(detail::field(j, "$", "dim"), "$.dim");
  const Json& sc = detail::field(j, "$", "structure_constants");
  if (!sc.is_array()) throw SchemaError("$.structure_constants", "expected an array");
  std::vector<StructureEntry> entries;
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const std::string path = "$.structure_constants[" + std::to_string(i) + "]";
    StructureEntry e;
    e.upper = detail::get_int(detail::field(sc[i], path, "upper"), path + ".upper");
    const Json& lower = detail::get_array(detail::field(sc[i], path, "lower"), path + ".lower", 2);
    e.b = detail::get_int(lower[0], path + ".lower[0]");
    e.c = detail::get_int(lower[1], path + ".lower[1]");
    e.value = detail::get_pc(detail::field(sc[i], path, "value"), path + ".value");
    entries.push_back(e);
  }
  LieProblem p;
  p.algebra = validate_structure(m, std::span<const StructureEntry>(entries));

  const Json& lam = j.contains("lambda") ? j["lambda"] : Json("series:6");
  if (lam.is_string()) {
    const std::string s = lam.get<std::string>();
    const std::string prefix = "series:";
    int order = -1;
    if (s.rfind(prefix, 0) == 0) {
      try {
        std::size_t used = 0;
        order = std::stoi(s.substr(prefix.size()), &used);
        if (used != s.size() - prefix.size()) order = -1;
      } catch (const std::exception&) {
        order = -1;
      }
    }
    if (order < 0) throw SchemaError("$.lambda", "expected \"series:N\" with N >= 0 or a matrix of expressions");
    p.series_order = order;
    p.frame = bch_lambda_series(p.algebra, order);
  } else {
    detail::get_array(lam, "$.lambda", std::size_t(m));
    ExprMatrix L(m, m);
    for (int a = 0; a < m; ++a) {
      const std::string row = "$.lambda[" + std::to_string(a) + "]";
      detail::get_array(lam[a], row, std::size_t(m));
      for (int b = 0; b < m; ++b) L(a, b) = detail::get_expr(lam[a][b], row + "[" + std::to_string(b) + "]", m);
    }
    p.frame = make_frame(m, L);
  }
  p.samples = j.contains("samples") ? detail::get_samples(j["samples"], "$.samples", m)
                                    : probe_points(m, lie_sample_radius);
  if (j.contains("tolerance")) p.tolerance = detail::get_tolerance(j["tolerance"], "$.tolerance");
  return p;
}

// ---------------------------------------------------------------------------
// Metric suites.

class MetricSuite {
 public:
  MetricSuite(MetricProblem p, double c) : p_(std::move(p)), c_(c), n_(p_.metric.n()) {}

  static const std::vector<std::string>& names(const std::string& subcommand) {
    static const std::vector<std::string> metric = {"build_metric", "is_paraholomorphic_metric", "check_norden",
                                                    "complexify_metric", "twin_metric"};
    static const std::vector<std::string> connection = {
        "is_paraholomorphic_metric", "christoffel",  "fundamental_phi", "fundamental_psi", "characteristic_connection",
        "verify_characteristic_axioms", "is_paraholomorphic_connection"};
    static const std::vector<std::string> curvature = {
        "is_paraholomorphic_metric", "curvature_components", "ricci_components", "scalar_curvature",
        "einstein_tensor", "divergence_einstein", "classify_characteristic_einstein"};
    static const std::vector<std::string> einstein = {"is_paraholomorphic_metric", "fundamental_phi",
                                                      "extract_einstein_constant", "scalar_curvatures",
                                                      "check_theorem_correspondence", "twin_transfer"};
    static const std::vector<std::string> all = [] {
      std::vector<std::string> out;
      std::set<std::string> seen;
      for (const auto* list : {&metric, &connection, &curvature, &einstein})
        for (const auto& s : *list)
          if (seen.insert(s).second) out.push_back(s);
      return out;
    }();
    if (subcommand == "metric-check") return metric;
    if (subcommand == "connection") return connection;
    if (subcommand == "curvature") return curvature;
    if (subcommand == "einstein") return einstein;
    return all;
  }

  Report run(const std::string& subcommand) {
    Report r;
    for (const auto& name : names(subcommand)) r.add(check(name));
    return r;
  }

  Check check(const std::string& name) {
    Check c;
    c.name = name;
    if (name == "build_metric") build(c);
    else if (name == "is_paraholomorphic_metric") holomorphic(c);
    else if (name == "check_norden") norden(c);
    else if (name == "complexify_metric") complexify(c);
    else if (name == "twin_metric") twin(c);
    else if (name == "christoffel") christoffel(c);
    else if (name == "fundamental_phi") phi(c);
    else if (name == "fundamental_psi") psi(c);
    else if (name == "characteristic_connection") characteristic(c);
    else if (name == "verify_characteristic_axioms") axioms(c);
    else if (name == "is_paraholomorphic_connection") holomorphic_connection(c);
    else if (name == "curvature_components") curvature(c);
    else if (name == "ricci_components") ricci(c);
    else if (name == "scalar_curvature") scalar(c);
    else if (name == "einstein_tensor") einstein_tensor_check(c);
    else if (name == "divergence_einstein") divergence(c);
    else if (name == "classify_characteristic_einstein") classify(c);
    else if (name == "extract_einstein_constant") extract(c);
    else if (name == "scalar_curvatures") scalars(c);
    else if (name == "check_theorem_correspondence") correspondence(c);
    else if (name == "twin_transfer") twin_check(c);
    else throw InputError("unknown check " + name);
    return c;
  }

 private:
  const ParaMetric& m() const { return p_.metric; }
  std::span<const EvalPoint> samples() const { return p_.samples; }
  double tol() const { return p_.tolerance; }
  bool holomorphic() {
    if (!holomorphic_) holomorphic_ = is_paraholomorphic_metric(m(), samples(), tol());
    return *holomorphic_;
  }
  const std::vector<CurvatureData>& curv() {
    if (curv_.empty())
      for (const auto& p : samples()) curv_.push_back(curvature_data(m(), p));
    return curv_;
  }
  void requires_holomorphy(Check& c) { c.details["requires_paraholomorphic"] = true; }

  void build(Check& c) {
    check_nondegenerate(m(), samples());
    c.pass = true;
    c.details = {{"dimension", n_}, {"samples", samples().size()}, {"G", to_json(m().at(samples().front()))}};
  }

  void holomorphic(Check& c) {
    double v = 0.0;
    for (const auto& p : samples()) {
      auto s = p.slots();
      for (int k = n_; k < 2 * n_; ++k) v = std::max(v, max_abs(m().dsheet_at<ParaComplex>(false, k, s)));
    }
    c.violation = v;
    c.pass = holomorphic();
    c.details = {{"is_paraholomorphic", c.pass}};
  }

  void norden(Check& c) {
    c.violation = check_norden(realize_metric(m()), samples());
    c.pass = c.violation < tol();
    c.details = {{"norden_violation", c.violation}};
  }

  void complexify(Check& c) {
    RealizedMetric rm = realize_metric(m());
    ParaMetric back = complexify_metric(rm, samples(), tol());
    for (const auto& p : samples()) c.violation = std::max(c.violation, max_diff(back.at(p).data(), m().at(p).data()));
    c.pass = c.violation < tol();
    c.details = {{"realized", to_json(realized_at(rm, samples().front()))}};
  }

  void twin(Check& c) {
    ParaMetric t = m().twin(), tt = t.twin();
    for (const auto& p : samples()) {
      PCMatrix g = m().at(p), gt = t.at(p), gtt = tt.at(p);
      for (std::size_t i = 0; i < g.data().size(); ++i)
        c.violation = std::max({c.violation, abs_max(gt.data()[i] - ParaComplex{0, 1} * g.data()[i]),
                                abs_max(gtt.data()[i] - g.data()[i])});
    }
    c.pass = c.violation < tol();
    c.details = {{"twin", to_json(t.at(samples().front()))}};
  }

  void christoffel(Check& c) {
    double biggest = 0.0;
    const int N = 2 * n_;
    for (const auto& p : samples()) {
      auto s = p.slots();
      Tensor3<ParaComplex> block = characteristic_at<ParaComplex>(m(), s);
      Tensor3<ParaComplex> full = levi_civita_full_at<ParaComplex>(m(), s);
      for (int k = 0; k < N; ++k)
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b) {
            if (!((k >= n_) == (a >= n_) && (a >= n_) == (b >= n_))) continue;
            c.violation = std::max(c.violation, abs_max(block(k, a, b) - full(k, a, b)));
            biggest = std::max(biggest, abs_max(full(k, a, b)));
          }
    }
    c.pass = c.violation < tol();
    c.details = {{"max_abs", biggest}};
  }

  void phi(Check& c) {
    for (const auto& p : samples())
      c.violation = std::max(c.violation, max_abs(fundamental_phi_at<ParaComplex>(m(), p.slots()).data()));
    const bool zero = c.violation < tol();
    c.pass = zero;
    c.details = {{"nonzero", !zero}, {"max_abs", c.violation}};
  }

  void psi(Check& c) {
    double biggest = 0.0;
    const int N = 2 * n_;
    for (const auto& p : samples()) {
      Tensor3<ParaComplex> t = fundamental_psi_at<ParaComplex>(m(), p.slots());
      biggest = std::max(biggest, max_abs(t.data()));
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
          for (int k = 0; k < N; ++k) c.violation = std::max(c.violation, abs_max(t(a, b, k) - t(b, a, k)));
    }
    c.pass = c.violation < tol();
    c.details = {{"max_abs", biggest}, {"nonzero", biggest >= tol()}};
  }

  void characteristic(Check& c) {
    for (const auto& p : samples()) {
      auto s = p.slots();
      c.violation = std::max(c.violation, max_diff(characteristic_at<ParaComplex>(m(), s).data(),
                                                   characteristic_full_at<ParaComplex>(m(), s).data()));
    }
    c.pass = c.violation < tol();
  }

  void axioms(Check& c) {
    AxiomResiduals worst;
    double probe = std::numeric_limits<double>::infinity();
    for (const auto& p : samples()) {
      AxiomResiduals r = axiom_residuals(m(), characteristic_at<ParaComplex>(m(), p.slots()), p);
      worst.symmetry = std::max(worst.symmetry, r.symmetry);
      worst.type = std::max(worst.type, r.type);
      worst.metric = std::max(worst.metric, r.metric);
      worst.corollary = std::max(worst.corollary, r.corollary);
    }
    probe = uniqueness_probe(m(), samples().front(), 8, 1);
    c.violation = worst.max();
    c.pass = c.violation < tol() && probe > tol();
    c.details = {{"symmetry", worst.symmetry},   {"type", worst.type},
                 {"metric", worst.metric},       {"corollary", worst.corollary},
                 {"uniqueness_probe", probe}};
  }

  void holomorphic_connection(Check& c) {
    CharacteristicField field{m()};
    for (const auto& p : samples()) {
      auto s = p.slots();
      for (int k = n_; k < 2 * n_; ++k) {
        Tensor3<ParaComplex> d = field_derivative(field, s, k);
        for (int x = 0; x < n_; ++x)
          for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) c.violation = std::max(c.violation, abs_max(d(x, a, b)));
      }
    }
    c.pass = is_paraholomorphic_connection(field, n_, samples(), tol());
    c.details = {{"is_paraholomorphic", c.pass}};
  }

  void curvature(Check& c) {
    double biggest = 0.0;
    for (const auto& cd : curv()) {
      const int N = 2 * cd.n;
      biggest = std::max(biggest, max_abs(cd.R.data()));
      for (int d = 0; d < N; ++d)
        for (int x = 0; x < N; ++x)
          for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) c.violation = std::max(c.violation, abs_max(cd.R(d, x, a, b) + cd.R(d, x, b, a)));
    }
    c.pass = c.violation < tol();
    c.details = {{"max_abs", biggest}, {"mixed_ricci", curv().front().mixed_ricci()}};
  }

  void ricci(Check& c) {
    RealizedMetric rm = realize_metric(m());
    for (std::size_t i = 0; i < samples().size(); ++i) {
      RealGeometry geo = real_geometry(rm, samples()[i]);
      c.violation = std::max(c.violation, ricci_correspondence_violation(curv()[i], geo.ricci));
    }
    c.pass = c.violation < tol();
    c.details = {{"ricci", to_json(curv().front().ricci_block())}};
    requires_holomorphy(c);
  }

  void scalar(Check& c) {
    for (const auto& cd : curv()) c.violation = std::max(c.violation, std::abs(cd.rho.im));
    c.pass = c.violation < tol();
    c.details = {{"rho", to_json(curv().front().rho)}};
  }

  void einstein_tensor_check(Check& c) {
    bool vacuum = true;
    for (const auto& cd : curv()) {
      EinsteinTensorData e = einstein_tensor(cd, c_, tol());
      vacuum = vacuum && e.vacuum;
      c.violation = std::max(c.violation, abs_max(trace_with(cd.Ginv, e.E) + cd.rho));
    }
    c.pass = c.violation < tol();
    c.details = {{"vacuum", vacuum}, {"constant_c", c_}};
  }

  void divergence(Check& c) {
    for (const auto& p : samples()) c.violation = std::max(c.violation, divergence_einstein(m(), p));
    c.pass = c.violation < tol();
    requires_holomorphy(c);
  }

  void classify(Check& c) {
    EinsteinClassification e = classify_characteristic_einstein(m(), samples(), tol());
    c.violation = e.rho_checked ? e.rho_gradient : 0.0;
    c.pass = !e.rho_checked || e.rho_anti_holomorphic;
    c.details = {{"einstein", e.einstein},
                 {"factor", to_json(e.f.front())},
                 {"mixed_ricci", e.mixed_ricci},
                 {"residual", e.residual},
                 {"rho_checked", e.rho_checked}};
  }

  void extract(Check& c) {
    EinsteinReport e = extract_einstein_constant(m(), samples(), tol());
    c.violation = std::max({e.residual, e.spread, e.mixed});
    c.pass = e.is_einstein;
    c.details = {{"is_einstein", e.is_einstein},     {"is_paraholomorphic", holomorphic()},
                 {"lambda", to_json(e.lambda)},      {"K", e.K},
                 {"K_star", e.K_star},               {"K_hat", to_json(e.K_hat)},
                 {"residual", e.residual},           {"spread", e.spread},
                 {"mixed_ricci", e.mixed}};
  }

  void scalars(Check& c) {
    RealizedMetric rm = realize_metric(m());
    ScalarCurvatures first;
    for (std::size_t i = 0; i < samples().size(); ++i) {
      RealGeometry geo = real_geometry(rm, samples()[i]);
      ScalarCurvatures s = scalar_curvatures(geo.g, geo.ricci, curv()[i]);
      if (i == 0) first = s;
      c.violation = std::max({c.violation, s.hat_relation, s.qi});
    }
    c.pass = c.violation < tol();
    c.details = {{"K", first.K}, {"K_star", first.K_star}, {"K_hat", to_json(first.K_hat)}};
    requires_holomorphy(c);
  }

  void correspondence(Check& c) {
    CorrespondenceReport r = check_theorem_correspondence(m(), samples(), tol());
    c.violation = r.pc_einstein ? std::max(r.split_ricci_residual, r.constants_residual) : 0.0;
    c.pass = r.agree && c.violation < tol();
    c.details = {{"lambda", to_json(r.lambda)},
                 {"paracomplex_einstein", r.pc_einstein},
                 {"real_constant", r.pc_real_constant},
                 {"real_einstein", r.real_einstein},
                 {"agree", r.agree},
                 {"split_ricci_residual", r.split_ricci_residual},
                 {"constants_residual", r.constants_residual}};
    requires_holomorphy(c);
  }

  void twin_check(Check& c) {
    TwinTransfer t = twin_transfer(m(), samples(), tol());
    c.violation = t.violation;
    c.pass = t.violation < tol();
    c.details = {{"lambda", to_json(t.original.lambda)},
                 {"twin_lambda", to_json(t.twin.lambda)},
                 {"twin_is_einstein", t.twin.is_einstein}};
  }

  MetricProblem p_;
  double c_;
  int n_;
  std::optional<bool> holomorphic_;
  std::vector<CurvatureData> curv_;
};

// ---------------------------------------------------------------------------
// Lie group suite.

inline Report run_lie_suite(const LieProblem& p) {
  const LieAlgebraData& L = p.algebra;
  const LambdaFrame& f = p.frame;
  const int m = L.m;
  const double tol = p.tolerance;
  std::span<const EvalPoint> samples = p.samples;
  const EvalPoint identity{std::vector<ParaComplex>(m)};
  Report r;

  Check s{"validate_structure", true, 0.0};
  s.details = {{"dim", m}, {"semisimple", L.semisimple}, {"killing", to_json(L.killing)}};
  r.add(s);

  Check frame{"bch_lambda_series", true, 0.0};
  frame.details = {{"series", p.series_order.has_value()}};
  if (p.series_order) {
    frame.details["order"] = *p.series_order;
    frame.details["sign"] = f.sign;
  }
  r.add(frame);

  McReport mc = mc_check(L, f, samples, tol);
  Check mcc{"mc_check", mc.pass, mc.residual};
  mcc.details = {{"per_point", mc.per_point}};
  r.add(mcc);

  ParaMetric g = invariant_metric(L, f);
  Check inv{"invariant_metric", true, 0.0};
  for (const auto& q : samples) inv.violation = std::max(inv.violation, max_diff(g.at(q).data(), lie_metric_at(L, f, q).data()));
  inv.pass = inv.violation < tol;
  inv.details = {{"g_identity", to_json(lie_metric_at(L, f, identity))}};
  r.add(inv);

  Check con{"lie_connection", true, 0.0};
  for (const auto& q : samples)
    con.violation = std::max(con.violation, max_diff(lie_connection(f, q).data(), lie_connection_first_form(L, f, q).data()));
  con.pass = con.violation < tol;
  r.add(con);

  Check cur{"lie_curvature", true, 0.0};
  LieConnectionField field{f};
  for (const auto& q : samples) {
    Tensor4<ParaComplex> eng = curvature_at(field, q.slots());
    Tensor4<ParaComplex> closed = lie_curvature(L, f, q);
    for (int d = 0; d < m; ++d)
      for (int c = 0; c < m; ++c)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) cur.violation = std::max(cur.violation, abs_max(eng(d, c, a, b) + closed(d, c, a, b)));
  }
  cur.pass = cur.violation < tol;
  r.add(cur);

  LieEinsteinReport at_identity = lie_ricci_and_einstein(L, f, identity);
  Check ein{"lie_ricci_and_einstein", true, at_identity.residual};
  for (const auto& q : samples) ein.violation = std::max(ein.violation, lie_ricci_and_einstein(L, f, q).residual);
  ein.pass = ein.violation < tol;
  ein.details = {{"einstein_constant", to_json(at_identity.einstein_constant)},
                 {"scalar", to_json(at_identity.scalar)},
                 {"ricci", to_json(at_identity.ricci)}};
  r.add(ein);

  Check low{"lie_lowered_and_sectional", true, 0.0};
  for (const auto& q : samples)
    low.violation = std::max(low.violation, max_diff(lie_lowered_curvature(L, f, q).data(), lie_lowered_composed(L, f, q).data()));
  low.pass = low.violation < tol;
  r.add(low);

  Check par{"parallel_curvature_check", true, parallel_curvature_check(L, f, samples)};
  par.pass = par.violation < tol;
  r.add(par);

  RealizedMetric rm = para_kahler_norden_realization(L, f);
  Check real{"para_kahler_norden_realization", true, check_norden(rm, samples)};
  RealGeometry geo = real_geometry(rm, identity);
  const double einstein_real = (geo.ricci + 0.25 * geo.g).cwiseAbs().maxCoeff();
  real.violation = std::max(real.violation, einstein_real);
  real.pass = real.violation < tol;
  real.details = {{"real_einstein_residual", einstein_real}};
  r.add(real);
  return r;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"metric-check", "connection", "curvature", "einstein", "liegroup", "all"};
  return s;
}

inline Json read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("JSON parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

inline void check_override(const std::optional<std::vector<EvalPoint>>& samples, int n) {
  if (!samples) return;
  if (samples->empty()) throw SchemaError("--samples", "expected at least one point");
  for (const auto& p : *samples)
    if (int(p.dimension()) != n) throw SchemaError("--samples", "points must have " + std::to_string(n) + " coordinates");
}

inline Report run_problem(const RunConfig& cfg, const Json& j) {
  const bool lie = is_lie_problem(j);
  if (cfg.subcommand == "liegroup" && !lie) throw SchemaError("$", "liegroup needs \"structure_constants\"");
  if (cfg.subcommand != "liegroup" && cfg.subcommand != "all" && lie)
    throw SchemaError("$", cfg.subcommand + " needs a metric problem with \"dimension\" and \"G\"");
  if (lie) {
    LieProblem p = load_lie_problem(j);
    if (cfg.tolerance) p.tolerance = *cfg.tolerance;
    check_override(cfg.samples, p.algebra.m);
    if (cfg.samples) p.samples = *cfg.samples;
    return run_lie_suite(p);
  }
  MetricProblem p = load_metric_problem(j);
  if (cfg.tolerance) p.tolerance = *cfg.tolerance;
  check_override(cfg.samples, p.metric.n());
  if (cfg.samples) p.samples = *cfg.samples;
  return MetricSuite(std::move(p), cfg.constant_c).run(cfg.subcommand);
}

inline RunResult run(const RunConfig& cfg) {
  RunResult out;
  try {
    if (std::find(subcommands().begin(), subcommands().end(), cfg.subcommand) == subcommands().end())
      throw InputError("unknown subcommand " + cfg.subcommand);
    if (cfg.tolerance && !(*cfg.tolerance > 0.0)) throw InputError("tolerance must be positive");
    if (cfg.format != "json" && cfg.format != "text") throw InputError("format must be json or text");
    out.report = run_problem(cfg, read_problem(cfg.input));
    out.status = out.report->all_pass() ? exit_pass : exit_check_failed;
  } catch (const InputError& e) {
    out.status = exit_input_error;
    out.error = e.what();
  } catch (const DegenerateError& e) {
    out.status = exit_degenerate;
    out.error = e.what();
  } catch (const Error& e) {
    out.status = exit_input_error;
    out.error = e.what();
  }
  return out;
}

inline std::string render(const Report& r, const std::string& format) {
  return format == "text" ? r.text() : r.json().dump(2) + "\n";
}

}  // namespace paraholo
