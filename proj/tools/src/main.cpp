#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ellterm/arith.hpp"
#include "ellterm/checks.hpp"
#include "ellterm/elliptic.hpp"
#include "ellterm/gamma_afe.hpp"
#include "ellterm/lfunctions.hpp"
#include "ellterm/parallel.hpp"
#include "ellterm/smoothing.hpp"
#include "ellterm/version.hpp"

using nlohmann::json;
using namespace ellterm;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitTolerance = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

using Table = std::vector<std::vector<std::string>>;

struct OutputOpts {
  std::string format = "json";
  std::string path;
};

void emit(const OutputOpts& opts, const json& doc, const Table& table) {
  std::string text;
  if (opts.format == "csv") {
    for (const auto& row : table) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) text += ',';
        text += csv_field(row[i]);
      }
      text += '\n';
    }
  } else {
    text = doc.dump(2);
    text += '\n';
  }
  if (opts.path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream f(opts.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + opts.path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

// ---- lvalue ----

int run_lvalue(const OutputOpts& out, long long D, double s, const std::string& route,
               long long n_max) {
  lfun::LValue l;
  long long n_used = 0;
  if (route == "direct") {
    lfun::QuadraticCharacter chi(D);
    n_used = n_max > 0 ? n_max : lfun::default_series_length(chi.period());
    l = lfun::l_value_direct(chi, s, n_used);
  } else if (route == "cnf") {
    if (s != 1.0) throw std::invalid_argument("the cnf route evaluates s = 1 only");
    l = lfun::l_value_cnf(lfun::class_data(D));
  } else if (route == "afe") {
    afe::AFEConfig cfg;
    if (n_max > 0) cfg.n_max = n_max;
    auto r = afe::afe_quadratic(D, s, cfg);
    l = {r.value, r.error};
  } else {
    throw std::invalid_argument("unknown route: " + route);
  }

  json doc;
  doc["command"] = "lvalue";
  doc["version"] = kVersion;
  doc["params"] = {{"D", D}, {"s", s}, {"route", route}};
  if (n_used > 0) doc["params"]["n_max"] = n_used;
  doc["value"] = l.value;
  doc["error"] = l.error;
  Table t{{"D", "s", "route", "value", "error"},
          {std::to_string(D), fmt(s), route, fmt(l.value), fmt(l.error)}};
  emit(out, doc, t);
  return 0;
}

// ---- elliptic ----

int run_elliptic(const OutputOpts& out, long long p, int k, long long M,
                 bool include_squares, const std::string& theta_kind, double theta_scale,
                 const std::string& route_name) {
  elliptic::ThetaModel theta = theta_kind == "gaussian"
                                   ? elliptic::gaussian_theta(theta_scale)
                                   : elliptic::bump_theta(theta_scale);
  elliptic::LRoute route;
  if (route_name == "direct") route = elliptic::direct_route();
  else if (route_name == "cnf") route = elliptic::cnf_route();
  else if (route_name == "afe") route = elliptic::afe_route();
  else throw std::invalid_argument("unknown route: " + route_name);

  auto sum = elliptic::elliptic_sum_gl2(p, k, theta, route, M, include_squares);

  json doc;
  doc["command"] = "elliptic";
  doc["version"] = kVersion;
  doc["params"] = {{"p", p},
                   {"k", k},
                   {"M", M},
                   {"include_squares", include_squares},
                   {"theta", {{"kind", theta_kind}, {"scale", theta_scale}}},
                   {"route", route_name}};
  doc["rows"] = json::array();
  Table t{{"m", "sign", "delta", "s_gamma", "field_disc", "theta_x", "theta_w", "padic",
           "volume", "term"}};
  for (const auto& row : sum.rows) {
    doc["rows"].push_back({{"m", row.cls.m},
                           {"sign", row.cls.sign},
                           {"delta", row.cls.delta},
                           {"s_gamma", row.cls.s_gamma()},
                           {"field_disc", row.cls.field_disc()},
                           {"theta_x", row.theta_x},
                           {"theta_w", row.theta_w},
                           {"padic", row.padic.get_str()},
                           {"volume", finite_or_null(row.volume)},
                           {"term", row.term}});
    t.push_back({std::to_string(row.cls.m), std::to_string(row.cls.sign),
                 std::to_string(row.cls.delta), std::to_string(row.cls.s_gamma()),
                 std::to_string(row.cls.field_disc()), fmt(row.theta_x), fmt(row.theta_w),
                 row.padic.get_str(), fmt(row.volume), fmt(row.term)});
  }
  doc["total"] = sum.total;
  doc["error"] = sum.error;
  emit(out, doc, t);
  return 0;
}

// ---- verify ----

struct VerifyOpts {
  double tol = -1;  // negative = per-suite default
  double s = 1.0;
  long long d_limit = 200;
  std::vector<double> X = {0.25, 1.0, 4.0};
  long long d_min = -300;
  long long d_max = 100;
  int moment = 4;
  double t_min = 10, t_max = 100;
  int points = 100;
  std::vector<long long> pset = {2, 3, 5};
  int k_max = 3;
  long long m_max = 30;
  long long p_max = 50;
  int n_max = 6;
  int count = 50;
  unsigned seed = 12345;
  double step = 1e-5;
  int parallel = 1;
};

json base_doc(const std::string& suite) {
  json doc;
  doc["command"] = "verify";
  doc["suite"] = suite;
  doc["version"] = kVersion;
  return doc;
}

int verify_afe(const OutputOpts& out, const VerifyOpts& vo) {
  double tol = vo.tol < 0 ? 1e-6 : vo.tol;
  auto rep = checks::afe_direct_sweep(vo.s, vo.d_limit, vo.X, tol, vo.parallel);
  json doc = base_doc("afe");
  doc["params"] = {{"s", vo.s}, {"d_limit", vo.d_limit}, {"X", vo.X}, {"tol", tol}};
  doc["rows"] = json::array();
  Table t{{"D", "X", "afe", "direct", "diff"}};
  for (const auto& r : rep.rows) {
    doc["rows"].push_back(
        {{"D", r.D}, {"X", r.X}, {"afe", r.afe}, {"direct", r.direct}, {"diff", r.diff}});
    t.push_back({std::to_string(r.D), fmt(r.X), fmt(r.afe), fmt(r.direct), fmt(r.diff)});
  }
  doc["max_diff"] = rep.max_diff;
  doc["argmax_D"] = rep.argmax_D;
  doc["argmax_X"] = rep.argmax_X;
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

int verify_routes(const OutputOpts& out, const VerifyOpts& vo) {
  double tol = vo.tol < 0 ? 1e-5 : vo.tol;
  auto rep = checks::route_closure(vo.d_min, vo.d_max, tol, vo.parallel);
  json doc = base_doc("routes");
  doc["params"] = {{"d_min", vo.d_min}, {"d_max", vo.d_max}, {"tol", tol}};
  doc["rows"] = json::array();
  Table t{{"D", "direct", "cnf", "afe", "max_pair_diff"}};
  for (const auto& r : rep.rows) {
    doc["rows"].push_back({{"D", r.D},
                           {"direct", r.direct},
                           {"cnf", r.cnf},
                           {"afe", r.afe},
                           {"max_pair_diff", r.max_pair_diff}});
    t.push_back({std::to_string(r.D), fmt(r.direct), fmt(r.cnf), fmt(r.afe),
                 fmt(r.max_pair_diff)});
  }
  doc["max_diff"] = rep.max_diff;
  doc["argmax_D"] = rep.argmax_D;
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

int verify_decay(const OutputOpts& out, const VerifyOpts& vo) {
  auto rep = checks::decay_suite(vo.moment);
  json doc = base_doc("decay");
  doc["params"] = {{"m", rep.m}, {"v_tol", rep.v_tol}, {"small_tol", rep.small_tol}};
  doc["shapes"] = json::array();
  Table t{{"shape", "y", "v", "weighted"}};
  for (const auto& sh : rep.shapes) {
    json pts = json::array();
    for (const auto& p : sh.report.points) {
      pts.push_back({{"y", p.y}, {"v", p.v}, {"weighted", p.weighted}});
      t.push_back({sh.shape, fmt(p.y), fmt(p.v), fmt(p.weighted)});
    }
    doc["shapes"].push_back({{"shape", sh.shape},
                             {"sup_weighted", sh.report.sup_weighted},
                             {"argmax_y", sh.report.argmax_y},
                             {"finite", sh.report.finite},
                             {"tail_decreasing", sh.report.tail_decreasing},
                             {"v_at_50", sh.v_at_50},
                             {"small_y_dev", sh.small_y_dev},
                             {"pass", sh.pass},
                             {"points", pts}});
  }
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

int verify_stirling(const OutputOpts& out, const VerifyOpts& vo) {
  auto rep = checks::stirling_sweep({0.5, 1.0, 2.0, 3.0}, vo.t_min, vo.t_max, vo.points);
  json doc = base_doc("stirling");
  doc["params"] = {{"t_min", vo.t_min}, {"t_max", vo.t_max}, {"points_per_sigma", vo.points}};
  doc["rows"] = json::array();
  Table t{{"sigma", "t", "exact", "approx", "rel_err", "bound"}};
  for (const auto& r : rep.rows) {
    doc["rows"].push_back({{"sigma", r.sigma},
                           {"t", r.t},
                           {"exact", r.exact},
                           {"approx", r.approx},
                           {"rel_err", r.rel_err},
                           {"bound", r.bound}});
    t.push_back({fmt(r.sigma), fmt(r.t), fmt(r.exact), fmt(r.approx), fmt(r.rel_err),
                 fmt(r.bound)});
  }
  doc["max_ratio"] = rep.max_ratio;
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

int verify_lfunsum(const OutputOpts& out, const VerifyOpts& vo) {
  double tol = vo.tol < 0 ? 1e-4 : vo.tol;
  auto rep = checks::lfun_sum_sweep(vo.pset, vo.k_max, vo.m_max, tol, vo.parallel);
  json doc = base_doc("lfunsum");
  doc["params"] = {{"p", vo.pset}, {"k_max", vo.k_max}, {"m_max", vo.m_max}, {"tol", tol}};
  doc["rows"] = json::array();
  Table t{{"m", "sign", "p", "k", "delta", "lhs", "rhs", "diff"}};
  for (const auto& r : rep.rows) {
    doc["rows"].push_back({{"m", r.m},
                           {"sign", r.sign},
                           {"p", r.p},
                           {"k", r.k},
                           {"delta", r.delta},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"diff", r.diff}});
    t.push_back({std::to_string(r.m), std::to_string(r.sign), std::to_string(r.p),
                 std::to_string(r.k), std::to_string(r.delta), fmt(r.lhs), fmt(r.rhs),
                 fmt(r.diff)});
  }
  doc["classes"] = rep.rows.size();
  doc["max_diff"] = rep.max_diff;
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

int verify_kottwitz(const OutputOpts& out, const VerifyOpts& vo) {
  auto rep = checks::kottwitz_sweep(vo.p_max, vo.n_max);
  json doc = base_doc("kottwitz");
  doc["params"] = {{"p_max", vo.p_max}, {"n_max", vo.n_max}};
  doc["rows"] = json::array();
  Table t{{"p", "n", "variant", "value", "integral", "positive"}};
  for (const auto& r : rep.rows) {
    doc["rows"].push_back({{"p", r.p},
                           {"n", r.n},
                           {"variant", r.variant},
                           {"value", r.value},
                           {"integral", r.integral},
                           {"positive", r.positive}});
    t.push_back({std::to_string(r.p), std::to_string(r.n), r.variant, r.value,
                 r.integral ? "1" : "0", r.positive ? "1" : "0"});
  }
  doc["spots_ok"] = rep.spots_ok;
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

int verify_split(const OutputOpts& out, const VerifyOpts& vo) {
  double tol = vo.tol < 0 ? 1e-12 : vo.tol;
  auto rep = checks::split_sweep(vo.count, vo.seed, tol);
  json doc = base_doc("split");
  doc["params"] = {{"count", vo.count}, {"seed", vo.seed}, {"tol", tol}};
  doc["rows"] = json::array();
  Table t{{"ell", "f", "p", "k", "sign", "M", "direct", "grouped", "diff", "residues"}};
  for (const auto& r : rep.rows) {
    doc["rows"].push_back({{"ell", r.ell},
                           {"f", r.f},
                           {"p", r.p},
                           {"k", r.k},
                           {"sign", r.sign},
                           {"M", r.M},
                           {"direct", r.direct},
                           {"grouped", r.grouped},
                           {"diff", r.diff},
                           {"residues", r.residues}});
    t.push_back({std::to_string(r.ell), std::to_string(r.f), std::to_string(r.p),
                 std::to_string(r.k), std::to_string(r.sign), std::to_string(r.M),
                 fmt(r.direct), fmt(r.grouped), fmt(r.diff), std::to_string(r.residues)});
  }
  doc["max_diff"] = rep.max_diff;
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

int verify_smooth(const OutputOpts& out, const VerifyOpts& vo) {
  auto rep = checks::smooth_suite(vo.step);
  json doc = base_doc("smooth");
  doc["params"] = {{"step", rep.step},
                   {"tol_positive", rep.tol_positive},
                   {"tol_negative", rep.tol_negative}};
  doc["cases"] = json::array();
  Table t{{"degree", "fixed", "beta", "alpha", "cutoff", "negative_control", "f_at_step",
           "max_first"}};
  for (const auto& c : rep.cases) {
    doc["cases"].push_back({{"degree", c.degree},
                            {"fixed", c.fixed},
                            {"point", c.point},
                            {"beta", c.beta},
                            {"alpha", c.alpha},
                            {"cutoff", c.cutoff},
                            {"margin", finite_or_null(c.margin)},
                            {"negative_control", c.negative_control},
                            {"f_at_step", c.f_at_step},
                            {"max_first", c.max_first},
                            {"pass", c.pass}});
    t.push_back({std::to_string(c.degree), std::to_string(c.fixed), fmt(c.beta),
                 fmt(c.alpha), c.cutoff, c.negative_control ? "1" : "0", fmt(c.f_at_step),
                 fmt(c.max_first)});
  }
  doc["pass"] = rep.pass;
  emit(out, doc, t);
  return rep.pass ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit computations for elliptic-term L-function identities"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  OutputOpts out;
  app.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("-o,--output", out.path, "Write output to a file instead of stdout");

  int parallel = default_parallelism();
  app.add_option("--parallel", parallel, "Worker threads for sweeps (env ELLTERM_PARALLEL)");

  // lvalue
  auto* lv = app.add_subcommand("lvalue", "L(s, chi_D) for a quadratic discriminant");
  long long lv_D = 0;
  double lv_s = 1.0;
  std::string lv_route = "direct";
  long long lv_nmax = 0;
  lv->add_option("-D,--discriminant", lv_D, "Discriminant (0 or 1 mod 4)")->required();
  lv->add_option("-s", lv_s, "Evaluation point")->capture_default_str();
  lv->add_option("--route", lv_route, "Evaluation route")
      ->check(CLI::IsMember({"direct", "cnf", "afe"}))
      ->capture_default_str();
  lv->add_option("--nmax", lv_nmax, "Series length (0 = automatic)");

  // elliptic
  auto* el = app.add_subcommand("elliptic", "Weighted elliptic-class sum for GL(2)");
  long long el_p = 2, el_M = 10;
  int el_k = 1;
  bool el_squares = false;
  std::string el_theta = "bump", el_route = "direct";
  double el_scale = 1.0;
  el->add_option("-p", el_p, "Prime")->required();
  el->add_option("-k", el_k, "Determinant exponent")->capture_default_str();
  el->add_option("-M", el_M, "Trace bound |m| <= M")->capture_default_str();
  el->add_flag("--include-squares", el_squares, "Keep square-delta rows (zero term)");
  el->add_option("--theta", el_theta, "Archimedean weight")
      ->check(CLI::IsMember({"bump", "gaussian"}))
      ->capture_default_str();
  el->add_option("--theta-scale", el_scale, "Weight radius / width")->capture_default_str();
  el->add_option("--route", el_route, "L-value route")
      ->check(CLI::IsMember({"direct", "cnf", "afe"}))
      ->capture_default_str();

  // verify
  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  VerifyOpts vo;
  ve->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(
          {"afe", "routes", "decay", "stirling", "lfunsum", "kottwitz", "split", "smooth"}));
  ve->add_option("--tolerance", vo.tol, "Override the suite tolerance");
  ve->add_option("-s", vo.s, "AFE evaluation point")->capture_default_str();
  ve->add_option("--dlimit", vo.d_limit, "afe: fundamental |D| < dlimit")
      ->capture_default_str();
  ve->add_option("--x", vo.X, "afe: balance parameters")->expected(-1);
  ve->add_option("--dmin", vo.d_min, "routes: D > dmin")->capture_default_str();
  ve->add_option("--dmax", vo.d_max, "routes: D < dmax")->capture_default_str();
  ve->add_option("--moment", vo.moment, "decay: weight exponent")->capture_default_str();
  ve->add_option("--tmin", vo.t_min, "stirling: smallest |t|")->capture_default_str();
  ve->add_option("--tmax", vo.t_max, "stirling: largest |t|")->capture_default_str();
  ve->add_option("--points", vo.points, "stirling: points per sigma")->capture_default_str();
  ve->add_option("--pset", vo.pset, "lfunsum: primes")->expected(-1);
  ve->add_option("--kmax", vo.k_max, "lfunsum: largest k")->capture_default_str();
  ve->add_option("--mmax", vo.m_max, "lfunsum: trace bound")->capture_default_str();
  ve->add_option("--pmax", vo.p_max, "kottwitz: largest prime")->capture_default_str();
  ve->add_option("--nmax", vo.n_max, "kottwitz: largest n")->capture_default_str();
  ve->add_option("--count", vo.count, "split: number of random configurations")
      ->capture_default_str();
  ve->add_option("--seed", vo.seed, "split: RNG seed")->capture_default_str();
  ve->add_option("--step", vo.step, "smooth: finite-difference step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (lv->parsed()) return run_lvalue(out, lv_D, lv_s, lv_route, lv_nmax);
    if (el->parsed())
      return run_elliptic(out, el_p, el_k, el_M, el_squares, el_theta, el_scale, el_route);
    vo.parallel = parallel;
    if (suite == "afe") return verify_afe(out, vo);
    if (suite == "routes") return verify_routes(out, vo);
    if (suite == "decay") return verify_decay(out, vo);
    if (suite == "stirling") return verify_stirling(out, vo);
    if (suite == "lfunsum") return verify_lfunsum(out, vo);
    if (suite == "kottwitz") return verify_kottwitz(out, vo);
    if (suite == "split") return verify_split(out, vo);
    if (suite == "smooth") return verify_smooth(out, vo);
    throw std::invalid_argument("unknown suite: " + suite);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  }
}
