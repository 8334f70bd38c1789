// sbal: JSON-in / JSON-out command line front end for the Grassmann algebra,
// superprojective geometry and balancing modules.

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sbal/json_io.hpp"
#include "sbal/selftest.hpp"

namespace {

using sbal::Complex;
using sbal::Json;

struct CommonOpts {
  std::string input;
  std::string output;
  std::string weight = "none";
  int m = 2;
  int radial = 64;
  int angular = 64;
  double tol = 1e-8;
};

void add_io(CLI::App* cmd, CommonOpts& o, bool needs_input) {
  auto* in = cmd->add_option("-i,--input", o.input, "input JSON path");
  if (needs_input) in->required();
  cmd->add_option("-o,--output", o.output, "output path (default stdout)");
}

void add_spec(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--radial", o.radial, "radial node count");
  cmd->add_option("--angular", o.angular, "angular node count");
  cmd->add_option("--tol", o.tol, "quadrature tolerance");
}

Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sbal::Error("io", "cannot open input: " + path);
  Json j;
  in >> j;
  return j;
}

void emit(const CommonOpts& o, Json result) {
  if (o.output.empty()) {
    std::cout << result.dump(2) << "\n";
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw sbal::Error("io", "cannot open output: " + o.output);
  out << result.dump(2) << "\n";
}

Json config_echo(const std::string& command, const CommonOpts& o) {
  return Json{{"command", command}, {"input", o.input},
              {"weight", o.weight}, {"m", o.m},
              {"radial", o.radial}, {"angular", o.angular},
              {"tol", o.tol}};
}

sbal::QuadratureSpec make_spec(const CommonOpts& o) {
  sbal::QuadratureSpec s;
  s.radial = o.radial;
  s.angular = o.angular;
  s.tol = o.tol;
  return s;
}

sbal::PointWeight parse_weight(const std::string& w) {
  if (w == "none") return sbal::PointWeight::none;
  if (w == "exp") return sbal::PointWeight::exp;
  throw sbal::Error("usage", "--weight must be none or exp");
}

Json run_mul(const CommonOpts& o) {
  const Json in = load(o.input);
  const auto a = sbal::multivector_from_json(in.at("a"));
  const auto b = sbal::multivector_from_json(in.at("b"));
  return Json{{"result", sbal::to_json(a * b)}};
}

Json run_berezinian(const CommonOpts& o) {
  const Json in = load(o.input);
  const auto g = sbal::supermatrix_from_json(in.contains("entries") ? in
                                                                    : in.at("matrix"));
  const sbal::Multivector ber = sbal::berezinian(g).mv();
  return Json{{"result", sbal::to_json(ber)},
              {"body_re", ber.body().real()},
              {"body_im", ber.body().imag()}};
}

Json run_unitary_check(const CommonOpts& o) {
  const Json in = load(o.input);
  const auto g = sbal::supermatrix_from_json(in.contains("entries") ? in
                                                                    : in.at("matrix"));
  const auto rep = sbal::is_unitary(g);
  return Json{{"residual", rep.residual}, {"unitary", rep.unitary}};
}

Json run_chart(const CommonOpts& o) {
  const Json in = load(o.input);
  const auto pt = sbal::point_from_json(in.at("point"));
  sbal::AffineChartPoint chart = sbal::normalize(pt, in.at("chart").get<int>());
  if (in.contains("to_chart"))
    chart = sbal::change_chart(chart, in.at("to_chart").get<int>());
  Json xi = Json::array(), theta = Json::array();
  for (const auto& x : chart.xi) xi.push_back(sbal::to_json(x));
  for (const auto& t : chart.theta) theta.push_back(sbal::to_json(t));
  return Json{{"chart", chart.chart}, {"xi", xi}, {"theta", theta}};
}

Json run_norm(const CommonOpts& o) {
  const Json in = load(o.input);
  const auto pt = sbal::point_from_json(in.contains("even") ? in : in.at("point"));
  const sbal::Multivector n = sbal::super_norm(pt).mv();
  return Json{{"norm", sbal::to_json(n)},
              {"body_re", n.body().real()},
              {"body_im", n.body().imag()}};
}

Json run_veronese(const CommonOpts& o) {
  const Json in = load(o.input);
  const auto pt = sbal::point_from_json(in.contains("even") ? in : in.at("point"));
  return Json{{"image", sbal::to_json(sbal::veronese_map(o.m, pt))}};
}

Json run_integrate(const CommonOpts& o) {
  const sbal::QuadratureSpec spec = make_spec(o);
  if (o.input.empty()) {
    // calibration table: closed-form radial integrals and the angular rule
    struct Entry {
      const char* name;
      std::function<Complex(Complex)> f;
      double expected;
    };
    const double pi = std::numbers::pi;
    const std::vector<Entry> table{
        {"dA/(1+t)^2",
         [](Complex z) { return Complex(1.0) / std::pow(1.0 + std::norm(z), 2); },
         pi},
        {"t dA/(1+t)^3",
         [](Complex z) {
           return Complex(std::norm(z)) / std::pow(1.0 + std::norm(z), 3);
         },
         pi / 2},
        {"dA/(1+t)^4",
         [](Complex z) { return Complex(1.0) / std::pow(1.0 + std::norm(z), 4); },
         pi / 3},
        {"t^2 dA/(1+t)^4",
         [](Complex z) {
           const double t = std::norm(z);
           return Complex(t * t) / std::pow(1.0 + t, 4);
         },
         pi / 3},
        {"t dA/(1+t)^4",
         [](Complex z) {
           return Complex(std::norm(z)) / std::pow(1.0 + std::norm(z), 4);
         },
         pi / 6},
        {"z dA/(1+t)^3",
         [](Complex z) { return z / std::pow(1.0 + std::norm(z), 3); }, 0.0}};
    Json rows = Json::array();
    for (const auto& e : table) {
      const auto r = sbal::plane_quadrature(e.f, spec);
      rows.push_back({{"integrand", e.name},
                      {"value_re", r.value.real()},
                      {"value_im", r.value.imag()},
                      {"expected", e.expected},
                      {"abs_error", std::abs(r.value - Complex(e.expected))},
                      {"radial_used", r.radial_used},
                      {"angular_used", r.angular_used}});
    }
    return Json{{"calibration", rows}};
  }
  const Json in = load(o.input);
  const int a = in.at("numerator_z_power").get<int>();
  const int b = in.at("numerator_zbar_power").get<int>();
  const auto coeffs = in.at("denominator_t_coeffs").get<std::vector<double>>();
  const int power = in.value("denominator_power", 1);
  const bool zsq = in.value("weight", std::string("plain")) == "z_squared";
  auto f = [&](Complex z) -> Complex {
    const double t = std::norm(z);
    double den = 0.0, tp = 1.0;
    for (double c : coeffs) {
      den += c * tp;
      tp *= t;
    }
    Complex num = std::pow(z, a) * std::pow(std::conj(z), b);
    if (zsq) num *= t;
    return num / std::pow(den, power);
  };
  const auto r = sbal::plane_quadrature(f, spec);
  return Json{{"value_re", r.value.real()},
              {"value_im", r.value.imag()},
              {"error_estimate", r.error_estimate},
              {"radial_used", r.radial_used},
              {"angular_used", r.angular_used}};
}

Json run_balance_point(const CommonOpts& o) {
  const Json in = load(o.input);
  std::vector<sbal::PointEmbedding> es;
  for (const auto& e : in.at("embeddings"))
    es.push_back(sbal::embedding_from_json(e));
  const auto report = sbal::balance_residual_points(es, parse_weight(o.weight));
  return Json{{"report", sbal::to_json(report)}};
}

Json run_balance_point_solve(const CommonOpts& o, const std::string& sigma_arg) {
  std::array<std::array<Complex, 2>, 2> sigma{
      {{Complex(1.0, 0.0), Complex(0.0, 0.0)},
       {Complex(0.0, 0.0), Complex(1.0, 0.0)}}};
  if (sigma_arg != "identity") {
    const Json in = load(sigma_arg);
    const Json& s = in.contains("sigma") ? in.at("sigma") : in;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Json& c = s.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
        sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            Complex(c.at("re").get<double>(), c.at("im").get<double>());
      }
  }
  const sbal::SolvedPoint s = sbal::solve_point_balance(sigma);
  return Json{{"alpha_tilde_0", s.alpha_tilde_0},
              {"alpha_tilde_1", s.alpha_tilde_1},
              {"lambda", s.lambda},
              {"residual", std::max(s.report.residual_even, s.report.residual_odd)},
              {"report", sbal::to_json(s.report)},
              {"embedding", sbal::to_json(s.embedding)}};
}

Json run_balance_cy(const CommonOpts& o, bool solve) {
  const sbal::QuadratureSpec spec = make_spec(o);
  sbal::SectionScaling scaling = sbal::SectionScaling::unit(o.m);
  if (!o.input.empty()) {
    const Json in = load(o.input);
    if (in.contains("scalings")) scaling = sbal::scaling_from_json(in.at("scalings"));
  }
  if (!solve) {
    const auto report = sbal::mv_blocks_cy(o.m, scaling, spec);
    return Json{{"scalings", sbal::to_json(scaling)},
                {"report", sbal::to_json(report)}};
  }
  const auto result = sbal::solve_cy_balance(o.m, spec, scaling, 1e-6, 500);
  return Json{{"scalings", sbal::to_json(result.scaling)},
              {"report", sbal::to_json(result.report)},
              {"converged", result.converged},
              {"iterations", result.iterations},
              {"residual_history", result.residual_history}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Grassmann algebra, superprojective geometry and "
               "balanced-embedding computations"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string sigma_arg = "identity";
  bool cy_solve = false;

  auto* mul = app.add_subcommand("mul", "Grassmann product of two multivectors");
  add_io(mul, o, true);
  auto* ber = app.add_subcommand("berezinian", "Berezinian of a supermatrix");
  add_io(ber, o, true);
  auto* uni = app.add_subcommand("unitary-check", "dagger(g) g = 1 residual");
  add_io(uni, o, true);
  auto* chart = app.add_subcommand("chart", "normalize a point into a chart");
  add_io(chart, o, true);
  auto* norm = app.add_subcommand("norm", "super-norm of a point");
  add_io(norm, o, true);
  auto* ver = app.add_subcommand("veronese", "degree-m section embedding of a point");
  add_io(ver, o, true);
  ver->add_option("--m", o.m, "section degree");
  auto* integ = app.add_subcommand("integrate", "plane quadrature (calibration table without -i)");
  add_io(integ, o, false);
  add_spec(integ, o);
  auto* bp = app.add_subcommand("balance-point", "moment blocks and residuals for point embeddings");
  add_io(bp, o, true);
  bp->add_option("--weight", o.weight, "none|exp");
  auto* bps = app.add_subcommand("balance-point-solve", "balanced single-point embedding for a given sigma");
  add_io(bps, o, false);
  bps->add_option("--sigma", sigma_arg, "identity or JSON path");
  auto* bcy = app.add_subcommand("balance-cy", "section-embedding moment blocks on P^{1|2}");
  add_io(bcy, o, false);
  bcy->add_option("--m", o.m, "section degree");
  bcy->add_flag("--solve", cy_solve, "run the scaling fixed-point iteration");
  add_spec(bcy, o);
  auto* st = app.add_subcommand("selftest", "run the invariant suite");
  add_io(st, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    Json result;
    std::string name;
    if (mul->parsed()) name = "mul", result = run_mul(o);
    else if (ber->parsed()) name = "berezinian", result = run_berezinian(o);
    else if (uni->parsed()) name = "unitary-check", result = run_unitary_check(o);
    else if (chart->parsed()) name = "chart", result = run_chart(o);
    else if (norm->parsed()) name = "norm", result = run_norm(o);
    else if (ver->parsed()) name = "veronese", result = run_veronese(o);
    else if (integ->parsed()) name = "integrate", result = run_integrate(o);
    else if (bp->parsed()) name = "balance-point", result = run_balance_point(o);
    else if (bps->parsed()) name = "balance-point-solve", result = run_balance_point_solve(o, sigma_arg);
    else if (bcy->parsed()) name = "balance-cy", result = run_balance_cy(o, cy_solve);
    else if (st->parsed()) {
      std::ostringstream log;
      const int failures = sbal::run_selftest(log);
      std::cout << log.str();
      std::cout << (failures == 0 ? "selftest: all checks passed\n"
                                  : "selftest: FAILURES\n");
      return failures == 0 ? 0 : 1;
    }
    result["config"] = config_echo(name, o);
    result["conventions"] = sbal::convention_constants();
    emit(o, result);
    return 0;
  } catch (const sbal::Error& e) {
    Json err{{"error", e.code()}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const Json::exception& e) {
    Json err{{"error", "bad_input"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err{{"error", "internal"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}
