#include "sbal/json_io.hpp"

#include <sstream>

namespace sbal {

namespace {

Json complex_matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Complex& v : row) r.push_back({{"re", v.real()}, {"im", v.imag()}});
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

Json to_json(const Multivector& m) {
  Json terms = Json::array();
  for (const auto& [mask, c] : m.terms())
    terms.push_back({{"mask", mask}, {"re", c.real()}, {"im", c.imag()}});
  return Json{{"n_pairs", m.context().n_pairs}, {"terms", terms}};
}

Multivector multivector_from_json(const Json& j, double zero_tolerance) {
  if (!j.contains("n_pairs") || !j.contains("terms"))
    throw err::invalid_argument("multivector json: need n_pairs and terms");
  AlgebraContext ctx{j.at("n_pairs").get<int>(), zero_tolerance};
  Multivector m(ctx);
  for (const auto& t : j.at("terms"))
    m.add_term(t.at("mask").get<std::uint64_t>(),
               Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  return m;
}

Json to_json(const SuperMatrix& g) {
  Json rows = Json::array();
  for (int r = 0; r < g.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < g.dim(); ++c) row.push_back(to_json(g.at(r, c)));
    rows.push_back(row);
  }
  return Json{{"p", g.p()}, {"q", g.q()}, {"entries", rows}};
}

SuperMatrix supermatrix_from_json(const Json& j, double zero_tolerance) {
  const int p = j.at("p").get<int>();
  const int q = j.at("q").get<int>();
  const auto& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != p + q)
    throw err::dimension_mismatch("supermatrix json: row count");
  Multivector first = multivector_from_json(rows.at(0).at(0), zero_tolerance);
  SuperMatrix g(first.context(), p, q);
  for (int r = 0; r < p + q; ++r) {
    const auto& row = rows.at(static_cast<std::size_t>(r));
    if (static_cast<int>(row.size()) != p + q)
      throw err::dimension_mismatch("supermatrix json: column count");
    for (int c = 0; c < p + q; ++c)
      g.set(r, c, multivector_from_json(row.at(static_cast<std::size_t>(c)), zero_tolerance));
  }
  return g;
}

Json to_json(const ProjectivePoint& pt) {
  Json even = Json::array(), odd = Json::array();
  for (const auto& z : pt.even_coords()) even.push_back(to_json(z));
  for (const auto& t : pt.odd_coords()) odd.push_back(to_json(t));
  return Json{{"p", pt.p()}, {"q", pt.q()}, {"even", even}, {"odd", odd}};
}

ProjectivePoint point_from_json(const Json& j, double zero_tolerance) {
  std::vector<Multivector> even, odd;
  for (const auto& z : j.at("even"))
    even.push_back(multivector_from_json(z, zero_tolerance));
  for (const auto& t : j.at("odd"))
    odd.push_back(multivector_from_json(t, zero_tolerance));
  if (even.empty()) throw err::invalid_argument("point json: empty even list");
  AlgebraContext ctx = even.front().context();
  return ProjectivePoint(ctx, std::move(even), std::move(odd));
}

Json to_json(const PointEmbedding& e) {
  Json theta = Json::array();
  for (const auto& t : e.Theta) theta.push_back(to_json(t));
  return Json{{"n", e.n()},
              {"X", Json::array({to_json(e.X0), to_json(e.X1)})},
              {"Theta", theta}};
}

PointEmbedding embedding_from_json(const Json& j, double zero_tolerance) {
  const int n = j.at("n").get<int>();
  AlgebraContext ctx{n, zero_tolerance};
  const auto& xs = j.at("X");
  if (xs.size() != 2) throw err::dimension_mismatch("embedding json: X size");
  PointEmbedding e{ctx, multivector_from_json(xs.at(0), zero_tolerance),
                   multivector_from_json(xs.at(1), zero_tolerance), {}};
  for (const auto& t : j.at("Theta"))
    e.Theta.push_back(multivector_from_json(t, zero_tolerance));
  e.validate();
  return e;
}

Json to_json(const QuadratureSpec& s) {
  return Json{{"radial", s.radial}, {"angular", s.angular}, {"tol", s.tol}};
}

QuadratureSpec spec_from_json(const Json& j) {
  QuadratureSpec s;
  if (j.contains("radial")) s.radial = j.at("radial").get<int>();
  if (j.contains("angular")) s.angular = j.at("angular").get<int>();
  if (j.contains("tol")) s.tol = j.at("tol").get<double>();
  s.validate();
  return s;
}

Json to_json(const SectionScaling& s) {
  return Json{{"m", s.m},
              {"even_monomial", s.even_monomial},
              {"even_top", s.even_top},
              {"odd", s.odd}};
}

SectionScaling scaling_from_json(const Json& j) {
  SectionScaling s;
  s.m = j.at("m").get<int>();
  s.even_monomial = j.at("even_monomial").get<std::vector<double>>();
  s.even_top = j.at("even_top").get<std::vector<double>>();
  s.odd = j.at("odd").get<std::vector<double>>();
  s.validate();
  return s;
}

Json to_json(const BalanceReport& r) {
  Json j{{"even_block", complex_matrix_json(r.even_block)},
         {"odd_block", complex_matrix_json(r.odd_block)},
         {"mixed_max", r.mixed_max},
         {"lambda", r.lambda},
         {"eta", r.eta},
         {"fit_imag", r.fit_imag},
         {"residual_even", r.residual_even},
         {"residual_odd", r.residual_odd},
         {"hermiticity_residual", r.hermiticity_residual},
         {"p_equals_q", r.p_equals_q}};
  if (r.p_equals_q) j["lambda_plus_eta"] = r.lambda_plus_eta;
  return j;
}

Json convention_constants(int n_pairs) {
  std::ostringstream order;
  for (int i = 1; i <= n_pairs; ++i) {
    if (i > 1) order << " ";
    order << "eta" << i << " etabar" << i;
  }
  return Json{{"berezin_order", order.str()},
              {"epsilon_12", kEpsilon12},
              {"cy_contraction", kCyContraction},
              {"plane_measure", "lebesgue_dA"}};
}

}  // namespace sbal
