#include "medianprime/report_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "medianprime/errors.hpp"

namespace medianprime::io {

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round15(v);
}

double num_from(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

double round15(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, kDigits - 1);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::string fmt15(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, round15(v));
  return {buf, res.ptr};
}

json to_json(const exact::ExactSumReport& r) {
  json law = json::array();
  for (const auto& [p, c] : r.local_law) law.push_back({p, c});
  return {{"x", num(r.x)},
          {"mode", exact::to_string(r.mode)},
          {"total", num(r.total)},
          {"odd_part", num(r.odd_part)},
          {"even_part", num(r.even_part)},
          {"local_law", law}};
}

exact::ExactSumReport exact_report_from_json(const json& j) {
  exact::ExactSumReport r;
  r.x = num_from(j.at("x"));
  r.mode = exact::parse_mode(j.at("mode").get<std::string>());
  r.total = num_from(j.at("total"));
  r.odd_part = num_from(j.at("odd_part"));
  r.even_part = num_from(j.at("even_part"));
  for (const auto& e : j.at("local_law"))
    r.local_law.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>());
  return r;
}

json to_json(const products::ConstantC& c) {
  return {{"j", c.j},
          {"c_j", num(c.value)},
          {"abs_tail", num(c.abs_tail)},
          {"prime_cutoff", c.prime_cutoff},
          {"half_cutoff_value", num(c.half_cutoff_value)},
          {"half_cutoff_tail", num(c.half_cutoff_tail)},
          {"script_F", num(c.script_F_value)}};
}

products::ConstantC constant_from_json(const json& j) {
  products::ConstantC c;
  c.j = j.at("j").get<int>();
  c.value = num_from(j.at("c_j"));
  c.abs_tail = num_from(j.at("abs_tail"));
  c.prime_cutoff = j.at("prime_cutoff").get<std::uint64_t>();
  c.half_cutoff_value = num_from(j.at("half_cutoff_value"));
  c.half_cutoff_tail = num_from(j.at("half_cutoff_tail"));
  c.script_F_value = num_from(j.at("script_F"));
  return c;
}

json to_json(const series::PolyFamily& f, int j) {
  if (j < 0 || j > f.depth()) throw DomainError("poly index out of range");
  json coeffs = json::array();
  for (int l = 0; l <= j; ++l)
    for (const auto& [mono, q] : f.coeff(j, l).terms())
      coeffs.push_back({{"degX", l}, {"degL", mono.lambda}, {"degP", mono.pi}, {"rational", series::to_string(q)}});
  return {{"family", f.family == series::Family::R ? "R" : "P"}, {"j", j}, {"coefficients", coeffs}};
}

std::vector<std::pair<int, series::SymPoly>> poly_from_json(const json& j) {
  std::vector<std::pair<int, series::SymPoly>> out;
  const int deg = j.at("j").get<int>();
  for (int l = 0; l <= deg; ++l) out.emplace_back(l, series::SymPoly());
  for (const auto& c : j.at("coefficients")) {
    const int l = c.at("degX").get<int>();
    if (l < 0 || l > deg) throw DomainError("poly_from_json: degX out of range");
    out[static_cast<std::size_t>(l)].second += series::SymPoly::monomial(
        series::parse_rational(c.at("rational").get<std::string>()), c.at("degL").get<int>(), c.at("degP").get<int>());
  }
  return out;
}

json to_json(const saddle::SaddleState& s) {
  return {{"x", s.x ? num(*s.x) : json(nullptr)},
          {"xi", num(s.xi)},
          {"rho", num(s.rho)},
          {"nu", num(s.nu)},
          {"mu", num(s.mu)},
          {"psi_at_rho", num(s.psi_at_rho)},
          {"bracket", {num(s.bracket.first), num(s.bracket.second)}},
          {"iterations", s.iterations}};
}

saddle::SaddleState saddle_from_json(const json& j) {
  saddle::SaddleState s;
  if (!j.at("x").is_null()) s.x = j.at("x").get<double>();
  s.xi = num_from(j.at("xi"));
  s.rho = num_from(j.at("rho"));
  s.nu = num_from(j.at("nu"));
  s.mu = num_from(j.at("mu"));
  s.psi_at_rho = num_from(j.at("psi_at_rho"));
  s.bracket = {num_from(j.at("bracket").at(0)), num_from(j.at("bracket").at(1))};
  s.iterations = j.at("iterations").get<int>();
  return s;
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace medianprime::io
