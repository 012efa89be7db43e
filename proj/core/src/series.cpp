#include "medianprime/series.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "medianprime/errors.hpp"

namespace medianprime::series {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw DomainError("not a rational: " + text);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

// ---- SymPoly --------------------------------------------------------------

SymPoly::SymPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{0, 0}, c);
}

SymPoly::SymPoly(long c) : SymPoly(Rational(c)) {}

SymPoly SymPoly::monomial(const Rational& c, int lambda_deg, int pi_deg) {
  SymPoly p;
  p.add_term({lambda_deg, pi_deg}, c);
  return p;
}

bool SymPoly::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

Rational SymPoly::coeff(int lambda_deg, int pi_deg) const {
  auto it = terms_.find({lambda_deg, pi_deg});
  return it == terms_.end() ? Rational(0) : it->second;
}

void SymPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SymPoly& SymPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

void SymPoly::add_product(const SymPoly& a, const SymPoly& b) {
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) add_term({ma.lambda + mb.lambda, ma.pi + mb.pi}, ca * cb);
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly r;
  r.add_product(a, b);
  return r;
}

double SymPoly::evaluate(double lambda_value, double pi_sq_value) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_)
    s += c.get_d() * std::pow(lambda_value, m.lambda) * std::pow(pi_sq_value, m.pi);
  return s;
}

double SymPoly::value() const {
  return evaluate(std::numbers::ln2, std::numbers::pi * std::numbers::pi);
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    Rational a = abs(c);
    if (a != 1 || (m.lambda == 0 && m.pi == 0)) factors.push_back(a.get_str());
    if (m.lambda == 1) factors.emplace_back("L");
    if (m.lambda > 1) factors.push_back("L^" + std::to_string(m.lambda));
    if (m.pi == 1) factors.emplace_back("P");
    if (m.pi > 1) factors.push_back("P^" + std::to_string(m.pi));
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

// ---- BiSeries -------------------------------------------------------------

namespace {
const SymPoly kZero;
}

BiSeries::BiSeries(Truncation t)
    : trunc_(t),
      coeffs_(static_cast<std::size_t>(t.sigma_order + 1) * static_cast<std::size_t>(t.tau_order + 1)) {
  if (t.sigma_order < 0 || t.tau_order < 0 || t.total_order < 0)
    throw SeriesError("negative truncation order");
}

BiSeries BiSeries::constant(Truncation t, const SymPoly& c) {
  BiSeries s(t);
  s.set(0, 0, c);
  return s;
}

BiSeries BiSeries::sigma(Truncation t) {
  BiSeries s(t);
  s.set(1, 0, SymPoly(1));
  return s;
}

BiSeries BiSeries::tau(Truncation t) {
  BiSeries s(t);
  s.set(0, 1, SymPoly(1));
  return s;
}

const SymPoly& BiSeries::at(int m, int n) const {
  if (!trunc_.keeps(m, n)) return kZero;
  return coeffs_[index(m, n)];
}

void BiSeries::set(int m, int n, SymPoly c) {
  if (!trunc_.keeps(m, n)) return;
  coeffs_[index(m, n)] = std::move(c);
}

bool BiSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

void BiSeries::require_same(const BiSeries& o) const {
  if (!(trunc_ == o.trunc_)) throw SeriesError("mismatched truncations");
}

BiSeries& BiSeries::operator+=(const BiSeries& o) {
  require_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& o) {
  require_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

BiSeries& BiSeries::operator*=(const SymPoly& c) {
  for (auto& v : coeffs_)
    if (!v.is_zero()) v = v * c;
  return *this;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  a.require_same(b);
  const Truncation& t = a.trunc_;
  BiSeries r(t);
  for (int m1 = 0; m1 <= t.sigma_order; ++m1) {
    for (int n1 = 0; n1 <= t.tau_order && m1 + n1 <= t.total_order; ++n1) {
      const SymPoly& ca = a.coeffs_[a.index(m1, n1)];
      if (ca.is_zero()) continue;
      for (int m2 = 0; m1 + m2 <= t.sigma_order; ++m2) {
        for (int n2 = 0; n1 + n2 <= t.tau_order && m1 + m2 + n1 + n2 <= t.total_order; ++n2) {
          const SymPoly& cb = b.coeffs_[b.index(m2, n2)];
          if (cb.is_zero()) continue;
          r.coeffs_[r.index(m1 + m2, n1 + n2)].add_product(ca, cb);
        }
      }
    }
  }
  return r;
}

// ---- transcendental operations ---------------------------------------------

namespace {

void require_nilpotent(const BiSeries& s, const char* what) {
  if (!s.constant_term().is_zero())
    throw SeriesError(std::string(what) + ": constant term must vanish");
}

}  // namespace

BiSeries power(const BiSeries& s, int k) {
  if (k < 0) throw SeriesError("power: negative exponent, use pow_neg");
  BiSeries result = BiSeries::constant(s.truncation(), SymPoly(1));
  BiSeries base = s;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

BiSeries compose(const std::vector<SymPoly>& g, const BiSeries& s) {
  require_nilpotent(s, "compose");
  const Truncation& t = s.truncation();
  BiSeries result(t);
  if (g.empty()) return result;
  // Horner in s; s^k vanishes once k exceeds the total order.
  const int top = std::min<int>(static_cast<int>(g.size()) - 1, t.total_order);
  for (int k = top; k >= 0; --k) {
    result = result * s;
    result += BiSeries::constant(t, g[static_cast<std::size_t>(k)]);
  }
  return result;
}

BiSeries pow1p(const BiSeries& s, const Rational& a) {
  const int top = s.truncation().total_order;
  std::vector<SymPoly> g;
  g.reserve(static_cast<std::size_t>(top) + 1);
  Rational binom = 1;
  for (int k = 0; k <= top; ++k) {
    g.emplace_back(binom);
    binom *= (a - k);
    binom /= (k + 1);
  }
  return compose(g, s);
}

BiSeries inverse(const BiSeries& s) {
  const SymPoly& c0 = s.constant_term();
  if (c0.is_zero() || !c0.is_rational())
    throw SeriesError("inverse: constant term must be a nonzero rational");
  const Rational c = c0.coeff(0, 0);
  const Rational inv_c = 1 / c;
  BiSeries t = s * SymPoly(inv_c);
  t -= BiSeries::constant(s.truncation(), SymPoly(1));
  BiSeries r = pow1p(t, Rational(-1));
  return r * SymPoly(inv_c);
}

BiSeries pow_neg(const BiSeries& u, int k) {
  if (k < 1) throw SeriesError("pow_neg: exponent must be >= 1");
  return power(inverse(u), k);
}

BiSeries log1p(const BiSeries& s) {
  const int top = s.truncation().total_order;
  std::vector<SymPoly> g(static_cast<std::size_t>(top) + 1);
  for (int k = 1; k <= top; ++k) g[static_cast<std::size_t>(k)] = SymPoly(Rational(k % 2 ? 1 : -1, k));
  return compose(g, s);
}

BiSeries exp(const BiSeries& s) {
  const int top = s.truncation().total_order;
  std::vector<SymPoly> g;
  Rational f = 1;
  for (int k = 0; k <= top; ++k) {
    if (k > 0) f /= k;
    g.emplace_back(f);
  }
  return compose(g, s);
}

}  // namespace medianprime::series
