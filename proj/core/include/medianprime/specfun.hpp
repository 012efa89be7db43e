#pragma once

#include <gmpxx.h>

#include <complex>
#include <functional>

namespace medianprime::specfun {

struct PrincipalValueReal {
  enum class Kind { ordinary, cauchy_pv };
  double value = 0.0;
  Kind kind = Kind::ordinary;
};

/// Exponential integral; Cauchy principal value for v > 0. Throws DomainError at 0.
PrincipalValueReal ei(double v);
/// Plain value of ei(v).
double ei_value(double v);

/// Logarithmic integral li(v) = Ei(log v) for v > 1.
double li(double v);
/// Offset logarithmic integral, integral of dt/log t over [2, v], v >= 2.
double Li(double v);

/// Gamma function for complex arguments away from the poles.
std::complex<double> gamma_complex(std::complex<double> z);
double gamma_real(double x);

/// zeta(j) = ratio * pi^j for even j >= 2; the rational ratio is exact.
mpq_class zeta_even_ratio(int j);
/// Bernoulli number B_n as an exact rational.
mpq_class bernoulli(int n);
/// zeta(j) for even j, 2 <= j <= 40.
double zeta_even(int j);

/// Integral of t^(z-1) e^(-t) over [a, b], 0 < a < b.
std::complex<double> gen_inc_gamma_numeric(std::complex<double> z, double a, double b);
/// Same integral divided by z^(z-1/2) e^(-z), which keeps |z| in the
/// hundreds and thousands representable.
std::complex<double> gen_inc_gamma_numeric_scaled(std::complex<double> z, double a, double b);
/// sqrt(2 pi) z^(z-1/2) e^(-z).
std::complex<double> gen_inc_gamma_saddle(std::complex<double> z);
/// Saddle value divided by z^(z-1/2) e^(-z), i.e. sqrt(2 pi).
inline double gen_inc_gamma_saddle_scaled() { return 2.5066282746310002; }

/// Integral of dt / (t^m log t) over [v, inf): J-term expansion and exact value.
struct ExpansionValue {
  double expansion = 0.0;
  double exact = 0.0;
};
ExpansionValue log_integral_tail(double v, int m, int J);
/// Integral of t^n / log t over [2, v]: J-term expansion and exact value.
ExpansionValue log_integral_head(double v, int n, int J);

}  // namespace medianprime::specfun
