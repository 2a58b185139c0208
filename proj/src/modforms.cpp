#include "k3genus/modforms.hpp"

#include <cmath>

namespace k3genus {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_theta_index(int k) {
  if (k < 1 || k > 4) fail(Errc::invalid_input, "theta index must lie in {1,2,3,4}");
}

}  // namespace

PuiseuxSeries eta_series(const Rational& order) {
  if (!(order > 0)) fail(Errc::invalid_input, "eta_series needs order > 0");
  PuiseuxSeries acc = PuiseuxSeries::constant(1, order);
  // The factor (1 - q^n) only touches exponents >= n.
  long long n_max = to_long(ceil_rational(order));
  for (long long n = 1; n <= n_max; ++n) {
    PuiseuxSeries factor = PuiseuxSeries::constant(1, order);
    factor.add_term_units(-1, 24 * n, 0);
    acc = acc * factor;
  }
  return acc.shifted(Rational(1, 24), 0);
}

PuiseuxSeries theta_series(int k, const Rational& order) {
  check_theta_index(k);
  if (!(order > 0)) fail(Errc::invalid_input, "theta_series needs order > 0");
  PuiseuxSeries s(order);
  const long long trunc = s.truncation_units();
  const bool half = (k == 1 || k == 2);
  const bool alternating = (k == 1 || k == 4);
  for (long long n = 0;; ++n) {
    // n and its mirror; for half-characteristics the mirror of n is -n-1.
    long long q24 = half ? 3 * (2 * n + 1) * (2 * n + 1) : 12 * n * n;
    if (q24 >= trunc) break;
    Rational sign = alternating && (n % 2 != 0) ? -1 : 1;
    if (half) {
      s.add_term_units(sign, q24, 2 * n + 1);
      // mirror m = -n-1: (-1)^m = -(-1)^n for odd k-alternation
      s.add_term_units(alternating ? -sign : sign, q24, -(2 * n + 1));
    } else if (n == 0) {
      s.add_term_units(1, 0, 0);
    } else {
      s.add_term_units(sign, q24, 2 * n);
      s.add_term_units(sign, q24, -2 * n);
    }
  }
  return s;
}

std::complex<double> eta_eval(std::complex<double> tau) {
  if (!(tau.imag() > 0)) fail(Errc::invalid_input, "eta_eval requires Im(tau) > 0");
  const std::complex<double> i2pi(0.0, kTwoPi);
  std::complex<double> q = std::exp(i2pi * tau);
  std::complex<double> prod = 1.0;
  std::complex<double> qn = 1.0;
  double mag = std::abs(q);
  double tail = mag;
  for (int n = 1; n < 4096 && tail > 1e-19; ++n) {
    qn *= q;
    prod *= (1.0 - qn);
    tail *= mag;
  }
  return std::exp(i2pi * tau / 24.0) * prod;
}

std::complex<double> theta_eval(int k, const ComplexPoint& p, int terms) {
  check_theta_index(k);
  if (terms < 1) fail(Errc::invalid_input, "theta_eval needs terms >= 1");
  const std::complex<double> i2pi(0.0, kTwoPi);
  const bool half = (k == 1 || k == 2);
  const bool alternating = (k == 1 || k == 4);
  std::complex<double> sum = 0.0;
  for (long long n = -terms; n <= terms; ++n) {
    double m = half ? n + 0.5 : n;
    double sign = alternating && ((n % 2 + 2) % 2 == 1) ? -1.0 : 1.0;
    sum += sign * std::exp(i2pi * (p.tau * (m * m / 2.0) + p.z * m));
  }
  if (k == 1) sum *= theta1_prefactor();
  return sum;
}

JacobiCheckReport jacobi_transform_check(
    const std::function<std::complex<double>(const ComplexPoint&)>& f,
    const JacobiFormSpec& spec, const std::vector<ComplexPoint>& samples, double tol) {
  if (samples.empty()) fail(Errc::invalid_input, "jacobi_transform_check needs samples");
  if (!(tol > 0)) fail(Errc::invalid_input, "jacobi_transform_check needs tol > 0");
  if (spec.index < 0) fail(Errc::invalid_input, "Jacobi form index must be >= 0");

  const std::complex<double> i2pi(0.0, kTwoPi);
  const double t = to_double(spec.index);
  JacobiCheckReport report;

  auto record = [&](const std::string& name, const ComplexPoint& p,
                    std::complex<double> lhs, std::complex<double> rhs) {
    double dev = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol) report.failures.push_back({name, p, dev});
  };

  for (const ComplexPoint& p : samples) {
    std::complex<double> base = f(p);

    record("tau -> tau+1", p, f(ComplexPoint(p.tau + 1.0, p.z)), base);

    std::complex<double> inv_tau = -1.0 / p.tau;
    std::complex<double> s_factor =
        std::pow(p.tau, spec.weight) * std::exp(i2pi * t * p.z * p.z / p.tau);
    record("tau -> -1/tau", p, f(ComplexPoint(inv_tau, p.z / p.tau)), s_factor * base);

    for (int a = 0; a <= 1; ++a) {
      for (int b = 0; b <= 1; ++b) {
        if (a == 0 && b == 0) continue;
        std::complex<double> shift = p.z + double(a) * p.tau + double(b);
        std::complex<double> factor =
            std::exp(-i2pi * t * (double(a * a) * p.tau + 2.0 * double(a) * p.z));
        record("z -> z + " + std::to_string(a) + "tau + " + std::to_string(b), p,
               f(ComplexPoint(p.tau, shift)), factor * base);
      }
    }
  }
  return report;
}

}  // namespace k3genus
