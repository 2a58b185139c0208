#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "k3genus/puiseux.hpp"

namespace k3genus {

// Series conventions (fixed here once and validated by the spectral-flow
// identities in the test suite):
//   theta_3 = sum_n q^(n^2/2) y^n
//   theta_4 = sum_n (-1)^n q^(n^2/2) y^n
//   theta_2 = sum_n q^((n+1/2)^2/2) y^(n+1/2)
//   theta_1 = -i * sum_n (-1)^n q^((n+1/2)^2/2) y^(n+1/2)
//
// theta_series(1) returns the rational sum without the global -i, so that
// coefficients stay rational; the prefactor is exposed separately. Wherever
// theta_1 enters a partition function it appears as |theta_1|^2 or an even
// power, so the prefactor pairs away and never touches series arithmetic.
// theta_eval(1, ...) does include the -i.

PuiseuxSeries eta_series(const Rational& order);  // q^(1/24) prod (1 - q^n)
PuiseuxSeries theta_series(int k, const Rational& order);

inline std::complex<double> theta1_prefactor() { return {0.0, -1.0}; }

std::complex<double> eta_eval(std::complex<double> tau);
std::complex<double> theta_eval(int k, const ComplexPoint& p, int terms);

struct JacobiFormSpec {
  int weight = 0;
  Rational index;  // >= 0; half-integers allowed
};

struct JacobiCheckEntry {
  std::string transformation;
  ComplexPoint sample;
  double deviation;
};

struct JacobiCheckReport {
  double max_deviation = 0.0;
  std::vector<JacobiCheckEntry> failures;  // entries whose deviation exceeded tol
  bool passed() const { return failures.empty(); }
};

/**
 * Verifies the weak-Jacobi-form transformation law of Eichler-Zagier type at
 * the given samples:
 *   f(tau+1, z) = f(tau, z)
 *   f(-1/tau, z/tau) = tau^w e^(2 pi i t z^2 / tau) f(tau, z)
 *   f(tau, z + a*tau + b) = e^(-2 pi i t (a^2 tau + 2 a z)) f(tau, z)
 * for (a, b) in {0,1}^2, weight w and index t. Deviations are measured as
 * |lhs - rhs| / max(1, |rhs|).
 */
JacobiCheckReport jacobi_transform_check(
    const std::function<std::complex<double>(const ComplexPoint&)>& f,
    const JacobiFormSpec& spec, const std::vector<ComplexPoint>& samples, double tol);

}  // namespace k3genus
