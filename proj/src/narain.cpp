#include "k3genus/narain.hpp"

#include "k3genus/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace k3genus {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

// Largest integer m with m + s <= sqrt(r), for r >= 0. Exact: the double
// estimate is corrected by rational comparisons, with a certified binary
// search as fallback.
long long floor_sqrt_shift(const Rational& r, const Rational& s) {
  auto pred = [&](const Integer& m) {
    Rational v = Rational(m) + s;
    return v <= 0 || v * v <= r;
  };
  long long est =
      static_cast<long long>(std::floor(std::sqrt(std::max(0.0, to_double(r))) - to_double(s)));
  Integer m = est;
  int steps = 0;
  while (steps < 64 && pred(m + 1)) {
    ++m;
    ++steps;
  }
  while (steps < 64 && !pred(m)) {
    --m;
    ++steps;
  }
  if (steps >= 64) {
    Integer big = ceil_sqrt_rational(r);
    Integer lo = -ceil_rational(s) - big - 2;  // pred(lo) holds
    Integer hi = -floor_rational(s) + big + 2;  // pred(hi+1) fails
    while (lo < hi) {
      Integer mid = lo + (hi - lo + 1) / 2;
      if (pred(mid))
        lo = mid;
      else
        hi = mid - 1;
    }
    m = lo;
  }
  return to_long(m);
}

double ball_volume(int n, double radius) {
  return std::pow(3.14159265358979323846, n / 2.0) / std::tgamma(n / 2.0 + 1.0) *
         std::pow(radius, n);
}

// Exact lattice-point walk. Visit receives the integer coordinates together
// with the exact norms gamma_L^2 and gamma_R^2. The Euclidean quadratic form
// accumulates through the LDL^T recursion; the Minkowski form (an integer
// matrix) is evaluated per leaf in plain machine arithmetic, and the two
// combine as gamma_L^2 = (Q + M)/2, gamma_R^2 = (Q - M)/2.
template <typename Visit>
struct Enumerator {
  const NarainLattice& lattice;
  LdltDecomposition decomposition;
  std::vector<std::vector<long long>> minkowski;
  Rational budget;  // 2 * cutoff, bound on x^T G x
  long long box_radius;
  long long cap;
  Visit& visit;
  std::vector<long long> coords;
  long long count = 0;

  void run() {
    coords.assign(lattice.rank(), 0);
    descend(static_cast<int>(lattice.rank()) - 1, budget);
  }

  void descend(int level, const Rational& remaining) {
    if (level < 0) {
      if (count >= cap)
        fail(Errc::cutoff_too_large, "lattice enumeration exceeded the cap of " +
                                         std::to_string(cap) + " vectors");
      ++count;
      long long m = 0;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        for (std::size_t j = 0; j < coords.size(); ++j)
          if (coords[j] != 0 && minkowski[i][j] != 0)
            m += coords[i] * minkowski[i][j] * coords[j];
      }
      Rational q_total = budget - remaining;
      visit(coords, (q_total + m) / 2, (q_total - m) / 2);
      return;
    }
    // Q(x) = sum_i d_i (x_i + s_i)^2 with s_i = sum_{j>i} L[j][i] x_j.
    Rational shift = 0;
    for (std::size_t j = level + 1; j < lattice.rank(); ++j)
      if (coords[j] != 0 && decomposition.lower[j][level] != 0)
        shift += decomposition.lower[j][level] * coords[j];
    const Rational& d = decomposition.diagonal[level];
    Rational bound = remaining / d;  // (x + s)^2 <= bound
    long long hi = floor_sqrt_shift(bound, shift);
    long long lo = -floor_sqrt_shift(bound, -shift);
    hi = std::min(hi, box_radius);
    lo = std::max(lo, -box_radius);
    for (long long x = lo; x <= hi; ++x) {
      Rational v = Rational(x) + shift;
      Rational used = d * v * v;
      if (used > remaining) continue;
      coords[level] = x;
      descend(level - 1, remaining - used);
    }
    coords[level] = 0;
  }
};

template <typename Visit>
void enumerate_norms(const NarainLattice& lattice, const Rational& cutoff, long long cap,
                     Visit&& visit) {
  if (cutoff < 0) fail(Errc::invalid_input, "enumeration cutoff must be >= 0");
  if (cap <= 0) cap = enumeration_cap();

  const int rank = static_cast<int>(lattice.rank());
  Rational budget = cutoff * 2;  // bound on gamma_L^2 + gamma_R^2

  double radius = std::sqrt(std::max(0.0, to_double(budget)));
  double det = to_double(determinant(lattice.euclidean_gram()));
  double predicted = ball_volume(rank, radius) / std::sqrt(det) * 1.3 + 64.0;
  if (predicted > static_cast<double>(cap))
    fail(Errc::cutoff_too_large,
         "predicted enumeration count " + std::to_string(static_cast<long long>(predicted)) +
             " exceeds the cap of " + std::to_string(cap));

  std::vector<std::vector<long long>> minkowski(rank, std::vector<long long>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      minkowski[i][j] = to_long(numerator(lattice.gram()[i][j]));

  Rational lambda_min = min_eigenvalue_lower_bound(lattice.euclidean_gram());
  Enumerator<Visit> e{lattice,
                      ldlt(lattice.euclidean_gram()),
                      std::move(minkowski),
                      budget,
                      floor_sqrt_shift(budget / lambda_min, 0),
                      cap,
                      visit,
                      {}};
  e.run();
}

}  // namespace

void TorusSpec::validate() const {
  if (dim_D < 1) fail(Errc::invalid_input, "torus dimension D must be >= 1");
  std::size_t n = 2 * static_cast<std::size_t>(dim_D);
  auto check_shape = [&](const RationalMatrix& m, const char* name) {
    if (m.size() != n) fail(Errc::invalid_input, std::string(name) + " must be 2D x 2D");
    for (const auto& row : m)
      if (row.size() != n) fail(Errc::invalid_input, std::string(name) + " must be 2D x 2D");
  };
  check_shape(basis, "basis");
  check_shape(b_field, "b_field");
  if (determinant(basis) == 0) fail(Errc::singular_basis, "torus basis is singular");
  if (!is_skew_symmetric(b_field))
    fail(Errc::invalid_input, "B-field must be skew-symmetric");
}

RationalMatrix dual_lattice(const TorusSpec& spec) {
  spec.validate();
  return inverse(transpose(spec.basis));
}

NarainLattice NarainLattice::from_torus(const TorusSpec& spec) {
  spec.validate();
  const std::size_t n = 2 * static_cast<std::size_t>(spec.dim_D);
  RationalMatrix dual = dual_lattice(spec);

  NarainLattice lat;
  lat.dim_D_ = spec.dim_D;
  lat.generators_.assign(2 * n, std::vector<Rational>(2 * n, 0));
  // lambda-generators (mu = 0), then mu-generators (lambda = 0), columns of
  // sqrt(2)*gamma = (mu - B lambda + lambda, mu - B lambda - lambda).
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Rational> lambda(n), b_lambda(n, 0);
    for (std::size_t row = 0; row < n; ++row) lambda[row] = spec.basis[row][col];
    b_lambda = matvec(spec.b_field, lambda);
    for (std::size_t row = 0; row < n; ++row) {
      lat.generators_[row][col] = lambda[row] - b_lambda[row];
      lat.generators_[n + row][col] = -lambda[row] - b_lambda[row];
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) {
      lat.generators_[row][n + col] = dual[row][col];
      lat.generators_[n + row][n + col] = dual[row][col];
    }
  }

  const std::size_t rank = 2 * n;
  lat.gram_.assign(rank, std::vector<Rational>(rank, 0));
  lat.euclid_gram_.assign(rank, std::vector<Rational>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      Rational left = 0, right = 0;
      for (std::size_t row = 0; row < n; ++row) {
        left += lat.generators_[row][i] * lat.generators_[row][j];
        right += lat.generators_[n + row][i] * lat.generators_[n + row][j];
      }
      lat.gram_[i][j] = (left - right) / 2;
      lat.euclid_gram_[i][j] = (left + right) / 2;
    }
  }

  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j)
      if (!is_integer(lat.gram_[i][j]))
        fail(Errc::invariant_violation, "charge lattice Gram matrix is not integral");
    if (numerator(lat.gram_[i][i]) % 2 != 0)
      fail(Errc::invariant_violation, "charge lattice is not even");
  }
  Rational det = determinant(lat.gram_);
  if (det != 1 && det != -1)
    fail(Errc::invariant_violation, "charge lattice is not self-dual (|det Gram| != 1)");
  return lat;
}

ChargeVector NarainLattice::vector_from_coords(const std::vector<long long>& coords) const {
  const std::size_t n = 2 * static_cast<std::size_t>(dim_D_);
  ChargeVector v;
  v.coords = coords;
  v.left_scaled.assign(n, 0);
  v.right_scaled.assign(n, 0);
  for (std::size_t col = 0; col < rank(); ++col) {
    if (coords[col] == 0) continue;
    for (std::size_t row = 0; row < n; ++row) {
      v.left_scaled[row] += generators_[row][col] * coords[col];
      v.right_scaled[row] += generators_[n + row][col] * coords[col];
    }
  }
  v.left_norm2 = dot(v.left_scaled, v.left_scaled) / 2;
  v.right_norm2 = dot(v.right_scaled, v.right_scaled) / 2;
  return v;
}

long long enumeration_cap() {
  if (const char* env = std::getenv("K3GENUS_ENUM_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

std::vector<ChargeVector> enumerate_vectors(const NarainLattice& lattice,
                                            const Rational& cutoff, long long cap) {
  std::vector<ChargeVector> out;
  enumerate_norms(lattice, cutoff, cap,
                  [&](const std::vector<long long>& coords, const Rational&, const Rational&) {
                    out.push_back(lattice.vector_from_coords(coords));
                  });
  std::sort(out.begin(), out.end(), [](const ChargeVector& a, const ChargeVector& b) {
    Rational na = a.left_norm2 + a.right_norm2;
    Rational nb = b.left_norm2 + b.right_norm2;
    if (na != nb) return na < nb;
    return a.coords < b.coords;
  });
  return out;
}

std::string LatticeSumSeries::canonical_text() const {
  std::ostringstream os;
  for (const auto& [exps, coeff] : terms)
    os << frac_string(exps.first) << ' ' << frac_string(exps.second) << ' '
       << frac_string(coeff) << '\n';
  return os.str();
}

LatticeSumSeries lattice_sum_series(const NarainLattice& lattice, const Rational& order,
                                    long long cap) {
  LatticeSumSeries sum;
  sum.order = order;
  sum.eta_power_per_side = 2 * lattice.dim_D();
  enumerate_norms(lattice, order, cap,
                  [&](const std::vector<long long>&, const Rational& left2,
                      const Rational& right2) { sum.terms[{left2 / 2, right2 / 2}] += 1; });
  return sum;
}

LatticeEvalResult lattice_sum_eval(const NarainLattice& lattice, std::complex<double> tau,
                                   const Rational& cutoff, long long cap) {
  if (!(tau.imag() > 0)) fail(Errc::invalid_input, "lattice_sum_eval requires Im(tau) > 0");
  const std::complex<double> i2pi(0.0, kTwoPi);

  LatticeEvalResult out;
  enumerate_norms(lattice, cutoff, cap,
                  [&](const std::vector<long long>&, const Rational& left2,
                      const Rational& right2) {
                    double a = to_double(left2) / 2.0;
                    double b = to_double(right2) / 2.0;
                    out.value += std::exp(i2pi * tau * a) * std::conj(std::exp(i2pi * tau * b));
                  });
  double eta_factor =
      std::pow(std::abs(eta_eval(tau)), -4.0 * static_cast<double>(lattice.dim_D()));
  out.value *= eta_factor;

  // Gaussian tail: every missing vector contributes at most
  // e^(-2 pi Im(tau) * cutoff); the count of relevant shells is bounded by
  // the ellipsoid volume two units out.
  double c = to_double(cutoff);
  int rank = static_cast<int>(lattice.rank());
  double det = to_double(determinant(lattice.euclidean_gram()));
  double shells = ball_volume(rank, std::sqrt(2.0 * (c + 2.0))) / std::sqrt(det) + 16.0;
  double decay = std::exp(-kTwoPi * tau.imag());
  out.tail_bound = shells * std::exp(-kTwoPi * tau.imag() * c) / (1.0 - decay) * eta_factor;

  if (out.tail_bound > 1e-9 * std::abs(out.value))
    fail(Errc::precision_loss, "lattice sum tail estimate exceeds 1e-9 of the partial sum");
  return out;
}

}  // namespace k3genus
