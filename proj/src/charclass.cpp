#include "k3genus/charclass.hpp"

#include <algorithm>
#include <sstream>

namespace k3genus {

namespace {

// Truncated univariate series in one formal variable t, index = power.
using TPoly = std::vector<Rational>;

TPoly tpoly_mul(const TPoly& a, const TPoly& b, int max_deg) {
  TPoly r(max_deg + 1, 0);
  for (int i = 0; i <= max_deg && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= max_deg && j < static_cast<int>(b.size()); ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

// 1/f for f with f[0] = 1.
TPoly tpoly_inverse(const TPoly& f, int max_deg) {
  TPoly r(max_deg + 1, 0);
  r[0] = 1;
  for (int n = 1; n <= max_deg; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n && k < static_cast<int>(f.size()); ++k) s += f[k] * r[n - k];
    r[n] = -s;
  }
  return r;
}

// log f for f with f[0] = 1.
TPoly tpoly_log(const TPoly& f, int max_deg) {
  TPoly u = f;
  u.resize(max_deg + 1, 0);
  u[0] = 0;  // u = f - 1
  TPoly r(max_deg + 1, 0);
  TPoly power = u;
  for (int k = 1; k <= max_deg; ++k) {
    Rational sign = (k % 2 == 1) ? Rational(1, k) : Rational(-1, k);
    for (int i = 0; i <= max_deg; ++i) r[i] += sign * power[i];
    if (k < max_deg) power = tpoly_mul(power, u, max_deg);
  }
  return r;
}

// (1 - e^{-t}) / t = 1 - t/2 + t^2/6 - ...
TPoly one_minus_exp_neg_over_t(int max_deg) {
  TPoly w(max_deg + 1, 0);
  Rational factorial = 1;
  for (int k = 1; k <= max_deg + 1; ++k) {
    factorial *= k;
    w[k - 1] = Rational((k % 2 == 1) ? 1 : -1) / factorial;
  }
  return w;
}

Rational factorial_of(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

int monomial_degree(const ChernMonomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * static_cast<int>(i + 1);
  return d;
}

std::string monomial_string(const ChernMonomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int rep = 0; rep < m[i]; ++rep) s += "c" + std::to_string(i + 1);
  return s.empty() ? "1" : s;
}

ChernMonomial parse_monomial(const std::string& text, int dim_D) {
  ChernMonomial m(dim_D, 0);
  if (text == "1") return m;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 'c')
      fail(Errc::invalid_input, "bad Chern monomial '" + text + "'");
    std::size_t j = ++i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    if (j == i) fail(Errc::invalid_input, "bad Chern monomial '" + text + "'");
    int k = std::stoi(text.substr(i, j - i));
    if (k < 1 || k > dim_D)
      fail(Errc::invalid_input, "Chern class index out of range in '" + text + "'");
    ++m[k - 1];
    i = j;
  }
  return m;
}

ChernPoly ChernPoly::constant(int dim_D, const Rational& value) {
  ChernPoly p(dim_D);
  p.add_term(ChernMonomial(dim_D, 0), value);
  return p;
}

ChernPoly ChernPoly::generator(int dim_D, int k) {
  if (k < 1 || k > dim_D) fail(Errc::invalid_input, "generator index out of range");
  ChernPoly p(dim_D);
  ChernMonomial m(dim_D, 0);
  m[k - 1] = 1;
  p.add_term(m, 1);
  return p;
}

void ChernPoly::add_term(const ChernMonomial& m, const Rational& coeff) {
  if (coeff == 0 || monomial_degree(m) > dim_) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational ChernPoly::coefficient(const ChernMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational ChernPoly::constant_term() const { return coefficient(ChernMonomial(dim_, 0)); }

ChernPoly ChernPoly::operator-() const {
  ChernPoly r(dim_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

ChernPoly operator+(const ChernPoly& a, const ChernPoly& b) {
  ChernPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

ChernPoly operator-(const ChernPoly& a, const ChernPoly& b) { return a + (-b); }

ChernPoly operator*(const ChernPoly& a, const ChernPoly& b) {
  ChernPoly r(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    int da = monomial_degree(ma);
    for (const auto& [mb, cb] : b.terms_) {
      if (da + monomial_degree(mb) > a.dim_) continue;
      ChernMonomial m(a.dim_, 0);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

ChernPoly ChernPoly::scaled(const Rational& s) const {
  ChernPoly r(dim_);
  if (s == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
  return r;
}

ChernPoly ChernPoly::exponential() const {
  if (constant_term() != 0)
    fail(Errc::invalid_input, "ring exponential needs a vanishing constant term");
  ChernPoly acc = ChernPoly::constant(dim_, 1);
  ChernPoly power = ChernPoly::constant(dim_, 1);
  Rational factorial = 1;
  for (int j = 1; j <= dim_; ++j) {
    power = power * (*this);
    if (power.is_zero()) break;
    factorial *= j;
    acc = acc + power.scaled(Rational(1) / factorial);
  }
  return acc;
}

std::string ChernPoly::canonical_text() const {
  std::vector<std::pair<ChernMonomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = monomial_degree(a.first), db = monomial_degree(b.first);
    if (da != db) return da < db;
    return monomial_string(a.first) < monomial_string(b.first);
  });
  std::ostringstream os;
  for (const auto& [m, c] : sorted) os << monomial_string(m) << ' ' << frac_string(c) << '\n';
  return os.str();
}

std::vector<ChernPoly> power_sums_from_elementary(const std::vector<ChernPoly>& elementary,
                                                  int count) {
  if (elementary.empty()) fail(Errc::invalid_input, "need at least e_1");
  const int dim = elementary[0].dim();
  auto e = [&](int k) -> ChernPoly {
    if (k >= 1 && k <= static_cast<int>(elementary.size())) return elementary[k - 1];
    return ChernPoly(dim);
  };
  std::vector<ChernPoly> p;
  for (int k = 1; k <= count; ++k) {
    ChernPoly pk(dim);
    for (int i = 1; i < k; ++i) {
      ChernPoly term = e(i) * p[k - i - 1];
      pk = (i % 2 == 1) ? pk + term : pk - term;
    }
    ChernPoly last = e(k).scaled(k);
    pk = (k % 2 == 1) ? pk + last : pk - last;
    p.push_back(pk);
  }
  return p;
}

std::vector<ChernPoly> elementary_from_power_sums(const std::vector<ChernPoly>& power_sums,
                                                  const Rational& rank, int count) {
  if (power_sums.empty() && count > 0) fail(Errc::invalid_input, "need power sums");
  const int dim = power_sums.empty() ? 0 : power_sums[0].dim();
  std::vector<ChernPoly> e;
  auto e_at = [&](int k) -> ChernPoly {
    if (k == 0) return ChernPoly::constant(dim, 1);
    return e[k - 1];
  };
  (void)rank;
  for (int k = 1; k <= count; ++k) {
    ChernPoly acc(dim);
    for (int i = 1; i <= k; ++i) {
      ChernPoly term = e_at(k - i) * power_sums[i - 1];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    e.push_back(acc.scaled(Rational(1, k)));
  }
  return e;
}

ChernPoly todd_class(int dim_D) {
  if (dim_D < 1) fail(Errc::invalid_input, "dimension must be >= 1");
  TPoly h = tpoly_inverse(one_minus_exp_neg_over_t(dim_D), dim_D);  // t/(1-e^{-t})
  TPoly log_h = tpoly_log(h, dim_D);
  std::vector<ChernPoly> tangent(dim_D);
  for (int k = 1; k <= dim_D; ++k) tangent[k - 1] = ChernPoly::generator(dim_D, k);
  std::vector<ChernPoly> p = power_sums_from_elementary(tangent, dim_D);
  ChernPoly arg(dim_D);
  for (int m = 1; m <= dim_D; ++m) arg = arg + p[m - 1].scaled(log_h[m]);
  return arg.exponential();
}

ChernPoly chern_character_trivial(int dim_D, const Rational& rank) {
  return ChernPoly::constant(dim_D, rank);
}

ChernPoly chern_character_line(int dim_D, const ChernPoly& root) {
  return root.exponential();
}

ChernPoly chern_character_from_classes(int dim_D, const Rational& rank,
                                       const std::vector<ChernPoly>& chern_classes) {
  ChernPoly ch = ChernPoly::constant(dim_D, rank);
  if (chern_classes.empty()) return ch;
  std::vector<ChernPoly> p = power_sums_from_elementary(chern_classes, dim_D);
  for (int m = 1; m <= dim_D; ++m)
    ch = ch + p[m - 1].scaled(Rational(1) / factorial_of(m));
  return ch;
}

ChernPoly tangent_character(int dim_D) {
  std::vector<ChernPoly> tangent(dim_D);
  for (int k = 1; k <= dim_D; ++k) tangent[k - 1] = ChernPoly::generator(dim_D, k);
  return chern_character_from_classes(dim_D, dim_D, tangent);
}

std::vector<ChernPoly> cotangent_wedge_characters(int dim_D) {
  std::vector<ChernPoly> tangent(dim_D);
  for (int k = 1; k <= dim_D; ++k) tangent[k - 1] = ChernPoly::generator(dim_D, k);
  std::vector<ChernPoly> p = power_sums_from_elementary(tangent, dim_D);

  // Power sums of u_j = e^{-y_j}: P_m = sum_r (-m)^r p_r / r!, p_0 = D.
  std::vector<ChernPoly> big_p;
  for (int m = 1; m <= dim_D; ++m) {
    ChernPoly pm = ChernPoly::constant(dim_D, dim_D);
    Rational power = 1, factorial = 1;
    for (int r = 1; r <= dim_D; ++r) {
      power *= -m;
      factorial *= r;
      pm = pm + p[r - 1].scaled(power / factorial);
    }
    big_p.push_back(pm);
  }
  std::vector<ChernPoly> wedges = elementary_from_power_sums(big_p, dim_D, dim_D);
  wedges.insert(wedges.begin(), ChernPoly::constant(dim_D, 1));
  return wedges;  // index k = ch(Lambda^k T*)
}

ManifoldData ManifoldData::k3() {
  ManifoldData m;
  m.dim_D = 2;
  m.chern_numbers.emplace(parse_monomial("c2", 2), 24);
  return m;
}

ManifoldData ManifoldData::torus(int D) {
  ManifoldData m;
  m.dim_D = D;
  return m;
}

Rational integrate(const ManifoldData& m, const ChernPoly& cls) {
  if (cls.dim() != m.dim_D)
    fail(Errc::invalid_input, "ring dimension does not match the manifold data");
  Rational total = 0;
  for (const auto& [mono, coeff] : cls.terms()) {
    if (monomial_degree(mono) != m.dim_D) continue;  // integral vanishes off top degree
    auto it = m.chern_numbers.find(mono);
    if (it != m.chern_numbers.end()) total += coeff * Rational(it->second);
  }
  return total;
}

BundleClass BundleClass::trivial(int dim_D, const Rational& rank) {
  return {rank, chern_character_trivial(dim_D, rank)};
}

BundleClass BundleClass::from_character(const Rational& rank, ChernPoly ch) {
  if (ch.constant_term() != rank)
    fail(Errc::invalid_input, "bundle rank disagrees with the degree-0 character");
  return {rank, std::move(ch)};
}

BundleClass BundleClass::euler_virtual(int dim_D) {
  std::vector<ChernPoly> wedges = cotangent_wedge_characters(dim_D);
  ChernPoly ch(dim_D);
  for (int k = 0; k <= dim_D; ++k)
    ch = (k % 2 == 0) ? ch + wedges[k] : ch - wedges[k];
  return {ch.constant_term(), ch};
}

Rational hrr_euler(const ManifoldData& m, const BundleClass& e) {
  if (e.character.dim() != m.dim_D)
    fail(Errc::invalid_input, "bundle ring dimension does not match the manifold");
  return integrate(m, todd_class(m.dim_D) * e.character);
}

ChernSeries::ChernSeries(int dim_D, const Rational& order)
    : dim_(dim_D), trunc24_(order_to_units(order)) {}

void ChernSeries::add_term(const ChernPoly& coeff, long long q24, long long y2) {
  if (coeff.is_zero() || q24 >= trunc24_) return;
  QYExp key{q24, y2};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else {
    ChernPoly sum = it->second + coeff;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = sum;
  }
}

const ChernPoly* ChernSeries::term(long long q24, long long y2) const {
  auto it = terms_.find(QYExp{q24, y2});
  return it == terms_.end() ? nullptr : &it->second;
}

ChernSeries operator+(const ChernSeries& a, const ChernSeries& b) {
  ChernSeries r(a.dim_, Rational(std::min(a.trunc24_, b.trunc24_), 24));
  for (const auto& [e, c] : a.terms_) r.add_term(c, e.q24, e.y2);
  for (const auto& [e, c] : b.terms_) r.add_term(c, e.q24, e.y2);
  return r;
}

ChernSeries operator*(const ChernSeries& a, const ChernSeries& b) {
  long long t = std::min(a.trunc24_, b.trunc24_);
  if (!a.terms_.empty()) t = std::min(t, b.trunc24_ + a.terms_.begin()->first.q24);
  if (!b.terms_.empty()) t = std::min(t, a.trunc24_ + b.terms_.begin()->first.q24);
  ChernSeries r(a.dim_, Rational(t, 24));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      if (ea.q24 + eb.q24 >= t) break;
      r.add_term(ca * cb, ea.q24 + eb.q24, ea.y2 + eb.y2);
    }
  }
  return r;
}

ChernSeries ChernSeries::scaled_by(const ChernPoly& p) const {
  ChernSeries r(dim_, Rational(trunc24_, 24));
  for (const auto& [e, c] : terms_) r.add_term(c * p, e.q24, e.y2);
  return r;
}

ChernSeries ChernSeries::shifted(const Rational& q_exp, const Rational& y_exp) const {
  Rational q24 = q_exp * 24, y2 = y_exp * 2;
  if (!is_integer(q24) || !is_integer(y2))
    fail(Errc::off_lattice, "shift exponents must lie on the lattice");
  long long dq = to_long(numerator(q24)), dy = to_long(numerator(y2));
  ChernSeries r(dim_, Rational(trunc24_ + dq, 24));
  for (const auto& [e, c] : terms_) r.add_term(c, e.q24 + dq, e.y2 + dy);
  return r;
}

ChernSeries ChernSeries::exponential() const {
  if (!terms_.empty() && terms_.begin()->first.q24 <= 0)
    fail(Errc::invalid_input, "series exponential needs positive q-exponents");
  ChernSeries acc(dim_, Rational(trunc24_, 24));
  acc.add_term(ChernPoly::constant(dim_, 1), 0, 0);
  ChernSeries power = acc;
  Rational factorial = 1;
  int j = 0;
  while (true) {
    ++j;
    power = power * (*this);
    if (power.terms().empty()) break;
    factorial *= j;
    ChernSeries scaled(dim_, Rational(trunc24_, 24));
    for (const auto& [e, c] : power.terms())
      scaled.add_term(c.scaled(Rational(1) / factorial), e.q24, e.y2);
    acc = acc + scaled;
  }
  return acc;
}

ChernSeries elliptic_genus_bundle_character(int dim_D, const Rational& order) {
  if (dim_D < 1) fail(Errc::invalid_input, "dimension must be >= 1");
  if (!(order > 0)) fail(Errc::invalid_input, "order must be > 0");
  const long long n_max = to_long(ceil_rational(order));

  // f_r(q, y): coefficient of t^r in sum over factors of
  // +- log(1 - M e^{s t}) = -+ sum_k M^k (s k)^r / (k r!).
  std::vector<PuiseuxSeries> f(dim_D + 1, PuiseuxSeries(order));
  auto accumulate = [&](long long q_pow, long long y2, int s, int outer_sign) {
    // outer_sign +1 for exterior factors, -1 for symmetric (inverted) ones.
    Rational factorial = 1;
    for (int r = 0; r <= dim_D; ++r) {
      if (r > 0) factorial *= r;
      for (long long k = 1; k * q_pow <= n_max; ++k) {
        if (k * q_pow * 24 >= f[r].truncation_units()) break;
        Rational sk_pow = 1;
        for (int rep = 0; rep < r; ++rep) sk_pow *= s * k;
        Rational coeff = Rational(-outer_sign) * sk_pow / (Rational(k) * factorial);
        f[r].add_term_units(coeff, 24 * k * q_pow, k * y2);
      }
    }
  };
  for (long long n = 2; n <= n_max; ++n) accumulate(n - 1, 2, -1, +1);  // Lambda_{-y q^(n-1)} T*
  for (long long n = 1; n <= n_max; ++n) {
    accumulate(n, -2, +1, +1);  // Lambda_{-1/y q^n} T
    accumulate(n, 0, -1, -1);   // S_{q^n} T*
    accumulate(n, 0, +1, -1);   // S_{q^n} T
  }

  std::vector<ChernPoly> tangent(dim_D);
  for (int k = 1; k <= dim_D; ++k) tangent[k - 1] = ChernPoly::generator(dim_D, k);
  std::vector<ChernPoly> p = power_sums_from_elementary(tangent, dim_D);

  ChernSeries arg(dim_D, order);
  for (int r = 0; r <= dim_D; ++r) {
    ChernPoly pr = (r == 0) ? ChernPoly::constant(dim_D, dim_D) : p[r - 1];
    for (const auto& [e, c] : f[r].terms()) arg.add_term(pr.scaled(c), e.q24, e.y2);
  }
  ChernSeries bulk = arg.exponential();

  std::vector<ChernPoly> wedges = cotangent_wedge_characters(dim_D);
  ChernSeries lambda_part(dim_D, order);
  for (int k = 0; k <= dim_D; ++k)
    lambda_part.add_term(k % 2 == 0 ? wedges[k] : -wedges[k], 0, 2 * k);

  return (lambda_part * bulk).shifted(0, Rational(-dim_D, 2));
}

PuiseuxSeries geometric_elliptic_genus(const ManifoldData& m, const Rational& order) {
  ChernSeries bundle = elliptic_genus_bundle_character(m.dim_D, order);
  ChernPoly td = todd_class(m.dim_D);
  PuiseuxSeries genus(order);
  for (const auto& [e, cls] : bundle.terms())
    genus.add_term_units(integrate(m, td * cls), e.q24, e.y2);
  return genus;
}

}  // namespace k3genus
