#pragma once

#include <map>
#include <string>
#include <vector>

#include "k3genus/puiseux.hpp"

namespace k3genus {

// Monomial in the Chern classes c_1..c_D: entry [k-1] is the exponent of
// c_k; the (complex) degree of c_k is k. Canonical string form repeats the
// sorted factors, e.g. "c1c1c2"; the empty monomial prints as "1".
using ChernMonomial = std::vector<int>;

int monomial_degree(const ChernMonomial& m);
std::string monomial_string(const ChernMonomial& m);
ChernMonomial parse_monomial(const std::string& text, int dim_D);

/**
 * Element of Q[c_1, ..., c_D] truncated above degree D. The generators all
 * have even real degree, so the ring is honestly commutative; products that
 * overflow degree D are annihilated.
 */
class ChernPoly {
 public:
  ChernPoly() : dim_(0) {}  // placeholder; assign before use
  explicit ChernPoly(int dim_D) : dim_(dim_D) {}
  static ChernPoly constant(int dim_D, const Rational& value);
  static ChernPoly generator(int dim_D, int k);  // c_k, 1 <= k <= D

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ChernMonomial, Rational>& terms() const { return terms_; }

  void add_term(const ChernMonomial& m, const Rational& coeff);
  Rational coefficient(const ChernMonomial& m) const;
  Rational constant_term() const;

  ChernPoly operator-() const;
  friend ChernPoly operator+(const ChernPoly& a, const ChernPoly& b);
  friend ChernPoly operator-(const ChernPoly& a, const ChernPoly& b);
  friend ChernPoly operator*(const ChernPoly& a, const ChernPoly& b);
  ChernPoly scaled(const Rational& s) const;

  // exp of an element with vanishing constant term (finite in the truncation).
  ChernPoly exponential() const;

  friend bool operator==(const ChernPoly& a, const ChernPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  // Lines "monomial coeff" sorted by (degree, monomial).
  std::string canonical_text() const;

 private:
  int dim_;
  std::map<ChernMonomial, Rational> terms_;
};

// Power sums p_1..p_max of the formal roots of a bundle whose elementary
// symmetric functions are the given classes (Newton's identities); and the
// inverse direction.
std::vector<ChernPoly> power_sums_from_elementary(const std::vector<ChernPoly>& elementary,
                                                  int count);
std::vector<ChernPoly> elementary_from_power_sums(const std::vector<ChernPoly>& power_sums,
                                                  const Rational& rank, int count);

// Todd class of the tangent bundle: prod y_j / (1 - exp(-y_j)) through
// degree D, computed from power sums of the formal roots.
ChernPoly todd_class(int dim_D);

ChernPoly chern_character_trivial(int dim_D, const Rational& rank);
ChernPoly chern_character_line(int dim_D, const ChernPoly& root);
// rank + p_1 + p_2/2! + ... with p_m from Newton on the given Chern classes.
ChernPoly chern_character_from_classes(int dim_D, const Rational& rank,
                                       const std::vector<ChernPoly>& chern_classes);
ChernPoly tangent_character(int dim_D);

// ch(Lambda^k T*) for k = 0..D: elementary symmetric functions of e^(-y_j).
std::vector<ChernPoly> cotangent_wedge_characters(int dim_D);

/**
 * A manifold enters only through its dimension and Chern numbers: the
 * integration functional maps a top-degree monomial to an integer and kills
 * every other degree. Missing monomials integrate to zero.
 */
struct ManifoldData {
  int dim_D = 1;
  std::map<ChernMonomial, Integer> chern_numbers;

  static ManifoldData k3();          // D=2, c2 -> 24
  static ManifoldData torus(int D);  // all Chern numbers zero
};

Rational integrate(const ManifoldData& m, const ChernPoly& cls);

struct BundleClass {
  Rational rank;        // may be virtual (negative or zero)
  ChernPoly character;  // Chern character; degree-0 part equals rank

  static BundleClass trivial(int dim_D, const Rational& rank);
  static BundleClass from_character(const Rational& rank, ChernPoly ch);
  // E+ - E- = sum (-1)^p Lambda^p T*, with ch = prod (1 - exp(-y_j)).
  static BundleClass euler_virtual(int dim_D);
};

// Hirzebruch-Riemann-Roch: chi(E) = integral of Td(Y) ch(E). Integer-valued
// for genuine geometric input; the exact rational is returned so callers can
// diagnose inconsistent Chern numbers.
Rational hrr_euler(const ManifoldData& m, const BundleClass& e);

/**
 * Series in (q, y) with ChernPoly coefficients; q-exponents integral here,
 * y-exponents on (1/2)Z. Used for the Chern character of the elliptic genus
 * bundle.
 */
class ChernSeries {
 public:
  ChernSeries(int dim_D, const Rational& order);

  int dim() const { return dim_; }
  long long truncation_units() const { return trunc24_; }
  const std::map<QYExp, ChernPoly>& terms() const { return terms_; }

  void add_term(const ChernPoly& coeff, long long q24, long long y2);
  const ChernPoly* term(long long q24, long long y2) const;

  friend ChernSeries operator+(const ChernSeries& a, const ChernSeries& b);
  friend ChernSeries operator*(const ChernSeries& a, const ChernSeries& b);
  ChernSeries scaled_by(const ChernPoly& p) const;
  ChernSeries shifted(const Rational& q_exp, const Rational& y_exp) const;

  // exp of a series whose minimal q-exponent is positive.
  ChernSeries exponential() const;

 private:
  int dim_;
  std::map<QYExp, ChernPoly> terms_;
  long long trunc24_;
};

/**
 * Chern character of the elliptic genus bundle
 *   y^(-D/2) (x)_{n>=1} Lambda_{-y q^(n-1)} T* (x) Lambda_{-1/y q^n} T
 *                (x) S_{q^n} T* (x) S_{q^n} T,
 * expanded through the q-order with ring coefficients through degree D.
 * The n = 1 exterior factor is the finite polynomial
 * sum_k (-y)^k ch(Lambda^k T*); everything else sits at positive q-powers
 * and enters through exp of a sum of power-sum multiples.
 */
ChernSeries elliptic_genus_bundle_character(int dim_D, const Rational& order);

// Applies Td-paired integration coefficient-wise: the geometric elliptic
// genus chi applied q-term by q-term to the bundle character.
PuiseuxSeries geometric_elliptic_genus(const ManifoldData& m, const Rational& order);

}  // namespace k3genus
