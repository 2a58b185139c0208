#include "k3genus/cft.hpp"

#include <algorithm>
#include <sstream>

namespace k3genus {

namespace {

std::string key_string(const SectorKey& k) {
  std::ostringstream os;
  os << "q^" << plain_string(k.q) << " qbar^" << plain_string(k.qbar) << " y^"
     << plain_string(Rational(k.y2, 2)) << " ybar^" << plain_string(Rational(k.ybar2, 2));
  return os.str();
}

int parity(long long n) { return static_cast<int>(((n % 2) + 2) % 2); }

// z -> z + 1/2 acts on one side as y^b -> e^(i pi b) y^b. For integer b the
// phase is (-1)^b; for half-integer b it is +-i times a sign, and the i from
// the holomorphic side cancels against the -i from the antiholomorphic one.
// Returns the signed series and whether the side carries the odd (i) factor.
std::pair<PuiseuxSeries, bool> half_period_side(const PuiseuxSeries& s) {
  PuiseuxSeries out(s.truncation_order());
  bool seen_even = false, seen_odd = false;
  for (const auto& [e, c] : s.terms()) {
    if (parity(e.y2) == 0) {
      seen_even = true;
      out.add_term_units(parity(e.y2 / 2) == 0 ? c : -c, e.q24, e.y2);
    } else {
      seen_odd = true;
      out.add_term_units(parity((e.y2 - 1) / 2) == 0 ? c : -c, e.q24, e.y2);
    }
  }
  if (seen_even && seen_odd)
    fail(Errc::invariant_violation,
         "half-period shift needs a uniform y-exponent parity per factor");
  return {out, seen_odd};
}

SectorSummand half_period_summand(const SectorSummand& sm) {
  auto [hol, hol_odd] = half_period_side(sm.hol);
  auto [antihol, anti_odd] = half_period_side(sm.antihol);
  if (hol_odd != anti_odd)
    fail(Errc::invariant_violation, "unpaired half-integer y-exponents under z -> z+1/2");
  SectorSummand out = sm;
  out.hol = std::move(hol);
  out.antihol = std::move(antihol);
  return out;
}

// Per-side truncation surviving a flow substitution; same width-bound
// argument as flowed_total_order, applied to one side:
//   g(M) = M + D/8 - ceil_sqrt(2D*(M + D/8)) / 2.
Rational flowed_side_order(const Rational& order, int dim_D) {
  Rational shifted = order + Rational(dim_D, 8);
  return shifted - Rational(ceil_sqrt_rational(shifted * 2 * dim_D), 2);
}

Rational side_flow_guard(const Rational& target, int dim_D) {
  Rational m = ceil_rational(target);
  while (flowed_side_order(m, dim_D) < target) m += 1;
  return m;
}

// y -> y * q^(dir/2) followed by the per-side prefactor q^(D/8) y^(dir*D/2).
PuiseuxSeries flow_side(const PuiseuxSeries& s, int dir, int dim_D) {
  PuiseuxSeries out(flowed_side_order(s.truncation_order(), dim_D));
  for (const auto& [e, c] : s.terms())
    out.add_term_units(c, e.q24 + dir * 6 * e.y2 + 3 * dim_D, e.y2 + dir * dim_D);
  return out;
}

SectorSummand flow_summand(const SectorSummand& sm, int dir, int dim_D) {
  SectorSummand out = sm;
  out.hol = flow_side(sm.hol, dir, dim_D);
  out.antihol = flow_side(sm.antihol, dir, dim_D);
  return out;
}

// theta_k(z)^D / eta^(3D): the holomorphic (and, with q -> qbar, the
// antiholomorphic) block of every toroidal sector.
PuiseuxSeries torus_side(int theta_index, int dim_D, const Rational& side_order) {
  PuiseuxSeries theta = theta_series(theta_index, side_order);
  PuiseuxSeries eta_pow = eta_series(side_order).pow(3 * dim_D);
  return theta.pow(dim_D) * eta_pow.inverse(side_order);
}

// 2^D * (theta_k(z)/theta_k(0))^D.
PuiseuxSeries quotient_side(int theta_index, int dim_D, const Rational& side_order) {
  PuiseuxSeries theta = theta_series(theta_index, side_order);
  PuiseuxSeries num = theta.pow(dim_D);
  PuiseuxSeries den_inv = theta.with_y_one().pow(dim_D).inverse(side_order);
  return (num * den_inv).scaled(Integer(1) << dim_D);
}

SectorFunction flow_function(const SectorFunction& f, int dir) {
  SectorFunction out = f;
  for (SectorSummand& sm : out.summands) sm = flow_summand(sm, dir, f.dim_D);
  return out;
}

SectorFunction half_period_function(const SectorFunction& f) {
  SectorFunction out = f;
  for (SectorSummand& sm : out.summands) sm = half_period_summand(sm);
  return out;
}

SectorFunction build_rtilde(const NarainLattice& lattice, const Rational& side_order,
                            const Rational& lattice_cutoff) {
  const int d = lattice.dim_D();
  SectorFunction f;
  f.kind = TheoryKind::z2_orbifold;
  f.label = Sector::r_tilde;
  f.dim_D = d;
  f.central_charge = Rational(3 * d);

  SectorSummand untwisted;
  untwisted.prefactor = Rational(1, 2);
  untwisted.lattice = lattice_sum_series(lattice, lattice_cutoff);
  untwisted.hol = torus_side(1, d, side_order);
  untwisted.antihol = untwisted.hol;
  untwisted.theta_index = 1;
  f.summands.push_back(std::move(untwisted));

  for (int k : {2, 4, 3}) {
    SectorSummand sm;
    sm.prefactor = Rational(1, 2);
    sm.hol = quotient_side(k, d, side_order);
    sm.antihol = sm.hol;
    sm.theta_index = k;
    sm.twisted = (k == 3 || k == 4);
    f.summands.push_back(std::move(sm));
  }
  return f;
}

// Toroidal sector with sides built at `side_order`, lattice cutoff chosen so
// the expanded form is exact through `target_total`.
SectorFunction assemble_torus(const NarainLattice& lattice, Sector s,
                              const Rational& target_total, const Rational& side_order) {
  const int d = lattice.dim_D();
  SectorFunction f;
  f.kind = TheoryKind::toroidal;
  f.label = s;
  f.dim_D = d;
  f.central_charge = Rational(3 * d);

  SectorSummand sm;
  sm.hol = torus_side(sector_theta_index(s), d, side_order);
  sm.antihol = sm.hol;
  sm.theta_index = sector_theta_index(s);
  Rational e_side(sm.hol.min_q_units(), 24);
  Rational cutoff = target_total - 2 * e_side;
  if (cutoff < 0) cutoff = 0;
  sm.lattice = lattice_sum_series(lattice, cutoff);
  f.summands.push_back(std::move(sm));

  if (f.expanded_total_order() < target_total)
    fail(Errc::invariant_violation, "torus sector assembled short of requested order");
  return f;
}

// Orbifold sector derived from R-tilde; every side ends up with truncation
// at least `min_side` so callers may flow the summands once more.
SectorFunction assemble_orbifold(const NarainLattice& lattice, Sector s,
                                 const Rational& target_total, const Rational& min_side) {
  const int d = lattice.dim_D();
  Rational side = std::max(Rational(target_total + d + 1), min_side);
  const bool flowed = (s == Sector::ns || s == Sector::ns_tilde);
  if (flowed) side = side_flow_guard(side, d);
  // Flow substitutions can pull exponents down by up to D/8 per side, so the
  // sectors that are about to be flowed carry extra lattice margin.
  const Rational cutoff = flowed ? Rational(target_total + d) : target_total;

  SectorFunction out = build_rtilde(lattice, side, cutoff);
  if (s != Sector::r_tilde) {
    out = half_period_function(out);  // R = R-tilde(z + 1/2)
    if (s == Sector::ns || s == Sector::ns_tilde) {
      out = flow_function(out, -1);
      if (s == Sector::ns_tilde) out = half_period_function(out);
    }
  }
  out.label = s;
  if (out.expanded_total_order() < target_total)
    fail(Errc::invariant_violation, "orbifold sector assembled short of requested order");
  return out;
}

SectorFunction assemble_sector(const NarainLattice& lattice, TheoryKind kind, Sector s,
                               const Rational& target_total, const Rational& min_side) {
  if (kind == TheoryKind::toroidal) {
    Rational side = std::max(Rational(target_total + lattice.dim_D() + 1), min_side);
    return assemble_torus(lattice, s, target_total, side);
  }
  return assemble_orbifold(lattice, s, target_total, min_side);
}

}  // namespace

Sector sector_from_name(const std::string& name) {
  if (name == "NS") return Sector::ns;
  if (name == "NS-tilde") return Sector::ns_tilde;
  if (name == "R") return Sector::r;
  if (name == "R-tilde") return Sector::r_tilde;
  fail(Errc::invalid_input, "unknown sector '" + name + "'");
}

std::string sector_name(Sector s) {
  switch (s) {
    case Sector::ns: return "NS";
    case Sector::ns_tilde: return "NS-tilde";
    case Sector::r: return "R";
    case Sector::r_tilde: return "R-tilde";
  }
  fail(Errc::invalid_input, "bad sector value");
}

int sector_theta_index(Sector s) {
  switch (s) {
    case Sector::ns: return 3;
    case Sector::ns_tilde: return 4;
    case Sector::r: return 2;
    case Sector::r_tilde: return 1;
  }
  fail(Errc::invalid_input, "bad sector value");
}

void FourVariableSeries::add_term(const SectorKey& key, const Rational& coeff) {
  if (coeff == 0 || key.q + key.qbar > order_) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational FourVariableSeries::coefficient(const SectorKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string FourVariableSeries::canonical_text() const {
  std::ostringstream os;
  for (const auto& [k, c] : terms_)
    os << frac_string(k.q) << ' ' << frac_string(k.qbar) << ' '
       << frac_string(Rational(k.y2, 2)) << ' ' << frac_string(Rational(k.ybar2, 2)) << ' '
       << frac_string(c) << '\n';
  return os.str();
}

std::optional<SectorKey> first_mismatch(const FourVariableSeries& a,
                                        const FourVariableSeries& b,
                                        const Rational& through) {
  if (a.total_order() < through || b.total_order() < through)
    fail(Errc::invalid_input, "first_mismatch beyond an exactness bound");
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  auto relevant = [&](const std::map<SectorKey, Rational>& m,
                      std::map<SectorKey, Rational>::const_iterator& it) {
    while (it != m.end() && it->first.q + it->first.qbar > through) ++it;
  };
  while (true) {
    relevant(a.terms(), ia);
    relevant(b.terms(), ib);
    bool a_done = ia == a.terms().end();
    bool b_done = ib == b.terms().end();
    if (a_done && b_done) return std::nullopt;
    if (a_done) return ib->first;
    if (b_done) return ia->first;
    if (ia->first < ib->first) return ia->first;
    if (ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia;
    ++ib;
  }
}

Rational flowed_total_order(const Rational& order, int dim_D) {
  Rational shifted = order + Rational(dim_D, 4);
  return shifted - Rational(ceil_sqrt_rational(shifted * dim_D));
}

Rational flow_guard_order(const Rational& through, int dim_D) {
  Rational m = ceil_rational(through);
  while (flowed_total_order(m, dim_D) < through) m += 1;
  return m;
}

FourVariableSeries flow_ns_to_r(const FourVariableSeries& f, int dim_D) {
  FourVariableSeries out(flowed_total_order(f.total_order(), dim_D));
  const Rational d8(dim_D, 8);
  for (const auto& [k, c] : f.terms())
    out.add_term({k.q + Rational(k.y2, 4) + d8, k.qbar + Rational(k.ybar2, 4) + d8,
                  k.y2 + dim_D, k.ybar2 + dim_D},
                 c);
  return out;
}

FourVariableSeries flow_r_to_ns(const FourVariableSeries& f, int dim_D) {
  FourVariableSeries out(flowed_total_order(f.total_order(), dim_D));
  const Rational d8(dim_D, 8);
  for (const auto& [k, c] : f.terms())
    out.add_term({k.q - Rational(k.y2, 4) + d8, k.qbar - Rational(k.ybar2, 4) + d8,
                  k.y2 - dim_D, k.ybar2 - dim_D},
                 c);
  return out;
}

FourVariableSeries half_period_shift(const FourVariableSeries& f) {
  FourVariableSeries out(f.total_order());
  for (const auto& [k, c] : f.terms()) {
    long long diff = k.y2 - k.ybar2;
    if (parity(diff) != 0)
      fail(Errc::invariant_violation,
           "z -> z+1/2 on a term with non-integral y/ybar exponent difference");
    out.add_term(k, parity(diff / 2) == 0 ? c : -c);
  }
  return out;
}

Rational SectorFunction::expanded_total_order() const {
  std::optional<Rational> total;
  auto consider = [&](const Rational& candidate) {
    if (!total || candidate < *total) total = candidate;
  };
  for (const SectorSummand& sm : summands) {
    Rational e_h = sm.hol.is_zero() ? sm.hol.truncation_order()
                                    : Rational(sm.hol.min_q_units(), 24);
    Rational e_a = sm.antihol.is_zero() ? sm.antihol.truncation_order()
                                        : Rational(sm.antihol.min_q_units(), 24);
    consider(sm.hol.truncation_order() - Rational(1, 24) + e_a);
    consider(sm.antihol.truncation_order() - Rational(1, 24) + e_h);
    if (sm.lattice.order) consider(*sm.lattice.order + e_h + e_a);
  }
  if (!total) fail(Errc::invalid_input, "sector function has no summands");
  return *total;
}

FourVariableSeries SectorFunction::expanded() const { return expanded_through(expanded_total_order()); }

FourVariableSeries SectorFunction::expanded_through(const Rational& cap) const {
  const Rational total = std::min(expanded_total_order(), cap);
  FourVariableSeries out(total);
  const std::map<std::pair<Rational, Rational>, Rational> trivial{
      {{Rational(0), Rational(0)}, Rational(1)}};
  for (const SectorSummand& sm : summands) {
    if (sm.hol.is_zero() || sm.antihol.is_zero()) continue;
    const auto& coupling = sm.lattice.terms.empty() ? trivial : sm.lattice.terms;
    Rational e_a(sm.antihol.min_q_units(), 24);
    for (const auto& [lexp, lcoeff] : coupling) {
      Rational base = lexp.first + lexp.second;
      for (const auto& [eh, ch] : sm.hol.terms()) {
        Rational with_hol = base + Rational(eh.q24, 24);
        if (with_hol + e_a > total) break;
        Rational pc = sm.prefactor * lcoeff * ch;
        for (const auto& [ea, ca] : sm.antihol.terms()) {
          Rational q_total = with_hol + Rational(ea.q24, 24);
          if (q_total > total) break;
          out.add_term({lexp.first + Rational(eh.q24, 24),
                        lexp.second + Rational(ea.q24, 24), eh.y2, ea.y2},
                       pc * ca);
        }
      }
    }
  }
  return out;
}

SectorFunction torus_sector(const Theory& theory, Sector s, const Rational& order) {
  if (theory.kind != TheoryKind::toroidal)
    fail(Errc::invalid_input, "torus_sector needs a toroidal theory");
  if (!(order > 0)) fail(Errc::invalid_input, "sector order must be > 0");
  return assemble_torus(theory.lattice, s, order, order + theory.lattice.dim_D() + 1);
}

SectorFunction orbifold_rtilde(const Theory& toroidal, const Rational& order) {
  if (toroidal.kind != TheoryKind::toroidal)
    fail(Errc::invalid_input, "orbifold_rtilde builds from the underlying toroidal theory");
  if (!(order > 0)) fail(Errc::invalid_input, "sector order must be > 0");
  SectorFunction f = build_rtilde(toroidal.lattice, order + toroidal.lattice.dim_D() + 1, order);
  if (f.expanded_total_order() < order)
    fail(Errc::invariant_violation, "orbifold R-tilde assembled short of requested order");
  return f;
}

SectorFunction orbifold_sector(const Theory& orbifold, Sector s, const Rational& order) {
  if (orbifold.kind != TheoryKind::z2_orbifold)
    fail(Errc::invalid_input, "orbifold_sector needs a Z2-orbifold theory");
  if (!(order > 0)) fail(Errc::invalid_input, "sector order must be > 0");
  return assemble_orbifold(orbifold.lattice, s, order, 0);
}

SectorFunction sector_function(const Theory& theory, Sector s, const Rational& order) {
  return theory.kind == TheoryKind::toroidal ? torus_sector(theory, s, order)
                                             : orbifold_sector(theory, s, order);
}

FlowCheckReport spectral_flow_check(const Theory& theory, const Rational& order) {
  if (!(order > 0)) fail(Errc::invalid_input, "spectral_flow_check order must be > 0");
  const int d = theory.lattice.dim_D();

  // Sides are lifted so they survive one more flow; the substituted series
  // and the directly assembled ones are then compared in expanded form
  // through the requested total order.
  const Rational min_side = side_flow_guard(order + d + 1, d);
  const Rational target = order + d;
  auto build = [&](Sector s) {
    return assemble_sector(theory.lattice, theory.kind, s, target, min_side);
  };
  SectorFunction ns = build(Sector::ns);
  SectorFunction ns_t = build(Sector::ns_tilde);
  SectorFunction r = build(Sector::r);
  SectorFunction r_t = build(Sector::r_tilde);

  std::ostringstream detail;
  auto check = [&](const char* name, const SectorFunction& lhs, const SectorFunction& rhs) {
    FourVariableSeries a = lhs.expanded_through(order);
    FourVariableSeries b = rhs.expanded_through(order);
    if (auto bad = first_mismatch(a, b, order))
      fail(Errc::identity_violation,
           std::string(name) + " fails first at " + key_string(*bad) + " (" +
               plain_string(a.coefficient(*bad)) + " vs " +
               plain_string(b.coefficient(*bad)) + ")");
    detail << name << ": exact through total order " << plain_string(order) << '\n';
  };
  check("Z_R = (q qbar)^(c/24) (y ybar)^(c/6) Z_NS(z + tau/2)", r, flow_function(ns, +1));
  check("Z_NS-tilde = Z_NS(z + 1/2)", ns_t, half_period_function(ns));
  check("Z_R-tilde = Z_R(z + 1/2)", r_t, half_period_function(r));

  return FlowCheckReport{order, detail.str()};
}

PuiseuxSeries cft_elliptic_genus(const Theory& theory, const Rational& order) {
  if (!(order > 0)) fail(Errc::invalid_input, "elliptic genus order must be > 0");
  return elliptic_genus_from(sector_function(theory, Sector::r_tilde, order), order);
}

PuiseuxSeries elliptic_genus_from(const SectorFunction& rt, const Rational& order) {
  if (!(order > 0)) fail(Errc::invalid_input, "elliptic genus order must be > 0");
  const Rational total = rt.expanded_total_order();

  // Rows keyed by the residual qbar-exponent after ybar -> 1; each row is a
  // series in (q-exponent, 2*y-exponent). Only the qbar = 0 row may survive.
  std::map<Rational, std::map<std::pair<Rational, long long>, Rational>> rows;
  const std::map<std::pair<Rational, Rational>, Rational> trivial{
      {{Rational(0), Rational(0)}, Rational(1)}};
  for (const SectorSummand& sm : rt.summands) {
    if (sm.hol.is_zero()) continue;
    PuiseuxSeries anti = sm.antihol.with_y_one();
    if (anti.is_zero()) continue;
    Rational e_a(anti.min_q_units(), 24);
    const auto& coupling = sm.lattice.terms.empty() ? trivial : sm.lattice.terms;
    for (const auto& [lexp, lcoeff] : coupling) {
      Rational base = lexp.first + lexp.second;
      for (const auto& [eh, ch] : sm.hol.terms()) {
        Rational with_hol = base + Rational(eh.q24, 24);
        if (with_hol + e_a > total) break;
        Rational pc = sm.prefactor * lcoeff * ch;
        for (const auto& [ea, ca] : anti.terms()) {
          Rational q_total = with_hol + Rational(ea.q24, 24);
          if (q_total > total) break;
          Rational qbar = lexp.second + Rational(ea.q24, 24);
          auto& row = rows[qbar];
          auto key = std::make_pair(lexp.first + Rational(eh.q24, 24), eh.y2);
          auto it = row.find(key);
          if (it == row.end())
            row.emplace(key, pc * ca);
          else {
            it->second += pc * ca;
            if (it->second == 0) row.erase(it);
          }
        }
      }
    }
  }

  for (const auto& [qbar, row] : rows) {
    if (qbar == 0 || row.empty()) continue;
    const auto& [key, coeff] = *row.begin();
    fail(Errc::holomorphy_failure,
         "residual qbar^" + plain_string(qbar) + " term " + plain_string(coeff) + " at q^" +
             plain_string(key.first) + " y^" + plain_string(Rational(key.second, 2)) +
             " after setting ybar = 1");
  }

  PuiseuxSeries genus(order);
  auto it = rows.find(Rational(0));
  if (it != rows.end())
    for (const auto& [key, coeff] : it->second)
      genus.add_term(coeff, key.first, Rational(key.second, 2));
  return genus;
}

long long twisted_ground_state_count(int dim_D) {
  if (dim_D < 1) fail(Errc::invalid_input, "dimension must be >= 1");
  if (dim_D > 16) fail(Errc::invalid_input, "dimension too large for a ground-state count");
  long long count = 1LL << (2 * dim_D);
  if (dim_D <= 2) {
    std::size_t n = 2 * static_cast<std::size_t>(dim_D);
    TorusSpec spec{dim_D, identity_matrix(n), RationalMatrix(n, std::vector<Rational>(n, 0))};
    Theory torus{TheoryKind::toroidal, NarainLattice::from_torus(spec)};
    SectorFunction rt = orbifold_rtilde(torus, 1);
    Rational lead = 0;
    for (const SectorSummand& sm : rt.summands)
      if (sm.twisted)
        lead += sm.prefactor * sm.hol.coefficient(0, 0) * sm.antihol.coefficient(0, 0);
    if (lead != count)
      fail(Errc::invariant_violation,
           "twisted ground-state count disagrees with the orbifold R-tilde sector");
  }
  return count;
}

PuiseuxSeries k3_elliptic_genus_series(const Rational& order) {
  if (!(order > 0)) fail(Errc::invalid_input, "elliptic genus order must be > 0");
  const Rational work = order + 1;
  PuiseuxSeries sum(work);
  for (int k : {2, 3, 4}) {
    PuiseuxSeries theta = theta_series(k, work);
    PuiseuxSeries quot2 = theta.pow(2) * theta.with_y_one().pow(2).inverse(work);
    sum = sum + quot2;
  }
  return sum.scaled(8).truncated(order);
}

std::complex<double> k3_elliptic_genus_eval(const ComplexPoint& p) {
  std::complex<double> sum = 0.0;
  for (int k : {2, 3, 4}) {
    std::complex<double> num = theta_eval(k, p, 64);
    std::complex<double> den = theta_eval(k, ComplexPoint(p.tau, 0.0), 64);
    std::complex<double> quot = num / den;
    sum += quot * quot;
  }
  return 8.0 * sum;
}

}  // namespace k3genus
