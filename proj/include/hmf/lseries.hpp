#pragma once

// Dirichlet series and L-functions attached to a newform in both the
// classical and unitary normalizations: Euler expansion, certified partial
// evaluation inside the absolute-convergence region, twists, the shift
// relation, critical sets, and period-normalized critical values.
//
// No analytic continuation: points outside the convergence region are
// reported out of reach, never approximated.

#include <hmf/cohomology.hpp>
#include <hmf/gauss.hpp>
#include <hmf/newform.hpp>

namespace hmf {

enum class SeriesNorm { Classical, Unitary };

// In the unitary normalization the coefficient at m is the stored value
// times the formal N(m)^{(1-k0)/2}; the value table itself always lives in
// the coefficient field.
struct DirichletSeries {
  const TotallyRealField* F = nullptr;
  SeriesNorm norm = SeriesNorm::Classical;
  long k0 = 2;
  Int bound = 0;
  bool from_euler = false;
  std::vector<IdealEntry> ideals;  // norm-sorted, starts at O
  std::vector<NFElem> values;      // aligned with `ideals`
  std::map<std::string, size_t> index;

  const NFElem* at(const std::string& key) const {
    auto it = index.find(key);
    return it == index.end() ? nullptr : &values[it->second];
  }
  void rebuild_index() {
    index.clear();
    for (size_t i = 0; i < ideals.size(); ++i)
      index[ideals[i].ideal.key()] = i;
  }
};

inline DirichletSeries coefficients_from_euler(const HilbertNewformData& f,
                                               const Int& B,
                                               SeriesNorm norm) {
  HilbertNewformData g = f;
  g.bound = B;
  // keep only prime data; everything else is regenerated
  std::map<std::string, NFElem> primes;
  for (Int p = 2; p <= B; p = next_prime_after(p))
    for (auto& P : factor_prime(f.F, p)) {
      if (P.norm() > B) continue;
      const NFElem* c = f.coeff(P.ideal);
      if (!c) throw invalid_input("missing local data at prime " +
                                  P.ideal.key());
      primes[P.ideal.key()] = *c;
    }
  g.C = std::move(primes);
  synthesize_coefficients(g);
  DirichletSeries out;
  out.F = f.F;
  out.norm = norm;
  out.k0 = f.k0;
  out.bound = B;
  out.from_euler = true;
  out.ideals = enumerate_ideals(f.F, B);
  for (const auto& e : out.ideals) out.values.push_back(g.C.at(e.ideal.key()));
  out.rebuild_index();
  return out;
}

// Euler expansion from the attached local data: the unitary coefficient at
// P^r is the Kirillov-model value scaled by q^{r/2}, an element of the
// coefficient field times the formal half-power Q^{r(1-k0)}; the base-field
// part is extracted here with the half-powers paired off explicitly.
inline DirichletSeries coefficients_from_euler(const AutomorphicRepData& rep,
                                               long k0, const Int& B,
                                               SeriesNorm norm) {
  DirichletSeries out;
  out.F = rep.F;
  out.norm = norm;
  out.k0 = k0;
  out.bound = B;
  out.from_euler = true;
  out.ideals = enumerate_ideals(rep.F, B);
  std::map<std::string, NFElem> table;
  for (const auto& e : out.ideals) {
    NFElem val(Rat(1));
    for (const auto& [P, exp] : e.factors) {
      const NonArchRep<NFElem>* lp = rep.local_at(P);
      if (!lp)
        throw invalid_input("missing local data at prime " + P.ideal.key());
      // unitary coefficient, then strip Q^{r(1-k0)} to land in Q(f)
      QExt<NFElem> z = QExt<NFElem>::half_power(lp->q, exp) *
                       kirillov_new_value(*lp, exp);
      QExt<NFElem> base = z * QExt<NFElem>::half_power(lp->q, exp * (k0 - 1));
      if (!base.b.is_zero())
        throw hmf_error("Euler coefficient left the coefficient field");
      val = val * base.a;
    }
    table[e.ideal.key()] = val;
  }
  for (const auto& e : out.ideals) out.values.push_back(table[e.ideal.key()]);
  out.rebuild_index();
  return out;
}

struct LValue {
  Rat s;
  CertReal value;     // partial sum, certified
  double tail = 0;    // rigorous bound on the dropped tail
  double total_radius() const { return value.rad + tail; }
};

// Certified evaluation at real s in the absolute-convergence region.
// Envelope: |C(m)| <= d(m) N(m)^{(k0-1)/2 + delta}; Rankin trick gives
//   sum_{N(m)>B} d(m) N(m)^{-y} <= B^{-a} zeta(y-a)^{2n},  a = (y-1)/2,
// with zeta_F(x) <= zeta(x)^n absorbed into the exponent.
inline LValue evaluate_finite_L(const DirichletSeries& series, const Rat& s,
                                long prec, int embedding = 0,
                                Rat delta = Rat(1, 2)) {
  Rat theta = delta;
  if (series.norm == SeriesNorm::Classical) {
    Rat h(series.k0 - 1, 2);
    h.canonicalize();
    theta += h;
  }
  Rat y = s - theta;
  if (!(y > 1))
    throw out_of_reach("outside the absolute-convergence region");
  LValue out;
  out.s = s;
  out.value = CertReal{Real::from_int(0, prec), 0.0};
  Rat halfshift(0);
  if (series.norm == SeriesNorm::Unitary) {
    halfshift = Rat(1 - series.k0, 2);
    halfshift.canonicalize();
  }
  for (size_t i = 0; i < series.ideals.size(); ++i) {
    const Int& nm = series.ideals[i].norm;
    CertReal c = series.values[i].embed(embedding, prec);
    Rat expo = halfshift - s;
    Real np = Real::from_int(nm, prec).pow(Real::from_rat(expo, prec));
    CertReal term = c * CertReal{np, 4 * CertReal::ulp_of(np)};
    out.value = out.value + term;
  }
  Rat a = (y - 1) / 2;
  Real zb = Real::from_rat(y - a, prec).zeta();
  Real tail = Real::from_int(series.bound, prec)
                  .pow(Real::from_rat(-a, prec));
  int n = series.F->degree();
  for (int i = 0; i < 2 * n; ++i) tail = tail * zb;
  out.tail = std::abs(mpfr_get_d(tail.raw(), MPFR_RNDU)) * (1 + 1e-9);
  return out;
}

// coefficientwise twist by a finite-order Hecke character with values +-1
// (rational values are all the dictionary's exact path admits)
inline DirichletSeries twist_series(const DirichletSeries& series,
                                    const HeckeCharacter& chi) {
  DirichletSeries out = series;
  const FracIdeal& cond = chi.omega.ring().modulus();
  for (size_t i = 0; i < out.ideals.size(); ++i) {
    if (!out.ideals[i].ideal.is_coprime_to(cond)) {
      out.values[i] = NFElem(Rat(0));
      continue;
    }
    Rat v = cyclo_to_rat(chi.ideal_value(out.ideals[i].ideal));
    out.values[i] = NFElem(v) * out.values[i];
  }
  out.from_euler = false;
  return out;
}

struct ShiftRelationPoint {
  Rat s;
  CertReal unitary, classical;  // L(s, Pi) and L(s + (k0-1)/2, f)
  double combined_tail = 0;
  bool ok = false;
};

struct ShiftRelationReport {
  bool exact_ok = true;    // coefficient identity across the two expansions
  bool arch_ok = false;    // Gamma-atom identity under the shift
  std::vector<ShiftRelationPoint> points;
  bool ok() const {
    if (!exact_ok || !arch_ok) return false;
    for (const auto& p : points)
      if (!p.ok) return false;
    return true;
  }
};

inline ShiftRelationReport shift_relation_check(const HilbertNewformData& f,
                                                const std::vector<Rat>& grid,
                                                const Int& B, long prec,
                                                int embedding = 0) {
  AutomorphicRepData rep = attach_representation(f);
  DirichletSeries classical = coefficients_from_euler(f, B, SeriesNorm::Classical);
  DirichletSeries unitary =
      coefficients_from_euler(rep, f.k0, B, SeriesNorm::Unitary);
  ShiftRelationReport out;
  // exact identity: the unitary table, built from the Kirillov expansion,
  // must match the classical Hecke table value for value at every ideal
  // coprime to the level (the ramified Euler data is a placeholder)
  for (size_t i = 0; i < classical.ideals.size(); ++i) {
    const auto& e = classical.ideals[i];
    if (!e.ideal.is_coprime_to(f.level)) continue;
    const NFElem* u = unitary.at(e.ideal.key());
    if (!u || !(*u == classical.values[i])) out.exact_ok = false;
  }
  Rat shift(f.k0 - 1, 2);
  shift.canonicalize();
  ArchLFactor arch_u = arch_l_factor(rep.arch);
  std::vector<ArchLocalRep> arch_cl_reps;
  for (long kj : f.k) arch_cl_reps.emplace_back(kj - 1, -shift);
  ArchLFactor arch_cl = arch_l_factor(arch_cl_reps);
  out.arch_ok = arch_shift_relation_holds(arch_u, arch_cl, shift);
  for (const Rat& s : grid) {
    ShiftRelationPoint pt;
    pt.s = s;
    LValue lu = evaluate_finite_L(unitary, s, prec, embedding);
    LValue lc = evaluate_finite_L(classical, s + shift, prec, embedding);
    pt.unitary = lu.value;
    pt.classical = lc.value;
    pt.combined_tail = lu.total_radius() + lc.total_radius();
    Real diff = (lu.value.v - lc.value.v).abs();
    pt.ok = mpfr_get_d(diff.raw(), MPFR_RNDU) <= pt.combined_tail;
    out.points.push_back(pt);
  }
  return out;
}

struct CriticalSet {
  std::vector<Int> classical;   // integers m in Shimura's open interval
  std::vector<Rat> cohomological;  // m' = m - k0/2 (half-integral for odd k0)
};

inline CriticalSet critical_points(const HilbertNewformData& f) {
  if (!f.parity_ok()) throw invalid_input("weight parity condition fails");
  CriticalSet out;
  // (k0 - kmin)/2 < m < (k0 + kmin)/2, strict
  Rat lo = Rat(f.k0 - f.kmin) / 2, hi = Rat(f.k0 + f.kmin) / 2;
  for (Int m = rat_floor(lo) + 1; Rat(m) < hi; ++m) {
    if (Rat(m) <= lo) continue;
    out.classical.push_back(m);
  }
  Rat half_k0 = Rat(f.k0) / 2;
  for (const Int& m : out.classical)
    out.cohomological.push_back(Rat(m) - half_k0);
  // weight-box cross-check for even parity: -a_j <= m' <= -b_j for all j
  if (f.k0 % 2 == 0) {
    auto mu = cohomological_weight(f.k, false);
    for (const Rat& mp : out.cohomological)
      for (const auto& [a, b] : mu.mu)
        if (mp < Rat(-a) || mp > Rat(-b))
          throw hmf_error("critical-set bijection check failed");
    // and conversely: every integer in the box is in the set
    long count = 0;
    Int amin = mu.mu[0].first;
    for (const auto& [a, b] : mu.mu) amin = std::min(amin, a);
    for (Int mp = -amin; mp <= amin; ++mp) ++count;
    if (amin >= 0 && count != (long)out.cohomological.size())
      throw hmf_error("critical-set bijection check failed");
  }
  return out;
}

inline CertComplex cert_div(const CertComplex& a, const CertComplex& b,
                            long prec) {
  CertComplex num = a * b.conj();
  CertReal d = b.abs2();
  double dv = std::abs(mpfr_get_d(d.v.raw(), MPFR_RNDN));
  if (dv <= d.rad) throw hmf_error("division by an uncertified zero");
  Real inv = Real::from_int(1, prec) / d.v;
  double irad = d.rad / (dv * (dv - d.rad)) + CertReal::ulp_of(inv);
  CertReal invc{inv, irad};
  return {num.re * invc, num.im * invc};
}

// (2 pi i)^e for integer e (possibly negative)
inline CertComplex two_pi_i_pow(long e, long prec) {
  Real twopi = Real::pi(prec) * Real::from_int(2, prec);
  Real magr = twopi.pow(Real::from_rat(Rat(e), prec));
  CertReal mag{magr, 4 * CertReal::ulp_of(magr)};
  CertReal zero{Real::from_int(0, prec), 0.0};
  long r = ((e % 4) + 4) % 4;
  CertComplex unit =
      r == 0   ? CertComplex{CertReal{Real::from_int(1, prec), 0.0}, zero}
      : r == 1 ? CertComplex{zero, CertReal{Real::from_int(1, prec), 0.0}}
      : r == 2 ? CertComplex{CertReal{Real::from_int(-1, prec), 0.0}, zero}
               : CertComplex{zero, CertReal{Real::from_int(-1, prec), 0.0}};
  return {unit.re * mag, unit.im * mag};
}

struct CriticalValueReport {
  Rat m_prime;                     // cohomological evaluation point
  Rat classical_s;                 // = m' + k0/2
  bool out_of_reach = false;       // outside the convergence region
  CertReal l_value;                // finite L at the classical point
  double l_tail = 0;
  CertComplex divisor;             // (2 pi i)^{d_inf + n m'} G(chi) period
  CertComplex ratio;
  std::vector<int> signature;      // (-1)^{m'} eps_chi per real place
};

inline CriticalValueReport normalized_critical_value(
    const HilbertNewformData& f, const HeckeCharacter* chi, const Rat& m_prime,
    const CertComplex& period, const Int& B, long prec, int embedding = 0) {
  CriticalSet cs = critical_points(f);
  bool crit = false;
  for (const Rat& mp : cs.cohomological)
    if (mp == m_prime) crit = true;
  if (!crit) throw invalid_input("point is not critical");
  if (m_prime.get_den() != 1)
    throw not_implemented(
        "period normalization needs an integral cohomological point");
  long mp = m_prime.get_num().get_si();
  CriticalValueReport out;
  out.m_prime = m_prime;
  out.classical_s = m_prime + Rat(f.k0) / 2;
  // signature bookkeeping: (-1)^{m'} eps_chi
  int sflip = (mp % 2 == 0) ? 1 : -1;
  for (int j = 0; j < f.F->degree(); ++j) {
    int ej = chi ? chi->signature[j] : 1;
    out.signature.push_back(sflip * ej);
  }
  auto mu = cohomological_weight(f.k, false);
  auto consts = archimedean_constants(mu);
  long d_inf = consts.d_inf.get_si();
  long n = f.F->degree();
  CertComplex gauss = CertComplex::exact_rat(Rat(1), prec);
  if (chi) gauss = gauss_sum(*chi, prec).value;
  out.divisor = two_pi_i_pow(d_inf + n * mp, prec) * gauss * period;
  DirichletSeries series =
      coefficients_from_euler(f, B, SeriesNorm::Classical);
  if (chi) series = twist_series(series, *chi);
  try {
    LValue lv = evaluate_finite_L(series, out.classical_s, prec, embedding);
    out.l_value = lv.value;
    out.l_tail = lv.tail;
  } catch (const out_of_reach&) {
    out.out_of_reach = true;
    return out;
  }
  CertComplex lc{out.l_value, CertReal{Real::from_int(0, prec), 0.0}};
  out.ratio = cert_div(lc, out.divisor, prec);
  return out;
}

// Symbolic instance of the period relations: which period symbol the twist
// relates to which, with its Gauss-sum and power-of-2-pi-i factors.
struct PeriodRelation {
  std::string lhs;          // p^{eps eps_xi}(Pi (x) xi)
  std::string rhs;          // p^{eps'}(Pi)
  bool gauss_factor = false;
  Rat two_pi_i_exponent = 0;  // from the weight-spread factor
};

inline PeriodRelation period_relation_bookkeeping(
    const HilbertNewformData& f, const HeckeCharacter* xi, long abs_twist,
    const std::vector<int>& eps) {
  if ((int)eps.size() != f.F->degree())
    throw invalid_input("signature has one entry per real place");
  auto fmt = [](const std::vector<int>& v) {
    std::string s = "(";
    for (int x : v) s += (x > 0 ? '+' : '-');
    return s + ")";
  };
  PeriodRelation out;
  std::vector<int> lhs_eps = eps, rhs_eps = eps;
  int flip = (abs_twist % 2 == 0) ? 1 : -1;
  for (size_t j = 0; j < eps.size(); ++j) {
    int exj = xi ? xi->signature[j] : 1;
    lhs_eps[j] = eps[j] * exj;
    rhs_eps[j] = eps[j] * exj * flip;
  }
  std::string twist = xi ? "xi" : "1";
  if (abs_twist != 0) twist += " |.|^" + std::to_string(abs_twist);
  out.lhs = "p^" + fmt(lhs_eps) + "(Pi (x) " + twist + ")";
  out.rhs = "p^" + fmt(rhs_eps) + "(Pi)";
  out.gauss_factor = xi != nullptr;
  Rat spread(0);
  for (long kj : f.k) spread += Rat(f.k0 - kj) / 2;
  out.two_pi_i_exponent = spread;
  return out;
}

}  // namespace hmf
