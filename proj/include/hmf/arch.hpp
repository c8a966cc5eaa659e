#pragma once

// Archimedean local data: discrete series D_l twisted by | |^t, their
// Gamma-factor atoms, Weil-parameter classification (algebraic / regular /
// infinity type), and numeric evaluation at real arguments.

#include <hmf/real.hpp>

#include <optional>
#include <vector>

namespace hmf {

inline Rat half(long n) { Rat r(n, 2); r.canonicalize(); return r; }

struct ArchLocalRep {
  long l = 1;  // discrete-series parameter, D_l has lowest weight l+1
  Rat t = 0;   // twist exponent, half-integral allowed

  ArchLocalRep() = default;
  ArchLocalRep(long ll, Rat tt) : l(ll), t(std::move(tt)) {
    // l = 0 is the limit of discrete series attached to weight-1 forms
    if (l < 0) throw invalid_input("discrete series parameter must be >= 0");
  }
};

// One atom 2^{e}(2pi)^{-(s+b)} Gamma(s+b) where e is 1 by default and 0
// when the normalization used by the L-series engine drops the constant.
struct GammaAtom {
  Rat shift;          // b
  bool with_two = true;

  bool operator==(const GammaAtom& o) const {
    return shift == o.shift && with_two == o.with_two;
  }
};

struct ArchLFactor {
  std::vector<GammaAtom> atoms;
};

inline GammaAtom arch_gamma_atom(const ArchLocalRep& r, bool drop_two) {
  return GammaAtom{r.t + half(r.l), !drop_two};
}

inline ArchLFactor arch_l_factor(const std::vector<ArchLocalRep>& reps,
                                 bool drop_two = true) {
  ArchLFactor f;
  for (const auto& r : reps) f.atoms.push_back(arch_gamma_atom(r, drop_two));
  return f;
}

// Numeric value of one atom at real s (Gamma poles at s + b in -N give up).
inline CertReal eval_gamma_atom(const GammaAtom& a, const Rat& s,
                                long prec) {
  Rat arg = s + a.shift;
  if (arg <= 0 && arg.get_den() == 1)
    throw invalid_input("Gamma-factor pole at this argument");
  Real x = Real::from_rat(arg, prec);
  Real twopi = Real::pi(prec) * Real::from_int(2, prec);
  Real v = twopi.pow(Real::from_rat(-arg, prec)) * x.gamma();
  if (a.with_two) v = v * Real::from_int(2, prec);
  return {v, 16 * CertReal::ulp_of(v)};
}

inline CertReal eval_arch_l_factor(const ArchLFactor& f, const Rat& s,
                                   long prec) {
  CertReal out{Real::from_int(1, prec), 0.0};
  for (const auto& a : f.atoms) out = out * eval_gamma_atom(a, s, prec);
  return out;
}

// Symbolic check of L_inf(s, Pi) = L_inf(s + shift, f): atoms agree after
// translating the argument, i.e. the shifts differ by exactly `shift`.
inline bool arch_shift_relation_holds(const ArchLFactor& unitary,
                                      const ArchLFactor& classical,
                                      const Rat& shift) {
  if (unitary.atoms.size() != classical.atoms.size()) return false;
  for (size_t j = 0; j < unitary.atoms.size(); ++j) {
    if (unitary.atoms[j].with_two != classical.atoms[j].with_two) return false;
    if (unitary.atoms[j].shift != classical.atoms[j].shift + shift)
      return false;
  }
  return true;
}

// Weil-parameter bookkeeping.  D_l | |^t has parameter exponents
// t ± l/2 (up to the half-integer normalization conventions below).
struct ArchClassification {
  bool algebraic = false;
  bool half_twist_algebraic = false;
  std::optional<std::vector<std::pair<Int, Int>>> infinity_type;
  bool regular = false;
};

inline bool is_half_integer(const Rat& x) { return x.get_den() == 2; }

inline ArchClassification classify_arch(const std::vector<ArchLocalRep>& reps) {
  ArchClassification out;
  out.algebraic = true;
  out.half_twist_algebraic = true;
  for (const auto& r : reps) {
    Rat e1 = r.t + half(r.l), e2 = r.t - half(r.l);
    if (!(is_half_integer(e1) && is_half_integer(e2))) out.algebraic = false;
    // the | |^{1/2}-twisted family has exponents e + 1/2; those sit in
    // 1/2 + Z exactly when e is an integer
    if (!(e1.get_den() == 1 && e2.get_den() == 1))
      out.half_twist_algebraic = false;
  }
  if (out.algebraic) {
    // infinity type of Pi (x) | |^{-1/2}: integer exponent pairs
    std::vector<std::pair<Int, Int>> ps;
    out.regular = true;
    for (const auto& r : reps) {
      Rat p = r.t + half(r.l) - half(1);
      Rat q = r.t - half(r.l) - half(1);
      ps.emplace_back(Int(p.get_num()), Int(q.get_num()));
      if (ps.back().first == ps.back().second) out.regular = false;
    }
    out.infinity_type = std::move(ps);
  } else {
    // parameter exponents differ by l, so regularity is just l >= 1
    out.regular = true;
    for (const auto& r : reps)
      if (r.l == 0) out.regular = false;
  }
  return out;
}

}  // namespace hmf
