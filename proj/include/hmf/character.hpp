#pragma once

// Residue characters on (O/n)^x, their conductors and local components, and
// finite-order Hecke characters: an adelization of a residue character is
// pinned down by the convention
//     prod_p omega*(p)^{v_p(alpha)} * omega(alpha mod n) = 1
// for totally positive alpha coprime to n, plus a choice among the h+
// extensions (a character of the narrow class group).

#include <hmf/narrow.hpp>
#include <hmf/residue.hpp>

#include <memory>

namespace hmf {

struct IdealFactor {
  PrimeIdeal prime;
  long exponent;
};

inline std::vector<IdealFactor> factor_ideal(const FracIdeal& I) {
  if (!I.is_integral()) throw invalid_input("factor_ideal: not integral");
  const TotallyRealField* F = I.field();
  Rat nq = I.norm();
  std::vector<IdealFactor> out;
  if (nq == 1) return out;
  for (auto& [p, e] : factor_int(nq.get_num())) {
    for (auto& P : factor_prime(F, p)) {
      long v = ideal_valuation(I, P);
      if (v > 0) out.push_back({P, v});
    }
  }
  return out;
}

class ResidueCharacter {
 public:
  ResidueCharacter() = default;
  // exps[i] is the exponent on unit generator i: the value there is
  // zeta_{ord_i}^{exps[i]}.
  ResidueCharacter(std::shared_ptr<const ResidueRing> R, std::vector<long> exps)
      : R_(std::move(R)), exps_(std::move(exps)) {
    if (exps_.size() != R_->unit_generators().size())
      throw invalid_input("character exponent count mismatch");
    for (size_t i = 0; i < exps_.size(); ++i) {
      long o = R_->unit_gen_orders()[i];
      exps_[i] = ((exps_[i] % o) + o) % o;
    }
  }

  const ResidueRing& ring() const { return *R_; }
  std::shared_ptr<const ResidueRing> ring_ptr() const { return R_; }
  const std::vector<long>& exponents() const { return exps_; }

  // multiplicative order of the character
  long order() const {
    long m = 1;
    for (size_t i = 0; i < exps_.size(); ++i) {
      long o = R_->unit_gen_orders()[i];
      long g = std::gcd(exps_[i], o);
      m = std::lcm(m, o / g);
    }
    return m;
  }

  Cyclo value_at_unit_pos(size_t pos) const {
    const auto& dl = R_->dlog(pos);
    Cyclo v = Cyclo::from_rat(Rat(1));
    for (size_t i = 0; i < exps_.size(); ++i) {
      long o = R_->unit_gen_orders()[i];
      v = v * Cyclo::root_of_unity((unsigned long)o, exps_[i] * dl[i]);
    }
    return v;
  }

  // the value as a rational argument: value = e^{2 pi i arg}, 0 <= arg < 1
  Rat arg_at_unit_pos(size_t pos) const {
    const auto& dl = R_->dlog(pos);
    Rat t(0);
    for (size_t i = 0; i < exps_.size(); ++i) {
      long o = R_->unit_gen_orders()[i];
      Rat term(exps_[i] * dl[i], o);
      term.canonicalize();
      t += term;
    }
    t -= Rat(rat_floor(t));
    t.canonicalize();
    return t;
  }

  Cyclo value(const FieldElem& x) const {
    size_t idx = R_->reduce_coprime(x);
    if (!R_->is_unit(idx)) throw invalid_input("character at non-unit");
    return value_at_unit_pos(R_->unit_position(idx));
  }

  bool is_trivial_on(const std::vector<size_t>& unit_positions) const {
    Cyclo one = Cyclo::from_rat(Rat(1));
    for (size_t p : unit_positions)
      if (!(value_at_unit_pos(p) == one)) return false;
    return true;
  }

 private:
  std::shared_ptr<const ResidueRing> R_;
  std::vector<long> exps_;
};

// Conductor of a residue character, as an integral ideal, together with the
// prime factorization of the modulus for reuse.
struct ConductorData {
  FracIdeal conductor;
  std::vector<IdealFactor> modulus_factors;
  std::vector<long> conductor_exponents;  // aligned with modulus_factors
};

inline ConductorData conductor_of(const ResidueCharacter& chi) {
  const ResidueRing& R = chi.ring();
  const TotallyRealField* F = R.field();
  ConductorData out;
  out.modulus_factors = factor_ideal(R.modulus());
  out.conductor_exponents.assign(out.modulus_factors.size(), 0);
  auto kernel_trivial = [&](const FracIdeal& m) {
    // units u = 1 mod m
    std::vector<size_t> ker;
    for (size_t pos = 0; pos < R.unit_count(); ++pos) {
      FieldElem u = R.elem(R.units()[pos]);
      if (m.contains(F->sub(u, F->one()))) ker.push_back(pos);
    }
    return chi.is_trivial_on(ker);
  };
  for (size_t i = 0; i < out.modulus_factors.size(); ++i) {
    long a = out.modulus_factors[i].exponent;
    long c = a;
    while (c > 0) {
      // candidate: lower prime i to c-1, others at full exponent
      FracIdeal m = FracIdeal::ring_of_integers(F);
      for (size_t j = 0; j < out.modulus_factors.size(); ++j) {
        long e = (j == i) ? c - 1 : out.modulus_factors[j].exponent;
        for (long t = 0; t < e; ++t) m = m.mul(out.modulus_factors[j].prime.ideal);
      }
      if (!kernel_trivial(m)) break;
      --c;
    }
    out.conductor_exponents[i] = c;
  }
  FracIdeal cond = FracIdeal::ring_of_integers(F);
  for (size_t i = 0; i < out.modulus_factors.size(); ++i)
    for (long t = 0; t < out.conductor_exponents[i]; ++t)
      cond = cond.mul(out.modulus_factors[i].prime.ideal);
  out.conductor = cond;
  return out;
}

// The primitive character mod the conductor inducing chi: value table on
// (O/cond)^x obtained by projecting units of O/n.
struct PrimitiveCharacter {
  std::shared_ptr<const ResidueRing> ring;  // mod conductor
  std::vector<Cyclo> values;                // per unit position of `ring`
  std::vector<Rat> args;                    // value = e^{2 pi i args[pos]}
  FracIdeal conductor;

  Cyclo value_at_pos(size_t pos) const { return values[pos]; }
  Cyclo value(const FieldElem& x) const {
    size_t idx = ring->reduce_coprime(x);
    if (!ring->is_unit(idx)) throw invalid_input("primitive char at non-unit");
    return values[ring->unit_position(idx)];
  }
  Rat arg(const FieldElem& x) const {
    size_t idx = ring->reduce_coprime(x);
    if (!ring->is_unit(idx)) throw invalid_input("primitive char at non-unit");
    return args[ring->unit_position(idx)];
  }
};

inline PrimitiveCharacter primitive_part(const ResidueCharacter& chi,
                                         const ConductorData& cd) {
  const ResidueRing& R = chi.ring();
  PrimitiveCharacter out;
  out.conductor = cd.conductor;
  out.ring = std::make_shared<ResidueRing>(R.field(), cd.conductor);
  out.values.assign(out.ring->unit_count(), Cyclo());
  out.args.assign(out.ring->unit_count(), Rat(0));
  std::vector<char> seen(out.ring->unit_count(), 0);
  for (size_t pos = 0; pos < R.unit_count(); ++pos) {
    FieldElem u = R.elem(R.units()[pos]);
    size_t idx = out.ring->reduce(u);
    if (!out.ring->is_unit(idx)) throw hmf_error("projection lost unitness");
    size_t p2 = out.ring->unit_position(idx);
    if (!seen[p2]) {
      out.values[p2] = chi.value_at_unit_pos(pos);
      out.args[p2] = chi.arg_at_unit_pos(pos);
      seen[p2] = 1;
    }
  }
  for (char s : seen)
    if (!s) throw hmf_error("primitive projection not surjective");
  return out;
}

// Local component at P of a primitive character: a value table on
// (O/P^c)^x, built through the CRT lift  alpha = u*b + a  with
// 1 = a + b, a in P^c, b in cofactor.
struct LocalCharacter {
  std::shared_ptr<const ResidueRing> ring;  // mod P^c
  std::vector<Cyclo> values;                // per unit position
  std::vector<Rat> args;                    // value = e^{2 pi i args[pos]}
  long c = 0;

  Cyclo value_at_pos(size_t pos) const { return values[pos]; }
};

inline LocalCharacter local_component(const PrimitiveCharacter& chi,
                                      const PrimeIdeal& P, long c) {
  const TotallyRealField* F = chi.ring->field();
  LocalCharacter out;
  out.c = c;
  FracIdeal Pc = P.ideal.pow(c);
  out.ring = std::make_shared<ResidueRing>(F, Pc);
  // cofactor of P^c inside the conductor
  FracIdeal cof = FracIdeal::ring_of_integers(F);
  for (auto& f : factor_ideal(chi.conductor)) {
    if (f.prime.ideal == P.ideal) continue;
    for (long t = 0; t < f.exponent; ++t) cof = cof.mul(f.prime.ideal);
  }
  FieldElem a = F->zero(), b = F->one();
  if (!(cof == FracIdeal::ring_of_integers(F))) {
    auto ab = FracIdeal::split_one(Pc, cof);
    a = ab.first;
    b = ab.second;
  }
  out.values.assign(out.ring->unit_count(), Cyclo());
  out.args.assign(out.ring->unit_count(), Rat(0));
  for (size_t pos = 0; pos < out.ring->unit_count(); ++pos) {
    FieldElem u = out.ring->elem(out.ring->units()[pos]);
    FieldElem alpha = F->add(F->mul(u, b), a);
    out.values[pos] = chi.value(alpha);
    out.args[pos] = chi.arg(alpha);
  }
  return out;
}

// ---- Hecke characters -----------------------------------------------------

class HeckeCharacter {
 public:
  const TotallyRealField* F = nullptr;
  ResidueCharacter omega;
  std::shared_ptr<const NarrowClassGroup> G;
  int extension_index = 1;  // 1..h+

  FracIdeal conductor;
  ConductorData conductor_data;
  std::vector<int> signature;  // chi_{eta_j}(-1) per real place

  // cyclic narrow group data (trivial when h+ = 1)
  FracIdeal gen_rep;   // coprime-to-n representative of a generator class
  long gen_order = 1;  // = h+
  Cyclo c_gen;         // omega*(gen_rep)

  // omega*(I) for fractional I coprime to the modulus
  Cyclo ideal_value(const FracIdeal& I) const {
    const FracIdeal& n = omega.ring().modulus();
    for (long j = 0; j < gen_order; ++j) {
      FracIdeal tj = gen_rep.pow(j);
      FracIdeal K = G->mul_inverse(I, tj);
      if (auto alpha = narrow_principal_generator_frac(K, G->units)) {
        (void)n;
        Cyclo v = omega.value(*alpha).conj();  // omega(alpha)^{-1}
        return v * c_gen.pow(j);
      }
    }
    throw hmf_error("ideal_value: class reduction failed");
  }

  Cyclo ideal_value_prime(const PrimeIdeal& P) const {
    return ideal_value(P.ideal);
  }
};

// Totally positive units modulo n generate: epsilon^2 always; epsilon itself
// when totally positive.  (Degree 1: only +1.)
inline std::vector<FieldElem> totally_positive_unit_generators(
    const TotallyRealField* F, const UnitGroup& U) {
  if (F->degree() == 1) return {};
  FieldElem eps = U.fundamental;
  if (F->is_totally_positive(eps)) return {eps};
  FieldElem e2 = F->mul(eps, eps);
  if (!F->is_totally_positive(e2)) throw hmf_error("eps^2 not totally positive");
  return {e2};
}

// Small-box search for an element with the requested sign pattern, coprime
// to n.
inline FieldElem element_with_signs(const TotallyRealField* F,
                                    const FracIdeal& n,
                                    const std::vector<int>& want) {
  if (F->degree() == 1) {
    for (long a = 1; a < 1000; ++a) {
      FieldElem x = F->from_rat(Rat(want[0] * a));
      if (FracIdeal::principal(F, x).is_coprime_to(n)) return x;
    }
    throw out_of_reach("sign pattern search (degree 1)");
  }
  FieldElem w = F->basis_element(1);
  for (long box = 1; box <= 64; box *= 2) {
    for (long a = -box; a <= box; ++a)
      for (long b = -box; b <= box; ++b) {
        if (a == 0 && b == 0) continue;
        FieldElem x = F->add(F->from_rat(Rat(a)), F->scale(Rat(b), w));
        if (F->embedding_signs(x) != want) continue;
        if (FracIdeal::principal(F, x).is_coprime_to(n)) return x;
      }
  }
  throw out_of_reach("sign pattern search");
}

// Adelize a residue character: check the obstruction (triviality on totally
// positive units), then pick the extension_index-th extension (1..h+).
inline HeckeCharacter adelize(const TotallyRealField* F,
                              const ResidueCharacter& omega,
                              std::shared_ptr<const NarrowClassGroup> G,
                              int extension_index) {
  HeckeCharacter chi;
  chi.F = F;
  chi.omega = omega;
  chi.G = std::move(G);
  chi.extension_index = extension_index;
  if (extension_index < 1 || Int(extension_index) > chi.G->h_plus)
    throw invalid_input("extension index out of range (1..h+)");

  Cyclo one = Cyclo::from_rat(Rat(1));
  for (auto& u : totally_positive_unit_generators(F, chi.G->units))
    if (!(omega.value(u) == one))
      throw invalid_input(
          "character is not trivial on totally positive units: no adelization");

  chi.conductor_data = conductor_of(omega);
  chi.conductor = chi.conductor_data.conductor;

  // narrow class extension data
  chi.gen_order = chi.G->h_plus.get_si();
  if (chi.gen_order > 1) {
    if (!chi.G->cyclic)
      throw not_implemented("adelize: non-cyclic narrow class group");
    auto reps = coprime_representatives(*chi.G, omega.ring().modulus());
    chi.gen_rep = reps[chi.G->generator_rep];
    // t^m = (beta), beta >> 0
    FracIdeal tm = chi.gen_rep.pow(chi.gen_order);
    auto beta = narrow_principal_generator_frac(tm, chi.G->units);
    if (!beta) throw hmf_error("generator power not narrowly principal");
    Cyclo wb = omega.value(*beta);
    // wb is a root of unity zeta_M^k; solve c^m = wb^{-1}
    long m = chi.gen_order;
    unsigned long M = wb.order();
    long k = 0;
    {
      bool found = false;
      for (long t = 0; t < (long)M && !found; ++t)
        if (Cyclo::root_of_unity(M, t) == wb) {
          k = t;
          found = true;
        }
      if (!found) throw hmf_error("omega(beta) is not a root of unity");
    }
    long j = -k + (long)M * (extension_index - 1);
    chi.c_gen = Cyclo::root_of_unity(M * (unsigned long)m, j);
  } else {
    chi.gen_rep = FracIdeal::ring_of_integers(F);
    chi.c_gen = one;
  }

  // signature: for each real place j, pick alpha negative exactly there;
  // eps_j = (omega(alpha) * omega*((alpha)))^{-1}, forced to be +-1.
  chi.signature.assign(F->degree(), 1);
  for (int j = 0; j < F->degree(); ++j) {
    std::vector<int> want(F->degree(), 1);
    want[j] = -1;
    FieldElem alpha =
        element_with_signs(F, omega.ring().modulus(), want);
    Cyclo v = omega.value(alpha) * chi.ideal_value(
                                       FracIdeal::principal(F, alpha));
    Cyclo inv = v.conj();
    if (inv == one)
      chi.signature[j] = 1;
    else if (inv == Cyclo::from_rat(Rat(-1)))
      chi.signature[j] = -1;
    else
      throw hmf_error("signature value is not +-1");
  }
  return chi;
}

}  // namespace hmf
