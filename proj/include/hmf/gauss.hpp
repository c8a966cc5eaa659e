#pragma once

// Gauss sums of finite-order characters: product over ramified primes of
//   G_P = sum_{u in (O/P^c)^x} chi_P(u)^{-1} psi_P(u y),   ord_P(y) = -c - r_P
// with r_P = ord_P of the different and psi built from Tate's lambda via a
// global CRT element, all in exact cyclotomic arithmetic until the final
// certified complex embedding.

#include <hmf/character.hpp>

namespace hmf {

struct GaussSumResult {
  Cyclo exact;          // the sum in Q(zeta_N)
  CertComplex value;    // certified embedding
  Int conductor_norm;   // N(cond); |G|^2 should equal this for primitive chi
  mpfr_prec_t prec;
};

// Local Gauss sum at P with chi_P given by a LocalCharacter table.
inline Cyclo local_gauss_sum(const TotallyRealField* F, const PrimeIdeal& P,
                             const LocalCharacter& chiP, long r) {
  long c = chiP.c;
  long k = c + r;
  // global element d with v_P(d) = k exactly, v_Q(d) = 0 at other Q | p
  FieldElem w = F->pow(P.uniformizer, k);
  FieldElem d = w, e = F->one();
  auto others = factor_prime(F, P.p);
  FracIdeal B = FracIdeal::ring_of_integers(F);
  bool has_others = false;
  for (auto& Q : others) {
    if (Q.ideal == P.ideal) continue;
    B = B.mul(Q.ideal);
    has_others = true;
  }
  if (has_others) {
    FracIdeal Pk1 = P.ideal.pow(k + 1);
    auto [a, b] = FracIdeal::split_one(Pk1, B);
    d = F->add(w, F->mul(F->sub(F->one(), w), a));
    e = b;
  }
  FieldElem dinv = F->inverse(d);
  // every term is a root of unity e^{2 pi i (arg - argchi)}; collect the
  // exponents over a common denominator and reduce mod Phi once at the end
  std::vector<Rat> exps;
  Int den = 1;
  for (size_t pos = 0; pos < chiP.ring->unit_count(); ++pos) {
    FieldElem u = chiP.ring->elem(chiP.ring->units()[pos]);
    FieldElem z = F->mul(F->mul(u, e), dinv);
    Rat t = lambda_p(F->trace(z), P.p) - chiP.args[pos];
    t.canonicalize();
    exps.push_back(t);
    den = lcm(den, t.get_den());
  }
  unsigned long n = den.get_ui();
  std::vector<long> ks;
  ks.reserve(exps.size());
  for (const Rat& t : exps)
    ks.push_back(Int(t.get_num() * Int(den / t.get_den())).get_si());
  return Cyclo::sum_of_roots(n, ks);
}

inline GaussSumResult gauss_sum(const TotallyRealField* F,
                                const PrimitiveCharacter& chi,
                                mpfr_prec_t prec) {
  GaussSumResult out;
  out.prec = prec;
  FracIdeal D = different_ideal(F);
  Cyclo total = Cyclo::from_rat(Rat(1));
  Rat nc = chi.conductor.norm();
  out.conductor_norm = nc.get_num();
  for (auto& f : factor_ideal(chi.conductor)) {
    long r = ideal_valuation(D, f.prime);
    LocalCharacter chiP = local_component(chi, f.prime, f.exponent);
    total = total * local_gauss_sum(F, f.prime, chiP, r);
  }
  out.exact = total;
  out.value = total.embed(prec);
  return out;
}

inline GaussSumResult gauss_sum(const HeckeCharacter& chi, mpfr_prec_t prec) {
  PrimitiveCharacter prim = primitive_part(chi.omega, chi.conductor_data);
  return gauss_sum(chi.F, prim, prec);
}

}  // namespace hmf
