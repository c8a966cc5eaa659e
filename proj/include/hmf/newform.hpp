#pragma once

// Eigendata of a Hilbert newform and the dictionary to its automorphic
// representation: validation of the Hecke identities, attachment of local
// data, Galois conjugation, equivariance, rationality fields.
//
// Coefficients are stored adelically normalized: C(m) = N(m)^{k0/2} c(m,f),
// so C(O) = 1 and the recursion at good primes reads
//     C(P^{r+1}) = C(P) C(P^r) - omega*(P) N(P)^{k0-1} C(P^{r-1}).

#include <hmf/character.hpp>
#include <hmf/coeffield.hpp>
#include <hmf/local.hpp>
#include <hmf/arch.hpp>

#include <map>
#include <optional>
#include <sstream>

namespace hmf {

// rational value of a root-of-unity expression, when it has one
inline Rat cyclo_to_rat(const Cyclo& z) {
  if (z.is_zero()) return Rat(0);
  const QPoly& r = z.rep();
  if (r.degree() > 0) throw invalid_input("character value is irrational");
  return r[0];
}

struct IdealEntry {
  FracIdeal ideal;
  Int norm;
  std::vector<IdealFactor> factors;
};

// all integral ideals of norm <= B, smallest norms first
inline std::vector<IdealEntry> enumerate_ideals(const TotallyRealField* F,
                                                const Int& B) {
  std::vector<PrimeIdeal> primes;
  for (Int p = 2; p <= B; p = next_prime_after(p))
    for (auto& P : factor_prime(F, p))
      if (P.norm() <= B) primes.push_back(P);
  std::vector<IdealEntry> out;
  out.push_back({FracIdeal::ring_of_integers(F), Int(1), {}});
  for (const auto& P : primes) {
    size_t base = out.size();
    Int q = P.norm();
    for (size_t i = 0; i < base; ++i) {
      if (out[i].norm * q > B) continue;
      IdealEntry cur = out[i];
      long e = 0;
      while (cur.norm * q <= B) {
        cur.norm *= q;
        cur.ideal = cur.ideal.mul(P.ideal);
        ++e;
        IdealEntry next = cur;
        next.factors.push_back({P, e});
        out.push_back(std::move(next));
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const IdealEntry& a, const IdealEntry& b) {
              if (a.norm != b.norm) return a.norm < b.norm;
              return a.ideal.key() < b.ideal.key();
            });
  return out;
}

struct HilbertNewformData {
  const TotallyRealField* F = nullptr;
  std::vector<long> k;      // weights, one per real place
  long k0 = 0, kmin = 0;    // max and min weight
  FracIdeal level;
  std::optional<HeckeCharacter> neben;  // adelized nebentypus (or trivial)
  std::shared_ptr<const CoefField> Qf;  // coefficient field
  std::map<std::string, NFElem> C;      // ideal key -> C(m)
  Int bound = 0;                        // norms covered by the table

  void finish() {
    if (k.empty() || (int)k.size() != F->degree())
      throw invalid_input("need one weight per real place");
    for (long kj : k)
      if (kj < 1) throw invalid_input("weights must be >= 1");
    k0 = *std::max_element(k.begin(), k.end());
    kmin = *std::min_element(k.begin(), k.end());
  }

  bool parity_ok() const {
    for (long kj : k)
      if ((kj - k0) % 2 != 0) return false;
    return true;
  }

  const NFElem* coeff(const FracIdeal& I) const {
    auto it = C.find(I.key());
    return it == C.end() ? nullptr : &it->second;
  }

  // nebentypus value omega*(P); the dictionary path needs it in Q(f), so
  // only rational (order <= 2) nebentypus values are admitted here
  Rat omega_star(const FracIdeal& I) const {
    if (!neben) return Rat(1);
    return cyclo_to_rat(neben->ideal_value(I));
  }
};

// Fill the coefficient table from prime values by the Hecke recursion at
// good primes (with omega*(P) N(P)^{k0-1}) and C(P^{r+1}) = C(P) C(P^r) at
// primes dividing the level, then multiplicativity.
inline void synthesize_coefficients(HilbertNewformData& f) {
  f.C[FracIdeal::ring_of_integers(f.F).key()] = NFElem(Rat(1));
  for (const auto& e : enumerate_ideals(f.F, f.bound)) {
    if (e.factors.empty()) continue;
    if (f.C.count(e.ideal.key())) continue;
    NFElem val(Rat(1));
    for (const auto& [P, exp] : e.factors) {
      const NFElem* cp = f.coeff(P.ideal);
      if (!cp) throw invalid_input("missing prime coefficient at " +
                                   P.ideal.key());
      bool good = P.ideal.is_coprime_to(f.level);
      Rat wN = good ? f.omega_star(P.ideal) * Rat(pow_int(P.norm(), f.k0 - 1))
                    : Rat(0);
      NFElem prev(Rat(1)), cur = *cp;
      for (long r = 1; r < exp; ++r) {
        NFElem next = *cp * cur - NFElem(wN) * prev;
        prev = cur;
        cur = next;
      }
      val = val * cur;
    }
    f.C[e.ideal.key()] = val;
  }
}

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

inline ValidationReport validate_newform_data(const HilbertNewformData& f) {
  ValidationReport rep;
  const NFElem* c1 = f.coeff(FracIdeal::ring_of_integers(f.F));
  if (!c1 || !(*c1 == NFElem(Rat(1))))
    rep.problems.push_back("C(O) != 1");
  if (f.neben) {
    const FracIdeal& m = f.neben->omega.ring().modulus();
    bool divides = true;
    for (auto& b : f.level.lattice_basis())
      if (!m.contains(b)) divides = false;
    if (!divides) {
      rep.problems.push_back("nebentypus modulus does not divide the level");
      return rep;  // omega* is not defined at enough primes to continue
    }
  }
  auto ideals = enumerate_ideals(f.F, f.bound);
  std::map<std::string, const IdealEntry*> by_key;
  for (auto& e : ideals) by_key[e.ideal.key()] = &e;
  // coprime multiplicativity on every stored pair
  for (size_t i = 1; i < ideals.size(); ++i) {
    for (size_t j = i; j < ideals.size(); ++j) {
      const auto& A = ideals[i];
      const auto& B = ideals[j];
      if (A.norm * B.norm > f.bound) break;
      if (!A.ideal.is_coprime_to(B.ideal)) continue;
      const NFElem* ca = f.coeff(A.ideal);
      const NFElem* cb = f.coeff(B.ideal);
      const NFElem* cab = f.coeff(A.ideal.mul(B.ideal));
      if (!ca || !cb || !cab) continue;
      if (!(*cab == *ca * *cb))
        rep.problems.push_back("multiplicativity fails at " + A.ideal.key() +
                               " * " + B.ideal.key());
    }
  }
  // Hecke recursion at unramified prime powers
  for (const auto& e : ideals) {
    if (e.factors.size() != 1 || e.factors[0].exponent != 1) continue;
    const PrimeIdeal& P = e.factors[0].prime;
    if (!P.ideal.is_coprime_to(f.level)) continue;
    Rat wN = f.omega_star(P.ideal) * Rat(pow_int(P.norm(), f.k0 - 1));
    FracIdeal power = P.ideal;
    for (long r = 1;; ++r) {
      FracIdeal next = power.mul(P.ideal);
      if (Rat(pow_int(P.norm(), r + 1)) > Rat(f.bound)) break;
      const NFElem* cp = f.coeff(P.ideal);
      const NFElem* cr = f.coeff(power);
      const NFElem* cr1 = f.coeff(next);
      const NFElem* crm =
          r == 1 ? c1 : f.coeff(power.mul(P.inv));
      if (cp && cr && cr1 && crm) {
        if (!(*cr1 == *cp * *cr - NFElem(wN) * *crm)) {
          std::ostringstream os;
          os << "Hecke recursion fails at " << P.ideal.key() << "^" << r + 1;
          rep.problems.push_back(os.str());
        }
      }
      power = next;
    }
  }
  return rep;
}

struct AutomorphicRepData {
  const TotallyRealField* F = nullptr;
  std::vector<ArchLocalRep> arch;  // D_{k_j - 1}
  FracIdeal conductor;
  std::map<std::string, NonArchRep<NFElem>> finite;  // prime key -> local rep

  const NonArchRep<NFElem>* local_at(const PrimeIdeal& P) const {
    auto it = finite.find(P.ideal.key());
    return it == finite.end() ? nullptr : &it->second;
  }
};

inline AutomorphicRepData attach_representation(const HilbertNewformData& f) {
  auto rep = validate_newform_data(f);
  if (!rep.ok())
    throw invalid_input("newform data fails validation: " + rep.problems[0]);
  AutomorphicRepData out;
  out.F = f.F;
  for (long kj : f.k) out.arch.emplace_back(kj - 1, Rat(0));
  out.conductor = f.level;
  for (Int p = 2; p <= f.bound; p = next_prime_after(p)) {
    for (auto& P : factor_prime(f.F, p)) {
      Int q = P.norm();
      if (q > f.bound) continue;
      if (!P.ideal.is_coprime_to(f.level)) {
        out.finite.emplace(P.ideal.key(),
                           NonArchRep<NFElem>::other(
                               q, ideal_valuation(f.level, P)));
        continue;
      }
      const NFElem* cp = f.coeff(P.ideal);
      if (!cp) continue;
      // alpha + beta = q^{1/2} c(P,f) = C(P) Q^{1-k0};  alpha beta = omega*(P)
      QExt<NFElem> sum =
          QExt<NFElem>::half_power(q, 1 - f.k0) * QExt<NFElem>::from_base(*cp, q);
      QExt<NFElem> prod = QExt<NFElem>::from_rat(f.omega_star(P.ideal), q);
      out.finite.emplace(P.ideal.key(),
                         NonArchRep<NFElem>::unramified_invariants(q, sum, prod));
    }
  }
  return out;
}

struct GaloisAction {
  QPoly gen_image;             // image of the generator of Q(f)
  std::vector<int> place_perm; // permutation of real places (empty: identity)
};

inline GaloisAction identity_action(const HilbertNewformData& f) {
  GaloisAction s;
  s.gen_image = QPoly({Rat(0), Rat(1)});
  (void)f;
  return s;
}

inline void check_action(const HilbertNewformData& f, const GaloisAction& s) {
  if (!f.Qf) {
    // rational coefficient field: only the identity acts
    if (!(s.gen_image == QPoly::x()))
      throw invalid_input("rational coefficient field has no automorphisms");
    return;
  }
  // g(sigma(theta)) must vanish mod g
  QPoly g = f.Qf->g;
  QPoly acc({Rat(0)});
  for (int i = g.degree(); i >= 0; --i)
    acc = (acc * s.gen_image) % g + QPoly({g[i]});
  if (!acc.is_zero())
    throw invalid_input("generator image is not a root of the defining poly");
  if (!s.place_perm.empty()) {
    if ((int)s.place_perm.size() != (int)f.k.size())
      throw invalid_input("place permutation has wrong size");
    std::vector<bool> seen(f.k.size(), false);
    for (int j : s.place_perm) {
      if (j < 0 || j >= (int)f.k.size() || seen[j])
        throw invalid_input("place permutation is not a bijection");
      seen[j] = true;
    }
  }
}

inline HilbertNewformData galois_conjugate(const HilbertNewformData& f,
                                           const GaloisAction& s) {
  check_action(f, s);
  HilbertNewformData out = f;
  if (!s.place_perm.empty()) {
    for (size_t j = 0; j < f.k.size(); ++j) out.k[j] = f.k[s.place_perm[j]];
    out.finish();
  }
  for (auto& [key, val] : out.C) val = val.apply_auto(s.gen_image);
  auto rep = validate_newform_data(out);
  if (!rep.ok())
    throw invalid_input("conjugate data fails validation: " + rep.problems[0]);
  return out;
}

struct EquivarianceReport {
  bool ok = true;
  std::string offending_prime;
};

// sigma'-equivariance of the dictionary on algebraic Satake invariants:
// the half-powers of q are paired into integral powers before sigma acts.
// The pair form asks whether g carries the sigma-image of f's local data.
inline EquivarianceReport equivariance_check(const HilbertNewformData& f,
                                             const HilbertNewformData& g,
                                             const GaloisAction& s,
                                             const Int& prime_bound) {
  if (!f.parity_ok()) throw invalid_input("weight parity condition fails");
  AutomorphicRepData left = attach_representation(f);
  AutomorphicRepData right = attach_representation(g);
  EquivarianceReport rep;
  for (const auto& [key, lrep] : left.finite) {
    if (lrep.type != LocalType::UnramifiedPS) continue;
    if (lrep.q > prime_bound) continue;
    auto it = right.finite.find(key);
    if (it == right.finite.end()) continue;
    const auto& rrep = it->second;
    // scale sum by Q^{k0-1}: lands in Q(f), where sigma acts honestly
    QExt<NFElem> lsum = lrep.sum * QExt<NFElem>::half_power(lrep.q, f.k0 - 1);
    QExt<NFElem> rsum = rrep.sum * QExt<NFElem>::half_power(rrep.q, f.k0 - 1);
    if (!lsum.b.is_zero() || !rsum.b.is_zero())
      throw hmf_error("scaled Satake invariant left the coefficient field");
    bool good = rsum.a == lsum.a.apply_auto(s.gen_image) &&
                rrep.prod.a == lrep.prod.a.apply_auto(s.gen_image) &&
                rrep.prod.b == lrep.prod.b.apply_auto(s.gen_image);
    if (!good) {
      rep.ok = false;
      rep.offending_prime = key;
      return rep;
    }
  }
  return rep;
}

inline EquivarianceReport equivariance_check(const HilbertNewformData& f,
                                             const GaloisAction& s,
                                             const Int& prime_bound) {
  return equivariance_check(f, galois_conjugate(f, s), s, prime_bound);
}

struct RationalityField {
  int degree = 1;        // degree of the generated subfield over Q
  QPoly defining;        // minimal polynomial of a primitive element
  bool caveat = false;   // proper subfield of the ambient: bound may be low
};

inline bool in_generated_span(const NFElem& x, const NFElem& y) {
  // is y a polynomial in x?  solve on the power basis of the ambient field
  QPoly mp = minimal_polynomial(x);
  int d = mp.degree();
  auto ambient = x.field() ? x.field() : y.field();
  int n = ambient ? ambient->degree() : 1;
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(d, Rat(0)));
  std::vector<Rat> rhs(n, Rat(0));
  NFElem p(Rat(1));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= p.rep().degree(); ++j) A[j][i] = p.rep()[j];
    p = p * x;
  }
  for (int j = 0; j <= y.rep().degree(); ++j) rhs[j] = y.rep()[j];
  int row = 0;
  for (int col = 0; col < d && row < n; ++col) {
    int piv = -1;
    for (int j = row; j < n; ++j)
      if (A[j][col] != 0) { piv = j; break; }
    if (piv < 0) continue;
    std::swap(A[piv], A[row]);
    std::swap(rhs[piv], rhs[row]);
    Rat inv = Rat(1) / A[row][col];
    for (int i = col; i < d; ++i) A[row][i] *= inv;
    rhs[row] *= inv;
    for (int j = 0; j < n; ++j) {
      if (j == row || A[j][col] == 0) continue;
      Rat fct = A[j][col];
      for (int i = col; i < d; ++i) A[j][i] -= fct * A[row][i];
      rhs[j] -= fct * rhs[row];
    }
    ++row;
  }
  for (int j = row; j < n; ++j)
    if (rhs[j] != 0) return false;
  return true;
}

inline RationalityField rationality_field(const HilbertNewformData& f,
                                          const Int& prime_bound) {
  std::vector<NFElem> gens;
  for (Int p = 2; p <= prime_bound; p = next_prime_after(p))
    for (auto& P : factor_prime(f.F, p)) {
      if (P.norm() > prime_bound) continue;
      if (const NFElem* c = f.coeff(P.ideal)) gens.push_back(*c);
    }
  NFElem prim(Rat(0));
  for (const auto& g : gens) {
    if (in_generated_span(prim, g)) continue;
    // extend: search for a primitive element of the compositum
    for (long j = 1;; ++j) {
      NFElem cand = prim + NFElem(Rat(j)) * g;
      if (in_generated_span(cand, prim) && in_generated_span(cand, g)) {
        prim = cand;
        break;
      }
      if (j > 64) throw hmf_error("primitive element search failed");
    }
  }
  RationalityField out;
  out.defining = minimal_polynomial(prim);
  out.degree = out.defining.degree();
  int ambient = f.Qf ? f.Qf->degree() : 1;
  out.caveat = out.degree < ambient;
  return out;
}

struct NewformClass {
  bool algebraic = false;
  bool half_twist_algebraic = false;
  bool regular = false;
  std::optional<std::vector<std::pair<Int, Int>>> infinity_type;
};

inline NewformClass classify_newform(const HilbertNewformData& f) {
  std::vector<ArchLocalRep> arch;
  // integral part of the k0/2 twist; the parity trichotomy is twist-blind
  Rat t = f.k0 % 2 == 0 ? Rat(f.k0 / 2) : Rat(0);
  for (long kj : f.k) arch.emplace_back(kj - 1, t);
  auto c = classify_arch(arch);
  NewformClass out;
  out.algebraic = c.algebraic;
  out.half_twist_algebraic = c.half_twist_algebraic;
  out.infinity_type = c.infinity_type;
  out.regular = true;
  for (long kj : f.k)
    if (kj < 2) out.regular = false;
  return out;
}

}  // namespace hmf
