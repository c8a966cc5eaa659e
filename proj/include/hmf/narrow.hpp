#pragma once

// Units, class numbers and narrow class groups for degree <= 2, all by exact
// search: fundamental unit by minimal omega-coefficient, principality by an
// exhaustive box bounded through the unit normalization, narrow classes as
// ordinary classes refined by totally positive generators.

#include <hmf/ideal.hpp>

#include <cmath>
#include <functional>

namespace hmf {

struct UnitGroup {
  FieldElem fundamental;  // trivial (=1) in degree 1
  int fundamental_norm = 1;
  int sign_image_order = 2;  // |image of O^x in {+-1}^n|
};

inline UnitGroup unit_group(const TotallyRealField* F) {
  UnitGroup U;
  if (F->degree() == 1) {
    U.fundamental = F->one();
    U.fundamental_norm = 1;
    U.sign_image_order = 2;  // {-1} hits (-)
    return U;
  }
  if (F->degree() != 2) throw not_implemented("unit_group: degree > 2");
  FieldElem w = F->basis_element(1);
  Rat T = F->trace(w), N = F->norm(w);
  // N(a + b w) = a^2 + T a b + N b^2 = +-1; minimal b > 0 gives the
  // fundamental unit (standard for real quadratic orders).
  // The fundamental unit appears at the minimal omega-coefficient b with a
  // unit solution, but so can its square (golden ratio: eps^2 = eps + 1), so
  // gather all solutions at that b, normalize each to the representative > 1,
  // and take the smallest.
  for (Int b = 1;; ++b) {
    if (b > 100000000) throw out_of_reach("fundamental unit search");
    std::vector<FieldElem> cands;
    for (int target : {1, -1}) {
      // a^2 + (T b) a + (N b^2 - target) = 0
      Rat Bq = T * Rat(b), Cq = N * Rat(b * b) - target;
      Rat disc = Bq * Bq - Rat(4) * Cq;
      if (disc < 0 || disc.get_den() != 1) continue;
      Int root;
      if (!is_square(disc.get_num(), &root)) continue;
      for (int sgn : {1, -1}) {
        Rat a1 = (-Bq + Rat(sgn) * Rat(root)) / 2;
        if (a1.get_den() != 1) continue;
        cands.push_back(F->add(F->from_rat(a1), F->scale(Rat(b), w)));
      }
    }
    if (cands.empty()) continue;
    FieldElem best;
    double bestv = 0;
    for (auto& u : cands) {
      for (auto v : {u, F->neg(u), F->inverse(u), F->neg(F->inverse(u))}) {
        double e0 = F->embed(v, 0, 64).v.to_double();
        double e1 = F->embed(v, 1, 64).v.to_double();
        double mx = std::max(e0, e1);
        if (mx > 1.000001 && (bestv == 0 || mx < bestv)) {
          bestv = mx;
          best = v;
        }
      }
    }
    if (bestv == 0) continue;
    // re-normalize to an integral representative: best or its inverse is
    // integral; ensure integral (multiply by -1 keeps integrality)
    if (!F->is_integral(best)) best = F->inverse(best);
    U.fundamental = best;
    Rat nr = F->norm(best);
    U.fundamental_norm = nr == 1 ? 1 : -1;
    auto s = F->embedding_signs(best);
    U.sign_image_order = (s[0] != s[1]) ? 4 : 2;
    return U;
  }
}

// Conjugate ideal for quadratic fields.
inline FracIdeal conj_ideal(const FracIdeal& I) {
  const TotallyRealField* F = I.field();
  if (F->degree() == 1) return I;
  std::vector<FieldElem> gens;
  for (auto& b : I.lattice_basis()) gens.push_back(F->conj(b));
  return FracIdeal::from_generators(F, gens);
}

// Any generator of an integral ideal, or nullopt if non-principal.
// Exhaustive inside the unit-normalized box, hence a genuine decision.
inline std::optional<FieldElem> principal_generator(const FracIdeal& I,
                                                    const UnitGroup& U) {
  const TotallyRealField* F = I.field();
  Rat Nq = I.norm();
  if (Nq.get_den() != 1) throw invalid_input("principal_generator: not integral");
  Int N = Nq.get_num();
  if (F->degree() == 1) return F->from_rat(Rat(N));
  // embeddings of a generator can be normalized into
  // sqrt(N/e1) <= |eta_i(x)| <= sqrt(N*e1), e1 = max embedding of unit
  double e1 = std::max(
      std::fabs(F->embed(U.fundamental, 0, 64).v.to_double()),
      std::fabs(F->embed(U.fundamental, 1, 64).v.to_double()));
  double nN = Nq.get_d();
  double emax = std::sqrt(nN * e1) * 1.0000001 + 1;
  FieldElem w = F->basis_element(1);
  double w0 = F->embed(w, 0, 64).v.to_double();
  double w1 = F->embed(w, 1, 64).v.to_double();
  double denom = std::fabs(w0 - w1);
  long bmax = (long)(2 * emax / denom) + 2;
  long amax = (long)(emax * (1 + 2 * std::max(std::fabs(w0), std::fabs(w1)) /
                                      denom)) +
              2;
  for (long b = -bmax; b <= bmax; ++b)
    for (long a = -amax; a <= amax; ++a) {
      if (a == 0 && b == 0) continue;
      FieldElem x = F->add(F->from_rat(Rat(a)), F->scale(Rat(b), w));
      Rat nx = F->norm(x);
      if (!(nx == Rat(N) || nx == Rat(-N))) continue;
      if (!I.contains(x)) continue;
      if (FracIdeal::principal(F, x) == I) return x;
    }
  return std::nullopt;
}

// Totally positive generator (narrow principality), or nullopt.
inline std::optional<FieldElem> narrow_principal_generator(
    const FracIdeal& I, const UnitGroup& U) {
  const TotallyRealField* F = I.field();
  auto g = principal_generator(I, U);
  if (!g) return std::nullopt;
  if (F->degree() == 1) {
    Rat v = g->rational_value();
    return F->from_rat(v > 0 ? v : -v);
  }
  // adjust by {+-1, +-fundamental}; epsilon^2 is already totally positive
  std::vector<FieldElem> cands{*g, F->neg(*g), F->mul(U.fundamental, *g),
                               F->neg(F->mul(U.fundamental, *g))};
  for (auto& c : cands)
    if (F->is_totally_positive(c)) return c;
  return std::nullopt;
}

// Narrow-principality test for a fractional ideal (scale by the positive
// rational denominator, which is totally positive).
inline std::optional<FieldElem> narrow_principal_generator_frac(
    const FracIdeal& I, const UnitGroup& U) {
  const TotallyRealField* F = I.field();
  FracIdeal J = I.is_integral() ? I : I.mul_rat(Rat(I.den()));
  auto g = narrow_principal_generator(J, U);
  if (!g) return std::nullopt;
  if (I.is_integral()) return g;
  Rat s(1, I.den());
  return F->scale(s, *g);
}

struct NarrowClassGroup {
  const TotallyRealField* F = nullptr;
  UnitGroup units;
  Int h = 1;       // ordinary class number
  Int h_plus = 1;  // narrow class number
  std::vector<FracIdeal> reps;  // narrow class representatives, reps[0] = O
  std::vector<long> orders;     // cyclic decomposition (empty = trivial)
  bool cyclic = true;
  size_t generator_rep = 0;  // index into reps of a generator (cyclic case)

  // class index of a fractional ideal, plus a totally positive alpha with
  // I = (alpha) * reps[index]
  std::pair<size_t, FieldElem> reduce(const FracIdeal& I) const {
    for (size_t j = 0; j < reps.size(); ++j) {
      FracIdeal K = mul_inverse(I, reps[j]);
      if (auto a = narrow_principal_generator_frac(K, units))
        return {j, *a};
    }
    throw hmf_error("narrow reduction failed");
  }

  FracIdeal mul_inverse(const FracIdeal& I, const FracIdeal& J) const {
    // I * J^{-1} for quadratic/rational fields via the conjugate
    if (F->degree() == 1) {
      Rat nj = J.norm();
      return I.mul_rat(Rat(1) / nj);
    }
    Rat nj = J.norm();
    return I.mul(conj_ideal(J)).mul_rat(Rat(1) / nj);
  }
};

// Greedy basis decomposition of a finite abelian group given by a
// multiplication closure on indices.
inline std::vector<long> abelian_orders(
    size_t size, const std::function<size_t(size_t, size_t)>& mul) {
  // elements are 0..size-1, identity 0
  std::vector<long> orders;
  std::vector<char> in_sub(size, 0);
  in_sub[0] = 1;
  size_t covered = 1;
  auto order_mod = [&](size_t x) {
    long o = 1;
    size_t y = x;
    while (!in_sub[y]) {
      y = mul(y, x);
      ++o;
    }
    return o;
  };
  while (covered < size) {
    size_t best = 0;
    long besto = 0;
    for (size_t x = 1; x < size; ++x) {
      if (in_sub[x]) continue;
      long o = order_mod(x);
      if (o > besto) {
        besto = o;
        best = x;
      }
    }
    orders.push_back(besto);
    // extend subgroup: multiply current subgroup by powers of best
    std::vector<size_t> subels;
    for (size_t x = 0; x < size; ++x)
      if (in_sub[x]) subels.push_back(x);
    size_t pw = best;
    for (long k = 1; k < besto; ++k) {
      for (size_t s : subels) {
        size_t v = mul(s, pw);
        if (!in_sub[v]) {
          in_sub[v] = 1;
          ++covered;
        }
      }
      pw = mul(pw, best);
    }
  }
  return orders;
}

inline NarrowClassGroup narrow_class_group(const TotallyRealField* F) {
  NarrowClassGroup G;
  G.F = F;
  G.units = unit_group(F);
  if (F->degree() == 1) {
    G.reps = {FracIdeal::ring_of_integers(F)};
    return G;
  }
  if (F->degree() > 2) throw not_implemented("narrow_class_group: degree > 2");

  // Minkowski bound for real quadratic: sqrt(disc)/2.
  double mb = std::sqrt(mpz_get_d(F->discriminant().get_mpz_t())) / 2.0;
  std::vector<FracIdeal> gens{FracIdeal::ring_of_integers(F)};
  std::vector<std::optional<FieldElem>> narrow_gen{F->one()};
  for (Int p = 2; p.get_d() <= mb + 0.5; p = p + 1) {
    if (!is_prime_int(p)) continue;
    for (auto& P : factor_prime(F, p)) {
      if (P.norm().get_d() > mb + 0.5) continue;
      gens.push_back(P.ideal);
    }
  }
  // Minkowski primes generate the ordinary class group; the narrow group may
  // additionally need principal ideals whose generators have sign patterns
  // outside the unit sign image.  Small boxes of principal ideals cover all
  // sign patterns of F^x.
  {
    FieldElem w = F->basis_element(1);
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) {
        if (a == 0 && b == 0) continue;
        FieldElem x = F->add(F->from_rat(Rat(a)), F->scale(Rat(b), w));
        gens.push_back(FracIdeal::principal(F, x));
      }
  }
  // ordinary classes
  auto ordinary_equiv = [&](const FracIdeal& I, const FracIdeal& J) {
    FracIdeal K = G.mul_inverse(I, J);
    FracIdeal Ki = K.is_integral() ? K : K.mul_rat(Rat(K.den()));
    return principal_generator(Ki, G.units).has_value();
  };
  auto narrow_equiv = [&](const FracIdeal& I, const FracIdeal& J) {
    FracIdeal K = G.mul_inverse(I, J);
    return narrow_principal_generator_frac(K, G.units).has_value();
  };
  auto close_classes = [&](auto equiv) {
    std::vector<FracIdeal> reps{FracIdeal::ring_of_integers(F)};
    auto classify = [&](const FracIdeal& I) -> size_t {
      for (size_t j = 0; j < reps.size(); ++j)
        if (equiv(I, reps[j])) return j;
      reps.push_back(I);
      return reps.size() - 1;
    };
    for (auto& g : gens) classify(g);
    // close under products
    bool grew = true;
    while (grew) {
      grew = false;
      size_t m = reps.size();
      for (size_t i = 1; i < m && !grew; ++i)
        for (size_t j = i; j < m && !grew; ++j) {
          size_t before = reps.size();
          classify(reps[i].mul(reps[j]));
          if (reps.size() != before) grew = true;
        }
    }
    return reps;
  };
  auto oreps = close_classes(ordinary_equiv);
  G.h = (long)oreps.size();
  G.reps = close_classes(narrow_equiv);
  G.h_plus = (long)G.reps.size();

  // cross-check with the unit exact sequence: h+ = h * 2^n / |sign image|
  Int expect = G.h * 4 / G.units.sign_image_order;
  if (expect != G.h_plus)
    throw hmf_error("narrow class number mismatch with unit exact sequence");

  if (G.h_plus > 1) {
    // multiplication table on class indices
    auto cls_index = [&](const FracIdeal& I) -> size_t {
      for (size_t j = 0; j < G.reps.size(); ++j)
        if (narrow_equiv(I, G.reps[j])) return j;
      throw hmf_error("class closure incomplete");
    };
    auto mul = [&](size_t a, size_t b) {
      return cls_index(G.reps[a].mul(G.reps[b]));
    };
    G.orders = abelian_orders(G.reps.size(), mul);
    G.cyclic = (G.orders.size() <= 1);
    if (G.cyclic) {
      // find a generator rep
      long m = G.orders.empty() ? 1 : G.orders[0];
      for (size_t j = 1; j < G.reps.size(); ++j) {
        // order of reps[j]
        long o = 1;
        size_t y = j;
        while (y != 0) {
          y = mul(y, j);
          ++o;
        }
        if (o == m) {
          G.generator_rep = j;
          break;
        }
      }
    }
  }
  return G;
}

// Representatives coprime to a given integral ideal: smallest-norm prime in
// each narrow class avoiding the level (identity class keeps O).
inline std::vector<FracIdeal> coprime_representatives(
    const NarrowClassGroup& G, const FracIdeal& level) {
  const TotallyRealField* F = G.F;
  std::vector<FracIdeal> out(G.reps.size());
  std::vector<char> found(G.reps.size(), 0);
  out[0] = FracIdeal::ring_of_integers(F);
  found[0] = 1;
  size_t remaining = G.reps.size() - 1;
  for (Int p = 2; remaining > 0; p = p + 1) {
    if (p > 10000) throw out_of_reach("coprime representative search");
    if (!is_prime_int(p)) continue;
    for (auto& P : factor_prime(F, p)) {
      if (!P.ideal.is_coprime_to(level)) continue;
      for (size_t j = 1; j < G.reps.size(); ++j) {
        if (found[j]) continue;
        FracIdeal K = G.mul_inverse(P.ideal, G.reps[j]);
        if (narrow_principal_generator_frac(K, G.units)) {
          out[j] = P.ideal;
          found[j] = 1;
          --remaining;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace hmf
