#pragma once

// Fractional ideals as (HNF lattice)/denominator over the integral basis,
// prime splitting via the defining polynomial, and valuations computed with
// the full factorization of the underlying rational prime.

#include <hmf/field.hpp>
#include <hmf/modp.hpp>

#include <map>
#include <sstream>

namespace hmf {

class FracIdeal {
 public:
  FracIdeal() = default;

  // Integral module spanned by the columns of `gens` (integral-basis
  // coordinates), divided by den > 0.
  static FracIdeal from_lattice(const TotallyRealField* F, const ZMat& gens,
                                Int den = 1) {
    FracIdeal I;
    I.F_ = F;
    I.h_ = hnf_columns(gens);
    I.den_ = std::move(den);
    I.normalize();
    return I;
  }

  static FracIdeal ring_of_integers(const TotallyRealField* F) {
    return from_lattice(F, zmat_identity(F->degree()));
  }

  static FracIdeal principal(const TotallyRealField* F, const FieldElem& a) {
    if (a.is_zero()) throw invalid_input("principal ideal of zero");
    int n = F->degree();
    ZMat gens(n, std::vector<Int>(n));
    Int den = 1;
    std::vector<std::vector<Rat>> cols(n);
    for (int j = 0; j < n; ++j) {
      cols[j] = F->integral_coords(F->mul(a, F->basis_element(j)));
      for (auto& c : cols[j]) den = lcm(den, c.get_den());
    }
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        Rat v = cols[j][i] * den;
        gens[i][j] = v.get_num();
      }
    return from_lattice(F, gens, den);
  }

  // Ideal generated by a list of elements (as an O-module).
  static FracIdeal from_generators(const TotallyRealField* F,
                                   const std::vector<FieldElem>& gens) {
    int n = F->degree();
    Int den = 1;
    std::vector<std::vector<Rat>> cols;
    for (auto& g : gens)
      for (int j = 0; j < n; ++j) {
        cols.push_back(F->integral_coords(F->mul(g, F->basis_element(j))));
        for (auto& c : cols.back()) den = lcm(den, c.get_den());
      }
    ZMat m(n, std::vector<Int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < n; ++i) {
        Rat t = cols[j][i] * den;
        m[i][j] = t.get_num();
      }
    return from_lattice(F, m, den);
  }

  const TotallyRealField* field() const { return F_; }
  const ZMat& hnf() const { return h_; }
  const Int& den() const { return den_; }
  bool is_integral() const { return den_ == 1; }

  Rat norm() const {
    Rat r(diag_product(h_), pow_int(den_, F_->degree()));
    r.canonicalize();
    return r;
  }

  friend bool operator==(const FracIdeal& a, const FracIdeal& b) {
    return a.den_ == b.den_ && a.h_ == b.h_;
  }
  friend bool operator<(const FracIdeal& a, const FracIdeal& b) {
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.h_ < b.h_;
  }

  FracIdeal mul(const FracIdeal& o) const {
    int n = F_->degree();
    // products of all basis pairs
    std::vector<FieldElem> ea, eb;
    for (int j = 0; j < n; ++j) {
      ea.push_back(element_from_column(j));
      eb.push_back(o.element_from_column(j));
    }
    std::vector<FieldElem> prods;
    for (auto& x : ea)
      for (auto& y : eb) prods.push_back(F_->mul(x, y));
    std::vector<std::vector<Rat>> cols;
    Int den = 1;
    for (auto& p : prods) {
      cols.push_back(F_->integral_coords(p));
      for (auto& c : cols.back()) den = lcm(den, c.get_den());
    }
    ZMat m(n, std::vector<Int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < n; ++i) {
        Rat t = cols[j][i] * den;
        m[i][j] = t.get_num();
      }
    return from_lattice(F_, m, den);
  }

  FracIdeal mul_rat(const Rat& q) const {
    if (q == 0) throw invalid_input("scaling ideal by zero");
    FracIdeal r = *this;
    Int num = abs(q.get_num());
    for (auto& row : r.h_)
      for (auto& x : row) x *= num;
    r.den_ *= q.get_den();
    r.normalize();
    return r;
  }

  FracIdeal mul_elem(const FieldElem& a) const {
    return mul(principal(F_, a));
  }

  FracIdeal pow(long e) const {
    if (e < 0) throw invalid_input("FracIdeal::pow negative");
    FracIdeal r = ring_of_integers(F_);
    FracIdeal b = *this;
    while (e > 0) {
      if (e & 1) r = r.mul(b);
      if (e >>= 1) b = b.mul(b);
    }
    return r;
  }

  bool contains(const FieldElem& a) const {
    auto co = F_->integral_coords(a);
    std::vector<Int> v(co.size());
    for (size_t i = 0; i < co.size(); ++i) {
      Rat s = co[i] * den_;
      if (s.get_den() != 1) return false;
      v[i] = s.get_num();
    }
    return solve_lower_triangular(h_, v).has_value();
  }

  bool contains_ideal(const FracIdeal& o) const {
    // o subseteq this iff every basis vector of o lies in this lattice.
    int n = F_->degree();
    for (int j = 0; j < n; ++j)
      if (!contains(o.element_from_column(j))) return false;
    return true;
  }

  bool is_coprime_to(const FracIdeal& o) const {
    // both integral: sum has HNF = identity
    int n = F_->degree();
    ZMat m(n, std::vector<Int>(2 * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m[i][j] = h_[i][j];
        m[i][n + j] = o.h_[i][j];
      }
    return diag_product(hnf_columns(m)) == 1;
  }

  FieldElem element_from_column(int j) const {
    std::vector<Rat> co(F_->degree());
    for (int i = 0; i < F_->degree(); ++i) {
      co[i] = Rat(h_[i][j], den_);
      co[i].canonicalize();
    }
    return F_->from_integral(co);
  }

  std::vector<FieldElem> lattice_basis() const {
    std::vector<FieldElem> b;
    for (int j = 0; j < F_->degree(); ++j) b.push_back(element_from_column(j));
    return b;
  }

  // Split 1 = a + b with a in A, b in B for coprime integral ideals.
  static std::pair<FieldElem, FieldElem> split_one(const FracIdeal& A,
                                                   const FracIdeal& B) {
    const TotallyRealField* F = A.F_;
    int n = F->degree();
    if (!A.is_integral() || !B.is_integral())
      throw invalid_input("split_one needs integral ideals");
    ZMat m(n, std::vector<Int>(2 * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m[i][j] = A.h_[i][j];
        m[i][n + j] = B.h_[i][j];
      }
    ZMat u;
    ZMat h = hnf_columns(m, &u);
    std::vector<Int> one(n, 0);
    // coordinates of 1 over the integral basis
    auto co1 = F->integral_coords(F->one());
    for (int i = 0; i < n; ++i) {
      if (co1[i].get_den() != 1)
        throw hmf_error("1 has non-integral coordinates");
      one[i] = co1[i].get_num();
    }
    auto y = solve_lower_triangular(h, one);
    if (!y) throw invalid_input("split_one: ideals not coprime");
    // x = U * [y, 0]
    std::vector<Int> yext(2 * n, 0);
    for (int i = 0; i < n; ++i) yext[i] = (*y)[i];
    std::vector<Int> x = mat_vec(u, yext);
    std::vector<Rat> ca(n, Rat(0)), cb(n, Rat(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ca[i] += Rat(A.h_[i][j] * x[j]);
        cb[i] += Rat(B.h_[i][j] * x[n + j]);
      }
    FieldElem ea = F->from_integral(ca), eb = F->from_integral(cb);
    if (!(F->add(ea, eb) == F->one()))
      throw hmf_error("split_one: internal inconsistency");
    return {ea, eb};
  }

  std::string key() const {
    std::ostringstream os;
    os << den_.get_str();
    for (auto& row : h_)
      for (auto& x : row) os << "," << x.get_str();
    return os.str();
  }

  static FracIdeal from_key(const TotallyRealField* F, const std::string& key) {
    int n = F->degree();
    std::vector<Int> vals;
    std::istringstream is(key);
    std::string tok;
    while (std::getline(is, tok, ',')) vals.push_back(Int(tok));
    if ((int)vals.size() != 1 + n * n) throw invalid_input("bad ideal key");
    ZMat m(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = vals[1 + i * n + j];
    return from_lattice(F, m, vals[0]);
  }

 private:
  void normalize() {
    Int g = den_;
    for (auto& row : h_)
      for (auto& x : row) g = gcd(g, x);
    if (g > 1) {
      den_ /= g;
      for (auto& row : h_)
        for (auto& x : row) x /= g;
    }
  }
  const TotallyRealField* F_ = nullptr;
  ZMat h_;
  Int den_ = 1;
};

struct PrimeIdeal {
  FracIdeal ideal;      // the prime itself (integral)
  Int p;                // rational prime below
  unsigned e = 1;       // ramification index
  unsigned f = 1;       // residue degree
  FieldElem uniformizer;  // global element with v_P = 1
  FracIdeal inv;          // P^{-1} as a fractional ideal

  Int norm() const { return pow_int(p, f); }
};

// Factor (p) in F.  Requires p coprime to the index [O : Z[theta]] or
// degree <= 2 where the quadratic criterion handles index primes directly.
inline std::vector<PrimeIdeal> factor_prime(const TotallyRealField* F,
                                            const Int& p) {
  if (!is_prime_int(p)) throw invalid_input("factor_prime: not prime");
  int n = F->degree();
  std::vector<PrimeIdeal> out;
  if (n == 1) {
    PrimeIdeal P;
    P.p = p;
    P.e = P.f = 1;
    P.ideal = FracIdeal::principal(F, F->from_rat(Rat(p)));
    P.uniformizer = F->from_rat(Rat(p));
    P.inv = FracIdeal::principal(F, F->from_rat(Rat(1, p)));
    out.push_back(std::move(P));
    return out;
  }
  if (F->index() % p == 0 && n > 2)
    throw not_implemented("factor_prime at an index prime, degree > 2");

  auto make_prime = [&](const FieldElem& gen2, unsigned e, unsigned f) {
    PrimeIdeal P;
    P.p = p;
    P.e = e;
    P.f = f;
    P.ideal =
        FracIdeal::from_generators(F, {F->from_rat(Rat(p)), gen2});
    return P;
  };

  if (n == 2) {
    // Quadratic maximal orders are monogenic in omega = basis_element(1):
    // split via the minimal polynomial of omega, valid at every p.
    FieldElem w = F->basis_element(1);
    Rat t = F->trace(w), nm = F->norm(w);
    PolyFp g(p, {nm.get_num(), -t.get_num(), 1});
    auto facs = factor_mod_p(g);
    for (auto& [irr, mult] : facs) {
      FieldElem val = F->zero();
      FieldElem wp = F->one();
      for (int i = 0; i <= irr.degree(); ++i) {
        val = F->add(val, F->scale(Rat(irr.coeff(i)), wp));
        wp = F->mul(wp, w);
      }
      out.push_back(make_prime(val, mult, (unsigned)irr.degree()));
    }
  } else {
    std::vector<Int> fc(n + 1);
    for (int i = 0; i <= n; ++i) fc[i] = F->defining_poly()[i].get_num();
    auto facs = factor_mod_p(PolyFp(p, fc));
    for (auto& [irr, mult] : facs) {
      FieldElem th = F->theta();
      FieldElem val = F->zero();
      FieldElem tp = F->one();
      for (int i = 0; i <= irr.degree(); ++i) {
        val = F->add(val, F->scale(Rat(irr.coeff(i)), tp));
        tp = F->mul(tp, th);
      }
      out.push_back(make_prime(val, mult, (unsigned)irr.degree()));
    }
  }

  // sanity: product of norms with multiplicity = p^n
  {
    Int total = 1;
    for (auto& P : out) total *= pow_int(pow_int(p, P.f), P.e);
    if (total != pow_int(p, (unsigned long)n))
      throw hmf_error("factor_prime: efg mismatch");
  }

  // inverses: P_j^{-1} = (1/p) * prod_{i != j} P_i^{e_i} * P_j^{e_j - 1}
  for (size_t j = 0; j < out.size(); ++j) {
    FracIdeal c = FracIdeal::ring_of_integers(F);
    for (size_t i = 0; i < out.size(); ++i) {
      long e = (long)out[i].e - (i == j ? 1 : 0);
      for (long t = 0; t < e; ++t) c = c.mul(out[i].ideal);
    }
    out[j].inv = c.mul_rat(Rat(1, p));
  }

  // uniformizers: element with valuation exactly 1.
  for (auto& P : out) {
    auto val_of = [&](const FieldElem& x) {
      long v = 0;
      FracIdeal I = FracIdeal::principal(F, x);
      FracIdeal O = FracIdeal::ring_of_integers(F);
      while (P.ideal.contains_ideal(I)) {
        I = I.mul(P.inv);
        ++v;
        if (v > 64) throw hmf_error("runaway valuation");
      }
      return v;
    };
    FieldElem cand = P.ideal.element_from_column(0);
    // find a lattice basis vector (or shifted one) of valuation exactly 1
    bool found = false;
    for (int j = 0; j < F->degree() && !found; ++j) {
      FieldElem x = P.ideal.element_from_column(j);
      if (!x.is_zero() && val_of(x) == 1) {
        cand = x;
        found = true;
      }
    }
    if (!found) {
      // sum of basis vectors then +p fallback
      FieldElem s = F->zero();
      for (int j = 0; j < F->degree(); ++j)
        s = F->add(s, P.ideal.element_from_column(j));
      if (val_of(s) == 1) {
        cand = s;
        found = true;
      } else {
        FieldElem t = F->add(s, F->from_rat(Rat(p)));
        if (val_of(t) == 1) {
          cand = t;
          found = true;
        }
      }
    }
    if (!found) throw hmf_error("no uniformizer found");
    P.uniformizer = cand;
  }
  return out;
}

// Valuation of a fractional ideal at P (needs P.inv).
inline long ideal_valuation(const FracIdeal& I, const PrimeIdeal& P) {
  // Clear the whole denominator m at once: v_P(I) = v_P(I*(m)) - e*v_p(m).
  Int m = I.den();
  FracIdeal J = m == 1 ? I : I.mul_rat(Rat(m));
  long v = -(long)P.e * padic_val(Rat(m), P.p);
  while (P.ideal.contains_ideal(J)) {
    J = J.mul(P.inv);
    ++v;
    if (v > 4096) throw hmf_error("ideal_valuation: runaway");
  }
  return v;
}

inline long elem_valuation(const FieldElem& x, const PrimeIdeal& P) {
  return ideal_valuation(FracIdeal::principal(x.field(), x), P);
}

// The different ideal.  Exact for degree <= 2; degree >= 3 requires a
// monogenic maximal order (index 1).
inline FracIdeal different_ideal(const TotallyRealField* F) {
  if (F->degree() == 1)
    return FracIdeal::ring_of_integers(F);
  if (F->degree() > 2 && F->index() != 1)
    throw not_implemented("different for non-monogenic degree >= 3");
  FieldElem fp = F->from_power(F->defining_poly().derivative());
  FracIdeal D = FracIdeal::principal(F, fp);
  if (F->index() != 1) D = D.mul_rat(Rat(1, F->index()));
  return D;
}

}  // namespace hmf
