#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N): elements are polynomials
// in zeta_N reduced mod Phi_N.  Mixed-order arithmetic lifts to the lcm.
// Character and Gauss-sum values stay exact here until a final certified
// complex embedding.

#include <hmf/poly.hpp>
#include <hmf/real.hpp>

#include <numeric>

#include <map>

namespace hmf {

inline const QPoly& cyclotomic_poly(unsigned long n) {
  static std::map<unsigned long, QPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for proper divisors d
  std::vector<Rat> xn(n + 1, Rat(0));
  xn[0] = -1;
  xn[n] = 1;
  QPoly f{std::vector<Rat>(xn)};
  for (unsigned long d = 1; d < n; ++d)
    if (n % d == 0) f = f / cyclotomic_poly(d);
  return cache.emplace(n, f).first->second;
}

class Cyclo {
 public:
  Cyclo() : n_(1), rep_() {}  // zero
  static Cyclo from_rat(const Rat& q) {
    Cyclo c;
    c.n_ = 1;
    c.rep_ = QPoly::constant(q);
    return c;
  }
  // zeta_n^k
  static Cyclo root_of_unity(unsigned long n, long k) {
    Cyclo c;
    c.n_ = n;
    k %= (long)n;
    if (k < 0) k += n;
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = 1;
    c.rep_ = QPoly(std::move(v)) % cyclotomic_poly(n);
    return c;
  }
  // e^{2 pi i t} for rational t
  static Cyclo exp2pi(const Rat& t) {
    unsigned long n = t.get_den().get_ui();
    return root_of_unity(n, t.get_num().get_si());
  }

  // sum of zeta_n^{k} over k in ks, with a single reduction mod Phi_n
  static Cyclo sum_of_roots(unsigned long n, const std::vector<long>& ks) {
    std::vector<Rat> v(n, Rat(0));
    for (long k : ks) {
      long r = k % (long)n;
      if (r < 0) r += n;
      v[r] += 1;
    }
    Cyclo c;
    c.n_ = n;
    c.rep_ = QPoly(std::move(v)) % cyclotomic_poly(n);
    return c;
  }

  unsigned long order() const { return n_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rat rational_value() const {
    if (!is_rational()) throw invalid_input("cyclotomic value not rational");
    return rep_[0];
  }

  Cyclo lift(unsigned long m) const {  // n_ | m
    if (m == n_) return *this;
    Cyclo c;
    c.n_ = m;
    unsigned long s = m / n_;
    std::vector<Rat> v;
    for (int i = 0; i <= rep_.degree(); ++i) {
      if ((unsigned long)i * s + 1 > v.size()) v.resize(i * s + 1, Rat(0));
      v[i * s] = rep_[i];
    }
    c.rep_ = QPoly(std::move(v)) % cyclotomic_poly(m);
    return c;
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    unsigned long m = std::lcm(a.n_, b.n_);
    Cyclo x = a.lift(m), y = b.lift(m);
    x.rep_ = x.rep_ + y.rep_;
    return x;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    unsigned long m = std::lcm(a.n_, b.n_);
    Cyclo x = a.lift(m), y = b.lift(m);
    x.rep_ = x.rep_ - y.rep_;
    return x;
  }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    unsigned long m = std::lcm(a.n_, b.n_);
    Cyclo x = a.lift(m), y = b.lift(m);
    x.rep_ = (x.rep_ * y.rep_) % cyclotomic_poly(m);
    return x;
  }
  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    unsigned long m = std::lcm(a.n_, b.n_);
    return a.lift(m).rep_ == b.lift(m).rep_;
  }

  // complex conjugation: zeta -> zeta^{-1}
  Cyclo conj() const {
    Cyclo c;
    c.n_ = n_;
    QPoly acc;
    for (int i = 0; i <= rep_.degree(); ++i) {
      if (rep_[i] == 0) continue;
      long k = (long)((n_ - (unsigned long)i % n_) % n_);
      std::vector<Rat> v(k + 1, Rat(0));
      v[k] = rep_[i];
      acc = acc + QPoly(std::move(v));
    }
    c.rep_ = acc % cyclotomic_poly(n_);
    return c;
  }

  // Galois twist zeta -> zeta^a, gcd(a, n) = 1.
  Cyclo galois(long a) const {
    Cyclo c;
    c.n_ = n_;
    QPoly acc;
    for (int i = 0; i <= rep_.degree(); ++i) {
      if (rep_[i] == 0) continue;
      long k = (long)(((long)i * a) % (long)n_);
      if (k < 0) k += n_;
      std::vector<Rat> v(k + 1, Rat(0));
      v[k] = rep_[i];
      acc = acc + QPoly(std::move(v));
    }
    c.rep_ = acc % cyclotomic_poly(n_);
    return c;
  }

  Cyclo pow(long e) const {
    if (e < 0) return conj().pow(-e);  // valid for roots of unity users
    Cyclo r = from_rat(Rat(1)), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  CertComplex embed(mpfr_prec_t prec) const {
    CertComplex acc(prec);
    for (int i = 0; i <= rep_.degree(); ++i) {
      if (rep_[i] == 0) continue;
      Rat t(i, n_);
      t.canonicalize();
      CertComplex z = cexp2pi(t, prec);
      CertComplex coeff = CertComplex::exact_rat(rep_[i], prec);
      acc = acc + coeff * z;
    }
    return acc;
  }

  const QPoly& rep() const { return rep_; }

 private:
  unsigned long n_;
  QPoly rep_;
};

}  // namespace hmf
