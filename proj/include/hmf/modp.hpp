#pragma once

// Univariate polynomial factorization over F_p (small p, small degree):
// squarefree / distinct-degree / Cantor-Zassenhaus equal-degree splitting.
// Used to split rational primes in a number field via the defining
// polynomial.

#include <hmf/rational.hpp>

#include <map>
#include <random>

namespace hmf {

class PolyFp {
 public:
  PolyFp() = default;
  PolyFp(Int p, std::vector<Int> c) : p_(std::move(p)), c_(std::move(c)) {
    for (auto& x : c_) x = fmod(x, p_);
    trim();
  }
  static PolyFp constant(const Int& p, const Int& a) {
    return PolyFp(p, {a});
  }
  static PolyFp x(const Int& p) { return PolyFp(p, {0, 1}); }

  const Int& modulus() const { return p_; }
  int degree() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  Int coeff(size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
  Int lc() const { return c_.empty() ? Int(0) : c_.back(); }

  PolyFp monic() const {
    if (is_zero() || lc() == 1) return *this;
    Int inv = invmod(lc(), p_);
    std::vector<Int> r = c_;
    for (auto& x : r) x = fmod(x * inv, p_);
    return PolyFp(p_, std::move(r));
  }

  friend PolyFp operator+(const PolyFp& a, const PolyFp& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
      r[i] = fmod(a.coeff(i) + b.coeff(i), a.p_);
    return PolyFp(a.p_, std::move(r));
  }
  friend PolyFp operator-(const PolyFp& a, const PolyFp& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
      r[i] = fmod(a.coeff(i) - b.coeff(i), a.p_);
    return PolyFp(a.p_, std::move(r));
  }
  friend PolyFp operator*(const PolyFp& a, const PolyFp& b) {
    if (a.is_zero() || b.is_zero()) return PolyFp(a.p_, {});
    std::vector<Int> r(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) {
        r[i + j] += a.c_[i] * b.c_[j];
      }
    return PolyFp(a.p_, std::move(r));
  }

  static std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
    if (b.is_zero()) throw invalid_input("PolyFp division by zero");
    std::vector<Int> r = a.c_;
    int db = b.degree();
    Int lcinv = invmod(b.lc(), a.p_);
    if ((int)r.size() - 1 < db) return {PolyFp(a.p_, {}), a};
    std::vector<Int> q(r.size() - db, 0);
    for (int i = (int)r.size() - 1; i >= db; --i) {
      Int f = fmod(r[i] * lcinv, a.p_);
      if (f == 0) continue;
      q[i - db] = f;
      for (int j = 0; j <= db; ++j)
        r[i - db + j] = fmod(r[i - db + j] - f * b.c_[j], a.p_);
    }
    return {PolyFp(a.p_, std::move(q)), PolyFp(a.p_, std::move(r))};
  }
  friend PolyFp operator%(const PolyFp& a, const PolyFp& b) {
    return divmod(a, b).second;
  }
  friend PolyFp operator/(const PolyFp& a, const PolyFp& b) {
    return divmod(a, b).first;
  }
  friend bool operator==(const PolyFp& a, const PolyFp& b) {
    return a.c_ == b.c_;
  }

  PolyFp derivative() const {
    if (c_.size() <= 1) return PolyFp(p_, {});
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = fmod(Int(i) * c_[i], p_);
    return PolyFp(p_, std::move(r));
  }

  static PolyFp gcd(PolyFp a, PolyFp b) {
    while (!b.is_zero()) {
      PolyFp r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  static PolyFp powmod(PolyFp base, Int e, const PolyFp& mod) {
    PolyFp r = constant(base.p_, 1);
    base = base % mod;
    while (e > 0) {
      if (fmod(e, 2) == 1) r = (r * base) % mod;
      base = (base * base) % mod;
      e = fdiv(e, 2);
    }
    return r;
  }

  // p-th root of a polynomial whose exponents are all multiples of p
  // (coefficients are already p-th powers in F_p).
  PolyFp pth_root() const {
    unsigned long p = p_.get_ui();
    std::vector<Int> r;
    for (size_t i = 0; i < c_.size(); i += p) r.push_back(c_[i]);
    return PolyFp(p_, std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  Int p_;
  std::vector<Int> c_;
};

namespace detail {

inline void squarefree_decompose(const PolyFp& f, unsigned mult,
                                 std::map<int, std::vector<PolyFp>>& bydeg,
                                 std::vector<std::pair<PolyFp, unsigned>>& out);

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
inline void equal_degree_split(const PolyFp& f, int d,
                               std::vector<PolyFp>& out, std::mt19937_64& rng) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const Int& p = f.modulus();
  int n = f.degree();
  while (true) {
    std::vector<Int> tc(n);
    for (auto& x : tc) x = Int((unsigned long)(rng() % 1000000007UL));
    PolyFp t(p, std::move(tc));
    if (t.degree() < 1) continue;
    PolyFp g;
    if (p == 2) {
      // trace map: t + t^2 + t^4 + ... + t^{2^{d-1}}
      PolyFp s = t % f, acc = s;
      for (int i = 1; i < d; ++i) {
        s = (s * s) % f;
        acc = acc + s;
      }
      g = PolyFp::gcd(acc, f);
    } else {
      Int e = (pow_int(p, (unsigned long)d) - 1) / 2;
      PolyFp s = PolyFp::powmod(t, e, f);
      g = PolyFp::gcd(s - PolyFp::constant(p, 1), f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, out, rng);
      equal_degree_split(f / g, d, out, rng);
      return;
    }
  }
}

inline void distinct_degree_factor(PolyFp f,
                                   std::vector<PolyFp>& out) {
  std::mt19937_64 rng(0x5eed);
  const Int& p = f.modulus();
  PolyFp xp = PolyFp::x(p);
  PolyFp h = xp;
  int d = 0;
  while (f.degree() > 0) {
    ++d;
    if (2 * d > f.degree()) {
      out.push_back(f.monic());
      break;
    }
    h = PolyFp::powmod(h, p, f);
    PolyFp g = PolyFp::gcd(h - xp, f);
    if (g.degree() > 0) {
      equal_degree_split(g, d, out, rng);
      f = f / g;
      h = h % f;
    }
  }
}

inline void squarefree_decompose(const PolyFp& f, unsigned mult,
                                 std::vector<std::pair<PolyFp, unsigned>>& out) {
  // Standard char-p squarefree decomposition.
  PolyFp d = f.derivative();
  if (d.is_zero()) {
    squarefree_decompose(f.pth_root(), mult * (unsigned)f.modulus().get_ui(),
                         out);
    return;
  }
  PolyFp g = PolyFp::gcd(f, d);
  PolyFp w = f / g;
  unsigned i = 1;
  while (w.degree() > 0) {
    PolyFp y = PolyFp::gcd(w, g);
    PolyFp z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), mult * i);
    w = y;
    g = g / y;
    ++i;
  }
  if (g.degree() > 0) squarefree_decompose(g, mult, out);
}

}  // namespace detail

// Full factorization of a nonconstant polynomial over F_p:
// list of (monic irreducible, multiplicity).
inline std::vector<std::pair<PolyFp, unsigned>> factor_mod_p(const PolyFp& f) {
  if (f.degree() < 1) throw invalid_input("factor_mod_p: constant");
  std::vector<std::pair<PolyFp, unsigned>> sqf;
  detail::squarefree_decompose(f.monic(), 1, sqf);
  std::vector<std::pair<PolyFp, unsigned>> out;
  for (auto& [part, mult] : sqf) {
    std::vector<PolyFp> irr;
    detail::distinct_degree_factor(part, irr);
    for (auto& g : irr) out.emplace_back(g, mult);
  }
  return out;
}

}  // namespace hmf
