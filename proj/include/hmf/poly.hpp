#pragma once

// Dense univariate polynomials over Q: arithmetic, resultants, Sturm
// sequences and exact real-root isolation.  Coefficients are stored in
// ascending degree order.

#include <hmf/rational.hpp>

#include <algorithm>
#include <optional>
#include <utility>

namespace hmf {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
  static QPoly constant(const Rat& a) { return QPoly(std::vector<Rat>{a}); }
  static QPoly x() { return QPoly({Rat(0), Rat(1)}); }

  int degree() const { return (int)c_.size() - 1; }  // -1 for zero poly
  bool is_zero() const { return c_.empty(); }
  const Rat& operator[](size_t i) const {
    static const Rat zero(0);
    return i < c_.size() ? c_[i] : zero;
  }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat lc() const { return c_.empty() ? Rat(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return QPoly(std::move(r));
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return QPoly(std::move(r));
  }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(r));
  }
  friend QPoly operator*(const Rat& s, const QPoly& a) {
    std::vector<Rat> r = a.c_;
    for (auto& x : r) x *= s;
    return QPoly(std::move(r));
  }
  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.c_ == b.c_;
  }

  // Euclidean division, b != 0.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw invalid_input("poly division by zero");
    std::vector<Rat> r = a.c_;
    int db = b.degree();
    if ((int)r.size() - 1 < db) return {QPoly(), a};
    std::vector<Rat> q(r.size() - db, Rat(0));
    for (int i = (int)r.size() - 1; i >= db; --i) {
      if (r[i] == 0) continue;
      Rat f = r[i] / b.c_.back();
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
  }
  friend QPoly operator%(const QPoly& a, const QPoly& b) {
    return divmod(a, b).second;
  }
  friend QPoly operator/(const QPoly& a, const QPoly& b) {
    return divmod(a, b).first;
  }

  QPoly derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rat> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat((long)i) * c_[i];
    return QPoly(std::move(r));
  }

  Rat eval(const Rat& x) const {
    Rat v(0);
    for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  int sign_at(const Rat& x) const { return sgn(eval(x)); }

  static int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

  static QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
      QPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero() && a.lc() != 1) a = (Rat(1) / a.lc()) * a;
    return a;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// Resultant via the Euclidean remainder sequence with leading-coefficient
// bookkeeping.  Fine at these degrees.
inline Rat resultant(QPoly a, QPoly b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  Rat res(1);
  while (b.degree() > 0) {
    QPoly r = a % b;
    int da = a.degree(), db = b.degree(), dr = r.degree();
    // res(a,b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
    Rat lcpow(1);
    for (int i = 0; i < da - dr; ++i) lcpow *= b.lc();
    if ((da % 2) && (db % 2)) res = -res;
    res *= lcpow;
    a = std::move(b);
    b = std::move(r);
    if (b.is_zero()) return Rat(0);
  }
  // b is a nonzero constant
  Rat cpow(1);
  for (int i = 0; i < a.degree(); ++i) cpow *= b[0];
  return res * cpow;
}

inline Rat poly_discriminant(const QPoly& f) {
  int n = f.degree();
  if (n < 1) throw invalid_input("discriminant of constant");
  Rat r = resultant(f, f.derivative()) / f.lc();
  // sign (-1)^{n(n-1)/2}
  if (((long)n * (n - 1) / 2) % 2) r = -r;
  return r;
}

// ---- Sturm-based exact real root isolation ------------------------------

inline std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> ch;
  ch.push_back(f);
  ch.push_back(f.derivative());
  while (!ch.back().is_zero() && ch.back().degree() > 0) {
    QPoly r = ch[ch.size() - 2] % ch.back();
    ch.push_back(Rat(-1) * r);
  }
  if (ch.back().is_zero()) ch.pop_back();
  return ch;
}

inline int sturm_sign_changes(const std::vector<QPoly>& ch, const Rat& x) {
  int changes = 0, last = 0;
  for (auto& p : ch) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Number of distinct real roots in (a, b].
inline int sturm_count(const std::vector<QPoly>& ch, const Rat& a,
                       const Rat& b) {
  return sturm_sign_changes(ch, a) - sturm_sign_changes(ch, b);
}

struct RootInterval {
  Rat lo, hi;  // open interval containing exactly one root, f(lo)f(hi) < 0
};

// Isolating intervals for all real roots of a squarefree polynomial,
// in ascending order.  Intervals have rational endpoints with f(lo)f(hi)<0.
inline std::vector<RootInterval> isolate_real_roots(const QPoly& f) {
  if (f.degree() < 1) return {};
  QPoly g = QPoly::gcd(f, f.derivative());
  QPoly sf = g.degree() > 0 ? f / g : f;  // squarefree part
  auto ch = sturm_chain(sf);
  // Cauchy bound
  Rat bound(1);
  for (int i = 0; i < sf.degree(); ++i) {
    Rat t = abs(sf[i] / sf.lc());
    if (t > bound) bound = t;
  }
  bound += 1;
  std::vector<RootInterval> out;
  struct Seg {
    Rat a, b;
    int count;
  };
  std::vector<Seg> work{{-bound, bound, sturm_count(ch, -bound, bound)}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      // Shrink until endpoints are not roots and signs differ.
      Rat a = s.a, b = s.b;
      while (sf.sign_at(a) == 0 || sf.sign_at(b) == 0 ||
             sf.sign_at(a) == sf.sign_at(b)) {
        Rat m = (a + b) / 2;
        int cm = sturm_count(ch, a, m);
        if (sf.sign_at(m) == 0) {
          // m is the root; nudge the window around it
          Rat w = (b - a) / 4;
          a = m - w;
          b = m + w;
          continue;
        }
        if (cm == 1)
          b = m;
        else
          a = m;
      }
      out.push_back({a, b});
      continue;
    }
    Rat m = (s.a + s.b) / 2;
    while (sf.sign_at(m) == 0) m = (s.a + m) / 2;
    int cl = sturm_count(ch, s.a, m);
    work.push_back({s.a, m, cl});
    work.push_back({m, s.b, s.count - cl});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) {
              return x.lo < y.lo;
            });
  return out;
}

// Halve an isolating interval once (exact bisection step).
inline void refine_root(const QPoly& f, RootInterval& iv) {
  Rat m = (iv.lo + iv.hi) / 2;
  int sm = f.sign_at(m);
  if (sm == 0) {
    // land exactly on the root: shrink symmetrically
    Rat w = (iv.hi - iv.lo) / 4;
    iv.lo = m - w;
    iv.hi = m + w;
    return;
  }
  if (sm == f.sign_at(iv.lo))
    iv.lo = m;
  else
    iv.hi = m;
}

// Sign of g at the unique root of f inside iv; refines iv as needed.
// Requires gcd(f, g) to not vanish at that root unless g == 0 there, in
// which case pass `may_vanish=true` after checking the gcd.
inline int sign_at_root(const QPoly& f, RootInterval& iv, const QPoly& g) {
  if (g.is_zero()) return 0;
  QPoly h = QPoly::gcd(f, g);
  if (h.degree() > 0) {
    // g shares a root with f; decide whether it is *this* root.
    auto ch = sturm_chain(h);
    if (sturm_count(ch, iv.lo, iv.hi) > 0) return 0;
  }
  for (int iter = 0; iter < 100000; ++iter) {
    // Interval evaluation by endpoint min/max on a Horner ladder is fiddly
    // with sign tracking; cheaper here: when g has no root in [lo,hi] its
    // sign is constant there, so the endpoint sign is the root sign.
    auto chg = sturm_chain(g);
    if (sturm_count(chg, iv.lo, iv.hi) == 0 && g.sign_at(iv.lo) != 0)
      return g.sign_at(iv.lo);
    refine_root(f, iv);
  }
  throw hmf_error("sign_at_root failed to converge");
}

}  // namespace hmf
