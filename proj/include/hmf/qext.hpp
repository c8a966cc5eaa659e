#pragma once

// Values extended by a formal half-power of q: elements a + b*Q with
// Q^2 = q.  When q is a perfect square the symbol collapses to the integer
// square root and values stay in the base field.  Base field K needs
// +,-,*,==, construction from Rat, and inversion for series work.

#include <hmf/rational.hpp>

namespace hmf {

template <class K>
struct QExt {
  K a{}, b{};  // a + b*Q
  Int q = 1;
  Int sq = 1;      // if q is a square: Q = sq exactly, b stays 0
  bool square = true;

  QExt() = default;
  explicit QExt(const Int& qq) { set_q(qq); }

  void set_q(const Int& qq) {
    q = qq;
    square = is_square(q, &sq);
  }

  static QExt from_base(const K& x, const Int& qq) {
    QExt r(qq);
    r.a = x;
    return r;
  }
  static QExt from_rat(const Rat& x, const Int& qq) {
    return from_base(K(x), qq);
  }
  // Q^e for integer e (possibly negative)
  static QExt half_power(const Int& qq, long e) {
    QExt r(qq);
    Rat scale(1);
    long half = 0;
    if (e >= 0) {
      half = e % 2;
      for (long i = 0; i < e / 2; ++i) scale *= Rat(qq);
    } else {
      long m = -e;
      // Q^{-1} = Q / q
      half = m % 2;
      // Q^{-m} = q^{-ceil(m/2)} * Q^{m mod 2}
      for (long i = 0; i < (m + 1) / 2; ++i) scale /= Rat(qq);
    }
    if (half == 0) {
      r.a = K(scale);
    } else if (r.square) {
      r.a = K(scale * Rat(r.sq));
    } else {
      r.b = K(scale);
    }
    return r;
  }

  bool compatible(const QExt& o) const { return q == o.q; }

  friend QExt operator+(const QExt& x, const QExt& y) {
    if (!x.compatible(y)) throw invalid_input("QExt: mixed q");
    QExt r(x.q);
    r.a = x.a + y.a;
    r.b = x.b + y.b;
    return r;
  }
  friend QExt operator-(const QExt& x, const QExt& y) {
    if (!x.compatible(y)) throw invalid_input("QExt: mixed q");
    QExt r(x.q);
    r.a = x.a - y.a;
    r.b = x.b - y.b;
    return r;
  }
  friend QExt operator*(const QExt& x, const QExt& y) {
    if (!x.compatible(y)) throw invalid_input("QExt: mixed q");
    QExt r(x.q);
    K qk{Rat(x.q)};
    r.a = x.a * y.a + qk * (x.b * y.b);
    r.b = x.a * y.b + x.b * y.a;
    return r;
  }
  friend bool operator==(const QExt& x, const QExt& y) {
    return x.q == y.q && x.a == y.a && x.b == y.b;
  }

  bool is_zero() const { return a == K{} && b == K{}; }

  QExt inverse() const {
    // (a + bQ)^{-1} = (a - bQ)/(a^2 - b^2 q); q non-square keeps this a field
    QExt r(q);
    K qk{Rat(q)};
    K den = a * a - qk * (b * b);
    if (den == K{}) throw invalid_input("QExt: not invertible");
    K deninv = inv(den);
    r.a = a * deninv;
    r.b = (K{} - b) * deninv;
    return r;
  }

  // hook for base-field inversion; specialize/overload per K
  static K inv(const K& x);
};

template <>
inline Rat QExt<Rat>::inv(const Rat& x) {
  if (x == 0) throw invalid_input("division by zero");
  return Rat(1) / x;
}

// normalize: when q is a perfect square, fold b into a (used by builders)
template <class K>
inline QExt<K> normalized(QExt<K> x) {
  if (x.square && !(x.b == K{})) {
    x.a = x.a + K(Rat(x.sq)) * x.b;
    x.b = K{};
  }
  return x;
}

}  // namespace hmf
