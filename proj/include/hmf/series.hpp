#pragma once

// Truncated power series over an arbitrary coefficient ring (used for the
// zeta integral vs. local L-factor identities, where coefficients live in
// Q or Q(f) extended by the formal sqrt(q)).

#include <hmf/rational.hpp>

namespace hmf {

template <class V>
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(std::vector<V> c, size_t order) : c_(std::move(c)) {
    c_.resize(order + 1);
  }
  static TruncSeries zero(size_t order, const V& z) {
    return TruncSeries(std::vector<V>(order + 1, z), order);
  }

  size_t order() const { return c_.size() - 1; }
  const V& operator[](size_t i) const { return c_[i]; }
  V& operator[](size_t i) { return c_[i]; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    size_t n = std::min(a.order(), b.order());
    TruncSeries r = a;  // reuse ring structure of entries
    r.c_.assign(n + 1, a.c_[0] - a.c_[0]);  // zeros of the right ring
    for (size_t i = 0; i <= n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; i + j <= n; ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.c_ == b.c_;
  }

  TruncSeries inverse() const {
    V c0 = c_[0];
    V c0inv = c0.inverse();
    TruncSeries r = *this;
    r.c_.assign(order() + 1, c0 - c0);
    r.c_[0] = c0inv;
    for (size_t m = 1; m <= order(); ++m) {
      V s = c0 - c0;  // zero
      for (size_t i = 1; i <= m; ++i) s = s + c_[i] * r.c_[m - i];
      r.c_[m] = (c0 - c0) - s * c0inv;
    }
    return r;
  }

 private:
  std::vector<V> c_;
};

}  // namespace hmf
