#pragma once

// The coefficient field Q(f) = Q[x]/(g): elements as residue polynomials,
// automorphisms by generator image, real embeddings through isolated roots
// of g.  A null field pointer means "rational constant", which lets these
// values live inside generic containers with default construction.

#include <hmf/poly.hpp>
#include <hmf/qext.hpp>
#include <hmf/real.hpp>

#include <memory>

namespace hmf {

struct CoefField {
  QPoly g;                          // monic defining polynomial
  std::vector<RootInterval> roots;  // isolated real roots, one per embedding

  explicit CoefField(QPoly gg) : g(std::move(gg)) {
    if (g.degree() < 1) throw invalid_input("defining polynomial is constant");
    if (!(g[g.degree()] == 1))
      throw invalid_input("defining polynomial must be monic");
    QPoly d = g.derivative();
    if (QPoly::gcd(g, d).degree() > 0)
      throw invalid_input("defining polynomial must be squarefree");
    roots = isolate_real_roots(g);
    if ((int)roots.size() != g.degree())
      throw invalid_input("coefficient field must be totally real");
  }

  int degree() const { return g.degree(); }
};

class NFElem {
 public:
  NFElem() : rep_({Rat(0)}) {}
  NFElem(const Rat& c) : rep_({c}) {}  // rational constant, fieldless
  NFElem(std::shared_ptr<const CoefField> F, QPoly rep)
      : F_(std::move(F)), rep_(rep % F_->g) {}

  const std::shared_ptr<const CoefField>& field() const { return F_; }
  const QPoly& rep() const { return rep_; }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rat rational_value() const {
    if (!is_rational()) throw invalid_input("value is irrational");
    return rep_.degree() < 0 ? Rat(0) : rep_[0];
  }

  static NFElem gen(std::shared_ptr<const CoefField> F) {
    return NFElem(std::move(F), QPoly({Rat(0), Rat(1)}));
  }

  friend NFElem operator+(const NFElem& a, const NFElem& b) {
    auto F = merge(a, b);
    NFElem r;
    r.F_ = F;
    r.rep_ = a.rep_ + b.rep_;
    return r;
  }
  friend NFElem operator-(const NFElem& a, const NFElem& b) {
    auto F = merge(a, b);
    NFElem r;
    r.F_ = F;
    r.rep_ = a.rep_ - b.rep_;
    return r;
  }
  friend NFElem operator*(const NFElem& a, const NFElem& b) {
    auto F = merge(a, b);
    NFElem r;
    r.F_ = F;
    r.rep_ = F ? (a.rep_ * b.rep_) % F->g : a.rep_ * b.rep_;
    return r;
  }
  friend bool operator==(const NFElem& a, const NFElem& b) {
    merge(a, b);  // compatibility check
    return (a.rep_ - b.rep_).is_zero();
  }
  bool is_zero() const { return rep_.is_zero(); }

  NFElem inverse() const {
    if (is_zero()) throw invalid_input("division by zero");
    if (!F_ || is_rational()) return NFElem(Rat(1) / rep_[0]);
    auto [gcd, u] = bezout_first(rep_, F_->g);
    if (gcd.degree() != 0) throw hmf_error("non-invertible residue");
    return NFElem(F_, u * QPoly({Rat(1) / gcd[0]}));
  }

  // automorphism sending the generator to u (requires g(u) = 0 mod g)
  NFElem apply_auto(const QPoly& u) const {
    if (!F_ || is_rational()) return *this;
    QPoly out({Rat(0)});
    for (int i = rep_.degree(); i >= 0; --i)
      out = (out * u) % F_->g + QPoly({rep_[i]});
    return NFElem(F_, out);
  }

  // real embedding through the j-th isolated root of g
  CertReal embed(int j, long prec) const {
    if (!F_ || is_rational()) {
      Rat c = rep_.degree() < 0 ? Rat(0) : rep_[0];
      Real v = Real::from_rat(c, prec);
      return {v, CertReal::ulp_of(v)};
    }
    RootInterval iv = F_->roots.at(j);
    Rat target(1);
    for (long i = 0; i < prec + 16; ++i) target /= 2;
    while (iv.hi - iv.lo > target) refine_root(F_->g, iv);
    // interval Horner over [lo, hi]
    Rat lo(0), hi(0);
    for (int i = rep_.degree(); i >= 0; --i) {
      Rat l1 = lo * iv.lo, l2 = lo * iv.hi, h1 = hi * iv.lo, h2 = hi * iv.hi;
      Rat nl = std::min({l1, l2, h1, h2}) + rep_[i];
      Rat nh = std::max({l1, l2, h1, h2}) + rep_[i];
      lo = nl;
      hi = nh;
    }
    Rat mid = (lo + hi) / 2;
    Real v = Real::from_rat(mid, prec);
    Rat radq = (hi - lo) / 2;
    double rad = std::abs(radq.get_d()) * (1 + 1e-9) + 1e-300 +
                 CertReal::ulp_of(v);
    return {v, rad};
  }

 private:
  std::shared_ptr<const CoefField> F_;  // null: plain rational
  QPoly rep_;

  static std::shared_ptr<const CoefField> merge(const NFElem& a,
                                                const NFElem& b) {
    if (a.F_ && b.F_ && a.F_ != b.F_)
      throw invalid_input("mixed coefficient fields");
    return a.F_ ? a.F_ : b.F_;
  }

  // first Bezout coefficient u with u*a + v*b = gcd(a,b)
  static std::pair<QPoly, QPoly> bezout_first(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly u0({Rat(1)}), u1({Rat(0)});
    while (!r1.is_zero()) {
      auto [q, r] = QPoly::divmod(r0, r1);
      QPoly u2 = u0 - q * u1;
      r0 = r1;
      r1 = r;
      u0 = u1;
      u1 = u2;
    }
    return {r0, u0};
  }
};

template <>
inline NFElem QExt<NFElem>::inv(const NFElem& x) {
  return x.inverse();
}

// minimal polynomial of x over Q inside its field (degree of Q(x))
inline QPoly minimal_polynomial(const NFElem& x) {
  if (!x.field() || x.is_rational()) {
    Rat c = x.is_rational() ? x.rational_value() : Rat(0);
    return QPoly({-c, Rat(1)});
  }
  int n = x.field()->degree();
  // find a linear dependence among 1, x, ..., x^d by Gaussian elimination
  std::vector<QPoly> pows;
  NFElem p(Rat(1));
  for (int d = 0; d <= n; ++d) {
    pows.push_back(p.rep());
    p = p * x;
    // solve sum c_i pows[i] = 0 with c_d = 1
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(d + 2, Rat(0)));
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= pows[i].degree(); ++j) m[j][i] = pows[i][j];
    for (int j = 0; j <= p.rep().degree(); ++j) m[j][d + 1] = p.rep()[j];
    // eliminate: does column d+1 lie in span of columns 0..d?
    std::vector<Rat> rhs(n);
    for (int j = 0; j < n; ++j) rhs[j] = m[j][d + 1];
    int row = 0;
    std::vector<Rat> sol(d + 1, Rat(0));
    // forward elimination on the (n x (d+1)) system
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(d + 1));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= d; ++i) A[j][i] = m[j][i];
    std::vector<int> where(d + 1, -1);
    for (int col = 0; col <= d && row < n; ++col) {
      int piv = -1;
      for (int j = row; j < n; ++j)
        if (A[j][col] != 0) { piv = j; break; }
      if (piv < 0) continue;
      std::swap(A[piv], A[row]);
      std::swap(rhs[piv], rhs[row]);
      Rat inv = Rat(1) / A[row][col];
      for (int i = col; i <= d; ++i) A[row][i] *= inv;
      rhs[row] *= inv;
      for (int j = 0; j < n; ++j) {
        if (j == row || A[j][col] == 0) continue;
        Rat f = A[j][col];
        for (int i = col; i <= d; ++i) A[j][i] -= f * A[row][i];
        rhs[j] -= f * rhs[row];
      }
      where[col] = row;
      ++row;
    }
    bool consistent = true;
    for (int j = row; j < n; ++j)
      if (rhs[j] != 0) consistent = false;
    if (!consistent) continue;
    for (int col = 0; col <= d; ++col)
      if (where[col] >= 0) sol[col] = rhs[where[col]];
    // minimal poly: X^{d+1} - sum sol_i X^i
    std::vector<Rat> c(d + 2, Rat(0));
    c[d + 1] = 1;
    for (int i = 0; i <= d; ++i) c[i] = -sol[i];
    return QPoly(c);
  }
  throw hmf_error("minimal polynomial search failed");
}

}  // namespace hmf
