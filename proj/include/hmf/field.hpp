#pragma once

// Totally real number fields with exact arithmetic.  Elements live in the
// power basis of a root theta of the defining polynomial; the integral basis
// (computed for degree <= 2, user-supplied and verified above that) gives
// the coordinate system used by ideals.

#include <hmf/poly.hpp>
#include <hmf/real.hpp>
#include <hmf/zmatrix.hpp>

#include <memory>

namespace hmf {

using QMat = std::vector<std::vector<Rat>>;

inline QMat qmat_inverse(QMat a) {
  size_t n = a.size();
  QMat inv(n, std::vector<Rat>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw invalid_input("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rat d = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline std::vector<Rat> qmat_vec(const QMat& a, const std::vector<Rat>& x) {
  std::vector<Rat> r(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
  return r;
}

class TotallyRealField;

// Field element as a polynomial in theta of degree < n.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const TotallyRealField* F, QPoly rep) : F_(F), rep_(std::move(rep)) {}

  const QPoly& rep() const { return rep_; }
  const TotallyRealField* field() const { return F_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rat rational_value() const {
    if (!is_rational()) throw invalid_input("element not rational");
    return rep_[0];
  }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.rep_ == b.rep_;
  }

 private:
  const TotallyRealField* F_ = nullptr;
  QPoly rep_;
};

class TotallyRealField {
 public:
  // basis: optional integral basis, each element given by power-basis
  // rational coordinates (length n).  Required for degree >= 3 unless the
  // power basis itself is maximal.
  static TotallyRealField build(const QPoly& f,
                                const std::vector<std::vector<Rat>>* basis_in =
                                    nullptr) {
    TotallyRealField F;
    if (!f.is_monic()) throw invalid_input("defining polynomial not monic");
    for (auto& c : f.coeffs())
      if (c.get_den() != 1)
        throw invalid_input("defining polynomial not integral");
    F.n_ = f.degree();
    if (F.n_ < 1) throw invalid_input("constant defining polynomial");
    if (QPoly::gcd(f, f.derivative()).degree() > 0)
      throw invalid_input("defining polynomial not squarefree");
    F.f_ = f;
    F.roots_ = isolate_real_roots(f);
    if ((int)F.roots_.size() != F.n_)
      throw invalid_input("defining polynomial not totally real");
    // Irreducibility guard where cheaply decidable.
    if (F.n_ == 2) {
      Rat Dq = f[1] * f[1] - Rat(4) * f[0];
      Int D = Dq.get_num();
      if (is_square(D)) throw invalid_input("defining polynomial reducible");
    } else if (F.n_ >= 2) {
      for (auto& d : divisors_int(abs(f[0].get_num()) == 0
                                      ? Int(1)
                                      : abs(f[0].get_num()))) {
        for (int s : {1, -1})
          if (f.eval(Rat(s * d)) == 0)
            throw invalid_input("defining polynomial reducible");
      }
    }

    QMat bmat;  // columns: power coords of integral basis elements
    if (F.n_ == 1) {
      bmat = {{Rat(1)}};
    } else if (F.n_ == 2 && !basis_in) {
      Rat b = f[1], c = f[0];
      Rat Dq = b * b - Rat(4) * c;
      Int D = Dq.get_num();
      // D = d * e^2 with d the field discriminant
      Int e = 1;
      for (auto& [p, m] : factor_int(D))
        for (unsigned i = 0; i + 1 < m; i += 2) e *= p;
      Int d = D / (e * e);
      if (fmod(d, 4) != 1) {
        d *= 4;
        e /= 2;
      }
      F.disc_ = d;
      // omega = (theta + (b+e)/2)/e when d odd, (theta + b/2)/e when d even;
      // both satisfy monic integral quadratics.
      Int bn = b.get_num();
      Rat c0 = (fmod(d, 4) == 1) ? Rat(Int(bn + e), Int(2 * e)) : Rat(bn, Int(2 * e));
      c0.canonicalize();
      bmat = {{Rat(1), c0}, {Rat(0), Rat(1, e)}};
    } else if (basis_in) {
      if ((int)basis_in->size() != F.n_)
        throw invalid_input("integral basis has wrong size");
      bmat.assign(F.n_, std::vector<Rat>(F.n_));
      for (int j = 0; j < F.n_; ++j)
        for (int i = 0; i < F.n_; ++i) bmat[i][j] = (*basis_in)[j][i];
    } else if (F.n_ == 1) {
    } else {
      throw not_implemented(
          "degree >= 3 requires a user-supplied integral basis");
    }
    F.basis_mat_ = bmat;
    F.to_integral_ = qmat_inverse(bmat);

    // Traces of powers of theta via Newton's identities:
    // p_k = -k a_{n-k} - sum_{i=1}^{min(k,n)-?} a_{n-i} p_{k-i}.
    F.power_traces_.assign(2 * F.n_, Rat(0));
    F.power_traces_[0] = Rat(F.n_);
    for (int k = 1; k < 2 * F.n_; ++k) {
      Rat v(0);
      for (int i = 1; i <= std::min(k - 1, F.n_); ++i)
        v += F.f_[F.n_ - i] * F.power_traces_[k - i];
      Rat pk = -v;
      if (k <= F.n_) pk -= Rat(k) * F.f_[F.n_ - k];
      F.power_traces_[k] = pk;
    }

    // Discriminant and index.
    Rat pd = poly_discriminant(f);
    Rat detb(1);
    {
      // determinant of basis matrix by fraction-free elimination
      QMat m = bmat;
      Rat det(1);
      size_t n = m.size();
      for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw invalid_input("integral basis not full rank");
        if (p != c) {
          std::swap(m[p], m[c]);
          det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
          Rat fq = m[r][c] / m[c][c];
          for (size_t j = c; j < n; ++j) m[r][j] -= fq * m[c][j];
        }
      }
      detb = det;
    }
    Rat discq = pd * detb * detb;
    if (discq.get_den() != 1)
      throw invalid_input("integral basis gives non-integral discriminant");
    F.disc_ = discq.get_num();
    Rat idx = Rat(1) / abs(detb);
    if (idx.get_den() != 1)
      throw invalid_input("integral basis does not contain Z[theta]");
    F.index_ = idx.get_num();

    // Ring verification: products of basis elements must be integral.
    for (int i = 0; i < F.n_; ++i)
      for (int j = i; j < F.n_; ++j) {
        FieldElem p = F.mul(F.basis_element(i), F.basis_element(j));
        if (!F.is_integral(p))
          throw invalid_input("integral basis is not multiplicatively closed");
      }
    return F;
  }

  int degree() const { return n_; }
  const QPoly& defining_poly() const { return f_; }
  const Int& discriminant() const { return disc_; }
  const Int& index() const { return index_; }

  FieldElem zero() const { return {this, QPoly()}; }
  FieldElem one() const { return {this, QPoly::constant(Rat(1))}; }
  FieldElem theta() const {
    return {this, n_ == 1 ? QPoly::constant(-f_[0]) : QPoly::x()};
  }
  FieldElem from_rat(const Rat& q) const { return {this, QPoly::constant(q)}; }
  FieldElem from_power(QPoly g) const {
    return {this, n_ == 1 ? QPoly::constant(g.eval(-f_[0])) : g % f_};
  }
  FieldElem basis_element(int i) const {
    std::vector<Rat> col(n_);
    for (int r = 0; r < n_; ++r) col[r] = basis_mat_[r][i];
    return from_integral(col, /*already_power=*/true);
  }
  // coords over the integral basis
  FieldElem from_integral(const std::vector<Rat>& co,
                          bool already_power = false) const {
    std::vector<Rat> pw =
        already_power ? co : qmat_vec(basis_mat_, co);
    return {this, QPoly(std::move(pw))};
  }
  std::vector<Rat> integral_coords(const FieldElem& a) const {
    std::vector<Rat> pw(n_, Rat(0));
    for (int i = 0; i < n_; ++i) pw[i] = a.rep()[i];
    return qmat_vec(to_integral_, pw);
  }
  bool is_integral(const FieldElem& a) const {
    for (auto& c : integral_coords(a))
      if (c.get_den() != 1) return false;
    return true;
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const {
    return {this, a.rep() + b.rep()};
  }
  FieldElem sub(const FieldElem& a, const FieldElem& b) const {
    return {this, a.rep() - b.rep()};
  }
  FieldElem neg(const FieldElem& a) const { return {this, Rat(-1) * a.rep()}; }
  FieldElem mul(const FieldElem& a, const FieldElem& b) const {
    return {this, (a.rep() * b.rep()) % f_};
  }
  FieldElem scale(const Rat& s, const FieldElem& a) const {
    return {this, s * a.rep()};
  }
  FieldElem inverse(const FieldElem& a) const {
    if (a.is_zero()) throw invalid_input("inverse of zero");
    // extended Euclid in Q[x]/(f)
    QPoly r0 = f_, r1 = a.rep(), s0, s1 = QPoly::constant(Rat(1));
    while (r1.degree() > 0) {
      auto [q, r] = QPoly::divmod(r0, r1);
      QPoly s2 = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.is_zero()) throw invalid_input("element not invertible");
    return {this, ((Rat(1) / r1[0]) * s1) % f_};
  }
  FieldElem div(const FieldElem& a, const FieldElem& b) const {
    return mul(a, inverse(b));
  }
  FieldElem pow(FieldElem a, long e) const {
    if (e < 0) return pow(inverse(a), -e);
    FieldElem r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Rat norm(const FieldElem& a) const {
    if (a.is_zero()) return Rat(0);
    return resultant(f_, a.rep());
  }
  Rat trace(const FieldElem& a) const {
    Rat t(0);
    for (int i = 0; i <= a.rep().degree(); ++i)
      t += a.rep()[i] * power_traces_[i];
    return t;
  }

  // Nontrivial automorphism for Galois quadratic fields: theta -> -a1-theta.
  FieldElem conj(const FieldElem& a) const {
    if (n_ == 1) return a;
    if (n_ != 2) throw not_implemented("conj only for degree <= 2");
    QPoly img({-f_[1], Rat(-1)});
    QPoly r = QPoly::constant(a.rep()[0]) + a.rep()[1] * img;
    return {this, r % f_};
  }

  // Signs of a at the real embeddings, ascending root order.
  std::vector<int> embedding_signs(const FieldElem& a) const {
    std::vector<int> s(n_);
    for (int j = 0; j < n_; ++j)
      s[j] = sign_at_root(f_, roots_[j], a.rep());
    return s;
  }
  bool is_totally_positive(const FieldElem& a) const {
    for (int s : embedding_signs(a))
      if (s <= 0) return false;
    return true;
  }

  // Certified real embedding eta_j(a).
  CertReal embed(const FieldElem& a, int j, mpfr_prec_t prec) const {
    RootInterval iv = roots_[j];
    Rat target_width(1, 1);
    for (mpfr_prec_t i = 0; i < prec + 8; ++i) target_width /= 2;
    while (iv.hi - iv.lo > target_width) refine_root(f_, iv);
    // interval Horner
    Rat lo = a.rep()[a.rep().degree() < 0 ? 0 : a.rep().degree()];
    Rat hi = lo;
    if (a.rep().is_zero()) {
      lo = hi = 0;
    } else {
      for (int i = a.rep().degree() - 1; i >= 0; --i) {
        Rat c1 = lo * iv.lo, c2 = lo * iv.hi, c3 = hi * iv.lo, c4 = hi * iv.hi;
        Rat nl = std::min(std::min(c1, c2), std::min(c3, c4));
        Rat nh = std::max(std::max(c1, c2), std::max(c3, c4));
        lo = nl + a.rep()[i];
        hi = nh + a.rep()[i];
      }
    }
    Rat mid = (lo + hi) / 2, half = (hi - lo) / 2;
    Real v = Real::from_rat(mid, prec);
    return {v, half.get_d() + CertReal::ulp_of(v)};
  }

  const std::vector<Rat>& power_traces() const { return power_traces_; }
  const QMat& basis_matrix() const { return basis_mat_; }

 private:
  int n_ = 0;
  QPoly f_;
  QMat basis_mat_;    // columns = power coords of integral basis
  QMat to_integral_;  // inverse of basis_mat_
  Int disc_ = 0, index_ = 1;
  std::vector<Rat> power_traces_;
  mutable std::vector<RootInterval> roots_;
};

}  // namespace hmf
