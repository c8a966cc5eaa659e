#pragma once

// Non-archimedean local representation data in the Kirillov model of the
// new vector, the associated zeta series and local L-factors, and the
// spherical Hecke coset sum.  Values live in K extended by the formal
// sqrt(q); the unitary-normalization half powers never touch floats.

#include <hmf/qext.hpp>
#include <hmf/series.hpp>

namespace hmf {

enum class LocalType {
  UnramifiedPS,   // chi1, chi2 unramified: new vector on O
  RamifiedPSOneUnramified,  // chi1 unramified, chi2 ramified
  SteinbergUnramifiedTwist,   // St x chi, chi unramified
  DepthlessOther         // remaining types: new vector 1_{O^x}
};

template <class K>
struct NonArchRep {
  LocalType type = LocalType::DepthlessOther;
  Int q = 1;                // residue field size
  QExt<K> alpha, beta;      // UnramifiedPS Satake values (when known)
  bool has_pair = false;    // alpha/beta individually available
  QExt<K> sum, prod;        // alpha+beta and alpha*beta (always set)
  QExt<K> chi_pi;           // chi1(pi) (one-ramified) or chi(pi) (Steinberg)
  long cond_exp = 0;        // conductor exponent; 0 iff unramified PS

  static NonArchRep unramified(const Int& q, QExt<K> a, QExt<K> b) {
    NonArchRep r;
    r.type = LocalType::UnramifiedPS;
    r.q = q;
    r.alpha = std::move(a);
    r.beta = std::move(b);
    r.has_pair = true;
    r.sum = r.alpha + r.beta;
    r.prod = r.alpha * r.beta;
    if (r.prod.is_zero())
      throw invalid_input("unramified principal series needs alpha*beta != 0");
    return r;
  }
  // Satake data known only through the symmetric invariants
  static NonArchRep unramified_invariants(const Int& q, QExt<K> s,
                                          QExt<K> p) {
    NonArchRep r;
    r.type = LocalType::UnramifiedPS;
    r.q = q;
    r.sum = std::move(s);
    r.prod = std::move(p);
    if (r.prod.is_zero())
      throw invalid_input("unramified principal series needs alpha*beta != 0");
    return r;
  }
  static NonArchRep one_ramified(const Int& q, QExt<K> c1pi, long c = 1) {
    NonArchRep r;
    r.type = LocalType::RamifiedPSOneUnramified;
    r.q = q;
    r.chi_pi = std::move(c1pi);
    r.cond_exp = c;
    return r;
  }
  static NonArchRep steinberg(const Int& q, QExt<K> cpi) {
    NonArchRep r;
    r.type = LocalType::SteinbergUnramifiedTwist;
    r.q = q;
    r.chi_pi = std::move(cpi);
    r.cond_exp = 1;
    return r;
  }
  static NonArchRep other(const Int& q, long c = 2) {
    NonArchRep r;
    r.q = q;
    r.cond_exp = c;
    return r;
  }
};

// W(pi^m of the Kirillov new vector (Casselman/new-vector table):
//   unram PS:      |x|^{1/2} sum_{k+l=m} alpha^k beta^l   on O
//   one ramified:  |x|^{1/2} chi1(x)                      on O
//   St x unram:    |x| chi(x)                             on O
//   other:         1_{O^x}
template <class K>
QExt<K> kirillov_new_value(const NonArchRep<K>& r, long m) {
  QExt<K> zero(r.q);
  if (m < 0) return zero;
  switch (r.type) {
    case LocalType::UnramifiedPS: {
      // h_m(alpha, beta) by the sym-power recursion h_m = s h_{m-1} - p h_{m-2}
      QExt<K> h0 = QExt<K>::from_rat(Rat(1), r.q);
      if (m == 0) return h0;
      const QExt<K>&s = r.sum, &p = r.prod;
      QExt<K> hm1 = h0, hm = s;
      for (long i = 2; i <= m; ++i) {
        QExt<K> nxt = s * hm - p * hm1;
        hm1 = hm;
        hm = nxt;
      }
      return QExt<K>::half_power(r.q, -m) * hm;
    }
    case LocalType::RamifiedPSOneUnramified: {
      QExt<K> v = QExt<K>::from_rat(Rat(1), r.q);
      for (long i = 0; i < m; ++i) v = v * r.chi_pi;
      return QExt<K>::half_power(r.q, -m) * v;
    }
    case LocalType::SteinbergUnramifiedTwist: {
      QExt<K> v = QExt<K>::from_rat(Rat(1), r.q);
      for (long i = 0; i < m; ++i) v = v * r.chi_pi;
      return QExt<K>::half_power(r.q, -2 * m) * v;
    }
    case LocalType::DepthlessOther:
      return m == 0 ? QExt<K>::from_rat(Rat(1), r.q) : zero;
  }
  return zero;
}

// Zeta series Z(X) = sum_m W(pi^m) q^{m/2} X^m, truncated at `order`.
template <class K>
TruncSeries<QExt<K>> zeta_series(const NonArchRep<K>& r, size_t order) {
  std::vector<QExt<K>> c(order + 1, QExt<K>(r.q));
  for (size_t m = 0; m <= order; ++m)
    c[m] = QExt<K>::half_power(r.q, (long)m) * kirillov_new_value(r, (long)m);
  return TruncSeries<QExt<K>>(std::move(c), order);
}

// Local L-factor as a polynomial in X = q^{-s} (inverse Euler factor),
// returned as a truncated series.
template <class K>
TruncSeries<QExt<K>> local_l_polynomial(const NonArchRep<K>& r, size_t order) {
  auto one = QExt<K>::from_rat(Rat(1), r.q);
  std::vector<QExt<K>> c(order + 1, QExt<K>(r.q));
  c[0] = one;
  switch (r.type) {
    case LocalType::UnramifiedPS:
      // (1 - alpha X)(1 - beta X)
      if (order >= 1) c[1] = QExt<K>(r.q) - r.sum;
      if (order >= 2) c[2] = r.prod;
      break;
    case LocalType::RamifiedPSOneUnramified:
      if (order >= 1) c[1] = QExt<K>(r.q) - r.chi_pi;
      break;
    case LocalType::SteinbergUnramifiedTwist:
      // L(s + 1/2, chi): (1 - chi(pi) q^{-1/2} X)
      if (order >= 1)
        c[1] = QExt<K>(r.q) - r.chi_pi * QExt<K>::half_power(r.q, -1);
      break;
    case LocalType::DepthlessOther:
      break;
  }
  return TruncSeries<QExt<K>>(std::move(c), order);
}

// Exact new-vector zeta identity: Z(X) * L(X)^{-1 polynomial} == 1 + O(X^{M+1}).
template <class K>
bool zeta_identity_holds(const NonArchRep<K>& r, size_t order) {
  auto prod = zeta_series(r, order) * local_l_polynomial(r, order);
  auto one = QExt<K>::from_rat(Rat(1), r.q);
  for (size_t m = 0; m <= order; ++m) {
    QExt<K> want = (m == 0) ? one : QExt<K>(r.q);
    if (!(prod[m] - want).is_zero()) return false;
  }
  return true;
}

// Spherical Hecke operator on the normalized induced model: the coset sum
//   f(diag(1,pi)) + sum_{u in O/P} f([[pi,u],[0,1]])
// evaluated literally term by term; must equal q^{1/2}(alpha + beta).
template <class K>
QExt<K> spherical_coset_sum(const NonArchRep<K>& r) {
  if (r.type != LocalType::UnramifiedPS || !r.has_pair)
    throw invalid_input("coset sum needs explicit Satake parameters");
  // f(diag(1,pi)) = chi2(pi) |1/pi|^{1/2} = beta * q^{1/2}
  QExt<K> total = r.beta * QExt<K>::half_power(r.q, 1);
  // each of the q cosets [[pi,u],[0,1]] contributes chi1(pi)|pi|^{1/2}
  QExt<K> term = r.alpha * QExt<K>::half_power(r.q, -1);
  for (Int u = 0; u < r.q; ++u) total = total + term;
  return total;
}

template <class K>
QExt<K> spherical_eigenvalue(const NonArchRep<K>& r) {
  if (r.type != LocalType::UnramifiedPS)
    throw invalid_input("eigenvalue formula needs unramified principal series");
  return QExt<K>::half_power(r.q, 1) * r.sum;
}

}  // namespace hmf
