#pragma once

// Thin RAII wrapper over MPFR plus coarse certified (value, radius)
// arithmetic.  Radii are tracked as doubles with generous ulp padding;
// values at desk scale stay far inside double range.

#include <hmf/rational.hpp>

#include <mpfr.h>

#include <cmath>
#include <string>

namespace hmf {

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(Real o) {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real from_rat(const Rat& q, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static Real from_int(const Int& n, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.v_, n.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real from_double(double d, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sgn() const { return mpfr_sgn(v_); }
  bool is_nan() const { return mpfr_nan_p(v_); }

  std::string str(size_t digits = 0) const {
    if (digits == 0) digits = (size_t)(prec() * 0.30103) + 1;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", (int)digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

#define HMF_REAL_BINOP(op, fn)                                   \
  friend Real operator op(const Real& a, const Real& b) {        \
    Real r(std::max(a.prec(), b.prec()));                        \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                             \
    return r;                                                    \
  }
  HMF_REAL_BINOP(+, mpfr_add)
  HMF_REAL_BINOP(-, mpfr_sub)
  HMF_REAL_BINOP(*, mpfr_mul)
  HMF_REAL_BINOP(/, mpfr_div)
#undef HMF_REAL_BINOP

  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const Real& a, const Real& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }

  Real abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define HMF_REAL_UNFN(name, fn)        \
  Real name() const {                  \
    Real r(prec());                    \
    fn(r.v_, v_, MPFR_RNDN);           \
    return r;                          \
  }
  HMF_REAL_UNFN(exp, mpfr_exp)
  HMF_REAL_UNFN(log, mpfr_log)
  HMF_REAL_UNFN(sqrt, mpfr_sqrt)
  HMF_REAL_UNFN(sin, mpfr_sin)
  HMF_REAL_UNFN(cos, mpfr_cos)
  HMF_REAL_UNFN(gamma, mpfr_gamma)
  HMF_REAL_UNFN(zeta, mpfr_zeta)
#undef HMF_REAL_UNFN

  Real pow(const Real& e) const {
    Real r(std::max(prec(), e.prec()));
    mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

// Value with a certified error radius: |true - v| <= rad.
struct CertReal {
  Real v;
  double rad = 0.0;

  explicit CertReal(mpfr_prec_t prec = 128) : v(prec) {}
  CertReal(Real val, double r) : v(std::move(val)), rad(r) {}
  static CertReal exact_rat(const Rat& q, mpfr_prec_t prec) {
    Real r = Real::from_rat(q, prec);
    return {r, ulp_of(r)};
  }

  static double ulp_of(const Real& x) {
    double a = std::fabs(x.to_double());
    return (a + 1e-300) * std::ldexp(2.0, -(int)std::min<long>(x.prec(), 1000));
  }

  friend CertReal operator+(const CertReal& a, const CertReal& b) {
    Real v = a.v + b.v;
    return {v, a.rad + b.rad + ulp_of(v)};
  }
  friend CertReal operator-(const CertReal& a, const CertReal& b) {
    Real v = a.v - b.v;
    return {v, a.rad + b.rad + ulp_of(v)};
  }
  friend CertReal operator*(const CertReal& a, const CertReal& b) {
    Real v = a.v * b.v;
    double ma = std::fabs(a.v.to_double()) + a.rad;
    double mb = std::fabs(b.v.to_double()) + b.rad;
    return {v, ma * b.rad + mb * a.rad + ulp_of(v)};
  }
  friend CertReal operator-(const CertReal& a) { return {-a.v, a.rad}; }
};

struct CertComplex {
  CertReal re, im;

  explicit CertComplex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  CertComplex(CertReal r, CertReal i) : re(std::move(r)), im(std::move(i)) {}
  static CertComplex exact_rat(const Rat& q, mpfr_prec_t prec) {
    return {CertReal::exact_rat(q, prec), CertReal::exact_rat(Rat(0), prec)};
  }

  double radius() const { return re.rad + im.rad; }

  friend CertComplex operator+(const CertComplex& a, const CertComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend CertComplex operator-(const CertComplex& a, const CertComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend CertComplex operator*(const CertComplex& a, const CertComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }

  CertReal abs2() const { return re * re + im * im; }

  CertComplex conj() const { return {re, -im}; }
};

// e^{2 pi i t} for rational t, with certified radius.
inline CertComplex cexp2pi(const Rat& t, mpfr_prec_t prec) {
  Real ang = Real::pi(prec) * Real::from_rat(2 * t, prec);
  Real c = ang.cos(), s = ang.sin();
  double r = 4 * CertReal::ulp_of(ang) + CertReal::ulp_of(c);
  return {CertReal(c, r), CertReal(s, r)};
}

}  // namespace hmf
