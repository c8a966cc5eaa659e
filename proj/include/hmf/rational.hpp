#pragma once

// Basic exact-arithmetic helpers shared across the library.
// All exact scalars are GMP mpq_class / mpz_class.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmf {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy mirrors the operation contracts: each condition gets its own
// type so callers (and the CLI exit-code mapping) can tell input rejection
// apart from internal limitations.
struct hmf_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_input : hmf_error {
  using hmf_error::hmf_error;
};
struct not_implemented : hmf_error {
  using hmf_error::hmf_error;
};
struct out_of_reach : hmf_error {
  using hmf_error::hmf_error;
};

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// floor(a/b) for exact integers, b != 0.
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int fmod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int pow_int(const Int& a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

inline Int powmod(const Int& a, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw invalid_input("invmod: not invertible");
  return r;
}

inline bool is_square(const Int& a, Int* root = nullptr) {
  if (a < 0) return false;
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  if (r * r == a) {
    if (root) *root = r;
    return true;
  }
  return false;
}

inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw invalid_input("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

// Floor of a rational.
inline Int rat_floor(const Rat& q) { return fdiv(q.get_num(), q.get_den()); }

// p-adic valuation of a nonzero rational.
inline long padic_val(const Rat& q, const Int& p) {
  if (q == 0) throw invalid_input("padic_val of zero");
  long v = 0;
  Int n = q.get_num();
  Int d = q.get_den();
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

// lambda_p: the p-primary fractional part of a rational, as a rational in
// [0,1) with p-power denominator. Tate's lambda composed over all p gives the
// fractional part mod 1.
inline Rat lambda_p(const Rat& x, const Int& p) {
  Int den = x.get_den();
  Int pk = 1;
  while (den % p == 0) {
    den /= p;
    pk *= p;
  }
  if (pk == 1) return Rat(0);
  // x = num / (den * pk), gcd(den, p)=1.  CRT: the p-part is
  // (num * den^{-1} mod pk) / pk.
  Int a = fmod(x.get_num() * invmod(den, pk), pk);
  Rat r(a, pk);
  r.canonicalize();
  return r;
}

inline std::vector<std::pair<Int, unsigned>> factor_int(Int n) {
  if (n < 0) n = -n;
  if (n == 0) throw invalid_input("factor_int(0)");
  std::vector<std::pair<Int, unsigned>> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline Int next_prime_after(const Int& p) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline bool is_prime_int(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline std::vector<Int> divisors_int(const Int& n) {
  auto f = factor_int(n);
  std::vector<Int> ds{1};
  for (auto& [p, e] : f) {
    size_t m = ds.size();
    Int pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
    }
  }
  return ds;
}

}  // namespace hmf
