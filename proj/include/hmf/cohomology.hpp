#pragma once

// Cohomological weight bookkeeping: the two weight normalizations, the
// archimedean constants d_inf and c, the delta-action on the cocycle pair
// and the GL(1) branching condition.

#include <hmf/cyclotomic.hpp>

#include <vector>

namespace hmf {

struct CohomologicalWeight {
  std::vector<std::pair<Int, Int>> mu;  // (a_j, b_j), a_j >= b_j
  Int w = 0;                            // purity weight, a_j + b_j = w

  void check() const {
    for (const auto& [a, b] : mu) {
      if (a < b) throw invalid_input("weight pair out of order");
      if (a + b != w) throw invalid_input("purity violated");
    }
  }
};

// twisted = true: mu_j = ((k0+k_j-2)/2, (k0-k_j+2)/2), w = k0.
// twisted = false (all k_j even): mu_j = ((k_j-2)/2, -(k_j-2)/2), w = 0.
inline CohomologicalWeight cohomological_weight(const std::vector<long>& k,
                                                bool twisted) {
  if (k.empty()) throw invalid_input("empty weight vector");
  long k0 = *std::max_element(k.begin(), k.end());
  for (long kj : k) {
    if (kj < 1) throw invalid_input("weights must be >= 1");
    if ((kj - k0) % 2 != 0)
      throw invalid_input("weight parity condition fails");
    if (!twisted && kj % 2 != 0)
      throw invalid_input("untwisted weight needs all k_j even");
  }
  CohomologicalWeight out;
  out.w = twisted ? Int(k0) : Int(0);
  for (long kj : k) {
    if (twisted)
      out.mu.emplace_back(Int((k0 + kj - 2) / 2), Int((k0 - kj + 2) / 2));
    else
      out.mu.emplace_back(Int((kj - 2) / 2), Int(-(kj - 2) / 2));
  }
  out.check();
  return out;
}

// d_inf = sum (a_j + 1);  c = 4^n prod (-1)^{a_j} (a_j - b_j)! / (-b_j)!.
struct ArchConstants {
  Int d_inf;
  Int c;
};

inline ArchConstants archimedean_constants(const CohomologicalWeight& mu) {
  mu.check();
  ArchConstants out{0, 1};
  for (const auto& [a, b] : mu.mu) {
    if (b > 0) throw invalid_input("negative factorial: need -b_j >= 0");
    out.d_inf += a + 1;
    Int num = 1, den = 1;
    mpz_fac_ui(num.get_mpz_t(), mpz_get_ui(Int(a - b).get_mpz_t()));
    mpz_fac_ui(den.get_mpz_t(), mpz_get_ui(Int(-b).get_mpz_t()));
    Int term = num / den;  // (a-b)!/(-b)! is integral since a-b >= -b
    if (Int(a % 2) != 0) term = -term;
    out.c *= 4 * term;
  }
  if (out.c == 0) throw hmf_error("archimedean constant vanished");
  return out;
}

// Matrix of delta on the cocycle basis (f_{-2}, f_2): off-diagonal with
// entries i^{nu1-nu2} and i^{nu2-nu1}.  Eigenvectors f_2 +- i^{nu2-nu1} f_{-2}
// with eigenvalues +-1.
struct DeltaAction {
  Cyclo m00, m01, m10, m11;     // matrix over Q(i)
  Cyclo eigcoef_plus;           // f_2 + eigcoef * f_{-2} has eigenvalue +1
  Cyclo eigcoef_minus;          // ... eigenvalue -1
};

inline DeltaAction delta_matrix(long nu1, long nu2) {
  if (nu1 < nu2) throw invalid_input("weight order: need nu1 >= nu2");
  long d = nu1 - nu2;
  Cyclo i_pow = Cyclo::root_of_unity(4, ((d % 4) + 4) % 4);
  Cyclo i_neg = Cyclo::root_of_unity(4, (((-d) % 4) + 4) % 4);
  DeltaAction out;
  Cyclo zero;
  out.m00 = zero;
  out.m11 = zero;
  out.m01 = i_neg;  // delta f_2   = i^{nu2-nu1} f_{-2}
  out.m10 = i_pow;  // delta f_{-2} = i^{nu1-nu2} f_2
  out.eigcoef_plus = i_neg;
  out.eigcoef_minus = zero - i_neg;
  // delta(f_2 + c f_{-2}) = i^{nu2-nu1} f_{-2} + c i^{nu1-nu2} f_2:
  // eigenvalue lambda needs c i^{nu1-nu2} = lambda and i^{nu2-nu1} = lambda c
  for (int sgn : {+1, -1}) {
    const Cyclo& c = sgn > 0 ? out.eigcoef_plus : out.eigcoef_minus;
    Cyclo lam = c * i_pow;
    Cyclo lhs = i_neg;
    Cyclo rhs = lam * c;
    if (!(lhs == rhs)) throw hmf_error("delta eigenvector check failed");
    Cyclo want = sgn > 0 ? Cyclo::root_of_unity(4, 0)
                         : zero - Cyclo::root_of_unity(4, 0);
    if (!(lam == want)) throw hmf_error("delta eigenvalue check failed");
  }
  return out;
}

// Branching of the GL(1)-restriction: nonzero iff the weight window
// {j - nu1 : 0 <= j <= nu1 - nu2} contains 0, i.e. nu1 >= 0 >= nu2.
struct Gl1Branching {
  bool nonzero = false;
  long projection_index = -1;
};

inline Gl1Branching gl1_branching(long nu1, long nu2) {
  if (nu1 < nu2) throw invalid_input("weight order: need nu1 >= nu2");
  Gl1Branching out;
  for (long j = 0; j <= nu1 - nu2; ++j) {
    if (j - nu1 == 0) {
      out.nonzero = true;
      out.projection_index = nu1;
      break;
    }
  }
  return out;
}

}  // namespace hmf
