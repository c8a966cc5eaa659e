#pragma once
#include <cstdint>
#include <vector>

// Independent oracle for the Delta regression tests: tau(n) for n <= N from
// the eta product, Delta = q * (sum_k (-1)^k (2k+1) q^{k(k+1)/2})^8, computed
// by three dense squarings of the sparse cube.  Deligne's bound
// |tau(n)| <= d(n) n^{11/2} keeps everything inside __int128 well past the
// ranges used here; that bound is test-only knowledge and nothing in the
// library relies on it.
inline std::vector<__int128> tau_table(long N) {
  std::vector<__int128> s3(N, 0);
  for (long k = 0;; ++k) {
    long idx = k * (k + 1) / 2;
    if (idx >= N) break;
    s3[idx] = (k % 2 ? -1 : 1) * (__int128)(2 * k + 1);
  }
  auto sq = [&](const std::vector<__int128>& a) {
    std::vector<__int128> r(N, 0);
    for (long i = 0; i < N; ++i) {
      if (a[i] == 0) continue;
      for (long j = 0; i + j < N; ++j)
        if (a[j] != 0) r[i + j] += a[i] * a[j];
    }
    return r;
  };
  auto s6 = sq(s3), s12 = sq(s6), s24 = sq(s12);
  std::vector<__int128> tau(N + 1, 0);
  for (long n = 1; n <= N; ++n) tau[n] = s24[n - 1];
  return tau;
}
