#include <hmf/lseries.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "tau_oracle.hpp"

using namespace hmf;

namespace {

double num(const Real& r) { return mpfr_get_d(r.raw(), MPFR_RNDN); }

HilbertNewformData delta_primes(const TotallyRealField* F, long bound,
                                const std::vector<__int128>& tau) {
  HilbertNewformData f;
  f.F = F;
  f.k = {12};
  f.level = FracIdeal::ring_of_integers(F);
  f.bound = bound;
  f.finish();
  f.C[FracIdeal::ring_of_integers(F).key()] = NFElem(Rat(1));
  for (Int p = 2; p <= f.bound; p = next_prime_after(p))
    f.C[FracIdeal::principal(F, F->from_rat(Rat(p))).key()] =
        NFElem(Rat((long)(long long)tau[p.get_si()]));
  return f;
}

}  // namespace

TEST_CASE("Euler expansion of Delta reproduces the eta-product oracle") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(1000);
  auto f = delta_primes(&F, 1000, tau);
  auto ser = coefficients_from_euler(f, Int(1000), SeriesNorm::Classical);
  for (size_t i = 0; i < ser.ideals.size(); ++i) {
    long n = ser.ideals[i].norm.get_si();
    CHECK(ser.values[i] == NFElem(Rat((long)(long long)tau[n])));
  }
}

TEST_CASE("certified evaluation: consistency across truncation bounds") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(2000);
  auto f = delta_primes(&F, 2000, tau);
  auto s500 = coefficients_from_euler(f, Int(500), SeriesNorm::Classical);
  auto s2k = coefficients_from_euler(f, Int(2000), SeriesNorm::Classical);
  auto lv1 = evaluate_finite_L(s500, Rat(8), 128);
  auto lv2 = evaluate_finite_L(s2k, Rat(8), 128);
  double d = std::abs(num(lv1.value.v) - num(lv2.value.v));
  CHECK(d <= lv1.tail + lv2.tail);
  CHECK(lv2.tail < lv1.tail);  // the tail bound shrinks with the truncation
  // below the convergence threshold: refused, never approximated
  CHECK_THROWS_AS(evaluate_finite_L(s2k, Rat(6), 128), out_of_reach);
}

TEST_CASE("all-ones series recovers zeta(2) within its certificate") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  DirichletSeries zs;
  zs.F = &F;
  zs.norm = SeriesNorm::Classical;
  zs.k0 = 1;
  zs.bound = 5000;
  zs.ideals = enumerate_ideals(&F, Int(5000));
  zs.values.assign(zs.ideals.size(), NFElem(Rat(1)));
  zs.rebuild_index();
  auto zv = evaluate_finite_L(zs, Rat(2), 128);
  Real basel = Real::pi(128) * Real::pi(128) / Real::from_int(6, 128);
  CHECK(std::abs(num(zv.value.v) - num(basel)) <= zv.total_radius());
}

TEST_CASE("unitary-classical shift relation for Delta") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(600);
  auto f = delta_primes(&F, 600, tau);
  auto rep = shift_relation_check(f, {Rat(3), Rat(7, 2), Rat(4)}, Int(500), 128);
  CHECK(rep.exact_ok);
  CHECK(rep.arch_ok);
  CHECK(rep.ok());
}

TEST_CASE("quadratic twist: values, zeros at the conductor, involution") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(400);
  auto f = delta_primes(&F, 400, tau);
  auto ser = coefficients_from_euler(f, Int(400), SeriesNorm::Classical);

  auto G = std::make_shared<NarrowClassGroup>(narrow_class_group(&F));
  auto n5 = FracIdeal::principal(&F, F.from_rat(Rat(5)));
  auto R5 = std::make_shared<ResidueRing>(&F, n5);
  ResidueCharacter chi5(R5, {R5->unit_gen_orders()[0] / 2});
  auto hc = adelize(&F, chi5, G, 1);

  auto tw = twist_series(ser, hc);
  auto P2 = FracIdeal::principal(&F, F.from_rat(Rat(2)));
  auto P5 = FracIdeal::principal(&F, F.from_rat(Rat(5)));
  CHECK(*tw.at(P2.key()) == NFElem(Rat(24)));  // (2|5) = -1 flips tau(2)
  CHECK(tw.at(P5.key())->is_zero());

  auto tw2 = twist_series(tw, hc);
  for (size_t i = 0; i < tw2.ideals.size(); ++i) {
    if (!tw2.ideals[i].ideal.is_coprime_to(n5)) continue;
    CHECK(tw2.values[i] == ser.values[i]);
  }
}

TEST_CASE("critical sets under the m = m' + k0/2 bijection") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(50);
  auto f = delta_primes(&F, 50, tau);
  auto cs = critical_points(f);
  REQUIRE(cs.classical.size() == 11);
  CHECK(cs.classical.front() == 1);
  CHECK(cs.classical.back() == 11);
  CHECK(cs.cohomological.front() == Rat(-5));
  CHECK(cs.cohomological.back() == Rat(5));

  auto F5 = TotallyRealField::build(QPoly({Rat(-1), Rat(-1), Rat(1)}));
  HilbertNewformData h;
  h.F = &F5;
  h.k = {2, 4};
  h.level = FracIdeal::ring_of_integers(&F5);
  h.bound = 10;
  h.finish();
  auto cs2 = critical_points(h);
  REQUIRE(cs2.classical.size() == 1);
  CHECK(cs2.classical[0] == 2);
  CHECK(cs2.cohomological[0] == Rat(0));

  h.k = {2, 2};
  h.finish();
  auto cs3 = critical_points(h);
  REQUIRE(cs3.classical.size() == 1);
  CHECK(cs3.classical[0] == 1);
  CHECK(cs3.cohomological[0] == Rat(0));
}

TEST_CASE("period-normalized critical value for Delta") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(2000);
  auto f = delta_primes(&F, 2000, tau);
  CertComplex period{CertReal{Real::from_int(1, 128), 0.0},
                     CertReal{Real::from_int(0, 128), 0.0}};
  auto cv = normalized_critical_value(f, nullptr, Rat(5), period, Int(2000), 128);
  CHECK(!cv.out_of_reach);
  CHECK(cv.classical_s == Rat(11));
  CHECK(cv.signature[0] == -1);  // (-1)^5 times the trivial character sign
  // d_inf + n m' = 11 here, so the divisor is (2 pi i)^11: the ratio of the
  // real L-value by an odd power of i is purely imaginary
  CHECK(std::abs(num(cv.ratio.re.v)) <= cv.ratio.re.rad + 1e-30);

  auto cv0 = normalized_critical_value(f, nullptr, Rat(0), period, Int(2000), 128);
  CHECK(cv0.out_of_reach);  // s = 5.5 + 0.5 is far below convergence
  CHECK_THROWS_AS(
      normalized_critical_value(f, nullptr, Rat(6), period, Int(2000), 128),
      invalid_input);  // not a critical point
}

TEST_CASE("period relation bookkeeping strings") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(20);
  auto f = delta_primes(&F, 20, tau);
  auto pr = period_relation_bookkeeping(f, nullptr, 1, {1});
  CHECK(pr.lhs == "p^(+)(Pi (x) 1 |.|^1)");
  CHECK(pr.rhs == "p^(-)(Pi)");
  CHECK(!pr.gauss_factor);
  CHECK(pr.two_pi_i_exponent == 0);
}
