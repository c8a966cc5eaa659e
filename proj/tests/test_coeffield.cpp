#include <hmf/coeffield.hpp>
#include <hmf/qext.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace hmf;

TEST_CASE("arithmetic in Q(sqrt5) via the golden ratio") {
  auto F = std::make_shared<const CoefField>(QPoly({Rat(-5), Rat(0), Rat(1)}));
  NFElem s5 = NFElem::gen(F);
  NFElem phi = (NFElem(Rat(1)) + s5) * NFElem(Rat(1, 2));
  CHECK(phi * phi == phi + NFElem(Rat(1)));
  CHECK(s5 * s5 == NFElem(Rat(5)));
  CHECK(phi.inverse() * phi == NFElem(Rat(1)));

  // conjugation sqrt5 -> -sqrt5: trace 1, norm -1
  QPoly sig({Rat(0), Rat(-1)});
  NFElem phic = phi.apply_auto(sig);
  CHECK(phi + phic == NFElem(Rat(1)));
  CHECK(phi * phic == NFElem(Rat(-1)));

  auto e0 = phi.embed(0, 64), e1 = phi.embed(1, 64);
  double d0 = mpfr_get_d(e0.v.raw(), MPFR_RNDN);
  double d1 = mpfr_get_d(e1.v.raw(), MPFR_RNDN);
  if (d0 > d1) std::swap(d0, d1);
  CHECK(std::abs(d0 - (1 - std::sqrt(5.0)) / 2) < 1e-12);
  CHECK(std::abs(d1 - (1 + std::sqrt(5.0)) / 2) < 1e-12);

  QPoly mp = minimal_polynomial(phi);
  REQUIRE(mp.degree() == 2);
  CHECK(mp[0] == Rat(-1));
  CHECK(mp[1] == Rat(-1));
  CHECK(mp[2] == Rat(1));
  CHECK(minimal_polynomial(NFElem(F, QPoly({Rat(7)}))).degree() == 1);
}

TEST_CASE("fieldless rationals merge with field elements") {
  auto F = std::make_shared<const CoefField>(QPoly({Rat(-5), Rat(0), Rat(1)}));
  NFElem phi = (NFElem(Rat(1)) + NFElem::gen(F)) * NFElem(Rat(1, 2));
  NFElem z;
  CHECK(z.is_zero());
  CHECK(z + phi == phi);
  CHECK(NFElem(Rat(3)) * phi + phi == phi * NFElem(Rat(4)));
}

TEST_CASE("QExt over a number field") {
  auto F = std::make_shared<const CoefField>(QPoly({Rat(-5), Rat(0), Rat(1)}));
  NFElem s5 = NFElem::gen(F);
  NFElem phi = (NFElem(Rat(1)) + s5) * NFElem(Rat(1, 2));
  using QN = QExt<NFElem>;
  QN x(Int(7));
  x.a = phi;
  x.b = s5;
  QN y = x * x;
  CHECK(y.a == phi * phi + NFElem(Rat(7)) * s5 * s5);
  CHECK(y.b == phi * s5 + s5 * phi);
  QN xi = x.inverse();
  CHECK((x * xi).a == NFElem(Rat(1)));
  CHECK((x * xi).b.is_zero());
  // square q collapses: no formal part survives
  QN h = QN::half_power(Int(9), 3);
  CHECK(h.b.is_zero());
  CHECK(h.a == NFElem(Rat(27)));
}
