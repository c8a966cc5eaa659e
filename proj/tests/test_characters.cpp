#include <hmf/gauss.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace hmf;

namespace {
double num(const Real& r) { return mpfr_get_d(r.raw(), MPFR_RNDN); }
}  // namespace

TEST_CASE("quadratic character mod 5 over Q: conductor, sign, Gauss sum") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto n5 = FracIdeal::principal(&F, F.from_rat(Rat(5)));
  auto R = std::make_shared<ResidueRing>(&F, n5);
  REQUIRE(R->unit_count() == 4);
  REQUIRE(R->unit_generators().size() == 1);
  ResidueCharacter chi(R, {R->unit_gen_orders()[0] / 2});
  CHECK(chi.order() == 2);
  CHECK(conductor_of(chi).conductor.norm() == Rat(5));

  auto G = std::make_shared<NarrowClassGroup>(narrow_class_group(&F));
  auto hc = adelize(&F, chi, G, 1);
  CHECK(hc.signature[0] == 1);  // 5 = 1 mod 4: even character

  auto gs = gauss_sum(hc, 128);
  // G(chi) = sqrt 5 on the nose for the quadratic character mod 5
  CHECK(std::abs(num(gs.value.re.v) - std::sqrt(5.0)) < 1e-25);
  CHECK(std::abs(num(gs.value.im.v)) < 1e-25);
  CHECK(std::abs(num(gs.value.abs2().v) - 5.0) < 1e-25);

  // omega*(p) agrees with the Legendre symbol (p|5)
  const long legendre5[] = {2, -1, 3, -1, 7, -1, 11, 1, 13, -1, 19, 1};
  for (int i = 0; i < 12; i += 2) {
    auto P = factor_prime(&F, legendre5[i])[0];
    Cyclo v = hc.ideal_value(P.ideal);
    CHECK(v == Cyclo::from_rat(Rat(legendre5[i + 1])));
  }
}

TEST_CASE("odd character mod 4: G = 2i") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto G = std::make_shared<NarrowClassGroup>(narrow_class_group(&F));
  auto n4 = FracIdeal::principal(&F, F.from_rat(Rat(4)));
  auto R4 = std::make_shared<ResidueRing>(&F, n4);
  ResidueCharacter chi4(R4, {1});
  auto hc4 = adelize(&F, chi4, G, 1);
  CHECK(hc4.signature[0] == -1);
  auto gs4 = gauss_sum(hc4, 128);
  CHECK(std::abs(num(gs4.value.re.v)) < 1e-25);
  CHECK(std::abs(num(gs4.value.im.v) - 2.0) < 1e-25);
}

TEST_CASE("Gauss sum modulus over Q(sqrt5) at the ramified prime") {
  auto F5 = TotallyRealField::build(QPoly({Rat(-1), Rat(-1), Rat(1)}));
  auto G5 = std::make_shared<NarrowClassGroup>(narrow_class_group(&F5));
  auto P5 = factor_prime(&F5, 5)[0];
  auto R5 = std::make_shared<ResidueRing>(&F5, P5.ideal);
  ResidueCharacter psi(R5, {R5->unit_gen_orders()[0] / 2});
  auto h5 = adelize(&F5, psi, G5, 1);
  auto g5 = gauss_sum(h5, 128);
  CHECK(g5.conductor_norm == 5);
  CHECK(std::abs(num(g5.value.abs2().v) - 5.0) < 1e-20);
}

TEST_CASE("adelization convention: product formula on principal ideals") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto G = std::make_shared<NarrowClassGroup>(narrow_class_group(&F));
  auto n5 = FracIdeal::principal(&F, F.from_rat(Rat(5)));
  auto R = std::make_shared<ResidueRing>(&F, n5);
  ResidueCharacter chi(R, {1});  // order 4
  auto hc = adelize(&F, chi, G, 1);
  // omega*((a)) * omega(a) = 1 for totally positive a coprime to 5
  for (long a : {2, 3, 7, 11, 12, 13}) {
    FieldElem x = F.from_rat(Rat(a));
    Cyclo lhs = hc.ideal_value(FracIdeal::principal(&F, x)) * chi.value(x);
    CHECK(lhs == Cyclo::from_rat(Rat(1)));
  }
}
