#include <hmf/local.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace hmf;
using QR = QExt<Rat>;

namespace {
std::mt19937 rng(7);
QR rnd(const Int& q) {
  QR x(q);
  x.a = Rat((long)(rng() % 19) - 9, 1 + (long)(rng() % 7));
  x.b = Rat((long)(rng() % 19) - 9, 1 + (long)(rng() % 7));
  x.a.canonicalize();
  x.b.canonicalize();
  return normalized(x);
}
}  // namespace

TEST_CASE("new-vector zeta identity, all four local types") {
  for (Int q : {Int(2), Int(3), Int(5), Int(9), Int(49)}) {
    for (int it = 0; it < 40; ++it) {
      QR a = rnd(q), b = rnd(q);
      if ((a * b).is_zero()) continue;
      auto r = NonArchRep<Rat>::unramified(q, a, b);
      CHECK(zeta_identity_holds(r, 30));
      QR c = rnd(q);
      if (!c.is_zero()) {
        CHECK(zeta_identity_holds(NonArchRep<Rat>::one_ramified(q, c), 25));
        CHECK(zeta_identity_holds(NonArchRep<Rat>::steinberg(q, c), 25));
      }
      CHECK(zeta_identity_holds(NonArchRep<Rat>::other(q), 25));
    }
  }
}

TEST_CASE("spherical coset sum equals the eigenvalue closed form") {
  for (Int q : {Int(2), Int(3), Int(5), Int(9)}) {
    for (int it = 0; it < 30; ++it) {
      QR a = rnd(q), b = rnd(q);
      if ((a * b).is_zero()) continue;
      auto r = NonArchRep<Rat>::unramified(q, a, b);
      CHECK(spherical_coset_sum(r) == spherical_eigenvalue(r));
    }
  }
}

TEST_CASE("Kirillov table spot values") {
  Int q(7);
  QR one = QR::from_rat(Rat(1), q);
  auto r = NonArchRep<Rat>::unramified(q, one, one);
  CHECK(kirillov_new_value(r, 2) == QR::from_rat(Rat(3, 7), q));
  CHECK(kirillov_new_value(r, -3).is_zero());

  auto st = NonArchRep<Rat>::steinberg(q, one);
  CHECK(kirillov_new_value(st, 1) == QR::from_rat(Rat(1, 7), q));
  auto zs = zeta_series(st, 2);
  CHECK(zs[1] == QR::half_power(q, -1));
  CHECK(zs[2] == QR::from_rat(Rat(1, 7), q));

  auto ot = NonArchRep<Rat>::other(q);
  CHECK(kirillov_new_value(ot, 0) == one);
  CHECK(kirillov_new_value(ot, 1).is_zero());
}

TEST_CASE("L-polynomial degrees follow the conductor") {
  Int q(3);
  QR one = QR::from_rat(Rat(1), q);
  auto un = NonArchRep<Rat>::unramified(q, one, one);
  CHECK(local_l_polynomial(un, 5)[2] == one);  // alpha beta = 1, degree 2
  auto st = NonArchRep<Rat>::steinberg(q, one);
  CHECK(local_l_polynomial(st, 5)[2].is_zero());  // degree 1
  auto ot = NonArchRep<Rat>::other(q);
  CHECK(local_l_polynomial(ot, 5)[1].is_zero());  // degree 0
}
