#include <hmf/newform.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "tau_oracle.hpp"

using namespace hmf;

namespace {

HilbertNewformData delta_datum(const TotallyRealField* F, long bound,
                               const std::vector<__int128>& tau) {
  HilbertNewformData f;
  f.F = F;
  f.k = {12};
  f.level = FracIdeal::ring_of_integers(F);
  f.bound = bound;
  f.finish();
  for (const auto& e : enumerate_ideals(F, f.bound))
    f.C[e.ideal.key()] = NFElem(Rat((long)(long long)tau[e.norm.get_si()]));
  return f;
}

}  // namespace

TEST_CASE("Delta: validation, attach, synthesis, classification") {
  auto F = TotallyRealField::build(QPoly({Rat(0), Rat(1)}));
  auto tau = tau_table(200);
  REQUIRE((long long)tau[2] == -24);
  REQUIRE((long long)tau[3] == 252);
  REQUIRE((long long)tau[4] == -1472);
  REQUIRE((long long)tau[6] == -6048);
  auto f = delta_datum(&F, 200, tau);

  auto rep = validate_newform_data(f);
  for (auto& p : rep.problems) UNSCOPED_INFO(p);
  CHECK(rep.ok());

  auto P2 = factor_prime(&F, 2)[0];
  CHECK(*f.coeff(P2.ideal.pow(2)) == NFElem(Rat(-1472)));

  auto A = attach_representation(f);
  REQUIRE(A.arch.size() == 1);
  CHECK(A.arch[0].l == 11);
  const auto* L2 = A.local_at(P2);
  REQUIRE(L2);
  CHECK(L2->type == LocalType::UnramifiedPS);
  using QN = QExt<NFElem>;
  CHECK(L2->sum ==
        QN::half_power(Int(2), -11) * QN::from_rat(Rat(-24), Int(2)));
  CHECK(L2->prod == QN::from_rat(Rat(1), Int(2)));
  CHECK(zeta_identity_holds(*L2, 20));

  // resynthesis from the prime table reproduces tau: multiplicativity
  HilbertNewformData g = f;
  g.C.clear();
  for (Int p = 2; p <= g.bound; p = next_prime_after(p))
    g.C[FracIdeal::principal(&F, F.from_rat(Rat(p))).key()] =
        NFElem(Rat((long)(long long)tau[p.get_si()]));
  synthesize_coefficients(g);
  for (const auto& [key, val] : f.C) CHECK(val == g.C.at(key));

  auto cls = classify_newform(f);
  CHECK(cls.algebraic);
  CHECK(!cls.half_twist_algebraic);
  CHECK(cls.regular);

  CHECK(equivariance_check(f, identity_action(f), Int(100)).ok);

  auto rf = rationality_field(f, 100);
  CHECK(rf.degree == 1);
  CHECK(!rf.caveat);

  HilbertNewformData bad = f;
  bad.C[FracIdeal::principal(&F, F.from_rat(Rat(6))).key()] = NFElem(Rat(7));
  CHECK(!validate_newform_data(bad).ok());
}

TEST_CASE("synthetic Q(sqrt5) datum: conjugation and equivariance") {
  auto F5 = TotallyRealField::build(QPoly({Rat(-1), Rat(-1), Rat(1)}));
  auto Qf = std::make_shared<const CoefField>(QPoly({Rat(-5), Rat(0), Rat(1)}));
  NFElem s5 = NFElem::gen(Qf);

  HilbertNewformData h;
  h.F = &F5;
  h.k = {2, 4};
  h.level = FracIdeal::ring_of_integers(&F5);
  h.Qf = Qf;
  h.bound = 60;
  h.finish();
  long seed = 1;
  for (Int p = 2; p <= h.bound; p = next_prime_after(p))
    for (auto& P : factor_prime(&F5, p)) {
      if (P.norm() > h.bound) continue;
      h.C[P.ideal.key()] = NFElem(Rat(seed)) + NFElem(Rat((seed % 3) - 1)) * s5;
      ++seed;
    }
  synthesize_coefficients(h);
  REQUIRE(validate_newform_data(h).ok());

  GaloisAction conjg{QPoly({Rat(0), Rat(-1)}), {}};
  auto hs = galois_conjugate(h, conjg);
  auto P2 = factor_prime(&F5, 2)[0];
  CHECK(hs.C.at(P2.ideal.key()) ==
        h.C.at(P2.ideal.key()).apply_auto(conjg.gen_image));
  CHECK(equivariance_check(h, conjg, Int(60)).ok);

  // sigma^2 = id
  auto hss = galois_conjugate(hs, conjg);
  for (const auto& [key, val] : h.C) CHECK(val == hss.C.at(key));

  // a valid datum that is NOT the conjugate: named offending prime
  auto P3 = factor_prime(&F5, 3)[0];
  HilbertNewformData hb = h;
  hb.C.clear();
  for (Int p = 2; p <= hb.bound; p = next_prime_after(p))
    for (auto& P : factor_prime(&F5, p)) {
      if (P.norm() > hb.bound) continue;
      NFElem v = h.C.at(P.ideal.key());
      if (P.ideal.key() == P3.ideal.key()) v = v + s5;
      hb.C[P.ideal.key()] = v;
    }
  synthesize_coefficients(hb);
  REQUIRE(validate_newform_data(hb).ok());
  auto eq = equivariance_check(h, hb, identity_action(h), Int(60));
  CHECK(!eq.ok);
  CHECK(eq.offending_prime == P3.ideal.key());

  auto rf = rationality_field(h, 30);
  CHECK(rf.degree == 2);
  CHECK(!rf.caveat);
}
