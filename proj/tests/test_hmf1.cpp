#include <hmf/hmf1.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "tau_oracle.hpp"

using namespace hmf;

namespace {

const std::string kMinimal =
    "HMF1\nFIELD\npoly 0 1\nEND\nCHAR\nmodulus 1\next 1\nEND\n"
    "FORM\nweight 12\nlevel 1\nbound 1\nEND\n"
    "COEFFS\nnorm 1 ideal 1 value 1\nEND\n";

}  // namespace

TEST_CASE("minimal document: parse, canonical serialization, comments") {
  auto d = parse_hmf1(kMinimal);
  CHECK(d.form.k0 == 12);
  CHECK(d.form.bound == 1);
  CHECK(serialize_hmf1(d) == kMinimal);
  auto d2 = parse_hmf1("# leading comment\n" + kMinimal + "\n# trailing\n");
  CHECK(serialize_hmf1(d2) == kMinimal);
}

TEST_CASE("malformed documents raise parse errors with a line number") {
  // wrong value vector length
  CHECK_THROWS_AS(
      parse_hmf1("HMF1\nFIELD\npoly 0 1\nEND\nCHAR\nmodulus 1\next 1\nEND\n"
                 "FORM\nweight 12\nlevel 1\nbound 1\nEND\n"
                 "COEFFS\nnorm 1 ideal 1 value 1 2\nEND\n"),
      parse_error);
  // missing magic
  CHECK_THROWS_AS(parse_hmf1("FIELD\npoly 0 1\nEND\n"), parse_error);
  // declared norm contradicts the ideal
  CHECK_THROWS_AS(
      parse_hmf1("HMF1\nFIELD\npoly 0 1\nEND\nCHAR\nmodulus 1\next 1\nEND\n"
                 "FORM\nweight 12\nlevel 1\nbound 2\nEND\n"
                 "COEFFS\nnorm 1 ideal 1 value 1\nnorm 3 ideal 2 value -24\n"
                 "END\n"),
      parse_error);
  try {
    parse_hmf1("HMF1\nFIELD\npoly 0 1\nEND\nCHAR\nmodulus 1\next 1\nEND\n"
               "FORM\nweight 12\nlevel 1\nbound 1\nEND\n"
               "COEFFS\nnorm 1 ideal 1 value 1 2\nEND\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 15);
  }
}

TEST_CASE("invariant violations surface as validation errors") {
  // C(O) = 7 breaks normalization
  CHECK_THROWS_AS(
      parse_hmf1("HMF1\nFIELD\npoly 0 1\nEND\nCHAR\nmodulus 1\next 1\nEND\n"
                 "FORM\nweight 12\nlevel 1\nbound 1\nEND\n"
                 "COEFFS\nnorm 1 ideal 1 value 7\nEND\n"),
      invalid_input);
  // declared h+ contradicts the computed narrow class number
  CHECK_THROWS_AS(
      parse_hmf1("HMF1\nFIELD\npoly 0 1\nhplus 2\nEND\n"
                 "CHAR\nmodulus 1\next 1\nEND\n"
                 "FORM\nweight 12\nlevel 1\nbound 1\nEND\n"
                 "COEFFS\nnorm 1 ideal 1 value 1\nEND\n"),
      invalid_input);
}

TEST_CASE("round-trip identity on a corpus of canonical documents") {
  auto tau = tau_table(40);
  int corpus = 0;

  // Delta-shaped documents over Q at several bounds
  auto F = std::make_shared<TotallyRealField>(
      TotallyRealField::build(QPoly({Rat(0), Rat(1)})));
  auto G = std::make_shared<NarrowClassGroup>(narrow_class_group(F.get()));
  auto R1 = std::make_shared<ResidueRing>(F.get(),
                                          FracIdeal::ring_of_integers(F.get()));
  for (long B : {1, 5, 10, 20, 30, 40}) {
    for (long k : {2, 4, 12, 16}) {
      HMF1Document doc;
      doc.F = F;
      doc.G = G;
      doc.form.F = F.get();
      doc.form.k = {k};
      doc.form.level = FracIdeal::ring_of_integers(F.get());
      doc.form.neben = adelize(F.get(), ResidueCharacter(R1, {}), G, 1);
      doc.form.bound = B;
      doc.form.finish();
      doc.form.C[FracIdeal::ring_of_integers(F.get()).key()] = NFElem(Rat(1));
      if (k == 12)
        for (const auto& e : enumerate_ideals(F.get(), Int(B)))
          doc.form.C[e.ideal.key()] =
              NFElem(Rat((long)(long long)tau[e.norm.get_si()]));
      std::string text = serialize_hmf1(doc);
      auto back = parse_hmf1(text);
      CHECK(serialize_hmf1(back) == text);
      ++corpus;
    }
  }

  // quadratic base fields, quadratic coefficient field, nontrivial character
  for (long d : {2, 3, 5}) {
    QPoly g = d == 5 ? QPoly({Rat(-1), Rat(-1), Rat(1)})
                     : QPoly({Rat(-d), Rat(0), Rat(1)});
    auto Fq = std::make_shared<TotallyRealField>(TotallyRealField::build(g));
    auto Gq = std::make_shared<NarrowClassGroup>(narrow_class_group(Fq.get()));
    auto Rq = std::make_shared<ResidueRing>(
        Fq.get(), FracIdeal::ring_of_integers(Fq.get()));
    for (auto k : {std::vector<long>{2, 2}, std::vector<long>{2, 4}}) {
      HMF1Document doc;
      doc.F = Fq;
      doc.G = Gq;
      doc.form.F = Fq.get();
      doc.form.k = k;
      doc.form.level = FracIdeal::ring_of_integers(Fq.get());
      doc.form.neben = adelize(Fq.get(), ResidueCharacter(Rq, {}), Gq, 1);
      doc.Qf = std::make_shared<CoefField>(QPoly({Rat(-2), Rat(0), Rat(1)}));
      doc.form.Qf = doc.Qf;
      doc.form.bound = 20;
      doc.form.finish();
      doc.form.C[FracIdeal::ring_of_integers(Fq.get()).key()] = NFElem(Rat(1));
      for (auto& e : enumerate_ideals(Fq.get(), Int(20)))
        if (e.factors.size() == 1 && e.factors[0].exponent == 1)
          doc.form.C[e.ideal.key()] = NFElem(doc.Qf, QPoly({Rat(1), Rat(1)}));
      std::string text = serialize_hmf1(doc);
      auto back = parse_hmf1(text);
      CHECK(serialize_hmf1(back) == text);
      ++corpus;
    }
    // level (p) with the quadratic character mod p, p = 5 over Q(sqrt d)
    auto P5 = FracIdeal::principal(Fq.get(), Fq->from_rat(Rat(5)));
    auto R5 = std::make_shared<ResidueRing>(Fq.get(), P5);
    std::vector<long> e2(R5->unit_generators().size(), 0);
    e2[0] = R5->unit_gen_orders()[0] / 2;
    try {
      HMF1Document doc;
      doc.F = Fq;
      doc.G = Gq;
      doc.form.F = Fq.get();
      doc.form.k = {2, 2};
      doc.form.level = P5;
      doc.form.neben = adelize(Fq.get(), ResidueCharacter(R5, e2), Gq, 1);
      doc.form.bound = 4;
      doc.form.finish();
      doc.form.C[FracIdeal::ring_of_integers(Fq.get()).key()] = NFElem(Rat(1));
      std::string text = serialize_hmf1(doc);
      auto back = parse_hmf1(text);
      CHECK(serialize_hmf1(back) == text);
      ++corpus;
    } catch (const invalid_input&) {
      // the character may fail the total-positivity obstruction; skip
    }
  }
  CHECK(corpus >= 20);
}
