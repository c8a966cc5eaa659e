#pragma once

// The HMF1 document format: a line-oriented text container for a Hilbert
// newform datum (base field, nebentypus, weight/level, coefficient table).
//
//   HMF1
//   FIELD
//   poly <rational coefficients, ascending, monic>
//   [hplus <h+>]                      # optional, checked against the library
//   END
//   CHAR
//   modulus <d*d HNF entries, column-major>
//   gen <d coords> order <o> value <exponent>     # one per unit generator
//   ext <extension index, 1..h+>
//   END
//   FORM
//   weight <k_1 ... k_n>
//   level <d*d HNF entries, column-major>
//   [coeffpoly <rational coefficients, ascending, monic>]   # absent: Q
//   bound <B>
//   END
//   COEFFS
//   norm <N> ideal <d*d HNF entries> value <coordinate vector>
//   ...
//   END
//
// `#` starts a comment, blank lines are ignored, LF endings.  The CHAR
// generator lines must list the canonical unit generators of O/n in the
// library's order; a serialize-then-parse cycle is byte-identical.

#include <hmf/newform.hpp>

#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace hmf {

struct parse_error : hmf_error {
  long line;
  parse_error(long ln, const std::string& what)
      : hmf_error("line " + std::to_string(ln) + ": " + what), line(ln) {}
};

// A parsed document owns its field and narrow-class data; the form inside
// points at them.
struct HMF1Document {
  std::shared_ptr<TotallyRealField> F;
  std::shared_ptr<NarrowClassGroup> G;
  std::shared_ptr<CoefField> Qf;  // null when the coefficient field is Q
  HilbertNewformData form;
};

namespace detail {

struct LineReader {
  std::istringstream in;
  long lineno = 0;
  std::vector<std::string> toks;

  explicit LineReader(const std::string& text) : in(text) {}

  // next non-blank logical line, tokenized; false at end of input
  bool next() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      if (!raw.empty() && raw.back() == '\r')
        throw parse_error(lineno, "CR line ending");
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::istringstream ls(raw);
      toks.clear();
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) return true;
    }
    return false;
  }

  void expect_line(const std::string& kw) {
    if (!next() || toks.size() != 1 || toks[0] != kw)
      throw parse_error(lineno, "expected '" + kw + "'");
  }
};

inline Rat parse_rat(const LineReader& r, const std::string& t) {
  Rat q;
  if (q.set_str(t, 10) != 0 ||
      (t.find('/') != std::string::npos &&
       t.substr(t.find('/') + 1).empty()) ||
      q.get_den() == 0)
    throw parse_error(r.lineno, "bad rational '" + t + "'");
  q.canonicalize();
  return q;
}

inline Int parse_int(const LineReader& r, const std::string& t) {
  try {
    return Int(t);
  } catch (const std::invalid_argument&) {
    throw parse_error(r.lineno, "bad integer '" + t + "'");
  }
}

inline long parse_long(const LineReader& r, const std::string& t) {
  Int v = parse_int(r, t);
  if (!v.fits_slong_p()) throw parse_error(r.lineno, "integer out of range");
  return v.get_si();
}

inline QPoly parse_poly(const LineReader& r, size_t from) {
  if (r.toks.size() <= from) throw parse_error(r.lineno, "empty polynomial");
  std::vector<Rat> c;
  for (size_t i = from; i < r.toks.size(); ++i)
    c.push_back(parse_rat(r, r.toks[i]));
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  return QPoly(c);
}

// d*d column-major integer entries starting at token `from`
inline FracIdeal parse_hnf_ideal(const LineReader& r, size_t from, size_t upto,
                                 const TotallyRealField* F) {
  size_t d = (size_t)F->degree();
  if (upto - from != d * d)
    throw parse_error(r.lineno, "ideal needs " + std::to_string(d * d) +
                                    " HNF entries");
  ZMat m((int)d, std::vector<Int>(d));
  for (size_t c = 0; c < d; ++c)
    for (size_t row = 0; row < d; ++row)
      m[row][c] = parse_int(r, r.toks[from + c * d + row]);
  FracIdeal I = FracIdeal::from_lattice(F, m);
  if (!I.is_integral()) throw parse_error(r.lineno, "ideal not integral");
  return I;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline void emit_hnf(std::ostringstream& out, const FracIdeal& I) {
  const ZMat& h = I.hnf();
  size_t d = h.size();
  for (size_t c = 0; c < d; ++c)
    for (size_t row = 0; row < d; ++row) out << ' ' << h[row][c].get_str();
}

}  // namespace detail

inline HMF1Document parse_hmf1(const std::string& text) {
  using namespace detail;
  LineReader r(text);
  HMF1Document doc;

  if (!r.next() || r.toks.size() != 1 || r.toks[0] != "HMF1")
    throw parse_error(r.lineno == 0 ? 1 : r.lineno, "missing HMF1 magic");

  // FIELD
  r.expect_line("FIELD");
  if (!r.next() || r.toks[0] != "poly")
    throw parse_error(r.lineno, "FIELD must start with 'poly'");
  QPoly g = parse_poly(r, 1);
  if (g.degree() < 1 || !(g[g.degree()] == 1))
    throw parse_error(r.lineno, "defining polynomial must be monic of degree >= 1");
  long poly_line = r.lineno;
  try {
    doc.F = std::make_shared<TotallyRealField>(TotallyRealField::build(g));
  } catch (const invalid_input& e) {
    throw parse_error(poly_line, e.what());
  }
  const TotallyRealField* F = doc.F.get();
  doc.G = std::make_shared<NarrowClassGroup>(narrow_class_group(F));
  std::optional<Int> claimed_hplus;
  while (r.next() && !(r.toks.size() == 1 && r.toks[0] == "END")) {
    if (r.toks[0] == "hplus" && r.toks.size() == 2) {
      claimed_hplus = parse_int(r, r.toks[1]);
    } else {
      throw parse_error(r.lineno, "unknown FIELD line '" + r.toks[0] + "'");
    }
  }
  if (claimed_hplus && *claimed_hplus != doc.G->h_plus)
    throw invalid_input("declared h+ = " + claimed_hplus->get_str() +
                        " but the narrow class number is " +
                        doc.G->h_plus.get_str());

  // CHAR
  r.expect_line("CHAR");
  if (!r.next() || r.toks[0] != "modulus")
    throw parse_error(r.lineno, "CHAR must start with 'modulus'");
  FracIdeal cmod = parse_hnf_ideal(r, 1, r.toks.size(), F);
  auto R = std::make_shared<ResidueRing>(F, cmod);
  std::vector<long> exps;
  int ext_index = 1;
  size_t gen_seen = 0;
  size_t d = (size_t)F->degree();
  while (r.next() && !(r.toks.size() == 1 && r.toks[0] == "END")) {
    if (r.toks[0] == "gen") {
      if (r.toks.size() != d + 5 || r.toks[d + 1] != "order" ||
          r.toks[d + 3] != "value")
        throw parse_error(r.lineno, "malformed gen line");
      if (gen_seen >= R->unit_generators().size())
        throw parse_error(r.lineno, "too many gen lines");
      std::vector<Rat> co(d);
      for (size_t i = 0; i < d; ++i) co[i] = Rat(parse_int(r, r.toks[1 + i]));
      FieldElem claimed = F->from_integral(co);
      FieldElem canon = R->elem(R->unit_generators()[gen_seen]);
      if (!(F->sub(claimed, canon).is_zero()))
        throw parse_error(r.lineno, "gen line does not match the canonical "
                                    "unit generator at this position");
      long o = parse_long(r, r.toks[d + 2]);
      if (o != R->unit_gen_orders()[gen_seen])
        throw parse_error(r.lineno, "generator order mismatch");
      exps.push_back(parse_long(r, r.toks[d + 4]));
      ++gen_seen;
    } else if (r.toks[0] == "ext" && r.toks.size() == 2) {
      ext_index = (int)parse_long(r, r.toks[1]);
    } else {
      throw parse_error(r.lineno, "unknown CHAR line '" + r.toks[0] + "'");
    }
  }
  if (gen_seen != R->unit_generators().size())
    throw parse_error(r.lineno, "CHAR lists " + std::to_string(gen_seen) +
                                    " generators, the ring has " +
                                    std::to_string(R->unit_generators().size()));
  ResidueCharacter omega(R, exps);
  HeckeCharacter neben = adelize(F, omega, doc.G, ext_index);

  // FORM
  r.expect_line("FORM");
  std::vector<long> weights;
  std::optional<FracIdeal> level;
  std::optional<QPoly> coeffg;
  Int bound = 0;
  while (r.next() && !(r.toks.size() == 1 && r.toks[0] == "END")) {
    if (r.toks[0] == "weight") {
      for (size_t i = 1; i < r.toks.size(); ++i)
        weights.push_back(parse_long(r, r.toks[i]));
    } else if (r.toks[0] == "level") {
      level = parse_hnf_ideal(r, 1, r.toks.size(), F);
    } else if (r.toks[0] == "coeffpoly") {
      coeffg = parse_poly(r, 1);
    } else if (r.toks[0] == "bound" && r.toks.size() == 2) {
      bound = parse_int(r, r.toks[1]);
    } else {
      throw parse_error(r.lineno, "unknown FORM line '" + r.toks[0] + "'");
    }
  }
  if (weights.size() != d)
    throw parse_error(r.lineno, "weight vector length != field degree");
  if (!level) throw parse_error(r.lineno, "FORM missing level");
  if (bound <= 0) throw parse_error(r.lineno, "FORM missing positive bound");
  if (coeffg) {
    if (coeffg->degree() < 2)
      throw parse_error(r.lineno, "coeffpoly must have degree >= 2 (omit for Q)");
    doc.Qf = std::make_shared<CoefField>(CoefField(*coeffg));
  }
  size_t cdeg = coeffg ? (size_t)coeffg->degree() : 1;

  doc.form.F = F;
  doc.form.k = weights;
  doc.form.level = *level;
  doc.form.neben = neben;
  doc.form.Qf = doc.Qf;
  doc.form.bound = bound;
  doc.form.finish();

  // COEFFS
  r.expect_line("COEFFS");
  while (r.next() && !(r.toks.size() == 1 && r.toks[0] == "END")) {
    if (r.toks[0] != "norm" || r.toks.size() < 4)
      throw parse_error(r.lineno, "COEFFS line must start with 'norm'");
    Int n = parse_int(r, r.toks[1]);
    if (r.toks[2] != "ideal" || r.toks.size() < 3 + d * d + 1 + cdeg ||
        r.toks[3 + d * d] != "value" || r.toks.size() != 4 + d * d + cdeg)
      throw parse_error(r.lineno, "COEFFS line: expected 'norm <N> ideal <" +
                                      std::to_string(d * d) + "> value <" +
                                      std::to_string(cdeg) + ">'");
    FracIdeal I = parse_hnf_ideal(r, 3, 3 + d * d, F);
    if (I.norm() != Rat(n))
      throw parse_error(r.lineno, "declared norm does not match the ideal");
    std::vector<Rat> v(cdeg);
    for (size_t i = 0; i < cdeg; ++i)
      v[i] = parse_rat(r, r.toks[4 + d * d + i]);
    NFElem val = doc.Qf ? NFElem(doc.Qf, QPoly(v)) : NFElem(v[0]);
    if (!doc.form.C.emplace(I.key(), val).second)
      throw parse_error(r.lineno, "duplicate coefficient ideal");
  }

  auto rep = validate_newform_data(doc.form);
  if (!rep.ok()) throw invalid_input(rep.problems[0]);
  return doc;
}

inline std::string serialize_hmf1(const HMF1Document& doc) {
  using namespace detail;
  const TotallyRealField* F = doc.form.F;
  std::ostringstream out;
  out << "HMF1\nFIELD\npoly";
  const QPoly& g = F->defining_poly();
  for (long i = 0; i <= g.degree(); ++i) out << ' ' << rat_str(g[i]);
  out << "\nEND\nCHAR\n";
  const HeckeCharacter& chi = *doc.form.neben;
  const ResidueRing& R = chi.omega.ring();
  out << "modulus";
  emit_hnf(out, R.modulus());
  out << '\n';
  for (size_t i = 0; i < R.unit_generators().size(); ++i) {
    out << "gen";
    for (auto& c : F->integral_coords(R.elem(R.unit_generators()[i]))) {
      Rat q = c;
      q.canonicalize();
      out << ' ' << q.get_num().get_str();
    }
    out << " order " << R.unit_gen_orders()[i] << " value "
        << chi.omega.exponents()[i] << '\n';
  }
  out << "ext " << chi.extension_index << "\nEND\nFORM\nweight";
  for (long k : doc.form.k) out << ' ' << k;
  out << "\nlevel";
  emit_hnf(out, doc.form.level);
  out << '\n';
  if (doc.Qf) {
    out << "coeffpoly";
    for (long i = 0; i <= doc.Qf->g.degree(); ++i)
      out << ' ' << rat_str(doc.Qf->g[i]);
    out << '\n';
  }
  out << "bound " << doc.form.bound.get_str() << "\nEND\nCOEFFS\n";
  size_t cdeg = doc.Qf ? (size_t)doc.Qf->g.degree() : 1;
  // ascending norm, then HNF key, for a canonical ordering
  std::vector<std::pair<FracIdeal, const NFElem*>> rows;
  for (auto& [key, val] : doc.form.C)
    rows.push_back({FracIdeal::from_key(F, key), &val});
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    Rat na = a.first.norm(), nb = b.first.norm();
    if (na != nb) return na < nb;
    return a.first.key() < b.first.key();
  });
  for (auto& [I, val] : rows) {
    out << "norm " << I.norm().get_num().get_str() << " ideal";
    emit_hnf(out, I);
    out << " value";
    const QPoly& rep = val->rep();
    for (size_t i = 0; i < cdeg; ++i)
      out << ' ' << rat_str((long)i <= rep.degree() ? rep[(int)i]
                                                    : Rat(0));
    out << '\n';
  }
  out << "END\n";
  return out.str();
}

}  // namespace hmf
