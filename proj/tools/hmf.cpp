// hmf: command-line surface over the library.  One subcommand per documented
// operation; reports go to stdout as text or a single structured record.
//
// Exit codes: 0 success, 1 domain error, 2 parse/usage error.

#include <hmf/cohomology.hpp>
#include <hmf/hmf1.hpp>
#include <hmf/lseries.hpp>
#include <hmf/report.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hmf;

namespace {

long default_prec() {
  if (const char* e = std::getenv("HMF_PREC")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end && *end == '\0' && v >= 8) return v;
  }
  return 128;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rat to_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw invalid_input("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<Rat> rat_list(const std::string& s) {
  std::istringstream is(s);
  std::vector<Rat> out;
  std::string t;
  while (is >> t) out.push_back(to_rat(t));
  return out;
}

std::vector<long> long_list(const std::string& s) {
  std::istringstream is(s);
  std::vector<long> out;
  long v;
  while (is >> v) out.push_back(v);
  return out;
}

std::string nf_s(const NFElem& x) {
  if (!x.field() || x.is_rational()) {
    return (x.rep().degree() < 0 ? Rat(0) : x.rep()[0]).get_str();
  }
  std::string s = "[";
  long d = x.field()->g.degree();
  for (long i = 0; i < d; ++i) {
    if (i) s += ",";
    s += (i <= x.rep().degree() ? x.rep()[(int)i] : Rat(0)).get_str();
  }
  return s + "]";
}

std::string qext_s(const QExt<NFElem>& z) {
  if (z.b.is_zero()) return nf_s(z.a);
  return nf_s(z.a) + " + " + nf_s(z.b) + "*" + z.q.get_str() + "^(1/2)";
}

const char* local_type_name(LocalType t) {
  switch (t) {
    case LocalType::UnramifiedPS: return "unramified-principal-series";
    case LocalType::RamifiedPSOneUnramified: return "ramified-principal-series";
    case LocalType::SteinbergUnramifiedTwist: return "steinberg-twist";
    default: return "other";
  }
}

struct Options {
  std::string in, format = "text";
  long prec = default_prec();
  long long bound = 0;
};

HMF1Document need_doc(const Options& o) {
  if (o.in.empty()) throw invalid_input("this command needs --in <file>");
  return parse_hmf1(slurp(o.in));
}

const TotallyRealField* field_from(const Options& o, const std::string& poly,
                                   std::shared_ptr<TotallyRealField>& keep,
                                   std::shared_ptr<HMF1Document>& keep_doc) {
  if (!poly.empty()) {
    keep = std::make_shared<TotallyRealField>(
        TotallyRealField::build(QPoly(rat_list(poly))));
    return keep.get();
  }
  keep_doc = std::make_shared<HMF1Document>(need_doc(o));
  return keep_doc->F.get();
}

Json infinity_type_json(const std::optional<std::vector<std::pair<Int, Int>>>& t) {
  if (!t) return nullptr;
  Json arr = Json::array();
  for (auto& [a, b] : *t)
    arr.push_back("(" + a.get_str() + "," + b.get_str() + ")");
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact dictionary between Hilbert modular forms and GL(2) data"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--prec", opt.prec, "working precision in bits")
      ->capture_default_str();
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--in", opt.in, "input HMF1 document");
  app.add_option("--bound", opt.bound, "norm bound override");
  // subcommands see the global flags too
  app.fallthrough();

  std::string poly, weight, type = "unramified", s_str, sigma, perm, norm_s =
      "classical";
  std::string alpha = "1", beta = "1", chi = "1";
  long long q = 2;
  long order = 30, cond = 1;
  bool twisted = false;

  auto* c_field = app.add_subcommand("field-info", "base field invariants");
  c_field->add_option("--poly", poly, "defining polynomial, ascending");
  auto* c_narrow = app.add_subcommand("narrow-class", "narrow class group");
  c_narrow->add_option("--poly", poly, "defining polynomial, ascending");
  auto* c_gauss = app.add_subcommand("gauss-sum", "Gauss sum of the nebentypus");
  auto* c_classify = app.add_subcommand("classify", "algebraicity trichotomy");
  auto* c_crit = app.add_subcommand("critical-points", "critical set");
  auto* c_attach = app.add_subcommand("attach", "attached automorphic datum");
  auto* c_galois = app.add_subcommand("galois-check", "Galois equivariance");
  c_galois->add_option("--sigma", sigma, "image of the Q(f) generator");
  c_galois->add_option("--perm", perm, "real place permutation");
  auto* c_lvalue = app.add_subcommand("lvalue", "certified partial L-value");
  c_lvalue->add_option("--s", s_str, "evaluation point (rational)")->required();
  c_lvalue->add_option("--norm", norm_s, "normalization")
      ->check(CLI::IsMember({"classical", "unitary"}));
  auto* c_euler = app.add_subcommand("euler-check", "validate coefficient table");
  auto* c_zeta = app.add_subcommand("zeta-check", "local new-vector identity");
  c_zeta->add_option("--type", type, "local type")
      ->check(CLI::IsMember({"unramified", "ramified", "steinberg", "other"}));
  c_zeta->add_option("--q", q, "residue norm");
  c_zeta->add_option("--alpha", alpha, "Satake alpha");
  c_zeta->add_option("--beta", beta, "Satake beta");
  c_zeta->add_option("--chi", chi, "twisting character value at pi");
  c_zeta->add_option("--cond", cond, "conductor exponent");
  c_zeta->add_option("--order", order, "series order");
  auto* c_coh = app.add_subcommand("coh-constants", "d_infty and c");
  c_coh->add_option("--weight", weight, "weight vector")->required();
  c_coh->add_flag("--twisted", twisted, "use the k0/2-twisted weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunReport rep;
  {
    std::ostringstream cmd;
    for (int i = 1; i < argc; ++i) cmd << (i > 1 ? " " : "") << argv[i];
    rep.command = cmd.str();
  }

  try {
    std::shared_ptr<TotallyRealField> keepF;
    std::shared_ptr<HMF1Document> keepD;

    if (c_field->parsed()) {
      const TotallyRealField* F = field_from(opt, poly, keepF, keepD);
      rep.results["degree"] = F->degree();
      rep.results["discriminant"] = F->discriminant().get_str();
      Json pc = Json::array();
      for (int i = 0; i <= F->defining_poly().degree(); ++i)
        pc.push_back(F->defining_poly()[i].get_str());
      rep.results["poly"] = pc;
      rep.results["signature"] = Json::array({F->degree(), 0});
    } else if (c_narrow->parsed()) {
      const TotallyRealField* F = field_from(opt, poly, keepF, keepD);
      auto G = narrow_class_group(F);
      rep.results["h"] = G.h.get_str();
      rep.results["h_plus"] = G.h_plus.get_str();
      rep.results["cyclic"] = G.cyclic;
      rep.results["orders"] = G.orders;
    } else if (c_gauss->parsed()) {
      auto doc = need_doc(opt);
      auto g = gauss_sum(*doc.form.neben, (mpfr_prec_t)opt.prec);
      rep.results["conductor_norm"] = g.conductor_norm.get_str();
      rep.results["value"] = json_cert(g.value);
      rep.results["abs_squared"] = json_cert(g.value.abs2());
    } else if (c_classify->parsed()) {
      auto doc = need_doc(opt);
      auto c = classify_newform(doc.form);
      rep.results["algebraic"] = c.algebraic;
      rep.results["half_twist_algebraic"] = c.half_twist_algebraic;
      rep.results["regular"] = c.regular;
      rep.results["infinity_type"] = infinity_type_json(c.infinity_type);
      rep.results["summary"] =
          c.algebraic ? "algebraic"
          : c.half_twist_algebraic ? "algebraic after the half twist"
                                   : "not algebraic under any twist";
    } else if (c_crit->parsed()) {
      auto doc = need_doc(opt);
      auto cs = critical_points(doc.form);
      Json cl = Json::array(), co = Json::array();
      for (auto& m : cs.classical) cl.push_back(m.get_str());
      for (auto& m : cs.cohomological) co.push_back(m.get_str());
      rep.results["classical"] = cl;
      rep.results["cohomological"] = co;
    } else if (c_attach->parsed()) {
      auto doc = need_doc(opt);
      if (opt.bound > 0) doc.form.bound = Int((long)opt.bound);
      auto pi = attach_representation(doc.form);
      rep.results["conductor_norm"] = pi.conductor.norm().get_str();
      Json arch = Json::array();
      for (auto& a : pi.arch)
        arch.push_back(Json::object(
            {{"discrete_series", a.l}, {"twist", a.t.get_str()}}));
      rep.results["arch"] = arch;
      std::vector<std::pair<std::string, const NonArchRep<NFElem>*>> rows;
      for (auto& [k, r] : pi.finite) rows.push_back({k, &r});
      std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) {
        if (a.second->q != b.second->q) return a.second->q < b.second->q;
        return a.first < b.first;
      });
      Json fin = Json::array();
      for (auto& [k, r] : rows) {
        Json e = Json::object();
        e["prime"] = k;
        e["q"] = r->q.get_str();
        e["type"] = local_type_name(r->type);
        if (r->type == LocalType::UnramifiedPS) {
          e["satake_sum"] = qext_s(r->sum);
          e["satake_prod"] = qext_s(r->prod);
        } else {
          e["cond_exp"] = r->cond_exp;
        }
        fin.push_back(e);
      }
      rep.results["finite"] = fin;
    } else if (c_galois->parsed()) {
      auto doc = need_doc(opt);
      GaloisAction act = identity_action(doc.form);
      if (!sigma.empty()) act.gen_image = QPoly(rat_list(sigma));
      if (!perm.empty())
        for (long v : long_list(perm)) act.place_perm.push_back((int)v);
      check_action(doc.form, act);
      Int pb = opt.bound > 0 ? Int((long)opt.bound) : doc.form.bound;
      auto eq = equivariance_check(doc.form, act, pb);
      rep.results["equivariant"] = eq.ok;
      if (!eq.ok) {
        rep.results["offending_prime"] = eq.offending_prime;
        rep.status = 1;
      }
    } else if (c_lvalue->parsed()) {
      auto doc = need_doc(opt);
      Int B = opt.bound > 0 ? Int((long)opt.bound) : doc.form.bound;
      auto norm = norm_s == "unitary" ? SeriesNorm::Unitary
                                      : SeriesNorm::Classical;
      auto series = coefficients_from_euler(doc.form, B, norm);
      Rat s = to_rat(s_str);
      rep.results["s"] = s.get_str();
      rep.results["normalization"] = norm_s;
      try {
        auto lv = evaluate_finite_L(series, s, (mpfr_prec_t)opt.prec);
        rep.results["value"] = json_cert(lv.value);
        rep.results["tail"] = lv.tail;
        rep.results["total_radius"] = lv.total_radius();
      } catch (const out_of_reach& e) {
        rep.results["out_of_reach"] = true;
        rep.warnings.push_back(std::string("OutOfReach: ") + e.what());
      }
    } else if (c_euler->parsed()) {
      auto doc = need_doc(opt);
      auto vr = validate_newform_data(doc.form);
      Json problems = Json::array();
      for (auto& p : vr.problems) problems.push_back(p);
      // independent resynthesis from the prime table must reproduce the rest
      HilbertNewformData re = doc.form;
      re.C.clear();
      for (auto& e : enumerate_ideals(doc.form.F, doc.form.bound)) {
        if (e.factors.size() == 1 && e.factors[0].exponent == 1)
          if (const NFElem* c = doc.form.coeff(e.ideal))
            re.C[e.ideal.key()] = *c;
      }
      synthesize_coefficients(re);
      long mismatches = 0;
      for (auto& [key, val] : doc.form.C) {
        auto it = re.C.find(key);
        if (it != re.C.end() && !(it->second == val)) {
          ++mismatches;
          problems.push_back("resynthesis differs at " + key);
        }
      }
      rep.results["validation_problems"] = problems;
      rep.results["resynthesis_mismatches"] = mismatches;
      rep.results["ok"] = problems.empty();
      if (!problems.empty()) rep.status = 1;
    } else if (c_zeta->parsed()) {
      Int Q((long)q);
      NonArchRep<Rat> r = [&] {
        if (type == "unramified")
          return NonArchRep<Rat>::unramified(Q,
                                             QExt<Rat>::from_rat(to_rat(alpha), Q),
                                             QExt<Rat>::from_rat(to_rat(beta), Q));
        if (type == "ramified")
          return NonArchRep<Rat>::one_ramified(
              Q, QExt<Rat>::from_rat(to_rat(chi), Q), cond);
        if (type == "steinberg")
          return NonArchRep<Rat>::steinberg(Q,
                                            QExt<Rat>::from_rat(to_rat(chi), Q));
        return NonArchRep<Rat>::other(Q, cond < 2 ? 2 : cond);
      }();
      bool ok = zeta_identity_holds(r, (size_t)order);
      rep.results["type"] = type;
      rep.results["order"] = order;
      rep.results["result"] =
          ok ? "identity holds to order " + std::to_string(order)
             : "identity FAILS";
      if (!ok) rep.status = 1;
    } else if (c_coh->parsed()) {
      auto mu = cohomological_weight(long_list(weight), twisted);
      auto cc = archimedean_constants(mu);
      Json pairs = Json::array();
      for (auto& [a, b] : mu.mu)
        pairs.push_back("(" + a.get_str() + "," + b.get_str() + ")");
      rep.results["mu"] = pairs;
      rep.results["purity_weight"] = mu.w.get_str();
      rep.results["d_inf"] = cc.d_inf.get_str();
      rep.results["c"] = cc.c.get_str();
    }
  } catch (const parse_error& e) {
    rep.warnings.push_back(std::string("ParseError: ") + e.what());
    rep.status = 2;
  } catch (const std::exception& e) {
    rep.warnings.push_back(std::string("error: ") + e.what());
    rep.status = 1;
  }

  emit_report(rep, opt.format, std::cout);
  return rep.status;
}
