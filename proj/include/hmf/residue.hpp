#pragma once

// The finite ring O/n and the structure of its unit group, all by explicit
// enumeration (moduli at desk scale have norm in the low hundreds).

#include <hmf/cyclotomic.hpp>
#include <hmf/ideal.hpp>

#include <map>
#include <numeric>

namespace hmf {

class ResidueRing {
 public:
  ResidueRing(const TotallyRealField* F, FracIdeal n)
      : F_(F), n_(std::move(n)) {
    if (!n_.is_integral()) throw invalid_input("ResidueRing: modulus not integral");
    int d = F_->degree();
    const ZMat& h = n_.hnf();
    // canonical transversal: product of [0, h[i][i])
    std::vector<Int> cur(d, 0);
    bool done = false;
    while (!done) {
      elements_.push_back(cur);
      index_[cur] = elements_.size() - 1;
      int i = 0;
      for (; i < d; ++i) {
        cur[i] += 1;
        if (cur[i] < h[i][i]) break;
        cur[i] = 0;
      }
      if (i == d) done = true;
    }
    // units
    FracIdeal O = FracIdeal::ring_of_integers(F_);
    for (size_t i = 0; i < elements_.size(); ++i) {
      FieldElem x = elem(i);
      // in the zero ring O/(1) the single class 0 = 1 is the unit
      if (x.is_zero()) {
        if (elements_.size() == 1) {
          unit_pos_[i] = units_.size();
          units_.push_back(i);
        }
        continue;
      }
      FracIdeal xi = FracIdeal::principal(F_, x);
      // (x) + n = O  <=>  x unit mod n
      int nd = F_->degree();
      ZMat m(nd, std::vector<Int>(2 * nd));
      for (int r = 0; r < nd; ++r)
        for (int c = 0; c < nd; ++c) {
          Rat t = Rat(xi.hnf()[r][c], xi.den());
          t.canonicalize();
          if (t.get_den() != 1) throw hmf_error("unit test: fractional");
          m[r][c] = t.get_num();
          m[r][nd + c] = h[r][c];
        }
      if (diag_product(hnf_columns(m)) == 1) {
        unit_pos_[i] = units_.size();
        units_.push_back(i);
      }
    }
    build_unit_structure();
  }

  const TotallyRealField* field() const { return F_; }
  const FracIdeal& modulus() const { return n_; }
  size_t size() const { return elements_.size(); }
  size_t unit_count() const { return units_.size(); }

  FieldElem elem(size_t idx) const {
    std::vector<Rat> co(F_->degree());
    for (int i = 0; i < F_->degree(); ++i) co[i] = Rat(elements_[idx][i]);
    return F_->from_integral(co);
  }

  size_t reduce(const FieldElem& x) const {
    auto co = F_->integral_coords(x);
    std::vector<Int> v(co.size());
    for (size_t i = 0; i < co.size(); ++i) {
      if (co[i].get_den() != 1)
        throw invalid_input("reduce: element not integral");
      v[i] = co[i].get_num();
    }
    v = reduce_mod_hnf(n_.hnf(), std::move(v));
    auto it = index_.find(v);
    if (it == index_.end()) throw hmf_error("reduce: not in transversal");
    return it->second;
  }

  // residue of a fractional element whose denominator ideal is coprime to n
  size_t reduce_coprime(const FieldElem& x) const {
    if (F_->is_integral(x)) return reduce(x);
    // write x = y / m with m rational positive; then reduce y * m^{-1}
    Int m = 1;
    for (auto& c : F_->integral_coords(x)) m = lcm(m, c.get_den());
    FieldElem y = F_->scale(Rat(m), x);
    size_t iy = reduce(y);
    size_t im = reduce(F_->from_rat(Rat(m)));
    return mul(iy, inverse(im));
  }

  size_t one_idx() const { return reduce(F_->one()); }
  size_t mul(size_t a, size_t b) const {
    return reduce(F_->mul(elem(a), elem(b)));
  }
  bool is_unit(size_t idx) const { return unit_pos_.count(idx) != 0; }
  size_t inverse(size_t idx) const {
    if (!is_unit(idx)) throw invalid_input("inverse of non-unit residue");
    size_t one = one_idx();
    for (size_t u : units_)
      if (mul(idx, u) == one) return u;
    throw hmf_error("inverse not found");
  }

  const std::vector<size_t>& units() const { return units_; }
  size_t unit_position(size_t idx) const { return unit_pos_.at(idx); }

  // unit group structure
  const std::vector<size_t>& unit_generators() const { return gens_; }
  const std::vector<long>& unit_gen_orders() const { return gen_orders_; }
  // exponent tuple of the unit at position pos w.r.t. the generators
  const std::vector<long>& dlog(size_t pos) const { return dlog_[pos]; }

 private:
  void build_unit_structure() {
    size_t m = units_.size();
    // greedy basis: pick max order modulo current subgroup
    std::vector<char> in_sub(m, 0);
    size_t one_p = unit_pos_.at(one_idx());
    in_sub[one_p] = 1;
    size_t covered = 1;
    auto pmul = [&](size_t a, size_t b) {
      return unit_pos_.at(mul(units_[a], units_[b]));
    };
    auto order_mod = [&](size_t x) {
      long o = 1;
      size_t y = x;
      while (!in_sub[y]) {
        y = pmul(y, x);
        ++o;
      }
      return o;
    };
    std::vector<size_t> sub{one_p};
    while (covered < m) {
      size_t best = 0;
      long besto = 0;
      for (size_t x = 0; x < m; ++x) {
        if (in_sub[x]) continue;
        long o = order_mod(x);
        if (o > besto) {
          besto = o;
          best = x;
        }
      }
      // adjust so the new generator has true order besto: g^besto lies in
      // the current subgroup; divide out a besto-th root of it so the
      // generators give a direct-product basis (characters need this)
      size_t gpow = best;
      for (long k = 1; k < besto; ++k) gpow = pmul(gpow, best);
      if (gpow != one_p) {
        std::vector<long> c(gens_.size(), 0);
        {  // express gpow over the existing basis
          std::vector<long> tup(gens_.size(), 0);
          while (true) {
            size_t acc = one_p;
            for (size_t i = 0; i < gens_.size(); ++i) {
              size_t gp = unit_pos_.at(gens_[i]);
              for (long t = 0; t < tup[i]; ++t) acc = pmul(acc, gp);
            }
            if (acc == gpow) { c = tup; break; }
            size_t i = 0;
            for (; i < gens_.size(); ++i) {
              if (++tup[i] < gen_orders_[i]) break;
              tup[i] = 0;
            }
            if (i == gens_.size())
              throw hmf_error("unit basis correction: dlog not found");
          }
        }
        size_t adj = best;
        for (size_t i = 0; i < gens_.size(); ++i) {
          long o = gen_orders_[i];
          long g = std::gcd(besto, o);
          if (c[i] % g != 0)
            throw hmf_error("unit basis correction failed");
          // d solves besto * d = c[i] (mod o)
          long m2 = besto / g, o2 = o / g, c2 = (c[i] / g) % o2;
          long d = 0;
          for (long t = 0; t < o2; ++t)
            if ((m2 * t) % o2 == c2) { d = t; break; }
          size_t gp = unit_pos_.at(gens_[i]);
          for (long t = 0; t < (o - d) % o; ++t) adj = pmul(adj, gp);
        }
        best = adj;
      }
      gens_.push_back(units_[best]);
      gen_orders_.push_back(besto);
      std::vector<size_t> cur = sub;
      size_t pw = best;
      for (long k = 1; k < besto; ++k) {
        for (size_t s : cur) {
          size_t v = pmul(s, pw);
          if (!in_sub[v]) {
            in_sub[v] = 1;
            ++covered;
            sub.push_back(v);
          }
        }
        pw = pmul(pw, best);
      }
    }
    // dlog table: enumerate all exponent tuples
    dlog_.assign(m, {});
    std::vector<long> tup(gens_.size(), 0);
    while (true) {
      size_t acc = one_p;
      for (size_t i = 0; i < gens_.size(); ++i) {
        size_t gp = unit_pos_.at(gens_[i]);
        for (long k = 0; k < tup[i]; ++k) acc = pmul(acc, gp);
      }
      if (dlog_[acc].empty() || acc == one_p) dlog_[acc] = tup;
      size_t i = 0;
      for (; i < gens_.size(); ++i) {
        if (++tup[i] < gen_orders_[i]) break;
        tup[i] = 0;
      }
      if (i == gens_.size()) break;
    }
    if (gens_.empty()) dlog_.assign(m, std::vector<long>{});
  }

  const TotallyRealField* F_;
  FracIdeal n_;
  std::vector<std::vector<Int>> elements_;
  std::map<std::vector<Int>, size_t> index_;
  std::vector<size_t> units_;
  std::map<size_t, size_t> unit_pos_;
  std::vector<size_t> gens_;
  std::vector<long> gen_orders_;
  std::vector<std::vector<long>> dlog_;
};

}  // namespace hmf
