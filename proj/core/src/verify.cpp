#include "signbal/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "signbal/balance.hpp"
#include "signbal/bruhat.hpp"
#include "signbal/coxeter.hpp"
#include "signbal/errors.hpp"
#include "signbal/field.hpp"
#include "signbal/matrix.hpp"
#include "signbal/qseries.hpp"

namespace signbal {

namespace {

std::string dec(const BigInt& v) { return v.str(); }

std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += dec(v[i]);
  }
  return s;
}

std::string coeff_list(const IntPoly& p) {
  if (p.is_zero()) return "0";
  return join(p.coeffs());
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

Field field_for(unsigned q) {
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    unsigned k = 0, m = q;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m != 1)
      throw NotSupportedError("field size is not a prime power: " +
                              std::to_string(q));
    return Field::make(p, k);
  }
  throw NotSupportedError("field size is not a prime power: " +
                          std::to_string(q));
}

std::string tag(int n, unsigned q) {
  return "gl" + std::to_string(n) + "_q" + std::to_string(q);
}

/// The desk-scale (n, q) battery; quick drops the slowest pair.
std::vector<std::pair<int, unsigned>> gl_pairs(bool quick) {
  std::vector<std::pair<int, unsigned>> v{{2, 2}, {3, 2}, {4, 2}, {2, 3},
                                          {3, 3}, {2, 4}, {2, 5}};
  if (quick)
    v.erase(std::remove(v.begin(), v.end(), std::pair<int, unsigned>{3, 3}),
            v.end());
  return v;
}

class Suite {
 public:
  explicit Suite(const VerifyOptions& opts) : opts_(opts) {}

  std::vector<VerifyCheck> run() {
    section("mahonian", 1, [this] { mahonian(); });
    section("orders", 2, [this] { orders(); });
    section("roundtrip", 3, [this] { roundtrip(); });
    section("imbalance_gl", 4, [this] { imbalance_gl(); });
    section("residues", 5, [this] { residues(); });
    section("imbalance_sp", 6, [this] { imbalance_sp(); });
    section("cosets_gl", 7, [this] { cosets_gl(); });
    section("cosets_sp", 7, [this] { cosets_sp(); });
    section("bijections", 8, [this] { bijections(); });
    section("symplectic", 9, [this] { symplectic(); });
    section("csp", 10, [this] { csp(); });
    return std::move(checks_);
  }

 private:
  void add(std::string name, int criterion, std::string expected,
           std::string computed) {
    bool pass = expected == computed;
    checks_.push_back({std::move(name), criterion, std::move(expected),
                       std::move(computed), pass});
  }

  void section(const char* name, int criterion,
               const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(std::string(name) + "_crashed", criterion, "nothrow",
          "exception:" + sanitize(e.what()));
    }
  }

  const SpGroup& sp(int n) {
    auto it = sp_.find(n);
    if (it == sp_.end())
      it = sp_.emplace(n, std::make_unique<SpGroup>(n, opts_.workers,
                                                    opts_.cache))
               .first;
    return *it->second;
  }

  void mahonian();
  void orders();
  void roundtrip();
  void imbalance_gl();
  void residues();
  void imbalance_sp();
  void cosets_gl();
  void cosets_sp();
  void bijections();
  void symplectic();
  void csp();

  VerifyOptions opts_;
  std::vector<VerifyCheck> checks_;
  std::map<int, std::unique_ptr<SpGroup>> sp_;
};

void Suite::mahonian() {
  for (int n = 1; n <= 7; ++n) {
    IntPoly inv_poly, maj_poly;
    for (const Perm& p : all_perms(n)) {
      inv_poly.add_term(size_t(inv_count(p)), 1);
      maj_poly.add_term(size_t(maj(p)), 1);
    }
    IntPoly fact = q_factorial_poly(unsigned(n));
    std::string want = coeff_list(fact);
    std::string got = (inv_poly == fact && maj_poly == fact)
                          ? want
                          : "inv=" + coeff_list(inv_poly) +
                                ";maj=" + coeff_list(maj_poly);
    add("mahonian_n" + std::to_string(n), 1, want, got);
  }
}

void Suite::orders() {
  for (auto [n, q] : gl_pairs(opts_.quick)) {
    Field f = field_for(q);
    GlEnumerator en(n, f);
    Mat g(f, n, n);
    BigInt count = 0;
    while (en.next(g)) ++count;
    add("order_" + tag(n, q), 2, dec(order_gl(unsigned(n), q)), dec(count));
  }
  const int top = opts_.quick ? 2 : 3;
  for (int n = 1; n <= top; ++n)
    add("order_sp" + std::to_string(n), 2, dec(order_sp(unsigned(n), 2)),
        dec(BigInt(sp(n).size())));
}

void Suite::roundtrip() {
  struct Case {
    int n;
    unsigned q;
  };
  for (Case c : {Case{3, 2}, Case{2, 3}, Case{2, 4}}) {
    Field f = field_for(c.q);
    GlEnumerator en(c.n, f);
    Mat g(f, c.n, c.n);
    BigInt total = 0, good = 0;
    while (en.next(g)) {
      ++total;
      BruhatFactorization fa = decompose(g);
      if (fa.u * perm_matrix(fa.pi, f) * fa.b == g &&
          u_pi_membership(fa.u, fa.pi) && fa.b.is_borel())
        ++good;
    }
    add("roundtrip_" + tag(c.n, c.q), 3, dec(total) + "/" + dec(total),
        dec(good) + "/" + dec(total));
  }
  {
    Field f2 = field_for(2);
    std::mt19937_64 rng(0x5ba1u);
    const int want = 10000;
    int drawn = 0;
    BigInt good = 0;
    while (drawn < want) {
      PackedMat p = PackedMat::from_bits(4, rng() & 0xFFFFu);
      Mat g = p.unpack(f2);
      if (g.det().is_zero()) continue;
      ++drawn;
      BruhatFactorization fa = decompose(g);
      if (fa.u * perm_matrix(fa.pi, f2) * fa.b == g) ++good;
    }
    add("roundtrip_random_gl4_q2", 3, "10000/10000", dec(good) + "/10000");
  }
  for (auto [n, q] :
       {std::pair<int, unsigned>{2, 2}, {3, 2}, {2, 3}}) {
    Field f = field_for(q);
    GlEnumerator en(n, f);
    Mat g(f, n, n);
    std::map<std::vector<int>, BigInt> tally;
    while (en.next(g)) tally[decompose(g).pi.one_line()] += 1;
    const BigInt borel = big_pow(BigInt(q) - 1, unsigned(n)) *
                         big_pow(q, binom2(unsigned(n)));
    bool ok = true;
    BigInt cells = 0;
    for (const Perm& pi : all_perms(n)) {
      ++cells;
      BigInt want = big_pow(q, cell_free_positions(pi).dimension) * borel;
      auto it = tally.find(pi.one_line());
      if (it == tally.end() || it->second != want) ok = false;
    }
    if (BigInt(tally.size()) != cells) ok = false;
    std::string want = "allmatch(" + dec(cells) + "cells)";
    add("cell_sizes_" + tag(n, q), 3, want, ok ? want : "mismatch");
  }
}

void Suite::imbalance_gl() {
  struct Row {
    int n;
    unsigned q;
    long expect;
  };
  const std::vector<Row> rows{{1, 2, -1}, {1, 3, -1},    {1, 4, -1},
                              {1, 5, -1}, {2, 2, -2},    {3, 2, -24},
                              {4, 2, -1344}, {2, 3, -6}, {3, 3, -432},
                              {2, 4, -12}, {2, 5, -20}};
  for (const Row& r : rows) {
    if (opts_.quick && r.n == 3 && r.q == 3) continue;
    Field f = field_for(r.q);
    BigInt brute =
        imbalance_gl_brute(r.n, f, opts_.workers, {}, opts_.cache);
    BigInt structured = imbalance_gl_structured(r.n, r.q);
    BigInt closed = imbalance_gl_closed(r.n, r.q);
    const BigInt want(r.expect);
    std::string got =
        (brute == want && structured == want && closed == want)
            ? dec(want)
            : "brute=" + dec(brute) + ";structured=" + dec(structured) +
                  ";closed=" + dec(closed);
    add("imbalance_" + tag(r.n, r.q), 4, dec(want), got);
  }
}

void Suite::residues() {
  for (auto [n, q] : gl_pairs(opts_.quick)) {
    Field f = field_for(q);
    GenFun gf = gen_fun_gl(n, f, Stat::FieldSum, opts_.workers, {},
                           opts_.cache);
    IntPoly red = gf.poly.reduce_mod_cyclic(q);
    std::vector<BigInt> hist(q);
    for (unsigned i = 0; i < q; ++i) hist[i] = red.coeff(i);
    auto [n0, ni] = residue_counts_gl(n, q);
    std::vector<BigInt> want{n0};
    for (unsigned i = 1; i < q; ++i) want.push_back(ni);
    add("residues_" + tag(n, q), 5, join(want), join(hist));
  }
}

void Suite::imbalance_sp() {
  const int top = opts_.quick ? 2 : 3;
  const long expect[4] = {0, -2, -48, -23040};
  for (int n = 1; n <= top; ++n) {
    const SpGroup& g = sp(n);
    BigInt brute = imbalance_sp_brute(g, opts_.workers);
    BigInt structured = imbalance_sp_structured(n);
    BigInt closed = imbalance_sp_closed(n);
    const BigInt want(expect[n]);
    std::string got =
        (brute == want && structured == want && closed == want)
            ? dec(want)
            : "brute=" + dec(brute) + ";structured=" + dec(structured) +
                  ";closed=" + dec(closed);
    add("imbalance_sp" + std::to_string(n), 6, dec(want), got);

    IntPoly red = gen_fun_sp(g, opts_.workers).poly.reduce_mod_cyclic(2);
    auto [even, odd] = parity_counts_sp(n);
    add("parity_sp" + std::to_string(n), 6, dec(even) + "," + dec(odd),
        dec(red.coeff(0)) + "," + dec(red.coeff(1)));
  }
}

void Suite::cosets_gl() {
  for (auto [n, q] : gl_pairs(opts_.quick)) {
    Field f = field_for(q);
    const BigInt odd_tail = big_pow(BigInt(q) - 1, unsigned(n - 1)) *
                            big_pow(q, binom2(unsigned(n)));
    const BigInt balanced_each = big_pow(BigInt(q) - 1, unsigned(n)) *
                                 big_pow(q, binom2(unsigned(n)) - 1);
    std::map<std::vector<int>, BigInt> odd_by_pi;
    BigInt cosets = 0;
    bool ok = true;
    for (const CanonicalForm& cf : all_canonical_reps(n, f)) {
      ++cosets;
      CosetClass cls = classify_coset(cf.rep);
      IntPoly poly = coset_gen_fun(cf.rep, Stat::FieldSum).poly;
      IntPoly red = poly.reduce_mod_cyclic(q);
      BigInt eval = eval_at_nontrivial_root(poly, q);
      if (cls.odd) {
        odd_by_pi[cf.pi.one_line()] += 1;
        if (red.coeff(0) != 0) ok = false;
        for (unsigned i = 1; i < q; ++i)
          if (red.coeff(i) != odd_tail) ok = false;
        if (eval != -odd_tail) ok = false;
      } else {
        for (unsigned i = 0; i < q; ++i)
          if (red.coeff(i) != balanced_each) ok = false;
        if (eval != 0) ok = false;
      }
    }
    std::string want = "ok(" + dec(cosets) + "cosets)";
    add("coset_dichotomy_" + tag(n, q), 7, want, ok ? want : "violated");

    bool okc = true;
    BigInt odd_total = 0;
    for (const Perm& pi : all_perms(n)) {
      BigInt want_cnt = count_odd_cosets_gl(pi, q);
      auto it = odd_by_pi.find(pi.one_line());
      BigInt got = (it == odd_by_pi.end()) ? BigInt(0) : it->second;
      if (got != want_cnt) okc = false;
      odd_total += got;
    }
    std::string wantc = "allmatch(odd=" + dec(odd_total) + ")";
    add("odd_coset_counts_" + tag(n, q), 7, wantc,
        okc ? wantc : "mismatch");
  }
}

void Suite::cosets_sp() {
  {
    std::vector<BigInt> want, got;
    for (int n = 1; n <= 3; ++n) {
      want.push_back(big_pow(2, unsigned(n) * unsigned(n)));
      got.push_back(BigInt(sp_borel(n).size()));
    }
    add("sp_borel_sizes", 7, join(want), join(got));
  }

  for (int n = 1; n <= 2; ++n) {
    const SpGroup& g = sp(n);
    std::map<uint64_t, CanonicalForm> reps;
    for (size_t i = 0; i < g.size(); ++i) {
      CanonicalForm cf = canonical_rep(g.matrix(i));
      reps.emplace(cf.rep.key(), cf);
    }
    const BigInt bc = big_pow(2, unsigned(n) * unsigned(n));
    bool ok = true;
    std::map<std::vector<int>, BigInt> odd_by_sigma;
    for (const auto& [key, cf] : reps) {
      CosetClass cls = classify_coset_sp(cf.rep);
      IntPoly poly = coset_gen_fun_sp(cf.rep).poly;
      IntPoly red = poly.reduce_mod_cyclic(2);
      BigInt eval = eval_at_nontrivial_root(poly, 2);
      if (cls.odd) {
        odd_by_sigma[unembed_signed(cf.pi).one_line()] += 1;
        if (red.coeff(0) != 0 || red.coeff(1) != bc || eval != -bc)
          ok = false;
      } else {
        if (red.coeff(0) != bc / 2 || red.coeff(1) != bc / 2 || eval != 0)
          ok = false;
      }
    }
    if (BigInt(reps.size()) * bc != order_sp(unsigned(n), 2)) ok = false;
    std::string want = "ok(" + dec(BigInt(reps.size())) + "cosets)";
    add("coset_dichotomy_sp" + std::to_string(n), 7, want,
        ok ? want : "violated");

    bool okc = true;
    BigInt odd_total = 0;
    for (const SignedPerm& s : all_signed_perms(n)) {
      BigInt want_cnt = count_odd_cosets_sp(s);
      auto it = odd_by_sigma.find(s.one_line());
      BigInt got = (it == odd_by_sigma.end()) ? BigInt(0) : it->second;
      if (got != want_cnt) okc = false;
      odd_total += got;
    }
    std::string wantc = "allmatch(odd=" + dec(odd_total) + ")";
    add("odd_coset_counts_sp" + std::to_string(n), 7, wantc,
        okc ? wantc : "mismatch");
  }

  {
    std::vector<Mat> borels = sp_borel(2);
    bool ok = borels.size() == 16;
    BigInt trials = 0;
    for (const Mat& b : borels)
      for (unsigned mask = 0; mask < 4; ++mask) {
        Mat damaged = b;
        damaged.set(0, 1, mask & 1u);
        damaged.set(0, 2, (mask >> 1) & 1u);
        ++trials;
        if (!(complete_sp_borel_row(damaged) == b)) ok = false;
      }
    add("sp_borel_completion_n2", 7, "ok(64)",
        ok ? "ok(" + dec(trials) + ")" : "violated");
  }
}

void Suite::bijections() {
  {
    Field f = field_for(4);
    std::vector<unsigned> tail{1, 2, 3};
    std::vector<BigInt> vals;
    do {
      IndexBijection bij{0, tail[0], tail[1], tail[2]};
      vals.push_back(
          imbalance_gl_brute(2, f, opts_.workers, bij, opts_.cache));
    } while (std::next_permutation(tail.begin(), tail.end()));
    bool same = std::all_of(vals.begin(), vals.end(),
                            [&](const BigInt& v) { return v == vals[0]; });
    add("bijection_indep_gl2_q4", 8, "-12x6",
        same ? dec(vals[0]) + "x" + std::to_string(vals.size())
             : join(vals));
  }
  {
    Field f = field_for(3);
    std::vector<BigInt> vals;
    for (const IndexBijection& bij :
         {IndexBijection{0, 1, 2}, IndexBijection{0, 2, 1}})
      vals.push_back(
          imbalance_gl_brute(2, f, opts_.workers, bij, opts_.cache));
    bool same = vals[0] == vals[1];
    add("bijection_indep_gl2_q3", 8, "-6x2",
        same ? dec(vals[0]) + "x2" : join(vals));
  }
}

void Suite::symplectic() {
  const int top = opts_.quick ? 2 : 3;
  for (int n = 1; n <= top; ++n) {
    const SpGroup& g = sp(n);
    BigInt good = 0;
    if (n >= 3) {
      for (size_t i = 0; i < g.size(); ++i)
        if (is_symplectic(g.packed(i))) ++good;
    } else {
      for (size_t i = 0; i < g.size(); ++i)
        if (is_symplectic(g.matrix(i))) ++good;
    }
    const BigInt total(g.size());
    add("symplectic_membership_sp" + std::to_string(n), 9,
        dec(total) + "/" + dec(total), dec(good) + "/" + dec(total));
  }

  {
    const SpGroup& g = sp(2);
    const Field& f2 = g.field();
    Mat m = symplectic_form(2, f2);
    BigInt good = 0;
    for (size_t i = 0; i < g.size(); ++i) {
      Mat a = g.matrix(i);
      bool ok = true;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          if (bilinear_form(f2, a.col(r), a.col(c)).index() != m.at(r, c))
            ok = false;
      if (ok) ++good;
    }
    add("bilinear_columns_sp2", 9, "720/720", dec(good) + "/720");
  }

  {
    const SpGroup& g = sp(2);
    const Field& f2 = g.field();
    BigInt good = 0;
    for (size_t i = 0; i < g.size(); ++i) {
      Mat a = g.matrix(i);
      SpFactorization fa = decompose_sp(a);
      if (is_symplectic(fa.u) && is_symplectic(fa.b) &&
          is_centrally_symmetric(fa.pi) && embed_signed(fa.sigma) == fa.pi &&
          fa.u * perm_matrix(fa.pi, f2) * fa.b == a)
        ++good;
    }
    add("decompose_sp4", 9, "720/720", dec(good) + "/720");
  }
}

namespace {
std::string audit_line(const CspAudit& a) {
  std::ostringstream os;
  os << "odd=" << a.odd_elements << ";fix1=" << a.powers.at(1).fixed
     << ";X1="
     << (a.powers.at(1).evaluable ? dec(a.powers.at(1).evaluation) : "NA")
     << ";orb=" << a.total_orbits << "/" << a.free_orbits
     << ";lit=" << (a.cond1_literal_all ? 1 : 0)
     << ";abs=" << (a.cond1_abs_nontrivial_all ? 1 : 0)
     << ";cond2=" << (a.cond2 ? 1 : 0);
  if (a.type_c_extrapolated) os << ";typec=1";
  return os.str();
}
}  // namespace

void Suite::csp() {
  struct GlCase {
    int n;
    unsigned q;
    const char* expect;
  };
  const GlCase gl_cases[] = {
      {2, 2, "odd=2;fix1=2;X1=-2;orb=4/2;lit=0;abs=1;cond2=0"},
      {3, 2, "odd=24;fix1=24;X1=-24;orb=96/72;lit=0;abs=1;cond2=0"},
      {2, 3, "odd=12;fix1=12;X1=-6;orb=24/12;lit=0;abs=0;cond2=0"},
  };
  for (const GlCase& c : gl_cases) {
    CspAudit a = csp_audit_gl(c.n, field_for(c.q));
    add("csp_" + tag(c.n, c.q), 10, c.expect, audit_line(a));
  }
  const char* sp_expect[] = {
      "odd=2;fix1=2;X1=-2;orb=4/2;lit=0;abs=1;cond2=0;typec=1",
      "odd=48;fix1=48;X1=-48;orb=384/336;lit=0;abs=1;cond2=0;typec=1",
  };
  for (int n = 1; n <= 2; ++n) {
    CspAudit a = csp_audit_sp(sp(n));
    add("csp_sp" + std::to_string(n), 10, sp_expect[n - 1], audit_line(a));
  }
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& opts) {
  Suite suite(opts);
  return suite.run();
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

std::string format_verify_text(const std::vector<VerifyCheck>& checks) {
  std::ostringstream os;
  for (const VerifyCheck& c : checks)
    os << (c.pass ? "PASS" : "FAIL") << ' ' << c.name
       << " expected=" << c.expected << " computed=" << c.computed << '\n';
  return os.str();
}

}  // namespace signbal
