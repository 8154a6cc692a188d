#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "signbal/balance.hpp"
#include "signbal/errors.hpp"

using namespace signbal;

namespace {

Mat from_rows(const Field& f, std::vector<std::vector<unsigned>> rows) {
  Mat m(f, int(rows.size()), int(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m.set(int(i), int(j), rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("matrix statistics") {
  Field f2 = Field::make(2, 1);
  CHECK(stat_ones(from_rows(f2, {{1, 1}, {1, 0}})) == 3);
  CHECK(stat_ones(Mat::identity(f2, 4)) == 4);
  Field f3 = Field::make(3, 1);
  CHECK_THROWS_AS(stat_ones(Mat::identity(f3, 2)), WrongFieldError);

  CHECK(stat_fieldsum(Mat::identity(f3, 2)) == 2);
  CHECK(stat_fieldsum(Mat::identity(f3, 3)) == 0);
  CHECK(stat_fieldsum(Mat::identity(f3, 2), {0, 2, 1}) == 1);
  CHECK(stat_fieldsum(Mat(f3, 2, 2), {0, 2, 1}) == 0);
  CHECK_THROWS_AS(stat_fieldsum(Mat::identity(f3, 2), {1, 0, 2}),
                  OutOfRangeError);
  CHECK_THROWS_AS(stat_fieldsum(Mat::identity(f3, 2), {0, 1}),
                  OutOfRangeError);
  CHECK_THROWS_AS(stat_fieldsum(Mat::identity(f3, 2), {0, 1, 1}),
                  OutOfRangeError);
  CHECK(std::string(stat_name(Stat::Ones)) == "ones");
  CHECK(std::string(stat_name(Stat::FieldSum)) == "fieldsum");
}

TEST_CASE("generating functions over the whole group") {
  Field f2 = Field::make(2, 1);
  GenFun ones = gen_fun_gl(2, f2, Stat::Ones);
  CHECK(ones.poly == IntPoly({0, 0, 2, 4}));
  CHECK(ones.poly.eval(1) == 6);
  GenFun fs = gen_fun_gl(2, f2, Stat::FieldSum);
  CHECK(fs.poly == IntPoly({2, 4}));

  Field f3 = Field::make(3, 1);
  CHECK_THROWS_AS(gen_fun_gl(2, f3, Stat::Ones), WrongFieldError);
  CHECK(gen_fun_gl(2, f3, Stat::FieldSum).poly.eval(1) == 48);

  // a relabeling permutes the nonzero coefficients and fixes c_0
  GenFun fs3 = gen_fun_gl(2, f3, Stat::FieldSum);
  GenFun fs3b = gen_fun_gl(2, f3, Stat::FieldSum, 1, {0, 2, 1});
  CHECK(fs3b.poly.coeff(0) == fs3.poly.coeff(0));
  CHECK(fs3b.poly.coeff(1) == fs3.poly.coeff(2));
  CHECK(fs3b.poly.coeff(2) == fs3.poly.coeff(1));

  // worker fan-out must not change the histogram
  CHECK(gen_fun_gl(3, f2, Stat::Ones, 4).poly ==
        gen_fun_gl(3, f2, Stat::Ones, 1).poly);

  SpGroup sp1(1);
  GenFun spf = gen_fun_sp(sp1);
  CHECK(spf.poly.eval(1) == 6);
  CHECK(eval_at_nontrivial_root(spf.poly, 2) == -2);
}

TEST_CASE("coset classification") {
  Field f2 = Field::make(2, 1);
  CosetClass top = classify_coset(Mat::identity(f2, 2));
  CHECK_FALSE(top.odd);
  CHECK(top.first_odd_column == 1);

  CosetClass odd = classify_coset(from_rows(f2, {{1, 0}, {1, 1}}));
  CHECK(odd.odd);
  CHECK(odd.first_odd_column == 0);

  CHECK_THROWS_AS(classify_coset(from_rows(f2, {{1, 1}, {0, 1}})),
                  NotCanonicalError);

  CosetClass sp_top = classify_coset_sp(Mat::identity(f2, 4));
  CHECK_FALSE(sp_top.odd);
  CHECK(sp_top.first_odd_column == 1);
  Field f3g = Field::make(3, 1);
  CHECK_THROWS_AS(classify_coset_sp(Mat::identity(f3g, 2)), WrongFieldError);

  // odd cosets have no zero-statistic matrix; balanced cosets have a
  // uniform nonzero tail
  Field f3 = Field::make(3, 1);
  for (const CanonicalForm& c : all_canonical_reps(2, f3)) {
    CosetClass cls = classify_coset(c.rep);
    GenFun gf = coset_gen_fun(c.rep, Stat::FieldSum);
    BigInt val = eval_at_nontrivial_root(gf.poly, 3);
    if (cls.odd) {
      CHECK(gf.poly.coeff(0) == 0);
      CHECK(val == -6);  // -(q-1)^{n-1} q^C(n,2)
    } else {
      CHECK(val == 0);
    }
  }
}

TEST_CASE("coset generating function") {
  Field f2 = Field::make(2, 1);
  GenFun b = coset_gen_fun(Mat::identity(f2, 2), Stat::FieldSum);
  CHECK(b.poly == IntPoly({1, 1}));
  CHECK(eval_at_nontrivial_root(b.poly, 2) == 0);

  GenFun o = coset_gen_fun(from_rows(f2, {{1, 0}, {1, 1}}), Stat::Ones);
  CHECK(o.poly.coeff(0) == 0);
  CHECK(o.poly.eval(1) == 2);

  // per-coset histograms add up to the group histogram
  Field f3 = Field::make(3, 1);
  IntPoly sum;
  for (const CanonicalForm& c : all_canonical_reps(2, f3))
    sum = sum + coset_gen_fun(c.rep, Stat::FieldSum).poly;
  CHECK(sum == gen_fun_gl(2, f3, Stat::FieldSum).poly);
}

TEST_CASE("odd coset counts") {
  CHECK(count_odd_cosets_gl(Perm::identity(2), 2) == 1);
  CHECK(count_odd_cosets_gl(Perm({2, 1}), 2) == 0);
  CHECK(count_odd_cosets_gl(Perm::identity(3), 2) == 2);

  // the closed count matches a direct classification of every cell rep
  for (unsigned q : {2u, 3u}) {
    Field f = Field::make(q, 1);
    for (int n = 2; n <= 3; ++n)
      for (const Perm& p : all_perms(n)) {
        BigInt direct = 0;
        CellRepEnumerator ce(p, f);
        Mat r(f, n, n);
        while (ce.next(r)) direct += classify_coset(r).odd ? 1 : 0;
        CHECK(count_odd_cosets_gl(p, q) == direct);
      }
  }

  CHECK(count_odd_cosets_sp(SignedPerm::identity(1)) == 1);
  CHECK(count_odd_cosets_sp(SignedPerm({-1})) == 0);
  BigInt sp2_total = 0;
  for (const SignedPerm& s : all_signed_perms(2))
    sp2_total += count_odd_cosets_sp(s);
  CHECK(sp2_total == 3);  // 48 odd matrices / |B| = 16
}

TEST_CASE("imbalance three ways") {
  struct Row {
    int n;
    unsigned q;
    long want;
  };
  for (const Row& r : std::vector<Row>{{1, 2, -1},
                                       {2, 2, -2},
                                       {3, 2, -24},
                                       {2, 3, -6},
                                       {2, 4, -12},
                                       {2, 5, -20}}) {
    Field f = (r.q == 4) ? Field::make(2, 2) : Field::make(r.q, 1);
    CHECK(imbalance_gl_brute(r.n, f) == r.want);
    CHECK(imbalance_gl_structured(r.n, r.q) == r.want);
    CHECK(imbalance_gl_closed(r.n, r.q) == r.want);
  }
  // structured and closed stay glued well past the brute-force range
  for (int n = 1; n <= 5; ++n)
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 9u})
      CHECK(imbalance_gl_structured(n, q) == imbalance_gl_closed(n, q));

  // relabeling the nonzero residues cannot move the imbalance
  Field f3 = Field::make(3, 1);
  CHECK(imbalance_gl_brute(2, f3, 1, {0, 2, 1}) == -6);
}

TEST_CASE("residue counts") {
  CHECK(residue_counts_gl(2, 2) == std::pair<BigInt, BigInt>{2, 4});
  CHECK(residue_counts_gl(3, 2) == std::pair<BigInt, BigInt>{72, 96});
  CHECK(residue_counts_gl(4, 2) == std::pair<BigInt, BigInt>{9408, 10752});
  CHECK(residue_counts_gl(2, 3) == std::pair<BigInt, BigInt>{12, 18});
  CHECK(residue_counts_gl(2, 4) == std::pair<BigInt, BigInt>{36, 48});
  CHECK(residue_counts_gl(2, 5) == std::pair<BigInt, BigInt>{80, 100});
  for (int n = 1; n <= 4; ++n)
    for (unsigned q : {2u, 3u, 5u}) {
      auto [n0, ni] = residue_counts_gl(n, q);
      CHECK(n0 + (q - 1) * ni == order_gl(unsigned(n), q));
      CHECK(n0 - ni == imbalance_gl_closed(n, q));
    }
}

TEST_CASE("symplectic imbalance and parity") {
  CHECK(imbalance_sp_structured(1) == -2);
  CHECK(imbalance_sp_structured(2) == -48);
  CHECK(imbalance_sp_structured(3) == -23040);
  for (int n = 1; n <= 6; ++n)
    CHECK(imbalance_sp_structured(n) == imbalance_sp_closed(n));

  SpGroup sp1(1), sp2(2);
  CHECK(imbalance_sp_brute(sp1) == -2);
  CHECK(imbalance_sp_brute(sp2) == -48);

  CHECK(parity_counts_sp(1) == std::pair<BigInt, BigInt>{2, 4});
  CHECK(parity_counts_sp(2) == std::pair<BigInt, BigInt>{336, 384});
  CHECK(parity_counts_sp(3) == std::pair<BigInt, BigInt>{714240, 737280});
  for (int n = 1; n <= 3; ++n) {
    auto [even, odd] = parity_counts_sp(n);
    CHECK(even + odd == order_sp(unsigned(n), 2));
    CHECK(even - odd == imbalance_sp_closed(n));
  }
}

TEST_CASE("cyclic action on the general linear group") {
  Field f2 = Field::make(2, 1);
  CHECK(csp_action(1, Mat::identity(f2, 2)) ==
        from_rows(f2, {{1, 1}, {0, 1}}));
  CHECK(csp_action(0, Mat::identity(f2, 2)) == Mat::identity(f2, 2));

  Field f3 = Field::make(3, 1);
  GlEnumerator en(2, f3);
  Mat g(f3, 2, 2);
  std::map<long, long> census;
  while (en.next(g)) {
    // q applications return to the start
    Mat x = g;
    for (int i = 0; i < 3; ++i) x = csp_action(1, x);
    CHECK(x == g);
    // one shot of the l-th power equals l single steps
    Mat two_steps = csp_action(1, csp_action(1, g));
    CHECK(csp_action(2, g) == two_steps);
    // orbit size is 1 exactly on odd cosets
    bool odd = classify_coset(canonical_rep(g).rep).odd;
    bool fixed = csp_action(1, g) == g;
    CHECK(odd == fixed);
    long size = 1;
    for (Mat y = csp_action(1, g); y != g; y = csp_action(1, y)) ++size;
    ++census[size];
  }
  CHECK(census == std::map<long, long>{{1, 12}, {3, 36}});
}

TEST_CASE("cyclic action on the symplectic group") {
  SpGroup sp2(2);
  Field f2 = Field::make(2, 1);
  long fixed = 0;
  for (size_t i = 0; i < sp2.size(); ++i) {
    Mat g = sp2.matrix(i);
    Mat h = csp_action_sp(1, g);
    CHECK(is_symplectic(h));
    CHECK(csp_action_sp(1, h) == g);
    fixed += (h == g);
  }
  CHECK(fixed == 48);
}

TEST_CASE("sieving audit structure") {
  Field f2 = Field::make(2, 1);
  CspAudit a = csp_audit_gl(2, f2);
  CHECK(a.a == std::vector<BigInt>{2, 4});
  CHECK(a.odd_elements == 2);
  CHECK(a.total_orbits == 4);
  CHECK(a.free_orbits == 2);
  CHECK(a.orbit_census ==
        std::vector<std::pair<unsigned, BigInt>>{{1, 2}, {2, 2}});
  CHECK(a.cond2_expected == std::vector<BigInt>{4, 2});
  REQUIRE(a.powers.size() == 2);
  CHECK(a.powers[0].fixed == 6);
  CHECK(a.powers[0].evaluation == 6);
  CHECK(a.powers[1].fixed == 2);
  CHECK(a.powers[1].evaluable);
  CHECK(a.powers[1].evaluation == -2);
  CHECK_FALSE(a.cond1_literal_all);
  CHECK(a.cond1_abs_nontrivial_all);
  CHECK_FALSE(a.cond2);
  CHECK_FALSE(a.type_c_extrapolated);

  SpGroup sp1(1);
  CspAudit s = csp_audit_sp(sp1);
  CHECK(s.odd_elements == 2);
  CHECK(s.type_c_extrapolated);
  CHECK(s.cond1_abs_nontrivial_all);
}
