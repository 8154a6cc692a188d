#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "signbal/coxeter.hpp"
#include "signbal/errors.hpp"
#include "signbal/qseries.hpp"

using namespace signbal;

TEST_CASE("q-integers and q-factorials") {
  CHECK(q_int(0, 2) == 0);
  CHECK(q_int(1, 7) == 1);
  CHECK(q_int(3, 2) == 7);
  CHECK(q_int(4, 3) == 40);
  CHECK(q_factorial(0, 5) == 1);
  CHECK(q_factorial(3, 2) == 21);
  CHECK(q_factorial(4, 2) == 21 * 15);
  CHECK(q_int_poly(3) == IntPoly({1, 1, 1}));
  CHECK(q_factorial_poly(3) == IntPoly({1, 2, 2, 1}));
  CHECK(q_factorial_poly(3).eval(2) == 21);
  for (unsigned n = 0; n <= 8; ++n)
    CHECK(q_factorial_poly(n).eval(3) == q_factorial(n, 3));
}

TEST_CASE("group order formulas") {
  CHECK(order_gl(1, 2) == 1);
  CHECK(order_gl(2, 2) == 6);
  CHECK(order_gl(3, 2) == 168);
  CHECK(order_gl(4, 2) == 20160);
  CHECK(order_gl(2, 3) == 48);
  CHECK(order_gl(3, 3) == 11232);
  CHECK(order_gl(2, 4) == 180);
  CHECK(order_gl(2, 5) == 480);
  CHECK(order_sp(1, 2) == 6);
  CHECK(order_sp(2, 2) == 720);
  CHECK(order_sp(3, 2) == 1451520);
}

TEST_CASE("Poincare identity ties orders to inversion counts") {
  // |GL_n| = |B| * sum over S_n of q^{C(n,2) - inv(pi)},
  // |B| = (q-1)^n q^C(n,2)
  for (unsigned n = 1; n <= 5; ++n)
    for (BigInt q : {2, 3, 4, 5}) {
      BigInt borel = big_pow(q - 1, n) * big_pow(q, binom2(n));
      BigInt cells = 0;
      for (const Perm& p : all_perms(int(n)))
        cells += big_pow(q, binom2(n) - unsigned(inv_count(p)));
      CHECK(order_gl(n, q) == borel * cells);
    }
}

TEST_CASE("polynomial arithmetic and normalization") {
  IntPoly p;
  CHECK(p.is_zero());
  CHECK(p.degree() == 0);
  CHECK(p.eval(17) == 0);
  p.add_term(2, 5);
  p.add_term(0, 1);
  p.add_term(2, -5);
  CHECK(p == IntPoly::one());

  IntPoly a({1, 1});
  CHECK(a * a == IntPoly({1, 2, 1}));
  CHECK(a + a == IntPoly({2, 2}));
  CHECK(a - a == IntPoly());
  CHECK(a.shifted(2) == IntPoly({0, 0, 1, 1}));
  CHECK(IntPoly::monomial(3, 4).coeff(4) == 3);
  CHECK(IntPoly::monomial(3, 4).coeff(5) == 0);
  CHECK(IntPoly({1, 2, 1}).to_string() == "1 + 2*t + t^2");
  CHECK(IntPoly().to_string() == "0");
}

TEST_CASE("cyclic reduction") {
  CHECK(IntPoly::monomial(1, 3).reduce_mod_cyclic(2) == IntPoly({0, 1}));
  CHECK(IntPoly({1, 2, 1}).reduce_mod_cyclic(2) == IntPoly({2, 2}));
  IntPoly gf({0, 0, 2, 4});
  CHECK(gf.reduce_mod_cyclic(2) == IntPoly({2, 4}));
  CHECK(IntPoly().reduce_mod_cyclic(5) == IntPoly());
  // folding never changes the value at an actual q-th root of 1
  CHECK(IntPoly({7, 1, 2, 3, 4}).reduce_mod_cyclic(4).eval(1) ==
        IntPoly({7, 1, 2, 3, 4}).eval(1));
}

TEST_CASE("evaluation at a nontrivial root of unity") {
  CHECK(eval_at_nontrivial_root(IntPoly({2, 4}), 2) == -2);
  for (unsigned q = 2; q <= 7; ++q) {
    IntPoly all_powers;
    for (unsigned i = 1; i < q; ++i) all_powers.add_term(i, 1);
    CHECK(eval_at_nontrivial_root(all_powers, q) == -1);
  }
  CHECK(eval_at_nontrivial_root(IntPoly(), 3) == 0);
  CHECK(eval_at_nontrivial_root(IntPoly({5}), 4) == 5);
  CHECK_THROWS_AS(eval_at_nontrivial_root(IntPoly({0, 1}), 3),
                  NotRootUniformError);

  // uniform tails stay uniform under any shuffle of high-degree terms
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    unsigned q = 2 + unsigned(rng() % 5);
    IntPoly p = IntPoly::monomial(BigInt(int64_t(rng() % 1000)), 0);
    for (unsigned i = 1; i < q; ++i)
      p.add_term(i + q * unsigned(rng() % 7), 3);
    BigInt want = p.coeff(0) - 3;
    CHECK(eval_at_nontrivial_root(p, q) == want);
  }
}

TEST_CASE("big integer helpers") {
  CHECK(binom2(0) == 0);
  CHECK(binom2(1) == 0);
  CHECK(binom2(4) == 6);
  CHECK(binom2(7) == 21);
  CHECK(big_pow(2, 0) == 1);
  CHECK(big_pow(3, 4) == 81);
  CHECK(big_pow(10, 20) == BigInt("100000000000000000000"));
}
