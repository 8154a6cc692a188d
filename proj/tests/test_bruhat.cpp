#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "signbal/balance.hpp"
#include "signbal/bruhat.hpp"
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

std::set<uint64_t> key_set(const std::vector<PackedMat>& v) {
  std::set<uint64_t> s;
  for (const PackedMat& m : v) s.insert(m.bits());
  return s;
}

}  // namespace

TEST_CASE("canonical form spot values") {
  Field f2 = Field::make(2, 1);
  CHECK(is_canonical(Mat::identity(f2, 3)));

  Mat g = from_rows(f2, {{0, 1}, {1, 0}});
  CHECK(is_canonical(g));
  CanonicalForm c = canonical_rep(g);
  CHECK(c.rep == g);
  CHECK(c.pi == Perm({2, 1}));

  Mat h = from_rows(f2, {{1, 1}, {1, 0}});
  CHECK_FALSE(is_canonical(h));
  CanonicalForm ch = canonical_rep(h);
  CHECK(ch.rep == from_rows(f2, {{1, 0}, {1, 1}}));
  CHECK(ch.pi == Perm({1, 2}));

  // rows scale so the rightmost nonzero entry is 1
  Field f3 = Field::make(3, 1);
  CanonicalForm cs = canonical_rep(from_rows(f3, {{2, 0}, {0, 2}}));
  CHECK(cs.rep == Mat::identity(f3, 2));
}

TEST_CASE("canonical representative is constant on cosets") {
  Field f3 = Field::make(3, 1);
  std::mt19937_64 rng(31);
  GlEnumerator en(3, f3);
  std::vector<Mat> pool;
  Mat g(f3, 3, 3);
  while (en.next(g)) pool.push_back(g);
  BorelEnumerator be(3, f3);
  std::vector<Mat> borels;
  Mat b(f3, 3, 3);
  while (be.next(b)) borels.push_back(b);
  for (int t = 0; t < 300; ++t) {
    const Mat& x = pool[rng() % pool.size()];
    const Mat& y = borels[rng() % borels.size()];
    CanonicalForm a = canonical_rep(x);
    CanonicalForm c = canonical_rep(x * y);
    CHECK(a.rep == c.rep);
    CHECK(a.pi == c.pi);
  }
}

TEST_CASE("factorization recomposes with the right shapes") {
  Field f2 = Field::make(2, 1);
  BruhatFactorization f = decompose(from_rows(f2, {{1, 1}, {1, 0}}));
  CHECK(f.u == from_rows(f2, {{1, 0}, {1, 1}}));
  CHECK(f.pi == Perm({1, 2}));
  CHECK(f.b == from_rows(f2, {{1, 1}, {0, 1}}));
  CHECK(f.group == GroupTag::GL);

  Field f5 = Field::make(5, 1);
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 200) {
    Mat g(f5, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g.set(i, j, unsigned(rng() % 5));
    if (g.det().is_zero()) continue;
    ++done;
    BruhatFactorization d = decompose(g);
    CHECK(d.u.is_lower_unitriangular());
    CHECK(u_pi_membership(d.u, d.pi));
    CHECK(d.b.is_borel());
    CHECK(d.u * perm_matrix(d.pi, f5) * d.b == g);
  }
  CHECK_THROWS_AS(decompose(Mat(f2, 2, 2)), SingularError);
}

TEST_CASE("unipotent pattern membership") {
  Field f2 = Field::make(2, 1);
  for (const Perm& p : all_perms(3))
    CHECK(u_pi_membership(Mat::identity(f2, 3), p));

  // the identity cell is unconstrained; the longest element's cell has
  // dimension zero, so only the trivial unipotent belongs to it
  int longest_ok = 0, id_ok = 0;
  for (unsigned bits = 0; bits < 8; ++bits) {
    Mat u = Mat::identity(f2, 3);
    u.set(1, 0, bits & 1);
    u.set(2, 0, (bits >> 1) & 1);
    u.set(2, 1, (bits >> 2) & 1);
    longest_ok += u_pi_membership(u, Perm::longest(3));
    id_ok += u_pi_membership(u, Perm::identity(3));
  }
  CHECK(longest_ok == 1);
  CHECK(id_ok == 8);
}

TEST_CASE("cell dimensions and free positions") {
  CellDescriptor top = cell_free_positions(Perm::identity(3));
  CHECK(top.dimension == 3);
  CHECK(top.free_positions ==
        std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}});

  CHECK(cell_free_positions(Perm::longest(3)).dimension == 0);
  CHECK(cell_free_positions(Perm::longest(3)).free_positions.empty());

  CellDescriptor mid = cell_free_positions(Perm({1, 3, 2}));
  CHECK(mid.dimension == 2);
  CHECK(mid.free_positions ==
        std::vector<std::pair<int, int>>{{2, 1}, {3, 1}});

  // dimension complements the length, for every cell
  for (int n = 2; n <= 5; ++n)
    for (const Perm& p : all_perms(n)) {
      CellDescriptor d = cell_free_positions(p);
      CHECK(d.dimension == binom2(unsigned(n)) - unsigned(inv_count(p)));
      CHECK(d.free_positions.size() == d.dimension);
    }
}

TEST_CASE("cell representatives enumerate q^dim canonical matrices") {
  Field f2 = Field::make(2, 1);
  CellRepEnumerator ce(Perm({3, 1, 2}), f2);
  Mat r(f2, 3, 3);
  int count = 0;
  while (ce.next(r)) {
    ++count;
    CHECK(is_canonical(r));
    CHECK(canonical_rep(r).rep == r);
    CHECK(canonical_rep(r).pi == Perm({3, 1, 2}));
  }
  CHECK(count == 2);

  Field f3 = Field::make(3, 1);
  CellRepEnumerator cid(Perm::identity(2), f3);
  Mat r2(f3, 2, 2);
  count = 0;
  while (cid.next(r2)) ++count;
  CHECK(count == 3);

  int total = 0;
  for (const Perm& p : all_perms(3)) {
    CellRepEnumerator cp(p, f2);
    Mat r3(f2, 3, 3);
    while (cp.next(r3)) ++total;
  }
  CHECK(total == 21);
  CHECK(all_canonical_reps(3, f2).size() == 21);
}

TEST_CASE("borel enumeration count") {
  Field f2 = Field::make(2, 1);
  BorelEnumerator be(2, f2);
  Mat b(f2, 2, 2);
  int count = 0;
  while (be.next(b)) {
    ++count;
    CHECK(b.is_borel());
  }
  CHECK(count == 2);
}

TEST_CASE("symplectic group equals the form-preserving GL elements") {
  Field f2 = Field::make(2, 1);
  for (int n = 1; n <= 2; ++n) {
    std::set<uint64_t> filtered;
    GlEnumerator en(2 * n, f2);
    Mat g(f2, 2 * n, 2 * n);
    while (en.next(g))
      if (is_symplectic(g)) filtered.insert(PackedMat::pack(g).bits());
    SpGroup sp(n);
    std::set<uint64_t> bfs(sp.keys().begin(), sp.keys().end());
    CHECK(filtered == bfs);
  }
  CHECK(SpGroup(1).size() == 6);
  CHECK(SpGroup(2).size() == 720);
  CHECK_THROWS_AS(SpGroup(0), NotSupportedError);
  CHECK_THROWS_AS(SpGroup(4), NotSupportedError);
}

TEST_CASE("transvections are symplectic and generate") {
  for (int n = 1; n <= 3; ++n) {
    auto tv = symplectic_transvections(n);
    CHECK(tv.size() == (uint64_t(1) << (2 * n)) - 1);
    for (const PackedMat& t : tv) {
      CHECK(is_symplectic(t));
      CHECK((t * t).is_identity());
    }
    CHECK(key_set(tv).size() == tv.size());
  }
}

TEST_CASE("symplectic borel groups") {
  std::vector<Mat> b1 = sp_borel(1);
  REQUIRE(b1.size() == 2);
  Field f2 = Field::make(2, 1);
  std::set<uint64_t> got;
  for (const Mat& m : b1) got.insert(PackedMat::pack(m).bits());
  std::set<uint64_t> want{
      PackedMat::pack(Mat::identity(f2, 2)).bits(),
      PackedMat::pack(from_rows(f2, {{1, 1}, {0, 1}})).bits()};
  CHECK(got == want);

  for (int n = 1; n <= 3; ++n) {
    std::vector<Mat> bn = sp_borel(n);
    CHECK(bn.size() == uint64_t(1) << (n * n));
    std::set<uint64_t> keys;
    for (const Mat& m : bn) {
      CHECK(m.is_borel());
      CHECK(is_symplectic(m));
      keys.insert(PackedMat::pack(m).bits());
    }
    CHECK(keys.size() == bn.size());
  }
}

TEST_CASE("first-row completion repairs overwritten free entries") {
  // overwrite the dependent part of the first row arbitrarily; completion
  // restores a symplectic Borel element and fixes genuine members
  for (const Mat& b : sp_borel(2)) {
    CHECK(complete_sp_borel_row(b) == b);
    for (unsigned v0 = 0; v0 < 2; ++v0)
      for (unsigned v1 = 0; v1 < 2; ++v1) {
        Mat damaged = b;
        damaged.set(0, 1, v0);
        damaged.set(0, 2, v1);
        Mat fixed = complete_sp_borel_row(damaged);
        CHECK(is_symplectic(fixed));
        CHECK(fixed.at(0, 3) == b.at(0, 3));
      }
  }
}

TEST_CASE("symplectic factorization") {
  Field f2 = Field::make(2, 1);
  SpFactorization id = decompose_sp(Mat::identity(f2, 4));
  CHECK(id.sigma == SignedPerm::identity(2));
  CHECK(id.u == Mat::identity(f2, 4));
  CHECK(id.b == Mat::identity(f2, 4));

  SpFactorization tw = decompose_sp(perm_matrix(embed_signed(SignedPerm({-1})), f2));
  CHECK(tw.sigma == SignedPerm({-1}));
  CHECK(tw.u == Mat::identity(f2, 2));
  CHECK(tw.b == Mat::identity(f2, 2));

  SpGroup sp2(2);
  for (size_t i = 0; i < sp2.size(); i += 7) {
    Mat g = sp2.matrix(i);
    SpFactorization f = decompose_sp(g);
    CHECK(is_symplectic(f.u));
    CHECK(is_symplectic(f.b));
    CHECK(f.u.is_lower_unitriangular());
    CHECK(f.b.is_borel());
    CHECK(is_centrally_symmetric(f.pi));
    CHECK(embed_signed(f.sigma) == f.pi);
    CHECK(f.u * perm_matrix(f.pi, f2) * f.b == g);
  }

  Mat c4(f2, 4, 4);
  c4.set(1, 0, 1);
  c4.set(2, 1, 1);
  c4.set(3, 2, 1);
  c4.set(0, 3, 1);
  CHECK_THROWS_AS(decompose_sp(c4), NotSymplecticError);
  Field f3 = Field::make(3, 1);
  CHECK_THROWS_AS(decompose_sp(Mat::identity(f3, 2)), WrongFieldError);
}

TEST_CASE("group tag names") {
  CHECK(std::string(group_tag_name(GroupTag::GL)) == "gl");
  CHECK(std::string(group_tag_name(GroupTag::Sp)) == "sp");
}
