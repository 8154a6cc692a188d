#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "signbal/cache.hpp"
#include "signbal/coxeter.hpp"
#include "signbal/matrix.hpp"
#include "signbal/qseries.hpp"

namespace signbal {

enum class GroupTag { GL, Sp };
const char* group_tag_name(GroupTag g);

/// True when m satisfies the echelon-like normal form: the rightmost
/// nonzero entry of every row is 1 and is the topmost nonzero entry of its
/// column.  Such matrices are exactly the canonical coset representatives
/// modulo the upper triangular group.
bool is_canonical(const Mat& m);

struct CanonicalForm {
  Mat rep;
  Perm pi;  // pi(j) = row of the leading 1 in column j
};

/// Canonical representative of g modulo right multiplication by upper
/// triangular matrices.  Columns are processed left to right: the topmost
/// nonzero entry of column j is scaled to 1 and its row is cleared to the
/// right by column operations.  Every member of gB yields the same result.
CanonicalForm canonical_rep(const Mat& g);

struct BruhatFactorization {
  Mat u;
  Perm pi;
  Mat b;
  GroupTag group;
};

/// g = u * [pi] * b with u unipotent in the cell's lower unitriangular
/// subgroup and b upper triangular invertible.
BruhatFactorization decompose(const Mat& g);

/// Lower unitriangular with u_{i,j} = 0 whenever pi^{-1}(i) < pi^{-1}(j).
bool u_pi_membership(const Mat& u, const Perm& pi);

struct CellDescriptor {
  Perm pi;
  /// 1-indexed (row, col) positions free in the canonical representative,
  /// in lexicographic order.
  std::vector<std::pair<int, int>> free_positions;
  unsigned dimension;  // = C(n,2) - length(pi)
};

CellDescriptor cell_free_positions(const Perm& pi);

/// Canonical representatives of one cell: the permutation matrix of pi
/// with the free positions running through all field values, value tuples
/// in lexicographic order over the lexicographically sorted positions.
class CellRepEnumerator {
 public:
  CellRepEnumerator(const Perm& pi, const Field& field);
  bool next(Mat& out);

 private:
  Mat base_;
  std::vector<std::pair<int, int>> pos_;
  std::vector<unsigned> vals_;
  unsigned q_;
  bool done_;
};

/// Upper triangular matrices with nonzero diagonal, (q-1)^n q^C(n,2) of
/// them, in odometer order over the on-or-above-diagonal positions.
class BorelEnumerator {
 public:
  BorelEnumerator(int n, const Field& field);
  bool next(Mat& out);

 private:
  Mat base_;
  std::vector<std::pair<int, int>> pos_;  // row-major, diagonal included
  std::vector<unsigned> vals_;
  unsigned q_;
  bool done_;
};

/// Every element of GL_n(F_q) exactly once, as rep * b over cells in
/// lexicographic pi order.
class GlEnumerator {
 public:
  GlEnumerator(int n, const Field& field);
  bool next(Mat& out);

 private:
  bool advance_rep();
  Field field_;
  int n_;
  std::vector<Perm> perms_;
  size_t perm_idx_;
  std::unique_ptr<CellRepEnumerator> cells_;
  std::unique_ptr<BorelEnumerator> borel_;
  std::unique_ptr<Mat> rep_;
};

/// All canonical representatives with their permutations, cells in
/// lexicographic pi order, reps in enumerator order.
std::vector<CanonicalForm> all_canonical_reps(int n, const Field& field);

/// The 2^{n^2} upper triangular symplectic matrices over F_2, in the
/// induced Borel enumeration order.
std::vector<Mat> sp_borel(int n);

/// All symplectic transvections x |-> x + B(x, v) v over F_2, one per
/// nonzero vector v, packed; they generate the symplectic group.
std::vector<PackedMat> symplectic_transvections(int n);

/// Sp_2n(Z2), materialized once by closing the transvections under
/// multiplication (breadth-first, each layer sorted by packed key, so the
/// order is deterministic and restartable).  Verifies the count against
/// the group-order formula and can memoize through an EnumerationCache.
class SpGroup {
 public:
  explicit SpGroup(int n, int workers = 1,
                   const EnumerationCache& cache = EnumerationCache::disabled());

  int n() const { return n_; }          // matrices are 2n x 2n
  size_t size() const { return keys_.size(); }
  const std::vector<uint64_t>& keys() const { return keys_; }
  const Field& field() const { return field_; }
  PackedMat packed(size_t i) const;
  Mat matrix(size_t i) const;

 private:
  int n_;
  Field field_;
  std::vector<uint64_t> keys_;
};

struct SpFactorization {
  Mat u;
  Perm pi;      // centrally symmetric element of S_{2n}
  Mat b;
  SignedPerm sigma;  // hyperoctahedral element with embed_signed(sigma) = pi
};

/// Bruhat factorization of a symplectic matrix over F_2; u and b land in
/// the symplectic group and pi is centrally symmetric (all verified).
SpFactorization decompose_sp(const Mat& g);

/// One little-endian word per row, entries packed base q, low column first.
std::vector<uint64_t> pack_rows(const Mat& m);
Mat unpack_rows(const Field& field, int rows, int cols, const uint64_t* words);

/// Full GL_n(F_q) enumeration as packed rows in enumerator order,
/// memoized through the cache when one is supplied.
std::vector<uint64_t> enumerate_gl_rows(
    int n, const Field& field,
    const EnumerationCache& cache = EnumerationCache::disabled());

}  // namespace signbal
