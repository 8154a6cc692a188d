#pragma once

#include <vector>

#include "signbal/bruhat.hpp"
#include "signbal/qseries.hpp"

namespace signbal {

/// The two matrix statistics: o(K) counts entries equal to 1 (F_2 only);
/// s(K) is the index of the field sum of all entries, a value in [0, q).
enum class Stat { Ones, FieldSum };

const char* stat_name(Stat s);

struct GroupDesc {
  GroupTag group;
  int n;  // matrix size for GL, half-dimension for Sp
  Field field;
};

/// Statistic histogram as a polynomial: coefficient of t^i counts the
/// matrices with statistic value i.  Evaluating at 1 gives the number of
/// matrices summed over.
struct GenFun {
  IntPoly poly;
  Stat stat;
  GroupDesc desc;
};

/// A permutation of {0,...,q-1} fixing 0, applied to s(K) before it is
/// used.  Empty means the identity.  The computed imbalances are invariant
/// under any such relabeling; tests exploit that.
using IndexBijection = std::vector<unsigned>;

long stat_ones(const Mat& k);
unsigned stat_fieldsum(const Mat& k, const IndexBijection& bij = {});

GenFun gen_fun_gl(int n, const Field& field, Stat stat, int workers = 1,
                  const IndexBijection& bij = {},
                  const EnumerationCache& cache = EnumerationCache::disabled());
GenFun gen_fun_sp(const SpGroup& group, int workers = 1);

/// A Borel coset is either odd (every matrix in it has nonzero statistic)
/// or sign-balanced, witnessed by its first odd column.
struct CosetClass {
  bool odd;
  int first_odd_column;  // 1-indexed; 0 when odd
};

/// Classification by the leftmost column, excluding the last, whose entry
/// sum is nonzero in the field.  rep must be a canonical representative.
CosetClass classify_coset(const Mat& rep);
/// Symplectic version over F_2: columns 1..2n-1 of a canonical symplectic
/// representative.
CosetClass classify_coset_sp(const Mat& rep);

/// Statistic histogram over the coset {rep * b : b upper triangular
/// invertible}.
GenFun coset_gen_fun(const Mat& rep, Stat stat);
/// Histogram of the ones statistic over {rep * b : b in the symplectic
/// Borel subgroup}.
GenFun coset_gen_fun_sp(const Mat& rep);

/// Number of odd Borel cosets inside the double coset of pi: zero unless
/// pi fixes n, else q^(C(n,2) - l(pi) - (n-1)).
BigInt count_odd_cosets_gl(const Perm& pi, unsigned q);
/// Symplectic analog: zero unless sigma fixes n, else
/// 2^((n-1)^2 - l_B(sigma)).
BigInt count_odd_cosets_sp(const SignedPerm& sigma);

/// Sum of omega^s(K) over GL_n(F_q), omega a primitive q-th root of
/// unity, computed three independent ways.
BigInt imbalance_gl_brute(int n, const Field& field, int workers = 1,
                          const IndexBijection& bij = {},
                          const EnumerationCache& cache = EnumerationCache::disabled());
BigInt imbalance_gl_structured(int n, unsigned q);
BigInt imbalance_gl_closed(int n, unsigned q);

/// (N_0, N_i): how many matrices have entry sum of index 0, and how many
/// have any fixed nonzero index.  N_0 + (q-1) N_i is the group order.
std::pair<BigInt, BigInt> residue_counts_gl(int n, unsigned q);

/// Sum of (-1)^o(K) over Sp_2n(Z_2), three ways.
BigInt imbalance_sp_brute(const SpGroup& group, int workers = 1);
BigInt imbalance_sp_structured(int n);
BigInt imbalance_sp_closed(int n);

/// (even, odd) matrix counts in Sp_2n(Z_2); sum is the group order,
/// difference the imbalance.
std::pair<BigInt, BigInt> parity_counts_sp(int n);

/// Recompute the dependent first-row entries of an upper triangular F_2
/// matrix from its other entries: b(1,i) = sum_{k>=2} b(k,i)*b(2n+1-k,2n)
/// for 2 <= i <= 2n-1, keeping b(1,2n).  Maps the symplectic Borel group
/// onto itself and repairs any overwrite of the free last-column entries.
Mat complete_sp_borel_row(Mat b);

/// One step of the cyclic group action: odd-coset matrices are fixed;
/// otherwise entry (j, n) of the Borel factor is advanced `power` times
/// through the element successor, j the first odd column of the
/// canonical representative.  Applying powers summing to q is the
/// identity.
Mat csp_action(unsigned power, const Mat& k);
/// Symplectic analog over F_2, an involution: j = 1 toggles b(1,2n)
/// alone; j >= 2 toggles b(j,2n) and recompletes the first row.
Mat csp_action_sp(unsigned power, const Mat& k);

struct CspPowerRow {
  unsigned power;      // exponent l of the generator
  BigInt fixed;        // matrices fixed by the l-th power
  bool evaluable;      // X(omega^l) determined by cyclic reduction
  BigInt evaluation;   // X(omega^l) when evaluable; X(1) at l = 0
  bool cond1_literal;  // evaluation == fixed
  bool cond1_abs;      // |evaluation| == fixed
};

/// Everything the sieving check produces.  The audit itself only asserts
/// internal consistencies (orbit sizes in {1, q}; fixed points of
/// nontrivial powers are exactly the odd-coset matrices); the condition
/// verdicts are reported, not enforced.
struct CspAudit {
  GroupDesc desc;
  Stat stat;
  IntPoly gen_poly;                  // full statistic generating function
  std::vector<BigInt> a;             // gen_poly mod t^q - 1
  std::vector<CspPowerRow> powers;   // l = 0..q-1
  std::vector<std::pair<unsigned, BigInt>> orbit_census;  // size -> count
  BigInt odd_elements;
  BigInt total_orbits;
  BigInt free_orbits;                // orbits of size q
  std::vector<BigInt> cond2_expected;  // orbits whose stabilizer order divides l
  bool cond1_literal_all;
  bool cond1_abs_nontrivial_all;
  bool cond2;
  bool type_c_extrapolated;  // the symplectic action is not spelled out in
                             // closed form anywhere; flagged when used
};

CspAudit csp_audit_gl(int n, const Field& field);
CspAudit csp_audit_sp(const SpGroup& group);

}  // namespace signbal
