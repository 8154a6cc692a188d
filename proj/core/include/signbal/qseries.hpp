#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "signbal/errors.hpp"

namespace signbal {

/// Exact arbitrary-precision integer; all counts and evaluations use it so
/// nothing in the library can overflow.
using BigInt = boost::multiprecision::cpp_int;

/// Polynomial in one variable with BigInt coefficients, kept normalized
/// (no trailing zero coefficients; the zero polynomial has none).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  static IntPoly monomial(BigInt c, size_t exp);
  static IntPoly one() { return monomial(1, 0); }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as 0.
  size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

  void add_term(size_t exp, const BigInt& c);

  IntPoly shifted(size_t exp) const;
  /// Fold every exponent mod q; coefficients of equal residue add.
  IntPoly reduce_mod_cyclic(unsigned q) const;
  BigInt eval(const BigInt& t) const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) {
    return !(a == b);
  }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<BigInt> c_;
};

/// [n]_q = 1 + q + ... + q^{n-1}; [0]_q = 0.
BigInt q_int(unsigned n, const BigInt& q);
/// [n]_q! = [1]_q [2]_q ... [n]_q; [0]_q! = 1.
BigInt q_factorial(unsigned n, const BigInt& q);

/// The same q-analogs as formal polynomials in q.
IntPoly q_int_poly(unsigned n);
IntPoly q_factorial_poly(unsigned n);

/// n choose 2.
unsigned binom2(unsigned n);

BigInt big_pow(const BigInt& base, unsigned exp);

/// |GL_n(F_q)| = q^C(n,2) (q-1)^n [n]_q!.
BigInt order_gl(unsigned n, const BigInt& q);
/// |Sp_2n(F_q)| = q^{n^2} (q-1)^n [2]_q [4]_q ... [2n]_q.
BigInt order_sp(unsigned n, const BigInt& q);

/// Value of P at a primitive q-th root of unity, computed exactly: reduce
/// mod t^q - 1; when the tail coefficients c_1..c_{q-1} all agree the value
/// is c_0 - c_1, otherwise the evaluation is not determined by this method
/// and NotRootUniformError is raised.
BigInt eval_at_nontrivial_root(const IntPoly& p, unsigned q);

}  // namespace signbal
