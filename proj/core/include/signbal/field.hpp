#pragma once

#include <memory>
#include <string>
#include <vector>

#include "signbal/errors.hpp"

namespace signbal {

class FieldElem;

/// A finite field F_q with q = p^k, realized as F_p[x]/(m) for a monic
/// irreducible m of degree k (m = x when k = 1).  Handles are cheap to copy
/// and share one immutable representation; arithmetic is table driven.
///
/// Elements are indexed 0..q-1 by evaluating their coefficient vector
/// (constant term first) at p, so index 0 is the zero element and, for
/// prime q, the index is the usual residue.
class Field {
 public:
  /// Builds F_{p^k}.  An empty modulus selects the lexicographically
  /// smallest monic irreducible of degree k, comparing coefficient tuples
  /// with the constant term most significant.
  static Field make(unsigned p, unsigned k, std::vector<unsigned> modulus = {});

  /// Accepts "p", "p^k" or "p^k/c0,c1,...,ck" (constant term first).
  static Field parse(const std::string& descriptor);

  unsigned p() const;
  unsigned k() const;
  unsigned q() const;

  /// Modulus coefficients, constant term first, size k+1, monic.
  const std::vector<unsigned>& modulus() const;

  /// "p^k" when the modulus is the default, "p^k/c0,...,ck" otherwise.
  std::string descriptor() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem element(unsigned index) const;
  /// All q elements in index order.
  std::vector<FieldElem> elements() const;

  // Index-level arithmetic; the hot path for matrix kernels.
  unsigned add(unsigned a, unsigned b) const;
  unsigned sub(unsigned a, unsigned b) const;
  unsigned mul(unsigned a, unsigned b) const;
  unsigned div(unsigned a, unsigned b) const;
  unsigned neg(unsigned a) const;
  unsigned inv(unsigned a) const;

  /// k residues mod p for the element with this index, constant term first.
  std::vector<unsigned> coeffs_of(unsigned index) const;

  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  struct Rep;
  explicit Field(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
  friend class FieldElem;
};

/// Value type for a single field element.
class FieldElem {
 public:
  FieldElem(Field field, unsigned index);

  const Field& field() const { return field_; }
  unsigned index() const { return v_; }
  std::vector<unsigned> coeffs() const { return field_.coeffs_of(v_); }
  bool is_zero() const { return v_ == 0; }

  /// Next element in index order, wrapping q-1 back to 0.
  FieldElem successor() const;
  FieldElem inverse() const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem operator-() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) {
    return !(a == b);
  }

 private:
  Field field_;
  unsigned v_;
};

/// True when the monic polynomial (constant term first) is irreducible
/// over Z_p.  Exposed for tests; trial division at desk scale.
bool is_irreducible(unsigned p, const std::vector<unsigned>& coeffs);

/// The default modulus make() would pick for F_{p^k}.
std::vector<unsigned> smallest_irreducible(unsigned p, unsigned k);

}  // namespace signbal
