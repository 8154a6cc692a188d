#include "signbal/qseries.hpp"

#include <sstream>

namespace signbal {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
  normalize();
}

IntPoly IntPoly::monomial(BigInt c, size_t exp) {
  if (c == 0) return IntPoly();
  std::vector<BigInt> v(exp + 1, BigInt(0));
  v[exp] = std::move(c);
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void IntPoly::add_term(size_t exp, const BigInt& c) {
  if (c == 0) return;
  if (exp >= c_.size()) c_.resize(exp + 1, BigInt(0));
  c_[exp] += c;
  normalize();
}

IntPoly IntPoly::shifted(size_t exp) const {
  if (is_zero()) return IntPoly();
  std::vector<BigInt> v(c_.size() + exp, BigInt(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i + exp] = c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::reduce_mod_cyclic(unsigned q) const {
  if (q == 0) throw OutOfRangeError("cyclic modulus must be positive");
  std::vector<BigInt> v(q, BigInt(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i % q] += c_[i];
  return IntPoly(std::move(v));
}

BigInt IntPoly::eval(const BigInt& t) const {
  BigInt acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(v));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0)
      os << c_[i];
    else if (c_[i] == 1)
      os << "t";
    else
      os << c_[i] << "*t";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

BigInt q_int(unsigned n, const BigInt& q) {
  BigInt s = 0, pw = 1;
  for (unsigned i = 0; i < n; ++i) {
    s += pw;
    pw *= q;
  }
  return s;
}

BigInt q_factorial(unsigned n, const BigInt& q) {
  BigInt f = 1;
  for (unsigned i = 1; i <= n; ++i) f *= q_int(i, q);
  return f;
}

IntPoly q_int_poly(unsigned n) {
  std::vector<BigInt> v(n, BigInt(1));
  return IntPoly(std::move(v));
}

IntPoly q_factorial_poly(unsigned n) {
  IntPoly f = IntPoly::one();
  for (unsigned i = 1; i <= n; ++i) f = f * q_int_poly(i);
  return f;
}

unsigned binom2(unsigned n) { return n * (n - 1) / 2; }

BigInt big_pow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt order_gl(unsigned n, const BigInt& q) {
  return big_pow(q, binom2(n)) * big_pow(q - 1, n) * q_factorial(n, q);
}

BigInt order_sp(unsigned n, const BigInt& q) {
  BigInt r = big_pow(q, n * n) * big_pow(q - 1, n);
  for (unsigned i = 1; i <= n; ++i) r *= q_int(2 * i, q);
  return r;
}

BigInt eval_at_nontrivial_root(const IntPoly& p, unsigned q) {
  if (q < 2)
    throw OutOfRangeError("nontrivial root evaluation needs q >= 2");
  IntPoly r = p.reduce_mod_cyclic(q);
  const BigInt tail = r.coeff(1);
  for (unsigned i = 2; i < q; ++i)
    if (r.coeff(i) != tail) throw NotRootUniformError();
  return r.coeff(0) - tail;
}

}  // namespace signbal
