#include "signbal/field.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace signbal {

namespace {

constexpr unsigned kMaxQ = 256;  // desk-scale guard; tables are q x q bytes

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense Z_p[x] arithmetic on coefficient vectors, constant term first.
// Vectors are kept trimmed of leading (high-degree) zeros.
using Poly = std::vector<unsigned>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a mod b; b monic.
Poly poly_rem(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const size_t db = b.size() - 1;
  while (a.size() > db) {
    unsigned lead = a.back();
    size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (size_t i = 0; i <= db; ++i) {
        unsigned& c = a[shift + i];
        c = (c + p - lead * b[i] % p) % p;
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

struct Field::Rep {
  unsigned p = 0, k = 0, q = 0;
  std::vector<unsigned> modulus;  // size k+1, monic
  bool default_modulus = false;
  std::vector<uint8_t> add_t, mul_t;  // q*q tables
  std::vector<uint8_t> neg_t, inv_t;  // q tables; inv_t[0] unused
};

bool is_irreducible(unsigned p, const std::vector<unsigned>& coeffs) {
  if (!is_prime(p)) throw NotPrimeError(p);
  Poly f = coeffs;
  if (f.empty() || f.back() != 1)
    throw Error("modulus must be monic");
  for (unsigned c : f)
    if (c >= p) throw Error("modulus coefficient out of range");
  const size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  // Trial division by every monic divisor candidate of degree <= k/2.
  for (size_t d = 1; 2 * d <= k; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (uint64_t v = 0; v < count; ++v) {
      Poly g(d + 1, 0);
      uint64_t t = v;
      for (size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<unsigned> smallest_irreducible(unsigned p, unsigned k) {
  if (!is_prime(p)) throw NotPrimeError(p);
  if (k == 0) throw Error("extension degree must be positive");
  if (k == 1) return {0, 1};  // x
  // Candidate tuples (c0,...,c_{k-1}) in lexicographic order, c0 most
  // significant; the modulus is c0 + c1 x + ... + x^k.
  std::vector<unsigned> c(k, 0);
  for (;;) {
    std::vector<unsigned> f(c);
    f.push_back(1);
    if (is_irreducible(p, f)) return f;
    // odometer with c[0] slowest
    size_t i = k;
    while (i > 0) {
      --i;
      if (++c[i] < p) break;
      c[i] = 0;
      if (i == 0) throw Error("no irreducible polynomial found");
    }
  }
}

Field Field::make(unsigned p, unsigned k, std::vector<unsigned> modulus) {
  if (!is_prime(p)) throw NotPrimeError(p);
  if (k == 0) throw Error("extension degree must be positive");
  uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxQ)
      throw NotSupportedError("field size exceeds desk-scale cap of " +
                              std::to_string(kMaxQ));
  }

  auto rep = std::make_shared<Rep>();
  rep->p = p;
  rep->k = k;
  rep->q = static_cast<unsigned>(q);

  std::vector<unsigned> def = smallest_irreducible(p, k);
  if (modulus.empty()) {
    rep->modulus = def;
  } else {
    if (modulus.size() != static_cast<size_t>(k) + 1 || modulus.back() != 1)
      throw Error("modulus must be monic of degree k");
    for (unsigned c : modulus)
      if (c >= p) throw Error("modulus coefficient out of range");
    if (!is_irreducible(p, modulus)) {
      std::ostringstream os;
      os << "modulus";
      for (unsigned c : modulus) os << ' ' << c;
      os << " is reducible over Z_" << p;
      throw ReducibleModulusError(os.str());
    }
    rep->modulus = std::move(modulus);
  }
  rep->default_modulus = (rep->modulus == def);

  const unsigned Q = rep->q;
  // digits[i] = coefficient vector of element i, constant term first
  std::vector<Poly> digits(Q, Poly(k, 0));
  for (unsigned v = 0; v < Q; ++v) {
    unsigned t = v;
    for (unsigned i = 0; i < k; ++i) {
      digits[v][i] = t % p;
      t /= p;
    }
  }
  auto index_of = [&](const Poly& a) {
    unsigned v = 0, pw = 1;
    for (unsigned i = 0; i < k; ++i) {
      v += (i < a.size() ? a[i] : 0) * pw;
      pw *= p;
    }
    return v;
  };

  rep->add_t.resize(size_t(Q) * Q);
  rep->mul_t.resize(size_t(Q) * Q);
  rep->neg_t.resize(Q);
  rep->inv_t.assign(Q, 0);
  for (unsigned a = 0; a < Q; ++a) {
    Poly na(k);
    for (unsigned i = 0; i < k; ++i) na[i] = (p - digits[a][i]) % p;
    rep->neg_t[a] = static_cast<uint8_t>(index_of(na));
    for (unsigned b = 0; b < Q; ++b) {
      Poly s(k);
      for (unsigned i = 0; i < k; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
      rep->add_t[size_t(a) * Q + b] = static_cast<uint8_t>(index_of(s));
      Poly prod(2 * k - 1, 0);
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j)
          prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
      Poly r = poly_rem(std::move(prod), rep->modulus, p);
      rep->mul_t[size_t(a) * Q + b] = static_cast<uint8_t>(index_of(r));
    }
  }
  for (unsigned a = 1; a < Q; ++a)
    for (unsigned b = 1; b < Q; ++b)
      if (rep->mul_t[size_t(a) * Q + b] == 1) {
        rep->inv_t[a] = static_cast<uint8_t>(b);
        break;
      }

  return Field(std::move(rep));
}

Field Field::parse(const std::string& descriptor) {
  std::string s = descriptor;
  std::string mod_part;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mod_part = s.substr(slash + 1);
    s = s.substr(0, slash);
  }
  unsigned p = 0, k = 1;
  try {
    size_t caret = s.find('^');
    if (caret == std::string::npos) {
      size_t pos = 0;
      p = static_cast<unsigned>(std::stoul(s, &pos));
      if (pos != s.size()) throw ParseError("bad field descriptor: " + descriptor);
    } else {
      size_t pos = 0;
      p = static_cast<unsigned>(std::stoul(s.substr(0, caret), &pos));
      if (pos != caret) throw ParseError("bad field descriptor: " + descriptor);
      std::string ks = s.substr(caret + 1);
      k = static_cast<unsigned>(std::stoul(ks, &pos));
      if (pos != ks.size()) throw ParseError("bad field descriptor: " + descriptor);
    }
  } catch (const std::logic_error&) {
    throw ParseError("bad field descriptor: " + descriptor);
  }
  std::vector<unsigned> modulus;
  if (!mod_part.empty()) {
    std::istringstream is(mod_part);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        size_t pos = 0;
        modulus.push_back(static_cast<unsigned>(std::stoul(tok, &pos)));
        if (pos != tok.size()) throw ParseError("bad modulus: " + descriptor);
      } catch (const std::logic_error&) {
        throw ParseError("bad modulus: " + descriptor);
      }
    }
    if (modulus.size() != static_cast<size_t>(k) + 1)
      throw ParseError("modulus must list k+1 coefficients: " + descriptor);
  }
  return make(p, k, std::move(modulus));
}

unsigned Field::p() const { return rep_->p; }
unsigned Field::k() const { return rep_->k; }
unsigned Field::q() const { return rep_->q; }
const std::vector<unsigned>& Field::modulus() const { return rep_->modulus; }

std::string Field::descriptor() const {
  std::ostringstream os;
  os << rep_->p << '^' << rep_->k;
  if (!rep_->default_modulus) {
    os << '/';
    for (size_t i = 0; i < rep_->modulus.size(); ++i) {
      if (i) os << ',';
      os << rep_->modulus[i];
    }
  }
  return os.str();
}

FieldElem Field::zero() const { return FieldElem(*this, 0); }
FieldElem Field::one() const { return FieldElem(*this, 1); }

FieldElem Field::element(unsigned index) const {
  if (index >= rep_->q)
    throw OutOfRangeError("element index " + std::to_string(index) +
                          " outside field of size " + std::to_string(rep_->q));
  return FieldElem(*this, index);
}

std::vector<FieldElem> Field::elements() const {
  std::vector<FieldElem> out;
  out.reserve(rep_->q);
  for (unsigned v = 0; v < rep_->q; ++v) out.emplace_back(*this, v);
  return out;
}

unsigned Field::add(unsigned a, unsigned b) const {
  return rep_->add_t[size_t(a) * rep_->q + b];
}
unsigned Field::sub(unsigned a, unsigned b) const {
  return rep_->add_t[size_t(a) * rep_->q + rep_->neg_t[b]];
}
unsigned Field::mul(unsigned a, unsigned b) const {
  return rep_->mul_t[size_t(a) * rep_->q + b];
}
unsigned Field::div(unsigned a, unsigned b) const {
  if (b == 0) throw DivisionByZeroError();
  return rep_->mul_t[size_t(a) * rep_->q + rep_->inv_t[b]];
}
unsigned Field::neg(unsigned a) const { return rep_->neg_t[a]; }
unsigned Field::inv(unsigned a) const {
  if (a == 0) throw DivisionByZeroError();
  return rep_->inv_t[a];
}

std::vector<unsigned> Field::coeffs_of(unsigned index) const {
  if (index >= rep_->q) throw OutOfRangeError("element index out of range");
  std::vector<unsigned> c(rep_->k);
  for (unsigned i = 0; i < rep_->k; ++i) {
    c[i] = index % rep_->p;
    index /= rep_->p;
  }
  return c;
}

bool Field::operator==(const Field& o) const {
  if (rep_ == o.rep_) return true;
  return rep_->p == o.rep_->p && rep_->k == o.rep_->k &&
         rep_->modulus == o.rep_->modulus;
}

namespace {
void require_same(const Field& a, const Field& b) {
  if (a != b) throw SpecMismatchError();
}
}  // namespace

FieldElem::FieldElem(Field field, unsigned index)
    : field_(std::move(field)), v_(index) {
  if (v_ >= field_.q()) throw OutOfRangeError("element index out of range");
}

FieldElem FieldElem::successor() const {
  return FieldElem(field_, (v_ + 1) % field_.q());
}

FieldElem FieldElem::inverse() const {
  return FieldElem(field_, field_.inv(v_));
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same(a.field_, b.field_);
  return FieldElem(a.field_, a.field_.add(a.v_, b.v_));
}
FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  require_same(a.field_, b.field_);
  return FieldElem(a.field_, a.field_.sub(a.v_, b.v_));
}
FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same(a.field_, b.field_);
  return FieldElem(a.field_, a.field_.mul(a.v_, b.v_));
}
FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  require_same(a.field_, b.field_);
  return FieldElem(a.field_, a.field_.div(a.v_, b.v_));
}
FieldElem FieldElem::operator-() const {
  return FieldElem(field_, field_.neg(v_));
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  return a.field_ == b.field_ && a.v_ == b.v_;
}

}  // namespace signbal
