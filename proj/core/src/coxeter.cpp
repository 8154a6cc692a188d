#include "signbal/coxeter.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace signbal {

namespace {

std::vector<int> parse_one_line(const std::string& s) {
  std::istringstream is(s);
  std::vector<int> v;
  int x;
  while (is >> x) v.push_back(x);
  if (!is.eof()) throw ParseError("bad one-line word: " + s);
  return v;
}

std::string format_one_line(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  return os.str();
}

}  // namespace

Perm::Perm(std::vector<int> one_line) : img_(std::move(one_line)) {
  const int n = static_cast<int>(img_.size());
  std::vector<bool> seen(n, false);
  for (int v : img_) {
    if (v < 1 || v > n || seen[v - 1])
      throw ParseError("not a permutation of 1..n: " + format_one_line(img_));
    seen[v - 1] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Perm(std::move(v));
}

Perm Perm::longest(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Perm(std::move(v));
}

Perm Perm::parse(const std::string& one_line) {
  return Perm(parse_one_line(one_line));
}

Perm Perm::inverse() const {
  std::vector<int> v(img_.size());
  for (int i = 1; i <= n(); ++i) v[img_[i - 1] - 1] = i;
  return Perm(std::move(v));
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.n() != b.n()) throw ShapeMismatchError("permutation sizes differ");
  std::vector<int> v(a.img_.size());
  for (int i = 1; i <= a.n(); ++i) v[i - 1] = a(b(i));
  return Perm(std::move(v));
}

std::string Perm::to_string() const { return format_one_line(img_); }

long inv_count(const Perm& pi) {
  long c = 0;
  const auto& v = pi.one_line();
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++c;
  return c;
}

long maj(const Perm& pi) {
  long m = 0;
  const auto& v = pi.one_line();
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] > v[i + 1]) m += static_cast<long>(i) + 1;
  return m;
}

SignedPerm::SignedPerm(std::vector<int> one_line) : img_(std::move(one_line)) {
  const int n = static_cast<int>(img_.size());
  std::vector<bool> seen(n, false);
  for (int v : img_) {
    int a = std::abs(v);
    if (a < 1 || a > n || seen[a - 1])
      throw ParseError("not a signed permutation: " + format_one_line(img_));
    seen[a - 1] = true;
  }
}

SignedPerm SignedPerm::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return SignedPerm(std::move(v));
}

SignedPerm SignedPerm::parse(const std::string& one_line) {
  return SignedPerm(parse_one_line(one_line));
}

int SignedPerm::operator()(int i) const {
  if (i > 0) return img_[i - 1];
  return -img_[-i - 1];
}

SignedPerm SignedPerm::inverse() const {
  std::vector<int> v(img_.size());
  for (int i = 1; i <= n(); ++i) {
    int j = img_[i - 1];
    if (j > 0)
      v[j - 1] = i;
    else
      v[-j - 1] = -i;
  }
  return SignedPerm(std::move(v));
}

SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
  if (a.n() != b.n()) throw ShapeMismatchError("signed permutation sizes differ");
  std::vector<int> v(a.img_.size());
  for (int i = 1; i <= a.n(); ++i) v[i - 1] = a(b(i));
  return SignedPerm(std::move(v));
}

std::string SignedPerm::to_string() const { return format_one_line(img_); }

long length_b(const SignedPerm& sigma) {
  const auto& v = sigma.one_line();
  long c = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++c;
    if (v[i] < 0) c += -v[i];
  }
  return c;
}

Mat perm_matrix(const Perm& pi, const Field& field) {
  Mat m(field, pi.n(), pi.n());
  for (int j = 1; j <= pi.n(); ++j) m.set(pi(j) - 1, j - 1, 1);
  return m;
}

namespace {
// Positions 1..2n carry labels n,...,1,-1,...,-n.
int label_at(int pos, int n) { return pos <= n ? n + 1 - pos : -(pos - n); }
int pos_of(int label, int n) { return label > 0 ? n + 1 - label : n - label; }
}  // namespace

Perm embed_signed(const SignedPerm& sigma) {
  const int n = sigma.n();
  std::vector<int> v(2 * n);
  for (int i = 1; i <= 2 * n; ++i) v[i - 1] = pos_of(sigma(label_at(i, n)), n);
  return Perm(std::move(v));
}

bool is_centrally_symmetric(const Perm& pi) {
  const int m = pi.n();
  if (m % 2 != 0) return false;
  for (int i = 1; i <= m; ++i)
    if (pi(i) + pi(m + 1 - i) != m + 1) return false;
  return true;
}

SignedPerm unembed_signed(const Perm& pi) {
  if (!is_centrally_symmetric(pi))
    throw SymmetryViolationError("permutation is not centrally symmetric: " +
                                 pi.to_string());
  const int n = pi.n() / 2;
  std::vector<int> v(n);
  for (int l = 1; l <= n; ++l) v[l - 1] = label_at(pi(pos_of(l, n)), n);
  return SignedPerm(std::move(v));
}

std::vector<Perm> all_perms(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Perm> out;
  do {
    out.push_back(Perm(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<SignedPerm> all_signed_perms(int n) {
  std::vector<std::vector<int>> words;
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> w(v);
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1u) w[i] = -w[i];
      words.push_back(std::move(w));
    }
  } while (std::next_permutation(v.begin(), v.end()));
  std::sort(words.begin(), words.end());
  std::vector<SignedPerm> out;
  out.reserve(words.size());
  for (auto& w : words) out.push_back(SignedPerm(std::move(w)));
  return out;
}

}  // namespace signbal
