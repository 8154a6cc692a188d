#pragma once

#include <string>
#include <vector>

#include "signbal/matrix.hpp"

namespace signbal {

/// Permutation of {1..n} in one-line notation; pi(i) is 1-indexed.
class Perm {
 public:
  explicit Perm(std::vector<int> one_line);
  static Perm identity(int n);
  /// The order-reversing permutation i |-> n+1-i.
  static Perm longest(int n);
  static Perm parse(const std::string& one_line);

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }
  const std::vector<int>& one_line() const { return img_; }

  Perm inverse() const;
  /// (a * b)(i) = a(b(i)).
  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm& a, const Perm& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const Perm& a, const Perm& b) { return !(a == b); }
  friend bool operator<(const Perm& a, const Perm& b) {
    return a.img_ < b.img_;
  }

  std::string to_string() const;

 private:
  std::vector<int> img_;
};

/// Number of pairs i < j with pi(i) > pi(j); the Coxeter length of S_n.
long inv_count(const Perm& pi);

/// Major index: sum of the descent positions.
long maj(const Perm& pi);

/// Signed permutation: image[i] = sigma(i) in {-n..-1, 1..n} with distinct
/// absolute values; sigma(-i) = -sigma(i).
class SignedPerm {
 public:
  explicit SignedPerm(std::vector<int> one_line);
  static SignedPerm identity(int n);
  static SignedPerm parse(const std::string& one_line);

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const;
  const std::vector<int>& one_line() const { return img_; }
  bool fixes(int i) const { return img_[i - 1] == i; }

  SignedPerm inverse() const;
  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b);
  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return a.img_ == b.img_;
  }
  friend bool operator!=(const SignedPerm& a, const SignedPerm& b) {
    return !(a == b);
  }

  std::string to_string() const;

 private:
  std::vector<int> img_;
};

/// Coxeter length of the hyperoctahedral group:
/// inv(sigma) + sum of |sigma(i)| over the i with sigma(i) < 0,
/// where inv uses the natural integer order on the one-line word.
long length_b(const SignedPerm& sigma);

/// Matrix [pi] with [pi]_{i,j} = 1 iff i = pi(j); column j carries the
/// image of j, so [a*b] = [a][b].
Mat perm_matrix(const Perm& pi, const Field& field);

/// Embedding of the hyperoctahedral group into S_{2n}: positions
/// 1..2n carry the labels n,...,1,-1,...,-n and sigma permutes labels.
/// Images satisfy the central symmetry pi(i) + pi(2n+1-i) = 2n+1.
Perm embed_signed(const SignedPerm& sigma);

/// Inverse of embed_signed on centrally symmetric permutations.
SignedPerm unembed_signed(const Perm& pi);

bool is_centrally_symmetric(const Perm& pi);

/// All n! permutations in lexicographic one-line order; n = 0 yields the
/// empty permutation.
std::vector<Perm> all_perms(int n);

/// All 2^n n! signed permutations, one-line words sorted lexicographically
/// by the natural integer order.
std::vector<SignedPerm> all_signed_perms(int n);

}  // namespace signbal
