#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "signbal/field.hpp"

namespace signbal {

class PackedMat;

/// Dense matrix over a finite field.  Entries are stored as element
/// indices; multiplication and inversion dispatch to a bit-packed kernel
/// over F_2 that is cross-checked against the generic path in the tests.
class Mat {
 public:
  Mat(Field field, int rows, int cols);
  static Mat identity(const Field& field, int n);
  static Mat from_indices(const Field& field, int rows, int cols,
                          std::vector<unsigned> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  unsigned at(int i, int j) const { return v_[size_t(i) * cols_ + j]; }
  void set(int i, int j, unsigned value);
  FieldElem entry(int i, int j) const { return FieldElem(field_, at(i, j)); }

  std::vector<unsigned> row(int i) const;
  std::vector<unsigned> col(int j) const;

  Mat transpose() const;
  Mat inverse() const;
  FieldElem det() const;

  /// Sum of all entries in the field.
  FieldElem entry_sum() const;
  /// Number of entries equal to 1; defined over F_2 only.
  long ones_count() const;
  /// Number of nonzero entries, any field.
  long nonzero_count() const;

  bool is_identity() const;
  bool is_upper_triangular() const;
  /// Upper triangular with every diagonal entry nonzero.
  bool is_borel() const;
  /// Lower triangular with every diagonal entry equal to 1.
  bool is_lower_unitriangular() const;

  /// Entries packed base q in row-major order, low position first.
  /// Requires q^(rows*cols) to fit in 64 bits.
  uint64_t key() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

 private:
  Field field_;
  int rows_, cols_;
  std::vector<uint8_t> v_;
  friend class PackedMat;
};

/// Square F_2 matrix with each row packed into a machine word, bit j of
/// row i holding entry (i, j).  Used by the enumeration and group-closure
/// kernels; products and inverses agree bit for bit with Mat.
class PackedMat {
 public:
  static constexpr int kMaxN = 16;

  PackedMat() : n_(0), row_{} {}
  explicit PackedMat(int n) : n_(n), row_{} {}
  static PackedMat identity(int n);
  static PackedMat pack(const Mat& m);

  int n() const { return n_; }
  uint64_t row_bits(int i) const { return row_[i]; }
  void set_row_bits(int i, uint64_t bits) { row_[i] = bits; }
  bool get(int i, int j) const { return (row_[i] >> j) & 1u; }
  void set(int i, int j, bool v);

  Mat unpack(const Field& f2) const;

  /// Whole matrix as a single word, row-major, bit (i*n + j) = entry (i,j).
  /// Requires n*n <= 64.
  uint64_t bits() const;
  static PackedMat from_bits(int n, uint64_t bits);

  PackedMat transpose() const;
  PackedMat inverse() const;  // Gauss-Jordan on packed rows; n <= 32
  long ones_count() const;
  /// Parity of the ones count; the F_2 entry sum.
  unsigned entry_sum() const;
  bool is_identity() const;

  friend PackedMat operator*(const PackedMat& a, const PackedMat& b);
  friend bool operator==(const PackedMat& a, const PackedMat& b);

 private:
  int n_;
  std::array<uint64_t, kMaxN> row_;
};

namespace detail {
/// Both multiplication paths, exposed so tests can cross-check them.
Mat mul_generic(const Mat& a, const Mat& b);
Mat mul_packed(const Mat& a, const Mat& b);
Mat inverse_generic(const Mat& a);
Mat inverse_packed(const Mat& a);
}  // namespace detail

/// The form M = [[0, J], [-J, 0]] defining the symplectic group, with J
/// the n x n antidiagonal of ones; size 2n x 2n.
Mat symplectic_form(int n, const Field& field);

/// A^T M A = M and det A = 1.
bool is_symplectic(const Mat& a);

/// Packed F_2 version; over F_2 the form identity forces invertibility and
/// the determinant condition.
bool is_symplectic(const PackedMat& a);

/// B(x, y) = sum_{i<=n} x_i y_{2n+1-i} - sum_{i>n} x_i y_{2n+1-i} on
/// index vectors of even length 2n.
FieldElem bilinear_form(const Field& field, const std::vector<unsigned>& x,
                        const std::vector<unsigned>& y);

/// A |-> M^{-1} (A^T)^{-1} M.
Mat cartan_involution(const Mat& a);

/// Text format: "p k n m" header, a modulus line (k+1 coefficients) when
/// k > 1, then n rows of m element indices.
Mat read_mat(std::istream& in);
void write_mat(std::ostream& out, const Mat& m);
std::string to_text(const Mat& m);

}  // namespace signbal
