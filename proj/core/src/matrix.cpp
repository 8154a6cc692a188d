#include "signbal/matrix.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace signbal {

namespace {

void require_square(const Mat& m, const char* what) {
  if (m.rows() != m.cols())
    throw ShapeMismatchError(std::string(what) + " requires a square matrix");
}

void require_same_field(const Mat& a, const Mat& b) {
  if (a.field() != b.field()) throw SpecMismatchError();
}

}  // namespace

Mat::Mat(Field field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0)
    throw ShapeMismatchError("matrix dimensions must be positive");
  v_.assign(size_t(rows) * cols, 0);
}

Mat Mat::identity(const Field& field, int n) {
  Mat m(field, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mat Mat::from_indices(const Field& field, int rows, int cols,
                      std::vector<unsigned> entries) {
  if (entries.size() != size_t(rows) * cols)
    throw ShapeMismatchError("entry count does not match dimensions");
  Mat m(field, rows, cols);
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] >= field.q())
      throw OutOfRangeError("entry index outside field");
    m.v_[i] = static_cast<uint8_t>(entries[i]);
  }
  return m;
}

void Mat::set(int i, int j, unsigned value) {
  if (value >= field_.q()) throw OutOfRangeError("entry index outside field");
  v_[size_t(i) * cols_ + j] = static_cast<uint8_t>(value);
}

std::vector<unsigned> Mat::row(int i) const {
  std::vector<unsigned> r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

std::vector<unsigned> Mat::col(int j) const {
  std::vector<unsigned> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

namespace detail {

Mat mul_generic(const Mat& a, const Mat& b) {
  const Field& f = a.field();
  Mat c(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      unsigned s = 0;
      for (int k = 0; k < a.cols(); ++k)
        s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
      c.set(i, j, s);
    }
  return c;
}

// F_2 kernel: rows of b packed into words, each output row is the XOR of
// the b-rows selected by the bits of the corresponding a-row.
Mat mul_packed(const Mat& a, const Mat& b) {
  const Field& f = a.field();
  std::vector<uint64_t> brows(b.rows(), 0);
  for (int k = 0; k < b.rows(); ++k)
    for (int j = 0; j < b.cols(); ++j)
      if (b.at(k, j)) brows[k] |= uint64_t(1) << j;
  Mat c(f, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    uint64_t acc = 0;
    for (int k = 0; k < a.cols(); ++k)
      if (a.at(i, k)) acc ^= brows[k];
    for (int j = 0; j < b.cols(); ++j)
      if ((acc >> j) & 1u) c.set(i, j, 1);
  }
  return c;
}

Mat inverse_generic(const Mat& a) {
  const Field& f = a.field();
  const int n = a.rows();
  // Gauss-Jordan on [a | I].
  std::vector<std::vector<unsigned>> w(n, std::vector<unsigned>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = a.at(i, j);
    w[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw SingularError();
    std::swap(w[col], w[piv]);
    unsigned inv = f.inv(w[col][col]);
    for (int j = 0; j < 2 * n; ++j) w[col][j] = f.mul(w[col][j], inv);
    for (int i = 0; i < n; ++i) {
      if (i == col || w[i][col] == 0) continue;
      unsigned c = w[i][col];
      for (int j = 0; j < 2 * n; ++j)
        w[i][j] = f.sub(w[i][j], f.mul(c, w[col][j]));
    }
  }
  Mat out(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.set(i, j, w[i][n + j]);
  return out;
}

Mat inverse_packed(const Mat& a) {
  const Field& f = a.field();
  const int n = a.rows();
  std::vector<uint64_t> w(n, 0);  // bits 0..n-1 matrix, n..2n-1 identity
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (a.at(i, j)) w[i] |= uint64_t(1) << j;
    w[i] |= uint64_t(1) << (n + i);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if ((w[i] >> col) & 1u) {
        piv = i;
        break;
      }
    if (piv < 0) throw SingularError();
    std::swap(w[col], w[piv]);
    for (int i = 0; i < n; ++i)
      if (i != col && ((w[i] >> col) & 1u)) w[i] ^= w[col];
  }
  Mat out(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((w[i] >> (n + j)) & 1u) out.set(i, j, 1);
  return out;
}

}  // namespace detail

Mat operator*(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows())
    throw ShapeMismatchError("inner dimensions do not match");
  if (a.field().q() == 2 && a.cols() <= 64 && b.cols() <= 64)
    return detail::mul_packed(a, b);
  return detail::mul_generic(a, b);
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatchError("dimensions do not match");
  const Field& f = a.field();
  Mat c(f, a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      c.set(i, j, f.add(a.at(i, j), b.at(i, j)));
  return c;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.v_ == b.v_;
}

Mat Mat::inverse() const {
  require_square(*this, "inverse");
  if (field_.q() == 2 && rows_ <= 32) return detail::inverse_packed(*this);
  return detail::inverse_generic(*this);
}

FieldElem Mat::det() const {
  require_square(*this, "determinant");
  const Field& f = field_;
  const int n = rows_;
  std::vector<std::vector<unsigned>> w(n, std::vector<unsigned>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = at(i, j);
  unsigned d = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return f.zero();
    if (piv != col) {
      std::swap(w[col], w[piv]);
      d = f.neg(d);
    }
    d = f.mul(d, w[col][col]);
    unsigned inv = f.inv(w[col][col]);
    for (int i = col + 1; i < n; ++i) {
      if (w[i][col] == 0) continue;
      unsigned c = f.mul(w[i][col], inv);
      for (int j = col; j < n; ++j)
        w[i][j] = f.sub(w[i][j], f.mul(c, w[col][j]));
    }
  }
  return FieldElem(f, d);
}

FieldElem Mat::entry_sum() const {
  unsigned s = 0;
  for (uint8_t e : v_) s = field_.add(s, e);
  return FieldElem(field_, s);
}

long Mat::ones_count() const {
  if (field_.q() != 2)
    throw WrongFieldError("ones count is defined over F_2 only");
  long c = 0;
  for (uint8_t e : v_) c += (e == 1);
  return c;
}

long Mat::nonzero_count() const {
  long c = 0;
  for (uint8_t e : v_) c += (e != 0);
  return c;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Mat::is_upper_triangular() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < std::min(i, cols_); ++j)
      if (at(i, j) != 0) return false;
  return true;
}

bool Mat::is_borel() const {
  if (rows_ != cols_ || !is_upper_triangular()) return false;
  for (int i = 0; i < rows_; ++i)
    if (at(i, i) == 0) return false;
  return true;
}

bool Mat::is_lower_unitriangular() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    if (at(i, i) != 1) return false;
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != 0) return false;
  }
  return true;
}

uint64_t Mat::key() const {
  const uint64_t q = field_.q();
  uint64_t k = 0, place = 1;
  for (size_t idx = 0; idx < v_.size(); ++idx) {
    k += v_[idx] * place;
    if (idx + 1 < v_.size()) {
      if (place > UINT64_MAX / q)
        throw NotSupportedError("matrix key does not fit in 64 bits");
      place *= q;
    }
  }
  return k;
}

// --- PackedMat ---

PackedMat PackedMat::identity(int n) {
  PackedMat m(n);
  for (int i = 0; i < n; ++i) m.row_[i] = uint64_t(1) << i;
  return m;
}

PackedMat PackedMat::pack(const Mat& m) {
  if (m.field().q() != 2)
    throw WrongFieldError("packed matrices are defined over F_2 only");
  if (m.rows() != m.cols() || m.rows() > kMaxN)
    throw ShapeMismatchError("packed matrices are square of size <= " +
                             std::to_string(kMaxN));
  PackedMat p(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j)) p.row_[i] |= uint64_t(1) << j;
  return p;
}

void PackedMat::set(int i, int j, bool v) {
  if (v)
    row_[i] |= uint64_t(1) << j;
  else
    row_[i] &= ~(uint64_t(1) << j);
}

Mat PackedMat::unpack(const Field& f2) const {
  if (f2.q() != 2) throw WrongFieldError("unpack target must be F_2");
  Mat m(f2, n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (get(i, j)) m.set(i, j, 1);
  return m;
}

uint64_t PackedMat::bits() const {
  if (n_ * n_ > 64)
    throw NotSupportedError("matrix does not fit in a 64-bit key");
  uint64_t b = 0;
  for (int i = 0; i < n_; ++i) b |= row_[i] << (i * n_);
  return b;
}

PackedMat PackedMat::from_bits(int n, uint64_t bits) {
  if (n * n > 64)
    throw NotSupportedError("matrix does not fit in a 64-bit key");
  PackedMat m(n);
  const uint64_t mask = (uint64_t(1) << n) - 1;
  for (int i = 0; i < n; ++i) m.row_[i] = (bits >> (i * n)) & mask;
  return m;
}

PackedMat PackedMat::transpose() const {
  PackedMat t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (get(i, j)) t.row_[j] |= uint64_t(1) << i;
  return t;
}

PackedMat PackedMat::inverse() const {
  std::array<uint64_t, kMaxN> w = row_;
  for (int i = 0; i < n_; ++i) w[i] |= uint64_t(1) << (n_ + i);
  for (int col = 0; col < n_; ++col) {
    int piv = -1;
    for (int i = col; i < n_; ++i)
      if ((w[i] >> col) & 1u) {
        piv = i;
        break;
      }
    if (piv < 0) throw SingularError();
    std::swap(w[col], w[piv]);
    for (int i = 0; i < n_; ++i)
      if (i != col && ((w[i] >> col) & 1u)) w[i] ^= w[col];
  }
  PackedMat out(n_);
  for (int i = 0; i < n_; ++i) out.row_[i] = w[i] >> n_;
  return out;
}

long PackedMat::ones_count() const {
  long c = 0;
  for (int i = 0; i < n_; ++i) c += std::popcount(row_[i]);
  return c;
}

unsigned PackedMat::entry_sum() const {
  return static_cast<unsigned>(ones_count() & 1);
}

bool PackedMat::is_identity() const {
  for (int i = 0; i < n_; ++i)
    if (row_[i] != uint64_t(1) << i) return false;
  return true;
}

PackedMat operator*(const PackedMat& a, const PackedMat& b) {
  PackedMat c(a.n_);
  for (int i = 0; i < a.n_; ++i) {
    uint64_t m = a.row_[i], acc = 0;
    while (m) {
      acc ^= b.row_[std::countr_zero(m)];
      m &= m - 1;
    }
    c.row_[i] = acc;
  }
  return c;
}

bool operator==(const PackedMat& a, const PackedMat& b) {
  if (a.n_ != b.n_) return false;
  for (int i = 0; i < a.n_; ++i)
    if (a.row_[i] != b.row_[i]) return false;
  return true;
}

// --- symplectic machinery ---

Mat symplectic_form(int n, const Field& field) {
  Mat m(field, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    // upper right block J: antidiagonal ones
    m.set(i, 2 * n - 1 - i, 1);
    // lower left block -J
    m.set(n + i, n - 1 - i, field.neg(1));
  }
  return m;
}

bool is_symplectic(const Mat& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) return false;
  const int n = a.rows() / 2;
  Mat m = symplectic_form(n, a.field());
  if (a.transpose() * m * a != m) return false;
  return a.det() == a.field().one();
}

bool is_symplectic(const PackedMat& a) {
  const int m = a.n();
  if (m % 2 != 0) return false;
  PackedMat j(m);
  for (int i = 0; i < m; ++i) j.set(i, m - 1 - i, 1);
  return a.transpose() * (j * a) == j;
}

FieldElem bilinear_form(const Field& field, const std::vector<unsigned>& x,
                        const std::vector<unsigned>& y) {
  if (x.size() != y.size() || x.size() % 2 != 0)
    throw ShapeMismatchError("vectors must share an even length");
  const size_t n2 = x.size(), n = n2 / 2;
  unsigned s = 0;
  for (size_t i = 0; i < n2; ++i) {
    unsigned term = field.mul(x[i], y[n2 - 1 - i]);
    s = (i < n) ? field.add(s, term) : field.sub(s, term);
  }
  return FieldElem(field, s);
}

Mat cartan_involution(const Mat& a) {
  require_square(a, "cartan involution");
  if (a.rows() % 2 != 0)
    throw ShapeMismatchError("cartan involution needs even size");
  Mat m = symplectic_form(a.rows() / 2, a.field());
  return m.inverse() * a.transpose().inverse() * m;
}

// --- text format ---

Mat read_mat(std::istream& in) {
  unsigned p = 0, k = 0;
  int n = 0, m = 0;
  if (!(in >> p >> k >> n >> m))
    throw ParseError("matrix header must read 'p k n m'");
  if (n <= 0 || m <= 0) throw ParseError("matrix dimensions must be positive");
  std::vector<unsigned> modulus;
  if (k > 1) {
    modulus.resize(k + 1);
    for (auto& c : modulus)
      if (!(in >> c)) throw ParseError("missing modulus coefficients");
  }
  Field f = Field::make(p, k, std::move(modulus));
  Mat out(f, n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      unsigned e = 0;
      if (!(in >> e)) throw ParseError("missing matrix entries");
      if (e >= f.q()) throw ParseError("entry index outside field");
      out.set(i, j, e);
    }
  return out;
}

void write_mat(std::ostream& out, const Mat& m) {
  const Field& f = m.field();
  out << f.p() << ' ' << f.k() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  if (f.k() > 1) {
    const auto& mod = f.modulus();
    for (size_t i = 0; i < mod.size(); ++i)
      out << mod[i] << (i + 1 < mod.size() ? ' ' : '\n');
  }
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out << m.at(i, j) << (j + 1 < m.cols() ? ' ' : '\n');
}

std::string to_text(const Mat& m) {
  std::ostringstream os;
  write_mat(os, m);
  return os.str();
}

}  // namespace signbal
