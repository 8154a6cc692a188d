#include "signbal/bruhat.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

namespace signbal {

const char* group_tag_name(GroupTag g) {
  return g == GroupTag::GL ? "gl" : "sp";
}

bool is_canonical(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  const int n = m.rows();
  std::vector<int> lead_row(n, -1);   // per column
  std::vector<int> lead_col(n, -1);   // per row
  for (int j = 0; j < n; ++j) {
    int top = -1;
    for (int i = 0; i < n; ++i)
      if (m.at(i, j) != 0) {
        top = i;
        break;
      }
    if (top < 0 || m.at(top, j) != 1) return false;
    if (lead_col[top] != -1) return false;
    lead_row[j] = top;
    lead_col[top] = j;
  }
  // the leading 1 must be the rightmost nonzero entry of its row
  for (int i = 0; i < n; ++i)
    for (int j = lead_col[i] + 1; j < n; ++j)
      if (m.at(i, j) != 0) return false;
  return true;
}

CanonicalForm canonical_rep(const Mat& g) {
  if (g.rows() != g.cols())
    throw ShapeMismatchError("canonical form requires a square matrix");
  const Field& f = g.field();
  const int n = g.rows();
  Mat r = g;
  std::vector<int> one_line(n);
  for (int j = 0; j < n; ++j) {
    int top = -1;
    for (int i = 0; i < n; ++i)
      if (r.at(i, j) != 0) {
        top = i;
        break;
      }
    if (top < 0) throw SingularError();
    if (unsigned piv = r.at(top, j); piv != 1) {
      unsigned ci = f.inv(piv);
      for (int i = 0; i < n; ++i) r.set(i, j, f.mul(r.at(i, j), ci));
    }
    for (int j2 = j + 1; j2 < n; ++j2) {
      unsigned c = r.at(top, j2);
      if (c == 0) continue;
      for (int i = 0; i < n; ++i)
        r.set(i, j2, f.sub(r.at(i, j2), f.mul(c, r.at(i, j))));
    }
    one_line[j] = top + 1;
  }
  return {std::move(r), Perm(std::move(one_line))};
}

BruhatFactorization decompose(const Mat& g) {
  CanonicalForm cf = canonical_rep(g);
  const Field& f = g.field();
  const int n = g.rows();
  Perm inv = cf.pi.inverse();
  Mat u(f, n, n);
  for (int j = 1; j <= n; ++j) {
    int src = inv(j);  // column of rep whose leading 1 sits in row j
    for (int i = 0; i < n; ++i) u.set(i, j - 1, cf.rep.at(i, src - 1));
  }
  Mat b = cf.rep.inverse() * g;
  if (!u_pi_membership(u, cf.pi) || !b.is_borel())
    throw Error("bruhat factorization violated its own invariants");
  return {std::move(u), std::move(cf.pi), std::move(b), GroupTag::GL};
}

bool u_pi_membership(const Mat& u, const Perm& pi) {
  if (u.rows() != u.cols() || u.rows() != pi.n()) return false;
  if (!u.is_lower_unitriangular()) return false;
  Perm inv = pi.inverse();
  for (int i = 1; i <= u.rows(); ++i)
    for (int j = 1; j < i; ++j)
      if (inv(i) < inv(j) && u.at(i - 1, j - 1) != 0) return false;
  return true;
}

CellDescriptor cell_free_positions(const Perm& pi) {
  const int n = pi.n();
  Perm inv = pi.inverse();
  CellDescriptor d{pi, {}, 0};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i > pi(j) && inv(i) > j) d.free_positions.emplace_back(i, j);
  d.dimension = binom2(static_cast<unsigned>(n)) -
                static_cast<unsigned>(inv_count(pi));
  if (d.dimension != d.free_positions.size())
    throw Error("cell dimension does not match its free positions");
  return d;
}

CellRepEnumerator::CellRepEnumerator(const Perm& pi, const Field& field)
    : base_(perm_matrix(pi, field)),
      pos_(cell_free_positions(pi).free_positions),
      vals_(pos_.size(), 0),
      q_(field.q()),
      done_(false) {}

bool CellRepEnumerator::next(Mat& out) {
  if (done_) return false;
  out = base_;
  for (size_t t = 0; t < pos_.size(); ++t)
    out.set(pos_[t].first - 1, pos_[t].second - 1, vals_[t]);
  // odometer, last position fastest
  size_t t = pos_.size();
  for (;;) {
    if (t == 0) {
      done_ = true;
      break;
    }
    --t;
    if (++vals_[t] < q_) break;
    vals_[t] = 0;
  }
  if (pos_.empty()) done_ = true;
  return true;
}

BorelEnumerator::BorelEnumerator(int n, const Field& field)
    : base_(Mat::identity(field, n)), q_(field.q()), done_(false) {
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pos_.emplace_back(i, j);
  vals_.assign(pos_.size(), 0);
}

bool BorelEnumerator::next(Mat& out) {
  if (done_) return false;
  out = base_;
  for (size_t t = 0; t < pos_.size(); ++t) {
    auto [i, j] = pos_[t];
    out.set(i, j, i == j ? vals_[t] + 1 : vals_[t]);  // diagonal skips zero
  }
  size_t t = pos_.size();
  for (;;) {
    if (t == 0) {
      done_ = true;
      break;
    }
    --t;
    auto [i, j] = pos_[t];
    unsigned limit = (i == j) ? q_ - 1 : q_;
    if (++vals_[t] < limit) break;
    vals_[t] = 0;
  }
  if (pos_.empty()) done_ = true;
  return true;
}

GlEnumerator::GlEnumerator(int n, const Field& field)
    : field_(field), n_(n), perms_(all_perms(n)), perm_idx_(0) {
  cells_ = std::make_unique<CellRepEnumerator>(perms_[0], field_);
  advance_rep();
}

bool GlEnumerator::advance_rep() {
  for (;;) {
    Mat rep(field_, n_, n_);
    if (cells_->next(rep)) {
      rep_ = std::make_unique<Mat>(std::move(rep));
      borel_ = std::make_unique<BorelEnumerator>(n_, field_);
      return true;
    }
    if (++perm_idx_ >= perms_.size()) {
      rep_.reset();
      return false;
    }
    cells_ = std::make_unique<CellRepEnumerator>(perms_[perm_idx_], field_);
  }
}

bool GlEnumerator::next(Mat& out) {
  while (rep_) {
    Mat b(field_, n_, n_);
    if (borel_->next(b)) {
      out = *rep_ * b;
      return true;
    }
    if (!advance_rep()) return false;
  }
  return false;
}

std::vector<CanonicalForm> all_canonical_reps(int n, const Field& field) {
  std::vector<CanonicalForm> out;
  for (const Perm& pi : all_perms(n)) {
    CellRepEnumerator cells(pi, field);
    Mat rep(field, n, n);
    while (cells.next(rep)) out.push_back({rep, pi});
  }
  return out;
}

std::vector<Mat> sp_borel(int n) {
  Field f2 = Field::make(2, 1);
  std::vector<Mat> out;
  BorelEnumerator borel(2 * n, f2);
  Mat b(f2, 2 * n, 2 * n);
  while (borel.next(b))
    if (is_symplectic(b)) out.push_back(b);
  return out;
}

std::vector<PackedMat> symplectic_transvections(int n) {
  const int m = 2 * n;
  if (m > PackedMat::kMaxN)
    throw NotSupportedError("transvections beyond packed desk scale");
  std::vector<PackedMat> out;
  out.reserve((size_t(1) << m) - 1);
  for (uint64_t v = 1; v < (uint64_t(1) << m); ++v) {
    uint64_t w = 0;  // bit-reverse of v within m positions
    for (int i = 0; i < m; ++i)
      if ((v >> i) & 1u) w |= uint64_t(1) << (m - 1 - i);
    PackedMat t(m);
    for (int i = 0; i < m; ++i)
      t.set_row_bits(i, (uint64_t(1) << i) ^ (((v >> i) & 1u) ? w : 0));
    out.push_back(t);
  }
  return out;
}

SpGroup::SpGroup(int n, int workers, const EnumerationCache& cache)
    : n_(n), field_(Field::make(2, 1)) {
  if (n < 1 || n > 3)
    throw NotSupportedError("symplectic enumeration supports n = 1..3");
  const int m = 2 * n;
  const BigInt expected_big = order_sp(static_cast<unsigned>(n), 2);
  const uint64_t expected = expected_big.convert_to<uint64_t>();

  if (cache.enabled()) {
    if (auto rows = cache.load("sp", m, field_.descriptor())) {
      if (rows->size() % m != 0)
        throw CacheError("row count not divisible by matrix size");
      const size_t count = rows->size() / m;
      if (count != expected)
        throw CacheError("cached symplectic stream has the wrong size");
      keys_.reserve(count);
      for (size_t e = 0; e < count; ++e) {
        uint64_t bits = 0;
        for (int i = 0; i < m; ++i) bits |= (*rows)[e * m + i] << (i * m);
        keys_.push_back(bits);
      }
      return;
    }
  }

  const std::vector<PackedMat> gens = symplectic_transvections(n);
  std::unordered_set<uint64_t> visited;
  visited.reserve(2 * expected);
  const uint64_t id_bits = PackedMat::identity(m).bits();
  visited.insert(id_bits);
  keys_.push_back(id_bits);
  std::vector<uint64_t> frontier{id_bits};

  const int nw = std::max(1, workers);
  while (!frontier.empty()) {
    std::vector<std::vector<uint64_t>> found(nw);
    auto scan = [&](int w) {
      auto& local = found[w];
      for (size_t idx = w; idx < frontier.size(); idx += nw) {
        PackedMat g = PackedMat::from_bits(m, frontier[idx]);
        for (const PackedMat& t : gens) {
          uint64_t h = (g * t).bits();
          if (!visited.count(h)) local.push_back(h);
        }
      }
    };
    if (nw == 1) {
      scan(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(nw);
      for (int w = 0; w < nw; ++w) pool.emplace_back(scan, w);
      for (auto& th : pool) th.join();
    }
    std::vector<uint64_t> layer;
    for (auto& loc : found) layer.insert(layer.end(), loc.begin(), loc.end());
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    for (uint64_t h : layer) visited.insert(h);
    keys_.insert(keys_.end(), layer.begin(), layer.end());
    frontier = std::move(layer);
  }

  if (keys_.size() != expected)
    throw ClosureMismatchError(
        "transvection closure produced " + std::to_string(keys_.size()) +
        " elements, group order is " + expected_big.str());

  if (cache.enabled()) {
    std::vector<uint64_t> rows;
    rows.reserve(keys_.size() * m);
    const uint64_t mask = (uint64_t(1) << m) - 1;
    for (uint64_t bits : keys_)
      for (int i = 0; i < m; ++i) rows.push_back((bits >> (i * m)) & mask);
    cache.store("sp", m, field_.descriptor(), keys_.size(), rows);
  }
}

PackedMat SpGroup::packed(size_t i) const {
  return PackedMat::from_bits(2 * n_, keys_[i]);
}

Mat SpGroup::matrix(size_t i) const { return packed(i).unpack(field_); }

SpFactorization decompose_sp(const Mat& g) {
  if (g.field().q() != 2)
    throw WrongFieldError("symplectic factorization is implemented over F_2");
  if (!is_symplectic(g))
    throw NotSymplecticError("matrix is not symplectic");
  BruhatFactorization f = decompose(g);
  if (!is_symplectic(f.u) || !is_symplectic(f.b))
    throw SymmetryViolationError(
        "bruhat factors of a symplectic matrix failed to be symplectic");
  SignedPerm sigma = unembed_signed(f.pi);  // throws unless centrally symmetric
  return {std::move(f.u), std::move(f.pi), std::move(f.b), std::move(sigma)};
}

std::vector<uint64_t> pack_rows(const Mat& m) {
  const uint64_t q = m.field().q();
  std::vector<uint64_t> rows(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i) {
    uint64_t place = 1;
    for (int j = 0; j < m.cols(); ++j) {
      rows[i] += m.at(i, j) * place;
      if (j + 1 < m.cols()) {
        if (place > UINT64_MAX / q)
          throw NotSupportedError("row does not fit in 64 bits");
        place *= q;
      }
    }
  }
  return rows;
}

Mat unpack_rows(const Field& field, int rows, int cols, const uint64_t* words) {
  Mat m(field, rows, cols);
  const uint64_t q = field.q();
  for (int i = 0; i < rows; ++i) {
    uint64_t v = words[i];
    for (int j = 0; j < cols; ++j) {
      m.set(i, j, static_cast<unsigned>(v % q));
      v /= q;
    }
  }
  return m;
}

std::vector<uint64_t> enumerate_gl_rows(int n, const Field& field,
                                        const EnumerationCache& cache) {
  const BigInt expected_big = order_gl(static_cast<unsigned>(n), field.q());
  if (expected_big > BigInt(100000000))
    throw NotSupportedError("group too large to materialize at desk scale");
  const uint64_t expected = expected_big.convert_to<uint64_t>();

  if (cache.enabled()) {
    if (auto rows = cache.load("gl", n, field.descriptor())) {
      if (rows->size() != expected * static_cast<uint64_t>(n))
        throw CacheError("cached linear-group stream has the wrong size");
      return *rows;
    }
  }

  std::vector<uint64_t> rows;
  rows.reserve(expected * n);
  GlEnumerator en(n, field);
  Mat g(field, n, n);
  while (en.next(g)) {
    auto r = pack_rows(g);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (rows.size() != expected * static_cast<uint64_t>(n))
    throw ClosureMismatchError("enumeration size disagrees with group order");
  if (cache.enabled())
    cache.store("gl", n, field.descriptor(), expected, rows);
  return rows;
}

}  // namespace signbal
