#include "signbal/balance.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace signbal {

const char* stat_name(Stat s) { return s == Stat::Ones ? "ones" : "fieldsum"; }

namespace {

void check_bijection(const IndexBijection& bij, unsigned q) {
  if (bij.empty()) return;
  if (bij.size() != q || bij[0] != 0)
    throw OutOfRangeError("index bijection must map 0..q-1 and fix 0");
  std::vector<bool> seen(q, false);
  for (unsigned v : bij) {
    if (v >= q || seen[v])
      throw OutOfRangeError("index bijection must be a permutation");
    seen[v] = true;
  }
}

unsigned stat_value(const Mat& k, Stat stat, const IndexBijection& bij) {
  if (stat == Stat::Ones) return static_cast<unsigned>(k.ones_count());
  return stat_fieldsum(k, bij);
}

IntPoly poly_from_counts(const std::vector<uint64_t>& h) {
  IntPoly p;
  for (size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0) p.add_term(i, BigInt(h[i]));
  return p;
}

IntPoly merge_counts(const std::vector<std::vector<uint64_t>>& shards) {
  IntPoly p;
  for (size_t i = 0; i < shards[0].size(); ++i) {
    BigInt total = 0;
    for (const auto& h : shards) total += h[i];
    if (total != 0) p.add_term(i, total);
  }
  return p;
}

template <typename F>
void run_workers(int workers, F&& fn) {
  const int nw = std::max(1, workers);
  if (nw == 1) {
    fn(0);
    return;
  }
  std::vector<std::exception_ptr> errs(nw);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w)
    pool.emplace_back([&errs, &fn, w] {
      try {
        fn(w);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

long stat_ones(const Mat& k) { return k.ones_count(); }

unsigned stat_fieldsum(const Mat& k, const IndexBijection& bij) {
  const unsigned idx = k.entry_sum().index();
  if (bij.empty()) return idx;
  check_bijection(bij, k.field().q());
  return bij[idx];
}

GenFun gen_fun_gl(int n, const Field& field, Stat stat, int workers,
                  const IndexBijection& bij, const EnumerationCache& cache) {
  if (n < 1) throw OutOfRangeError("matrix size must be positive");
  if (stat == Stat::Ones && field.q() != 2)
    throw WrongFieldError("the ones statistic is defined over F_2 only");
  check_bijection(bij, field.q());
  const size_t hsize =
      stat == Stat::Ones ? size_t(n) * size_t(n) + 1 : field.q();
  const int nw = std::max(1, workers);
  std::vector<std::vector<uint64_t>> hist(nw,
                                          std::vector<uint64_t>(hsize, 0));

  if (cache.enabled()) {
    const std::vector<uint64_t> rows = enumerate_gl_rows(n, field, cache);
    const size_t count = rows.size() / size_t(n);
    run_workers(nw, [&](int w) {
      auto& h = hist[w];
      const size_t lo = count * w / nw, hi = count * (w + 1) / nw;
      for (size_t e = lo; e < hi; ++e) {
        Mat m = unpack_rows(field, n, n, rows.data() + e * n);
        ++h[stat_value(m, stat, bij)];
      }
    });
  } else {
    const std::vector<Perm> perms = all_perms(n);
    run_workers(nw, [&](int w) {
      auto& h = hist[w];
      Mat rep(field, n, n), b(field, n, n);
      for (size_t p = w; p < perms.size(); p += size_t(nw)) {
        CellRepEnumerator cells(perms[p], field);
        while (cells.next(rep)) {
          BorelEnumerator borel(n, field);
          while (borel.next(b)) ++h[stat_value(rep * b, stat, bij)];
        }
      }
    });
  }

  return GenFun{merge_counts(hist), stat, GroupDesc{GroupTag::GL, n, field}};
}

GenFun gen_fun_sp(const SpGroup& group, int workers) {
  const int m = 2 * group.n();
  const size_t hsize = size_t(m) * size_t(m) + 1;
  const int nw = std::max(1, workers);
  std::vector<std::vector<uint64_t>> hist(nw,
                                          std::vector<uint64_t>(hsize, 0));
  const std::vector<uint64_t>& keys = group.keys();
  run_workers(nw, [&](int w) {
    auto& h = hist[w];
    const size_t lo = keys.size() * w / nw, hi = keys.size() * (w + 1) / nw;
    for (size_t e = lo; e < hi; ++e)
      ++h[size_t(std::popcount(keys[e]))];
  });
  return GenFun{merge_counts(hist), Stat::Ones,
                GroupDesc{GroupTag::Sp, group.n(), group.field()}};
}

namespace {

CosetClass classify_by_columns(const Mat& rep, int limit) {
  const Field& f = rep.field();
  for (int j = 1; j <= limit; ++j) {
    unsigned sum = 0;
    for (int i = 0; i < rep.rows(); ++i) sum = f.add(sum, rep.at(i, j - 1));
    if (sum != 0) return {false, j};
  }
  return {true, 0};
}

}  // namespace

CosetClass classify_coset(const Mat& rep) {
  if (!is_canonical(rep))
    throw NotCanonicalError("classification requires a canonical representative");
  return classify_by_columns(rep, rep.cols() - 1);
}

CosetClass classify_coset_sp(const Mat& rep) {
  if (rep.field().q() != 2)
    throw WrongFieldError("symplectic classification works over F_2");
  if (!is_canonical(rep))
    throw NotCanonicalError("classification requires a canonical representative");
  if (!is_symplectic(rep))
    throw NotSymplecticError("representative is not symplectic");
  return classify_by_columns(rep, rep.cols() - 1);
}

GenFun coset_gen_fun(const Mat& rep, Stat stat) {
  if (!is_canonical(rep))
    throw NotCanonicalError("coset sums require a canonical representative");
  const Field& f = rep.field();
  if (stat == Stat::Ones && f.q() != 2)
    throw WrongFieldError("the ones statistic is defined over F_2 only");
  const int n = rep.rows();
  const size_t hsize = stat == Stat::Ones ? size_t(n) * size_t(n) + 1 : f.q();
  std::vector<uint64_t> h(hsize, 0);
  BorelEnumerator borel(n, f);
  Mat b(f, n, n);
  const IndexBijection none;
  while (borel.next(b)) ++h[stat_value(rep * b, stat, none)];
  return GenFun{poly_from_counts(h), stat, GroupDesc{GroupTag::GL, n, f}};
}

GenFun coset_gen_fun_sp(const Mat& rep) {
  if (rep.field().q() != 2)
    throw WrongFieldError("symplectic cosets live over F_2");
  if (!is_canonical(rep))
    throw NotCanonicalError("coset sums require a canonical representative");
  if (!is_symplectic(rep))
    throw NotSymplecticError("representative is not symplectic");
  const int m = rep.rows();
  std::vector<uint64_t> h(size_t(m) * size_t(m) + 1, 0);
  for (const Mat& b : sp_borel(m / 2))
    ++h[size_t((rep * b).ones_count())];
  return GenFun{poly_from_counts(h), Stat::Ones,
                GroupDesc{GroupTag::Sp, m / 2, rep.field()}};
}

BigInt count_odd_cosets_gl(const Perm& pi, unsigned q) {
  const int n = pi.n();
  if (n < 1) throw OutOfRangeError("permutation must act on at least one point");
  if (pi(n) != n) return 0;
  const long e = long(binom2(unsigned(n))) - inv_count(pi) - (n - 1);
  if (e < 0)
    throw NegativeExponentError("odd-coset count with a negative exponent");
  return big_pow(BigInt(q), unsigned(e));
}

BigInt count_odd_cosets_sp(const SignedPerm& sigma) {
  const int n = sigma.n();
  if (n < 1) throw OutOfRangeError("permutation must act on at least one point");
  if (!sigma.fixes(n)) return 0;
  const long e = long(n - 1) * long(n - 1) - length_b(sigma);
  if (e < 0)
    throw NegativeExponentError("odd-coset count with a negative exponent");
  return big_pow(BigInt(2), unsigned(e));
}

BigInt imbalance_gl_brute(int n, const Field& field, int workers,
                          const IndexBijection& bij,
                          const EnumerationCache& cache) {
  GenFun g = gen_fun_gl(n, field, Stat::FieldSum, workers, bij, cache);
  return eval_at_nontrivial_root(g.poly, field.q());
}

BigInt imbalance_gl_structured(int n, unsigned q) {
  if (n < 1) throw OutOfRangeError("matrix size must be positive");
  BigInt odd_cosets = 0;
  for (const Perm& p : all_perms(n - 1)) {
    std::vector<int> ext = p.one_line();
    ext.push_back(n);
    odd_cosets += count_odd_cosets_gl(Perm(std::move(ext)), q);
  }
  return -big_pow(BigInt(q) - 1, unsigned(n - 1)) *
         big_pow(BigInt(q), binom2(unsigned(n))) * odd_cosets;
}

BigInt imbalance_gl_closed(int n, unsigned q) {
  if (n < 1) throw OutOfRangeError("matrix size must be positive");
  return -big_pow(BigInt(q) - 1, unsigned(n - 1)) *
         big_pow(BigInt(q), binom2(unsigned(n))) *
         q_factorial(unsigned(n - 1), BigInt(q));
}

std::pair<BigInt, BigInt> residue_counts_gl(int n, unsigned q) {
  if (n < 1) throw OutOfRangeError("matrix size must be positive");
  const BigInt common = q_factorial(unsigned(n - 1), BigInt(q)) *
                        big_pow(BigInt(q) - 1, unsigned(n - 1)) *
                        big_pow(BigInt(q), binom2(unsigned(n)));
  const BigInt shift = big_pow(BigInt(q), unsigned(n - 1));
  return {common * (shift - 1), common * shift};
}

BigInt imbalance_sp_brute(const SpGroup& group, int workers) {
  GenFun g = gen_fun_sp(group, workers);
  return eval_at_nontrivial_root(g.poly, 2);
}

BigInt imbalance_sp_structured(int n) {
  if (n < 1) throw OutOfRangeError("half-dimension must be positive");
  BigInt odd_cosets = 0;
  for (const SignedPerm& s : all_signed_perms(n - 1)) {
    std::vector<int> ext = s.one_line();
    ext.push_back(n);
    odd_cosets += count_odd_cosets_sp(SignedPerm(std::move(ext)));
  }
  return -big_pow(BigInt(2), unsigned(n) * unsigned(n)) * odd_cosets;
}

BigInt imbalance_sp_closed(int n) {
  if (n < 1) throw OutOfRangeError("half-dimension must be positive");
  BigInt prod = 1;
  for (int i = 1; i <= n - 1; ++i) prod *= q_int(unsigned(2 * i), BigInt(2));
  return -big_pow(BigInt(2), unsigned(n) * unsigned(n)) * prod;
}

std::pair<BigInt, BigInt> parity_counts_sp(int n) {
  if (n < 1) throw OutOfRangeError("half-dimension must be positive");
  BigInt prod = 1;
  for (int i = 1; i <= n - 1; ++i) prod *= q_int(unsigned(2 * i), BigInt(2));
  const BigInt base =
      big_pow(BigInt(2), unsigned(n) * unsigned(n) - 1) * prod;
  const BigInt top = q_int(unsigned(2 * n), BigInt(2));
  return {base * (top - 1), base * (top + 1)};
}

Mat complete_sp_borel_row(Mat b) {
  if (b.rows() != b.cols() || b.rows() % 2 != 0)
    throw ShapeMismatchError("expected a square matrix of even size");
  const Field& f = b.field();
  if (f.q() != 2)
    throw WrongFieldError("first-row completion works over F_2");
  if (!b.is_borel())
    throw Error("expected an invertible upper triangular matrix");
  const int m = b.rows();
  for (int i = 2; i <= m - 1; ++i) {
    unsigned v = 0;
    for (int k = 2; k <= m; ++k)
      v = f.add(v, f.mul(b.at(k - 1, i - 1), b.at(m - k, m - 1)));
    b.set(0, i - 1, v);
  }
  return b;
}

Mat csp_action(unsigned power, const Mat& k) {
  CanonicalForm cf = canonical_rep(k);
  const CosetClass cls = classify_coset(cf.rep);
  if (cls.odd) return k;
  const unsigned q = k.field().q();
  const unsigned step = power % q;
  if (step == 0) return k;
  Mat b = cf.rep.inverse() * k;
  const int n = k.rows();
  const unsigned cur = b.at(cls.first_odd_column - 1, n - 1);
  b.set(cls.first_odd_column - 1, n - 1, (cur + step) % q);
  return cf.rep * b;
}

Mat csp_action_sp(unsigned power, const Mat& k) {
  if (k.field().q() != 2)
    throw WrongFieldError("the symplectic action works over F_2");
  if (!is_symplectic(k)) throw NotSymplecticError("matrix is not symplectic");
  CanonicalForm cf = canonical_rep(k);
  const CosetClass cls = classify_coset_sp(cf.rep);
  if (cls.odd || power % 2 == 0) return k;
  Mat b = cf.rep.inverse() * k;
  const int m = k.rows();
  const int j = cls.first_odd_column;
  b.set(j - 1, m - 1, b.at(j - 1, m - 1) ^ 1u);
  if (j > 1) b = complete_sp_borel_row(std::move(b));
  if (!is_symplectic(b))
    throw SymmetryViolationError(
        "cyclic step left the Borel factor non-symplectic");
  return cf.rep * b;
}

namespace {

// Shared body of the two audits; the action and the odd test are the only
// moving parts.
CspAudit audit_impl(GroupDesc desc, Stat stat, const std::vector<Mat>& elems,
                    unsigned q,
                    const std::function<Mat(unsigned, const Mat&)>& action,
                    const std::function<bool(const Mat&)>& in_odd_coset,
                    bool type_c) {
  std::unordered_map<uint64_t, uint32_t> pos;
  pos.reserve(2 * elems.size());
  for (size_t i = 0; i < elems.size(); ++i)
    pos.emplace(elems[i].key(), uint32_t(i));
  if (pos.size() != elems.size())
    throw Error("audit elements are not distinct");

  const size_t hsize = stat == Stat::Ones
                           ? size_t(elems[0].rows()) * elems[0].cols() + 1
                           : q;
  std::vector<uint64_t> hist(hsize, 0);
  BigInt odd_elements = 0;
  const IndexBijection none;
  for (const Mat& g : elems) {
    ++hist[stat_value(g, stat, none)];
    if (in_odd_coset(g)) ++odd_elements;
  }

  std::vector<char> seen(elems.size(), 0);
  std::map<unsigned, BigInt> census;
  BigInt total_orbits = 0, free_orbits = 0;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (seen[i]) continue;
    unsigned size = 0;
    size_t cur = i;
    do {
      seen[cur] = 1;
      ++size;
      if (size > q) throw Error("cyclic orbit exceeded the action order");
      const auto it = pos.find(action(1, elems[cur]).key());
      if (it == pos.end()) throw Error("cyclic step left the group");
      cur = it->second;
    } while (cur != i);
    if (size != 1 && size != q)
      throw Error("orbit size outside {1, " + std::to_string(q) + "}");
    ++total_orbits;
    if (size == q) ++free_orbits;
    census[size] += 1;
  }

  const IntPoly gen_poly = poly_from_counts(hist);
  const IntPoly reduced = gen_poly.reduce_mod_cyclic(q);
  std::vector<BigInt> a(q);
  for (unsigned l = 0; l < q; ++l) a[l] = reduced.coeff(l);

  std::vector<CspPowerRow> powers;
  bool lit_all = true, abs_nontrivial_all = true;
  for (unsigned l = 0; l < q; ++l) {
    CspPowerRow row{l, 0, false, 0, false, false};
    if (l == 0) {
      row.fixed = BigInt(uint64_t(elems.size()));
      row.evaluable = true;
      row.evaluation = gen_poly.eval(1);
    } else {
      uint64_t fixed = 0;
      for (const Mat& g : elems)
        if (action(l, g) == g) ++fixed;
      row.fixed = fixed;
      try {
        row.evaluation =
            eval_at_nontrivial_root(gen_poly, q / std::gcd(l, q));
        row.evaluable = true;
      } catch (const NotRootUniformError&) {
        row.evaluable = false;
      }
      if (row.fixed != odd_elements)
        throw Error(
            "fixed points of a nontrivial power differ from the odd-coset "
            "elements");
    }
    row.cond1_literal = row.evaluable && row.evaluation == row.fixed;
    row.cond1_abs = row.evaluable && abs(row.evaluation) == row.fixed;
    lit_all = lit_all && row.cond1_literal;
    if (l != 0) abs_nontrivial_all = abs_nontrivial_all && row.cond1_abs;
    powers.push_back(std::move(row));
  }

  std::vector<BigInt> expected(q, 0);
  for (const auto& [size, cnt] : census) {
    const unsigned stab = q / size;
    for (unsigned l = 0; l < q; ++l)
      if (l % stab == 0) expected[l] += cnt;
  }

  CspAudit audit{std::move(desc),
                 stat,
                 gen_poly,
                 std::move(a),
                 std::move(powers),
                 {census.begin(), census.end()},
                 std::move(odd_elements),
                 std::move(total_orbits),
                 std::move(free_orbits),
                 expected,
                 lit_all,
                 abs_nontrivial_all,
                 false,
                 type_c};
  audit.cond2 = audit.a == audit.cond2_expected;
  return audit;
}

constexpr uint64_t kAuditCap = 1000000;

}  // namespace

CspAudit csp_audit_gl(int n, const Field& field) {
  if (n < 1) throw OutOfRangeError("matrix size must be positive");
  const BigInt order = order_gl(unsigned(n), BigInt(field.q()));
  if (order > kAuditCap)
    throw NotSupportedError("audit beyond desk scale");
  std::vector<Mat> elems;
  elems.reserve(order.convert_to<size_t>());
  {
    GlEnumerator en(n, field);
    Mat g(field, n, n);
    while (en.next(g)) elems.push_back(g);
  }
  if (BigInt(uint64_t(elems.size())) != order)
    throw ClosureMismatchError("enumeration size disagrees with group order");
  return audit_impl(
      GroupDesc{GroupTag::GL, n, field},
      field.q() == 2 ? Stat::Ones : Stat::FieldSum, elems, field.q(),
      [](unsigned power, const Mat& k) { return csp_action(power, k); },
      [](const Mat& k) { return classify_coset(canonical_rep(k).rep).odd; },
      false);
}

CspAudit csp_audit_sp(const SpGroup& group) {
  if (group.size() > kAuditCap)
    throw NotSupportedError("audit beyond desk scale");
  std::vector<Mat> elems;
  elems.reserve(group.size());
  for (size_t i = 0; i < group.size(); ++i) elems.push_back(group.matrix(i));
  return audit_impl(
      GroupDesc{GroupTag::Sp, group.n(), group.field()}, Stat::Ones, elems, 2,
      [](unsigned power, const Mat& k) { return csp_action_sp(power, k); },
      [](const Mat& k) {
        return classify_coset_sp(canonical_rep(k).rep).odd;
      },
      true);
}

}  // namespace signbal
