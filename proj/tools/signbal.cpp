#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "signbal/balance.hpp"
#include "signbal/bruhat.hpp"
#include "signbal/coxeter.hpp"
#include "signbal/errors.hpp"
#include "signbal/field.hpp"
#include "signbal/matrix.hpp"
#include "signbal/qseries.hpp"
#include "signbal/verify.hpp"

using json = nlohmann::ordered_json;
using namespace signbal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

/// Desk-scale ceiling for exhaustive GL work; larger orders are refused
/// up front instead of running for hours.
const BigInt kMaxEnumeration = 100000000;

struct Options {
  std::string group = "gl";
  int n = 1;
  std::string field = "2";
  std::string stat;  // empty = fieldsum for gl, ones for sp
  std::string method = "brute";
  std::string out = "json";
  std::string cache_dir;
  int workers = 0;  // 0 = all available
  bool quick = false;
};

int effective_workers(int w) {
  if (w > 0) return w;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

EnumerationCache make_cache(const std::string& dir) {
  if (!dir.empty()) return EnumerationCache(dir);
  if (const char* env = std::getenv("SIGNBAL_CACHE"); env && *env)
    return EnumerationCache(env);
  return EnumerationCache::disabled();
}

std::string dec(const BigInt& v) { return v.str(); }

json coeff_strings(const IntPoly& p) {
  json a = json::array();
  for (const BigInt& c : p.coeffs()) a.push_back(dec(c));
  if (a.empty()) a.push_back("0");
  return a;
}

json mat_rows(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

Stat parse_stat(const Options& o, unsigned q) {
  std::string s = o.stat;
  if (s.empty()) s = (o.group == "sp") ? "ones" : "fieldsum";
  if (s == "ones") {
    if (q != 2)
      throw WrongFieldError("stat ones is defined over F_2 only");
    return Stat::Ones;
  }
  if (s == "fieldsum") {
    if (o.group == "sp")
      throw NotSupportedError(
          "the symplectic statistic is ones; fieldsum is GL only");
    return Stat::FieldSum;
  }
  throw ParseError("unknown stat: " + s);
}

Field field_arg(const Options& o) {
  if (o.group == "sp") {
    Field f = Field::parse(o.field.empty() ? "2" : o.field);
    if (f.q() != 2)
      throw NotSupportedError("the symplectic group is implemented over F_2");
    return f;
  }
  return Field::parse(o.field);
}

void guard_gl_scale(int n, const Field& f) {
  if (n < 1) throw OutOfRangeError("n must be positive");
  if (order_gl(unsigned(n), f.q()) > kMaxEnumeration)
    throw NotSupportedError("group order exceeds the desk-scale ceiling");
}

json cross_check(const std::string& name, const std::string& lhs,
                 const std::string& rhs) {
  return json{{"name", name}, {"lhs", lhs}, {"rhs", rhs},
              {"pass", lhs == rhs}};
}

// ---- verbs ----------------------------------------------------------------

int run_verify(const Options& o) {
  VerifyOptions vo;
  vo.quick = o.quick;
  vo.workers = effective_workers(o.workers);
  vo.cache = make_cache(o.cache_dir);
  std::vector<VerifyCheck> checks = run_verify_suite(vo);
  if (o.out == "json") {
    json doc;
    doc["quick"] = o.quick;
    json arr = json::array();
    for (const VerifyCheck& c : checks)
      arr.push_back(json{{"name", c.name},
                         {"criterion", c.criterion},
                         {"expected", c.expected},
                         {"computed", c.computed},
                         {"pass", c.pass}});
    doc["checks"] = std::move(arr);
    doc["passed"] = all_passed(checks);
    emit(doc);
  } else if (o.out == "text") {
    std::cout << format_verify_text(checks);
  } else {
    throw ParseError("verify supports --out json or text");
  }
  return all_passed(checks) ? kExitOk : kExitMismatch;
}

int run_genfun(const Options& o) {
  Field f = field_arg(o);
  Stat stat = parse_stat(o, f.q());
  EnumerationCache cache = make_cache(o.cache_dir);
  int workers = effective_workers(o.workers);

  GenFun gf = [&] {
    if (o.group == "sp") {
      SpGroup group(o.n, workers, cache);
      return gen_fun_sp(group, workers);
    }
    guard_gl_scale(o.n, f);
    return gen_fun_gl(o.n, f, stat, workers, {}, cache);
  }();

  const unsigned q = f.q();
  BigInt eval = eval_at_nontrivial_root(gf.poly, q);
  BigInt order = o.group == "sp" ? order_sp(unsigned(o.n), 2)
                                 : order_gl(unsigned(o.n), q);
  BigInt at_one = gf.poly.eval(1);

  if (o.out == "csv") {
    IntPoly red = gf.poly.reduce_mod_cyclic(q);
    std::cout << "residue,count\n";
    for (unsigned i = 0; i < q; ++i)
      std::cout << i << ',' << dec(red.coeff(i)) << '\n';
    return kExitOk;
  }
  if (o.out == "text") {
    std::cout << "group=" << o.group << " n=" << o.n
              << " field=" << f.descriptor() << " stat=" << stat_name(stat)
              << '\n';
    std::cout << "coefficients=";
    const auto& cs = gf.poly.coeffs();
    for (size_t i = 0; i < cs.size(); ++i)
      std::cout << (i ? "," : "") << dec(cs[i]);
    if (cs.empty()) std::cout << "0";
    std::cout << '\n';
    std::cout << "evaluation_at_root=" << dec(eval) << '\n';
    std::cout << "total=" << dec(at_one) << '\n';
    return kExitOk;
  }
  if (o.out != "json") throw ParseError("unknown output format: " + o.out);

  json doc;
  doc["group"] = o.group;
  doc["n"] = o.n;
  doc["field"] = f.descriptor();
  doc["stat"] = stat_name(stat);
  doc["coefficients"] = coeff_strings(gf.poly);
  doc["evaluation"] = json{{"q", q}, {"value", dec(eval)}};
  doc["method"] = "brute";
  json cc = json::array();
  cc.push_back(cross_check("eval_at_one_equals_order", dec(at_one),
                           dec(order)));
  if (stat == Stat::FieldSum) {
    bool deg_ok = gf.poly.is_zero() || gf.poly.degree() < q;
    cc.push_back(cross_check("degree_below_field_size",
                             deg_ok ? "true" : "false", "true"));
  }
  doc["cross_checks"] = std::move(cc);
  emit(doc);
  bool ok = true;
  for (const json& c : doc["cross_checks"])
    if (!c["pass"].get<bool>()) ok = false;
  return ok ? kExitOk : kExitMismatch;
}

int run_imbalance(const Options& o) {
  Field f = field_arg(o);
  EnumerationCache cache = make_cache(o.cache_dir);
  int workers = effective_workers(o.workers);
  const bool sp = o.group == "sp";
  const unsigned q = f.q();
  Stat stat = sp ? Stat::Ones : Stat::FieldSum;

  if (o.method != "brute" && o.method != "structured" && o.method != "both")
    throw ParseError("unknown method: " + o.method);

  bool want_brute = o.method != "structured";
  bool want_structured = o.method != "brute";

  BigInt brute = 0, structured = 0;
  if (want_brute) {
    if (sp) {
      SpGroup group(o.n, workers, cache);
      brute = imbalance_sp_brute(group, workers);
    } else {
      guard_gl_scale(o.n, f);
      brute = imbalance_gl_brute(o.n, f, workers, {}, cache);
    }
  }
  if (want_structured)
    structured = sp ? imbalance_sp_structured(o.n)
                    : imbalance_gl_structured(o.n, q);
  BigInt closed =
      sp ? imbalance_sp_closed(o.n) : imbalance_gl_closed(o.n, q);

  BigInt value = want_brute ? brute : structured;
  json cc = json::array();
  if (o.method == "both") {
    cc.push_back(
        cross_check("brute_equals_structured", dec(brute), dec(structured)));
    cc.push_back(cross_check("matches_closed_form", dec(brute), dec(closed)));
  }
  bool ok = true;
  for (const json& c : cc)
    if (!c["pass"].get<bool>()) ok = false;

  if (o.out == "text") {
    std::cout << "imbalance=" << dec(value) << '\n';
    for (const json& c : cc)
      std::cout << c["name"].get<std::string>() << " lhs="
                << c["lhs"].get<std::string>() << " rhs="
                << c["rhs"].get<std::string>()
                << (c["pass"].get<bool>() ? " ok" : " FAIL") << '\n';
  } else if (o.out == "json") {
    json doc;
    doc["group"] = o.group;
    doc["n"] = o.n;
    doc["field"] = f.descriptor();
    doc["stat"] = stat_name(stat);
    doc["method"] = o.method;
    doc["value"] = dec(value);
    doc["cross_checks"] = std::move(cc);
    emit(doc);
  } else {
    throw ParseError("imbalance supports --out json or text");
  }
  return ok ? kExitOk : kExitMismatch;
}

int run_decompose(const Options& o) {
  Mat g = read_mat(std::cin);
  if (!o.field.empty()) {
    Field f = Field::parse(o.field);
    if (f != g.field())
      throw ParseError("--field disagrees with the matrix header");
  }
  json doc;
  doc["group"] = o.group;
  doc["n"] = o.group == "sp" ? g.rows() / 2 : g.rows();
  doc["field"] = g.field().descriptor();
  if (o.group == "sp") {
    SpFactorization fa = decompose_sp(g);
    doc["pi"] = fa.pi.to_string();
    doc["sigma"] = fa.sigma.to_string();
    doc["u"] = mat_rows(fa.u);
    doc["b"] = mat_rows(fa.b);
    if (o.out == "text") {
      std::cout << "pi " << fa.pi.to_string() << '\n'
                << "sigma " << fa.sigma.to_string() << '\n'
                << "u\n" << to_text(fa.u) << "b\n" << to_text(fa.b);
      return kExitOk;
    }
  } else if (o.group == "gl") {
    BruhatFactorization fa = decompose(g);
    doc["pi"] = fa.pi.to_string();
    doc["u"] = mat_rows(fa.u);
    doc["b"] = mat_rows(fa.b);
    if (o.out == "text") {
      std::cout << "pi " << fa.pi.to_string() << '\n'
                << "u\n" << to_text(fa.u) << "b\n" << to_text(fa.b);
      return kExitOk;
    }
  } else {
    throw ParseError("unknown group: " + o.group);
  }
  if (o.out != "json") throw ParseError("decompose supports --out json or text");
  emit(doc);
  return kExitOk;
}

int run_enumerate(const Options& o) {
  Field f = field_arg(o);
  EnumerationCache cache = make_cache(o.cache_dir);
  int workers = effective_workers(o.workers);
  BigInt count = 0;
  if (o.group == "sp") {
    SpGroup group(o.n, workers, cache);
    count = BigInt(group.size());
  } else {
    guard_gl_scale(o.n, f);
    if (cache.enabled()) {
      count = BigInt(enumerate_gl_rows(o.n, f, cache).size() / size_t(o.n));
    } else {
      GlEnumerator en(o.n, f);
      Mat g(f, o.n, o.n);
      while (en.next(g)) ++count;
    }
  }
  if (o.out == "text") {
    std::cout << "count=" << dec(count) << '\n';
  } else if (o.out == "json") {
    json doc;
    doc["group"] = o.group;
    doc["n"] = o.n;
    doc["field"] = f.descriptor();
    doc["count"] = dec(count);
    emit(doc);
  } else {
    throw ParseError("enumerate supports --out json or text");
  }
  return kExitOk;
}

int run_csp(const Options& o) {
  Field f = field_arg(o);
  EnumerationCache cache = make_cache(o.cache_dir);
  int workers = effective_workers(o.workers);
  CspAudit a = [&] {
    if (o.group == "sp") {
      SpGroup group(o.n, workers, cache);
      return csp_audit_sp(group);
    }
    guard_gl_scale(o.n, f);
    return csp_audit_gl(o.n, f);
  }();

  if (o.out == "text") {
    std::cout << "group=" << o.group << " n=" << o.n
              << " field=" << f.descriptor() << " stat=" << stat_name(a.stat)
              << '\n';
    std::cout << "odd_elements=" << dec(a.odd_elements)
              << " total_orbits=" << dec(a.total_orbits)
              << " free_orbits=" << dec(a.free_orbits) << '\n';
    for (const CspPowerRow& r : a.powers)
      std::cout << "power=" << r.power << " fixed=" << dec(r.fixed)
                << " evaluation="
                << (r.evaluable ? dec(r.evaluation) : std::string("NA"))
                << " cond1_literal=" << (r.cond1_literal ? 1 : 0)
                << " cond1_abs=" << (r.cond1_abs ? 1 : 0) << '\n';
    std::cout << "cond1_literal=" << (a.cond1_literal_all ? 1 : 0)
              << " cond1_abs_nontrivial=" << (a.cond1_abs_nontrivial_all ? 1 : 0)
              << " cond2=" << (a.cond2 ? 1 : 0)
              << " type_c_extrapolated=" << (a.type_c_extrapolated ? 1 : 0)
              << '\n';
    return kExitOk;
  }
  if (o.out != "json") throw ParseError("csp supports --out json or text");

  json doc;
  doc["group"] = o.group;
  doc["n"] = o.n;
  doc["field"] = f.descriptor();
  doc["stat"] = stat_name(a.stat);
  doc["generating_function"] = coeff_strings(a.gen_poly);
  json av = json::array();
  for (const BigInt& c : a.a) av.push_back(dec(c));
  doc["a_mod_cyclic"] = std::move(av);
  json pw = json::array();
  for (const CspPowerRow& r : a.powers) {
    json row;
    row["power"] = r.power;
    row["fixed"] = dec(r.fixed);
    row["evaluable"] = r.evaluable;
    if (r.evaluable) row["evaluation"] = dec(r.evaluation);
    row["cond1_literal"] = r.cond1_literal;
    row["cond1_abs"] = r.cond1_abs;
    pw.push_back(std::move(row));
  }
  doc["powers"] = std::move(pw);
  json census = json::array();
  for (const auto& [size, cnt] : a.orbit_census)
    census.push_back(json{{"size", size}, {"count", dec(cnt)}});
  doc["orbit_census"] = std::move(census);
  doc["odd_elements"] = dec(a.odd_elements);
  doc["total_orbits"] = dec(a.total_orbits);
  doc["free_orbits"] = dec(a.free_orbits);
  json ce = json::array();
  for (const BigInt& c : a.cond2_expected) ce.push_back(dec(c));
  doc["cond2_expected"] = std::move(ce);
  doc["verdicts"] = json{{"cond1_literal", a.cond1_literal_all},
                         {"cond1_abs_nontrivial", a.cond1_abs_nontrivial_all},
                         {"cond2", a.cond2}};
  doc["type_c_extrapolated"] = a.type_c_extrapolated;
  emit(doc);
  return kExitOk;
}

int run_field_info(const Options& o) {
  Field f = Field::parse(o.field);
  if (o.out == "text") {
    std::cout << "descriptor=" << f.descriptor() << '\n'
              << "p=" << f.p() << " k=" << f.k() << " q=" << f.q() << '\n';
    std::cout << "modulus=";
    const auto& m = f.modulus();
    for (size_t i = 0; i < m.size(); ++i)
      std::cout << (i ? "," : "") << m[i];
    std::cout << " (constant term first)\n";
    return kExitOk;
  }
  if (o.out != "json") throw ParseError("field-info supports --out json or text");
  json doc;
  doc["descriptor"] = f.descriptor();
  doc["p"] = f.p();
  doc["k"] = f.k();
  doc["q"] = f.q();
  doc["modulus"] = f.modulus();
  if (f.q() <= 16) {
    json add = json::array(), mul = json::array();
    for (unsigned i = 0; i < f.q(); ++i) {
      json ra = json::array(), rm = json::array();
      for (unsigned j = 0; j < f.q(); ++j) {
        ra.push_back(f.add(i, j));
        rm.push_back(f.mul(i, j));
      }
      add.push_back(std::move(ra));
      mul.push_back(std::move(rm));
    }
    doc["add_table"] = std::move(add);
    doc["mul_table"] = std::move(mul);
  }
  emit(doc);
  return kExitOk;
}

void attach_common(CLI::App* cmd, Options& o, bool with_stat,
                   bool with_method) {
  cmd->add_option("--group", o.group, "gl or sp")
      ->check(CLI::IsMember({"gl", "sp"}));
  cmd->add_option("--n", o.n, "matrix size (GL) or half-dimension (Sp)");
  cmd->add_option("--field", o.field, "field descriptor: p, p^k or p^k/c0,c1,...");
  if (with_stat)
    cmd->add_option("--stat", o.stat, "ones or fieldsum")
        ->check(CLI::IsMember({"ones", "fieldsum"}));
  if (with_method)
    cmd->add_option("--method", o.method, "brute, structured or both")
        ->check(CLI::IsMember({"brute", "structured", "both"}));
  cmd->add_option("--out", o.out, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--cache-dir", o.cache_dir,
                  "enumeration cache directory (or env SIGNBAL_CACHE)");
  cmd->add_option("--workers", o.workers,
                  "worker threads; 0 = all available");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign balance of Bruhat cosets in finite matrix groups"};
  app.require_subcommand(1);

  Options o;
  CLI::App* verify = app.add_subcommand("verify", "run the whole check battery");
  verify->add_flag("--quick", o.quick, "skip the slowest cases");
  verify->add_option("--out", o.out, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--cache-dir", o.cache_dir,
                     "enumeration cache directory (or env SIGNBAL_CACHE)");
  verify->add_option("--workers", o.workers, "worker threads; 0 = all available");

  CLI::App* genfun =
      app.add_subcommand("genfun", "statistic generating function of a group");
  attach_common(genfun, o, true, false);

  CLI::App* imbalance = app.add_subcommand(
      "imbalance", "root-of-unity evaluation of the statistic");
  attach_common(imbalance, o, false, true);

  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "Bruhat factorization of a matrix read from stdin");
  decompose_cmd->add_option("--group", o.group, "gl or sp")
      ->check(CLI::IsMember({"gl", "sp"}));
  decompose_cmd->add_option("--field", o.field,
                            "must match the matrix header when given");
  decompose_cmd->add_option("--out", o.out, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* enumerate_cmd =
      app.add_subcommand("enumerate", "count (and cache) group elements");
  attach_common(enumerate_cmd, o, false, false);

  CLI::App* csp = app.add_subcommand("csp", "cyclic sieving audit report");
  attach_common(csp, o, false, false);

  CLI::App* field_info = app.add_subcommand("field-info", "describe a field");
  field_info->add_option("--field", o.field,
                         "field descriptor: p, p^k or p^k/c0,c1,...");
  field_info->add_option("--out", o.out, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  // decompose takes the field from the matrix header; the flag is a
  // cross-check there, so only that verb may leave it empty.
  if (argc > 1 && std::string(argv[1]) == "decompose") o.field.clear();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(o);
    if (genfun->parsed()) return run_genfun(o);
    if (imbalance->parsed()) return run_imbalance(o);
    if (decompose_cmd->parsed()) return run_decompose(o);
    if (enumerate_cmd->parsed()) return run_enumerate(o);
    if (csp->parsed()) return run_csp(o);
    if (field_info->parsed()) return run_field_info(o);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotSupportedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutOfRangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const WrongFieldError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotPrimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ReducibleModulusError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ShapeMismatchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotSymplecticError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotCanonicalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DivisionByZeroError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CacheError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
