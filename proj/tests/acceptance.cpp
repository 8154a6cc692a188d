// Acceptance gate: one line per criterion, exact integer identities
// throughout, plus the timing and determinism budget on the command line
// tool.  Exit status is the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "signbal/verify.hpp"

using namespace signbal;
using Clock = std::chrono::steady_clock;

namespace {

const char* kDescription[11] = {
    "statistic polynomials match the q-factorial",
    "enumeration counts match the order formulas",
    "factorization round trips and cell sizes",
    "general linear imbalance, three ways",
    "residue histograms uniform off zero",
    "symplectic imbalance and parity split",
    "coset dichotomy and odd-coset counts",
    "imbalance survives residue relabeling",
    "symplectic form, factors, and embedding",
    "cyclic action orbits and sieving report",
    "wall-clock budget and byte determinism",
};

struct CliRun {
  bool ok;
  std::string out;
  double seconds;
};

CliRun run_cli(const std::string& cmd) {
  Clock::time_point t0 = Clock::now();
  FILE* p = ::popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return {false, "", 0.0};
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int raw = ::pclose(p);
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  bool ok = WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
  return {ok, out, dt};
}

}  // namespace

int main(int argc, char** argv) {
  VerifyOptions opt;
  opt.quick = false;
  opt.workers = int(std::thread::hardware_concurrency());
  if (opt.workers < 1) opt.workers = 1;

  Clock::time_point t0 = Clock::now();
  std::vector<VerifyCheck> checks = run_verify_suite(opt);
  double full_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  std::map<int, std::pair<int, int>> tally;  // criterion -> (passed, total)
  std::vector<std::string> details;
  for (const VerifyCheck& c : checks) {
    auto& [passed, total] = tally[c.criterion];
    ++total;
    passed += c.pass;
    if (!c.pass)
      details.push_back("  criterion " + std::to_string(c.criterion) + " " +
                        c.name + ": expected=" + c.expected +
                        " computed=" + c.computed);
  }

  int failed = 0;
  for (int k = 1; k <= 10; ++k) {
    auto [passed, total] = tally[k];
    bool ok = total > 0 && passed == total;
    failed += !ok;
    std::printf("%s %2d %s (%d/%d checks)\n", ok ? "PASS" : "FAIL", k,
                kDescription[k - 1], passed, total);
  }

  // timing and determinism of the installed command line tool
  bool ok11 = full_seconds < 120.0;
  std::string detail11;
  if (!ok11)
    detail11 = "  full suite took " + std::to_string(full_seconds) + " s";
  if (argc > 1 && std::filesystem::exists(argv[1])) {
    std::string cli = argv[1];
    CliRun a = run_cli(cli + " verify --quick --out text");
    CliRun b = run_cli(cli + " verify --quick --out text");
    if (!a.ok || !b.ok) {
      ok11 = false;
      detail11 += "  quick verification exited nonzero";
    } else {
      if (a.out != b.out) {
        ok11 = false;
        detail11 += "  repeated runs differ";
      }
      if (a.seconds >= 5.0) {
        ok11 = false;
        detail11 += "  quick run took " + std::to_string(a.seconds) + " s";
      }
    }
  } else {
    ok11 = false;
    detail11 += "  command line tool not found";
  }
  failed += !ok11;
  std::printf("%s %2d %s (full %.1f s)\n", ok11 ? "PASS" : "FAIL", 11,
              kDescription[10], full_seconds);
  if (!ok11 && !detail11.empty()) std::printf("%s\n", detail11.c_str());

  for (const std::string& d : details) std::printf("%s\n", d.c_str());
  return failed;
}
