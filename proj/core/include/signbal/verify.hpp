#pragma once

#include <string>
#include <vector>

#include "signbal/cache.hpp"

namespace signbal {

/// One executed check.  Values are preformatted, space-free strings so a
/// report line always splits into exactly four fields.
struct VerifyCheck {
  std::string name;
  int criterion;  // which acceptance bucket the check belongs to, 1..10
  std::string expected;
  std::string computed;
  bool pass;
};

struct VerifyOptions {
  bool quick = false;  // skip GL(3,3) and Sp n = 3
  int workers = 1;
  EnumerationCache cache = EnumerationCache::disabled();
};

/// Runs the whole battery.  A mathematical mismatch fails its check rather
/// than throwing; an exception inside a section is converted into a failed
/// check naming the section, so the report is always complete.
std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& opts);

bool all_passed(const std::vector<VerifyCheck>& checks);

/// "PASS <name> expected=<v> computed=<v>", one line per check.
std::string format_verify_text(const std::vector<VerifyCheck>& checks);

}  // namespace signbal
