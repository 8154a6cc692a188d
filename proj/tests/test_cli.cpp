#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status;
  std::string out;
};

// Runs the tool through the shell, captures stdout, drops stderr.
RunResult run(const std::string& args, const std::string& stdin_text = "",
              const std::string& env = "") {
  std::string cmd = env;
  if (!stdin_text.empty()) cmd += "printf '" + stdin_text + "' | ";
  cmd += std::string(SIGNBAL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int raw = ::pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("quick verification passes") {
  RunResult r = run("verify --quick --out text");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "PASS"));
  CHECK_FALSE(contains(r.out, "FAIL"));
}

TEST_CASE("imbalance agrees across methods") {
  RunResult gl = run("imbalance --group gl --n 3 --field 2 --method both");
  CHECK(gl.status == 0);
  CHECK(contains(gl.out, "\"value\": \"-24\""));
  CHECK(contains(gl.out, "brute_equals_structured"));
  CHECK(contains(gl.out, "matches_closed_form"));
  CHECK_FALSE(contains(gl.out, "\"pass\": false"));

  RunResult sp = run("imbalance --group sp --n 2 --method both --out text");
  CHECK(sp.status == 0);
  CHECK(contains(sp.out, "imbalance=-48"));
  CHECK_FALSE(contains(sp.out, "FAIL"));

  RunResult big = run("imbalance --group gl --n 9 --field 2^2 --method structured");
  CHECK(big.status == 0);
  CHECK(contains(big.out, "\"method\": \"structured\""));
}

TEST_CASE("generating function output shapes") {
  RunResult text = run("genfun --group gl --n 2 --field 2 --stat ones --out text");
  CHECK(text.status == 0);
  CHECK(contains(text.out, "coefficients=0,0,2,4"));
  CHECK(contains(text.out, "evaluation_at_root=-2"));
  CHECK(contains(text.out, "total=6"));

  RunResult csv = run("genfun --group gl --n 3 --field 2 --out csv");
  CHECK(csv.status == 0);
  CHECK(csv.out == "residue,count\n0,72\n1,96\n");

  RunResult js = run("genfun --group sp --n 1");
  CHECK(js.status == 0);
  CHECK(contains(js.out, "\"stat\": \"ones\""));
  CHECK(contains(js.out, "\"field\": \"2^1\""));
}

TEST_CASE("factorization round trip through text") {
  RunResult r = run("decompose --out text", "2 1 2 2\\n1 1\\n1 0\\n");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "pi 1 2"));

  RunResult js = run("decompose", "2 1 2 2\\n1 1\\n1 0\\n");
  CHECK(js.status == 0);
  CHECK(contains(js.out, "\"pi\": \"1 2\""));

  RunResult sing = run("decompose", "2 1 2 2\\n0 0\\n0 0\\n");
  CHECK(sing.status == 1);
  CHECK(sing.out.empty());
}

TEST_CASE("enumeration counts") {
  RunResult r = run("enumerate --group gl --n 2 --field 3 --out text");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "count=48"));
  RunResult sp = run("enumerate --group sp --n 2 --out text");
  CHECK(sp.status == 0);
  CHECK(contains(sp.out, "count=720"));
}

TEST_CASE("field descriptions") {
  RunResult r = run("field-info --field 2^2 --out text");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "modulus=1,1,1"));
  RunResult custom = run("field-info --field 3^2/2,1,1");
  CHECK(custom.status == 0);
  CHECK(contains(custom.out, "\"descriptor\": \"3^2/2,1,1\""));
  CHECK(contains(custom.out, "\"q\": 9"));
  RunResult deflt = run("field-info --field 3^2");
  CHECK(contains(deflt.out, "\"descriptor\": \"3^2\""));
}

TEST_CASE("sieving report") {
  RunResult r = run("csp --group gl --n 2 --field 2 --out text");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "odd_elements=2"));
}

TEST_CASE("output is deterministic") {
  for (const char* cmd :
       {"genfun --group gl --n 3 --field 2", "verify --quick",
        "csp --group gl --n 2 --field 3", "enumerate --group sp --n 1"}) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);
  }
  RunResult w1 = run("genfun --group gl --n 3 --field 2 --workers 1");
  RunResult w4 = run("genfun --group gl --n 3 --field 2 --workers 4");
  CHECK(w1.out == w4.out);
}

TEST_CASE("cache environment variable is honored") {
  fs::path dir = fs::temp_directory_path() / "signbal_cli_cache_test";
  fs::remove_all(dir);
  std::string env = "SIGNBAL_CACHE=" + dir.string() + " ";
  RunResult cold = run("enumerate --group gl --n 2 --field 2", "", env);
  CHECK(cold.status == 0);
  CHECK(fs::exists(dir / "gl_n2_2^1.sbal"));
  RunResult warm = run("enumerate --group gl --n 2 --field 2", "", env);
  CHECK(warm.out == cold.out);
  RunResult flag = run("enumerate --group gl --n 2 --field 2 --cache-dir " +
                       (dir / "flagged").string());
  CHECK(flag.status == 0);
  CHECK(fs::exists(dir / "flagged" / "gl_n2_2^1.sbal"));
  CHECK(flag.out == cold.out);
  fs::remove_all(dir);
}

TEST_CASE("bad input exits with the usage code") {
  CHECK(run("frobnicate").status == 1);
  CHECK(run("imbalance --group gl --n 0 --field 2").status == 1);
  CHECK(run("imbalance --group gl --n 2 --field 6").status == 1);
  CHECK(run("genfun --group gl --n 2 --field 3 --stat ones").status == 1);
  CHECK(run("genfun --group sp --n 1 --stat fieldsum").status == 1);
  CHECK(run("imbalance --group sp --n 2 --field 3").status == 1);
  CHECK(run("imbalance --group gl --n 12 --field 5 --method brute").status == 1);
  CHECK(run("field-info --field 2^2/1,1").status == 1);
  CHECK(run("genfun --group gl --n 2 --field 2 --out yaml").status == 1);
}
