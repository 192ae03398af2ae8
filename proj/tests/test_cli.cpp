// End-to-end checks of the command-line tool: output shapes and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cmd(const std::string& cmd) {
  std::string full = cmd + " 2>&1";
  FILE* p = popen(full.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string gsec() { return GSEC_BINARY; }
std::string samples() { return GSEC_SAMPLES_DIR; }

std::string temp_program(const std::string& name, const std::string& text) {
  std::string path = std::string("/tmp/gsec_test_") + name + ".gsec";
  std::ofstream(path) << text;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("check accepts the indirect flow and reports its type") {
  RunResult r = run_cmd(gsec() + " check " + samples() + "/channels.gsec");
  CHECK(r.code == 0);
  CHECK(r.out == ": Bool@L\n");
}

TEST_CASE("check rejects the direct flow with exit 1") {
  RunResult r = run_cmd(gsec() + " check " + samples() + "/direct.gsec");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "type error"));
  CHECK(contains(r.out, "[app]"));
}

TEST_CASE("parse errors exit 3") {
  std::string empty = temp_program("empty", "");
  RunResult r = run_cmd(gsec() + " check " + empty);
  CHECK(r.code == 3);
  CHECK(contains(r.out, "parse error"));
  RunResult missing = run_cmd(gsec() + " check /tmp/gsec_no_such_file.gsec");
  CHECK(missing.code == 3);
}

TEST_CASE("elab prints the evidence-annotated program") {
  RunResult r = run_cmd(gsec() + " elab " + samples() + "/channels.gsec");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(<(Bool@L -> Bool@L)@L, (Bool@L -> Bool@L)@L>(\\x:Bool@L. x)@L) "
        "(<Bool@L, Bool@L>((<(Bool@? -> Bool@?)@L, (Bool@? -> Bool@?)@L>(\\x:Bool@?. x)@L) "
        "(<Bool@H, Bool@H>false@H)))\n");
}

TEST_CASE("run reports the failed combination with exit 2") {
  RunResult r = run_cmd(gsec() + " run " + samples() + "/channels.gsec");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "ERROR: cannot combine <Bool@H, Bool@H> with <Bool@L, Bool@L>"));
}

TEST_CASE("run --trace shows the numbered steps") {
  RunResult r = run_cmd(gsec() + " run --trace " + samples() + "/channels.gsec");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "0: "));
  CHECK(contains(r.out, "1: --> "));
  CHECK(contains(r.out, "2: -->c "));
  CHECK(contains(r.out, "3: -->c error"));
}

TEST_CASE("run prints plain values with exit 0") {
  std::string f = temp_program("value", "true@L\n");
  RunResult r = run_cmd(gsec() + " run " + f);
  CHECK(r.code == 0);
  CHECK(r.out == "VALUE: true@L\n");
  std::string g = temp_program("and", "true@L && false@L\n");
  RunResult s = run_cmd(gsec() + " run " + g);
  CHECK(s.code == 0);
  CHECK(s.out == "VALUE: <Bool@L, Bool@L>false@L :: Bool@L\n");
}

TEST_CASE("lattices load from config files and the environment") {
  std::string cfg = temp_program("lattice", "");
  std::ofstream(cfg) << R"({"elements":["Pub","Sec"],"order":[["Pub","Sec"]]})";
  std::string f = temp_program("pub", "true@Sec\n");
  RunResult r = run_cmd(gsec() + " check --lattice " + cfg + " " + f);
  CHECK(r.code == 0);
  CHECK(r.out == ": Bool@Sec\n");
  RunResult env = run_cmd("GSEC_LATTICE=" + cfg + " " + gsec() + " check " + f);
  CHECK(env.code == 0);
  RunResult bad = run_cmd(gsec() + " check --lattice two-point " + f);
  CHECK(bad.code == 1);  // Sec is not a two-point label
  RunResult diamond = run_cmd(gsec() + " check --lattice diamond " +
                              temp_program("dia", "true@M1 && false@M2\n"));
  CHECK(diamond.code == 0);
  CHECK(diamond.out == ": Bool@Top\n");
}

TEST_CASE("props runs a named suite") {
  RunResult r = run_cmd(gsec() + " props --suite galois --suite transitivity");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "PROP galois PASS"));
  CHECK(contains(r.out, "PROP transitivity PASS"));
  CHECK(contains(r.out, "all properties hold"));
}

TEST_CASE("props usage errors exit 3") {
  RunResult r = run_cmd(gsec() + " props --suite no-such-suite");
  CHECK(r.code == 3);
  CHECK(contains(r.out, "usage error"));
  RunResult d = run_cmd(gsec() + " props --depth 9");
  CHECK(d.code == 3);
  RunResult unknown = run_cmd(gsec() + " frobnicate");
  CHECK(unknown.code == 3);
}
