#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef DCM_CLI_PATH
#error "DCM_CLI_PATH must point at the built binary"
#endif
#ifndef DCM_SNAPSHOT_DIR
#error "DCM_SNAPSHOT_DIR must point at tests/snapshots"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(DCM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string snapshot(const std::string& name) {
  std::ifstream in(std::string(DCM_SNAPSHOT_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("committed snapshots are byte-stable") {
  auto classify = run_cli("classify --n 5 --r 2");
  CHECK(classify.exit_code == 0);
  CHECK(classify.out == snapshot("classify_n5_r2.json"));

  auto reflex = run_cli("reflex --n 6 --set 0,3");
  CHECK(reflex.exit_code == 0);
  CHECK(reflex.out == snapshot("reflex_n6_s03.json"));

  auto verify = run_cli("verify --n 7 --suite all");
  CHECK(verify.exit_code == 0);
  CHECK(verify.out == snapshot("verify_n7.json"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("classify --r 2").exit_code == 2);          // missing --n
  CHECK(run_cli("classify --n 2 --r 1").exit_code == 2);    // n below range
  CHECK(run_cli("classify --n 5 --r 9").exit_code == 2);    // r > n
  CHECK(run_cli("frobnicate --n 5").exit_code == 2);        // unknown subcommand
  CHECK(run_cli("decompose --n 5 --set 0,7").exit_code == 2);  // set out of range
  CHECK(run_cli("decompose --n 5 --set 0,x").exit_code == 2);
  CHECK(run_cli("classify --n 5 --r 2 --format yaml").exit_code == 2);
  CHECK(run_cli("verify --n 7 --suite nonsense").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);                        // subcommand required
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("verification subcommands exit 0 on pass") {
  CHECK(run_cli("verify --n 4").exit_code == 0);
  CHECK(run_cli("ledger --n 6 --set 0,3").exit_code == 0);  // printed delta is reported, not fatal
  CHECK(run_cli("average --n 5 --r 2").exit_code == 0);
}

TEST_CASE("output is deterministic across worker counts and runs") {
  auto a = run_cli("verify --n 6 --parallel 1");
  auto b = run_cli("verify --n 6 --parallel 4");
  auto c = run_cli("verify --n 6 --parallel 4");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
}

TEST_CASE("timing is opt-in for JSON") {
  auto bare = run_cli("classify --n 5 --r 2");
  CHECK(bare.out.find("wall_ms") == std::string::npos);
  auto timed = run_cli("classify --n 5 --r 2 --timing");
  CHECK(timed.out.find("wall_ms") != std::string::npos);
}

TEST_CASE("table format renders") {
  auto t = run_cli("classify --n 5 --r 2 --format table");
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("orbit") != std::string::npos);
  CHECK(t.out.find("0,1") != std::string::npos);
  auto lt = run_cli("ledger --n 4 --set 0,1 --format table");
  CHECK(lt.out.find("published (FAIL)") != std::string::npos);
  CHECK(lt.out.find("certified (pass)") != std::string::npos);
  CHECK(lt.out.find("delta published - oracle") != std::string::npos);
}
