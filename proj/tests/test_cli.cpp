#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cusplink/catalog.hpp"
#include "cusplink/cli.hpp"

using namespace cusplink;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("euler subcommand") {
  RunResult r = run_cli({"euler", "--m", "1", "--k", "1", "--json"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"chi\":12}\n");
  RunResult t = run_cli({"euler", "--m", "2", "--k", "1,2"});
  CHECK(t.code == 0);
  CHECK(t.out == "chi = 13\n");
  RunResult bad = run_cli({"euler", "--m", "4", "--k", "1,1,1,1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("NoSuchSingularity") != std::string::npos);
}

TEST_CASE("monodromy subcommand") {
  RunResult r = run_cli({"monodromy", "--pqr", "2,3,7"});
  CHECK(r.code == 0);
  CHECK(r.out == "[[33,-20],[5,-3]]\n");
  RunResult nil = run_cli({"monodromy", "--pqr", "2,3,6"});
  CHECK(nil.code == 2);
  CHECK(nil.err.find("NotHyperbolicCusp") != std::string::npos);
  RunResult garbage = run_cli({"monodromy", "--pqr", "x,y,z"});
  CHECK(garbage.code == 2);
}

TEST_CASE("mori, cycle, cf, unit subcommands") {
  RunResult mori = run_cli({"mori", "--m", "1", "--k", "1"});
  CHECK(mori.code == 0);
  CHECK(mori.out == "[[1,1],[1,2]]\n");
  RunResult nil = run_cli({"mori", "--m", "1", "--k", "0"});
  CHECK(nil.code == 2);
  CHECK(nil.err.find("NilCase") != std::string::npos);

  RunResult cyc = run_cli({"cycle", "--matrix", "11,-4,3,-1"});
  CHECK(cyc.code == 0);
  CHECK(cyc.out == "3,4\n");
  RunResult notsl2 = run_cli({"cycle", "--matrix", "1,0,0,2"});
  CHECK(notsl2.code == 2);

  RunResult cf = run_cli({"cf", "--cycle", "3", "--range", "-1,3", "--json"});
  CHECK(cf.code == 0);
  CHECK(cf.out.find("\"unit\": \"3/2 + -1/2*sqrt(5)\"") != std::string::npos);

  RunResult unit = run_cli({"unit", "--cycle", "3,4", "--json"});
  CHECK(unit.code == 0);
  CHECK(unit.out.find("\"norm\":\"1\"") != std::string::npos);
}

TEST_CASE("report subcommand") {
  RunResult r = run_cli({"report", "--pqr", "2,3,7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("matched A_{1,(1)}") != std::string::npos);
  RunResult j = run_cli({"report", "--pqr", "3,3,4", "--json"});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"m\": 3") != std::string::npos);
  RunResult j2 = run_cli({"report", "--pqr", "3,3,4", "--json"});
  CHECK(j.out == j2.out);
}

TEST_CASE("verify subcommand exit codes") {
  RunResult ok = run_cli({"verify", "all", "--cycle", "3", "--samples", "120", "--seed", "7"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("PASS sol.geiges") != std::string::npos);

  // precondition violations exit 2
  RunResult bad_cycle = run_cli({"verify", "sol", "--cycle", "2,2,2"});
  CHECK(bad_cycle.code == 2);
  CHECK(bad_cycle.err.find("NotHyperbolicCycle") != std::string::npos);
  RunResult bad_what = run_cli({"verify", "bogus"});
  CHECK(bad_what.code == 2);
  RunResult unknown = run_cli({"verify", "sol", "--wat", "1"});
  CHECK(unknown.code == 2);

  // a failing verification exits 1: impossible tolerance override
  RunResult fail1 = run_cli({"verify", "sol", "--cycle", "3", "--samples", "50", "--tol", "0"});
  CHECK(fail1.code == 1);
  CHECK(fail1.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify is deterministic byte-for-byte") {
  std::vector<std::string> args = {"verify", "all", "--cycle", "3", "--seed", "42",
                                   "--samples", "150", "--json"};
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());

  // different seed changes the stream but stays green
  RunResult c = run_cli({"verify", "all", "--cycle", "3", "--seed", "43", "--samples", "150",
                         "--json"});
  CHECK(c.code == 0);
}

TEST_CASE("verify accepts --pqr") {
  RunResult r = run_cli({"verify", "sol", "--pqr", "2,3,7", "--samples", "80"});
  CHECK(r.code == 0);

  // Very large traces push some default thresholds past double precision and
  // underflow deep chart coordinates; that reports failed checks / errored
  // samples (exit 1), never a crash.
  RunResult big = run_cli({"verify", "charts", "--pqr", "2,3,100", "--samples", "30"});
  CHECK(big.code == 1);
  CHECK(big.err.empty());
}

TEST_CASE("config file provides defaults, flags win") {
  std::string path = "/tmp/cusplink_test_config.txt";
  {
    std::ofstream f(path);
    f << "samples=37\nseed=9\n# comment\ncycle=3,4\n";
  }
  RunResult r = run_cli({"verify", "sol", "--config", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("samples=37") != std::string::npos);
  CHECK(r.out.find("cycle=3,4") != std::string::npos);

  RunResult w = run_cli({"verify", "sol", "--config", path, "--samples", "21"});
  CHECK(w.code == 0);
  CHECK(w.out.find("samples=21") != std::string::npos);
  CHECK(w.out.find("samples=37") == std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("exit-code contract over the catalog") {
  for (const Triple& t : catalog_triples()) {
    RunResult r = run_cli({"monodromy", "--pqr", t.to_string()});
    CHECK(r.code == 0);
    RunResult rep = run_cli({"report", "--pqr", t.to_string(), "--json"});
    CHECK(rep.code == 0);
  }
  for (const BCycle& c : catalog_cycles()) {
    RunResult u = run_cli({"unit", "--cycle", c.to_string()});
    CHECK(u.code == 0);
    RunResult v = run_cli({"verify", "lutz5", "--cycle", c.to_string(), "--samples", "60"});
    CHECK(v.code == 0);
  }
  for (const MoriPreset& mp : catalog_mori()) {
    std::string k;
    for (size_t i = 0; i < mp.k.size(); ++i) k += (i ? "," : "") + std::to_string(mp.k[i]);
    RunResult r = run_cli({"mori", "--m", std::to_string(mp.m), "--k", k});
    CHECK(r.code == 0);
  }
}

TEST_CASE("emit_reports edge cases") {
  std::ostringstream empty_json, empty_text;
  cli::emit_reports({}, cli::OutputFormat::json, empty_json);
  CHECK(empty_json.str() == "[]\n");
  cli::emit_reports({}, cli::OutputFormat::text, empty_text);
  CHECK(empty_text.str().empty());

  // a failing check carries pass=false and the worst sample in details
  RunResult fail1 = run_cli({"verify", "sol", "--cycle", "3", "--samples", "40", "--tol", "0",
                             "--json"});
  CHECK(fail1.code == 1);
  CHECK(fail1.out.find("\"pass\": false") != std::string::npos);
  CHECK(fail1.out.find("worst_sample") != std::string::npos);
}

TEST_CASE("help exits 0") {
  RunResult r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}
