// Runs the splitter binary end to end and checks output and exit codes.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SPLITTER_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args, int expect = 0) {
  const Run r = run("--json " + args);
  INFO(args);
  CHECK(r.code == expect);
  return json::parse(r.out);
}

std::string scratch(const std::string& name) { return std::string(SCRATCH_DIR) + "/" + name; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("construct perfect44") {
  const json j = run_json("construct perfect44 -p 97");
  CHECK(j["result"]["set"]["elements"] == json{1, 5, 6, 14, 16, 30, 35, 61, 75, 78, 80, 84});
  CHECK(j["result"]["classification"]["kind"] == "Perfect");
  CHECK(j["inputs"]["g"] == 5);
  CHECK(j["evidence"]["coset_representatives"] == json{1, 5});
  for (const char* key : {"command", "inputs", "result", "evidence", "duration_ms", "version"}) CHECK(j.contains(key));
  CHECK(run("construct perfect44 -p 41").code == 1);
  CHECK(run("construct perfect44").code == 2);
}

TEST_CASE("exists") {
  CHECK(run_json("exists --k1 4 --k2 4 --scan 5000")["result"]["primes"] == json{97, 1873, 2161, 3457});
  const json j = run_json("exists --k1 2 --k2 4 -p 139");
  CHECK(j["result"]["outcome"] == "exists");
  CHECK(j["evidence"].is_object());
  CHECK(run("exists --k1 1 --k2 2 -p 13").code == 1);
  CHECK(run("exists --k1 1 --k2 5 -p 13").code == 3);
  CHECK(run("exists --k1 1 --k2 5 --scan 50").code == 3);
  CHECK(run("exists --k1 4 --k2 4 -p 91").code == 2);
  CHECK(run("exists --k1 4 --k2 4").code == 2);
  CHECK(run("exists --k2 4 -p 97").code == 2);
}

TEST_CASE("quasi-perfect constructions") {
  const json d5 = run_json("construct dl5 -k 5 -m 7");
  CHECK(d5["result"]["set"]["elements"] == json{1, 6, 11, 16, 26, 31});
  CHECK(d5["result"]["classification"]["kind"] == "QuasiPerfect");
  CHECK(run("construct dl5 -k 3 -m 4").code == 2);

  const json d7 = run_json("construct dl7 -k 8 -m 1 -p 13729 -g 23");
  CHECK(d7["result"]["set"]["q"] == 27458);
  CHECK(d7["result"]["set"]["elements"].size() == 1716);
  CHECK(d7["evidence"]["A"] == json{0, 1});
  CHECK(run("construct dl7 -k 8 -m 1 -p 13729 -g 10").code == 2);
}

TEST_CASE("maxset") {
  const json e37 = run_json("maxset -q 37 --k1 0 --k2 3 --exact");
  CHECK(e37["result"]["size"] == 12);
  CHECK(e37["result"]["exact"] == true);
  CHECK(run_json("maxset -q 29 --k1 0 --k2 3 --bound")["result"]["size"] == 5);
  const json e4 = run_json("maxset -q 4 --k1 0 --k2 1 --exact");
  CHECK(e4["result"]["size"] == 3);
  CHECK(e4["result"]["witness"] == json{1, 2, 3});
  CHECK(run("maxset -q 40 --k1 3 --k2 3 --bound").code == 3);
  CHECK(run("maxset -q 37 --k1 0 --k2 3").code == 2);

  const Run table = run("--csv maxset --table k0k3 --pmax 37");
  CHECK(table.code == 0);
  CHECK(table.out.rfind("p,S,bound,alpha,witness\n7,4,2,", 0) == 0);
  CHECK(table.out.find("\n37,") != std::string::npos);
}

TEST_CASE("forms") {
  const json f1 = run_json("forms --id 1 --range 100");
  REQUIRE(f1["result"]["rows"].size() == 8);
  CHECK(f1["result"]["rows"][0] == json{{"p", 7}, {"k", 0}, {"l", 0}});
  CHECK(f1["result"]["rows"][7]["p"] == 2707);
  const json f2 = run_json("forms --id 2 --range 100");
  CHECK(f2["result"]["rows"][0]["p"] == 139);
  CHECK(run("forms --id 3 --range 5").code == 0);
  CHECK(run("forms --id 4").code == 2);
}

TEST_CASE("verify round trips every construction") {
  const std::vector<std::string> builds{"construct perfect04 -p 97",   "construct perfect24 -p 139",
                                        "construct perfect44 -p 1873", "construct dl5 -k 6 -m 7",
                                        "construct dl6 -k 4 -p 7",     "construct dl8 -k 9 -p 11",
                                        "construct dl7 -k 4 -m 1 -p 97"};
  int i = 0;
  for (const auto& b : builds) {
    const std::string path = scratch("built" + std::to_string(i++) + ".json");
    INFO(b);
    REQUIRE(run("--json -o " + path + " " + b).code == 0);
    const json v = run_json("verify " + path);
    CHECK(v["result"]["valid"] == true);
  }

  const std::string left = scratch("left.json");
  write_file(left, R"({"q":5,"k1":0,"k2":2,"elements":[1,4]})");
  const json c = run_json("construct compose --left " + left + " --right " + left);
  CHECK(c["result"]["set"]["q"] == 25);
  CHECK(c["result"]["classification"]["kind"] == "Perfect");
}

TEST_CASE("verify rejects bad sets and bad input") {
  const json bad = run_json(R"(verify --set '{"q":13,"k1":0,"k2":3,"elements":[1,2]}')", 1);
  CHECK(bad["result"]["valid"] == false);
  CHECK(bad["result"]["violation"]["text"] == "2*1 = 1*2 = 2 (mod 13)");

  const std::string junk = scratch("junk.json");
  write_file(junk, "{not json");
  CHECK(run("verify " + junk).code == 2);
  CHECK(run(R"(verify --set '{"q":13,"k1":0,"k2":3,"elements":[0]}')").code == 2);
  CHECK(run("verify " + scratch("missing.json")).code == 2);
}

TEST_CASE("output options") {
  const json a = run_json("construct perfect24 -p 181");
  const json b = run_json("construct perfect24 -p 181");
  CHECK(a["result"] == b["result"]);
  CHECK(a["evidence"] == b["evidence"]);

  const std::string path = scratch("out.txt");
  CHECK(run("-o " + path + " construct dl6 -k 3 -p 5").code == 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("q=40 k1=3 k2=3", 0) == 0);

  CHECK(run("--json --csv construct dl6 -k 3 -p 5").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("graph export") {
  const Run r = run("graph export -q 7 --k1 0 --k2 2");
  CHECK(r.code == 0);
  CHECK(r.out == "1: 2 4\n2: 1 4\n3: 5 6\n4: 1 2\n5: 3 6\n6: 3 5\n");
}

TEST_CASE("repro subset") {
  const Run r = run("repro --only 1,2");
  CHECK(r.code == 0);
  CHECK(r.out.find("2/2 passed") != std::string::npos);
  CHECK(run("repro --only 3").code == 1);
  CHECK(run("repro --only 99").code == 2);
}
