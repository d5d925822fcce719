#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fusionlab/cli.hpp"
#include "golden.hpp"
#include "json.hpp"

using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = fusionlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Numbers may only appear as {"value": number, "certified": bool}; exact
// values travel as strings in the same wrapper.
void check_wrapped(const Json& j, const std::string& path) {
  if (j.is_number()) {
    FAIL_CHECK("bare number at " << path);
  } else if (j.is_object()) {
    if (j.contains("value") && j.contains("certified")) {
      CHECK_MESSAGE(j.size() == 2, path);
      CHECK_MESSAGE(j["certified"].is_boolean(), path);
      CHECK_MESSAGE((j["value"].is_number() || j["value"].is_string()), path);
      return;
    }
    for (const auto& [k, v] : j.items()) check_wrapped(v, path + "." + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) check_wrapped(j[i], path + "[" + std::to_string(i) + "]");
  }
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"catalog"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"norm", "--ring", "nonsense", "a1"}).code == 2);
  CHECK(run({"norm", "--ring", "tl:3", "a7x"}).code == 2);
  CHECK(run({"norm", "--ring", "tl:3", "--format", "yaml", "a1"}).code == 2);
  CHECK(run({"walk", "--ring", "tl:3", "--gen", "a1", "--steps", "257"}).code == 2);
  const Run bad = run({"moments", "--ring", "int", "--moment-order", "99", "g"});
  CHECK(bad.code == 2);
  CHECK(bad.err.rfind("fusionlab: ", 0) == 0);
  CHECK(bad.out.empty());
  // validation failure is a result, not an error
  const Run v = run({"validate", "--ring", std::string(FUSIONLAB_DATA_DIR) + "/fibonacci_bad_conj.fusion"});
  CHECK(v.code == 0);
  CHECK(v.out.find("FAIL radius=3") != std::string::npos);
}

TEST_CASE("computation failures exit with 1") {
  const Run r = run({"moments", "--ring", "free:3", "--moment-order", "24", "a+A+b+B+c+C"});
  CHECK(r.code == 1);
  CHECK(r.err.find("support limit") != std::string::npos);
}

TEST_CASE("text format") {
  const Run r = run({"norm", "--ring", "int", "--ball-radius", "4", "2*e"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("lower: 2.000000000000\n") != std::string::npos);
  CHECK(r.out.find("upper: 2.000000000000\n") != std::string::npos);
  CHECK(r.out.rfind("# fusionlab-report/1 norm\n", 0) == 0);
  const Run h = run({"norm", "--ring", "tl:3", "--ball-radius", "6", "a1"});
  CHECK(h.out.find("heuristic: 2.000000000000 [uncertified]") != std::string::npos);
  const Run m = run({"moments", "--ring", "tl:3", "--moment-order", "6", "a1"});
  CHECK(m.out.find("moments: 1, 0, 1, 0, 2, 0, 5\n") != std::string::npos);
}

TEST_CASE("JSON reports share one envelope and wrap every number") {
  const std::vector<std::vector<std::string>> cases = {
      {"validate", "--ring", "ising", "--radius", "2"},
      {"multiply", "--ring", "fibonacci", "tau", "tau"},
      {"moments", "--ring", "free:2", "--moment-order", "4"},
      {"norm", "--ring", "fibonacci", "tau"},
      {"kesten", "--ring", "int", "--ball-radius", "20"},
      {"cp-check", "--ring", "int", "--radius", "3", "fejer:3"},
      {"anorm", "--ring", "int", "--restarts", "1", "--iters", "50", "fejer:2"},
      {"leptin", "--ring", "int", "--restarts", "1", "--iters", "50", "--net", "fejer:2", "--test", "delta:0"},
      {"walk", "--ring", "fibonacci", "--gen", "tau", "--steps", "3", "--trials", "100", "--seed", "1"},
      {"catalog"},
  };
  for (auto args : cases) {
    args.push_back("--format");
    args.push_back("json");
    const Run r = run(args);
    REQUIRE_MESSAGE(r.code == 0, args[0] << ": " << r.err);
    const Json j = Json::parse(r.out);
    CHECK(j["schema"] == "fusionlab-report/1");
    CHECK(j["command"] == args[0]);
    REQUIRE(j["config"].is_object());
    for (const auto& [k, v] : j["config"].items()) CHECK_MESSAGE(v.is_string(), k);
    CHECK(j["config"]["format"] == "json");
    CHECK(j.contains("result"));
    check_wrapped(j["result"], args[0]);
  }
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args = {"anorm", "--ring", "tl:3", "--restarts", "3", "--iters", "80", "--seed", "9",
                                         "delta:a1"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.out == b.out);
  const std::vector<std::string> w = {"walk", "--ring", "tl:3", "--gen", "a1", "--steps", "5", "--trials", "5000",
                                      "--seed", "3"};
  auto w1 = w, w4 = w;
  w1.insert(w1.end(), {"--threads", "1"});
  w4.insert(w4.end(), {"--threads", "4"});
  const Run t1 = run(w1), t4 = run(w4);
  REQUIRE(t1.code == 0);
  // identical apart from the echoed thread count
  CHECK(t1.out.substr(t1.out.find("\ngenerator:")) == t4.out.substr(t4.out.find("\ngenerator:")));
}

TEST_CASE("golden reports") {
  for (const auto& c : golden::load_cases(FUSIONLAB_GOLDEN_DIR)) {
    const Run r = golden::without_thread_env([&] { return run(c.args); });
    CHECK_MESSAGE(r.code == 0, c.name);
    CHECK_MESSAGE(r.out == golden::expected(FUSIONLAB_GOLDEN_DIR, c.name), c.name);
  }
}
