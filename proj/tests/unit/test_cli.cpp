#include <doctest.h>

#include <cstdlib>
#include <initializer_list>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "synchrony/cli/commands.hpp"
#include "synchrony/kinematics.hpp"
#include "synchrony/version.hpp"

using namespace synchrony;
using namespace synchrony::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"synchrony"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const char* name) { return std::string(SYNCHRONY_SCENARIO_DIR) + "/" + name; }

std::string field_of(const std::string& text) {
  try {
    ScenarioFile::parse_text(text);
  } catch (const ScenarioError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string strip_elapsed(const std::string& csv) {
  CsvTable t = CsvTable::parse(csv);
  for (auto& row : t.rows) row.back() = "";
  return t.emit();
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (value)
      setenv(name, value, 1);
    else
      unsetenv(name);
  }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST_CASE("number text round-trips") {
  CHECK(format_double(0.6) == "0.6");
  CHECK(format_double(1.0) == "1.0");
  CHECK(format_double(-0.0) == "-0.0");
  CHECK(format_double(1e-14) == "1e-14");
  CHECK(format_double(2.0 / 3.0) == "0.6666666666666666");
  gen::Source src(51);
  for (int i = 0; i < 1000; ++i) {
    const double v = src.uniform(-1, 1) * std::pow(10.0, src.uniform(-300, 300));
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS(parse_double("1.0x"));
  CHECK_THROWS(parse_double(""));
  CHECK(parse_number_list("0.5") == std::vector<double>{0.5, 0.0, 0.0});
  CHECK(parse_number_list("1,2,3") == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_THROWS(parse_number_list("1,2"));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("csv emit/parse/emit is byte identical") {
  CsvTable t;
  t.header = {"name", "value", "note"};
  t.rows = {{"plain", "1.0", ""}, {"needs,quote", "2.5", "say \"hi\""}, {"line\nbreak", "-0.0", "x"}};
  const std::string once = t.emit();
  CHECK(once.find('\r') == std::string::npos);
  const std::string twice = CsvTable::parse(once).emit();
  CHECK(once == twice);
  CHECK_THROWS(CsvTable::parse("a,b\n1\n"));
  CHECK_THROWS(CsvTable::parse("a,b\n\"open,1\n"));
}

TEST_CASE("report csv round-trips through the parser") {
  const Result r = invoke({"quantum", "amplitude", scenario("commuting_2x2.json")});
  REQUIRE(r.code == kPass);
  const Report parsed = Report::from_csv(r.out);
  CHECK(parsed.to_csv() == r.out);
  for (const auto& rec : parsed.records()) {
    CHECK(rec.seed == 42);
    CHECK(rec.version == kVersion);
    CHECK(rec.passed);
  }
}

TEST_CASE("scenario errors name the offending field") {
  CHECK(field_of("{\"sync\":[{\"label\":\"a\",\"alpha\":[1,2]}]}") == "sync[0].alpha");
  CHECK(field_of("{\"sync\":[{\"alpha\":[1,2,3]}]}") == "sync[0].label");
  CHECK(field_of(R"({"kinematics":{"events":[{"label":"e","t":0,"x":0,"sync":"missing"}]}})") ==
        "kinematics.events[0].sync");
  CHECK(field_of(R"({"quantum":{"dims":[2,2],"H_A":[[[1,0],[0,0]],[[0,0]]]}})") == "quantum.H_A[1]");
  CHECK(field_of(R"({"quantum":{"dims":[2,2],"H_A":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]]]}})") ==
        "quantum.H_A");
  CHECK(field_of(R"({"quantum":{"dims":[2,2],"psi_in":[[1,0],[0,0]]}})") == "quantum.psi_in");
  CHECK(field_of(R"({"quantum":{"dims":[2,2],"seed":-4}})") == "quantum.seed");
  CHECK(field_of(R"({"quantum":{"dims":[2,2],"seed":1.5}})") == "quantum.seed");
  CHECK(field_of(R"({"propagator":{"seed":18446744073709551615}})") == "<accepted>");
  CHECK(field_of(R"({"output":{"format":"xml"}})") == "output.format");
  CHECK(field_of("{not json") == "$");
}

TEST_CASE("seed precedence: flag, environment, scenario, default") {
  {
    ScopedEnv env("SYNCHRONY_SEED", nullptr);
    CHECK(resolve_seed(std::nullopt, std::nullopt) == kDefaultSeed);
    CHECK(resolve_seed(std::nullopt, 9) == 9);
    CHECK(resolve_seed(5, 9) == 5);
  }
  {
    ScopedEnv env("SYNCHRONY_SEED", "77");
    CHECK(resolve_seed(std::nullopt, 9) == 77);
    CHECK(resolve_seed(5, 9) == 5);
  }
  {
    ScopedEnv env("SYNCHRONY_SEED", "abc");
    CHECK_THROWS_AS(resolve_seed(std::nullopt, 9), InvalidArgument);
  }
}

TEST_CASE("transform: the 0.6 photon") {
  const Result r = invoke({"transform", "--t", "1", "--x", "1", "--from-alpha", "0", "--to-alpha", "-0.4"});
  CHECK(r.code == kPass);
  CHECK(r.out == "{\"t\":0.6,\"x\":1.0,\"y\":0.0,\"z\":0.0}\n");
  const Result same = invoke({"transform", "--t", "1", "--x", "0", "--from-alpha", "0.3", "--to-alpha", "-0.9"});
  CHECK(same.out == "{\"t\":1.0,\"x\":0.0,\"y\":0.0,\"z\":0.0}\n");
  const Result file = invoke({"transform", scenario("photon_0p6.json")});
  CHECK(file.code == kPass);
  CHECK(file.out.find("\"event\":\"photon\",\"from\":\"einstein\",\"to\":\"rho\",\"t\":0.6") != std::string::npos);
  CHECK(file.out.find("\"v\":2.0,\"v_prime\":4.0") != std::string::npos);
}

TEST_CASE("transform parse errors exit 2 naming the field") {
  const Result r = invoke({"transform", "--t", "abc"});
  CHECK(r.code == kInputError);
  CHECK(r.err.find("--t") != std::string::npos);
  const Result a = invoke({"transform", "--t", "1", "--to-alpha", "1,2"});
  CHECK(a.code == kInputError);
  CHECK(a.err.find("--to-alpha") != std::string::npos);
  CHECK(invoke({"transform", "/nonexistent/scenario.json"}).code == kInputError);
  CHECK(invoke({"frobnicate"}).code == kInputError);
  CHECK(invoke({}).code == kInputError);
  CHECK(invoke({"--help"}).code == kPass);
}

TEST_CASE("two-convention round trip is bit identical unless the intermediate time grows a binade") {
  gen::Source src(52);
  for (int i = 0; i < 1000; ++i) {
    const Event4 e = src.event(10.0, src.convention(2.0, "p"));
    const SyncParam q = src.convention(2.0, "q");
    const Event4 there = transform_exact(e, q);
    const Event4 back = transform_exact(there, e.convention);
    CHECK(back.x == e.x);
    // One rounding per hop: the hop back lands within half an ulp of the
    // intermediate value, which cannot move t when |t'| has no larger binade.
    if (std::ilogb(there.t) <= std::ilogb(e.t)) {
      CHECK(back.t == e.t);
    } else {
      CHECK(std::abs(back.t - e.t) <= 0.5 * std::numeric_limits<double>::epsilon() * std::abs(there.t) * 2.0);
    }
  }

  const Result back = invoke({"transform", "--t", "0.6", "--x", "1", "--from-alpha", "-0.4", "--to-alpha", "0"});
  CHECK(back.out == "{\"t\":1.0,\"x\":1.0,\"y\":0.0,\"z\":0.0}\n");
}

TEST_CASE("lightspeed") {
  const Result r = invoke({"lightspeed", "--alpha", "0.5", "--direction", "1,0,0"});
  CHECK(r.code == kPass);
  CHECK(r.out.find("\"forward\":0.6666666666666666,\"backward\":2.0,\"round_trip_time\":2.0") != std::string::npos);
  const Result zero = invoke({"lightspeed", "--alpha", "0"});
  CHECK(zero.out.find("\"forward\":1.0,\"backward\":1.0,\"round_trip_time\":2.0") != std::string::npos);
  CHECK(invoke({"lightspeed", "--alpha", "1", "--direction", "-1,0,0"}).code == kDegenerate);
  const Result norm = invoke({"lightspeed", "--alpha", "0.2,0.1,0", "--direction", "0,3,4"});
  CHECK(norm.out.find("\"normalized\":true") != std::string::npos);
  CHECK(norm.out.find("\"round_trip_time\":2.0") != std::string::npos);
  CHECK(invoke({"lightspeed", "--alpha", "0.5", "--direction", "0,0,0"}).code == kInputError);
  const LightspeedResult x = lightspeed(Vec3(0.3, -0.2, 0.5), Vec3(0.6, 0.0, 0.8));
  CHECK_FALSE(x.normalized);
  CHECK(x.round_trip_time == 2.0);
}

TEST_CASE("quantum commands on bundled scenarios") {
  CHECK(invoke({"quantum", "amplitude", scenario("commuting_2x2.json")}).code == kPass);
  CHECK(invoke({"quantum", "nosignal", scenario("commuting_2x2.json")}).code == kPass);
  CHECK(invoke({"quantum", "chsh", scenario("singlet_chsh.json")}).code == kPass);
  CHECK(invoke({"quantum", "counterexample", scenario("interacting_sigmaxx.json")}).code == kPass);

  const Result fail = invoke({"quantum", "amplitude", scenario("interacting_sigmaxx.json")});
  CHECK(fail.code == kToleranceFailure);
  CHECK(fail.err.find("amplitude_gap = 0.3733941970073") != std::string::npos);
  CHECK(invoke({"quantum", "amplitude", scenario("interacting_sigmaxx.json"), "--expect-fail"}).code == kPass);
  CHECK(invoke({"--expect-fail", "quantum", "chsh", scenario("singlet_chsh.json")}).code == kToleranceFailure);

  CHECK(invoke({"quantum", "chsh", scenario("commuting_2x2.json")}).code == kInputError);
  CHECK(invoke({"quantum", "teleport", scenario("commuting_2x2.json")}).code == kInputError);
  CHECK(invoke({"quantum", "amplitude", scenario("photon_0p6.json")}).code == kInputError);
}

TEST_CASE("reports are deterministic apart from elapsed time") {
  for (const char* check : {"amplitude", "nosignal"}) {
    const Result a = invoke({"quantum", check, scenario("commuting_2x2.json")});
    const Result b = invoke({"quantum", check, scenario("commuting_2x2.json")});
    CHECK(strip_elapsed(a.out) == strip_elapsed(b.out));
  }
  const Result a = invoke({"propagator", "--samples", "200", "--seed", "9"});
  const Result b = invoke({"propagator", "--samples", "200", "--seed", "9"});
  CHECK(strip_elapsed(a.out) == strip_elapsed(b.out));
  const Result c = invoke({"propagator", "--samples", "200", "--seed", "10"});
  CHECK(strip_elapsed(a.out) != strip_elapsed(c.out));
}

TEST_CASE("json report carries seed and version") {
  const Result r = invoke({"--output", "json", "--seed", "123", "quantum", "nosignal", scenario("commuting_2x2.json")});
  CHECK(r.code == kPass);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["passed"] == true);
  for (const auto& rec : doc["records"]) {
    CHECK(rec["seed"] == 123);
    CHECK(rec["version"] == kVersion);
  }
}

TEST_CASE("propagator command") {
  const Result r = invoke({"propagator", "--samples", "1000", "--seed", "3"});
  CHECK(r.code == kPass);
  const Result zero = invoke({"propagator", "--samples", "1", "--alpha", "0"});
  const Report rep = Report::from_csv(zero.out);
  CHECK(rep.records().front().value == 0.0);
  CHECK(invoke({"propagator", "--samples", "0"}).code == kInputError);
  CHECK(invoke({"propagator", "--samples", "abc"}).code == kInputError);
}

TEST_CASE("sweep") {
  const Result r = invoke({"sweep", "--alpha-min", "-0.9", "--alpha-max", "0.9", "--steps", "7", "--op", "lightspeed"});
  REQUIRE(r.code == kPass);
  const CsvTable t = CsvTable::parse(r.out);
  REQUIRE(t.rows.size() == 7);
  CHECK(t.header[3] == "round_trip_time");
  double last = -1e300;
  for (const auto& row : t.rows) {
    CHECK(row[3] == "2.0");
    const double a = parse_double(row[0]);
    CHECK(a > last);
    last = a;
  }
  CHECK(t.rows.front()[0] == "-0.9");
  CHECK(t.rows.back()[0] == "0.9");
  CHECK(CsvTable::parse(r.out).emit() == r.out);

  const Result two = invoke({"sweep", "--alpha-min", "-0.5", "--alpha-max", "0.5", "--steps", "2", "--op", "epsilon"});
  CHECK(CsvTable::parse(two.out).rows.size() == 2);

  const Result ns = invoke({"sweep", "--alpha-min", "-0.9", "--alpha-max", "0.9", "--steps", "9", "--op", "nosignal"});
  for (const auto& row : CsvTable::parse(ns.out).rows) CHECK(parse_double(row[5]) < 1e-10);

  const Result bad = invoke({"sweep", "--alpha-min", "0", "--alpha-max", "1", "--steps", "3", "--op", "bogus"});
  CHECK(bad.code == kInputError);
  CHECK(bad.err.find("lightspeed, epsilon, order, nosignal") != std::string::npos);
  CHECK(invoke({"sweep", "--alpha-min", "0", "--alpha-max", "1", "--steps", "1", "--op", "epsilon"}).code ==
        kInputError);
  CHECK(invoke({"sweep", "--alpha-min", "0", "--alpha-max", "1", "--steps", "3", "--op", "lightspeed"}).code ==
        kDegenerate);

  const Result order = invoke({"sweep", "--alpha-min", "-4", "--alpha-max", "0", "--steps", "5", "--op", "order"});
  const CsvTable ot = CsvTable::parse(order.out);
  CHECK(ot.rows[1][0] == "-3.0");
  CHECK(ot.rows[1][3] == "second");
  for (const auto& row : ot.rows) CHECK(row[4] == "3.0");
}
