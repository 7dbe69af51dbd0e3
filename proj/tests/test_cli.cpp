#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"

#include <sstream>

using unihecke::cli::run_cli;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int s = run_cli(args, out, err);
  return {s, out.str(), err.str()};
}

std::string data(const std::string &file) { return std::string(UNIHECKE_DATA_DIR) + "/" + file; }

}  // namespace

TEST_CASE("compare on split SL2 is isomorphic") {
  Run r = run({"compare", "--group", "builtin:SL2", "--facet", "[]"});
  CHECK(r.status == 0);
  CHECK(r.out.find("verdict: isomorphic") != std::string::npos);
  CHECK(r.out.find("v_exponent: 1/2") != std::string::npos);
}

TEST_CASE("levi-classes of Sp4 lists four classes") {
  Run r = run({"--format", "json", "levi-classes", "--group", "builtin:Sp4"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 4);
  CHECK(j["classes"].size() == 4);
}

TEST_CASE("validate reports the pairing violation") {
  Run r = run({"validate", "--group", data("groups/bad_pairing.spec")});
  CHECK(r.status == 1);
  CHECK(r.out.find("pairing") != std::string::npos);
  CHECK(run({"validate", "--group", data("groups/su3.spec")}).status == 0);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"compare"}).status == 2);
  CHECK(run({"compare", "--group", "builtin:E8"}).status == 2);
  CHECK(run({"--format", "xml", "dual", "--group", "builtin:SL2"}).status == 2);
  CHECK(run({"facet", "--group", "builtin:SL2", "--J", "[0"}).status == 2);
  CHECK(run({"hecke", "mult", "--group", "builtin:SL2", "N(0)", "theta(1,1)"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("json and text outputs agree on the verdict") {
  for (const std::string g : {"builtin:PGL3", "builtin:SU4", "builtin:InnerPGL2"}) {
    CAPTURE(g);
    Run t = run({"compare", "--group", g});
    Run j = run({"--format", "json", "compare", "--group", g});
    CHECK(t.status == j.status);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(t.out.find("verdict: " + doc["verdict"].get<std::string>()) != std::string::npos);
    for (const auto &rep : doc["reports"]) CHECK(t.out.find("verdict: " + rep["verdict"].get<std::string>()) != std::string::npos);
  }
}

TEST_CASE("a corrupted parameter table makes compare fail") {
  Run r = run({"compare", "--group", "builtin:SL2", "--params", data("params/corrupted_sl2.params")});
  CHECK(r.status == 1);
  CHECK(r.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("cuspidal components through catalog and table files") {
  Run r = run({"compare", "--group", "builtin:PGL2", "--facet", "[1]", "--cuspidal", "cusp", "--catalog",
               data("catalog/sl2_pgl2.catalog"), "--params", data("params/cuspidal.params")});
  CHECK(r.status == 0);
}

TEST_CASE("the remaining subcommands run") {
  CHECK(run({"dual", "--group", "builtin:G2"}).status == 0);
  CHECK(run({"dual-levis", "--group", "builtin:InnerPGL2"}).status == 0);
  CHECK(run({"iwahori-weyl", "--group", "builtin:PGL2", "--radius", "2", "--max-elements", "10"}).status == 0);
  CHECK(run({"facet", "--group", "builtin:Sp4", "--J", "[0]"}).status == 0);
  CHECK(run({"facet", "--group", "builtin:SL3", "--J", "[0]"}).status == 1);
  CHECK(run({"xwr", "--group", "builtin:PGL3"}).status == 0);
  CHECK(run({"components", "--group", "builtin:SL2"}).status == 0);
  CHECK(run({"adjoint-check", "--group", "builtin:SL3"}).status == 0);
  Run m = run({"hecke", "mult", "--group", "builtin:SL2", "N(0)", "N(0)"});
  CHECK(m.status == 0);
  CHECK(m.out.find("product: 1 + (v - v^(-1))*N(0)") != std::string::npos);
  CHECK(run({"hecke", "center-check", "--group", "builtin:SL2", "theta(1) + theta(-1)"}).status == 0);
  CHECK(run({"hecke", "center-check", "--group", "builtin:SL2", "theta(1)"}).status == 1);
}

TEST_CASE("the catalog sweep merges per-group reports") {
  Run r = run({"--format", "json", "--all", "compare"});
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["groups"].size() == 12);
}
