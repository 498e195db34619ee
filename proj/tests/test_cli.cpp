// Copyright 2026 The wittgroup Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "wittgroup/cli.hpp"

using namespace wittgroup;
namespace wc = wittgroup::cli;

namespace {

std::size_t error_position(std::string_view text, std::size_t (*parse)(std::string_view)) {
  try {
    parse(text);
  } catch (const wc::ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

std::size_t ring_pos(std::string_view s) { return wc::parse_ring(s)->size(); }
std::size_t group_pos(std::string_view s) { return wc::parse_group(s).n; }
std::size_t module_pos(std::string_view s) { return wc::parse_module(s).power; }
std::size_t ext_pos(std::string_view s) { return wc::parse_extension(s).n; }

}  // namespace

TEST_CASE("ring specs") {
  const RingPtr gr = wc::parse_ring("gr:2,2,2");
  CHECK(gr == LocalRing::galois(2, 2, 2));
  CHECK(gr->name() == "GR(4,2)");
  CHECK(wc::parse_ring("gr:p=2,m=2,d=2") == gr);
  CHECK(wc::parse_ring("gr:d=2,p=2,m=2") == gr);
  CHECK(wc::parse_ring("gf:2,2") == LocalRing::galois(2, 1, 2));
  CHECK(wc::parse_ring("gf:p=5,d=1") == LocalRing::galois(5, 1, 1));
  CHECK(wc::parse_ring("dual:2,2") == LocalRing::dual(2, 2));
  CHECK(wc::parse_ring("dual:p=3,d=1") == LocalRing::dual(3, 1));
  CHECK(wc::parse_ring("zmod:9") == LocalRing::galois(3, 2, 1));
  CHECK(wc::parse_ring("zmod:7") == LocalRing::galois(7, 1, 1));
  CHECK(wc::parse_ring("zmod:8")->name() == "Z/8");
  // Spec strings round trip.
  for (const RingPtr& r : {gr, LocalRing::dual(2, 2), LocalRing::galois(5, 2, 1)}) {
    CHECK(wc::parse_ring(r->spec()) == r);
  }
}

TEST_CASE("ring spec errors carry the position") {
  CHECK(error_position("gr:2,2", ring_pos) == 6);
  CHECK(error_position("gr:2,x,2", ring_pos) == 5);
  CHECK(error_position("gq:2,2,2", ring_pos) == 0);
  CHECK(error_position("gr:4,1,2", ring_pos) == 3);  // not prime
  CHECK(error_position("zmod:12", ring_pos) == 5);
  CHECK(error_position("zmod:1", ring_pos) == 5);
  CHECK(error_position("gr:p=2,m=2,m=2", ring_pos) == 11);
  CHECK(error_position("gr:p=2,q=2,d=2", ring_pos) == 7);
  CHECK(error_position("gr:2,2,2x", ring_pos) == 8);
  CHECK(error_position("", ring_pos) == 0);
  CHECK_THROWS_AS(wc::parse_ring("gr:99999999999,1,1"), wc::ParseError);
  try {
    wc::parse_ring("gr:2,2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("group and module specs") {
  const wc::GroupSpec g = wc::parse_group("sl2:gr:2,1,2");
  CHECK(g.n == 2);
  CHECK(g.ring == LocalRing::galois(2, 1, 2));
  CHECK(wc::to_string(g) == "sl2:gr:2,1,2");
  CHECK(wc::build_group(g)->order() == 60);
  CHECK(wc::parse_group("sl3:zmod:2").n == 3);
  CHECK(error_position("sl1:gf:2,2", group_pos) == 2);
  CHECK(error_position("sl5:gf:2,2", group_pos) == 2);
  CHECK(error_position("sl2gf:2,2", group_pos) == 3);
  CHECK(error_position("gl2:gf:2,2", group_pos) == 0);

  const wc::ModuleSpec m = wc::parse_module("m0^2");
  CHECK(m.base == wc::ModuleBase::M0);
  CHECK(m.power == 2);
  CHECK(wc::to_string(m) == "m0^2");
  CHECK(wc::parse_module("m").base == wc::ModuleBase::M);
  CHECK(wc::parse_module("s").base == wc::ModuleBase::S);
  CHECK(wc::parse_module("v^3").power == 3);
  const wc::ModuleSpec t = wc::parse_module("trivial:2");
  CHECK(t.base == wc::ModuleBase::Trivial);
  CHECK(t.trivial_dim == 2);
  CHECK(error_position("m0^", module_pos) == 3);
  CHECK(error_position("m0^0", module_pos) == 3);
  CHECK(error_position("x", module_pos) == 0);
  CHECK(error_position("trivial:0", module_pos) == 8);
  CHECK(error_position("m0 ", module_pos) == 2);

  const GroupPtr f4 = wc::build_group(g);
  CHECK(wc::build_module(m, f4).dim() == 12);
  CHECK(wc::build_module(wc::parse_module("v"), f4).dim() == 4);
  CHECK(wc::build_module(wc::parse_module("s"), f4).dim() == 2);
  CHECK(wc::build_module(wc::parse_module("m"), f4).dim() == 8);
  const GModule triv = wc::build_module(t, f4);
  CHECK(triv.dim() == 2);
  CHECK(triv.is_trivial());
}

TEST_CASE("parse_spec dispatch") {
  CHECK(std::holds_alternative<RingPtr>(wc::parse_spec("gr:2,2,2")));
  CHECK(std::holds_alternative<wc::GroupSpec>(wc::parse_spec("sl2:gr:2,1,2")));
  CHECK(std::holds_alternative<wc::ModuleSpec>(wc::parse_spec("m0^2")));
  CHECK(std::holds_alternative<wc::ModuleSpec>(wc::parse_spec("s")));
  CHECK_THROWS_AS(wc::parse_spec("sl2:"), wc::ParseError);
}

TEST_CASE("extension specs") {
  const wc::ExtensionSpec e = wc::parse_extension("sl2:gr:2,2,2->gr:2,1,2@v");
  CHECK(e.kernel == ModuleKind::V);
  CHECK(e.a == LocalRing::galois(2, 2, 2));
  CHECK(e.b == LocalRing::galois(2, 1, 2));
  CHECK(wc::parse_extension("sl2:zmod:9->zmod:3").kernel == ModuleKind::M0);
  CHECK(wc::build_extension(wc::parse_extension("sl2:gr:2,2,2->gr:2,1,2@v"))->kernel().dim() == 4);
  CHECK(error_position("sl2:gr:2,2,2-gr:2,1,2", ext_pos) == 12);
  CHECK(error_position("sl2:gr:2,2,2->gr:2,1,2@s", ext_pos) == 23);
  // Mismatched residue fields and non-square-zero kernels.
  CHECK(error_position("sl2:gr:2,2,2->gr:2,1,3", ext_pos) == 14);
  CHECK(error_position("sl2:zmod:8->zmod:2", ext_pos) == 12);
}

TEST_CASE("report serialization") {
  wc::Report r;
  r.command = "demo";
  r.records.push_back({"a", "Theorem coh cps", 1, 1, true});
  r.records.push_back({"b, with comma", "Lemma lemma1", nlohmann::json{{"x", 1}}, nlohmann::json{{"x", 2}}, false});
  r.timestamp = "2026-01-01T00:00:00Z";
  r.wall_seconds = 1.5;
  CHECK_FALSE(r.passed());
  CHECK(wc::exit_code(r) == wc::kExitCheckFailed);

  const auto full = r.to_json();
  CHECK(full["schema"] == 1);
  CHECK(full["version"] == std::string(wc::kVersion));
  CHECK(full.contains("timestamp"));
  CHECK(full["records"][1]["anchor"] == "Lemma lemma1");
  CHECK(full["summary"]["failed"][0] == "b, with comma [Lemma lemma1]");
  const auto cmp = r.to_json(true);
  CHECK_FALSE(cmp.contains("timestamp"));
  CHECK_FALSE(cmp.contains("wall_seconds"));

  wc::Report later = r;
  later.timestamp = "2027-01-01T00:00:00Z";
  later.wall_seconds = 9;
  CHECK(later.to_json(true).dump() == r.to_json(true).dump());
  CHECK(later.to_json().dump() != r.to_json().dump());

  const std::string csv = r.to_csv();
  CHECK(csv.find("name,anchor,expected,computed,pass\n") == 0);
  CHECK(csv.find("\"b, with comma\"") != std::string::npos);
  CHECK(csv.find("\"{\"\"x\"\":1}\"") != std::string::npos);
  CHECK(r.to_text().find("FAIL b, with comma") != std::string::npos);

  r.records.pop_back();
  CHECK(wc::exit_code(r) == wc::kExitPass);
}

TEST_CASE("exit codes by error kind") {
  CHECK(wc::exit_code(Error(ErrorKind::CapExceeded, "")) == wc::kExitResourceCap);
  CHECK(wc::exit_code(Error(ErrorKind::SizeExceeded, "")) == wc::kExitResourceCap);
  CHECK(wc::exit_code(Error(ErrorKind::ParseError, "")) == wc::kExitUsage);
  CHECK(wc::exit_code(Error(ErrorKind::CocycleInvalid, "")) == wc::kExitCheckFailed);
}

TEST_CASE("cocycle files") {
  const auto e = wc::build_extension(wc::parse_extension("sl2:zmod:4->zmod:2"));
  const Cocycle2 x = extension_cocycle(*e);
  std::stringstream ss;
  wc::write_cocycle(ss, x);
  const Cocycle2 y = wc::read_cocycle(ss);
  CHECK(y.order == x.order);
  CHECK(y.dim == x.dim);
  CHECK(y.p == x.p);
  CHECK(y.values == x.values);

  std::istringstream short_file("6 3 2\n0 0 0");
  CHECK_THROWS_AS(wc::read_cocycle(short_file), wc::ParseError);
  std::istringstream bad_value("1 1 2\n5");
  CHECK_THROWS_AS(wc::read_cocycle(bad_value), wc::ParseError);
  std::istringstream bad_p("1 1 4\n0");
  CHECK_THROWS_AS(wc::read_cocycle(bad_p), wc::ParseError);
  std::istringstream trailing("1 1 2\n0 0");
  CHECK_THROWS_AS(wc::read_cocycle(trailing), wc::ParseError);
}

TEST_CASE("thread limit from the environment") {
  unsetenv("WITTGROUP_THREADS");
  CHECK(wc::apply_thread_limit() == 0);
  setenv("WITTGROUP_THREADS", "2", 1);
  CHECK(wc::apply_thread_limit() == 2);
  setenv("WITTGROUP_THREADS", "-1", 1);
  CHECK_THROWS_AS(wc::apply_thread_limit(), wc::ParseError);
  setenv("WITTGROUP_THREADS", "1", 1);
  CHECK(wc::apply_thread_limit() == 1);
  unsetenv("WITTGROUP_THREADS");
}

TEST_CASE("suites") {
  CHECK_THROWS_AS(wc::run_suite("bogus"), wc::ParseError);
  CHECK_THROWS_AS(wc::counterexample_report("f6"), wc::ParseError);
  CHECK_THROWS_AS(wc::formula1_report(2, LocalRing::galois(2, 2, 2), 1), wc::ParseError);

  const wc::Report f5 = wc::counterexample_report("f5");
  CHECK(f5.passed());
  CHECK(f5.records.size() == 3);
  CHECK(f5.data["f5"]["certificate"]["verified"] == false);
  CHECK(f5.data["f5"]["obstruction"].size() == 1);

  const wc::Report sections = wc::counterexample_report("sections");
  REQUIRE(sections.records.size() == 3);
  // p = 2 has no section (recorded as a failing record), p = 3 does.
  CHECK_FALSE(sections.records[0].pass);
  CHECK(sections.records[1].pass);
  CHECK(sections.records[2].pass);

  wc::SuiteConfig cfg;
  cfg.trials = 10;
  const wc::Report f = wc::formula1_report(2, LocalRing::galois(2, 1, 2), 1, cfg);
  CHECK(f.passed());
  CHECK(f.records.at(0).computed == 10);

  // Same configuration, same report.
  cfg.trials = 5;
  const wc::Report a = wc::run_suite("theorem", cfg);
  const wc::Report b = wc::run_suite("theorem", cfg);
  CHECK(a.to_json(true).dump() == b.to_json(true).dump());
  CHECK(a.passed());
  cfg.parallel = false;
  CHECK(wc::run_suite("theorem", cfg).to_json(true).dump() == a.to_json(true).dump());
}
