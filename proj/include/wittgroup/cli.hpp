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


#ifndef WITTGROUP_CLI_HPP_
#define WITTGROUP_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wittgroup/structure_theorem.hpp"
#include "wittgroup/errors.hpp"

namespace wittgroup::cli {

inline constexpr int kSchema = 1;
inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 7;

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceCap = 3;

// ErrorKind::ParseError carrying the offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(std::string_view input, std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct GroupSpec {
  std::size_t n = 2;
  RingPtr ring;
};

enum class ModuleBase { M, M0, S, V, Trivial };

struct ModuleSpec {
  ModuleBase base = ModuleBase::M0;
  std::size_t trivial_dim = 0;
  std::size_t power = 1;
};

// SL_n(A) -> SL_n(B) with kernel M0 or V = M0 / S.
struct ExtensionSpec {
  std::size_t n = 2;
  RingPtr a;
  RingPtr b;
  ModuleKind kernel = ModuleKind::M0;
};

using Descriptor = std::variant<RingPtr, GroupSpec, ModuleSpec>;

// ring:   "gr:p,m,d" | "gr:p=P,m=M,d=D" | "gf:p,d" | "dual:p,d" | "zmod:N"
// group:  "sl<n>:<ring>"
// module: "m0" | "m" | "s" | "v" | "trivial:<d>", optionally "^r"
// ext:    "<group>-><ring>", optionally "@v" for the kernel V
RingPtr parse_ring(std::string_view text);
GroupSpec parse_group(std::string_view text);
ModuleSpec parse_module(std::string_view text);
ExtensionSpec parse_extension(std::string_view text);
// Dispatches on the leading token.
Descriptor parse_spec(std::string_view text);

std::string to_string(const GroupSpec& g);
std::string to_string(const ModuleSpec& m);

GroupPtr build_group(const GroupSpec& g, std::size_t cap = kDefaultClosureCap);
// Coefficients in the residue field of the group's ring.
GModule build_module(const ModuleSpec& m, const GroupPtr& g);
std::shared_ptr<ExtensionDescription> build_extension(const ExtensionSpec& e);

struct Record {
  std::string name;
  std::string anchor;
  nlohmann::json expected;
  nlohmann::json computed;
  bool pass = false;
};

struct Report {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Record> records;
  nlohmann::json data;  // command output beyond the records
  double wall_seconds = 0;
  std::string timestamp;

  bool passed() const;
  // Comparison mode drops the timestamp and the wall time.
  nlohmann::json to_json(bool comparison = false) const;
  // One line per record.
  std::string to_csv() const;
  std::string to_text() const;
};

struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 100;
  bool parallel = true;
};

// "paper-tables" (alias "tables"), "nonsplit", "theorem", "counterexamples"
// or "all". Unknown names raise ParseError.
Report run_suite(std::string_view name, const SuiteConfig& config = {});
const std::vector<std::string>& suite_names();

// "f5", "f4" or "sections"; the data field carries the witnesses.
Report counterexample_report(std::string_view which, const SuiteConfig& config = {});
// config.trials seeded checks of the power formula over k = GF(p^d).
Report formula1_report(std::size_t n, const RingPtr& k, std::uint32_t m, const SuiteConfig& config = {});

// Cocycle files: "|G| D p" followed by the |G|^2 D values of the full table.
Cocycle2 read_cocycle(std::istream& in);
void write_cocycle(std::ostream& out, const Cocycle2& x);

// 0 when every record passes, else 1.
int exit_code(const Report& r);
// 3 for CapExceeded and SizeExceeded, 2 for ParseError, else 1.
int exit_code(const Error& e);

// Reads WITTGROUP_THREADS and bounds the OpenMP worker count; returns the
// bound in effect (0 when unset).
int apply_thread_limit();

std::string utc_timestamp();

nlohmann::json to_json(const RingMatrix& m);
nlohmann::json to_json(const ConjugationCertificate& c);
nlohmann::json to_json(const SplitVerdict& v);

}  // namespace wittgroup::cli

#endif  // WITTGROUP_CLI_HPP_
