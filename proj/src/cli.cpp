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


#include "wittgroup/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#ifdef WITTGROUP_HAVE_OPENMP
#include <omp.h>
#endif

namespace wittgroup::cli {

using nlohmann::json;

namespace {

std::string describe(std::string_view input, std::size_t pos, const std::string& message) {
  return message + " at position " + std::to_string(pos) + " in \"" + std::string(input) + "\"";
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  std::size_t pos() const { return pos_; }
  std::string_view rest() const { return s_.substr(pos_); }

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(s_, at, message);
  }
  [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

  bool accept(std::string_view token) {
    if (rest().substr(0, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected \"" + std::string(token) + "\"");
  }
  std::string word() {
    const std::size_t start = pos_;
    while (!eof() && std::islower(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::uint64_t number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > (std::uint64_t{1} << 32)) fail("number too large", start);
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }
  void finish() const {
    if (!eof()) fail("unexpected trailing input");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// Arguments of a ring spec: positional "a,b,c" or keyed "p=..,m=..".
std::vector<std::uint64_t> ring_args(Cursor& c, const std::vector<std::string>& keys) {
  std::vector<std::uint64_t> out(keys.size(), 0);
  if (std::islower(static_cast<unsigned char>(c.peek()))) {
    std::vector<bool> seen(keys.size(), false);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i > 0) c.expect(",");
      const std::size_t at = c.pos();
      const std::string key = c.word();
      std::size_t slot = keys.size();
      for (std::size_t j = 0; j < keys.size(); ++j) {
        if (keys[j] == key) slot = j;
      }
      if (slot == keys.size()) c.fail("unknown key \"" + key + "\"", at);
      if (seen[slot]) c.fail("repeated key \"" + key + "\"", at);
      seen[slot] = true;
      c.expect("=");
      out[slot] = c.number();
    }
  } else {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i > 0) c.expect(",");
      out[i] = c.number();
    }
  }
  return out;
}

RingPtr make_ring(const Cursor& c, std::size_t at, const std::string& kind,
                  const std::vector<std::uint64_t>& a) {
  auto u32 = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  try {
    if (kind == "gr") return LocalRing::galois(u32(a[0]), u32(a[1]), u32(a[2]));
    if (kind == "gf") return LocalRing::galois(u32(a[0]), 1, u32(a[1]));
    if (kind == "dual") return LocalRing::dual(u32(a[0]), u32(a[1]));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    c.fail(e.what(), at);
  }
  c.fail("unknown ring kind \"" + kind + "\"", at);
}

RingPtr ring_at(Cursor& c) {
  const std::size_t at = c.pos();
  const std::string kind = c.word();
  if (kind != "gr" && kind != "gf" && kind != "dual" && kind != "zmod") {
    c.fail("expected a ring (gr, gf, dual or zmod)", at);
  }
  c.expect(":");
  const std::size_t args_at = c.pos();
  if (kind == "zmod") {
    const std::uint64_t n = c.number();
    std::uint64_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (n < 2) c.fail("modulus must be at least 2", args_at);
    if (n % p != 0) p = n;
    std::uint64_t q = n;
    std::uint64_t m = 0;
    while (q % p == 0) {
      q /= p;
      ++m;
    }
    if (q != 1) c.fail("modulus is not a prime power", args_at);
    return make_ring(c, args_at, "gr", {p, m, 1});
  }
  if (kind == "gr") return make_ring(c, args_at, kind, ring_args(c, {"p", "m", "d"}));
  return make_ring(c, args_at, kind, ring_args(c, {"p", "d"}));
}

GroupSpec group_at(Cursor& c) {
  c.expect("sl");
  const std::size_t at = c.pos();
  GroupSpec g;
  g.n = c.number();
  if (g.n < 2 || g.n > kMaxMatrixSize) {
    c.fail("matrix size must be between 2 and " + std::to_string(kMaxMatrixSize), at);
  }
  c.expect(":");
  g.ring = ring_at(c);
  return g;
}

bool starts_ring(std::string_view s) {
  for (std::string_view k : {"gr:", "gf:", "dual:", "zmod:"}) {
    if (s.substr(0, k.size()) == k) return true;
  }
  return false;
}

bool starts_group(std::string_view s) {
  return s.size() > 2 && s.substr(0, 2) == "sl" && std::isdigit(static_cast<unsigned char>(s[2]));
}

}  // namespace

ParseError::ParseError(std::string_view input, std::size_t position, const std::string& message)
    : Error(ErrorKind::ParseError, describe(input, position, message)), position_(position) {}

RingPtr parse_ring(std::string_view text) {
  Cursor c(text);
  RingPtr r = ring_at(c);
  c.finish();
  return r;
}

GroupSpec parse_group(std::string_view text) {
  Cursor c(text);
  GroupSpec g = group_at(c);
  c.finish();
  return g;
}

ModuleSpec parse_module(std::string_view text) {
  Cursor c(text);
  ModuleSpec m;
  const std::size_t at = c.pos();
  if (c.accept("trivial:")) {
    m.base = ModuleBase::Trivial;
    m.trivial_dim = c.number();
    if (m.trivial_dim == 0) c.fail("trivial module needs positive dimension", at + 8);
  } else if (c.accept("m0")) {
    m.base = ModuleBase::M0;
  } else if (c.accept("m")) {
    m.base = ModuleBase::M;
  } else if (c.accept("s")) {
    m.base = ModuleBase::S;
  } else if (c.accept("v")) {
    m.base = ModuleBase::V;
  } else {
    c.fail("expected a module (m0, m, s, v or trivial:<d>)");
  }
  if (c.accept("^")) {
    const std::size_t pat = c.pos();
    m.power = c.number();
    if (m.power == 0) c.fail("exponent must be positive", pat);
  }
  c.finish();
  return m;
}

ExtensionSpec parse_extension(std::string_view text) {
  Cursor c(text);
  const GroupSpec g = group_at(c);
  c.expect("->");
  const std::size_t at = c.pos();
  ExtensionSpec e;
  e.n = g.n;
  e.a = g.ring;
  e.b = ring_at(c);
  if (c.accept("@")) {
    const std::size_t kat = c.pos();
    if (c.accept("m0")) {
      e.kernel = ModuleKind::M0;
    } else if (c.accept("v")) {
      e.kernel = ModuleKind::V;
    } else {
      c.fail("expected kernel m0 or v", kat);
    }
  }
  c.finish();
  try {
    const RingSurjection pi(e.a, e.b);
    if (!pi.maximal_ideal_kills_kernel()) c.fail("kernel of the ring map is not killed by the maximal ideal", at);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    c.fail(err.what(), at);
  }
  return e;
}

Descriptor parse_spec(std::string_view text) {
  if (starts_group(text)) return parse_group(text);
  if (starts_ring(text)) return parse_ring(text);
  return parse_module(text);
}

std::string to_string(const GroupSpec& g) {
  return "sl" + std::to_string(g.n) + ":" + g.ring->spec();
}

std::string to_string(const ModuleSpec& m) {
  std::string s;
  switch (m.base) {
    case ModuleBase::M: s = "m"; break;
    case ModuleBase::M0: s = "m0"; break;
    case ModuleBase::S: s = "s"; break;
    case ModuleBase::V: s = "v"; break;
    case ModuleBase::Trivial: s = "trivial:" + std::to_string(m.trivial_dim); break;
  }
  if (m.power != 1) s += "^" + std::to_string(m.power);
  return s;
}

GroupPtr build_group(const GroupSpec& g, std::size_t cap) {
  return FiniteGroup::closure(sl_full_generators(g.n, g.ring), cap);
}

GModule build_module(const ModuleSpec& m, const GroupPtr& g) {
  GModule base;
  switch (m.base) {
    case ModuleBase::M: base = wittgroup::build_module(ModuleKind::M, g); break;
    case ModuleBase::M0: base = wittgroup::build_module(ModuleKind::M0, g); break;
    case ModuleBase::S: base = wittgroup::build_module(ModuleKind::S, g); break;
    case ModuleBase::V: base = wittgroup::build_module(ModuleKind::V, g); break;
    case ModuleBase::Trivial: base = trivial_module(g, g->ring().p(), m.trivial_dim); break;
  }
  return m.power == 1 ? base : direct_power(base, m.power);
}

std::shared_ptr<ExtensionDescription> build_extension(const ExtensionSpec& e) {
  const auto base = MatrixExtension::special_linear(e.n, e.a, e.b);
  if (e.kernel == ModuleKind::M0) return base;
  return std::make_shared<QuotientExtension>(base, scalar_basis_m0(*base->quotient()));
}

bool Report::passed() const {
  for (const auto& r : records) {
    if (!r.pass) return false;
  }
  return true;
}

json Report::to_json(bool comparison) const {
  json j;
  j["schema"] = kSchema;
  j["version"] = std::string(kVersion);
  j["command"] = command;
  j["seed"] = seed;
  json recs = json::array();
  json failed = json::array();
  std::size_t passes = 0;
  for (const auto& r : records) {
    recs.push_back({{"name", r.name},
                    {"anchor", r.anchor},
                    {"expected", r.expected},
                    {"computed", r.computed},
                    {"pass", r.pass}});
    if (r.pass) {
      ++passes;
    } else {
      failed.push_back(r.name + " [" + r.anchor + "]");
    }
  }
  j["records"] = recs;
  j["summary"] = {{"records", records.size()}, {"passed", passes}, {"failed", failed}};
  if (!data.is_null()) j["data"] = data;
  if (!comparison) {
    j["timestamp"] = timestamp;
    j["wall_seconds"] = wall_seconds;
  }
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "name,anchor,expected,computed,pass\n";
  for (const auto& r : records) {
    os << csv_field(r.name) << ',' << csv_field(r.anchor) << ',' << csv_field(r.expected.dump())
       << ',' << csv_field(r.computed.dump()) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << command << " (seed " << seed << ")\n";
  std::size_t passes = 0;
  for (const auto& r : records) {
    os << (r.pass ? "PASS " : "FAIL ") << r.name << "  [" << r.anchor << "]";
    if (!r.pass) os << "\n     expected " << r.expected.dump() << "\n     computed " << r.computed.dump();
    os << '\n';
    passes += r.pass ? 1 : 0;
  }
  if (!records.empty()) os << passes << "/" << records.size() << " records pass\n";
  return os.str();
}

int exit_code(const Report& r) { return r.passed() ? kExitPass : kExitCheckFailed; }

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::CapExceeded:
    case ErrorKind::SizeExceeded:
      return kExitResourceCap;
    case ErrorKind::ParseError:
      return kExitUsage;
    default:
      return kExitCheckFailed;
  }
}

int apply_thread_limit() {
  const char* env = std::getenv("WITTGROUP_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n <= 0) {
    throw ParseError(env, 0, "WITTGROUP_THREADS must be a positive integer");
  }
#ifdef WITTGROUP_HAVE_OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
  return static_cast<int>(n);
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const RingMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.n(); ++j) row.push_back(m.ring().digits(m.at(i, j)));
    rows.push_back(row);
  }
  return {{"ring", m.ring().spec()}, {"rows", rows}};
}

json to_json(const ConjugationCertificate& c) {
  json gens = json::array();
  for (const auto& g : c.verified_generators) gens.push_back(to_json(g));
  json j = {{"u", to_json(c.u)},
            {"verified_generators", gens},
            {"h_order", c.h_order},
            {"m0h_dim", c.m0h_dim},
            {"seed", c.seed},
            {"short_circuit", c.short_circuit},
            {"claim1_holds", c.claim1_holds},
            {"verified", c.verified}};
  j["obstruction"] = c.obstruction ? json(*c.obstruction) : json(nullptr);
  return j;
}

json to_json(const SplitVerdict& v) {
  json j = {{"verdict", v.split ? "Split" : "NonSplit"},
            {"sylow_order", v.sylow_order},
            {"sylow_split", v.sylow_split},
            {"search_space", v.search_space},
            {"agree", v.agree}};
  j["full_split"] = v.full_split ? json(*v.full_split) : json(nullptr);
  j["search_split"] = v.search_split ? json(*v.search_split) : json(nullptr);
  return j;
}

Cocycle2 read_cocycle(std::istream& in) {
  auto bad = [](std::size_t token, const std::string& message) -> ParseError {
    return ParseError("cocycle file", token, message);
  };
  std::uint64_t order = 0;
  std::uint64_t dim = 0;
  std::uint64_t p = 0;
  if (!(in >> order >> dim >> p)) throw bad(0, "expected header |G| D p");
  if (!is_prime(p)) throw bad(2, "p is not prime");
  if (order == 0 || order * order * std::max<std::uint64_t>(dim, 1) > kMaxCocycleTable) {
    throw bad(0, "table size out of range");
  }
  Cocycle2 x;
  x.p = static_cast<std::uint32_t>(p);
  x.order = order;
  x.dim = dim;
  x.values.resize(order * order * dim);
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    std::uint64_t v = 0;
    if (!(in >> v)) throw bad(3 + i, "missing value");
    if (v >= p) throw bad(3 + i, "value not reduced mod p");
    x.values[i] = static_cast<std::uint32_t>(v);
  }
  std::string extra;
  if (in >> extra) throw bad(3 + x.values.size(), "trailing data");
  return x;
}

void write_cocycle(std::ostream& out, const Cocycle2& x) {
  out << x.order << ' ' << x.dim << ' ' << x.p << '\n';
  const std::size_t width = std::max<std::size_t>(x.dim, 1) * x.order;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    out << x.values[i] << ((i + 1) % width == 0 ? '\n' : ' ');
  }
}

}  // namespace wittgroup::cli
