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


// wittgroup: command-line front end. Every command prints a versioned JSON
// report (or CSV / text) and exits 0 on success, 1 when a check fails, 2 on
// usage errors and 3 when a resource cap is hit.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "wittgroup/cli.hpp"

namespace wc = wittgroup::cli;
using namespace wittgroup;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Output {
  std::string format = "json";
  std::string path;
  bool comparable = false;
};

std::size_t log_p(std::uint64_t x, std::uint32_t p) {
  std::size_t k = 0;
  for (; x > 1; x /= p) ++k;
  return k;
}

int emit(const wc::Report& r, const Output& out) {
  std::string text;
  if (out.format == "csv") {
    text = r.to_csv();
  } else if (out.format == "text") {
    text = r.to_text();
    if (!r.data.is_null()) text += r.data.dump(2) + "\n";
  } else {
    text = r.to_json(out.comparable).dump(2) + "\n";
  }
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path);
    if (!f) throw wc::ParseError(out.path, 0, "cannot open output file");
    f << text;
  }
  return wc::exit_code(r);
}

wc::Report data_report(std::string command, std::uint64_t seed, json data, Clock::time_point t0) {
  wc::Report r;
  r.command = std::move(command);
  r.seed = seed;
  r.data = std::move(data);
  r.timestamp = wc::utc_timestamp();
  r.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

RingPtr ring_of(const FiniteGroup& g) {
  const LocalRing& a = g.ring();
  return a.kind() == RingKind::DualNumbers ? LocalRing::dual(a.p(), a.d())
                                           : LocalRing::galois(a.p(), a.m(), a.d());
}

// F_p-dimensions of ker(G -> SL_n(A_j)) / ker(G -> SL_n(A_{j+1})) down the
// filtration of A, top layer first.
json kernel_layers(const GroupPtr& g) {
  const RingPtr a = ring_of(*g);
  std::vector<RingPtr> targets;
  if (a->kind() == RingKind::DualNumbers) {
    targets.push_back(LocalRing::galois(a->p(), 1, a->d()));
  } else {
    for (std::uint32_t j = a->m() - 1; j >= 1; --j) targets.push_back(LocalRing::galois(a->p(), j, a->d()));
  }
  json layers = json::array();
  std::uint64_t previous = 1;
  for (const RingPtr& t : targets) {
    const std::uint64_t k = induced_hom(g, RingSurjection(a, t)).kernel().size();
    layers.push_back(log_p(k / previous, a->p()));
    previous = k;
  }
  return layers;
}

json cohomology_json(const CohomologySpace& h, bool with_basis) {
  json j = {{"degree", h.degree()}, {"p", h.p()}, {"dim_Z", h.dim_z()}, {"dim_B", h.dim_b()}, {"dim_H", h.dim_h()}};
  if (with_basis) j["basis"] = h.basis();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wittgroup: cohomology and conjugacy of subgroups of SL_n over finite local rings"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(wc::kVersion));

  Output out;
  std::uint64_t seed = wc::kDefaultSeed;
  std::size_t cap = kDefaultClosureCap;
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", out.path, "Write the report to a file instead of stdout");
  app.add_flag("--comparable", out.comparable, "Omit timestamp and wall time (comparison mode)");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--cap", cap, "Closure cap for enumerated groups")->capture_default_str();

  std::function<wc::Report()> run;
  const std::string command_line = [&] {
    std::string s;
    for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
    return s;
  }();

  // group order
  auto* group = app.add_subcommand("group", "Matrix groups")->require_subcommand(1);
  auto* group_order = group->add_subcommand("order", "Order and kernel layers of SL_n(A)");
  std::string group_spec, ring_spec;
  std::size_t n = 2;
  group_order->add_option("--group", group_spec, "Group spec sl<n>:<ring>");
  group_order->add_option("--ring", ring_spec, "Ring spec (with --n)");
  group_order->add_option("--n", n, "Matrix size")->capture_default_str();
  group_order->callback([&] {
    run = [&] {
      const auto t0 = Clock::now();
      wc::GroupSpec gs;
      if (!group_spec.empty()) {
        gs = wc::parse_group(group_spec);
      } else if (!ring_spec.empty()) {
        gs = wc::parse_group("sl" + std::to_string(n) + ":" + ring_spec);
      } else {
        throw wc::ParseError("", 0, "group order needs --group or --ring");
      }
      const GroupPtr g = wc::build_group(gs, cap);
      json data = {{"group", wc::to_string(gs)},
                   {"order", g->order()},
                   {"expected_order", sl_order(gs.n, *gs.ring)},
                   {"generator_count", g->num_generators()},
                   {"kernel_dims_by_layer", kernel_layers(g)}};
      return data_report("group order --group " + wc::to_string(gs), seed, data, t0);
    };
  });

  // module classify
  auto* module = app.add_subcommand("module", "Conjugation modules")->require_subcommand(1);
  auto* classify = module->add_subcommand("classify", "Submodule lattice of M_0(k) by exhaustive spinning");
  std::string field_spec = "gf:2,2";
  bool serial = false;
  classify->add_option("--n", n, "Matrix size")->capture_default_str();
  classify->add_option("--k", field_spec, "Residue field gf:p,d")->capture_default_str();
  classify->add_flag("--serial", serial, "Use the serial kernels");
  classify->callback([&] {
    run = [&] {
      const auto t0 = Clock::now();
      const wc::GroupSpec gs = wc::parse_group("sl" + std::to_string(n) + ":" + field_spec);
      if (gs.ring->m() != 1 || gs.ring->kind() != RingKind::GaloisRing) {
        throw wc::ParseError(field_spec, 0, "--k must be a field");
      }
      const GroupPtr g = wc::build_group(gs, cap);
      const GModule m0 = build_module(ModuleKind::M0, g);
      const auto s = scalar_basis_m0(*g);
      const ClassificationReport r = classify_submodules(m0, s, !serial);
      json dims = json::array();
      for (const auto& sub : r.submodules) dims.push_back(sub.size());
      json data = {{"module_dim", r.dim},
                   {"s_dim", r.s_dim},
                   {"dims", dims},
                   {"submodule_count", r.submodules.size()},
                   {"vectors_checked", r.vectors_checked},
                   {"lemma_holds", r.lemma_holds},
                   {"hom_dim", hom_space(m0, m0).size()}};
      data["witness"] = r.witness ? json(*r.witness) : json(nullptr);
      return data_report("module classify --n " + std::to_string(n) + " --k " + field_spec, seed, data, t0);
    };
  });

  // cohomology h1|h2
  auto* cohomology = app.add_subcommand("cohomology", "H^1 and H^2 of a conjugation module")->require_subcommand(1);
  std::string module_spec = "m0";
  bool with_basis = false;
  for (int degree : {1, 2}) {
    auto* sub = cohomology->add_subcommand("h" + std::to_string(degree), "H^" + std::to_string(degree) + "(G, M)");
    sub->add_option("--group", group_spec, "Group spec sl<n>:<ring>")->required();
    sub->add_option("--module", module_spec, "Module spec")->capture_default_str();
    sub->add_flag("--basis", with_basis, "Include cocycle representatives of a basis");
    sub->add_flag("--serial", serial, "Use the serial kernels");
    sub->callback([&, degree] {
      run = [&, degree] {
        const auto t0 = Clock::now();
        const wc::GroupSpec gs = wc::parse_group(group_spec);
        const wc::ModuleSpec ms = wc::parse_module(module_spec);
        const GroupPtr g = wc::build_group(gs, cap);
        const GModule m = wc::build_module(ms, g);
        const CohomologySpace h = degree == 1 ? h1(m) : h2(m, !serial);
        json data = cohomology_json(h, with_basis);
        data["group"] = wc::to_string(gs);
        data["module"] = wc::to_string(ms);
        data["group_order"] = g->order();
        data["dim_H_over_k"] = h.dim_h() / gs.ring->d();
        return data_report("cohomology h" + std::to_string(degree) + " --group " + wc::to_string(gs) +
                               " --module " + wc::to_string(ms),
                           seed, data, t0);
      };
    });
  }

  // extension split-check | build
  auto* extension = app.add_subcommand("extension", "Extensions with abelian kernel")->require_subcommand(1);
  auto* split = extension->add_subcommand("split-check", "Sylow, cohomological and search verdicts");
  std::string ext_spec;
  split->add_option("--ext", ext_spec, "Extension spec sl<n>:<ring A>-><ring B>[@m0|@v]")->required();
  split->add_flag("--serial", serial, "Use the serial kernels");
  split->callback([&] {
    run = [&] {
      const auto t0 = Clock::now();
      const wc::ExtensionSpec es = wc::parse_extension(ext_spec);
      const auto e = wc::build_extension(es);
      json data = wc::to_json(split_check(*e, seed, !serial));
      data["ext"] = ext_spec;
      return data_report("extension split-check --ext " + ext_spec, seed, data, t0);
    };
  });
  auto* build = extension->add_subcommand("build", "Twisted product M x_x G from a 2-cocycle");
  std::string cocycle_src, dump_path;
  build->add_option("--group", group_spec, "Group spec over a field")->required();
  build->add_option("--module", module_spec, "Module spec")->capture_default_str();
  build->add_option("--cocycle", cocycle_src, "Cocycle file or \"derived\"")->required();
  build->add_option("--dump", dump_path, "Write the cocycle table to this file");
  build->callback([&] {
    run = [&] {
      const auto t0 = Clock::now();
      const wc::GroupSpec gs = wc::parse_group(group_spec);
      const wc::ModuleSpec ms = wc::parse_module(module_spec);
      GModule m;
      Cocycle2 x;
      if (cocycle_src == "derived") {
        // The extension SL_n(W_2(k)) -> SL_n(k) with kernel M_0, or V for
        // the quotient by scalars.
        const LocalRing& k = *gs.ring;
        if (k.kind() != RingKind::GaloisRing || k.m() != 1) {
          throw wc::ParseError(group_spec, 0, "derived cocycles need a group over a field");
        }
        if (ms.power != 1 || (ms.base != wc::ModuleBase::M0 && ms.base != wc::ModuleBase::V)) {
          throw wc::ParseError(module_spec, 0, "derived cocycles exist for m0 and v");
        }
        const auto e = wc::build_extension({gs.n, LocalRing::galois(k.p(), 2, k.d()), gs.ring,
                                            ms.base == wc::ModuleBase::V ? ModuleKind::V : ModuleKind::M0});
        m = e->kernel();
        x = extension_cocycle(*e);
      } else {
        std::ifstream f(cocycle_src);
        if (!f) throw wc::ParseError(cocycle_src, 0, "cannot open cocycle file");
        x = wc::read_cocycle(f);
        m = wc::build_module(ms, wc::build_group(gs, cap));
      }
      if (!dump_path.empty()) {
        std::ofstream f(dump_path);
        wc::write_cocycle(f, x);
      }
      const auto t = build_twisted(m, x);
      json data = {{"group", wc::to_string(gs)},
                   {"module", wc::to_string(ms)},
                   {"order", t->order()},
                   {"kernel_dim", m.dim()},
                   {"cocycle_valid", true}};
      if (m.group()->order() <= kMaxH2Order) {
        const CohomologySpace h = h2(m);
        const FpVector cls = h.class_of(h.coordinates().coords2(x));
        data["h2_dim"] = h.dim_h();
        data["class"] = cls;
        data["split"] = cls == FpVector(h.dim_h(), 0);
      }
      return data_report("extension build --group " + wc::to_string(gs) + " --module " + wc::to_string(ms) +
                             " --cocycle " + cocycle_src,
                         seed, data, t0);
    };
  });

  // verify-theorem
  auto* verify = app.add_subcommand("verify-theorem", "Seeded perturbed-lift instances of the structure theorem");
  std::string ring_a = "gr:2,2,2", ring_b = "gr:2,1,2";
  std::size_t trials = 100;
  bool all_certificates = false;
  verify->add_option("--ring-a", ring_a, "Ring A")->capture_default_str();
  verify->add_option("--ring-b", ring_b, "Ring B, a quotient of A")->capture_default_str();
  verify->add_option("--n", n, "Matrix size")->capture_default_str();
  verify->add_option("--trials", trials, "Number of instances")->capture_default_str();
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_flag("--certificates", all_certificates, "Include every certificate, not just the first");
  verify->add_flag("--serial", serial, "Run the trials serially");
  verify->callback([&] {
    run = [&] {
      const auto t0 = Clock::now();
      const RingPtr a = wc::parse_ring(ring_a);
      const RingPtr b = wc::parse_ring(ring_b);
      const auto outcomes = theorem_trials(n, a, b, trials, seed, !serial);
      wc::Report r;
      r.command = "verify-theorem --ring-a " + a->spec() + " --ring-b " + b->spec() + " --n " + std::to_string(n) +
                  " --trials " + std::to_string(trials) + " --seed " + std::to_string(seed);
      r.seed = seed;
      json rows = json::array();
      json certificates = json::array();
      std::size_t passed = 0;
      for (const auto& o : outcomes) {
        rows.push_back({{"seed", o.seed},
                        {"passed", o.passed},
                        {"h_order", o.h_order},
                        {"m0h_dim", o.m0h_dim},
                        {"short_circuit", o.short_circuit},
                        {"error", o.error}});
        passed += o.passed ? 1 : 0;
        if (all_certificates || certificates.empty()) {
          TheoremInstance inst = perturbed_instance(n, a, b, o.seed);
          inst.counterexample_mode = true;
          const ConjugationCertificate c = verify_main_theorem(inst);
          json cj = wc::to_json(c);
          cj["independent_check"] = check_certificate(inst, c);
          certificates.push_back(cj);
        }
      }
      r.records.push_back({"verified instances", "Proposition artinian case", trials, passed, passed == trials});
      r.data = {{"trials", rows}, {"certificates", certificates}};
      r.timestamp = wc::utc_timestamp();
      r.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      return r;
    };
  });

  // counterexample f5|f4|sections
  auto* counter = app.add_subcommand("counterexample", "Documented failures of the theorem's conclusion");
  std::string which;
  counter->add_option("which", which, "f5, f4 or sections")->required()->check(CLI::IsMember({"f5", "f4", "sections"}));
  counter->callback([&] {
    run = [&] { return wc::counterexample_report(which, {seed, trials, true}); };
  });

  // nonsplit-suite
  auto* nonsplit = app.add_subcommand("nonsplit-suite", "Splitting verdicts for SL_2(W_{m+1}(F_4)) -> SL_2(W_m(F_4))");
  nonsplit->add_flag("--serial", serial, "Use the serial kernels");
  nonsplit->callback([&] {
    run = [&] {
      wc::Report r = wc::run_suite("nonsplit", {seed, trials, !serial});
      r.command = "nonsplit-suite --seed " + std::to_string(seed);
      return r;
    };
  });

  // formula1
  auto* formula = app.add_subcommand("formula1", "Power formula against literal multiplication");
  std::uint32_t level = 1;
  formula->add_option("--n", n, "Matrix size")->capture_default_str();
  formula->add_option("--k", field_spec, "Residue field gf:p,d")->capture_default_str();
  formula->add_option("--m", level, "Level m")->capture_default_str();
  formula->add_option("--trials", trials, "Number of seeded trials")->capture_default_str();
  formula->add_option("--seed", seed, "Random seed")->capture_default_str();
  formula->callback([&] {
    run = [&] { return wc::formula1_report(n, wc::parse_ring(field_spec), level, {seed, trials, true}); };
  });

  // run-suite
  auto* suite = app.add_subcommand("run-suite", "Run a named suite of checks");
  std::string suite_name = "all";
  suite->add_option("name", suite_name, "paper-tables (tables), nonsplit, theorem, counterexamples or all")
      ->check(CLI::IsMember(wc::suite_names()))
      ->capture_default_str();
  suite->add_option("--seed", seed, "Random seed")->capture_default_str();
  suite->add_option("--trials", trials, "Trials for the seeded parts")->capture_default_str();
  suite->add_flag("--serial", serial, "Use the serial kernels");
  suite->callback([&] {
    run = [&] { return wc::run_suite(suite_name, {seed, trials, !serial}); };
  });

  // report compare
  auto* report = app.add_subcommand("report", "Report utilities")->require_subcommand(1);
  auto* compare = report->add_subcommand("compare", "Compare two JSON reports in comparison mode");
  std::string lhs_path, rhs_path;
  compare->add_option("lhs", lhs_path, "First report")->required()->check(CLI::ExistingFile);
  compare->add_option("rhs", rhs_path, "Second report")->required()->check(CLI::ExistingFile);
  compare->callback([&] {
    run = [&] {
      const auto t0 = Clock::now();
      auto load = [](const std::string& p) {
        std::ifstream f(p);
        json j = json::parse(f, nullptr, false);
        if (j.is_discarded()) throw wc::ParseError(p, 0, "not a JSON report");
        j.erase("timestamp");
        j.erase("wall_seconds");
        return j;
      };
      const json a = load(lhs_path);
      const json b = load(rhs_path);
      wc::Report r = data_report("report compare", seed, json{{"diff", json::diff(a, b)}}, t0);
      r.records.push_back({"reports identical modulo timestamp", "determinism", true, a == b, a == b});
      return r;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wc::kExitPass : wc::kExitUsage;
  }

  try {
    wc::apply_thread_limit();
    wc::Report r = run();
    if (r.command.empty()) r.command = command_line;
    return emit(r, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wc::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wc::kExitCheckFailed;
  }
}
