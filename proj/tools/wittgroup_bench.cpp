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


// Serial against parallel timings for the OpenMP kernels. Each row checks
// that both runs return the same result.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "wittgroup/cli.hpp"

#ifdef WITTGROUP_HAVE_OPENMP
#include <omp.h>
#endif

using namespace wittgroup;

namespace {

template <typename F>
auto timed(F&& f, double* seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = f();
  *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

struct Row {
  std::string name;
  double serial = 0;
  double parallel = 0;
  bool same = false;
};

template <typename F, typename Eq>
Row bench(const std::string& name, std::size_t repeat, F&& run, Eq&& eq) {
  Row row{name};
  for (std::size_t i = 0; i < repeat; ++i) {
    double s = 0;
    double p = 0;
    const auto a = timed([&] { return run(false); }, &s);
    const auto b = timed([&] { return run(true); }, &p);
    row.serial += s / repeat;
    row.parallel += p / repeat;
    row.same = (i == 0 || row.same) && eq(a, b);
  }
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial against parallel timings of the wittgroup kernels"};
  bool quick = false;
  std::size_t repeat = 1;
  app.add_flag("--quick", quick, "Small instances (smoke run)");
  app.add_option("--repeat", repeat, "Runs per kernel")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  cli::apply_thread_limit();

  int threads = 1;
#ifdef WITTGROUP_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d%s\n", threads, threads == 1 ? " (parallel runs cannot be faster)" : "");

  const RingPtr gr42 = LocalRing::galois(2, 2, 2);
  const RingPtr f4 = LocalRing::galois(2, 1, 2);
  const RingPtr big = quick ? gr42 : LocalRing::galois(2, 3, 2);
  std::vector<Row> rows;

  rows.push_back(bench(
      "closure SL_2(" + big->name() + ")", repeat,
      [&](bool par) {
        return par ? FiniteGroup::closure(sl_full_generators(2, big), kDefaultClosureCap, true)->elements()
                   : closure_reference(sl_full_generators(2, big));
      },
      [](const auto& a, const auto& b) { return a == b; }));

  const GroupPtr g4 = FiniteGroup::closure(sl_full_generators(2, f4));
  const GModule m0 = build_module(ModuleKind::M0, g4);
  rows.push_back(bench(
      "H^2(SL_2(F_4), M_0) relations", repeat, [&](bool par) { return h2(m0, par).basis(); },
      [](const auto& a, const auto& b) { return a == b; }));

  const GroupPtr g34 = FiniteGroup::closure(sl_full_generators(3, quick ? LocalRing::galois(2, 1, 1) : f4));
  const GModule m34 = build_module(ModuleKind::M0, g34);
  rows.push_back(bench(
      std::string("spinning M_0, n = 3, k = ") + (quick ? "F_2" : "F_4"), repeat,
      [&](bool par) { return classify_submodules(m34, scalar_basis_m0(*g34), par).submodules; },
      [](const auto& a, const auto& b) { return a == b; }));

  const auto ext = MatrixExtension::special_linear(2, gr42, f4);
  const auto v = std::make_shared<QuotientExtension>(ext, scalar_basis_m0(*ext->quotient()));
  rows.push_back(bench(
      "section search, kernel V", repeat, [&](bool par) { return search_section(*v, par); },
      [](const auto& a, const auto& b) { return a == b; }));

  const std::size_t trials = quick ? 10 : 100;
  rows.push_back(bench(
      "structure theorem, " + std::to_string(trials) + " instances", repeat,
      [&](bool par) { return theorem_trials(2, gr42, f4, trials, 7, par); },
      [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i].seed != b[i].seed || a[i].passed != b[i].passed || a[i].h_order != b[i].h_order) return false;
        }
        return true;
      }));

  std::printf("%-40s %10s %10s %8s %s\n", "kernel", "serial s", "parallel s", "speedup", "results");
  bool ok = true;
  for (const Row& r : rows) {
    std::printf("%-40s %10.3f %10.3f %8.2f %s\n", r.name.c_str(), r.serial, r.parallel,
                r.parallel > 0 ? r.serial / r.parallel : 0.0, r.same ? "identical" : "DIFFER");
    ok = ok && r.same;
  }
  return ok ? 0 : 1;
}
