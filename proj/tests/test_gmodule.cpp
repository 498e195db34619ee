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

#include <random>
#include <set>

#include "doctest.h"
#include "wittgroup/errors.hpp"
#include "wittgroup/gmodule.hpp"

using namespace wittgroup;

namespace {

GroupPtr sl(std::size_t n, std::uint32_t p, std::uint32_t d, std::uint32_t m = 1) {
  auto ring = LocalRing::galois(p, m, d);
  return FiniteGroup::closure(sl_generators(n, ring, ring->residue_field()));
}

FpVector unit(std::size_t dim, std::size_t i) {
  FpVector v(dim, 0);
  v[i] = 1;
  return v;
}

// Invariant subspaces found by enumerating every subspace of F_2^dim.
std::size_t brute_invariant_subspaces(const GModule& m) {
  const std::size_t dim = m.dim();
  std::set<std::vector<FpVector>> all;
  std::vector<std::vector<FpVector>> frontier(1);
  all.insert(std::vector<FpVector>{});
  while (!frontier.empty()) {
    std::vector<std::vector<FpVector>> next;
    for (const auto& sub : frontier) {
      for (std::uint64_t code = 1; code < (std::uint64_t{1} << dim); ++code) {
        FpVector v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = (code >> i) & 1u;
        auto grown = sub;
        grown.push_back(v);
        auto canon = canonical_basis(2, dim, grown);
        if (canon.size() == sub.size()) continue;
        if (all.insert(canon).second) next.push_back(canon);
      }
    }
    frontier = std::move(next);
  }
  std::size_t count = 0;
  for (const auto& sub : all) {
    bool ok = true;
    for (const auto& b : sub) {
      for (const auto& a : m.generator_actions()) {
        Echelon e(2, dim);
        for (const auto& s : sub) e.insert(s);
        ok = ok && e.contains(a.apply(b));
      }
    }
    count += ok ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST_CASE("module dimensions") {
  auto g = sl(2, 2, 2);
  CHECK(build_module(ModuleKind::M, g).dim() == 8);
  CHECK(build_module(ModuleKind::M0, g).dim() == 6);
  CHECK(build_module(ModuleKind::S, g).dim() == 2);
  CHECK(build_module(ModuleKind::V, g).dim() == 4);
  auto g5 = sl(2, 5, 1);
  CHECK(build_module(ModuleKind::M0, g5).dim() == 3);
  CHECK(build_module(ModuleKind::S, g5).dim() == 0);
  CHECK(build_module(ModuleKind::M0, sl(3, 2, 2)).dim() == 16);
  CHECK(direct_power(build_module(ModuleKind::M0, g), 2).dim() == 12);
  for (auto kind : {ModuleKind::M, ModuleKind::M0, ModuleKind::S, ModuleKind::V}) {
    CHECK_NOTHROW(build_module(kind, g).validate());
  }
  CHECK_NOTHROW(build_module(ModuleKind::M0, sl(2, 2, 2, 2)).validate());
}

TEST_CASE("conjugation action on a basis vector") {
  // (I + e12) e21 (I - e12) = [[1,-1],[1,-1]] = e21 + (e11 - e22) - e12.
  auto g = sl(2, 5, 1);
  const GModule m0 = build_module(ModuleKind::M0, g);
  const RingMatrix u = RingMatrix::elementary(&g->ring(), 2, 0, 1, 1);
  const std::uint32_t ui = g->index_of(u);
  const FpVector e21 = {0, 0, 1};  // positions (0,0), (0,1), (1,0)
  CHECK(m0.act(ui, e21) == FpVector{1, 4, 1});
  CHECK(m0.labels()[0] == "(e11-e22)*x^0");
}

TEST_CASE("inconsistent actions are rejected") {
  auto g = sl(2, 2, 1);
  std::vector<FpMatrix> acts(g->num_generators(), FpMatrix::identity(2, 1));
  FpMatrix minus(2, 2, 2);
  minus.at(0, 1) = 1;
  minus.at(1, 0) = 1;
  acts[0] = minus;  // swaps, but I + e12 has order 2 and the other is trivial
  acts[1] = FpMatrix::identity(2, 2);
  for (auto& a : acts) {
    if (a.rows() != 2) a = FpMatrix::identity(2, 2);
  }
  // SL_2(F_2) = S_3 has no quotient where one transvection acts trivially
  // and the other does not.
  const GModule bad = GModule::from_generator_actions(g, 2, 2, acts);
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("spinning") {
  auto g = sl(2, 2, 2);
  const GModule m0 = build_module(ModuleKind::M0, g);
  CHECK(spin(m0, {FpVector(6, 0)}).empty());
  const auto scalars = scalar_basis_m0(*g);
  // Scalars are fixed, so I spins to the F_2-line through I; the k-line
  // {I, xI} needs both seeds.
  CHECK(spin(m0, {scalars[0]}).size() == 1);
  CHECK(spin(m0, scalars).size() == 2);
  CHECK(spin(m0, {unit(6, 2)}).size() == 6);  // e12 * x^0

  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    FpVector a(6), b(6);
    for (auto& x : a) x = rng() % 2;
    for (auto& x : b) x = rng() % 2;
    const auto sa = spin(m0, {a});
    CHECK(spin(m0, sa) == sa);
    const auto sab = spin(m0, {a, b});
    Echelon e(2, 6);
    for (const auto& v : sab) e.insert(v);
    for (const auto& v : sa) CHECK(e.contains(v));
  }
}

TEST_CASE("submodule classification") {
  auto g4 = sl(2, 2, 2);
  const GModule m0 = build_module(ModuleKind::M0, g4);
  const auto r4 = classify_submodules(m0, scalar_basis_m0(*g4));
  CHECK(r4.lemma_holds);
  CHECK(r4.submodules.size() == 6);
  CHECK(brute_invariant_subspaces(m0) == 6);
  const auto serial = classify_submodules(m0, scalar_basis_m0(*g4), false);
  CHECK(serial.submodules == r4.submodules);

  auto g5 = sl(2, 5, 1);
  const auto r5 = classify_submodules(build_module(ModuleKind::M0, g5), {});
  CHECK(r5.lemma_holds);
  CHECK(r5.submodules.size() == 2);

  auto g34 = sl(3, 2, 2);
  const auto r34 = classify_submodules(build_module(ModuleKind::M0, g34), {});
  CHECK(r34.lemma_holds);
  CHECK(r34.vectors_checked == 65535);
  CHECK(r34.submodules.size() == 2);

  // Outside the lemma's range the report is produced without an assertion.
  auto g2 = sl(2, 2, 1);
  const GModule m02 = build_module(ModuleKind::M0, g2);
  const auto r2 = classify_submodules(m02, scalar_basis_m0(*g2));
  CHECK(r2.submodules.size() == brute_invariant_subspaces(m02));
}

TEST_CASE("hom spaces") {
  auto g4 = sl(2, 2, 2);
  const GModule m0 = build_module(ModuleKind::M0, g4);
  const auto end = hom_space(m0, m0);
  CHECK(end.size() == 2);
  // Multiplication by x on every k-coordinate pair is equivariant.
  FpMatrix times_x(2, 6, 6);
  for (std::size_t b = 0; b < 3; ++b) {
    // x * (c0 + c1 x) = c1 + (c0 + c1) x  using x^2 = x + 1.
    times_x.at(2 * b, 2 * b + 1) = 1;
    times_x.at(2 * b + 1, 2 * b) = 1;
    times_x.at(2 * b + 1, 2 * b + 1) = 1;
  }
  CHECK(is_equivariant(m0, m0, times_x));
  for (const auto& t : end) CHECK(is_equivariant(m0, m0, t));

  auto g5 = sl(2, 5, 1);
  const GModule m05 = build_module(ModuleKind::M0, g5);
  CHECK(hom_space(m05, m05).size() == 1);

  const auto scalars = scalar_basis_m0(*g4);
  const Quotient v = quotient(m0, scalars);
  const auto to_v = hom_space(m0, v.module);
  CHECK(to_v.size() == 2);
  for (const auto& t : to_v) {
    for (const auto& s : scalars) CHECK(t.apply(s) == FpVector(4, 0));
  }
  CHECK(is_equivariant(m0, v.module, v.projection));
}

TEST_CASE("module operations") {
  auto g4 = sl(2, 2, 2);
  const GModule m0 = build_module(ModuleKind::M0, g4);
  const auto scalars = scalar_basis_m0(*g4);
  const auto all = spin(m0, {unit(6, 2)});
  CHECK(intersect(m0, all, all) == all);
  CHECK(intersect(m0, scalars, all) == canonical_basis(2, 6, scalars));
  CHECK(spin(m0, sum(m0, scalars, {})).size() == 2);
  std::vector<FpVector> with_line = scalars;
  with_line.push_back(unit(6, 2));
  CHECK(spin(m0, with_line).size() == 6);
  CHECK_THROWS_AS(submodule(m0, {unit(6, 2)}), Error);
  CHECK_THROWS_AS(quotient(m0, {unit(6, 2)}), Error);

  const Submodule s = submodule(m0, scalars);
  CHECK(s.module.dim() == 2);
  CHECK(s.module.is_trivial());
  CHECK(is_equivariant(s.module, m0, s.inclusion));
  const Quotient q = quotient(m0, scalars);
  CHECK((q.projection * s.inclusion).is_zero());
  CHECK((q.projection * q.lift).is_identity());

  const GModule sq = direct_power(m0, 2);
  CHECK(sq.dim() == 12);
  CHECK_NOTHROW(sq.validate());
}
