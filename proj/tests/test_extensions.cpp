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
#include <unordered_set>

#include "doctest.h"
#include "wittgroup/errors.hpp"
#include "wittgroup/extensions.hpp"

using namespace wittgroup;

namespace {

using Element = ExtensionDescription::Element;

GroupPtr sl2(std::uint32_t p, std::uint32_t d, std::uint32_t m = 1) {
  return FiniteGroup::closure(sl_full_generators(2, LocalRing::galois(p, m, d)));
}

Cocycle2 zero_cocycle(const GModule& m) {
  const std::size_t n = m.group()->order();
  return Cocycle2{m.p(), n, m.dim(), FpVector(n * n * m.dim(), 0)};
}

// Z/2 acting trivially on F_2 with x(g, g) = 1.
std::shared_ptr<TwistedProduct> z4_toy() {
  const auto f2 = LocalRing::galois(2, 1, 1);
  const auto z2 = FiniteGroup::closure({RingMatrix::elementary(f2.get(), 2, 0, 1, 1)});
  const GModule k = trivial_module(z2, 2, 1);
  Cocycle2 x = zero_cocycle(k);
  x.values[(1 * 2 + 1) * 1] = 1;
  return build_twisted(k, x);
}

// A twisted product viewed with the wrong kernel module.
class WrongAction : public ExtensionDescription {
 public:
  WrongAction(std::shared_ptr<const TwistedProduct> t, GModule m) : t_(std::move(t)), m_(std::move(m)) {}
  const GroupPtr& quotient() const override { return t_->quotient(); }
  const GModule& kernel() const override { return m_; }
  Element identity() const override { return t_->identity(); }
  Element mul(const Element& a, const Element& b) const override { return t_->mul(a, b); }
  Element inv(const Element& a) const override { return t_->inv(a); }
  std::uint32_t project(const Element& a) const override { return t_->project(a); }
  Element section(std::uint32_t g) const override { return t_->section(g); }
  Element from_kernel(std::span<const std::uint32_t> v) const override { return t_->from_kernel(v); }
  FpVector kernel_coords(const Element& a) const override { return t_->kernel_coords(a); }

 private:
  std::shared_ptr<const TwistedProduct> t_;
  GModule m_;
};

}  // namespace

TEST_CASE("x = 0 gives the semidirect product") {
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto t = build_twisted(m0, zero_cocycle(m0));
  CHECK(t->order() == 64 * 60);
  const FpVector v{1, 0, 1, 1, 0, 0};
  for (std::uint32_t g = 0; g < f4->order(); ++g) {
    CHECK(t->mul(t->from_kernel(v), t->section(g)) == t->make(v, g));
  }
  CHECK(split_check(*t).split);
  CHECK(h2(m0).is_coboundary(extension_coords(*t, h2(m0).coordinates())));
}

TEST_CASE("nontrivial x over Z/2 gives Z/4") {
  const auto t = z4_toy();
  CHECK(t->order() == 4);
  CHECK(t->element_order(t->section(1)) == 4);
  CHECK(t->element_order(t->from_kernel(FpVector{1})) == 2);
  CHECK(t->element_order(t->identity()) == 1);
  const auto all = twisted_closure(t, {t->section(1)});
  CHECK(all.order() == 4);
  CHECK_FALSE(split_check(*t).split);
  const auto c = chart_conjugation_action(*t);
  CHECK(c.checked == 4);
}

TEST_CASE("group laws of a twisted product") {
  std::mt19937_64 rng(1);
  const auto f4 = sl2(2, 2);
  const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const auto t = build_twisted(e->kernel(), extension_cocycle(*e));
  CHECK(t->order() == 3840);
  for (int i = 0; i < 2000; ++i) {
    const Element a = t->element(rng() % t->order());
    const Element b = t->element(rng() % t->order());
    const Element c = t->element(rng() % t->order());
    REQUIRE(t->mul(t->mul(a, b), c) == t->mul(a, t->mul(b, c)));
    REQUIRE(t->mul(a, t->inv(a)) == t->identity());
    REQUIRE(t->mul(t->inv(a), a) == t->identity());
    REQUIRE(t->element(t->index(a)) == a);
  }
  // extension_cocycle of a twisted product returns x.
  CHECK(extension_cocycle(*t).values == t->cocycle().values);
  validate_extension(*t);
  (void)f4;
}

TEST_CASE("build_twisted rejects non-cocycles") {
  const auto f4 = sl2(2, 2);
  const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  Cocycle2 x = extension_cocycle(*e);
  Cocycle2 bent = x;
  const std::size_t g = 7;
  const std::size_t h = 11;
  bent.values[(g * x.order + h) * x.dim] ^= 1u;
  CHECK_THROWS_AS(build_twisted(e->kernel(), bent), Error);
  Cocycle2 unnormal = x;
  unnormal.values[(3 * x.order + 0) * x.dim] = 1;
  CHECK_THROWS_AS(build_twisted(e->kernel(), unnormal), Error);
  Cocycle2 short_x = x;
  short_x.values.pop_back();
  CHECK_THROWS_AS(build_twisted(e->kernel(), short_x), Error);
  (void)f4;
}

TEST_CASE("chart of SL_2(GR(4,2)) over SL_2(F_4)") {
  const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const CoordinateChart chart(e);
  CHECK(chart.target()->order() == 3840);
  const auto c = chart.verify(10000, 7);
  CHECK(c.multiplicative);
  CHECK(c.bijective);
  CHECK(c.round_trips == 10000 + 3840);
  // All matrices of SL_2(GR(4,2)) are reached.
  const auto big = sl2(2, 2, 2);
  REQUIRE(big->order() == 3840);
  std::unordered_set<RingMatrix, RingMatrixHash> hit;
  for (std::uint64_t i = 0; i < 3840; ++i) {
    hit.insert(e->matrix(chart.backward(chart.target()->element(i))));
  }
  CHECK(hit.size() == 3840);
  for (const auto& a : hit) CHECK(big->contains(a));

  CHECK(chart_conjugation_action(*chart.target()).checked == 5 * 7 * 6);
  CHECK(chart_conjugation_action(*e).checked == 5 * 7 * 6);
  const WrongAction wrong(chart.target(), trivial_module(e->quotient(), 2, 6));
  CHECK_THROWS_AS(chart_conjugation_action(wrong), Error);
}

TEST_CASE("cohomological verdicts do not depend on the section") {
  const auto a = LocalRing::galois(2, 2, 2);
  const auto digit = MatrixExtension::special_linear(2, a, LocalRing::galois(2, 1, 2));
  const auto first = MatrixExtension::from_group(sl2(2, 2, 2), LocalRing::galois(2, 1, 2));
  REQUIRE(first->kernel().dim() == 6);
  const auto h_d = h2(digit->kernel());
  const auto h_f = h2(first->kernel());
  CHECK_FALSE(h_d.is_coboundary(extension_coords(*digit, h_d.coordinates())));
  CHECK_FALSE(h_f.is_coboundary(extension_coords(*first, h_f.coordinates())));
  CHECK_FALSE(split_check(*digit).split);
  CHECK_FALSE(split_check(*first).split);
  CHECK(CoordinateChart(first).verify(2000, 3).multiplicative);
}

TEST_CASE("prop22 on N x G and its conjugates") {
  std::mt19937_64 rng(9);
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto t = std::shared_ptr<const TwistedProduct>(build_twisted(m0, zero_cocycle(m0)));
  const auto s = scalar_basis_m0(*f4);

  const auto nxg = twisted_sub_product(t, s);
  CHECK(nxg.order() == 4 * 60);
  const auto a0 = prop22_analyze(nxg, s);
  const Echelon n_span = [&] {
    Echelon e(2, 6);
    for (const auto& b : s) e.insert(b);
    return e;
  }();
  for (std::uint32_t g = 0; g < f4->order(); ++g) CHECK(n_span.contains(a0.xi.at(g)));
  const auto t0 = prop22_trivialize(a0);
  REQUIRE(t0.m.has_value());
  CHECK(n_span.contains(*t0.m) == true);
  CHECK(t0.verified);

  for (int trial = 0; trial < 5; ++trial) {
    FpVector m_0(6);
    for (auto& c : m_0) c = rng() % 2;
    const auto h = conjugate(nxg, t->make(m_0, 0));
    const auto a = prop22_analyze(h);
    CHECK(a.n_basis == canonical_basis(2, 6, s));
    for (std::uint32_t g = 0; g < f4->order(); ++g) {
      FpVector expect = m0.act(g, m_0);
      const auto got = a.xi.at(g);
      for (std::size_t k = 0; k < 6; ++k) expect[k] = (expect[k] + m_0[k] + got[k]) % 2;
      CHECK(n_span.contains(expect));
    }
    const auto tr = prop22_trivialize(a);
    REQUIRE(tr.m.has_value());
    CHECK(tr.verified);
  }

  CHECK_THROWS_AS(prop22_analyze(nxg, std::vector<FpVector>{}), Error);
  const auto kernel_only = twisted_sub_product(
      std::shared_ptr<const TwistedProduct>(build_twisted(trivial_module(sl2(2, 1), 2, 1),
                                                          zero_cocycle(trivial_module(sl2(2, 1), 2, 1)))),
      {});
  const auto small = twisted_closure(kernel_only.ambient, {kernel_only.ambient->section(1)});
  CHECK_THROWS_AS(prop22_analyze(small), Error);
}

TEST_CASE("prop22 on the full group of a nonsplit chart") {
  std::mt19937_64 rng(4);
  const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const CoordinateChart chart(e);
  // Perturbed lifts s(g_j)(I + 2 v_j) of the generators.
  std::vector<Element> gens;
  for (std::uint32_t g : e->quotient()->generators()) {
    FpVector v(6);
    for (auto& c : v) c = rng() % 2;
    gens.push_back(chart.forward(e->mul(e->section(g), e->from_kernel(v))));
  }
  const auto h = twisted_closure(chart.target(), gens);
  REQUIRE(h.order() == 3840);
  const auto a = prop22_analyze(h);
  CHECK(a.n_basis.size() == 6);
  const auto tr = prop22_trivialize(a);
  CHECK(tr.verified);
  // A proper subgroup cannot have N x_x G form here: x leaves every
  // proper submodule.
  CHECK_THROWS_AS(prop22_analyze(twisted_sub_product(chart.target(), scalar_basis_m0(*e->quotient()))), Error);
}

TEST_CASE("prop22 obstruction over F_5") {
  const auto f5 = sl2(5, 1);
  const GModule m0 = build_module(ModuleKind::M0, f5);
  const auto h1m = h1(m0);
  REQUIRE(h1m.dim_h() == 1);
  const Cocycle1 xi = h1m.coordinates().expand1(h1m.basis()[0]);
  const auto t = std::shared_ptr<const TwistedProduct>(build_twisted(m0, zero_cocycle(m0)));
  std::vector<Element> gens;
  for (std::uint32_t g : f5->generators()) gens.push_back(t->make(xi.at(g), g));
  const auto h = twisted_closure(t, gens);
  CHECK(h.order() == 120);
  const auto a = prop22_analyze(h);
  CHECK(a.n_basis.empty());
  CHECK(a.xi.values == xi.values);
  const auto tr = prop22_trivialize(a);
  CHECK_FALSE(tr.m.has_value());
  REQUIRE(tr.obstruction.has_value());
  CHECK(tr.obstruction->class_coords != FpVector{0});
}

TEST_CASE("prop22 succeeds whenever H^1(G, M/N) vanishes") {
  std::mt19937_64 rng(21);
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto t = std::shared_ptr<const TwistedProduct>(build_twisted(m0, zero_cocycle(m0)));
  const auto hm = h1(m0);
  const CochainCoordinates& cc = hm.coordinates();
  const auto s = canonical_basis(2, 6, scalar_basis_m0(*f4));
  std::size_t vanishing = 0;
  std::size_t obstructed = 0;
  for (int trial = 0; trial < 24; ++trial) {
    // xi = class + coboundary, plus optional kernel generators.
    FpVector u = cc.coboundary1([&] {
      FpVector m(6);
      for (auto& c : m) c = rng() % 2;
      return m;
    }());
    for (std::size_t b = 0; b < 2; ++b) {
      if ((trial >> b) & 1) {
        for (std::size_t k = 0; k < u.size(); ++k) u[k] ^= hm.basis()[b][k];
      }
    }
    const Cocycle1 xi = cc.expand1(u);
    std::vector<Element> gens;
    for (std::uint32_t g : f4->generators()) gens.push_back(t->make(xi.at(g), g));
    const int extra = (trial / 4) % 3;
    if (extra == 1) gens.push_back(t->from_kernel(s[0]));
    if (extra == 2) gens.push_back(t->from_kernel(FpVector{1, 0, 0, 1, 1, 0}));
    const auto h = twisted_closure(t, gens);
    const auto a = prop22_analyze(h);
    const Quotient q = quotient(m0, a.n_basis);
    const auto tr = prop22_trivialize(a);
    if (h1(q.module).dim_h() == 0) {
      ++vanishing;
      CHECK(tr.verified);
    }
    if (tr.obstruction) ++obstructed;
    if (trial % 4 == 0) CHECK(tr.verified);
    CHECK((tr.m.has_value() ? tr.verified : tr.obstruction.has_value()));
  }
  CHECK(vanishing > 0);
  CHECK(obstructed > 0);
}
