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

#include <set>
#include <vector>

#include "doctest.h"
#include "wittgroup/errors.hpp"
#include "wittgroup/galois_ring.hpp"

using namespace wittgroup;

namespace {

// Closure under both ring operations by brute force.
std::set<RingElement> naive_closure(const LocalRing& ring, std::vector<RingElement> seeds) {
  std::set<RingElement> s(seeds.begin(), seeds.end());
  s.insert(ring.zero());
  s.insert(ring.one());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RingElement> current(s.begin(), s.end());
    for (RingElement a : current) {
      for (RingElement b : current) {
        grew |= s.insert(ring.add(a, b)).second;
        grew |= s.insert(ring.mul(a, b)).second;
      }
    }
  }
  return s;
}

}  // namespace

TEST_CASE("ring creation") {
  CHECK(LocalRing::galois(2, 2, 2)->size() == 16);
  CHECK(LocalRing::galois(2, 1, 1)->size() == 2);
  CHECK(LocalRing::galois(3, 2, 1)->size() == 9);
  CHECK(LocalRing::galois(3, 2, 1)->name() == "Z/9");
  CHECK(LocalRing::galois(2, 2, 2)->name() == "GR(4,2)");
  CHECK(LocalRing::dual(2, 2)->size() == 16);
  CHECK_THROWS_AS(LocalRing::galois(2, 21, 1), Error);
  CHECK_THROWS_AS(LocalRing::galois(4, 2, 1), Error);
}

TEST_CASE("teichmuller lifts") {
  auto gr42 = LocalRing::galois(2, 2, 2);
  auto f4 = gr42->residue_field();
  CHECK(gr42->teichmuller(f4->zero()) == gr42->zero());
  CHECK(gr42->teichmuller(f4->one()) == gr42->one());
  // x^3 = 1 in Z_4[x]/(x^2+x+1): x^2 = -x-1, x^3 = -x^2-x = 1.
  const RingElement x = gr42->naive_lift(f4->x());
  CHECK(gr42->mul(x, gr42->mul(x, x)) == gr42->one());
  CHECK(gr42->teichmuller(f4->x()) == x);

  // Oracle: the unique t in Z/9 with t^3 = t and t = 2 mod 3.
  auto z9 = LocalRing::galois(3, 2, 1);
  std::vector<RingElement> candidates;
  for (RingElement t = 0; t < 9; ++t) {
    if ((t * t * t) % 9 == t && t % 3 == 2) candidates.push_back(t);
  }
  REQUIRE(candidates.size() == 1);
  CHECK(z9->teichmuller(z9->residue_field()->from_int(2)) == candidates.front());
  CHECK(candidates.front() == 8);
}

TEST_CASE("teichmuller digits") {
  auto z9 = LocalRing::galois(3, 2, 1);
  auto f3 = z9->residue_field();
  auto zero_digits = z9->teichmuller_digits(0);
  CHECK(zero_digits.size() == 2);
  CHECK(zero_digits[0].is_zero());
  CHECK(zero_digits[1].is_zero());

  // Peel-and-divide oracle in plain integers: a0 = 5 mod 3, t0 = lift,
  // a1 = ((5 - t0) / 3) mod 3.
  const int t_of[3] = {0, 1, 8};
  const int a0 = 5 % 3;
  const int rest = ((5 - t_of[a0]) % 9 + 9) % 9;
  const int a1 = (rest / 3) % 3;
  auto digits = z9->teichmuller_digits(5);
  CHECK(digits[0] == f3->from_int(a0));
  CHECK(digits[1] == f3->from_int(a1));
  CHECK((t_of[a0] + 3 * t_of[a1]) % 9 == 5);
  CHECK(a0 == 2);
  CHECK(a1 == 2);

  auto gr42 = LocalRing::galois(2, 2, 2);
  for (const auto& a : gr42->residue_field()->elements()) {
    auto d = gr42->teichmuller_digits(gr42->teichmuller(a));
    CHECK(d[0] == a);
    CHECK(d[1].is_zero());
  }
}

TEST_CASE("section and reduction") {
  auto gr42 = LocalRing::galois(2, 2, 2);
  auto gr82 = LocalRing::galois(2, 3, 2);
  RingSurjection down(gr82, gr42);
  CHECK(down.section(0) == 0);
  CHECK(down.section(1) == 1);
  const RingElement x = gr42->naive_lift(gr42->residue_field()->x());
  CHECK(down.section(x) == gr82->teichmuller(gr82->residue_field()->x()));
  for (const auto& a : gr42->residue_field()->elements()) {
    CHECK(down.apply(gr82->teichmuller(a)) == gr42->teichmuller(a));
  }
  CHECK(gr42->residue(x) == gr42->residue_field()->x());

  RingSurjection z9_to_z3(LocalRing::galois(3, 2, 1), LocalRing::galois(3, 1, 1));
  CHECK(z9_to_z3.section(2) == 8);

  RingSurjection same(gr42, gr42);
  for (RingElement a = 0; a < gr42->size(); ++a) CHECK(same.apply(a) == a);
}

TEST_CASE("ring invariants by exhaustion") {
  for (auto ring : {LocalRing::galois(2, 2, 2), LocalRing::galois(3, 2, 1),
                    LocalRing::galois(2, 3, 2), LocalRing::galois(3, 2, 2),
                    LocalRing::galois(5, 2, 1), LocalRing::galois(2, 4, 1)}) {
    const auto k = ring->residue_field();
    const std::uint64_t q = k->size();
    for (const auto& a : k->elements()) {
      const RingElement ta = ring->teichmuller(a);
      CHECK(ring->pow(ta, q) == ta);
      CHECK(ring->residue(ta) == a);
      CHECK((ta == 0) == a.is_zero());
      for (const auto& b : k->elements()) {
        CHECK(ring->teichmuller(a * b) == ring->mul(ta, ring->teichmuller(b)));
      }
    }
    for (RingElement x = 0; x < ring->size(); ++x) {
      const auto digits = ring->teichmuller_digits(x);
      CHECK(ring->from_teichmuller_digits(digits) == x);
      if (ring->is_unit(x)) CHECK(ring->mul(x, ring->inv(x)) == ring->one());
    }
    if (ring->m() > 1) {
      RingSurjection down(ring, LocalRing::galois(ring->p(), ring->m() - 1, ring->d()));
      CHECK(down.verify());
      CHECK(down.maximal_ideal_kills_kernel());
      for (RingElement y = 0; y < down.target()->size(); ++y) {
        CHECK(down.apply(down.section(y)) == y);
      }
      for (const auto& a : k->elements()) {
        const RingElement t = down.target()->teichmuller(a);
        CHECK(down.section(t) == ring->teichmuller(a));
      }
    }
  }
}

TEST_CASE("section is not additive") {
  RingSurjection down(LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const auto& a = *down.source();
  const auto& b = *down.target();
  bool additive = true;
  for (RingElement x = 0; x < b.size(); ++x) {
    for (RingElement y = 0; y < b.size(); ++y) {
      if (down.section(b.add(x, y)) != a.add(down.section(x), down.section(y))) additive = false;
    }
  }
  CHECK_FALSE(additive);
}

TEST_CASE("surjections and kernels") {
  auto dual = LocalRing::dual(2, 2);
  auto f4 = LocalRing::galois(2, 1, 2);
  RingSurjection pi(dual, f4);
  CHECK(pi.verify());
  CHECK(pi.maximal_ideal_kills_kernel());
  CHECK(pi.kernel().size() == 4);
  CHECK(pi.kernel_dim() == 2);
  for (RingElement k : pi.kernel()) {
    CHECK(pi.kernel_element(pi.kernel_coords(k)) == k);
  }
  const RingElement eps = dual->eps_times(dual->residue_field()->one());
  CHECK(dual->mul(eps, eps) == 0);

  RingSurjection deep(LocalRing::galois(2, 3, 1), LocalRing::galois(2, 1, 1));
  CHECK(deep.verify());
  CHECK_FALSE(deep.maximal_ideal_kills_kernel());
  CHECK_THROWS_AS(deep.kernel_coords(4), Error);

  CHECK_THROWS_AS(RingSurjection(f4, dual), Error);
  CHECK_THROWS_AS(RingSurjection(LocalRing::galois(2, 1, 2), LocalRing::galois(2, 2, 2)), Error);
}

TEST_CASE("witt subring") {
  auto gr42 = LocalRing::galois(2, 2, 2);
  auto f4 = FiniteField::create(2, 2);
  auto w = witt_subring(*gr42, f4);
  CHECK(w.size() == 16);

  auto dual = LocalRing::dual(2, 2);
  auto wd = witt_subring(*dual, f4);
  CHECK(wd.size() == 4);
  for (RingElement a : wd) CHECK(a < 4);
  std::vector<RingElement> lifts;
  for (const auto& a : f4->elements()) lifts.push_back(dual->teichmuller(a));
  auto oracle = naive_closure(*dual, lifts);
  CHECK(std::vector<RingElement>(oracle.begin(), oracle.end()) == wd);

  auto z9 = LocalRing::galois(3, 2, 1);
  CHECK(witt_subring(*z9, FiniteField::create(3, 1)).size() == 9);

  // F_2 inside GR(4,2): Z/4.
  auto w2 = witt_subring(*gr42, FiniteField::create(2, 1));
  CHECK(w2.size() == 4);
  CHECK_THROWS_AS(witt_subring(*gr42, FiniteField::create(3, 1)), Error);
  CHECK_THROWS_AS(witt_subring(*gr42, FiniteField::create(2, 3)), Error);
}

TEST_CASE("subfield embedding is a homomorphism") {
  for (auto [ds, dl] : {std::pair{2u, 4u}, {3u, 6u}, {1u, 3u}, {2u, 6u}, {4u, 8u}}) {
    auto small = FiniteField::create(2, ds);
    auto large = FiniteField::create(2, dl);
    SubfieldEmbedding e(small, large);
    for (const auto& a : small->elements()) {
      for (const auto& b : small->elements()) {
        CHECK(e.apply(a * b) == e.apply(a) * e.apply(b));
        CHECK(e.apply(a + b) == e.apply(a) + e.apply(b));
      }
    }
  }
}
