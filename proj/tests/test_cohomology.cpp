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


#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "wittgroup/cohomology.hpp"
#include "wittgroup/errors.hpp"

using namespace wittgroup;

namespace {

GroupPtr sl2(std::uint32_t p, std::uint32_t d, std::uint32_t m = 1) {
  return FiniteGroup::closure(sl_full_generators(2, LocalRing::galois(p, m, d)));
}

GroupPtr cyclic(const RingPtr& ring, std::size_t i, std::size_t j) {
  return FiniteGroup::closure({RingMatrix::elementary(ring.get(), 2, i, j, ring->one())});
}

FpVector unit(std::size_t dim, std::size_t i) {
  FpVector v(dim, 0);
  v[i] = 1;
  return v;
}

FpVector random_vector(std::size_t n, std::uint32_t p, std::mt19937_64& rng) {
  FpVector v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
  return v;
}

FpVector add(FpVector a, std::span<const std::uint32_t> b, std::uint32_t p) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + b[i]) % p;
  return a;
}

FpVector sub(FpVector a, std::span<const std::uint32_t> b, std::uint32_t p) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  return a;
}

std::size_t log_p(std::uint64_t x, std::uint32_t p) {
  std::size_t k = 0;
  for (; x > 1; x /= p) ++k;
  return k;
}

// dim H^1 by enumerating every normalized function G -> M.
std::size_t brute_h1(const GModule& m) {
  const FiniteGroup& g = *m.group();
  const std::uint32_t p = m.p();
  const std::size_t d = m.dim();
  const std::size_t n = g.order();
  const std::uint64_t per = static_cast<std::uint64_t>(std::pow(p, d));
  std::uint64_t total = 1;
  for (std::size_t i = 1; i < n; ++i) total *= per;
  auto value = [&](std::uint64_t code, std::uint32_t a) {
    FpVector v(d, 0);
    if (a == 0) return v;
    for (std::uint32_t i = 1; i < a; ++i) code /= per;
    code %= per;
    for (auto& x : v) {
      x = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
    return v;
  };
  std::uint64_t z = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    bool ok = true;
    for (std::uint32_t a = 1; a < n && ok; ++a) {
      for (std::uint32_t b = 1; b < n && ok; ++b) {
        const FpVector lhs = value(code, g.mul(a, b));
        const FpVector rhs = add(value(code, a), m.act(a, value(code, b)), p);
        ok = lhs == rhs;
      }
    }
    z += ok;
  }
  std::set<FpVector> bnd;
  for (std::uint64_t c = 0; c < per; ++c) {
    FpVector mv(d);
    std::uint64_t r = c;
    for (auto& x : mv) {
      x = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    FpVector all;
    for (std::uint32_t a = 0; a < n; ++a) {
      const FpVector v = sub(m.act(a, mv), mv, p);
      all.insert(all.end(), v.begin(), v.end());
    }
    bnd.insert(all);
  }
  return log_p(z, p) - log_p(bnd.size(), p);
}

// dim H^2(G, F_2) for |G| <= 4 by enumerating normalized 2-cochains.
std::size_t brute_h2_trivial_f2(const FiniteGroup& g) {
  const std::size_t n = g.order();
  const std::size_t cells = (n - 1) * (n - 1);
  auto val = [&](std::uint64_t code, std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (a == 0 || b == 0) return 0;
    return (code >> ((a - 1) * (n - 1) + (b - 1))) & 1u;
  };
  std::uint64_t z = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
    bool ok = true;
    for (std::uint32_t a = 0; a < n && ok; ++a) {
      for (std::uint32_t b = 0; b < n && ok; ++b) {
        for (std::uint32_t c = 0; c < n && ok; ++c) {
          ok = (val(code, b, c) + val(code, g.mul(a, b), c) + val(code, a, g.mul(b, c)) +
                val(code, a, b)) % 2 == 0;
        }
      }
    }
    z += ok;
  }
  std::set<std::uint64_t> bnd;
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << (n - 1)); ++f) {
    auto fv = [&](std::uint32_t a) -> std::uint64_t { return a == 0 ? 0 : (f >> (a - 1)) & 1u; };
    std::uint64_t code = 0;
    for (std::uint32_t a = 1; a < n; ++a) {
      for (std::uint32_t b = 1; b < n; ++b) {
        const std::uint64_t v = (fv(b) + fv(g.mul(a, b)) + fv(a)) % 2;
        code |= v << ((a - 1) * (n - 1) + (b - 1));
      }
    }
    bnd.insert(code);
  }
  return log_p(z, 2) - log_p(bnd.size(), 2);
}

// SL_2(F_5) -> PSL_2(F_5) realized through the adjoint action on M_0; the
// kernel {+-I} is the trivial module F_2.
class AdjointCover : public ExtensionDescription {
 public:
  AdjointCover() {
    sl_ = sl2(5, 1);
    const GModule ad = build_module(ModuleKind::M0, sl_);
    const auto f5 = LocalRing::galois(5, 1, 1);
    auto as_matrix = [&](const FpMatrix& a) {
      RingMatrix r(f5.get(), 3);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) r.at(i, j) = f5->from_int(a.at(i, j));
      }
      return r;
    };
    std::vector<RingMatrix> gens;
    for (const auto& a : ad.generator_actions()) gens.push_back(as_matrix(a));
    image_ = FiniteGroup::closure(gens);
    proj_.resize(sl_->order());
    sec_.assign(image_->order(), UINT32_MAX);
    for (std::uint32_t i = 0; i < sl_->order(); ++i) {
      proj_[i] = image_->index_of(as_matrix(ad.action(i)));
      if (sec_[proj_[i]] == UINT32_MAX) sec_[proj_[i]] = i;
    }
    minus_ = sl_->index_of(RingMatrix::identity(sl_->ring_ptr(), 2).scaled(sl_->ring().from_int(-1)));
    kernel_ = trivial_module(image_, 2, 1);
  }
  const GroupPtr& quotient() const override { return image_; }
  const GModule& kernel() const override { return kernel_; }
  Element identity() const override { return {0}; }
  Element mul(const Element& a, const Element& b) const override { return {sl_->mul(a[0], b[0])}; }
  Element inv(const Element& a) const override { return {sl_->inv(a[0])}; }
  std::uint32_t project(const Element& a) const override { return proj_[a[0]]; }
  Element section(std::uint32_t g) const override { return {sec_[g]}; }
  Element from_kernel(std::span<const std::uint32_t> v) const override {
    return {v[0] ? minus_ : 0u};
  }
  FpVector kernel_coords(const Element& a) const override {
    if (a[0] == 0) return {0};
    if (a[0] == minus_) return {1};
    throw Error(ErrorKind::SectionInvalid, "not central");
  }
  const GroupPtr& image() const { return image_; }

 private:
  GroupPtr sl_;
  GroupPtr image_;
  GModule kernel_;
  std::vector<std::uint32_t> proj_;
  std::vector<std::uint32_t> sec_;
  std::uint32_t minus_ = 0;
};

}  // namespace

TEST_CASE("H^1 of SL_2 over small fields") {
  const auto f5 = sl2(5, 1);
  CHECK(h1(build_module(ModuleKind::M0, f5)).dim_h() == 1);
  CHECK(h1(build_module(ModuleKind::M0, sl2(7, 1))).dim_h() == 0);
  const auto f4 = sl2(2, 2);
  const auto hv = h1(build_module(ModuleKind::V, f4));
  CHECK(hv.dim_h() == 2);
  CHECK(hv.dim_z() == hv.dim_b() + hv.dim_h());
  CHECK(h1(build_module(ModuleKind::M, f4)).dim_h() == 0);
  CHECK(h1(trivial_module(f4, 2, 1)).dim_h() == 0);
  CHECK(h0(build_module(ModuleKind::M0, f4)).dim_h() == 2);
  CHECK(h0(build_module(ModuleKind::V, f4)).dim_h() == 0);
}

TEST_CASE("H^1 agrees with exhaustive enumeration") {
  const auto s3 = sl2(2, 1);
  for (auto kind : {ModuleKind::M0, ModuleKind::M, ModuleKind::V, ModuleKind::S}) {
    const GModule m = build_module(kind, s3);
    CHECK(h1(m).dim_h() == brute_h1(m));
  }
  CHECK(h1(trivial_module(s3, 2, 1)).dim_h() == brute_h1(trivial_module(s3, 2, 1)));
  CHECK(h1(trivial_module(s3, 3, 1)).dim_h() == 0);
  const auto z4 = cyclic(LocalRing::galois(2, 2, 1), 0, 1);
  CHECK(h1(trivial_module(z4, 2, 1)).dim_h() == brute_h1(trivial_module(z4, 2, 1)));
}

TEST_CASE("H^2 against classical values and enumeration") {
  const auto z2 = cyclic(LocalRing::galois(2, 1, 1), 0, 1);
  REQUIRE(z2->order() == 2);
  CHECK(h2(trivial_module(z2, 2, 1)).dim_h() == 1);
  CHECK(brute_h2_trivial_f2(*z2) == 1);

  const auto z4 = cyclic(LocalRing::galois(2, 2, 1), 0, 1);
  REQUIRE(z4->order() == 4);
  CHECK(h2(trivial_module(z4, 2, 1)).dim_h() == brute_h2_trivial_f2(*z4));

  const auto f4 = sl2(2, 2);
  const Subgroup v4 = sylow(*f4, 2);
  REQUIRE(v4.group->order() == 4);
  CHECK(h2(trivial_module(v4.group, 2, 1)).dim_h() == 3);
  CHECK(brute_h2_trivial_f2(*v4.group) == 3);

  const Subgroup q8 = sylow(*sl2(3, 1), 2);
  REQUIRE(q8.group->order() == 8);
  CHECK(h1(trivial_module(q8.group, 2, 1)).dim_h() == 2);
  CHECK(h2(trivial_module(q8.group, 2, 1)).dim_h() == 2);

  CHECK_THROWS_AS(h2(trivial_module(sl2(7, 1), 7, 1)), Error);
}

TEST_CASE("H^2 of SL_2(F_4) = A_5 with F_2 coefficients is the Schur class") {
  const auto f4 = sl2(2, 2);
  const auto h = h2(trivial_module(f4, 2, 1));
  CHECK(h.dim_h() == 1);
  // S is trivial of dimension 2.
  CHECK(h2(build_module(ModuleKind::S, f4)).dim_h() == 2 * h.dim_h());

  // A second model of A_5 and its double cover.
  const AdjointCover cover;
  REQUIRE(cover.image()->order() == 60);
  const auto ha = h2(trivial_module(cover.image(), 2, 1));
  CHECK(ha.dim_h() == 1);
  const SplitVerdict v = split_check(cover);
  CHECK_FALSE(v.split);
  CHECK(v.agree);
  const FpVector x = extension_coords(cover, ha.coordinates());
  CHECK(ha.class_of(x) == FpVector{1});
}

TEST_CASE("cocycle laws hold beyond the generator equations") {
  std::mt19937_64 rng(11);
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto h = h1(m0);
  REQUIRE(h.dim_h() == 2);
  const CochainCoordinates& cc = h.coordinates();
  for (const auto& b : h.basis()) {
    const Cocycle1 xi = cc.expand1(b);
    for (int t = 0; t < 10000; ++t) {
      const auto a = static_cast<std::uint32_t>(rng() % f4->order());
      const auto c = static_cast<std::uint32_t>(rng() % f4->order());
      const FpVector rhs = add(FpVector(xi.at(a).begin(), xi.at(a).end()),
                               m0.act(a, xi.at(c)), 2);
      REQUIRE(FpVector(xi.at(f4->mul(a, c)).begin(), xi.at(f4->mul(a, c)).end()) == rhs);
    }
  }
  const auto h2s = h2(m0);
  const CochainCoordinates& c2 = h2s.coordinates();
  const Cocycle2 x = c2.expand2(h2s.basis()[0]);
  for (int t = 0; t < 10000; ++t) {
    const auto a = static_cast<std::uint32_t>(rng() % f4->order());
    const auto b = static_cast<std::uint32_t>(rng() % f4->order());
    const auto c = static_cast<std::uint32_t>(rng() % f4->order());
    FpVector lhs = m0.act(a, x.at(b, c));
    lhs = sub(lhs, x.at(f4->mul(a, b), c), 2);
    lhs = add(lhs, x.at(a, f4->mul(b, c)), 2);
    lhs = sub(lhs, x.at(a, b), 2);
    REQUIRE(lhs == FpVector(m0.dim(), 0));
  }
  FpVector broken = h.basis()[0];
  broken[0] ^= 1u;
  CHECK_FALSE(cc.is_cocycle1(broken));
  CHECK_THROWS_AS(cc.expand1(broken), Error);
}

TEST_CASE("dimensions do not depend on the generating set") {
  const auto f4 = sl2(2, 2);
  std::vector<std::uint32_t> all = f4->generators();
  std::vector<std::uint32_t> other(all.rbegin(), all.rend());
  other.push_back(f4->mul(all[0], all[1]));
  for (auto kind : {ModuleKind::M0, ModuleKind::V, ModuleKind::S}) {
    const GModule m = build_module(kind, f4);
    const auto a = h1(m);
    CHECK(h1(m, all).dim_h() == a.dim_h());
    CHECK(h1(m, other).dim_h() == a.dim_h());
    const auto b = h2(m);
    CHECK(h2(m, true, other).dim_h() == b.dim_h());
    CHECK(h2(m, false).dim_h() == b.dim_h());
  }
}

TEST_CASE("h2 is deterministic across parallel settings") {
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto a = h2(m0, true);
  const auto b = h2(m0, false);
  CHECK(a.basis() == b.basis());
  CHECK(a.boundaries() == b.boundaries());
}

TEST_CASE("coboundary_solve1") {
  std::mt19937_64 rng(5);
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const CochainCoordinates cc(m0);

  const Cocycle1 zero{2, f4->order(), m0.dim(), FpVector(f4->order() * m0.dim(), 0)};
  auto s0 = coboundary_solve1(zero, m0);
  REQUIRE(s0.solved());
  CHECK(*s0.m == FpVector(m0.dim(), 0));

  const FpVector m_0 = random_vector(m0.dim(), 2, rng);
  const Cocycle1 cob = cc.expand1(cc.coboundary1(m_0));
  auto s1 = coboundary_solve1(cob, m0);
  REQUIRE(s1.solved());
  CHECK(cc.coboundary1(*s1.m) == cc.coboundary1(m_0));

  // Nonzero class: obstruction in M_0, solvable in M.
  const auto h = h1(m0);
  const Cocycle1 xi = cc.expand1(h.basis()[0]);
  auto s2 = coboundary_solve1(xi, m0);
  REQUIRE_FALSE(s2.solved());
  CHECK(s2.obstruction->class_coords != FpVector(2, 0));

  const GModule mm = build_module(ModuleKind::M, f4);
  Cocycle1 xi_m{2, f4->order(), mm.dim(), {}};
  for (std::uint32_t g = 0; g < f4->order(); ++g) {
    const FpVector v = m_from_m0(FpVector(xi.at(g).begin(), xi.at(g).end()), 2, 2, 2);
    xi_m.values.insert(xi_m.values.end(), v.begin(), v.end());
  }
  auto s3 = coboundary_solve1(xi_m, mm);
  REQUIRE(s3.solved());

  // Modulo S the class of xi survives in V.
  auto s4 = coboundary_solve1(xi, m0, scalar_basis_m0(*f4));
  CHECK_FALSE(s4.solved());
}

TEST_CASE("coboundary_solve1 on SL_2(F_5): obstruction in M") {
  const auto f5 = sl2(5, 1);
  const GModule m0 = build_module(ModuleKind::M0, f5);
  const auto h = h1(m0);
  REQUIRE(h.dim_h() == 1);
  const Cocycle1 xi = h.coordinates().expand1(h.basis()[0]);
  const GModule mm = build_module(ModuleKind::M, f5);
  Cocycle1 xi_m{5, f5->order(), mm.dim(), {}};
  for (std::uint32_t g = 0; g < f5->order(); ++g) {
    const FpVector v = m_from_m0(FpVector(xi.at(g).begin(), xi.at(g).end()), 2, 1, 5);
    xi_m.values.insert(xi_m.values.end(), v.begin(), v.end());
  }
  const auto s = coboundary_solve1(xi_m, mm);
  REQUIRE_FALSE(s.solved());
  CHECK(s.obstruction->class_coords.size() == 1);
  CHECK(s.obstruction->class_coords[0] != 0);
}

TEST_CASE("extension cocycles") {
  // Split: SL_2(F_4[eps]) over SL_2(F_4) with the constant section.
  const auto dual = MatrixExtension::special_linear(2, LocalRing::dual(2, 2), LocalRing::galois(2, 1, 2));
  validate_extension(*dual);
  const Cocycle2 x0 = extension_cocycle(*dual);
  CHECK(std::all_of(x0.values.begin(), x0.values.end(), [](std::uint32_t v) { return v == 0; }));
  CHECK(split_check(*dual).split);

  // Z/4 over Z/2.
  const auto z4 = cyclic(LocalRing::galois(2, 2, 1), 0, 1);
  const auto toy = MatrixExtension::from_group(z4, LocalRing::galois(2, 1, 1));
  REQUIRE(toy->quotient()->order() == 2);
  REQUIRE(toy->kernel().dim() == 1);
  const auto ht = h2(toy->kernel());
  const Cocycle2 xt = extension_cocycle(*toy);
  CHECK(ht.class_of(ht.coordinates().coords2(xt)) == FpVector{1});
  CHECK_FALSE(split_check(*toy).split);

  // Klein four over Z/2 splits.
  const auto r4 = LocalRing::galois(2, 2, 1);
  const auto klein = FiniteGroup::closure(
      {RingMatrix::elementary(r4.get(), 2, 0, 1, 1).power(1),
       RingMatrix::identity(r4.get(), 2).scaled(r4->from_int(-1))});
  REQUIRE(klein->order() == 8);  // <[[1,1],[0,1]], -I>: Z/4 x Z/2
  const auto ext8 = MatrixExtension::from_group(klein, LocalRing::galois(2, 1, 1));
  CHECK(ext8->kernel().dim() == 2);
  const SplitVerdict v8 = split_check(*ext8);
  CHECK(v8.agree);

  // SL_2(GR(4,2)) over SL_2(F_4): nonzero, seen at the Sylow subgroup.
  const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const auto hm = h2(e->kernel());
  const FpVector x = extension_coords(*e, hm.coordinates());
  CHECK_FALSE(hm.is_coboundary(x));
  const SplitVerdict v = split_check(*e);
  CHECK_FALSE(v.split);
  CHECK(v.sylow_order == 4);
  CHECK(v.full_split == std::optional<bool>(false));
  CHECK(v.search_split == std::optional<bool>(false));
  CHECK(v.agree);
  const RestrictedExtension res(e, v.sylow);
  const auto hp = h2(res.kernel());
  CHECK_FALSE(hp.is_coboundary(v.certificate));

  // Changing the section changes x by a coboundary.
  const Cocycle2 full = extension_cocycle(*e);
  CHECK(hm.class_of(hm.coordinates().coords2(full)) == hm.class_of(x));
}

TEST_CASE("split_check verdicts over Z/p^2") {
  const auto z9 = MatrixExtension::special_linear(2, LocalRing::galois(3, 2, 1), LocalRing::galois(3, 1, 1));
  const SplitVerdict v9 = split_check(*z9);
  CHECK(v9.split);
  CHECK(v9.agree);
  REQUIRE(v9.section.has_value());
  // The section is a homomorphism on every pair.
  const auto& g = *z9->quotient();
  std::vector<RingMatrix> img;
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    const FpVector c(v9.section->begin() + a * 3, v9.section->begin() + (a + 1) * 3);
    img.push_back(z9->matrix(z9->mul(z9->from_kernel(c), z9->section(a))));
  }
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    for (std::uint32_t b = 0; b < g.order(); ++b) REQUIRE(img[a] * img[b] == img[g.mul(a, b)]);
  }

  const auto z25 = MatrixExtension::special_linear(2, LocalRing::galois(5, 2, 1), LocalRing::galois(5, 1, 1));
  const SplitVerdict v25 = split_check(*z25);
  CHECK_FALSE(v25.split);
  CHECK(v25.sylow_order == 5);
  CHECK(v25.agree);

  // No section over Z/4: every involution of SL_2(Z/4) is trivial mod 2.
  const auto z4 = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 1), LocalRing::galois(2, 1, 1));
  const SplitVerdict v4 = split_check(*z4);
  CHECK_FALSE(v4.split);
  CHECK(v4.agree);
  const auto big = FiniteGroup::closure(sl_full_generators(2, LocalRing::galois(2, 2, 1)));
  for (const auto& a : big->elements()) {
    if ((a * a).is_identity() && !a.is_identity()) {
      CHECK(a.map(z4->surjection()).is_identity());
    }
  }
}

TEST_CASE("quotient by scalars") {
  const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const auto q = std::make_shared<QuotientExtension>(e, scalar_basis_m0(*e->quotient()));
  validate_extension(*q);
  CHECK(q->kernel().dim() == 4);
  const SplitVerdict v = split_check(*q);
  CHECK(v.agree);
  CHECK(v.split == (h2(q->kernel()).dim_h() == 0));

  const auto e2 = MatrixExtension::special_linear(2, LocalRing::galois(2, 3, 2), LocalRing::galois(2, 2, 2));
  const auto q2 = std::make_shared<QuotientExtension>(e2, scalar_basis_m0(*e2->quotient()));
  const SplitVerdict v2 = split_check(*q2);
  CHECK_FALSE(v2.split);
  CHECK(v2.sylow_order == 256);
  CHECK(v2.agree);
}

TEST_CASE("transgression") {
  const auto z4 = cyclic(LocalRing::galois(2, 2, 1), 0, 1);
  const auto toy = MatrixExtension::from_group(z4, LocalRing::galois(2, 1, 1));
  const GModule& k = toy->kernel();
  const auto h = h2(k);
  const FpMatrix minus_id = FpMatrix::identity(2, 1);  // -1 = 1 over F_2
  const Cocycle2 x = extension_cocycle(*toy);
  CHECK(transgression(*toy, k, minus_id).values == x.values);
  const Cocycle2 t = transgression(*toy, k, minus_id, 99);
  CHECK(h.class_of(h.coordinates().coords2(t)) == h.class_of(h.coordinates().coords2(x)));
  const Cocycle2 zero = transgression(*toy, k, FpMatrix(2, 1, 1), 3);
  CHECK(h.is_coboundary(h.coordinates().coords2(zero)));

  const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const auto res = std::make_shared<RestrictedExtension>(e, sylow(*e->quotient(), 2));
  const auto hp = h2(res->kernel());
  const Cocycle2 xp = extension_cocycle(*res);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Cocycle2 tp = transgression(*res, res->kernel(), FpMatrix::identity(2, 6), seed);
    CHECK(hp.class_of(hp.coordinates().coords2(tp)) == hp.class_of(hp.coordinates().coords2(xp)));
  }
  CHECK(hp.class_of(hp.coordinates().coords2(xp)) != FpVector(hp.dim_h(), 0));

  FpMatrix bad(2, 6, 6);
  bad.at(0, 1) = 1;
  CHECK_THROWS_AS(transgression(*res, res->kernel(), bad), Error);
}

TEST_CASE("restriction and inflation") {
  std::mt19937_64 rng(3);
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto h = h1(m0);
  const Cocycle1 xi = h.coordinates().expand1(h.basis()[0]);
  Subgroup whole{f4, {}};
  for (std::uint32_t i = 0; i < f4->order(); ++i) whole.inclusion.push_back(i);
  CHECK(restrict(xi, whole).values == xi.values);

  // Inflation to SL_2(GR(4,2)) stays a noncobounding cocycle.
  const auto big = sl2(2, 2, 2);
  const RingSurjection pi(LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  GroupHom q = induced_hom(big, pi);
  // Re-index the image in f4's element order.
  for (auto& t : q.image) t = f4->index_of(q.target->element(t));
  q.target = f4;
  const GModule m0_big = inflate_module(m0, q);
  const Cocycle1 inf = inflate(xi, q);
  const CochainCoordinates cbig(m0_big);
  CHECK(cbig.is_cocycle1(cbig.coords1(inf)));
  CHECK_FALSE(coboundary_solve1(inf, m0_big).solved());
  const auto hb = h1(m0_big);
  CHECK(hb.dim_h() == 2);
  CHECK(h1(trivial_module(big, 2, 2)).dim_h() == 0);

  // Restriction to a Sylow subgroup keeps nonzero classes nonzero.
  const Subgroup p2 = sylow(*f4, 2);
  const GModule m0_p = GModule::pullback(m0, p2.group, p2.inclusion);
  for (const auto& b : h.basis()) {
    const Cocycle1 r = restrict(h.coordinates().expand1(b), p2);
    CHECK_FALSE(coboundary_solve1(r, m0_p).solved());
  }
  const auto hs = h2(trivial_module(f4, 2, 1));
  const Cocycle2 schur = hs.coordinates().expand2(hs.basis()[0]);
  const auto hps = h2(trivial_module(p2.group, 2, 1));
  CHECK_FALSE(hps.is_coboundary(hps.coordinates().coords2(restrict(schur, p2))));
  const auto f5 = sl2(5, 1);
  const GModule m5 = build_module(ModuleKind::M0, f5);
  const auto h5 = h1(m5);
  const Subgroup p5 = sylow(*f5, 5);
  const Cocycle1 r5 = restrict(h5.coordinates().expand1(h5.basis()[0]), p5);
  CHECK_FALSE(coboundary_solve1(r5, GModule::pullback(m5, p5.group, p5.inclusion)).solved());
  (void)rng;
}

TEST_CASE("H^2 injectivity over the submodule lattice of M_0(F_4)") {
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto report = classify_submodules(m0, scalar_basis_m0(*f4));
  REQUIRE(report.submodules.size() == 6);
  std::size_t pairs = 0;
  for (const auto& n : report.submodules) {
    for (const auto& m : report.submodules) {
      if (m.empty() || sum(m0, n, m).size() != m.size()) continue;
      const Submodule sm = submodule(m0, m);
      std::vector<FpVector> inner;
      for (const auto& v : n) inner.push_back(sm.coordinates(v));
      const auto v = h2_map_injectivity(sm.module, inner);
      CHECK(v.injective);
      ++pairs;
    }
  }
  CHECK(pairs == 17);
  CHECK(h2_map_injectivity(m0, {}).injective);
}

TEST_CASE("sequence 0 -> S -> M_0 -> V -> 0 in cohomology") {
  const auto f4 = sl2(2, 2);
  const GModule m0 = build_module(ModuleKind::M0, f4);
  const auto sb = scalar_basis_m0(*f4);
  const Submodule s = submodule(m0, sb);
  const Quotient q = quotient(m0, sb);
  const auto h1m = h1(m0);
  const auto h1v = h1(q.module);
  CHECK(h1m.dim_h() == h1v.dim_h());
  CHECK(induced_map(h1m, h1v, q.projection).rank() == h1v.dim_h());

  const auto h2s = h2(s.module);
  const auto h2m = h2(m0);
  const auto h2v = h2(q.module);
  const FpMatrix i2 = induced_map(h2s, h2m, s.inclusion);
  const FpMatrix p2 = induced_map(h2m, h2v, q.projection);
  CHECK(i2.rank() == h2s.dim_h());
  // image(i) = kernel(pi).
  const std::size_t ker_p = h2m.dim_h() - p2.rank();
  CHECK(ker_p == i2.rank());
  CHECK((p2 * i2).is_zero());
}

TEST_CASE("H^2 descent to an intersection") {
  std::mt19937_64 rng(17);
  const auto f4 = sl2(2, 2);
  const GModule amb = direct_power(build_module(ModuleKind::M0, f4), 2);
  const auto sb = scalar_basis_m0(*f4);
  auto first = [&](const FpVector& v) {
    FpVector w(12, 0);
    std::copy(v.begin(), v.end(), w.begin());
    return w;
  };
  auto second = [&](const FpVector& v) {
    FpVector w(12, 0);
    std::copy(v.begin(), v.end(), w.begin() + 6);
    return w;
  };
  // M = S + 0, N = L + L' with M cap N = L + 0.
  const std::vector<FpVector> mb = {first(sb[0]), first(sb[1])};
  const std::vector<FpVector> nb = {first(sb[0]), second(sb[1])};
  const Submodule mm = submodule(amb, mb);
  const Submodule nn = submodule(amb, nb);
  const Submodule cc = submodule(amb, {first(sb[0])});

  const auto hc = h2(cc.module);
  REQUIRE(hc.dim_h() == 1);
  const FpVector c = hc.basis()[0];
  auto image = [&](const Submodule& target, const FpVector& cocycle) {
    FpMatrix t(2, target.basis.size(), 1);
    const FpVector coords = target.coordinates(cc.basis[0]);
    for (std::size_t i = 0; i < coords.size(); ++i) t.at(i, 0) = coords[i];
    return map_cochain(t, cocycle);
  };
  const FpVector x = image(mm, c);
  FpVector y = image(nn, c);
  const CochainCoordinates nc(nn.module);
  FpVector f(f4->order() * 2, 0);
  for (std::size_t i = 2; i < f.size(); ++i) f[i] = static_cast<std::uint32_t>(rng() % 2);
  y = add(y, nc.coboundary2(f), 2);

  const Descent dz = h2_intersection_descent(amb, mb, nb, x, y);
  CHECK(dz.verified);
  CHECK(dz.meet.basis.size() == 1);
  CHECK(h2(dz.meet.module).class_of(dz.z) == FpVector{1});

  const FpVector zero_m(x.size(), 0);
  const FpVector zero_n(y.size(), 0);
  const Descent d0 = h2_intersection_descent(amb, mb, nb, zero_m, zero_n);
  CHECK(d0.verified);
  CHECK(std::all_of(d0.z.begin(), d0.z.end(), [](std::uint32_t v) { return v == 0; }));

  const Descent same = h2_intersection_descent(amb, mb, mb, x, x);
  CHECK(same.verified);

  CHECK_THROWS_AS(h2_intersection_descent(amb, mb, nb, x, zero_n), Error);
}
