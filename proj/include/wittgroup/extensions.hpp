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


#ifndef WITTGROUP_EXTENSIONS_HPP_
#define WITTGROUP_EXTENSIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "wittgroup/cohomology.hpp"

namespace wittgroup {

// M x_x G: pairs (v, g) with (v1, g1)(v2, g2) = (x(g1, g2) + v1 + g1 v2, g1 g2).
// Elements are the D coordinates of v followed by the index of g. The
// section is g -> (0, g), so extension_cocycle returns x itself.
class TwistedProduct : public ExtensionDescription {
 public:
  const GroupPtr& quotient() const override { return module_.group(); }
  const GModule& kernel() const override { return module_; }
  Element identity() const override;
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  std::uint32_t project(const Element& a) const override { return a.back(); }
  Element section(std::uint32_t g) const override;
  Element from_kernel(std::span<const std::uint32_t> v) const override;
  FpVector kernel_coords(const Element& a) const override;

  const Cocycle2& cocycle() const { return x_; }
  std::uint64_t order() const { return module_.cardinality() * module_.group()->order(); }
  std::uint64_t element_order(const Element& a) const;
  Element make(std::span<const std::uint32_t> v, std::uint32_t g) const;

  // Dense numbering v + |M| g (v read in base p); requires |M||G| < 2^63.
  std::uint64_t index(const Element& a) const;
  Element element(std::uint64_t i) const;

 private:
  friend std::shared_ptr<TwistedProduct> build_twisted(const GModule& m, const Cocycle2& x);
  TwistedProduct() = default;

  GModule module_;
  Cocycle2 x_;
};

// Throws CocycleInvalid unless x is a normalized 2-cocycle with values in m.
std::shared_ptr<TwistedProduct> build_twisted(const GModule& m, const Cocycle2& x);

// Subgroup of a twisted product as the sorted indices of its elements.
struct TwistedSubgroup {
  std::shared_ptr<const TwistedProduct> ambient;
  std::vector<std::uint64_t> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(std::uint64_t i) const;
};

// Throws CapExceeded beyond `cap` elements.
TwistedSubgroup twisted_closure(std::shared_ptr<const TwistedProduct> t,
                                const std::vector<ExtensionDescription::Element>& gens,
                                std::size_t cap = std::size_t{1} << 22);
// N x_x G for an invariant subspace N containing the values of x.
TwistedSubgroup twisted_sub_product(std::shared_ptr<const TwistedProduct> t,
                                    const std::vector<FpVector>& n_basis);
// c^{-1} H c.
TwistedSubgroup conjugate(const TwistedSubgroup& h, const ExtensionDescription::Element& c);

// Identification of an extension E with M x_x G where x is its section
// cocycle: k s(g) <-> (k, g).
class CoordinateChart {
 public:
  using Element = ExtensionDescription::Element;

  explicit CoordinateChart(std::shared_ptr<const ExtensionDescription> source);

  const ExtensionDescription& source() const { return *source_; }
  const std::shared_ptr<const TwistedProduct>& target() const { return target_; }
  Element forward(const Element& a) const;
  Element backward(const Element& t) const;

  struct Check {
    std::size_t pairs = 0;
    std::size_t round_trips = 0;
    bool bijective = true;
    bool multiplicative = true;
  };
  // Multiplicativity on random pairs; both round trips on every element
  // when |E| <= exhaustive_cap, else on the sampled elements.
  Check verify(std::size_t pairs, std::uint64_t seed, std::size_t exhaustive_cap = 1 << 16) const;

 private:
  std::shared_ptr<const ExtensionDescription> source_;
  std::shared_ptr<const TwistedProduct> target_;
};

struct ConjugationCheck {
  std::size_t checked = 0;
};

// (u, g)(v, e)(u, g)^{-1} = (g v, e) for g among the generators and the
// identity, u in {0} and the basis vectors, v over the basis. Throws
// ActionMismatch.
ConjugationCheck chart_conjugation_action(const ExtensionDescription& t);

struct Prop22Analysis {
  TwistedSubgroup h;
  // Kernel N (reduced echelon basis in module coordinates).
  std::vector<FpVector> n_basis;
  // xi(g) = v for a chosen (v, g) in H; well defined modulo N.
  Cocycle1 xi;
};

// H must surject onto G (NotSurjective); its kernel N must agree with
// expected_n when given (KernelMismatch) and contain the values of x
// (KernelMismatch). Checks the cocycle law of xi mod N (CocycleInvalid).
Prop22Analysis prop22_analyze(const TwistedSubgroup& h,
                              const std::optional<std::vector<FpVector>>& expected_n = {});

struct Trivialization {
  // (m, e)^{-1} H (m, e) = N x_x G.
  std::optional<FpVector> m;
  std::optional<Obstruction> obstruction;
  bool verified = false;
};

Trivialization prop22_trivialize(const Prop22Analysis& a);

}  // namespace wittgroup

#endif  // WITTGROUP_EXTENSIONS_HPP_
