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

#ifndef WITTGROUP_GALOIS_RING_HPP_
#define WITTGROUP_GALOIS_RING_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wittgroup/finite_field.hpp"

namespace wittgroup {

// Ring elements are canonical integer codes; the owning LocalRing interprets
// them. Equal elements have equal codes.
using RingElement = std::uint32_t;

enum class RingKind { GaloisRing, DualNumbers };

class LocalRing;
using RingPtr = std::shared_ptr<const LocalRing>;

inline constexpr std::uint64_t kMaxRingSize = std::uint64_t{1} << 20;

// A finite local ring: either GR(p^m, d) = (Z/p^m)[x]/(f) with f the naive
// integer lift of the canonical modulus of GF(p^d), or the dual numbers
// k[eps] over k = GF(p^d).
class LocalRing {
 public:
  static RingPtr galois(std::uint32_t p, std::uint32_t m, std::uint32_t d);
  static RingPtr dual(std::uint32_t p, std::uint32_t d);

  RingKind kind() const { return kind_; }
  std::uint32_t p() const { return p_; }
  // Exponent of the characteristic (p^m); 1 for dual numbers.
  std::uint32_t m() const { return m_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t size() const { return size_; }
  // Nilpotency index of the maximal ideal.
  std::uint32_t nilpotency() const { return kind_ == RingKind::GaloisRing ? m_ : 2; }
  const FieldPtr& residue_field() const { return field_; }
  std::string name() const;
  // Spec string understood by the command line ("gr:p,m,d" / "dual:p,d").
  std::string spec() const;

  RingElement zero() const { return 0; }
  RingElement one() const { return 1; }
  RingElement from_int(std::int64_t value) const;

  RingElement add(RingElement a, RingElement b) const;
  RingElement sub(RingElement a, RingElement b) const;
  RingElement neg(RingElement a) const;
  RingElement mul(RingElement a, RingElement b) const;
  RingElement pow(RingElement a, std::uint64_t e) const;
  bool is_unit(RingElement a) const;
  RingElement inv(RingElement a) const;

  // Coefficients: GR gives d values mod p^m; dual numbers give the d
  // coefficients of the constant part followed by the d of the eps part.
  std::vector<std::uint32_t> digits(RingElement a) const;
  RingElement from_digits(std::span<const std::uint32_t> digits) const;

  FieldElement residue(RingElement a) const;
  // Lift of a residue-field element with the same integer coefficients.
  RingElement naive_lift(const FieldElement& a) const;
  RingElement teichmuller(const FieldElement& a) const;
  // x = sum_i teichmuller(a_i) p^i; GR only.
  std::vector<FieldElement> teichmuller_digits(RingElement x) const;
  RingElement from_teichmuller_digits(std::span<const FieldElement> digits) const;

  // Generators of the maximal ideal as an ideal.
  std::vector<RingElement> maximal_ideal_generators() const;
  std::vector<RingElement> elements() const;

  // Only dual-number rings: the element eps * t.
  RingElement eps_times(const FieldElement& t) const;

  LocalRing(RingKind kind, std::uint32_t p, std::uint32_t m, std::uint32_t d);

 private:
  using Digits = std::array<std::uint32_t, 2 * kMaxFieldDegree>;

  Digits decode(RingElement a) const;
  RingElement encode(const Digits& digits) const;
  RingElement mul_slow(RingElement a, RingElement b) const;
  RingElement add_slow(RingElement a, RingElement b) const;

  RingKind kind_;
  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t d_;
  std::uint32_t q_;     // per-digit modulus: p^m (GR) or p (dual)
  std::uint32_t size_;
  FieldPtr field_;
  std::vector<std::uint64_t> modulus_;  // naive lift, GR only
  std::vector<RingElement> add_table_;
  std::vector<RingElement> mul_table_;
};

// GR(p^m, d) -> GR(p^{m'}, d) with m' <= m, or k[eps] -> k (= GR(p, 1, d)).
class RingSurjection {
 public:
  RingSurjection(RingPtr source, RingPtr target);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }

  RingElement apply(RingElement a) const;
  // Teichmuller-digit section for GR (digit padding), constants for k[eps].
  RingElement section(RingElement b) const;

  const std::vector<RingElement>& kernel() const { return kernel_; }
  // True when m_A * ker = 0, the situation in which the kernel is a
  // vector space over the residue field.
  bool maximal_ideal_kills_kernel() const { return kills_kernel_; }
  // Kernel generator kappa with ker = kappa * A (p^{m'} or eps); 0 for an
  // injective map.
  RingElement kernel_generator() const { return kappa_; }
  // F_p coordinates of a kernel element (dimension d), written as
  // kappa * t with t read modulo m_A. Requires maximal_ideal_kills_kernel().
  std::vector<std::uint32_t> kernel_coords(RingElement k) const;
  RingElement kernel_element(std::span<const std::uint32_t> coords) const;
  std::size_t kernel_dim() const;

  // Exhaustive homomorphism check over all element pairs when the source
  // has at most `pair_cap` elements, else over generators and a sample.
  bool verify(std::size_t pair_cap = 4096) const;

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<RingElement> kernel_;
  RingElement kappa_ = 0;
  bool kills_kernel_ = false;
};

// Field embedding k -> k' sending the canonical generator of k to a power
// of the canonical generator of k'.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr small, FieldPtr large);

  FieldElement apply(const FieldElement& a) const;
  const FieldPtr& small() const { return small_; }
  const FieldPtr& large() const { return large_; }
  std::uint32_t exponent() const { return exponent_; }

 private:
  FieldPtr small_;
  FieldPtr large_;
  std::uint32_t exponent_ = 1;
  std::vector<FieldElement> image_;  // indexed by code of the small element
};

// Smallest subring of A containing the Teichmuller lifts of k (embedded in
// the residue field canonically). Sorted by code.
std::vector<RingElement> witt_subring(const LocalRing& ring, const FieldPtr& k);

// Teichmuller lifts of an F_p-basis (1, x, ..., x^{d-1}) of k inside the ring.
std::vector<RingElement> teichmuller_basis(const LocalRing& ring, const FieldPtr& k);

}  // namespace wittgroup

#endif  // WITTGROUP_GALOIS_RING_HPP_
