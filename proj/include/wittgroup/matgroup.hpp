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

#ifndef WITTGROUP_MATGROUP_HPP_
#define WITTGROUP_MATGROUP_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wittgroup/fp_linalg.hpp"
#include "wittgroup/galois_ring.hpp"

namespace wittgroup {

inline constexpr std::size_t kMaxMatrixSize = 4;
inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultTableThreshold = 4096;

// n x n matrix over a supported local ring, n <= 4. Rings are interned, so a
// raw pointer identifies the ring.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(const LocalRing* ring, std::size_t n);
  static RingMatrix identity(const LocalRing* ring, std::size_t n);
  // I + t e_ij.
  static RingMatrix elementary(const LocalRing* ring, std::size_t n, std::size_t i,
                               std::size_t j, RingElement t);

  const LocalRing& ring() const { return *ring_; }
  const LocalRing* ring_ptr() const { return ring_; }
  std::size_t n() const { return n_; }

  RingElement& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  RingElement at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  RingMatrix operator*(const RingMatrix& other) const;
  RingMatrix operator+(const RingMatrix& other) const;
  RingMatrix operator-(const RingMatrix& other) const;
  RingMatrix scaled(RingElement c) const;
  bool operator==(const RingMatrix& other) const {
    return ring_ == other.ring_ && n_ == other.n_ && e_ == other.e_;
  }

  RingElement det() const;
  RingElement trace() const;
  // Throws NonUnitDeterminant.
  RingMatrix inverse() const;
  bool is_identity() const;
  bool is_zero() const;
  RingMatrix map(const RingSurjection& pi) const;
  RingMatrix power(std::uint64_t e) const;
  std::size_t hash() const;
  std::string to_string() const;

 private:
  void check_compatible(const RingMatrix& other) const;

  const LocalRing* ring_ = nullptr;
  std::size_t n_ = 0;
  std::array<RingElement, kMaxMatrixSize * kMaxMatrixSize> e_{};
};

struct RingMatrixHash {
  std::size_t operator()(const RingMatrix& m) const { return m.hash(); }
};

// Elementary generators I + t e_ij (i != j, t a Teichmuller lift of an F_p
// basis element of k). They generate SL_n(W(k)_A).
std::vector<RingMatrix> sl_generators(std::size_t n, const RingPtr& ring, const FieldPtr& k);
// Elementary generators for all of SL_n(A): for dual numbers the eps
// multiples are added; for Galois rings this equals sl_generators.
std::vector<RingMatrix> sl_full_generators(std::size_t n, const RingPtr& ring);

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Enumerated matrix group. Elements are stored in BFS order from the
// identity (index 0) under right multiplication by the generators; every
// non-identity element records the tree edge that discovered it.
class FiniteGroup {
 public:
  static GroupPtr closure(const std::vector<RingMatrix>& generators,
                          std::size_t cap = kDefaultClosureCap, bool parallel = false);

  std::size_t order() const { return elements_.size(); }
  std::size_t n() const { return n_; }
  const LocalRing& ring() const { return *ring_; }
  const LocalRing* ring_ptr() const { return ring_; }

  const RingMatrix& element(std::size_t i) const { return elements_[i]; }
  const std::vector<RingMatrix>& elements() const { return elements_; }
  std::optional<std::uint32_t> find(const RingMatrix& m) const;
  std::uint32_t index_of(const RingMatrix& m) const;  // throws NotClosed
  bool contains(const RingMatrix& m) const { return find(m).has_value(); }

  // Generators as element indices.
  const std::vector<std::uint32_t>& generators() const { return generators_; }
  std::size_t num_generators() const { return generators_.size(); }
  // Index of element(i) * generator j.
  std::uint32_t rmul(std::uint32_t i, std::size_t j) const {
    return cayley_[std::size_t{i} * generators_.size() + j];
  }
  std::uint32_t parent(std::uint32_t i) const { return parent_[i]; }
  std::uint32_t parent_generator(std::uint32_t i) const { return parent_gen_[i]; }
  // Generator indices w with element(i) = gen[w_0] ... gen[w_k].
  std::vector<std::uint32_t> word(std::uint32_t i) const;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }
  std::uint64_t element_order(std::uint32_t a) const;

  // Subgroup generated by the given elements, as sorted element indices.
  std::vector<std::uint32_t> subgroup_indices(const std::vector<std::uint32_t>& gens) const;
  // A generating subset of the generators, found by greedy removal.
  std::vector<std::uint32_t> pruned_generators() const;

  // BFS spanning tree of the Cayley graph for another generating set, over
  // the same element indexing.
  struct Traversal {
    std::vector<std::uint32_t> gens;        // element indices
    std::vector<std::uint32_t> order;       // visiting order, starts at 0
    std::vector<std::uint32_t> parent;      // by element index
    std::vector<std::uint32_t> parent_gen;  // by element index
    std::vector<std::uint32_t> cayley;      // element * gens[j]
    std::uint32_t rmul(std::uint32_t i, std::size_t j) const {
      return cayley[std::size_t{i} * gens.size() + j];
    }
  };
  Traversal traversal(const std::vector<std::uint32_t>& gens) const;

  // Memory threshold below which mul() uses a cached full table.
  static void set_table_threshold(std::size_t threshold);

  FiniteGroup() = default;

 private:
  void build_table() const;

  const LocalRing* ring_ = nullptr;
  std::size_t n_ = 0;
  std::vector<RingMatrix> elements_;
  std::unordered_map<RingMatrix, std::uint32_t, RingMatrixHash> index_;
  std::vector<std::uint32_t> generators_;
  std::vector<std::uint32_t> cayley_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> parent_gen_;
  std::vector<std::uint32_t> inverse_;
  mutable std::once_flag table_once_;
  mutable std::vector<std::uint32_t> table_;
};

// Serial reference closure; same element order as FiniteGroup::closure.
std::vector<RingMatrix> closure_reference(const std::vector<RingMatrix>& generators,
                                          std::size_t cap = kDefaultClosureCap);

struct Subgroup {
  GroupPtr group;
  // Index in the ambient group of each subgroup element.
  std::vector<std::uint32_t> inclusion;
};

Subgroup make_subgroup(const FiniteGroup& ambient, const std::vector<std::uint32_t>& gens);

// A Sylow p-subgroup, built by adjoining p-parts of normalizing elements
// visited in a seeded order.
Subgroup sylow(const FiniteGroup& g, std::uint32_t p, std::uint64_t seed = 7);

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<std::uint32_t> image;  // source index -> target index
  std::vector<std::uint32_t> kernel() const;
};

// Entrywise reduction of G along pi; the target is the enumerated image.
GroupHom induced_hom(const GroupPtr& g, const RingSurjection& pi);

// Kernel matrices read in coordinates: entry (i, j) contributes the d
// coordinates of kernel_coords at position (i*n + j)*d.
FpVector kernel_matrix_coords(const RingMatrix& v, const RingSurjection& pi);
RingMatrix kernel_matrix(const FpVector& coords, std::size_t n, const RingSurjection& pi);

// Basis (in kernel_matrix_coords form) of {v : I + v in H, pi(I + v) = I}.
// Throws NotClosed when that set is not a subspace.
std::vector<FpVector> kernel_module_vectors(const FiniteGroup& h, const RingSurjection& pi);

std::uint64_t sl_order(std::size_t n, const LocalRing& ring);

}  // namespace wittgroup

#endif  // WITTGROUP_MATGROUP_HPP_
