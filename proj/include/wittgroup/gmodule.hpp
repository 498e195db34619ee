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

#ifndef WITTGROUP_GMODULE_HPP_
#define WITTGROUP_GMODULE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wittgroup/fp_linalg.hpp"
#include "wittgroup/matgroup.hpp"

namespace wittgroup {

// Finite F_p[G]-module given by generator action matrices. Actions of
// arbitrary elements are expanded along the group's spanning tree on first
// use and cached (the cache is shared between copies).
class GModule {
 public:
  GModule() = default;
  // Propagates generator actions along the group's spanning tree and checks
  // every Cayley-graph edge; throws ActionMismatch if the matrices do not
  // satisfy the group's relations.
  static GModule from_generator_actions(GroupPtr group, std::uint32_t p, std::size_t dim,
                                        const std::vector<FpMatrix>& actions,
                                        std::vector<std::string> labels = {});
  // Action of each element of `group` taken from element_map[i] of `source`.
  static GModule pullback(const GModule& source, GroupPtr group,
                          const std::vector<std::uint32_t>& element_map);

  const GroupPtr& group() const { return group_; }
  std::uint32_t p() const { return p_; }
  std::size_t dim() const { return dim_; }
  // |M| = p^dim, saturating at 2^63.
  std::uint64_t cardinality() const;
  const std::vector<std::string>& labels() const { return labels_; }

  const FpMatrix& action(std::uint32_t g) const;
  const FpMatrix& generator_action(std::size_t j) const { return gen_actions_[j]; }
  const std::vector<FpMatrix>& generator_actions() const { return gen_actions_; }
  FpVector act(std::uint32_t g, std::span<const std::uint32_t> v) const {
    return action(g).apply(v);
  }
  bool is_trivial() const;
  // Expands all element actions now, checking every Cayley-graph edge;
  // throws ActionMismatch.
  void validate() const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<FpMatrix> actions;
    bool consistent = true;
  };
  void expand() const;

  GroupPtr group_;
  std::uint32_t p_ = 2;
  std::size_t dim_ = 0;
  std::vector<FpMatrix> gen_actions_;
  std::vector<std::string> labels_;
  std::shared_ptr<Cache> cache_;
};

enum class ModuleKind { M, M0, S, V };

// Conjugation modules for a matrix group G over a ring with residue field
// k = GF(p^d), with g acting by conjugation with its residue matrix.
//   M:  all n x n matrices over k, basis e_ij x^t at index (i*n + j)*d + t.
//   M0: trace-zero matrices; coordinates are the entries at every position
//       except (n-1, n-1), so position (i, i) stands for e_ii - e_nn.
//   S:  scalars (zero unless p | n);  V = M0 / S.
GModule build_module(ModuleKind which, const GroupPtr& group);
GModule trivial_module(const GroupPtr& group, std::uint32_t p, std::size_t dim);
GModule direct_sum(const GModule& a, const GModule& b);
GModule direct_power(const GModule& m, std::size_t r);

// Scalar matrices as vectors in M0 coordinates (empty when p does not
// divide n).
std::vector<FpVector> scalar_basis_m0(const FiniteGroup& group);
// Coordinates of a residue-field matrix in M or M0.
FpVector m_coords(const std::vector<FieldElement>& entries, std::size_t n);
FpVector m0_from_m(const FpVector& m, std::size_t n, std::size_t d);
FpVector m_from_m0(const FpVector& m0, std::size_t n, std::size_t d, std::uint32_t p);

struct Submodule {
  std::vector<FpVector> basis;  // canonical basis in ambient coordinates
  GModule module;               // action in basis coordinates
  FpMatrix inclusion;           // ambient x sub, columns are the basis
  // Coordinates of an ambient vector lying in the submodule.
  FpVector coordinates(std::span<const std::uint32_t> v) const;
};

struct Quotient {
  GModule module;
  FpMatrix projection;  // quotient x ambient
  FpMatrix lift;        // ambient x quotient, a set-theoretic splitting
};

// Throws NotInvariant when the span is not invariant.
Submodule submodule(const GModule& ambient, const std::vector<FpVector>& vectors);
Quotient quotient(const GModule& ambient, const std::vector<FpVector>& sub_basis);
bool is_invariant(const GModule& ambient, const std::vector<FpVector>& vectors);

// Smallest invariant subspace containing the seeds (canonical basis).
std::vector<FpVector> spin(const GModule& m, const std::vector<FpVector>& seeds);
Submodule spin_submodule(const GModule& m, const std::vector<FpVector>& seeds);

std::vector<FpVector> intersect(const GModule& m, const std::vector<FpVector>& a,
                                const std::vector<FpVector>& b);
std::vector<FpVector> sum(const GModule& m, const std::vector<FpVector>& a,
                          const std::vector<FpVector>& b);

// Basis of Hom_G(source, target) as target.dim x source.dim matrices.
std::vector<FpMatrix> hom_space(const GModule& source, const GModule& target);
bool is_equivariant(const GModule& source, const GModule& target, const FpMatrix& t);

struct ClassificationReport {
  std::size_t dim = 0;
  std::size_t s_dim = 0;
  std::uint64_t vectors_checked = 0;
  bool lemma_holds = true;
  std::optional<FpVector> witness;
  // Every submodule, as canonical bases, sorted by dimension then basis.
  std::vector<std::vector<FpVector>> submodules;
};

// Spins every nonzero vector of a module with a distinguished submodule S
// and checks: v outside S spins to everything, v inside S stays inside S.
// The submodule lattice is the closure of the cyclic submodules under sums.
ClassificationReport classify_submodules(const GModule& m, const std::vector<FpVector>& s_basis,
                                         bool parallel = true);

inline constexpr std::uint64_t kMaxExhaustiveVectors = std::uint64_t{1} << 20;

}  // namespace wittgroup

#endif  // WITTGROUP_GMODULE_HPP_
