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


#ifndef WITTGROUP_COHOMOLOGY_HPP_
#define WITTGROUP_COHOMOLOGY_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "wittgroup/fp_linalg.hpp"
#include "wittgroup/gmodule.hpp"
#include "wittgroup/matgroup.hpp"

namespace wittgroup {

inline constexpr std::size_t kMaxH1Variables = std::size_t{1} << 22;
inline constexpr std::size_t kMaxH2Order = 256;
inline constexpr std::size_t kMaxCocycleTable = std::size_t{1} << 26;
inline constexpr std::uint64_t kMaxSectionSearch = std::uint64_t{1} << 20;

// Function G -> M stored as |G| blocks of dim() entries, block i at i*dim.
struct Cocycle1 {
  std::uint32_t p = 2;
  std::size_t order = 0;
  std::size_t dim = 0;
  FpVector values;

  std::span<const std::uint32_t> at(std::uint32_t g) const {
    return {values.data() + std::size_t{g} * dim, dim};
  }
  std::span<std::uint32_t> at(std::uint32_t g) {
    return {values.data() + std::size_t{g} * dim, dim};
  }
};

// Function G x G -> M, block (g, h) at (g*|G| + h)*dim.
struct Cocycle2 {
  std::uint32_t p = 2;
  std::size_t order = 0;
  std::size_t dim = 0;
  FpVector values;

  std::span<const std::uint32_t> at(std::uint32_t g, std::uint32_t h) const {
    return {values.data() + (std::size_t{g} * order + h) * dim, dim};
  }
  std::span<std::uint32_t> at(std::uint32_t g, std::uint32_t h) {
    return {values.data() + (std::size_t{g} * order + h) * dim, dim};
  }
};

// Normalized cochains in coordinates relative to a generating set S of G.
// A 1-cocycle is determined by (xi(s))_{s in S}, stored as |S| blocks; a
// normalized 2-cocycle by x(g, s) for g != e, block (g-1)*|S| + j. The
// relations come from a BFS spanning tree of the Cayley graph on S: tree
// edges propagate values and every other edge contributes an equation.
class CochainCoordinates {
 public:
  // Uses the group's pruned generators.
  explicit CochainCoordinates(GModule m);
  CochainCoordinates(GModule m, std::vector<std::uint32_t> gens);

  const GModule& module() const { return module_; }
  const FiniteGroup& group() const { return *module_.group(); }
  std::uint32_t p() const { return module_.p(); }
  std::size_t dim() const { return module_.dim(); }
  const std::vector<std::uint32_t>& gens() const { return tree_.gens; }
  const FiniteGroup::Traversal& traversal() const { return tree_; }

  std::size_t size1() const { return tree_.gens.size() * dim(); }
  std::size_t size2() const;
  std::size_t block2(std::uint32_t g, std::size_t j) const {
    return ((std::size_t{g} - 1) * tree_.gens.size() + j) * dim();
  }

  FpVector coords1(const Cocycle1& xi) const;
  FpVector coords2(const Cocycle2& x) const;
  // Full cocycles; throw CocycleInvalid when an equation fails.
  Cocycle1 expand1(std::span<const std::uint32_t> u) const;
  Cocycle2 expand2(std::span<const std::uint32_t> u) const;
  bool is_cocycle1(std::span<const std::uint32_t> u) const;
  bool is_cocycle2(std::span<const std::uint32_t> u) const;

  // g -> g m - m.
  FpVector coboundary1(std::span<const std::uint32_t> m) const;
  // (g, h) -> g f(h) - f(gh) + f(g) for a normalized f given at every
  // element (|G| blocks).
  FpVector coboundary2(std::span<const std::uint32_t> f) const;

  std::vector<FpVector> relations1() const;
  // Equations involving x(g, -) for one g != e.
  std::vector<FpVector> relations2(std::uint32_t g) const;
  // Coboundaries of the unit cochains e_{h,t}, h != e, in order h, t.
  std::vector<FpVector> boundary_generators2() const;

 private:
  GModule module_;
  FiniteGroup::Traversal tree_;
};

// H^k(G, M) for k <= 2 in the coordinates of a CochainCoordinates.
class CohomologySpace {
 public:
  CohomologySpace(int degree, std::shared_ptr<const CochainCoordinates> coords,
                  std::size_t dim_z, std::vector<FpVector> boundaries,
                  std::vector<FpVector> basis);

  int degree() const { return degree_; }
  std::uint32_t p() const { return coords_->p(); }
  std::size_t dim_z() const { return dim_z_; }
  std::size_t dim_b() const { return boundaries_.size(); }
  std::size_t dim_h() const { return basis_.size(); }
  // Representatives of a basis of H.
  const std::vector<FpVector>& basis() const { return basis_; }
  // A basis of B.
  const std::vector<FpVector>& boundaries() const { return boundaries_; }
  const CochainCoordinates& coordinates() const { return *coords_; }
  const std::shared_ptr<const CochainCoordinates>& coordinates_ptr() const { return coords_; }

  bool is_coboundary(std::span<const std::uint32_t> c) const;
  // Coordinates of the class of a cocycle in basis(). Throws CocycleInvalid
  // when c is not a cocycle.
  FpVector class_of(std::span<const std::uint32_t> c) const;

 private:
  int degree_;
  std::shared_ptr<const CochainCoordinates> coords_;
  std::size_t dim_z_;
  std::vector<FpVector> boundaries_;
  std::vector<FpVector> basis_;
  std::shared_ptr<Echelon> classes_;
};

// Degree 0: invariants; basis holds them and B is zero.
CohomologySpace h0(const GModule& m);
// Throws SizeExceeded beyond kMaxH1Variables.
CohomologySpace h1(const GModule& m, std::vector<std::uint32_t> gens = {});
// Throws SizeExceeded when |G| > kMaxH2Order. Equation batches are
// generated in parallel when requested; the result does not depend on it.
CohomologySpace h2(const GModule& m, bool parallel = true, std::vector<std::uint32_t> gens = {});

// Applies a module map t (target x source) to every block of a cochain.
FpVector map_cochain(const FpMatrix& t, std::span<const std::uint32_t> c);
// Matrix of the map H(src) -> H(dst) induced by t, in the two bases. Both
// spaces must use the same generator list.
FpMatrix induced_map(const CohomologySpace& src, const CohomologySpace& dst, const FpMatrix& t);

// f with delta f = x (normalized, |G| blocks), or nullopt.
std::optional<FpVector> coboundary_solve2(const CochainCoordinates& coords,
                                          std::span<const std::uint32_t> x);

struct Obstruction {
  GModule module;          // M / N
  FpVector cocycle;        // degree-1 coordinates of xi mod N
  FpVector class_coords;   // nonzero coordinates in h1(module)
};

struct CoboundarySolution {
  std::optional<FpVector> m;
  std::optional<Obstruction> obstruction;
  bool solved() const { return m.has_value(); }
};

// Finds m with xi(g) - (g m - m) in N for every g. xi is given by
// representatives; CocycleInvalid when xi mod N is not a cocycle.
CoboundarySolution coboundary_solve1(const Cocycle1& xi, const GModule& m,
                                     const std::vector<FpVector>& n_basis = {});

Cocycle1 restrict(const Cocycle1& c, const Subgroup& h);
Cocycle2 restrict(const Cocycle2& c, const Subgroup& h);
Cocycle1 inflate(const Cocycle1& c, const GroupHom& q);
Cocycle2 inflate(const Cocycle2& c, const GroupHom& q);
// The module pulled back along q (over q.source).
GModule inflate_module(const GModule& m, const GroupHom& q);

// An extension 1 -> M -> E -> G -> 1 with M an F_p[G]-module, accessed
// through opaque element codes. The section must satisfy s(e) = e.
class ExtensionDescription {
 public:
  using Element = std::vector<std::uint32_t>;
  virtual ~ExtensionDescription() = default;

  virtual const GroupPtr& quotient() const = 0;
  virtual const GModule& kernel() const = 0;
  virtual Element identity() const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;
  virtual std::uint32_t project(const Element& a) const = 0;
  virtual Element section(std::uint32_t g) const = 0;
  virtual Element from_kernel(std::span<const std::uint32_t> v) const = 0;
  // Throws SectionInvalid when a is not in the kernel.
  virtual FpVector kernel_coords(const Element& a) const = 0;
};

// Checks s(e) = e and pi s = id (on all elements, or a sample of 4096),
// additivity of the kernel on basis pairs (KernelNotAbelianP) and that
// conjugation by section lifts of the generators induces the module action
// (ActionMismatch).
void validate_extension(const ExtensionDescription& e);

// s(g) s(h) s(gh)^{-1} in kernel coordinates.
FpVector extension_value(const ExtensionDescription& e, std::uint32_t g, std::uint32_t h);
// Full table; SizeExceeded beyond kMaxCocycleTable entries.
Cocycle2 extension_cocycle(const ExtensionDescription& e);
// x(g, s) for g != e and the generators of coords, without the full table.
FpVector extension_coords(const ExtensionDescription& e, const CochainCoordinates& coords);

// Entrywise Teichmuller-digit lift with the first column scaled by the
// inverse determinant, so the result lies in SL_n(A).
RingMatrix digit_section(const RingMatrix& g, const RingSurjection& pi);

// Preimage of a matrix group G over B inside a group E over A along pi,
// where m_A kills ker pi. The kernel is a subspace K of M(ker pi) in
// kernel_matrix_coords form.
class MatrixExtension : public ExtensionDescription {
 public:
  // E = SL_n(A) -> G = SL_n(B) with kernel M0, digit section.
  static std::shared_ptr<MatrixExtension> special_linear(std::size_t n, const RingPtr& a,
                                                         const RingPtr& b);
  // Preimage of g (a group over B) along pi: A -> B with the digit section.
  // Kernel M (inside GL_n(A)) or M0 (inside SL_n(A)).
  static std::shared_ptr<MatrixExtension> preimage(const GroupPtr& g, const RingPtr& a,
                                                   ModuleKind kernel);
  // E given by generators (enumerated); G is its image; the section picks
  // the first preimage in E's element order.
  static std::shared_ptr<MatrixExtension> from_group(const GroupPtr& e, const RingPtr& b);

  const GroupPtr& quotient() const override { return quotient_; }
  const GModule& kernel() const override { return kernel_; }
  Element identity() const override;
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  std::uint32_t project(const Element& a) const override;
  Element section(std::uint32_t g) const override;
  Element from_kernel(std::span<const std::uint32_t> v) const override;
  FpVector kernel_coords(const Element& a) const override;

  const RingSurjection& surjection() const { return *pi_; }
  RingMatrix matrix(const Element& a) const;
  Element encode(const RingMatrix& m) const;
  const RingMatrix& section_matrix(std::uint32_t g) const { return sections_[g]; }
  // Kernel module vector -> kernel_matrix_coords and back.
  const FpMatrix& to_matrix_coords() const { return from_module_; }
  const FpMatrix& to_module_coords() const { return to_module_; }

 private:
  MatrixExtension() = default;

  std::size_t n_ = 0;
  std::shared_ptr<RingSurjection> pi_;
  GroupPtr quotient_;
  GModule kernel_;
  FpMatrix to_module_;    // D x n^2 d
  FpMatrix from_module_;  // n^2 d x D
  std::vector<RingMatrix> sections_;
};

// E / Z for an invariant subspace Z of the kernel; elements are carried by
// representatives in E.
class QuotientExtension : public ExtensionDescription {
 public:
  QuotientExtension(std::shared_ptr<const ExtensionDescription> base,
                    const std::vector<FpVector>& z_basis);

  const GroupPtr& quotient() const override { return base_->quotient(); }
  const GModule& kernel() const override { return q_.module; }
  Element identity() const override { return base_->identity(); }
  Element mul(const Element& a, const Element& b) const override { return base_->mul(a, b); }
  Element inv(const Element& a) const override { return base_->inv(a); }
  std::uint32_t project(const Element& a) const override { return base_->project(a); }
  Element section(std::uint32_t g) const override { return base_->section(g); }
  Element from_kernel(std::span<const std::uint32_t> v) const override;
  FpVector kernel_coords(const Element& a) const override;

  const Quotient& quotient_data() const { return q_; }

 private:
  std::shared_ptr<const ExtensionDescription> base_;
  Quotient q_;
};

// Preimage of a subgroup H of G.
class RestrictedExtension : public ExtensionDescription {
 public:
  RestrictedExtension(std::shared_ptr<const ExtensionDescription> base, Subgroup h);

  const GroupPtr& quotient() const override { return h_.group; }
  const GModule& kernel() const override { return kernel_; }
  Element identity() const override { return base_->identity(); }
  Element mul(const Element& a, const Element& b) const override { return base_->mul(a, b); }
  Element inv(const Element& a) const override { return base_->inv(a); }
  std::uint32_t project(const Element& a) const override;
  Element section(std::uint32_t g) const override { return base_->section(h_.inclusion[g]); }
  Element from_kernel(std::span<const std::uint32_t> v) const override {
    return base_->from_kernel(v);
  }
  FpVector kernel_coords(const Element& a) const override { return base_->kernel_coords(a); }

  const Subgroup& subgroup() const { return h_; }

 private:
  std::shared_ptr<const ExtensionDescription> base_;
  Subgroup h_;
  GModule kernel_;
  std::unordered_map<std::uint32_t, std::uint32_t> back_;
};

// The 2-cocycle (g1, g2) -> pi(a1) + g1 pi(a2) - pi(a1 a2) where
// pi(k s(g)) = phi(k) and a_i lifts g_i. With a seed the lifts are
// a_i = k_i s(g_i) for random kernel elements k_i, otherwise a_i = s(g_i).
// phi: kernel -> target must be G-equivariant (NotEquivariant).
Cocycle2 transgression(const ExtensionDescription& e, const GModule& target, const FpMatrix& phi,
                       std::optional<std::uint64_t> lift_seed = std::nullopt);

struct SplitVerdict {
  bool split = false;
  std::size_t sylow_order = 0;
  bool sylow_split = false;
  // Coboundary test over all of G (|G| <= kMaxH2Order).
  std::optional<bool> full_split;
  // Generator-lift search (|M|^{#gens} <= kMaxSectionSearch).
  std::optional<bool> search_split;
  std::uint64_t search_space = 0;
  bool agree = true;
  // Split: kernel parts c with g -> from_kernel(c(g)) s(g) a homomorphism,
  // |H| blocks, over the Sylow subgroup and, when found, over G.
  Subgroup sylow;
  FpVector sylow_section;
  std::optional<FpVector> section;
  // Non-split: the restricted extension cocycle at the Sylow subgroup, in
  // its degree-2 coordinates.
  FpVector certificate;
};

// Gaschutz reduction to a Sylow p-subgroup plus the independent checks.
SplitVerdict split_check(const ExtensionDescription& e, std::uint64_t seed = 7,
                         bool parallel = true);

// Generator-lift search for a homomorphic section; kernel parts over all of
// G for the smallest successful assignment, or nullopt.
std::optional<FpVector> search_section(const ExtensionDescription& e, bool parallel = true);

struct InjectivityVerdict {
  std::size_t dim_n = 0;
  std::size_t dim_m = 0;
  std::size_t rank = 0;
  bool injective = true;
};

// H^2(G, N) -> H^2(G, M) for N spanned by n_basis inside M.
InjectivityVerdict h2_map_injectivity(const GModule& m, const std::vector<FpVector>& n_basis,
                                      bool parallel = true);

struct Descent {
  Submodule meet;   // M cap N
  FpVector z;       // degree-2 coordinates over meet.module
  bool verified = false;
};

// x, y are degree-2 cocycle coordinates over the submodules spanned by
// m_basis and n_basis of ambient whose images agree in H^2(G, M + N).
// Throws ClassesDiffer otherwise.
Descent h2_intersection_descent(const GModule& ambient, const std::vector<FpVector>& m_basis,
                                const std::vector<FpVector>& n_basis,
                                std::span<const std::uint32_t> x,
                                std::span<const std::uint32_t> y);

}  // namespace wittgroup

#endif  // WITTGROUP_COHOMOLOGY_HPP_
