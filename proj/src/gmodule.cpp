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

#include "wittgroup/gmodule.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "wittgroup/errors.hpp"

namespace wittgroup {

// ----------------------------------------------------------------- GModule

GModule GModule::from_generator_actions(GroupPtr group, std::uint32_t p, std::size_t dim,
                                        const std::vector<FpMatrix>& actions,
                                        std::vector<std::string> labels) {
  if (actions.size() != group->num_generators()) {
    throw Error(ErrorKind::ActionMismatch, "one action matrix per generator is required");
  }
  for (const auto& a : actions) {
    if (a.rows() != dim || a.cols() != dim || a.p() != p) {
      throw Error(ErrorKind::ActionMismatch, "action matrix has the wrong shape");
    }
  }
  GModule m;
  m.group_ = std::move(group);
  m.p_ = p;
  m.dim_ = dim;
  m.gen_actions_ = actions;
  if (labels.empty()) {
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
  }
  m.labels_ = std::move(labels);
  m.cache_ = std::make_shared<Cache>();
  return m;
}

GModule GModule::pullback(const GModule& source, GroupPtr group,
                          const std::vector<std::uint32_t>& element_map) {
  std::vector<FpMatrix> actions;
  for (std::uint32_t g : group->generators()) actions.push_back(source.action(element_map[g]));
  GModule m = from_generator_actions(std::move(group), source.p_, source.dim_, actions,
                                     source.labels_);
  return m;
}

void GModule::expand() const {
  std::call_once(cache_->once, [this] {
    const FiniteGroup& g = *group_;
    auto& acts = cache_->actions;
    acts.assign(g.order(), FpMatrix());
    acts[0] = FpMatrix::identity(p_, dim_);
    for (std::uint32_t i = 1; i < g.order(); ++i) {
      acts[i] = acts[g.parent(i)] * gen_actions_[g.parent_generator(i)];
    }
    const std::size_t ng = g.num_generators();
    for (std::uint32_t i = 0; i < g.order() && cache_->consistent; ++i) {
      for (std::size_t j = 0; j < ng; ++j) {
        if (!(acts[g.rmul(i, j)] == acts[i] * gen_actions_[j])) {
          cache_->consistent = false;
          break;
        }
      }
    }
  });
  if (!cache_->consistent) {
    throw Error(ErrorKind::ActionMismatch, "generator actions violate a group relation");
  }
}

const FpMatrix& GModule::action(std::uint32_t g) const {
  expand();
  return cache_->actions[g];
}

void GModule::validate() const { expand(); }

std::uint64_t GModule::cardinality() const {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (c > (std::uint64_t{1} << 62) / p_) return std::uint64_t{1} << 63;
    c *= p_;
  }
  return c;
}

bool GModule::is_trivial() const {
  return std::all_of(gen_actions_.begin(), gen_actions_.end(),
                     [](const FpMatrix& a) { return a.is_identity(); });
}

// ------------------------------------------------------- conjugation modules

FpVector m_coords(const std::vector<FieldElement>& entries, std::size_t n) {
  const std::size_t d = entries.front().field().d();
  FpVector out(n * n * d, 0);
  for (std::size_t pos = 0; pos < n * n; ++pos) {
    const auto c = entries[pos].coeffs();
    for (std::size_t t = 0; t < d; ++t) out[pos * d + t] = c[t];
  }
  return out;
}

FpVector m0_from_m(const FpVector& m, std::size_t /*n*/, std::size_t d) {
  return FpVector(m.begin(), m.end() - static_cast<std::ptrdiff_t>(d));
}

FpVector m_from_m0(const FpVector& m0, std::size_t n, std::size_t d, std::uint32_t p) {
  FpVector out = m0;
  out.resize(n * n * d, 0);
  for (std::size_t t = 0; t < d; ++t) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) acc += m0[(i * n + i) * d + t];
    out[((n - 1) * n + (n - 1)) * d + t] = static_cast<std::uint32_t>((p - acc % p) % p);
  }
  return out;
}

namespace {

// Conjugation by the residue matrix of g on M(k), in M coordinates.
FpMatrix conjugation_on_m(const RingMatrix& g) {
  const LocalRing& ring = g.ring();
  const FiniteField& k = *ring.residue_field();
  const std::size_t n = g.n();
  const std::size_t d = k.d();
  const RingMatrix gi = g.inverse();
  std::vector<FieldElement> a(n * n), b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = ring.residue(g.at(i, j));
      b[i * n + j] = ring.residue(gi.at(i, j));
    }
  }
  FpMatrix out(k.p(), n * n * d, n * n * d);
  FieldElement power = k.one();
  const FieldElement x = d == 1 ? k.one() : k.x();
  for (std::size_t t = 0; t < d; ++t, power = power * x) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t col = (i * n + j) * d + t;
        // (a e_ij b)_{rs} = a_ri * x^t * b_js
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t s = 0; s < n; ++s) {
            const FieldElement c = a[r * n + i] * power * b[j * n + s];
            const auto cc = c.coeffs();
            for (std::size_t u = 0; u < d; ++u) out.at((r * n + s) * d + u, col) = cc[u];
          }
        }
      }
    }
  }
  return out;
}

FpMatrix restrict_to_m0(const FpMatrix& on_m, std::size_t n, std::size_t d, std::uint32_t p) {
  const std::size_t dim0 = (n * n - 1) * d;
  FpMatrix out(p, dim0, dim0);
  for (std::size_t c = 0; c < dim0; ++c) {
    FpVector e(dim0, 0);
    e[c] = 1;
    const FpVector img = m0_from_m(on_m.apply(m_from_m0(e, n, d, p)), n, d);
    for (std::size_t r = 0; r < dim0; ++r) out.at(r, c) = img[r];
  }
  return out;
}

std::vector<std::string> matrix_labels(std::size_t n, std::size_t d, bool trace_zero) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (trace_zero && i == n - 1 && j == n - 1) continue;
      std::string base = "e" + std::to_string(i + 1) + std::to_string(j + 1);
      if (trace_zero && i == j) base = "(" + base + "-e" + std::to_string(n) + std::to_string(n) + ")";
      for (std::size_t t = 0; t < d; ++t) out.push_back(base + "*x^" + std::to_string(t));
    }
  }
  return out;
}

}  // namespace

std::vector<FpVector> scalar_basis_m0(const FiniteGroup& group) {
  const std::size_t n = group.n();
  const std::uint32_t p = group.ring().p();
  const std::size_t d = group.ring().d();
  std::vector<FpVector> out;
  if (n % p != 0) return out;
  for (std::size_t t = 0; t < d; ++t) {
    FpVector v((n * n - 1) * d, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) v[(i * n + i) * d + t] = 1;
    out.push_back(std::move(v));
  }
  return out;
}

GModule build_module(ModuleKind which, const GroupPtr& group) {
  const std::size_t n = group->n();
  const std::uint32_t p = group->ring().p();
  const std::size_t d = group->ring().d();
  std::vector<FpMatrix> on_m;
  for (std::uint32_t g : group->generators()) on_m.push_back(conjugation_on_m(group->element(g)));
  if (which == ModuleKind::M) {
    return GModule::from_generator_actions(group, p, n * n * d, on_m, matrix_labels(n, d, false));
  }
  std::vector<FpMatrix> on_m0;
  for (const auto& a : on_m) on_m0.push_back(restrict_to_m0(a, n, d, p));
  GModule m0 = GModule::from_generator_actions(group, p, (n * n - 1) * d, on_m0,
                                               matrix_labels(n, d, true));
  if (which == ModuleKind::M0) return m0;
  const auto scalars = scalar_basis_m0(*group);
  if (which == ModuleKind::S) return submodule(m0, scalars).module;
  return quotient(m0, scalars).module;
}

GModule trivial_module(const GroupPtr& group, std::uint32_t p, std::size_t dim) {
  std::vector<FpMatrix> acts(group->num_generators(), FpMatrix::identity(p, dim));
  return GModule::from_generator_actions(group, p, dim, acts);
}

GModule direct_sum(const GModule& a, const GModule& b) {
  if (a.group() != b.group() || a.p() != b.p()) {
    throw Error(ErrorKind::DescriptorMismatch, "direct sum of modules over different groups");
  }
  const std::size_t da = a.dim(), db = b.dim();
  std::vector<FpMatrix> acts;
  for (std::size_t j = 0; j < a.group()->num_generators(); ++j) {
    FpMatrix m(a.p(), da + db, da + db);
    const FpMatrix& x = a.generator_action(j);
    const FpMatrix& y = b.generator_action(j);
    for (std::size_t r = 0; r < da; ++r) {
      for (std::size_t c = 0; c < da; ++c) m.at(r, c) = x.at(r, c);
    }
    for (std::size_t r = 0; r < db; ++r) {
      for (std::size_t c = 0; c < db; ++c) m.at(da + r, da + c) = y.at(r, c);
    }
    acts.push_back(std::move(m));
  }
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return GModule::from_generator_actions(a.group(), a.p(), da + db, acts, labels);
}

GModule direct_power(const GModule& m, std::size_t r) {
  if (r == 0) return trivial_module(m.group(), m.p(), 0);
  GModule out = m;
  for (std::size_t i = 1; i < r; ++i) out = direct_sum(out, m);
  return out;
}

// ------------------------------------------------------ submodules, quotients

bool is_invariant(const GModule& ambient, const std::vector<FpVector>& vectors) {
  Echelon e(ambient.p(), ambient.dim());
  for (const auto& v : vectors) e.insert(v);
  for (const auto& b : e.basis()) {
    for (const auto& a : ambient.generator_actions()) {
      if (!e.contains(a.apply(b))) return false;
    }
  }
  return true;
}

FpVector Submodule::coordinates(std::span<const std::uint32_t> v) const {
  // The basis is in reduced echelon form, so coordinates are read off at
  // the pivot columns.
  FpVector out(basis.size(), 0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto it = std::find_if(basis[k].begin(), basis[k].end(),
                                 [](std::uint32_t x) { return x != 0; });
    out[k] = v[static_cast<std::size_t>(it - basis[k].begin())];
  }
  return out;
}

Submodule submodule(const GModule& ambient, const std::vector<FpVector>& vectors) {
  Submodule s;
  s.basis = canonical_basis(ambient.p(), ambient.dim(), vectors);
  const std::size_t k = s.basis.size();
  s.inclusion = FpMatrix::from_columns(ambient.p(), ambient.dim(), s.basis);
  std::vector<FpMatrix> acts;
  for (const auto& a : ambient.generator_actions()) {
    FpMatrix m(ambient.p(), k, k);
    for (std::size_t c = 0; c < k; ++c) {
      const FpVector img = a.apply(s.basis[c]);
      const FpVector coords = s.coordinates(img);
      if (s.inclusion.apply(coords) != img) {
        throw Error(ErrorKind::NotInvariant, "subspace is not invariant under the action");
      }
      for (std::size_t r = 0; r < k; ++r) m.at(r, c) = coords[r];
    }
    acts.push_back(std::move(m));
  }
  s.module = GModule::from_generator_actions(ambient.group(), ambient.p(), k, acts);
  return s;
}

Quotient quotient(const GModule& ambient, const std::vector<FpVector>& sub_basis) {
  if (!is_invariant(ambient, sub_basis)) {
    throw Error(ErrorKind::NotInvariant, "quotient by a non-invariant subspace");
  }
  const std::uint32_t p = ambient.p();
  const std::size_t dim = ambient.dim();
  const auto rref = canonical_basis(p, dim, sub_basis);
  std::vector<std::size_t> pivot_of(dim, SIZE_MAX);
  for (std::size_t k = 0; k < rref.size(); ++k) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (rref[k][c] != 0) {
        pivot_of[c] = k;
        break;
      }
    }
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < dim; ++c) {
    if (pivot_of[c] == SIZE_MAX) free_cols.push_back(c);
  }
  const std::size_t q = free_cols.size();
  Quotient out;
  out.projection = FpMatrix(p, q, dim);
  out.lift = FpMatrix(p, dim, q);
  for (std::size_t i = 0; i < q; ++i) {
    out.projection.at(i, free_cols[i]) = 1;
    out.lift.at(free_cols[i], i) = 1;
  }
  for (std::size_t c = 0; c < dim; ++c) {
    if (pivot_of[c] == SIZE_MAX) continue;
    const FpVector& row = rref[pivot_of[c]];
    for (std::size_t i = 0; i < q; ++i) out.projection.at(i, c) = (p - row[free_cols[i]]) % p;
  }
  std::vector<FpMatrix> acts;
  for (const auto& a : ambient.generator_actions()) acts.push_back(out.projection * a * out.lift);
  std::vector<std::string> labels;
  for (std::size_t c : free_cols) labels.push_back(ambient.labels()[c] + " mod S");
  out.module = GModule::from_generator_actions(ambient.group(), p, q, acts, labels);
  return out;
}

// --------------------------------------------------------------- spinning

std::vector<FpVector> spin(const GModule& m, const std::vector<FpVector>& seeds) {
  Echelon e(m.p(), m.dim());
  std::vector<FpVector> queue;
  for (const auto& s : seeds) {
    if (e.insert(s)) queue.push_back(s);
  }
  for (std::size_t t = 0; t < queue.size() && e.rank() < m.dim(); ++t) {
    for (const auto& a : m.generator_actions()) {
      FpVector w = a.apply(queue[t]);
      if (e.insert(w)) queue.push_back(std::move(w));
    }
  }
  return e.rank() == m.dim() ? canonical_basis(m.p(), m.dim(), queue) : e.reduced_basis();
}

Submodule spin_submodule(const GModule& m, const std::vector<FpVector>& seeds) {
  return submodule(m, spin(m, seeds));
}

std::vector<FpVector> intersect(const GModule& m, const std::vector<FpVector>& a,
                                const std::vector<FpVector>& b) {
  if (!is_invariant(m, a) || !is_invariant(m, b)) {
    throw Error(ErrorKind::NotInvariant, "intersection of non-invariant subspaces");
  }
  return intersect_spans(m.p(), m.dim(), a, b);
}

std::vector<FpVector> sum(const GModule& m, const std::vector<FpVector>& a,
                          const std::vector<FpVector>& b) {
  if (!is_invariant(m, a) || !is_invariant(m, b)) {
    throw Error(ErrorKind::NotInvariant, "sum of non-invariant subspaces");
  }
  std::vector<FpVector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return canonical_basis(m.p(), m.dim(), all);
}

// ------------------------------------------------------------------- Hom

std::vector<FpMatrix> hom_space(const GModule& source, const GModule& target) {
  if (source.group() != target.group() || source.p() != target.p()) {
    throw Error(ErrorKind::DescriptorMismatch, "Hom between modules over different groups");
  }
  const std::uint32_t p = source.p();
  const std::size_t ds = source.dim(), dt = target.dim();
  const std::size_t unknowns = ds * dt;
  std::vector<FpVector> rows;
  for (std::size_t j = 0; j < source.group()->num_generators(); ++j) {
    const FpMatrix& a = source.generator_action(j);
    const FpMatrix& b = target.generator_action(j);
    // (T A - B T)_{rc} = 0
    for (std::size_t r = 0; r < dt; ++r) {
      for (std::size_t c = 0; c < ds; ++c) {
        FpVector row(unknowns, 0);
        for (std::size_t k = 0; k < ds; ++k) row[r * ds + k] = (row[r * ds + k] + a.at(k, c)) % p;
        for (std::size_t k = 0; k < dt; ++k) {
          row[k * ds + c] = (row[k * ds + c] + p - b.at(r, k)) % p;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  std::vector<FpMatrix> out;
  for (const auto& v : nullspace(p, unknowns, rows)) {
    FpMatrix t(p, dt, ds);
    for (std::size_t r = 0; r < dt; ++r) {
      for (std::size_t c = 0; c < ds; ++c) t.at(r, c) = v[r * ds + c];
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool is_equivariant(const GModule& source, const GModule& target, const FpMatrix& t) {
  for (std::size_t j = 0; j < source.group()->num_generators(); ++j) {
    if (!(t * source.generator_action(j) == target.generator_action(j) * t)) return false;
  }
  return true;
}

// --------------------------------------------------------- classification

namespace {

using Word = std::uint64_t;

// Spinning with vectors packed into one machine word (p = 2, dim <= 64).
class PackedSpinner {
 public:
  PackedSpinner(const std::vector<FpMatrix>& actions, std::size_t dim) : dim_(dim) {
    for (const FpMatrix& a : actions) {
      std::vector<Word> cols(dim_, 0);
      for (std::size_t c = 0; c < dim_; ++c) {
        for (std::size_t r = 0; r < dim_; ++r) {
          if (a.at(r, c) & 1u) cols[c] |= Word{1} << r;
        }
      }
      cols_.push_back(std::move(cols));
    }
  }

  // Canonical reduced basis of spin(v), or empty with *full set when the
  // spin is everything.
  std::vector<Word> spin(Word v, bool* full) const {
    Word rows[64];
    int pivot_row[64];
    std::fill(pivot_row, pivot_row + 64, -1);
    std::size_t rank = 0;
    Word queue[64];
    std::size_t qlen = 0;
    auto insert = [&](Word w) {
      while (w != 0) {
        const int b = std::countr_zero(w);
        if (pivot_row[b] < 0) {
          pivot_row[b] = static_cast<int>(rank);
          rows[rank++] = w;
          return true;
        }
        w ^= rows[pivot_row[b]];
      }
      return false;
    };
    if (insert(v)) queue[qlen++] = v;
    for (std::size_t t = 0; t < qlen && rank < dim_; ++t) {
      for (const auto& cols : cols_) {
        Word img = 0;
        for (Word bits = queue[t]; bits != 0; bits &= bits - 1) img ^= cols[std::countr_zero(bits)];
        if (insert(img)) queue[qlen++] = img;
      }
    }
    *full = rank == dim_;
    if (*full) return {};
    // Reduced form: clear every pivot bit from the other rows.
    std::vector<Word> basis(rows, rows + rank);
    std::sort(basis.begin(), basis.end(),
              [](Word a, Word b) { return std::countr_zero(a) < std::countr_zero(b); });
    for (std::size_t i = 0; i < rank; ++i) {
      const Word bit = basis[i] & (~basis[i] + 1);
      for (std::size_t j = 0; j < rank; ++j) {
        if (j != i && (basis[j] & bit)) basis[j] ^= basis[i];
      }
    }
    return basis;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<Word>> cols_;
};

FpVector unpack_word(Word w, std::size_t dim) {
  FpVector v(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) v[i] = (w >> i) & 1u;
  return v;
}

FpVector digits_of(std::uint64_t code, std::uint32_t p, std::size_t dim) {
  FpVector v(dim, 0);
  for (std::size_t i = 0; i < dim; ++i, code /= p) v[i] = static_cast<std::uint32_t>(code % p);
  return v;
}

}  // namespace

ClassificationReport classify_submodules(const GModule& m, const std::vector<FpVector>& s_basis,
                                         bool parallel) {
  const std::uint32_t p = m.p();
  const std::size_t dim = m.dim();
  const std::uint64_t total = m.cardinality();
  if (total > kMaxExhaustiveVectors) {
    throw Error(ErrorKind::SizeExceeded, "module too large for exhaustive classification");
  }
  Echelon s_space(p, dim);
  for (const auto& v : s_basis) s_space.insert(v);

  ClassificationReport report;
  report.dim = dim;
  report.s_dim = s_space.rank();
  report.vectors_checked = total - 1;

  // Spin with the actions of a pruned generating set.
  std::vector<FpMatrix> acts;
  const auto& all_gens = m.group()->generators();
  for (std::uint32_t g : m.group()->pruned_generators()) {
    const auto j = std::find(all_gens.begin(), all_gens.end(), g) - all_gens.begin();
    acts.push_back(m.generator_action(static_cast<std::size_t>(j)));
  }
  std::set<std::vector<FpVector>> cyclic;
  std::uint64_t witness = UINT64_MAX;

  if (p == 2 && dim <= 63) {
    const PackedSpinner spinner(acts, dim);
    // Echelon rows of S keyed by their lowest set bit.
    Word s_rows[64];
    int s_pivot[64];
    std::fill(s_pivot, s_pivot + 64, -1);
    std::size_t s_rank = 0;
    for (const auto& v : s_space.basis()) {
      Word w = 0;
      for (std::size_t i = 0; i < dim; ++i) w |= Word{v[i] & 1u} << i;
      for (Word r = w; r != 0;) {
        const int b = std::countr_zero(r);
        if (s_pivot[b] < 0) {
          s_pivot[b] = static_cast<int>(s_rank);
          s_rows[s_rank++] = r;
          break;
        }
        r ^= s_rows[s_pivot[b]];
      }
    }
    auto in_s = [&](Word v) {
      while (v != 0) {
        const int b = std::countr_zero(v);
        if (s_pivot[b] < 0) return false;
        v ^= s_rows[s_pivot[b]];
      }
      return true;
    };
    const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel if (parallel)
    {
      std::set<std::vector<Word>> local;
      std::uint64_t local_witness = UINT64_MAX;
#pragma omp for schedule(dynamic, 256) nowait
      for (std::int64_t code = 1; code < n; ++code) {
        const Word v = static_cast<Word>(code);
        bool full = false;
        auto basis = spinner.spin(v, &full);
        const bool inside = in_s(v);
        bool ok;
        if (inside) {
          ok = true;
          for (Word b : basis) ok = ok && in_s(b);
          ok = ok && !full;
        } else {
          ok = full;
        }
        if (!ok) local_witness = std::min(local_witness, static_cast<std::uint64_t>(code));
        if (!full) local.insert(std::move(basis));
      }
#pragma omp critical
      {
        for (const auto& b : local) {
          std::vector<FpVector> vecs;
          for (Word w : b) vecs.push_back(unpack_word(w, dim));
          cyclic.insert(std::move(vecs));
        }
        witness = std::min(witness, local_witness);
      }
    }
  } else {
    const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel if (parallel)
    {
      std::set<std::vector<FpVector>> local;
      std::uint64_t local_witness = UINT64_MAX;
#pragma omp for schedule(dynamic, 64) nowait
      for (std::int64_t code = 1; code < n; ++code) {
        const FpVector v = digits_of(static_cast<std::uint64_t>(code), p, dim);
        // Spin with the pruned generator actions.
        Echelon e(p, dim);
        std::vector<FpVector> queue;
        if (e.insert(v)) queue.push_back(v);
        for (std::size_t t = 0; t < queue.size() && e.rank() < dim; ++t) {
          for (const auto& a : acts) {
            FpVector w = a.apply(queue[t]);
            if (e.insert(w)) queue.push_back(std::move(w));
          }
        }
        const bool full = e.rank() == dim;
        const bool inside = s_space.contains(v);
        bool ok = inside ? !full : full;
        auto basis = full ? std::vector<FpVector>{} : e.reduced_basis();
        if (inside) {
          for (const auto& b : basis) ok = ok && s_space.contains(b);
        }
        if (!ok) local_witness = std::min(local_witness, static_cast<std::uint64_t>(code));
        if (!full) local.insert(std::move(basis));
      }
#pragma omp critical
      {
        cyclic.insert(local.begin(), local.end());
        witness = std::min(witness, local_witness);
      }
    }
  }

  if (witness != UINT64_MAX) {
    report.lemma_holds = false;
    report.witness = digits_of(witness, p, dim);
  }

  // Lattice: closure of {0, cyclic submodules, everything} under sums.
  std::set<std::vector<FpVector>> lattice;
  lattice.insert(std::vector<FpVector>{});
  std::vector<FpVector> everything;
  for (std::size_t i = 0; i < dim; ++i) {
    FpVector e(dim, 0);
    e[i] = 1;
    everything.push_back(std::move(e));
  }
  if (dim > 0) lattice.insert(everything);
  lattice.insert(cyclic.begin(), cyclic.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<FpVector>> current(lattice.begin(), lattice.end());
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<FpVector> all = current[i];
        all.insert(all.end(), current[j].begin(), current[j].end());
        grew |= lattice.insert(canonical_basis(p, dim, all)).second;
      }
    }
  }
  report.submodules.assign(lattice.begin(), lattice.end());
  std::stable_sort(report.submodules.begin(), report.submodules.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return report;
}

}  // namespace wittgroup
