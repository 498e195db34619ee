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

#include "wittgroup/matgroup.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <sstream>

#include "wittgroup/errors.hpp"

namespace wittgroup {

namespace {

std::atomic<std::size_t> g_table_threshold{kDefaultTableThreshold};

using Entries = std::array<RingElement, kMaxMatrixSize * kMaxMatrixSize>;

// Determinant of the k x k submatrix with the given rows and columns, by
// cofactor expansion along the first row.
RingElement det_sub(const LocalRing& r, const Entries& e, std::size_t n,
                    const std::size_t* rows, const std::size_t* cols, std::size_t k) {
  if (k == 1) return e[rows[0] * n + cols[0]];
  if (k == 2) {
    return r.sub(r.mul(e[rows[0] * n + cols[0]], e[rows[1] * n + cols[1]]),
                 r.mul(e[rows[0] * n + cols[1]], e[rows[1] * n + cols[0]]));
  }
  RingElement acc = r.zero();
  std::size_t sub_cols[kMaxMatrixSize];
  for (std::size_t c = 0; c < k; ++c) {
    const RingElement a = e[rows[0] * n + cols[c]];
    if (a == 0) continue;
    std::size_t t = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j != c) sub_cols[t++] = cols[j];
    }
    const RingElement term = r.mul(a, det_sub(r, e, n, rows + 1, sub_cols, k - 1));
    acc = (c % 2 == 0) ? r.add(acc, term) : r.sub(acc, term);
  }
  return acc;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

// -------------------------------------------------------------- RingMatrix

RingMatrix::RingMatrix(const LocalRing* ring, std::size_t n) : ring_(ring), n_(n) {
  if (n == 0 || n > kMaxMatrixSize) {
    throw Error(ErrorKind::UnsupportedSize, "matrix size must be in 1..4");
  }
}

RingMatrix RingMatrix::identity(const LocalRing* ring, std::size_t n) {
  RingMatrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring->one();
  return m;
}

RingMatrix RingMatrix::elementary(const LocalRing* ring, std::size_t n, std::size_t i,
                                  std::size_t j, RingElement t) {
  RingMatrix m = identity(ring, n);
  m.at(i, j) = ring->add(m.at(i, j), t);
  return m;
}

void RingMatrix::check_compatible(const RingMatrix& other) const {
  if (ring_ != other.ring_ || n_ != other.n_) {
    throw Error(ErrorKind::DescriptorMismatch, "matrices over different rings or sizes");
  }
}

RingMatrix RingMatrix::operator*(const RingMatrix& other) const {
  check_compatible(other);
  RingMatrix out(ring_, n_);
  const LocalRing& r = *ring_;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const RingElement a = e_[i * n_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const RingElement b = other.e_[k * n_ + j];
        if (b == 0) continue;
        out.e_[i * n_ + j] = r.add(out.e_[i * n_ + j], r.mul(a, b));
      }
    }
  }
  return out;
}

RingMatrix RingMatrix::operator+(const RingMatrix& other) const {
  check_compatible(other);
  RingMatrix out(ring_, n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) out.e_[i] = ring_->add(e_[i], other.e_[i]);
  return out;
}

RingMatrix RingMatrix::operator-(const RingMatrix& other) const {
  check_compatible(other);
  RingMatrix out(ring_, n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) out.e_[i] = ring_->sub(e_[i], other.e_[i]);
  return out;
}

RingMatrix RingMatrix::scaled(RingElement c) const {
  RingMatrix out(ring_, n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) out.e_[i] = ring_->mul(c, e_[i]);
  return out;
}

RingElement RingMatrix::det() const {
  std::size_t idx[kMaxMatrixSize];
  std::iota(idx, idx + n_, std::size_t{0});
  return det_sub(*ring_, e_, n_, idx, idx, n_);
}

RingElement RingMatrix::trace() const {
  RingElement t = ring_->zero();
  for (std::size_t i = 0; i < n_; ++i) t = ring_->add(t, at(i, i));
  return t;
}

RingMatrix RingMatrix::inverse() const {
  const RingElement d = det();
  if (!ring_->is_unit(d)) {
    throw Error(ErrorKind::NonUnitDeterminant, "determinant is not a unit");
  }
  const RingElement dinv = ring_->inv(d);
  RingMatrix out(ring_, n_);
  if (n_ == 1) {
    out.at(0, 0) = dinv;
    return out;
  }
  std::size_t rows[kMaxMatrixSize];
  std::size_t cols[kMaxMatrixSize];
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      // Entry (i, j) of the adjugate is the (j, i) cofactor.
      std::size_t tr = 0, tc = 0;
      for (std::size_t a = 0; a < n_; ++a) {
        if (a != j) rows[tr++] = a;
        if (a != i) cols[tc++] = a;
      }
      RingElement c = det_sub(*ring_, e_, n_, rows, cols, n_ - 1);
      if ((i + j) % 2 == 1) c = ring_->neg(c);
      out.at(i, j) = ring_->mul(c, dinv);
    }
  }
  return out;
}

bool RingMatrix::is_identity() const { return *this == identity(ring_, n_); }

bool RingMatrix::is_zero() const {
  for (std::size_t i = 0; i < n_ * n_; ++i) {
    if (e_[i] != 0) return false;
  }
  return true;
}

RingMatrix RingMatrix::map(const RingSurjection& pi) const {
  if (pi.source().get() != ring_) {
    throw Error(ErrorKind::DescriptorMismatch, "surjection source differs from matrix ring");
  }
  RingMatrix out(pi.target().get(), n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) out.e_[i] = pi.apply(e_[i]);
  return out;
}

RingMatrix RingMatrix::power(std::uint64_t e) const {
  RingMatrix result = identity(ring_, n_);
  RingMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::size_t RingMatrix::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (std::size_t i = 0; i < n_ * n_; ++i) {
    h ^= e_[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string RingMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) out << (j ? "," : "") << at(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

// -------------------------------------------------------------- generators

std::vector<RingMatrix> sl_generators(std::size_t n, const RingPtr& ring, const FieldPtr& k) {
  std::vector<RingMatrix> out;
  const auto basis = teichmuller_basis(*ring, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (RingElement t : basis) out.push_back(RingMatrix::elementary(ring.get(), n, i, j, t));
    }
  }
  return out;
}

std::vector<RingMatrix> sl_full_generators(std::size_t n, const RingPtr& ring) {
  auto out = sl_generators(n, ring, ring->residue_field());
  if (ring->kind() != RingKind::DualNumbers) return out;
  const auto basis = teichmuller_basis(*ring, ring->residue_field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (RingElement t : basis) {
        const RingElement eps_t = ring->eps_times(ring->residue(t));
        out.push_back(RingMatrix::elementary(ring.get(), n, i, j, eps_t));
      }
    }
  }
  return out;
}

std::uint64_t sl_order(std::size_t n, const LocalRing& ring) {
  const std::uint64_t q = ring.residue_field()->size();
  std::uint64_t base = ipow(q, n * (n - 1) / 2);
  for (std::size_t i = 2; i <= n; ++i) base *= ipow(q, i) - 1;
  const std::uint64_t layers = ring.kind() == RingKind::GaloisRing ? ring.m() - 1 : 1;
  return base * ipow(q, (n * n - 1) * layers);
}

// ------------------------------------------------------------- FiniteGroup

namespace {

struct ClosureState {
  std::vector<RingMatrix> elements;
  std::unordered_map<RingMatrix, std::uint32_t, RingMatrixHash> index;
  std::vector<std::uint32_t> cayley;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> parent_gen;
};

// Records the product element(i) * gen[j] = m, appending m when new.
void record(ClosureState& st, std::uint32_t i, std::size_t j, std::size_t ngens,
            RingMatrix&& m, std::size_t cap) {
  auto [it, inserted] = st.index.try_emplace(m, static_cast<std::uint32_t>(st.elements.size()));
  if (inserted) {
    if (st.elements.size() >= cap) {
      throw Error(ErrorKind::CapExceeded,
                  "group closure exceeded " + std::to_string(cap) + " elements");
    }
    st.elements.push_back(std::move(m));
    st.parent.push_back(i);
    st.parent_gen.push_back(static_cast<std::uint32_t>(j));
    st.cayley.resize(st.elements.size() * ngens, 0);
  }
  st.cayley[std::size_t{i} * ngens + j] = it->second;
}

ClosureState run_closure(const std::vector<RingMatrix>& gens, std::size_t cap, bool parallel) {
  if (gens.empty()) throw Error(ErrorKind::DescriptorMismatch, "closure needs a generator");
  for (const auto& g : gens) {
    if (g.ring_ptr() != gens[0].ring_ptr() || g.n() != gens[0].n()) {
      throw Error(ErrorKind::DescriptorMismatch, "generators over different rings");
    }
    if (!g.ring().is_unit(g.det())) {
      throw Error(ErrorKind::NonUnitDeterminant, "generator is not invertible");
    }
  }
  const std::size_t ng = gens.size();
  ClosureState st;
  st.elements.push_back(RingMatrix::identity(gens[0].ring_ptr(), gens[0].n()));
  st.index.emplace(st.elements[0], 0);
  st.parent.push_back(0);
  st.parent_gen.push_back(0);
  st.cayley.resize(ng, 0);

  std::size_t lo = 0;
  while (lo < st.elements.size()) {
    const std::size_t hi = st.elements.size();
    if (!parallel) {
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = 0; j < ng; ++j) {
          record(st, static_cast<std::uint32_t>(i), j, ng, st.elements[i] * gens[j], cap);
        }
      }
    } else {
      // Products of the whole layer are formed concurrently, then recorded
      // in the serial order so the enumeration is identical.
      std::vector<RingMatrix> products((hi - lo) * ng);
      const auto count = static_cast<std::int64_t>(hi - lo);
#pragma omp parallel for schedule(static)
      for (std::int64_t t = 0; t < count; ++t) {
        const std::size_t i = lo + static_cast<std::size_t>(t);
        for (std::size_t j = 0; j < ng; ++j) {
          products[static_cast<std::size_t>(t) * ng + j] = st.elements[i] * gens[j];
        }
      }
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = 0; j < ng; ++j) {
          record(st, static_cast<std::uint32_t>(i), j, ng,
                 std::move(products[(i - lo) * ng + j]), cap);
        }
      }
    }
    lo = hi;
  }
  return st;
}

}  // namespace

std::vector<RingMatrix> closure_reference(const std::vector<RingMatrix>& generators,
                                          std::size_t cap) {
  return run_closure(generators, cap, false).elements;
}

GroupPtr FiniteGroup::closure(const std::vector<RingMatrix>& generators, std::size_t cap,
                              bool parallel) {
  ClosureState st = run_closure(generators, cap, parallel);
  auto g = std::make_shared<FiniteGroup>();
  g->ring_ = generators[0].ring_ptr();
  g->n_ = generators[0].n();
  g->elements_ = std::move(st.elements);
  g->index_ = std::move(st.index);
  g->cayley_ = std::move(st.cayley);
  g->parent_ = std::move(st.parent);
  g->parent_gen_ = std::move(st.parent_gen);
  for (const auto& m : generators) g->generators_.push_back(g->index_.at(m));
  g->inverse_.resize(g->elements_.size());
  for (std::size_t i = 0; i < g->elements_.size(); ++i) {
    g->inverse_[i] = g->index_of(g->elements_[i].inverse());
  }
  return g;
}

std::optional<std::uint32_t> FiniteGroup::find(const RingMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t FiniteGroup::index_of(const RingMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw Error(ErrorKind::NotClosed, "matrix not in group");
  return it->second;
}

std::vector<std::uint32_t> FiniteGroup::word(std::uint32_t i) const {
  std::vector<std::uint32_t> w;
  while (i != 0) {
    w.push_back(parent_gen_[i]);
    i = parent_[i];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

void FiniteGroup::set_table_threshold(std::size_t threshold) { g_table_threshold = threshold; }

void FiniteGroup::build_table() const {
  const std::size_t n = order();
  const std::size_t ng = generators_.size();
  table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    std::uint32_t* row = table_.data() + a * n;
    row[0] = static_cast<std::uint32_t>(a);
    // parent(b) < b, so each entry extends an earlier one by a generator.
    for (std::size_t b = 1; b < n; ++b) row[b] = cayley_[std::size_t{row[parent_[b]]} * ng + parent_gen_[b]];
  }
}

std::uint32_t FiniteGroup::mul(std::uint32_t a, std::uint32_t b) const {
  if (order() <= g_table_threshold.load()) {
    std::call_once(table_once_, [this] { build_table(); });
    return table_[std::size_t{a} * order() + b];
  }
  std::uint32_t chain[64];
  std::size_t len = 0;
  std::vector<std::uint32_t> long_chain;
  for (std::uint32_t x = b; x != 0; x = parent_[x]) {
    if (len < 64) {
      chain[len++] = parent_gen_[x];
    } else {
      long_chain.push_back(parent_gen_[x]);
    }
  }
  std::uint32_t r = a;
  for (std::size_t t = long_chain.size(); t-- > 0;) r = rmul(r, long_chain[t]);
  for (std::size_t t = len; t-- > 0;) r = rmul(r, chain[t]);
  return r;
}

std::uint64_t FiniteGroup::element_order(std::uint32_t a) const {
  std::uint64_t k = 1;
  std::uint32_t x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::vector<std::uint32_t> FiniteGroup::subgroup_indices(
    const std::vector<std::uint32_t>& gens) const {
  std::vector<char> seen(order(), 0);
  std::vector<std::uint32_t> out = {0};
  seen[0] = 1;
  for (std::size_t t = 0; t < out.size(); ++t) {
    for (std::uint32_t g : gens) {
      const std::uint32_t y = mul(out[t], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> FiniteGroup::pruned_generators() const {
  std::vector<std::uint32_t> gens;
  for (std::uint32_t g : generators_) {
    if (g != 0 && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  for (std::size_t j = gens.size(); j-- > 0;) {
    if (gens.size() == 1) break;
    std::vector<std::uint32_t> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    if (subgroup_indices(rest).size() == order()) gens = std::move(rest);
  }
  return gens;
}

FiniteGroup::Traversal FiniteGroup::traversal(const std::vector<std::uint32_t>& gens) const {
  Traversal t;
  t.gens = gens;
  const std::size_t n = order();
  const std::size_t ng = gens.size();
  t.cayley.resize(n * ng);
  t.parent.assign(n, 0);
  t.parent_gen.assign(n, 0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  t.order.push_back(0);
  for (std::size_t q = 0; q < t.order.size(); ++q) {
    const std::uint32_t x = t.order[q];
    for (std::size_t j = 0; j < ng; ++j) {
      const std::uint32_t y = mul(x, gens[j]);
      t.cayley[std::size_t{x} * ng + j] = y;
      if (!seen[y]) {
        seen[y] = 1;
        t.parent[y] = x;
        t.parent_gen[y] = static_cast<std::uint32_t>(j);
        t.order.push_back(y);
      }
    }
  }
  if (t.order.size() != n) {
    throw Error(ErrorKind::NotClosed, "traversal generators do not generate the group");
  }
  return t;
}

Subgroup make_subgroup(const FiniteGroup& ambient, const std::vector<std::uint32_t>& gens) {
  std::vector<RingMatrix> mats;
  for (std::uint32_t g : gens) mats.push_back(ambient.element(g));
  if (mats.empty()) mats.push_back(ambient.element(0));
  Subgroup s;
  s.group = FiniteGroup::closure(mats);
  s.inclusion.reserve(s.group->order());
  for (const auto& m : s.group->elements()) s.inclusion.push_back(ambient.index_of(m));
  return s;
}

Subgroup sylow(const FiniteGroup& g, std::uint32_t p, std::uint64_t seed) {
  std::uint64_t target = 1;
  for (std::uint64_t o = g.order(); o % p == 0; o /= p) target *= p;

  std::vector<std::uint32_t> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::vector<std::uint32_t> gens;
  std::vector<char> in_p(g.order(), 0);
  in_p[0] = 1;
  std::size_t size = 1;
  while (size < target) {
    bool grew = false;
    for (std::uint32_t x : perm) {
      if (size >= target) break;
      // p-part of x.
      std::uint64_t ord = g.element_order(x);
      std::uint64_t rest = ord;
      while (rest % p == 0) rest /= p;
      std::uint32_t y = 0;
      for (std::uint64_t k = 0; k < rest; ++k) y = g.mul(y, x);
      if (in_p[y]) continue;
      bool normalizes = true;
      for (std::uint32_t z : gens) {
        if (!in_p[g.mul(g.mul(y, z), g.inv(y))]) {
          normalizes = false;
          break;
        }
      }
      if (!normalizes) continue;
      gens.push_back(y);
      const auto members = g.subgroup_indices(gens);
      std::fill(in_p.begin(), in_p.end(), 0);
      for (std::uint32_t m : members) in_p[m] = 1;
      size = members.size();
      grew = true;
    }
    if (!grew) throw Error(ErrorKind::NotClosed, "Sylow search stalled");
  }
  // Drop redundant generators.
  for (std::size_t j = gens.size(); j-- > 0;) {
    if (gens.size() == 1) break;
    std::vector<std::uint32_t> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    if (g.subgroup_indices(rest).size() == size) gens = std::move(rest);
  }
  return make_subgroup(g, gens);
}

// ---------------------------------------------------------- homomorphisms

std::vector<std::uint32_t> GroupHom::kernel() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < image.size(); ++i) {
    if (image[i] == 0) out.push_back(i);
  }
  return out;
}

GroupHom induced_hom(const GroupPtr& g, const RingSurjection& pi) {
  std::vector<RingMatrix> gens;
  for (std::uint32_t j : g->generators()) gens.push_back(g->element(j).map(pi));
  GroupHom h;
  h.source = g;
  h.target = FiniteGroup::closure(gens);
  h.image.reserve(g->order());
  for (const auto& m : g->elements()) h.image.push_back(h.target->index_of(m.map(pi)));
  return h;
}

FpVector kernel_matrix_coords(const RingMatrix& v, const RingSurjection& pi) {
  const std::size_t n = v.n();
  const std::size_t d = pi.kernel_dim();
  FpVector out(n * n * d, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = pi.kernel_coords(v.at(i, j));
      std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>((i * n + j) * d));
    }
  }
  return out;
}

RingMatrix kernel_matrix(const FpVector& coords, std::size_t n, const RingSurjection& pi) {
  const std::size_t d = pi.kernel_dim();
  RingMatrix out(pi.source().get(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) = pi.kernel_element(std::span<const std::uint32_t>(coords).subspan((i * n + j) * d, d));
    }
  }
  return out;
}

std::vector<FpVector> kernel_module_vectors(const FiniteGroup& h, const RingSurjection& pi) {
  const std::size_t n = h.n();
  const std::uint32_t p = h.ring().p();
  const RingMatrix id = RingMatrix::identity(h.ring_ptr(), n);
  const RingMatrix id_b = RingMatrix::identity(pi.target().get(), n);
  Echelon e(p, n * n * pi.kernel_dim());
  std::uint64_t count = 0;
  for (const auto& g : h.elements()) {
    if (!(g.map(pi) == id_b)) continue;
    ++count;
    e.insert(kernel_matrix_coords(g - id, pi));
  }
  if (count != ipow(p, e.rank())) {
    throw Error(ErrorKind::NotClosed, "kernel vectors do not form a subspace");
  }
  return e.basis();
}

}  // namespace wittgroup
