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


#include "wittgroup/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <string>

#include "wittgroup/errors.hpp"

namespace wittgroup {

namespace {

// dst[i] += s * src[i] (mod p) with s = 1 or p - 1.
void axpy(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t p,
          bool negate) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = negate ? (p - src[i]) % p : src[i];
    dst[i] = (dst[i] + v) % p;
  }
}

// dst += s * (a * src) for a square matrix a.
void axpy_apply(std::uint32_t* dst, const FpMatrix& a, const std::uint32_t* src, std::uint32_t p,
                bool negate) {
  const std::size_t d = a.rows();
  for (std::size_t r = 0; r < d; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < d; ++c) acc += std::uint64_t{a.at(r, c)} * src[c];
    const std::uint32_t v = static_cast<std::uint32_t>(acc % p);
    dst[r] = (dst[r] + (negate ? (p - v) % p : v)) % p;
  }
}

// A form table holds one D x U matrix of linear forms per group element.
class Forms {
 public:
  Forms(std::size_t order, std::size_t d, std::size_t u)
      : d_(d), u_(u), data_(order * d * u, 0) {}
  std::uint32_t* row(std::uint32_t h, std::size_t r) { return data_.data() + (h * d_ + r) * u_; }
  std::uint32_t* block(std::uint32_t h) { return data_.data() + std::size_t{h} * d_ * u_; }
  std::size_t block_size() const { return d_ * u_; }

 private:
  std::size_t d_;
  std::size_t u_;
  std::vector<std::uint32_t> data_;
};

// Adds s * a into columns [col, col + D) of the D rows of form h.
void add_block(Forms& f, std::uint32_t h, std::size_t col, const FpMatrix& a, std::uint32_t p,
               bool negate) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint32_t* row = f.row(h, r) + col;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const std::uint32_t v = negate ? (p - a.at(r, c)) % p : a.at(r, c);
      row[c] = (row[c] + v) % p;
    }
  }
}

void add_unit(Forms& f, std::uint32_t h, std::size_t col, std::size_t d, std::uint32_t p,
              bool negate) {
  for (std::size_t r = 0; r < d; ++r) {
    std::uint32_t& v = f.row(h, r)[col + r];
    v = (v + (negate ? p - 1 : 1)) % p;
  }
}

bool is_tree_edge(const FiniteGroup::Traversal& t, std::uint32_t h, std::size_t j) {
  const std::uint32_t y = t.rmul(h, j);
  return y != 0 && t.parent[y] == h && t.parent_gen[y] == j;
}

std::vector<std::uint32_t> resolve_gens(const GModule& m, std::vector<std::uint32_t> gens) {
  if (!m.group()) throw Error(ErrorKind::DescriptorMismatch, "module without a group");
  if (gens.empty()) gens = m.group()->pruned_generators();
  return gens;
}

// Non-owning handle for APIs that hold shared pointers.
std::shared_ptr<const ExtensionDescription> borrow(const ExtensionDescription& e) {
  return std::shared_ptr<const ExtensionDescription>(std::shared_ptr<void>(), &e);
}

// The shared descriptor of a ring built by the LocalRing factories.
RingPtr interned(const LocalRing& ring) {
  RingPtr r = ring.kind() == RingKind::DualNumbers ? LocalRing::dual(ring.p(), ring.d())
                                                   : LocalRing::galois(ring.p(), ring.m(), ring.d());
  if (r.get() != &ring) throw Error(ErrorKind::DescriptorMismatch, "ring is not interned");
  return r;
}

FpVector negated(FpVector v, std::uint32_t p) {
  for (auto& x : v) x = (p - x) % p;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// CochainCoordinates

CochainCoordinates::CochainCoordinates(GModule m) : CochainCoordinates(m, {}) {}

CochainCoordinates::CochainCoordinates(GModule m, std::vector<std::uint32_t> gens)
    : module_(std::move(m)) {
  gens = resolve_gens(module_, std::move(gens));
  tree_ = module_.group()->traversal(gens);
  if (tree_.order.size() != group().order()) {
    throw Error(ErrorKind::NotClosed, "coordinate generators do not generate the group");
  }
}

std::size_t CochainCoordinates::size2() const {
  return (group().order() - 1) * tree_.gens.size() * dim();
}

FpVector CochainCoordinates::coords1(const Cocycle1& xi) const {
  if (xi.order != group().order() || xi.dim != dim()) {
    throw Error(ErrorKind::DescriptorMismatch, "cocycle shape does not match the module");
  }
  FpVector u;
  u.reserve(size1());
  for (std::uint32_t s : tree_.gens) {
    const auto b = xi.at(s);
    u.insert(u.end(), b.begin(), b.end());
  }
  return u;
}

FpVector CochainCoordinates::coords2(const Cocycle2& x) const {
  if (x.order != group().order() || x.dim != dim()) {
    throw Error(ErrorKind::DescriptorMismatch, "cocycle shape does not match the module");
  }
  FpVector u;
  u.reserve(size2());
  for (std::uint32_t g = 1; g < group().order(); ++g) {
    for (std::uint32_t s : tree_.gens) {
      const auto b = x.at(g, s);
      u.insert(u.end(), b.begin(), b.end());
    }
  }
  return u;
}

Cocycle1 CochainCoordinates::expand1(std::span<const std::uint32_t> u) const {
  if (u.size() != size1()) throw Error(ErrorKind::DescriptorMismatch, "wrong coordinate length");
  const std::uint32_t p = this->p();
  const std::size_t d = dim();
  const std::size_t n = group().order();
  Cocycle1 xi{p, n, d, FpVector(n * d, 0)};
  for (std::size_t q = 1; q < tree_.order.size(); ++q) {
    const std::uint32_t h = tree_.order[q];
    const std::uint32_t par = tree_.parent[h];
    const std::size_t j = tree_.parent_gen[h];
    std::copy(xi.at(par).begin(), xi.at(par).end(), xi.at(h).begin());
    axpy_apply(xi.at(h).data(), module_.action(par), u.data() + j * d, p, false);
  }
  FpVector val(d);
  for (std::uint32_t h = 0; h < n; ++h) {
    for (std::size_t j = 0; j < tree_.gens.size(); ++j) {
      if (is_tree_edge(tree_, h, j)) continue;
      std::copy(xi.at(h).begin(), xi.at(h).end(), val.begin());
      axpy_apply(val.data(), module_.action(h), u.data() + j * d, p, false);
      const auto t = xi.at(tree_.rmul(h, j));
      if (!std::equal(val.begin(), val.end(), t.begin())) {
        throw Error(ErrorKind::CocycleInvalid, "1-cocycle relation fails at element " +
                                                   std::to_string(h) + ", generator " +
                                                   std::to_string(j));
      }
    }
  }
  return xi;
}

Cocycle2 CochainCoordinates::expand2(std::span<const std::uint32_t> u) const {
  if (u.size() != size2()) throw Error(ErrorKind::DescriptorMismatch, "wrong coordinate length");
  const std::uint32_t p = this->p();
  const std::size_t d = dim();
  const std::size_t n = group().order();
  if (n * n * d > kMaxCocycleTable) {
    throw Error(ErrorKind::SizeExceeded, "2-cocycle table too large");
  }
  const FiniteGroup& g_ = group();
  Cocycle2 x{p, n, d, FpVector(n * n * d, 0)};
  auto unknown = [&](std::uint32_t a, std::size_t j) -> const std::uint32_t* {
    return a == 0 ? nullptr : u.data() + block2(a, j);
  };
  FpVector val(d);
  for (std::uint32_t g = 1; g < n; ++g) {
    const FpMatrix& act = module_.action(g);
    // x(g, h s) = x(g, h) + x(gh, s) - g x(h, s).
    auto step = [&](std::uint32_t h, std::size_t j, std::uint32_t* out) {
      const auto base = x.at(g, h);
      std::copy(base.begin(), base.end(), out);
      if (const auto* a = unknown(g_.mul(g, h), j)) axpy(out, a, d, p, false);
      if (const auto* b = unknown(h, j)) axpy_apply(out, act, b, p, true);
    };
    for (std::size_t q = 1; q < tree_.order.size(); ++q) {
      const std::uint32_t h = tree_.order[q];
      step(tree_.parent[h], tree_.parent_gen[h], x.at(g, h).data());
    }
    for (std::uint32_t h = 0; h < n; ++h) {
      for (std::size_t j = 0; j < tree_.gens.size(); ++j) {
        if (is_tree_edge(tree_, h, j)) continue;
        step(h, j, val.data());
        const auto t = x.at(g, tree_.rmul(h, j));
        if (!std::equal(val.begin(), val.end(), t.begin())) {
          throw Error(ErrorKind::CocycleInvalid,
                      "2-cocycle relation fails at (" + std::to_string(g) + ", " +
                          std::to_string(h) + ", generator " + std::to_string(j) + ")");
        }
      }
    }
  }
  return x;
}

bool CochainCoordinates::is_cocycle1(std::span<const std::uint32_t> u) const {
  try {
    expand1(u);
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CocycleInvalid) throw;
    return false;
  }
}

bool CochainCoordinates::is_cocycle2(std::span<const std::uint32_t> u) const {
  if (group().order() * group().order() * dim() <= kMaxCocycleTable) {
    try {
      expand2(u);
      return true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CocycleInvalid) throw;
      return false;
    }
  }
  for (std::uint32_t g = 1; g < group().order(); ++g) {
    for (const auto& r : relations2(g)) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < r.size(); ++c) acc = (acc + std::uint64_t{r[c]} * u[c]) % p();
      if (acc != 0) return false;
    }
  }
  return true;
}

FpVector CochainCoordinates::coboundary1(std::span<const std::uint32_t> m) const {
  const std::size_t d = dim();
  FpVector u(size1(), 0);
  for (std::size_t j = 0; j < tree_.gens.size(); ++j) {
    axpy_apply(u.data() + j * d, module_.action(tree_.gens[j]), m.data(), p(), false);
    axpy(u.data() + j * d, m.data(), d, p(), true);
  }
  return u;
}

FpVector CochainCoordinates::coboundary2(std::span<const std::uint32_t> f) const {
  const std::size_t d = dim();
  const std::uint32_t p = this->p();
  FpVector u(size2(), 0);
  for (std::uint32_t g = 1; g < group().order(); ++g) {
    const FpMatrix& act = module_.action(g);
    for (std::size_t j = 0; j < tree_.gens.size(); ++j) {
      std::uint32_t* out = u.data() + block2(g, j);
      axpy_apply(out, act, f.data() + std::size_t{tree_.gens[j]} * d, p, false);
      axpy(out, f.data() + std::size_t{tree_.rmul(g, j)} * d, d, p, true);
      axpy(out, f.data() + std::size_t{g} * d, d, p, false);
    }
  }
  return u;
}

std::vector<FpVector> CochainCoordinates::relations1() const {
  const std::size_t n = group().order();
  const std::size_t d = dim();
  const std::size_t u = size1();
  const std::uint32_t p = this->p();
  if (n * d > kMaxH1Variables) throw Error(ErrorKind::SizeExceeded, "H^1 system too large");
  Forms forms(n, d, u);
  for (std::size_t q = 1; q < tree_.order.size(); ++q) {
    const std::uint32_t h = tree_.order[q];
    const std::uint32_t par = tree_.parent[h];
    std::copy_n(forms.block(par), forms.block_size(), forms.block(h));
    add_block(forms, h, tree_.parent_gen[h] * d, module_.action(par), p, false);
  }
  std::vector<FpVector> rows;
  for (std::uint32_t h = 0; h < n; ++h) {
    for (std::size_t j = 0; j < tree_.gens.size(); ++j) {
      if (is_tree_edge(tree_, h, j)) continue;
      const std::uint32_t t = tree_.rmul(h, j);
      const FpMatrix& act = module_.action(h);
      for (std::size_t r = 0; r < d; ++r) {
        FpVector row(forms.row(t, r), forms.row(t, r) + u);
        axpy(row.data(), forms.row(h, r), u, p, true);
        for (std::size_t c = 0; c < d; ++c) {
          std::uint32_t& v = row[j * d + c];
          v = (v + p - act.at(r, c)) % p;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<FpVector> CochainCoordinates::relations2(std::uint32_t g) const {
  const FiniteGroup& grp = group();
  const std::size_t n = grp.order();
  const std::size_t d = dim();
  const std::size_t u = size2();
  const std::uint32_t p = this->p();
  const FpMatrix& act = module_.action(g);
  Forms forms(n, d, u);
  for (std::size_t q = 1; q < tree_.order.size(); ++q) {
    const std::uint32_t h = tree_.order[q];
    const std::uint32_t par = tree_.parent[h];
    const std::size_t j = tree_.parent_gen[h];
    std::copy_n(forms.block(par), forms.block_size(), forms.block(h));
    if (const std::uint32_t gp = grp.mul(g, par); gp != 0) add_unit(forms, h, block2(gp, j), d, p, false);
    if (par != 0) add_block(forms, h, block2(par, j), act, p, true);
  }
  std::vector<FpVector> rows;
  for (std::uint32_t h = 0; h < n; ++h) {
    for (std::size_t j = 0; j < tree_.gens.size(); ++j) {
      if (is_tree_edge(tree_, h, j)) continue;
      const std::uint32_t t = tree_.rmul(h, j);
      const std::uint32_t gh = grp.mul(g, h);
      for (std::size_t r = 0; r < d; ++r) {
        FpVector row(forms.row(t, r), forms.row(t, r) + u);
        axpy(row.data(), forms.row(h, r), u, p, true);
        if (gh != 0) {
          std::uint32_t& v = row[block2(gh, j) + r];
          v = (v + p - 1) % p;
        }
        if (h != 0) {
          const std::size_t col = block2(h, j);
          for (std::size_t c = 0; c < d; ++c) row[col + c] = (row[col + c] + act.at(r, c)) % p;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<FpVector> CochainCoordinates::boundary_generators2() const {
  const FiniteGroup& grp = group();
  const std::size_t n = grp.order();
  const std::size_t d = dim();
  const std::uint32_t p = this->p();
  std::vector<FpVector> out((n - 1) * d, FpVector(size2(), 0));
  auto at = [&](std::uint32_t h, std::size_t t) -> FpVector& { return out[(h - 1) * d + t]; };
  for (std::uint32_t g = 1; g < n; ++g) {
    const FpMatrix& act = module_.action(g);
    for (std::size_t j = 0; j < tree_.gens.size(); ++j) {
      const std::size_t base = block2(g, j);
      const std::uint32_t s = tree_.gens[j];
      // g f(s) - f(g s) + f(g).
      if (s != 0) {
        for (std::size_t t = 0; t < d; ++t) {
          for (std::size_t r = 0; r < d; ++r) {
            std::uint32_t& v = at(s, t)[base + r];
            v = (v + act.at(r, t)) % p;
          }
        }
      }
      if (const std::uint32_t gs = tree_.rmul(g, j); gs != 0) {
        for (std::size_t t = 0; t < d; ++t) {
          std::uint32_t& v = at(gs, t)[base + t];
          v = (v + p - 1) % p;
        }
      }
      for (std::size_t t = 0; t < d; ++t) {
        std::uint32_t& v = at(g, t)[base + t];
        v = (v + 1) % p;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CohomologySpace

CohomologySpace::CohomologySpace(int degree, std::shared_ptr<const CochainCoordinates> coords,
                                 std::size_t dim_z, std::vector<FpVector> boundaries,
                                 std::vector<FpVector> basis)
    : degree_(degree),
      coords_(std::move(coords)),
      dim_z_(dim_z),
      boundaries_(std::move(boundaries)),
      basis_(std::move(basis)) {
  const std::size_t width = degree_ == 0   ? coords_->dim()
                            : degree_ == 1 ? coords_->size1()
                                           : coords_->size2();
  const std::size_t k = basis_.size();
  classes_ = std::make_shared<Echelon>(p(), width, std::max<std::size_t>(k, 1));
  const FpVector zero(std::max<std::size_t>(k, 1), 0);
  for (const auto& b : boundaries_) classes_->insert(b, zero);
  for (std::size_t i = 0; i < k; ++i) {
    FpVector tag(k, 0);
    tag[i] = 1;
    classes_->insert(basis_[i], tag);
  }
}

bool CohomologySpace::is_coboundary(std::span<const std::uint32_t> c) const {
  const auto comb = classes_->express(c);
  if (!comb) return false;
  return std::all_of(comb->begin(), comb->end(), [](std::uint32_t v) { return v == 0; });
}

FpVector CohomologySpace::class_of(std::span<const std::uint32_t> c) const {
  auto comb = classes_->express(c);
  if (!comb) throw Error(ErrorKind::CocycleInvalid, "vector is not a cocycle");
  comb->resize(basis_.size());
  return *comb;
}

namespace {

std::vector<FpVector> representatives(std::uint32_t p, std::size_t width,
                                      const std::vector<FpVector>& boundaries,
                                      const std::vector<FpVector>& cocycles) {
  Echelon e(p, width);
  for (const auto& b : boundaries) e.insert(b);
  std::vector<FpVector> reps;
  for (const auto& z : cocycles) {
    if (e.insert(z)) reps.push_back(z);
  }
  return reps;
}

}  // namespace

CohomologySpace h0(const GModule& m) {
  auto coords = std::make_shared<const CochainCoordinates>(m);
  std::vector<FpVector> rows;
  const std::uint32_t p = m.p();
  for (const auto& a : m.generator_actions()) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
      FpVector row(a.row(r).begin(), a.row(r).end());
      row[r] = (row[r] + p - 1) % p;
      rows.push_back(std::move(row));
    }
  }
  auto inv = m.dim() == 0 ? std::vector<FpVector>{} : nullspace(p, m.dim(), rows);
  const std::size_t dz = inv.size();
  return CohomologySpace(0, std::move(coords), dz, {}, std::move(inv));
}

CohomologySpace h1(const GModule& m, std::vector<std::uint32_t> gens) {
  auto coords = std::make_shared<const CochainCoordinates>(m, std::move(gens));
  const std::uint32_t p = m.p();
  const std::size_t u = coords->size1();
  if (u == 0) return CohomologySpace(1, std::move(coords), 0, {}, {});
  const auto z = nullspace(p, u, coords->relations1());
  std::vector<FpVector> cob;
  for (std::size_t t = 0; t < m.dim(); ++t) {
    FpVector e(m.dim(), 0);
    e[t] = 1;
    cob.push_back(coords->coboundary1(e));
  }
  auto b = canonical_basis(p, u, cob);
  auto reps = representatives(p, u, b, z);
  return CohomologySpace(1, std::move(coords), z.size(), std::move(b), std::move(reps));
}

CohomologySpace h2(const GModule& m, bool parallel, std::vector<std::uint32_t> gens) {
  if (m.group() && m.group()->order() > kMaxH2Order) {
    throw Error(ErrorKind::SizeExceeded, "H^2 is computed directly only for |G| <= " +
                                             std::to_string(kMaxH2Order));
  }
  auto coords = std::make_shared<const CochainCoordinates>(m, std::move(gens));
  const std::uint32_t p = m.p();
  const std::size_t u = coords->size2();
  if (u == 0) return CohomologySpace(2, std::move(coords), 0, {}, {});
  const std::uint32_t n = static_cast<std::uint32_t>(coords->group().order());
  m.validate();  // expand element actions before the parallel region

  Echelon rel(p, u);
  constexpr std::uint32_t kChunk = 16;
  for (std::uint32_t g0 = 1; g0 < n; g0 += kChunk) {
    const std::uint32_t g1 = std::min(n, g0 + kChunk);
    std::vector<std::vector<FpVector>> batch(g1 - g0);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::uint32_t g = g0; g < g1; ++g) batch[g - g0] = coords->relations2(g);
    for (const auto& rows : batch) rel.insert_batch(rows, parallel);
  }
  const auto z = rel.nullspace();

  Echelon bnd(p, u);
  bnd.insert_batch(coords->boundary_generators2(), parallel);
  auto b = bnd.reduced_basis();
  auto reps = representatives(p, u, b, z);
  return CohomologySpace(2, std::move(coords), z.size(), std::move(b), std::move(reps));
}

FpVector map_cochain(const FpMatrix& t, std::span<const std::uint32_t> c) {
  if (t.cols() == 0) {
    if (!c.empty()) throw Error(ErrorKind::DescriptorMismatch, "map from the zero module");
    return {};
  }
  if (c.size() % t.cols() != 0) {
    throw Error(ErrorKind::DescriptorMismatch, "cochain length is not a multiple of the block");
  }
  const std::size_t blocks = c.size() / t.cols();
  FpVector out;
  out.reserve(blocks * t.rows());
  for (std::size_t b = 0; b < blocks; ++b) {
    const FpVector img = t.apply(c.subspan(b * t.cols(), t.cols()));
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

FpMatrix induced_map(const CohomologySpace& src, const CohomologySpace& dst, const FpMatrix& t) {
  if (src.degree() != dst.degree() ||
      src.coordinates().module().group() != dst.coordinates().module().group() ||
      src.coordinates().gens() != dst.coordinates().gens()) {
    throw Error(ErrorKind::DescriptorMismatch, "cohomology spaces use different coordinates");
  }
  FpMatrix out(src.p(), dst.dim_h(), src.dim_h());
  for (std::size_t i = 0; i < src.dim_h(); ++i) {
    FpVector image;
    if (dst.coordinates().dim() == 0) continue;
    image = src.coordinates().dim() == 0 ? FpVector() : map_cochain(t, src.basis()[i]);
    const FpVector cls = dst.class_of(image);
    for (std::size_t r = 0; r < dst.dim_h(); ++r) out.at(r, i) = cls[r];
  }
  return out;
}

std::optional<FpVector> coboundary_solve2(const CochainCoordinates& coords,
                                          std::span<const std::uint32_t> x) {
  const std::size_t n = coords.group().order();
  const std::size_t d = coords.dim();
  const std::uint32_t p = coords.p();
  if (coords.size2() == 0) return FpVector(n * d, 0);
  const auto gens = coords.boundary_generators2();
  Echelon e(p, coords.size2(), gens.size());
  FpVector tag(gens.size(), 0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    tag[i] = 1;
    e.insert(gens[i], tag);
    tag[i] = 0;
  }
  const auto comb = e.express(x);
  if (!comb) return std::nullopt;
  FpVector f(n * d, 0);
  std::copy(comb->begin(), comb->end(), f.begin() + static_cast<std::ptrdiff_t>(d));
  return f;
}

CoboundarySolution coboundary_solve1(const Cocycle1& xi, const GModule& m,
                                     const std::vector<FpVector>& n_basis) {
  const std::uint32_t p = m.p();
  const std::size_t d = m.dim();
  CochainCoordinates coords(m);
  const Quotient q = quotient(m, n_basis);
  const CochainCoordinates qcoords(q.module, coords.gens());
  const FpVector u = coords.coords1(xi);
  const FpVector qu = map_cochain(q.projection, u);
  if (!qcoords.is_cocycle1(qu)) {
    throw Error(ErrorKind::CocycleInvalid, "xi is not a cocycle modulo the submodule");
  }

  std::vector<FpVector> columns;
  for (std::size_t t = 0; t < d; ++t) {
    FpVector e(d, 0);
    e[t] = 1;
    columns.push_back(coords.coboundary1(e));
  }
  const auto nb = canonical_basis(p, d, n_basis);
  for (std::size_t j = 0; j < coords.gens().size(); ++j) {
    for (const auto& v : nb) {
      FpVector col(coords.size1(), 0);
      std::copy(v.begin(), v.end(), col.begin() + static_cast<std::ptrdiff_t>(j * d));
      columns.push_back(std::move(col));
    }
  }
  CoboundarySolution out;
  if (const auto sol = solve_columns(p, coords.size1(), columns, u)) {
    FpVector sol_m(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(d));
    // The generator equations determine the rest; confirm at every element.
    Echelon en(p, d);
    for (const auto& v : nb) en.insert(v);
    for (std::uint32_t g = 0; g < xi.order; ++g) {
      FpVector r(xi.at(g).begin(), xi.at(g).end());
      axpy_apply(r.data(), m.action(g), sol_m.data(), p, true);
      axpy(r.data(), sol_m.data(), d, p, false);
      if (!en.contains(r)) {
        throw Error(ErrorKind::CocycleInvalid, "xi disagrees with its generator values");
      }
    }
    out.m = std::move(sol_m);
    return out;
  }
  const CohomologySpace hq = h1(q.module, coords.gens());
  out.obstruction = Obstruction{q.module, qu, hq.class_of(qu)};
  return out;
}

// ---------------------------------------------------------------------------
// Restriction and inflation

Cocycle1 restrict(const Cocycle1& c, const Subgroup& h) {
  Cocycle1 out{c.p, h.inclusion.size(), c.dim, {}};
  out.values.reserve(out.order * c.dim);
  for (std::uint32_t a : h.inclusion) {
    const auto v = c.at(a);
    out.values.insert(out.values.end(), v.begin(), v.end());
  }
  return out;
}

Cocycle2 restrict(const Cocycle2& c, const Subgroup& h) {
  Cocycle2 out{c.p, h.inclusion.size(), c.dim, {}};
  out.values.reserve(out.order * out.order * c.dim);
  for (std::uint32_t a : h.inclusion) {
    for (std::uint32_t b : h.inclusion) {
      const auto v = c.at(a, b);
      out.values.insert(out.values.end(), v.begin(), v.end());
    }
  }
  return out;
}

Cocycle1 inflate(const Cocycle1& c, const GroupHom& q) {
  Cocycle1 out{c.p, q.image.size(), c.dim, {}};
  out.values.reserve(out.order * c.dim);
  for (std::uint32_t a : q.image) {
    const auto v = c.at(a);
    out.values.insert(out.values.end(), v.begin(), v.end());
  }
  return out;
}

Cocycle2 inflate(const Cocycle2& c, const GroupHom& q) {
  const std::size_t n = q.image.size();
  if (n * n * c.dim > kMaxCocycleTable) throw Error(ErrorKind::SizeExceeded, "inflated table too large");
  Cocycle2 out{c.p, n, c.dim, {}};
  out.values.reserve(n * n * c.dim);
  for (std::uint32_t a : q.image) {
    for (std::uint32_t b : q.image) {
      const auto v = c.at(a, b);
      out.values.insert(out.values.end(), v.begin(), v.end());
    }
  }
  return out;
}

GModule inflate_module(const GModule& m, const GroupHom& q) {
  return GModule::pullback(m, q.source, q.image);
}

// ---------------------------------------------------------------------------
// Extensions

void validate_extension(const ExtensionDescription& e) {
  const FiniteGroup& g = *e.quotient();
  const GModule& k = e.kernel();
  const std::uint32_t p = k.p();
  const std::size_t d = k.dim();
  const FpVector zero(d, 0);
  if (e.kernel_coords(e.section(0)) != zero) {
    throw Error(ErrorKind::SectionInvalid, "s(e) is not the identity");
  }
  std::vector<std::uint32_t> sample(g.order());
  std::iota(sample.begin(), sample.end(), 0u);
  if (sample.size() > 4096) {
    std::mt19937_64 rng(7);
    std::shuffle(sample.begin(), sample.end(), rng);
    sample.resize(4096);
  }
  for (std::uint32_t a : sample) {
    if (e.project(e.section(a)) != a) {
      throw Error(ErrorKind::SectionInvalid, "section is not a right inverse of the projection");
    }
  }
  std::vector<FpVector> basis;
  for (std::size_t i = 0; i < d; ++i) {
    FpVector v(d, 0);
    v[i] = 1;
    basis.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < d; ++i) {
    const auto a = e.from_kernel(basis[i]);
    if (e.kernel_coords(a) != basis[i] || e.project(a) != 0) {
      throw Error(ErrorKind::SectionInvalid, "kernel embedding and coordinates disagree");
    }
    auto pw = e.identity();
    for (std::uint32_t r = 0; r < p; ++r) pw = e.mul(pw, a);
    if (e.kernel_coords(pw) != zero) {
      throw Error(ErrorKind::KernelNotAbelianP, "kernel element of order other than p");
    }
    for (std::size_t j = 0; j < d; ++j) {
      FpVector s = basis[i];
      s[j] = (s[j] + 1) % p;
      const auto b = e.from_kernel(basis[j]);
      if (e.kernel_coords(e.mul(a, b)) != s || e.kernel_coords(e.mul(b, a)) != s) {
        throw Error(ErrorKind::KernelNotAbelianP, "kernel is not an elementary abelian p-group");
      }
    }
  }
  for (std::size_t j = 0; j < g.num_generators(); ++j) {
    const auto s = e.section(g.generators()[j]);
    const auto s_inv = e.inv(s);
    for (std::size_t i = 0; i < d; ++i) {
      const FpVector conj = e.kernel_coords(e.mul(e.mul(s, e.from_kernel(basis[i])), s_inv));
      if (conj != k.generator_action(j).apply(basis[i])) {
        throw Error(ErrorKind::ActionMismatch, "conjugation in E differs from the module action");
      }
    }
  }
}

FpVector extension_value(const ExtensionDescription& e, std::uint32_t g, std::uint32_t h) {
  const std::uint32_t gh = e.quotient()->mul(g, h);
  return e.kernel_coords(e.mul(e.mul(e.section(g), e.section(h)), e.inv(e.section(gh))));
}

Cocycle2 extension_cocycle(const ExtensionDescription& e) {
  const std::size_t n = e.quotient()->order();
  const std::size_t d = e.kernel().dim();
  if (n * n * d > kMaxCocycleTable) throw Error(ErrorKind::SizeExceeded, "extension table too large");
  Cocycle2 x{e.kernel().p(), n, d, FpVector(n * n * d, 0)};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::uint32_t g = 1; g < n; ++g) {
    for (std::uint32_t h = 1; h < n; ++h) {
      const FpVector v = extension_value(e, g, h);
      std::copy(v.begin(), v.end(), x.at(g, h).begin());
    }
  }
  return x;
}

FpVector extension_coords(const ExtensionDescription& e, const CochainCoordinates& coords) {
  const std::size_t n = coords.group().order();
  const std::size_t d = coords.dim();
  const auto& gens = coords.gens();
  FpVector u(coords.size2(), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::uint32_t g = 1; g < n; ++g) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const FpVector v = extension_value(e, g, gens[j]);
      std::copy(v.begin(), v.end(), u.begin() + static_cast<std::ptrdiff_t>(coords.block2(g, j)));
    }
  }
  (void)d;
  return u;
}

RingMatrix digit_section(const RingMatrix& g, const RingSurjection& pi) {
  const LocalRing& a = *pi.source();
  RingMatrix s(&a, g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.n(); ++j) s.at(i, j) = pi.section(g.at(i, j));
  }
  const RingElement det = s.det();
  if (det != a.one()) {
    const RingElement c = a.inv(det);
    for (std::size_t i = 0; i < g.n(); ++i) s.at(i, 0) = a.mul(s.at(i, 0), c);
  }
  return s;
}

std::shared_ptr<MatrixExtension> MatrixExtension::special_linear(std::size_t n, const RingPtr& a,
                                                                 const RingPtr& b) {
  return preimage(FiniteGroup::closure(sl_full_generators(n, b)), a, ModuleKind::M0);
}

std::shared_ptr<MatrixExtension> MatrixExtension::preimage(const GroupPtr& g, const RingPtr& a,
                                                           ModuleKind kernel) {
  if (kernel != ModuleKind::M && kernel != ModuleKind::M0) {
    throw Error(ErrorKind::DescriptorMismatch, "preimage kernels are M or M0");
  }
  std::shared_ptr<MatrixExtension> e(new MatrixExtension());
  const std::size_t n = g->n();
  e->n_ = n;
  e->pi_ = std::make_shared<RingSurjection>(a, interned(g->ring()));
  if (!e->pi_->maximal_ideal_kills_kernel()) {
    throw Error(ErrorKind::InvalidSurjection, "the maximal ideal must kill the kernel");
  }
  e->quotient_ = g;
  e->kernel_ = build_module(kernel, g);
  const std::size_t d = e->pi_->kernel_dim();
  const std::uint32_t p = a->p();
  const std::size_t full = n * n * d;
  if (kernel == ModuleKind::M) {
    e->to_module_ = FpMatrix::identity(p, full);
    e->from_module_ = FpMatrix::identity(p, full);
  } else {
    const std::size_t dim = full - d;
    e->to_module_ = FpMatrix(p, dim, full);
    e->from_module_ = FpMatrix(p, full, dim);
    for (std::size_t c = 0; c < full; ++c) {
      FpVector v(full, 0);
      v[c] = 1;
      const FpVector r = m0_from_m(v, n, d);
      for (std::size_t i = 0; i < dim; ++i) e->to_module_.at(i, c) = r[i];
    }
    for (std::size_t c = 0; c < dim; ++c) {
      FpVector v(dim, 0);
      v[c] = 1;
      const FpVector r = m_from_m0(v, n, d, p);
      for (std::size_t i = 0; i < full; ++i) e->from_module_.at(i, c) = r[i];
    }
  }
  e->sections_.reserve(g->order());
  for (const auto& h : g->elements()) e->sections_.push_back(digit_section(h, *e->pi_));
  return e;
}

std::shared_ptr<MatrixExtension> MatrixExtension::from_group(const GroupPtr& group,
                                                             const RingPtr& b) {
  std::shared_ptr<MatrixExtension> e(new MatrixExtension());
  const auto& ring = group->ring();
  e->n_ = group->n();
  RingPtr a = interned(ring);
  e->pi_ = std::make_shared<RingSurjection>(a, b);
  if (!e->pi_->maximal_ideal_kills_kernel()) {
    throw Error(ErrorKind::InvalidSurjection, "the maximal ideal must kill the kernel");
  }
  const GroupHom hom = induced_hom(group, *e->pi_);
  e->quotient_ = hom.target;
  const auto kvecs = kernel_module_vectors(*group, *e->pi_);
  const GModule full = build_module(ModuleKind::M, e->quotient_);
  const Submodule sub = submodule(full, kvecs);
  e->kernel_ = sub.module;
  e->from_module_ = sub.inclusion;
  const std::uint32_t p = full.p();
  e->to_module_ = FpMatrix(p, sub.basis.size(), full.dim());
  for (std::size_t k = 0; k < sub.basis.size(); ++k) {
    for (std::size_t c = 0; c < full.dim(); ++c) {
      if (sub.basis[k][c] != 0) {
        e->to_module_.at(k, c) = fp_inverse(sub.basis[k][c], p);
        break;
      }
    }
  }
  if (!(e->to_module_ * e->from_module_).is_identity()) {
    throw Error(ErrorKind::DescriptorMismatch, "kernel basis is not in reduced form");
  }
  e->sections_.assign(e->quotient_->order(), RingMatrix());
  std::vector<char> have(e->quotient_->order(), 0);
  for (std::uint32_t i = 0; i < group->order(); ++i) {
    const std::uint32_t t = hom.image[i];
    if (!have[t]) {
      have[t] = 1;
      e->sections_[t] = group->element(i);
    }
  }
  return e;
}

RingMatrix MatrixExtension::matrix(const Element& a) const {
  RingMatrix m(pi_->source().get(), n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) m.at(i / n_, i % n_) = a[i];
  return m;
}

MatrixExtension::Element MatrixExtension::encode(const RingMatrix& m) const {
  Element a(n_ * n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) a[i] = m.at(i / n_, i % n_);
  return a;
}

MatrixExtension::Element MatrixExtension::identity() const {
  return encode(RingMatrix::identity(pi_->source().get(), n_));
}

MatrixExtension::Element MatrixExtension::mul(const Element& a, const Element& b) const {
  return encode(matrix(a) * matrix(b));
}

MatrixExtension::Element MatrixExtension::inv(const Element& a) const {
  return encode(matrix(a).inverse());
}

std::uint32_t MatrixExtension::project(const Element& a) const {
  return quotient_->index_of(matrix(a).map(*pi_));
}

MatrixExtension::Element MatrixExtension::section(std::uint32_t g) const {
  return encode(sections_.at(g));
}

MatrixExtension::Element MatrixExtension::from_kernel(std::span<const std::uint32_t> v) const {
  const RingMatrix k = kernel_matrix(from_module_.apply(v), n_, *pi_);
  return encode(RingMatrix::identity(pi_->source().get(), n_) + k);
}

FpVector MatrixExtension::kernel_coords(const Element& a) const {
  const RingMatrix v = matrix(a) - RingMatrix::identity(pi_->source().get(), n_);
  if (!v.map(*pi_).is_zero()) throw Error(ErrorKind::SectionInvalid, "element is not in the kernel");
  const FpVector c = kernel_matrix_coords(v, *pi_);
  FpVector r = to_module_.apply(c);
  if (from_module_.apply(r) != c) {
    throw Error(ErrorKind::SectionInvalid, "kernel element outside the kernel module");
  }
  return r;
}

QuotientExtension::QuotientExtension(std::shared_ptr<const ExtensionDescription> base,
                                     const std::vector<FpVector>& z_basis)
    : base_(std::move(base)), q_(wittgroup::quotient(base_->kernel(), z_basis)) {}

QuotientExtension::Element QuotientExtension::from_kernel(std::span<const std::uint32_t> v) const {
  return base_->from_kernel(q_.lift.apply(v));
}

FpVector QuotientExtension::kernel_coords(const Element& a) const {
  return q_.projection.apply(base_->kernel_coords(a));
}

RestrictedExtension::RestrictedExtension(std::shared_ptr<const ExtensionDescription> base,
                                         Subgroup h)
    : base_(std::move(base)), h_(std::move(h)) {
  kernel_ = GModule::pullback(base_->kernel(), h_.group, h_.inclusion);
  for (std::uint32_t i = 0; i < h_.inclusion.size(); ++i) back_.emplace(h_.inclusion[i], i);
}

std::uint32_t RestrictedExtension::project(const Element& a) const {
  const auto it = back_.find(base_->project(a));
  if (it == back_.end()) throw Error(ErrorKind::SectionInvalid, "element outside the preimage");
  return it->second;
}

Cocycle2 transgression(const ExtensionDescription& e, const GModule& target, const FpMatrix& phi,
                       std::optional<std::uint64_t> lift_seed) {
  if (!is_equivariant(e.kernel(), target, phi)) {
    throw Error(ErrorKind::NotEquivariant, "phi is not a module homomorphism");
  }
  const FiniteGroup& g = *e.quotient();
  const std::size_t n = g.order();
  const std::size_t d = target.dim();
  const std::uint32_t p = target.p();
  if (n * n * d > kMaxCocycleTable) throw Error(ErrorKind::SizeExceeded, "transgression table too large");

  std::vector<ExtensionDescription::Element> lifts(n);
  std::mt19937_64 rng(lift_seed.value_or(0));
  for (std::uint32_t a = 0; a < n; ++a) {
    lifts[a] = e.section(a);
    if (lift_seed && a != 0) {
      FpVector k(e.kernel().dim());
      for (auto& c : k) c = static_cast<std::uint32_t>(rng() % p);
      lifts[a] = e.mul(e.from_kernel(k), lifts[a]);
    }
  }
  // pi(a) = phi(a s(proj a)^{-1}).
  auto pi_of = [&](const ExtensionDescription::Element& a) {
    const std::uint32_t ga = e.project(a);
    return phi.apply(e.kernel_coords(e.mul(a, e.inv(e.section(ga)))));
  };
  std::vector<FpVector> pi_lift(n);
  for (std::uint32_t a = 0; a < n; ++a) pi_lift[a] = pi_of(lifts[a]);

  Cocycle2 x{p, n, d, FpVector(n * n * d, 0)};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      FpVector v = pi_lift[a];
      axpy_apply(v.data(), target.action(a), pi_lift[b].data(), p, false);
      const FpVector ab = pi_of(e.mul(lifts[a], lifts[b]));
      axpy(v.data(), ab.data(), d, p, true);
      std::copy(v.begin(), v.end(), x.at(a, b).begin());
    }
  }
  return x;
}

std::optional<FpVector> search_section(const ExtensionDescription& e, bool parallel) {
  const FiniteGroup& g = *e.quotient();
  const GModule& k = e.kernel();
  const std::uint32_t p = k.p();
  const std::size_t d = k.dim();
  const std::size_t n = g.order();
  const auto tree = g.traversal(g.pruned_generators());
  const std::size_t ng = tree.gens.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < ng * d; ++i) {
    total *= p;
    if (total > kMaxSectionSearch) throw Error(ErrorKind::SizeExceeded, "section search too large");
  }
  k.validate();
  // x(h, s_j) for every h and generator.
  std::vector<FpVector> xs(n * ng);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::uint32_t h = 0; h < n; ++h) {
    for (std::size_t j = 0; j < ng; ++j) xs[h * ng + j] = extension_value(e, h, tree.gens[j]);
  }

  // c(h s) = x(h, s) + c(h) + h c(s) along tree edges; other edges must agree.
  auto attempt = [&](std::uint64_t idx, FpVector& c) {
    FpVector cs(ng * d);
    for (auto& v : cs) {
      v = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    std::fill(c.begin(), c.end(), 0);
    FpVector val(d);
    for (std::uint32_t h : tree.order) {
      const FpMatrix& act = k.action(h);
      for (std::size_t j = 0; j < ng; ++j) {
        const auto& xv = xs[h * ng + j];
        for (std::size_t r = 0; r < d; ++r) val[r] = (xv[r] + c[h * d + r]) % p;
        axpy_apply(val.data(), act, cs.data() + j * d, p, false);
        const std::uint32_t t = tree.rmul(h, j);
        if (is_tree_edge(tree, h, j)) {
          std::copy(val.begin(), val.end(), c.begin() + static_cast<std::ptrdiff_t>(t * d));
        } else if (!std::equal(val.begin(), val.end(), c.begin() + static_cast<std::ptrdiff_t>(t * d))) {
          return false;
        }
      }
    }
    return true;
  };

  std::atomic<std::uint64_t> best{total};
#pragma omp parallel if (parallel)
  {
    FpVector c(n * d);
#pragma omp for schedule(dynamic, 64)
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (idx >= best.load(std::memory_order_relaxed)) continue;
      if (attempt(idx, c)) {
        std::uint64_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
    }
  }
  if (best.load() == total) return std::nullopt;
  FpVector c(n * d);
  attempt(best.load(), c);
  return c;
}

SplitVerdict split_check(const ExtensionDescription& e, std::uint64_t seed, bool parallel) {
  validate_extension(e);
  const FiniteGroup& g = *e.quotient();
  const GModule& k = e.kernel();
  const std::uint32_t p = k.p();
  SplitVerdict out;

  out.sylow = sylow(g, p, seed);
  out.sylow_order = out.sylow.group->order();
  const RestrictedExtension res(borrow(e), out.sylow);
  const CochainCoordinates pc(res.kernel());
  const FpVector xp = extension_coords(res, pc);
  if (auto f = coboundary_solve2(pc, xp)) {
    out.sylow_split = true;
    out.sylow_section = negated(std::move(*f), p);
  } else {
    out.certificate = xp;
  }

  if (g.order() <= kMaxH2Order) {
    const CochainCoordinates gc(k);
    if (auto f = coboundary_solve2(gc, extension_coords(e, gc))) {
      out.full_split = true;
      out.section = negated(std::move(*f), p);
    } else {
      out.full_split = false;
    }
  }

  std::uint64_t space = 1;
  const std::size_t vars = g.pruned_generators().size() * k.dim();
  bool feasible = true;
  for (std::size_t i = 0; i < vars && feasible; ++i) {
    space *= p;
    feasible = space <= kMaxSectionSearch;
  }
  if (feasible) {
    out.search_space = space;
    auto c = search_section(e, parallel);
    out.search_split = c.has_value();
    if (c && !out.section) out.section = std::move(c);
  }

  out.split = out.sylow_split;
  out.agree = (!out.full_split || *out.full_split == out.sylow_split) &&
              (!out.search_split || *out.search_split == out.sylow_split);
  return out;
}

InjectivityVerdict h2_map_injectivity(const GModule& m, const std::vector<FpVector>& n_basis,
                                      bool parallel) {
  InjectivityVerdict v;
  const Submodule sub = submodule(m, n_basis);
  const CohomologySpace hm = h2(m, parallel);
  v.dim_m = hm.dim_h();
  if (sub.basis.empty()) return v;
  const CohomologySpace hn = h2(sub.module, parallel, hm.coordinates().gens());
  v.dim_n = hn.dim_h();
  v.rank = induced_map(hn, hm, sub.inclusion).rank();
  v.injective = v.rank == v.dim_n;
  return v;
}

namespace {

// Applies fn to each block of length `in` and concatenates the results.
template <typename Fn>
FpVector map_blocks(std::span<const std::uint32_t> c, std::size_t in, Fn fn) {
  FpVector out;
  for (std::size_t b = 0; in != 0 && b < c.size() / in; ++b) {
    const FpVector r = fn(c.subspan(b * in, in));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

FpMatrix coordinate_matrix(const Submodule& target, const std::vector<FpVector>& vectors) {
  FpMatrix t(target.module.p(), target.basis.size(), vectors.size());
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    const FpVector r = target.coordinates(vectors[c]);
    for (std::size_t i = 0; i < r.size(); ++i) t.at(i, c) = r[i];
  }
  return t;
}

}  // namespace

Descent h2_intersection_descent(const GModule& ambient, const std::vector<FpVector>& m_basis,
                                const std::vector<FpVector>& n_basis,
                                std::span<const std::uint32_t> x,
                                std::span<const std::uint32_t> y) {
  const std::uint32_t p = ambient.p();
  const std::size_t da = ambient.dim();
  const Submodule mm = submodule(ambient, m_basis);
  const Submodule nn = submodule(ambient, n_basis);
  const Submodule ss = submodule(ambient, sum(ambient, m_basis, n_basis));
  Descent out;
  out.meet = submodule(ambient, intersect(ambient, m_basis, n_basis));

  const CochainCoordinates ac(ambient);
  const auto& gens = ac.gens();
  const FpVector xa = map_cochain(mm.inclusion, x);
  const FpVector ya = map_cochain(nn.inclusion, y);
  FpVector diff = xa;
  axpy(diff.data(), ya.data(), diff.size(), p, true);
  const CochainCoordinates sc(ss.module, gens);
  const FpVector diff_s =
      map_blocks(diff, da, [&](std::span<const std::uint32_t> v) { return ss.coordinates(v); });
  const auto fs = coboundary_solve2(sc, diff_s);
  if (!fs) throw Error(ErrorKind::ClassesDiffer, "the classes differ in H^2(M + N)");
  const FpVector fa = map_cochain(ss.inclusion, *fs);

  // f(g) = a - b with a in M, b in N.
  std::vector<FpVector> cols = mm.basis;
  cols.insert(cols.end(), nn.basis.begin(), nn.basis.end());
  FpVector fm(fa.size(), 0);
  FpVector fn(fa.size(), 0);
  for (std::size_t b = 0; b < fa.size() / std::max<std::size_t>(da, 1); ++b) {
    const std::span<const std::uint32_t> v(fa.data() + b * da, da);
    const auto sol = solve_columns(p, da, cols, v);
    if (!sol) throw Error(ErrorKind::ClassesDiffer, "M + N decomposition failed");
    for (std::size_t i = 0; i < mm.basis.size(); ++i) {
      for (std::size_t r = 0; r < da; ++r) {
        fm[b * da + r] = (fm[b * da + r] + (*sol)[i] * mm.basis[i][r]) % p;
      }
    }
    for (std::size_t i = 0; i < nn.basis.size(); ++i) {
      const std::uint32_t c = (*sol)[mm.basis.size() + i];
      for (std::size_t r = 0; r < da; ++r) {
        fn[b * da + r] = (fn[b * da + r] + (p - c) * nn.basis[i][r]) % p;
      }
    }
  }
  FpVector za = xa;
  const FpVector dm = ac.coboundary2(fm);
  axpy(za.data(), dm.data(), za.size(), p, true);
  FpVector zb = ya;
  const FpVector dn = ac.coboundary2(fn);
  axpy(zb.data(), dn.data(), zb.size(), p, true);
  if (za != zb) throw Error(ErrorKind::ClassesDiffer, "lifted cochains disagree");

  for (std::size_t b = 0; b < za.size() / std::max<std::size_t>(da, 1); ++b) {
    const std::span<const std::uint32_t> v(za.data() + b * da, da);
    if (out.meet.inclusion.apply(out.meet.coordinates(v)) != FpVector(v.begin(), v.end())) {
      throw Error(ErrorKind::ClassesDiffer, "descended cocycle leaves M cap N");
    }
  }
  out.z = map_blocks(za, da, [&](std::span<const std::uint32_t> v) { return out.meet.coordinates(v); });

  // Independent check in H^2(M) and H^2(N).
  const CohomologySpace hm = h2(mm.module, true, gens);
  const CohomologySpace hn = h2(nn.module, true, gens);
  const FpVector zm = map_cochain(coordinate_matrix(mm, out.meet.basis), out.z);
  const FpVector zn = map_cochain(coordinate_matrix(nn, out.meet.basis), out.z);
  out.verified = (out.meet.basis.empty() ? hm.class_of(FpVector(x.size(), 0)) : hm.class_of(zm)) ==
                     hm.class_of(x) &&
                 (out.meet.basis.empty() ? hn.class_of(FpVector(y.size(), 0)) : hn.class_of(zn)) ==
                     hn.class_of(y);
  return out;
}

}  // namespace wittgroup
