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


#include "wittgroup/extensions.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "wittgroup/errors.hpp"

namespace wittgroup {

namespace {

using Element = ExtensionDescription::Element;

FpVector vector_part(const Element& a) { return FpVector(a.begin(), a.end() - 1); }

bool in_span(const Echelon& e, std::span<const std::uint32_t> v) { return e.contains(v); }

Echelon span_of(std::uint32_t p, std::size_t dim, const std::vector<FpVector>& basis) {
  Echelon e(p, dim);
  for (const auto& b : basis) e.insert(b);
  return e;
}

}  // namespace

// ------------------------------------------------------------ TwistedProduct

Element TwistedProduct::make(std::span<const std::uint32_t> v, std::uint32_t g) const {
  Element a(v.begin(), v.end());
  a.push_back(g);
  return a;
}

Element TwistedProduct::identity() const { return Element(module_.dim() + 1, 0); }

Element TwistedProduct::mul(const Element& a, const Element& b) const {
  const std::uint32_t p = module_.p();
  const std::uint32_t g1 = a.back();
  const std::uint32_t g2 = b.back();
  const std::size_t d = module_.dim();
  Element r = module_.act(g1, std::span<const std::uint32_t>(b.data(), d));
  const auto x = x_.at(g1, g2);
  for (std::size_t i = 0; i < d; ++i) r[i] = (r[i] + a[i] + x[i]) % p;
  r.push_back(module_.group()->mul(g1, g2));
  return r;
}

Element TwistedProduct::inv(const Element& a) const {
  const std::uint32_t p = module_.p();
  const std::uint32_t g = a.back();
  const std::uint32_t gi = module_.group()->inv(g);
  const std::size_t d = module_.dim();
  const auto x = x_.at(g, gi);
  FpVector s(d);
  for (std::size_t i = 0; i < d; ++i) s[i] = (a[i] + x[i]) % p;
  Element r = module_.act(gi, s);
  for (auto& c : r) c = (p - c) % p;
  r.push_back(gi);
  return r;
}

Element TwistedProduct::section(std::uint32_t g) const {
  Element r(module_.dim() + 1, 0);
  r.back() = g;
  return r;
}

Element TwistedProduct::from_kernel(std::span<const std::uint32_t> v) const { return make(v, 0); }

FpVector TwistedProduct::kernel_coords(const Element& a) const {
  if (a.back() != 0) throw Error(ErrorKind::SectionInvalid, "element is not in the kernel");
  return vector_part(a);
}

std::uint64_t TwistedProduct::element_order(const Element& a) const {
  const std::uint64_t k = module_.group()->element_order(a.back());
  Element b = identity();
  for (std::uint64_t i = 0; i < k; ++i) b = mul(b, a);
  const bool trivial = std::all_of(b.begin(), b.end() - 1, [](std::uint32_t c) { return c == 0; });
  return trivial ? k : k * module_.p();
}

std::uint64_t TwistedProduct::index(const Element& a) const {
  std::uint64_t code = 0;
  for (std::size_t i = module_.dim(); i-- > 0;) code = code * module_.p() + a[i];
  return code + module_.cardinality() * a.back();
}

Element TwistedProduct::element(std::uint64_t i) const {
  const std::uint64_t card = module_.cardinality();
  Element a(module_.dim() + 1);
  a.back() = static_cast<std::uint32_t>(i / card);
  std::uint64_t code = i % card;
  for (std::size_t k = 0; k < module_.dim(); ++k) {
    a[k] = static_cast<std::uint32_t>(code % module_.p());
    code /= module_.p();
  }
  return a;
}

std::shared_ptr<TwistedProduct> build_twisted(const GModule& m, const Cocycle2& x) {
  const std::size_t order = m.group()->order();
  if (x.p != m.p() || x.order != order || x.dim != m.dim() ||
      x.values.size() != order * order * m.dim()) {
    throw Error(ErrorKind::CocycleInvalid, "cocycle shape does not match the module");
  }
  if (m.dim() >= 63 || m.cardinality() >= (std::uint64_t{1} << 62) / order) {
    throw Error(ErrorKind::SizeExceeded, "twisted product too large to index");
  }
  for (std::uint32_t g = 0; g < order; ++g) {
    for (std::uint32_t c : x.at(g, 0)) {
      if (c != 0) throw Error(ErrorKind::CocycleInvalid, "x(g, e) != 0");
    }
    for (std::uint32_t c : x.at(0, g)) {
      if (c != 0) throw Error(ErrorKind::CocycleInvalid, "x(e, g) != 0");
    }
  }
  // A normalized cocycle is determined by its generator values; the table
  // must be the expansion of its own coordinates.
  const CochainCoordinates cc(m);
  const FpVector u = cc.coords2(x);
  if (!cc.is_cocycle2(u) || cc.expand2(u).values != x.values) {
    throw Error(ErrorKind::CocycleInvalid, "x violates the cocycle law");
  }
  std::shared_ptr<TwistedProduct> t(new TwistedProduct());
  t->module_ = m;
  t->x_ = x;
  return t;
}

// ------------------------------------------------------------ subgroups

bool TwistedSubgroup::contains(std::uint64_t i) const {
  return std::binary_search(elements.begin(), elements.end(), i);
}

TwistedSubgroup twisted_closure(std::shared_ptr<const TwistedProduct> t,
                                const std::vector<Element>& gens, std::size_t cap) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<Element> frontier{t->identity()};
  seen.insert(t->index(frontier[0]));
  std::vector<std::uint64_t> out{t->index(frontier[0])};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& a : frontier) {
      for (const auto& s : gens) {
        Element b = t->mul(a, s);
        const std::uint64_t i = t->index(b);
        if (seen.insert(i).second) {
          out.push_back(i);
          if (out.size() > cap) throw Error(ErrorKind::CapExceeded, "twisted closure");
          next.push_back(std::move(b));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return {std::move(t), std::move(out)};
}

TwistedSubgroup twisted_sub_product(std::shared_ptr<const TwistedProduct> t,
                                    const std::vector<FpVector>& n_basis) {
  const GModule& m = t->kernel();
  const std::uint32_t p = m.p();
  const auto basis = canonical_basis(p, m.dim(), n_basis);
  std::vector<FpVector> vectors{FpVector(m.dim(), 0)};
  for (const auto& b : basis) {
    const std::size_t have = vectors.size();
    for (std::uint32_t c = 1; c < p; ++c) {
      for (std::size_t i = 0; i < have; ++i) {
        FpVector v = vectors[i];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = (v[k] + c * b[k]) % p;
        vectors.push_back(std::move(v));
      }
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(vectors.size() * m.group()->order());
  for (std::uint32_t g = 0; g < m.group()->order(); ++g) {
    for (const auto& v : vectors) out.push_back(t->index(t->make(v, g)));
  }
  std::sort(out.begin(), out.end());
  return {std::move(t), std::move(out)};
}

TwistedSubgroup conjugate(const TwistedSubgroup& h, const Element& c) {
  const TwistedProduct& t = *h.ambient;
  const Element ci = t.inv(c);
  std::vector<std::uint64_t> out;
  out.reserve(h.elements.size());
  for (std::uint64_t i : h.elements) out.push_back(t.index(t.mul(t.mul(ci, t.element(i)), c)));
  std::sort(out.begin(), out.end());
  return {h.ambient, std::move(out)};
}

// ------------------------------------------------------------ chart

CoordinateChart::CoordinateChart(std::shared_ptr<const ExtensionDescription> source)
    : source_(std::move(source)),
      target_(build_twisted(source_->kernel(), extension_cocycle(*source_))) {}

Element CoordinateChart::forward(const Element& a) const {
  const std::uint32_t g = source_->project(a);
  const FpVector k = source_->kernel_coords(source_->mul(a, source_->inv(source_->section(g))));
  return target_->make(k, g);
}

Element CoordinateChart::backward(const Element& t) const {
  return source_->mul(source_->from_kernel(vector_part(t)), source_->section(t.back()));
}

CoordinateChart::Check CoordinateChart::verify(std::size_t pairs, std::uint64_t seed,
                                               std::size_t exhaustive_cap) const {
  Check c;
  std::mt19937_64 rng(seed);
  const std::uint64_t order = target_->order();
  auto random_element = [&] { return target_->element(rng() % order); };
  for (std::size_t i = 0; i < pairs; ++i) {
    const Element t1 = random_element();
    const Element t2 = random_element();
    const Element a = source_->mul(backward(t1), backward(t2));
    if (forward(a) != target_->mul(t1, t2)) c.multiplicative = false;
    if (backward(forward(a)) != a) c.bijective = false;
    ++c.pairs;
    ++c.round_trips;
  }
  if (order <= exhaustive_cap) {
    for (std::uint64_t i = 0; i < order; ++i) {
      const Element t = target_->element(i);
      if (forward(backward(t)) != t) c.bijective = false;
      ++c.round_trips;
    }
  }
  return c;
}

ConjugationCheck chart_conjugation_action(const ExtensionDescription& t) {
  ConjugationCheck out;
  const GModule& m = t.kernel();
  const std::size_t d = m.dim();
  std::vector<std::uint32_t> gs{0};
  for (std::uint32_t g : m.group()->generators()) gs.push_back(g);
  std::vector<FpVector> us{FpVector(d, 0)};
  for (std::size_t i = 0; i < d; ++i) {
    FpVector v(d, 0);
    v[i] = 1;
    us.push_back(v);
  }
  for (std::uint32_t g : gs) {
    for (const auto& u : us) {
      const Element c = t.mul(t.from_kernel(u), t.section(g));
      const Element ci = t.inv(c);
      for (std::size_t i = 1; i < us.size(); ++i) {
        const Element conj = t.mul(t.mul(c, t.from_kernel(us[i])), ci);
        if (t.project(conj) != 0 || t.kernel_coords(conj) != m.act(g, us[i])) {
          throw Error(ErrorKind::ActionMismatch,
                      "conjugation by (u, g) does not act as g on the kernel");
        }
        ++out.checked;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ subgroups over a chart

Prop22Analysis prop22_analyze(const TwistedSubgroup& h,
                              const std::optional<std::vector<FpVector>>& expected_n) {
  const TwistedProduct& t = *h.ambient;
  const GModule& m = t.kernel();
  const FiniteGroup& g = *m.group();
  const std::uint32_t p = m.p();
  const std::size_t d = m.dim();

  std::vector<std::optional<FpVector>> pre(g.order());
  Echelon kernel(p, d);
  for (std::uint64_t i : h.elements) {
    const Element a = t.element(i);
    if (!pre[a.back()]) pre[a.back()] = vector_part(a);
    if (a.back() == 0) kernel.insert(vector_part(a));
  }
  for (const auto& v : pre) {
    if (!v) throw Error(ErrorKind::NotSurjective, "H does not map onto G");
  }
  Prop22Analysis out;
  out.h = h;
  out.n_basis = kernel.reduced_basis();
  std::uint64_t kernel_size = 1;
  for (std::size_t i = 0; i < out.n_basis.size(); ++i) kernel_size *= p;
  if (kernel_size * g.order() != h.order()) {
    throw Error(ErrorKind::NotClosed, "|H| is not |N| |G|");
  }
  if (expected_n && canonical_basis(p, d, *expected_n) != out.n_basis) {
    throw Error(ErrorKind::KernelMismatch, "kernel of H differs from the expected N");
  }
  const Echelon n_span = span_of(p, d, out.n_basis);
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    for (std::uint32_t b = 0; b < g.order(); ++b) {
      if (!in_span(n_span, t.cocycle().at(a, b))) {
        throw Error(ErrorKind::KernelMismatch, "x does not take values in N");
      }
    }
  }
  out.xi = Cocycle1{p, g.order(), d, {}};
  out.xi.values.reserve(g.order() * d);
  for (const auto& v : pre) out.xi.values.insert(out.xi.values.end(), v->begin(), v->end());
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    for (std::size_t j = 0; j < g.num_generators(); ++j) {
      const std::uint32_t s = g.generators()[j];
      FpVector r = m.act(a, out.xi.at(s));
      const auto lhs = out.xi.at(g.rmul(a, j));
      const auto xa = out.xi.at(a);
      for (std::size_t k = 0; k < d; ++k) r[k] = (lhs[k] + 2 * p - r[k] - xa[k]) % p;
      if (!in_span(n_span, r)) throw Error(ErrorKind::CocycleInvalid, "xi mod N");
    }
  }
  return out;
}

Trivialization prop22_trivialize(const Prop22Analysis& a) {
  Trivialization out;
  const TwistedProduct& t = *a.h.ambient;
  const GModule& m = t.kernel();
  CoboundarySolution sol = coboundary_solve1(a.xi, m, a.n_basis);
  if (!sol.solved()) {
    out.obstruction = std::move(sol.obstruction);
    return out;
  }
  // xi(g) = g m' - m' mod N; conjugating by (-m', e) removes it.
  FpVector mm = *sol.m;
  for (auto& c : mm) c = (m.p() - c) % m.p();
  const TwistedSubgroup conj = conjugate(a.h, t.make(mm, 0));
  out.verified = conj.elements == twisted_sub_product(a.h.ambient, a.n_basis).elements;
  out.m = std::move(mm);
  return out;
}

}  // namespace wittgroup
