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


#include "wittgroup/structure_theorem.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "wittgroup/errors.hpp"

namespace wittgroup {

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

RingMatrix kernel_element(const FpVector& m_coords, std::size_t n, const RingSurjection& pi) {
  return RingMatrix::identity(pi.source().get(), n) + kernel_matrix(m_coords, n, pi);
}

// Membership of the SL_n(W_A) generators in u H u^{-1}.
bool certify(const FiniteGroup& h, const RingMatrix& u, const RingSurjection& pi,
             const std::vector<RingMatrix>& targets, std::vector<RingMatrix>* found) {
  if (!u.map(pi).is_identity()) return false;
  const RingMatrix ui = u.inverse();
  std::unordered_set<RingMatrix, RingMatrixHash> conj;
  conj.reserve(h.order());
  for (const auto& a : h.elements()) conj.insert(u * a * ui);
  bool ok = true;
  for (const auto& t : targets) {
    if (conj.count(t)) {
      if (found) found->push_back(t);
    } else {
      ok = false;
    }
  }
  return ok;
}

// Basis of M_0(W_A cap ker pi) in kernel_matrix_coords form.
std::vector<FpVector> claim1_vectors(std::size_t n, const RingSurjection& pi, const FieldPtr& k) {
  const LocalRing& a = *pi.source();
  const std::size_t d = pi.kernel_dim();
  std::vector<FpVector> out;
  for (RingElement w : witt_subring(a, k)) {
    if (w == a.zero() || pi.apply(w) != pi.target()->zero()) continue;
    const auto c = pi.kernel_coords(w);
    auto put = [&](FpVector& v, std::size_t i, std::size_t j, bool negate) {
      for (std::size_t t = 0; t < d; ++t) {
        v[(i * n + j) * d + t] = negate ? (a.p() - c[t]) % a.p() : c[t];
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        FpVector v(n * n * d, 0);
        if (i != j) {
          put(v, i, j, false);
        } else if (i + 1 < n) {
          put(v, i, i, false);
          put(v, n - 1, n - 1, true);
        } else {
          continue;
        }
        out.push_back(std::move(v));
      }
    }
  }
  return canonical_basis(a.p(), n * n * d, out);
}

GroupPtr sl_over(std::size_t n, std::uint32_t p, std::uint32_t m, std::uint32_t d) {
  return FiniteGroup::closure(sl_full_generators(n, LocalRing::galois(p, m, d)));
}

// Reindexes q.target to the element order of g.
GroupHom onto(GroupHom q, const GroupPtr& g) {
  for (auto& t : q.image) t = g->index_of(q.target->element(t));
  q.target = g;
  return q;
}

Cocycle1 lift_to_m(const Cocycle1& xi, std::size_t n, std::size_t d) {
  Cocycle1 out{xi.p, xi.order, n * n * d, {}};
  out.values.reserve(xi.order * out.dim);
  for (std::uint32_t g = 0; g < xi.order; ++g) {
    const FpVector v = m_from_m0(FpVector(xi.at(g).begin(), xi.at(g).end()), n, d, xi.p);
    out.values.insert(out.values.end(), v.begin(), v.end());
  }
  return out;
}

Cocycle1 scaled(Cocycle1 xi, std::uint32_t c) {
  for (auto& v : xi.values) v = static_cast<std::uint32_t>((std::uint64_t{v} * c) % xi.p);
  return xi;
}

FpVector random_vector(std::size_t n, std::uint32_t p, std::mt19937_64& rng) {
  FpVector v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
  return v;
}

}  // namespace

bool hypothesis_gate(std::size_t n, const FiniteField& k) {
  if (k.size() < 4) return false;
  if (n == 2 && k.size() == 5) return false;
  if (n == 3 && k.size() == 4) return false;
  return true;
}

ConjugationCertificate verify_main_theorem(const TheoremInstance& inst) {
  const std::size_t n = inst.n;
  const FieldPtr k = inst.k ? inst.k : inst.b->residue_field();
  const bool gated = hypothesis_gate(n, *k);
  if (!gated && !inst.counterexample_mode) {
    throw Error(ErrorKind::HypothesisViolated, "|k| = " + std::to_string(k->size()) + " with n = " + std::to_string(n));
  }
  const RingSurjection pi(inst.a, inst.b);
  if (!pi.maximal_ideal_kills_kernel()) {
    throw Error(ErrorKind::InvalidSurjection, "the maximal ideal must kill the kernel");
  }
  for (const auto& g : inst.h_generators) {
    if (g.det() != inst.a->one()) throw Error(ErrorKind::HypothesisViolated, "H is not in SL_n(A)");
  }
  ConjugationCertificate cert;
  cert.seed = inst.seed;
  cert.p_divides_n = n % inst.a->p() == 0;

  const GroupPtr h = FiniteGroup::closure(inst.h_generators, inst.cap);
  const GroupPtr g = FiniteGroup::closure(sl_generators(n, inst.b, k));
  cert.h_order = h->order();
  std::vector<char> hit(g->order(), 0);
  for (const auto& a : h->elements()) {
    const auto i = g->find(a.map(pi));
    if (!i) throw Error(ErrorKind::ResidualImageTooSmall, "pi(H) is not inside SL_n(W_B)");
    hit[*i] = 1;
  }
  if (std::count(hit.begin(), hit.end(), 1) != static_cast<std::ptrdiff_t>(g->order())) {
    throw Error(ErrorKind::ResidualImageTooSmall, "pi(H) is a proper subgroup of SL_n(W_B)");
  }

  const auto n_vectors = kernel_module_vectors(*h, pi);
  cert.m0h_dim = n_vectors.size();
  const auto claim = claim1_vectors(n, pi, k);
  cert.claim1_applies = !claim.empty();
  {
    Echelon span(inst.a->p(), n * n * pi.kernel_dim());
    for (const auto& v : n_vectors) span.insert(v);
    for (const auto& v : claim) cert.claim1_holds = cert.claim1_holds && span.contains(v);
  }
  if (!cert.claim1_holds) {
    if (gated) {
      throw Error(ErrorKind::UnexpectedObstruction,
                  "M_0(SL_n(W_A)) is not contained in M_0(H) (dim M_0(H) = " +
                      std::to_string(cert.m0h_dim) + ", |H| = " + std::to_string(h->order()) + ")");
    }
    return cert;
  }

  const std::uint64_t full = g->order() * ipow(inst.a->p(), (n * n - 1) * pi.kernel_dim());
  cert.u = RingMatrix::identity(inst.a.get(), n);
  if (h->order() == full) {
    cert.short_circuit = true;
  } else {
    const auto e = MatrixExtension::preimage(g, inst.a, cert.p_divides_n ? ModuleKind::M : ModuleKind::M0);
    const CoordinateChart chart(e);
    TwistedSubgroup sub{chart.target(), {}};
    sub.elements.reserve(h->order());
    for (const auto& a : h->elements()) {
      sub.elements.push_back(chart.target()->index(chart.forward(e->encode(a))));
    }
    std::sort(sub.elements.begin(), sub.elements.end());
    const Trivialization tr = prop22_trivialize(prop22_analyze(sub));
    if (!tr.m) {
      cert.obstruction = tr.obstruction->class_coords;
      if (gated) throw Error(ErrorKind::UnexpectedObstruction, "xi does not cobound");
      return cert;
    }
    if (!tr.verified) throw Error(ErrorKind::UnexpectedObstruction, "conjugated subgroup mismatch");
    // (m, e) corresponds to I + v; u = (I + v)^{-1} = I - v.
    const RingMatrix v = kernel_matrix(e->to_matrix_coords().apply(*tr.m), n, pi);
    cert.u = RingMatrix::identity(inst.a.get(), n) - v;
  }
  cert.verified = certify(*h, cert.u, pi, sl_generators(n, inst.a, k), &cert.verified_generators);
  if (!cert.verified && gated) {
    throw Error(ErrorKind::UnexpectedObstruction, "certificate membership check failed");
  }
  return cert;
}

bool check_certificate(const TheoremInstance& inst, const ConjugationCertificate& cert) {
  const FieldPtr k = inst.k ? inst.k : inst.b->residue_field();
  const RingSurjection pi(inst.a, inst.b);
  const GroupPtr h = FiniteGroup::closure(inst.h_generators, inst.cap);
  return certify(*h, cert.u, pi, sl_generators(inst.n, inst.a, k), nullptr);
}

TheoremInstance perturbed_instance(std::size_t n, const RingPtr& a, const RingPtr& b,
                                   std::uint64_t seed) {
  TheoremInstance inst;
  inst.n = n;
  inst.a = a;
  inst.b = b;
  inst.seed = seed;
  const RingSurjection pi(a, b);
  const std::size_t d = pi.kernel_dim();
  std::mt19937_64 rng(seed);
  for (const auto& g : sl_generators(n, a, b->residue_field())) {
    const FpVector v = random_vector((n * n - 1) * d, a->p(), rng);
    inst.h_generators.push_back(g * kernel_element(m_from_m0(v, n, d, a->p()), n, pi));
  }
  return inst;
}

TheoremInstance dual_number_instance(const GroupPtr& g, const Cocycle1& xi) {
  const LocalRing& b = g->ring();
  TheoremInstance inst;
  inst.n = g->n();
  inst.a = LocalRing::dual(b.p(), b.d());
  inst.b = LocalRing::galois(b.p(), 1, b.d());
  const RingSurjection pi(inst.a, inst.b);
  for (std::uint32_t s : g->generators()) {
    const FpVector x = m_from_m0(FpVector(xi.at(s).begin(), xi.at(s).end()), inst.n, b.d(), b.p());
    inst.h_generators.push_back(kernel_element(x, inst.n, pi) * digit_section(g->element(s), pi));
  }
  return inst;
}

std::vector<TrialOutcome> theorem_trials(std::size_t n, const RingPtr& a, const RingPtr& b,
                                         std::size_t trials, std::uint64_t seed, bool parallel) {
  std::vector<TrialOutcome> out(trials);
  std::mt19937_64 rng(seed);
  for (auto& o : out) o.seed = rng();
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < trials; ++i) {
    TrialOutcome& o = out[i];
    try {
      const TheoremInstance inst = perturbed_instance(n, a, b, o.seed);
      const ConjugationCertificate c = verify_main_theorem(inst);
      o.passed = c.verified;
      o.h_order = c.h_order;
      o.m0h_dim = c.m0h_dim;
      o.short_circuit = c.short_circuit;
    } catch (const Error& e) {
      o.error = e.what();
    }
  }
  return out;
}

DualTrivializerReport dual_number_trivializer() {
  DualTrivializerReport r;
  const GroupPtr g = sl_over(2, 2, 1, 2);
  const GModule m0 = build_module(ModuleKind::M0, g);
  const auto h = h1(m0);
  r.h1_dim = h.dim_h();
  for (const auto& b : h.basis()) {
    const TheoremInstance inst = dual_number_instance(g, h.coordinates().expand1(b));
    r.certificates.push_back(verify_main_theorem(inst));
    const RingMatrix c = r.certificates.back().u - RingMatrix::identity(inst.a.get(), 2);
    r.trace_nonzero.push_back(c.trace() != inst.a->zero());
  }
  return r;
}

F5Report counterexample_f5(std::uint64_t seed) {
  F5Report r;
  std::mt19937_64 rng(seed);
  const GroupPtr g = sl_over(2, 5, 1, 1);
  const GModule m0 = build_module(ModuleKind::M0, g);
  const GModule mm = build_module(ModuleKind::M, g);
  const auto h = h1(m0);
  r.h1_dim = h.dim_h();
  if (r.h1_dim == 0) return r;
  const Cocycle1 xi = h.coordinates().expand1(h.basis()[0]);

  const auto sol = coboundary_solve1(lift_to_m(xi, 2, 1), mm);
  if (sol.obstruction) {
    r.obstruction = sol.obstruction->class_coords;
    r.obstruction_nonzero = std::any_of(r.obstruction.begin(), r.obstruction.end(),
                                        [](std::uint32_t c) { return c != 0; });
  }
  r.stable = true;
  for (std::uint32_t c = 2; c < 5; ++c) {
    r.stable = r.stable && !coboundary_solve1(lift_to_m(scaled(xi, c), 2, 1), mm).solved();
  }

  // Retraction M -> M_0: solve sum c_i (t_i iota) = id over Hom_G(M, M_0).
  FpMatrix iota(5, 4, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    FpVector e(3, 0);
    e[j] = 1;
    const FpVector col = m_from_m0(e, 2, 1, 5);
    for (std::size_t i = 0; i < 4; ++i) iota.at(i, j) = col[i];
  }
  const auto homs = hom_space(mm, m0);
  std::vector<FpVector> columns;
  for (const auto& t : homs) {
    const FpMatrix c = t * iota;
    FpVector flat;
    for (std::size_t i = 0; i < 3; ++i) flat.insert(flat.end(), c.row(i).begin(), c.row(i).end());
    columns.push_back(flat);
  }
  FpVector id_flat(9, 0);
  for (std::size_t i = 0; i < 3; ++i) id_flat[i * 3 + i] = 1;
  if (const auto c = solve_columns(5, 9, columns, id_flat)) {
    FpMatrix ret(5, 3, 4);
    for (std::size_t i = 0; i < homs.size(); ++i) {
      for (std::size_t rr = 0; rr < 3; ++rr) {
        for (std::size_t cc = 0; cc < 4; ++cc) {
          ret.at(rr, cc) = (ret.at(rr, cc) + (*c)[i] * homs[i].at(rr, cc)) % 5;
        }
      }
    }
    r.retraction_found = is_equivariant(mm, m0, ret) && (ret * iota).is_identity();
    r.retraction = ret;
  }

  TheoremInstance inst = dual_number_instance(g, xi);
  inst.counterexample_mode = true;
  inst.seed = seed;
  r.engine = verify_main_theorem(inst);
  r.h_order = r.engine.h_order;

  const CochainCoordinates& cc = h.coordinates();
  TheoremInstance trivial = dual_number_instance(g, cc.expand1(cc.coboundary1(random_vector(3, 5, rng))));
  trivial.counterexample_mode = true;
  r.coboundary_solved = verify_main_theorem(trivial).verified;

  const GroupPtr g7 = sl_over(2, 7, 1, 1);
  const GModule m7 = build_module(ModuleKind::M0, g7);
  r.f7_h1_dim = h1(m7).dim_h();
  const CochainCoordinates c7(m7);
  const TheoremInstance f7 = dual_number_instance(g7, c7.expand1(c7.coboundary1(random_vector(3, 7, rng))));
  r.f7_solved = verify_main_theorem(f7).verified;
  return r;
}

F4ComplementReport counterexample_f4(std::uint64_t seed) {
  F4ComplementReport r;
  const RingPtr a = LocalRing::galois(2, 2, 2);
  const RingPtr b = LocalRing::galois(2, 1, 2);
  const auto e = MatrixExtension::special_linear(2, a, b);
  const auto s = scalar_basis_m0(*e->quotient());
  const auto q = std::make_shared<QuotientExtension>(e, s);
  const SplitVerdict v = split_check(*q, seed);
  r.v_extension_splits = v.split && v.section.has_value();
  r.target_order = sl_order(2, *a);
  if (!r.v_extension_splits) return r;
  const std::size_t dim = q->kernel().dim();
  for (std::uint32_t g : e->quotient()->generators()) {
    const FpVector c(v.section->begin() + g * dim, v.section->begin() + (g + 1) * dim);
    r.h_generators.push_back(e->matrix(q->mul(q->from_kernel(c), q->section(g))));
  }
  for (const auto& z : s) r.h_generators.push_back(e->matrix(e->from_kernel(z)));
  const GroupPtr h = FiniteGroup::closure(r.h_generators);
  r.h_order = h->order();
  r.image_order = induced_hom(h, e->surjection()).target->order();
  r.m0h_dim = kernel_module_vectors(*h, e->surjection()).size();
  r.claim1_holds = r.m0h_dim == e->kernel().dim();
  TheoremInstance inst;
  inst.n = 2;
  inst.a = a;
  inst.b = b;
  inst.h_generators = r.h_generators;
  inst.seed = seed;
  try {
    verify_main_theorem(inst);
  } catch (const Error& err) {
    r.engine_error = err.what();
  }
  return r;
}

SmallSectionsReport split_sections_small_p(std::uint64_t seed) {
  SmallSectionsReport out;
  auto run = [&](std::uint32_t p) {
    SectionReport r;
    r.p = p;
    const RingPtr a = LocalRing::galois(p, 2, 1);
    const auto e = MatrixExtension::special_linear(2, a, LocalRing::galois(p, 1, 1));
    r.verdict = split_check(*e, seed);
    r.group_order = sl_order(2, *a);
    const auto c = search_section(*e);
    if (!c) return r;
    r.found = true;
    const FiniteGroup& g = *e->quotient();
    const std::size_t dim = e->kernel().dim();
    std::vector<RingMatrix> img;
    img.reserve(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      const FpVector cx(c->begin() + x * dim, c->begin() + (x + 1) * dim);
      img.push_back(e->matrix(e->mul(e->from_kernel(cx), e->section(x))));
    }
    bool hom = true;
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      if (!img[x].map(e->surjection()).operator==(g.element(x))) hom = false;
      for (std::uint32_t y = 0; y < g.order(); ++y) {
        if (!(img[x] * img[y] == img[g.mul(x, y)])) hom = false;
      }
    }
    std::unordered_set<RingMatrix, RingMatrixHash> distinct(img.begin(), img.end());
    r.image_order = distinct.size();
    r.homomorphism_verified = hom;
    for (std::uint32_t s : g.generators()) r.generator_images.push_back(img[s]);
    return r;
  };
  out.p2 = run(2);
  out.p3 = run(3);
  const auto e5 = MatrixExtension::special_linear(2, LocalRing::galois(5, 2, 1), LocalRing::galois(5, 1, 1));
  out.p5 = split_check(*e5, seed);
  return out;
}

std::vector<NonsplitRecord> nonsplit_suite(std::uint64_t seed, bool parallel) {
  std::vector<NonsplitRecord> out;
  for (std::uint32_t m = 1; m <= 2; ++m) {
    const auto e = MatrixExtension::special_linear(2, LocalRing::galois(2, m + 1, 2),
                                                   LocalRing::galois(2, m, 2));
    const std::string tag = "SL_2(GR(" + std::to_string(1u << (m + 1)) + ",2)) -> SL_2(" +
                            (m == 1 ? std::string("F_4") : "GR(" + std::to_string(1u << m) + ",2)") + ")";
    out.push_back({tag + ", kernel M_0", split_check(*e, seed, parallel)});
    const auto q = std::make_shared<QuotientExtension>(e, scalar_basis_m0(*e->quotient()));
    out.push_back({tag + " / Z, kernel V", split_check(*q, seed, parallel)});
  }
  return out;
}

Formula1Verdict formula1_check(std::size_t n, std::uint32_t p, std::uint32_t d, std::uint32_t m,
                               const std::vector<FieldElement>& a, RingElement x) {
  const RingPtr w1 = LocalRing::galois(p, m + 1, d);
  const RingPtr wm = LocalRing::galois(p, m, d);
  const RingSurjection pi(w1, wm);
  if (a.size() != n * n) throw Error(ErrorKind::DescriptorMismatch, "A must have n*n entries");
  FieldElement tr = w1->residue_field()->zero();
  for (std::size_t i = 0; i < n; ++i) tr = tr + a[i * n + i];
  if (!tr.is_zero()) throw Error(ErrorKind::DescriptorMismatch, "A must have trace zero");

  Formula1Verdict v;
  const std::uint64_t q = ipow(p, m);
  if ((q * (q - 1)) % 2 != 0 || (q * (q - 1) * (2 * q - 1)) % 6 != 0) {
    throw Error(ErrorKind::NonIntegralCoefficient, "alpha or beta is not an integer");
  }
  v.alpha = q * (q - 1) / 2;
  v.beta = q * (q - 1) * (2 * q - 1) / 6;

  const LocalRing* r = w1.get();
  const RingMatrix id = RingMatrix::identity(r, n);
  RingMatrix lift(r, n);
  for (std::size_t i = 0; i < n * n; ++i) lift.at(i / n, i % n) = w1->teichmuller(a[i]);
  const RingMatrix nil = RingMatrix::elementary(r, n, 0, 1, pi.section(x)) - id;
  const RingElement pm = w1->from_int(static_cast<std::int64_t>(q));

  const RingMatrix step = (id + lift.scaled(pm)) * (id + nil);
  v.lhs = id;
  for (std::uint64_t i = 0; i < q; ++i) v.lhs = v.lhs * step;

  const RingMatrix comm = nil * lift - lift * nil;
  const RingMatrix nan = nil * lift * nil;
  v.rhs = (id + comm.scaled(w1->from_int(static_cast<std::int64_t>(v.alpha * q))) -
           nan.scaled(w1->from_int(static_cast<std::int64_t>(v.beta * q)))) *
          (id + nil.scaled(pm));
  v.holds = v.lhs == v.rhs;
  return v;
}

Formula1Batch formula1_trials(std::size_t n, std::uint32_t p, std::uint32_t d, std::uint32_t m,
                              std::size_t trials, std::uint64_t seed) {
  Formula1Batch b{n, p, d, m, trials, 0};
  std::mt19937_64 rng(seed);
  const FieldPtr k = FiniteField::create(p, d);
  const RingPtr wm = LocalRing::galois(p, m, d);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<FieldElement> a;
    FieldElement diag = k->zero();
    for (std::size_t i = 0; i < n * n; ++i) {
      a.push_back(k->from_code(static_cast<std::uint32_t>(rng() % k->size())));
      if (i % (n + 1) == 0 && i + 1 < n * n) diag = diag + a.back();
    }
    a.back() = -diag;
    const auto x = static_cast<RingElement>(rng() % wm->size());
    if (formula1_check(n, p, d, m, a, x).holds) ++b.passed;
  }
  return b;
}

H1W2Report h1_w2_suite() {
  H1W2Report r;
  const GroupPtr small = sl_over(2, 2, 1, 2);
  const GroupPtr big = sl_over(2, 2, 2, 2);
  const RingSurjection pi(LocalRing::galois(2, 2, 2), LocalRing::galois(2, 1, 2));
  const GroupHom q = onto(induced_hom(big, pi), small);

  const GModule m0 = build_module(ModuleKind::M0, small);
  const auto h_small = h1(m0);
  r.h1_m0_w1 = h_small.dim_h();
  const GModule m0_big = inflate_module(m0, q);
  r.h1_m0_w2 = h1(m0_big).dim_h();
  r.h1_trivial_w2 = h1(trivial_module(big, 2, 2)).dim_h();
  const GModule v = build_module(ModuleKind::V, small);
  r.h1_v_w1 = h1(v).dim_h();
  r.h1_v_w2 = h1(inflate_module(v, q)).dim_h();
  r.inflation_noncobounding = !h_small.basis().empty();
  for (const auto& b : h_small.basis()) {
    const Cocycle1 inf = inflate(h_small.coordinates().expand1(b), q);
    r.inflation_noncobounding = r.inflation_noncobounding && !coboundary_solve1(inf, m0_big).solved();
  }
  return r;
}

}  // namespace wittgroup
