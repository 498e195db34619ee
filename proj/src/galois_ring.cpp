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

#include "wittgroup/galois_ring.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "wittgroup/errors.hpp"

namespace wittgroup {

namespace {

constexpr std::uint32_t kTableCap = 1024;

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

LocalRing::LocalRing(RingKind kind, std::uint32_t p, std::uint32_t m, std::uint32_t d)
    : kind_(kind), p_(p), m_(m), d_(d) {
  field_ = FiniteField::create(p, d);
  if (kind == RingKind::GaloisRing) {
    if (m < 1) throw Error(ErrorKind::UnsupportedSize, "m must be positive");
    const std::uint64_t q = ipow(p, m);
    const std::uint64_t size = ipow(q, d);
    if (size > kMaxRingSize) {
      throw Error(ErrorKind::UnsupportedSize,
                  "GR(" + std::to_string(p) + "^" + std::to_string(m) + "," +
                      std::to_string(d) + ") exceeds 2^20 elements");
    }
    q_ = static_cast<std::uint32_t>(q);
    size_ = static_cast<std::uint32_t>(size);
    for (std::uint32_t c : field_->modulus()) modulus_.push_back(c);
  } else {
    q_ = p;
    const std::uint64_t size = ipow(p, 2 * d);
    if (size > kMaxRingSize) {
      throw Error(ErrorKind::UnsupportedSize, "dual number ring too large");
    }
    size_ = static_cast<std::uint32_t>(size);
  }
  if (size_ <= kTableCap) {
    add_table_.resize(std::size_t{size_} * size_);
    mul_table_.resize(std::size_t{size_} * size_);
    for (RingElement a = 0; a < size_; ++a) {
      for (RingElement b = 0; b < size_; ++b) {
        add_table_[std::size_t{a} * size_ + b] = add_slow(a, b);
        mul_table_[std::size_t{a} * size_ + b] = mul_slow(a, b);
      }
    }
  }
}

RingPtr LocalRing::galois(std::uint32_t p, std::uint32_t m, std::uint32_t d) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, RingPtr> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(p, m, d);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  auto ring = std::make_shared<const LocalRing>(RingKind::GaloisRing, p, m, d);
  registry.emplace(key, ring);
  return ring;
}

RingPtr LocalRing::dual(std::uint32_t p, std::uint32_t d) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, RingPtr> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(p, d);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  auto ring = std::make_shared<const LocalRing>(RingKind::DualNumbers, p, 1, d);
  registry.emplace(key, ring);
  return ring;
}

std::string LocalRing::name() const {
  const std::string k = "F_" + std::to_string(field_->size());
  if (kind_ == RingKind::DualNumbers) return k + "[eps]";
  if (m_ == 1) return k;
  if (d_ == 1) return "Z/" + std::to_string(q_);
  return "GR(" + std::to_string(q_) + "," + std::to_string(d_) + ")";
}

std::string LocalRing::spec() const {
  if (kind_ == RingKind::DualNumbers) {
    return "dual:" + std::to_string(p_) + "," + std::to_string(d_);
  }
  return "gr:" + std::to_string(p_) + "," + std::to_string(m_) + "," +
         std::to_string(d_);
}

LocalRing::Digits LocalRing::decode(RingElement a) const {
  Digits out{};
  const std::uint32_t n = kind_ == RingKind::GaloisRing ? d_ : 2 * d_;
  for (std::uint32_t i = 0; i < n; ++i) {
    out[i] = a % q_;
    a /= q_;
  }
  return out;
}

RingElement LocalRing::encode(const Digits& digits) const {
  const std::uint32_t n = kind_ == RingKind::GaloisRing ? d_ : 2 * d_;
  std::uint64_t code = 0;
  for (std::uint32_t i = n; i-- > 0;) code = code * q_ + digits[i];
  return static_cast<RingElement>(code);
}

RingElement LocalRing::from_int(std::int64_t value) const {
  Digits digits{};
  const auto q = static_cast<std::int64_t>(q_);
  digits[0] = static_cast<std::uint32_t>(((value % q) + q) % q);
  return encode(digits);
}

RingElement LocalRing::add_slow(RingElement a, RingElement b) const {
  Digits x = decode(a);
  const Digits y = decode(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % q_;
  return encode(x);
}

RingElement LocalRing::mul_slow(RingElement a, RingElement b) const {
  const Digits x = decode(a);
  const Digits y = decode(b);
  if (kind_ == RingKind::DualNumbers) {
    const std::uint32_t fsize = field_->size();
    const FieldElement a0 = field_->from_code(a % fsize);
    const FieldElement a1 = field_->from_code(a / fsize);
    const FieldElement b0 = field_->from_code(b % fsize);
    const FieldElement b1 = field_->from_code(b / fsize);
    const FieldElement c0 = a0 * b0;
    const FieldElement c1 = a0 * b1 + a1 * b0;
    return c0.code() + fsize * c1.code();
  }
  std::array<std::uint64_t, 2 * kMaxFieldDegree> prod{};
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < d_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % q_;
    }
  }
  for (std::uint32_t k = 2 * d_ - 1; k-- > d_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < d_; ++i) {
      prod[k - d_ + i] = (prod[k - d_ + i] + (q_ - c) * modulus_[i]) % q_;
    }
  }
  Digits out{};
  for (std::uint32_t i = 0; i < d_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return encode(out);
}

RingElement LocalRing::add(RingElement a, RingElement b) const {
  if (!add_table_.empty()) return add_table_[std::size_t{a} * size_ + b];
  return add_slow(a, b);
}

RingElement LocalRing::neg(RingElement a) const {
  Digits x = decode(a);
  for (auto& c : x) c = (q_ - c) % q_;
  return encode(x);
}

RingElement LocalRing::sub(RingElement a, RingElement b) const { return add(a, neg(b)); }

RingElement LocalRing::mul(RingElement a, RingElement b) const {
  if (!mul_table_.empty()) return mul_table_[std::size_t{a} * size_ + b];
  return mul_slow(a, b);
}

RingElement LocalRing::pow(RingElement a, std::uint64_t e) const {
  RingElement result = one();
  RingElement base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool LocalRing::is_unit(RingElement a) const { return !residue(a).is_zero(); }

RingElement LocalRing::inv(RingElement a) const {
  const FieldElement r = residue(a);
  if (r.is_zero()) throw Error(ErrorKind::DivisionByZero, "non-unit in " + name());
  RingElement y = naive_lift(r.inverse());
  // Newton iteration y <- y (2 - a y) doubles the p-adic precision.
  const RingElement two = from_int(2);
  for (std::uint32_t precision = 1; precision < nilpotency(); precision *= 2) {
    y = mul(y, sub(two, mul(a, y)));
  }
  return y;
}

std::vector<std::uint32_t> LocalRing::digits(RingElement a) const {
  const Digits x = decode(a);
  const std::uint32_t n = kind_ == RingKind::GaloisRing ? d_ : 2 * d_;
  return {x.begin(), x.begin() + n};
}

RingElement LocalRing::from_digits(std::span<const std::uint32_t> digits) const {
  const std::uint32_t n = kind_ == RingKind::GaloisRing ? d_ : 2 * d_;
  if (digits.size() != n) {
    throw Error(ErrorKind::DescriptorMismatch, "wrong digit count for " + name());
  }
  Digits x{};
  for (std::uint32_t i = 0; i < n; ++i) x[i] = digits[i] % q_;
  return encode(x);
}

FieldElement LocalRing::residue(RingElement a) const {
  const Digits x = decode(a);
  std::vector<std::uint32_t> c(d_);
  for (std::uint32_t i = 0; i < d_; ++i) c[i] = x[i] % p_;
  return field_->from_coeffs(c);
}

RingElement LocalRing::naive_lift(const FieldElement& a) const {
  if (a.field_ptr() != field_.get()) {
    throw Error(ErrorKind::DescriptorMismatch, "element not in residue field of " + name());
  }
  Digits x{};
  const auto c = a.coeffs();
  for (std::uint32_t i = 0; i < d_; ++i) x[i] = c[i];
  return encode(x);
}

RingElement LocalRing::teichmuller(const FieldElement& a) const {
  RingElement y = naive_lift(a);
  if (kind_ == RingKind::DualNumbers) return y;
  // Each application of y -> y^{p^d} gains one p-adic digit.
  const std::uint64_t q = field_->size();
  for (std::uint32_t i = 1; i < m_; ++i) y = pow(y, q);
  return y;
}

std::vector<FieldElement> LocalRing::teichmuller_digits(RingElement x) const {
  if (kind_ != RingKind::GaloisRing) {
    throw Error(ErrorKind::DescriptorMismatch, "Teichmuller digits need a Galois ring");
  }
  std::vector<FieldElement> out;
  out.reserve(m_);
  RingElement rest = x;
  std::uint64_t pi = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const Digits r = decode(rest);
    std::vector<std::uint32_t> c(d_);
    for (std::uint32_t j = 0; j < d_; ++j) c[j] = static_cast<std::uint32_t>((r[j] / pi) % p_);
    const FieldElement a = field_->from_coeffs(c);
    out.push_back(a);
    rest = sub(rest, mul(teichmuller(a), from_int(static_cast<std::int64_t>(pi))));
    pi *= p_;
  }
  return out;
}

RingElement LocalRing::from_teichmuller_digits(std::span<const FieldElement> digits) const {
  RingElement x = zero();
  std::uint64_t pi = 1;
  for (std::size_t i = 0; i < digits.size() && i < m_; ++i) {
    x = add(x, mul(teichmuller(digits[i]), from_int(static_cast<std::int64_t>(pi))));
    pi *= p_;
  }
  return x;
}

std::vector<RingElement> LocalRing::maximal_ideal_generators() const {
  if (kind_ == RingKind::DualNumbers) return {eps_times(field_->one())};
  if (m_ == 1) return {};
  return {from_int(p_)};
}

std::vector<RingElement> LocalRing::elements() const {
  std::vector<RingElement> out(size_);
  std::iota(out.begin(), out.end(), RingElement{0});
  return out;
}

RingElement LocalRing::eps_times(const FieldElement& t) const {
  if (kind_ != RingKind::DualNumbers) {
    throw Error(ErrorKind::DescriptorMismatch, name() + " has no eps");
  }
  return field_->size() * t.code();
}

RingSurjection::RingSurjection(RingPtr source, RingPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  const LocalRing& a = *source_;
  const LocalRing& b = *target_;
  if (source_ == target_) {
    kills_kernel_ = true;
    kernel_ = {0};
    return;
  }
  if (a.p() != b.p() || a.d() != b.d() || b.kind() != RingKind::GaloisRing) {
    throw Error(ErrorKind::InvalidSurjection, a.name() + " -> " + b.name());
  }
  if (a.kind() == RingKind::GaloisRing) {
    if (b.m() > a.m()) {
      throw Error(ErrorKind::InvalidSurjection, a.name() + " -> " + b.name());
    }
    kappa_ = a.from_int(static_cast<std::int64_t>(ipow(a.p(), b.m())));
  } else {
    if (b.m() != 1) throw Error(ErrorKind::InvalidSurjection, a.name() + " -> " + b.name());
    kappa_ = a.eps_times(a.residue_field()->one());
  }
  for (RingElement x = 0; x < a.size(); ++x) {
    if (apply(x) == 0) kernel_.push_back(x);
  }
  kills_kernel_ = true;
  for (RingElement g : a.maximal_ideal_generators()) {
    for (RingElement k : kernel_) {
      if (a.mul(g, k) != 0) kills_kernel_ = false;
    }
  }
}

RingElement RingSurjection::apply(RingElement x) const {
  if (source_ == target_) return x;
  const LocalRing& a = *source_;
  const LocalRing& b = *target_;
  std::vector<std::uint32_t> digits = a.digits(x);
  digits.resize(b.d());
  return b.from_digits(digits);
}

RingElement RingSurjection::section(RingElement y) const {
  if (source_ == target_) return y;
  const LocalRing& a = *source_;
  const LocalRing& b = *target_;
  if (a.kind() == RingKind::DualNumbers) return y;
  const std::vector<FieldElement> digits = b.teichmuller_digits(y);
  return a.from_teichmuller_digits(digits);
}

std::size_t RingSurjection::kernel_dim() const {
  if (kappa_ == 0) return 0;
  return source_->d();
}

std::vector<std::uint32_t> RingSurjection::kernel_coords(RingElement k) const {
  if (!kills_kernel_) {
    throw Error(ErrorKind::InvalidSurjection, "kernel is not killed by the maximal ideal");
  }
  if (kappa_ == 0) return {};
  const LocalRing& a = *source_;
  if (apply(k) != 0) throw Error(ErrorKind::KernelMismatch, "element not in kernel");
  const std::vector<std::uint32_t> digits = a.digits(k);
  std::vector<std::uint32_t> out(a.d());
  if (a.kind() == RingKind::DualNumbers) {
    for (std::uint32_t i = 0; i < a.d(); ++i) out[i] = digits[a.d() + i];
  } else {
    const auto scale = static_cast<std::uint32_t>(ipow(a.p(), target_->m()));
    for (std::uint32_t i = 0; i < a.d(); ++i) out[i] = (digits[i] / scale) % a.p();
  }
  return out;
}

RingElement RingSurjection::kernel_element(std::span<const std::uint32_t> coords) const {
  if (kappa_ == 0) return 0;
  const LocalRing& a = *source_;
  const FieldElement t = a.residue_field()->from_coeffs(
      std::vector<std::uint32_t>(coords.begin(), coords.end()));
  return a.mul(kappa_, a.naive_lift(t));
}

bool RingSurjection::verify(std::size_t pair_cap) const {
  const LocalRing& a = *source_;
  const LocalRing& b = *target_;
  std::vector<RingElement> sample;
  if (a.size() <= pair_cap) {
    sample = a.elements();
  } else {
    for (RingElement x = 0; x < a.size(); x += a.size() / pair_cap + 1) sample.push_back(x);
  }
  for (RingElement x : sample) {
    for (RingElement y : sample) {
      if (apply(a.add(x, y)) != b.add(apply(x), apply(y))) return false;
      if (apply(a.mul(x, y)) != b.mul(apply(x), apply(y))) return false;
    }
  }
  if (apply(a.one()) != b.one()) return false;
  for (RingElement y = 0; y < b.size(); ++y) {
    if (apply(section(y)) != y) return false;
  }
  return true;
}

SubfieldEmbedding::SubfieldEmbedding(FieldPtr small, FieldPtr large)
    : small_(std::move(small)), large_(std::move(large)) {
  if (small_->p() != large_->p() || large_->d() % small_->d() != 0) {
    throw Error(ErrorKind::NoEmbedding,
                "F_" + std::to_string(small_->size()) + " does not embed in F_" +
                    std::to_string(large_->size()));
  }
  const std::uint32_t n_small = small_->size() - 1;
  const std::uint32_t base = (large_->size() - 1) / n_small;
  const FieldElement gamma = small_->generator();
  const FieldElement gamma_large = large_->generator();
  for (std::uint32_t j = 1; j <= n_small; ++j) {
    if (std::gcd(j, n_small) != 1) continue;
    const FieldElement c = gamma_large.pow(std::int64_t{base} * j);
    std::vector<FieldElement> image(small_->size(), large_->zero());
    FieldElement s = small_->one();
    FieldElement t = large_->one();
    for (std::uint32_t i = 0; i < n_small; ++i) {
      image[s.code()] = t;
      s = s * gamma;
      t = t * c;
    }
    bool additive = true;
    for (const auto& x : small_->elements()) {
      for (const auto& y : small_->elements()) {
        if (image[(x + y).code()] != image[x.code()] + image[y.code()]) {
          additive = false;
          break;
        }
      }
      if (!additive) break;
    }
    if (additive) {
      exponent_ = base * j;
      image_ = std::move(image);
      return;
    }
  }
  throw Error(ErrorKind::NoEmbedding, "no field homomorphism found");
}

FieldElement SubfieldEmbedding::apply(const FieldElement& a) const {
  if (a.field_ptr() != small_.get()) {
    throw Error(ErrorKind::DescriptorMismatch, "element not in the embedded field");
  }
  return image_[a.code()];
}

std::vector<RingElement> teichmuller_basis(const LocalRing& ring, const FieldPtr& k) {
  const SubfieldEmbedding embed(k, ring.residue_field());
  std::vector<RingElement> out;
  FieldElement power = k->one();
  const FieldElement x = k->d() == 1 ? k->one() : k->x();
  for (std::uint32_t i = 0; i < k->d(); ++i) {
    out.push_back(ring.teichmuller(embed.apply(power)));
    power = power * x;
  }
  return out;
}

std::vector<RingElement> witt_subring(const LocalRing& ring, const FieldPtr& k) {
  const SubfieldEmbedding embed(k, ring.residue_field());
  // Teichmuller lifts are closed under multiplication, so the subring they
  // generate is their additive span.
  std::vector<RingElement> lifts;
  for (const auto& a : k->elements()) lifts.push_back(ring.teichmuller(embed.apply(a)));
  std::vector<char> seen(ring.size(), 0);
  std::vector<RingElement> queue = {ring.zero()};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (RingElement t : lifts) {
      const RingElement y = ring.add(queue[i], t);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<RingElement> out;
  for (RingElement x = 0; x < ring.size(); ++x) {
    if (seen[x]) out.push_back(x);
  }
  return out;
}

}  // namespace wittgroup
