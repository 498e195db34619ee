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

#include "wittgroup/finite_field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

#include "wittgroup/errors.hpp"

namespace wittgroup {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint32_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of f modulo g over GF(p); g nonzero.
Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = inv_mod_prime(g.back(), p);
  while (f.size() > dg) {
    const std::size_t shift = f.size() - 1 - dg;
    const std::uint64_t c = std::uint64_t{f.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<std::uint32_t>(
          (f[shift + i] + (p - c) * g[i]) % p);
    }
    trim(f);
  }
  return f;
}

}  // namespace

bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p) {
  const std::size_t d = monic.size() - 1;
  if (d == 1) return true;
  Poly f(monic.begin(), monic.end());
  // Try every monic divisor of degree 1..d/2.
  for (std::size_t k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    Poly g(k + 1, 0);
    g[k] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t d) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < d; ++i) count *= p;
  Poly f(d + 1, 0);
  f[d] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c0 is the most significant digit of idx so that the enumeration is
    // lexicographic from the constant term up.
    std::uint64_t t = idx;
    for (std::uint32_t i = d; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::UnsupportedSize, "no irreducible polynomial found");
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t d,
                         std::vector<std::uint32_t> modulus)
    : p_(p), d_(d), size_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < d; ++i) size_ *= p;
}

FieldPtr FiniteField::create(std::uint32_t p, std::uint32_t d) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  }
  if (d < 1 || d > kMaxFieldDegree) {
    throw Error(ErrorKind::UnsupportedSize,
                "degree " + std::to_string(d) + " outside 1.." +
                    std::to_string(kMaxFieldDegree));
  }
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < d; ++i) size *= p;
  if (size > kMaxFieldSize) {
    throw Error(ErrorKind::UnsupportedSize,
                "field of size " + std::to_string(size) + " exceeds " +
                    std::to_string(kMaxFieldSize));
  }
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = registry.find({p, d});
  if (it != registry.end()) return it->second;
  auto field = std::make_shared<const FiniteField>(p, d, canonical_modulus(p, d));
  registry.emplace(std::make_pair(p, d), field);
  return field;
}

FieldElement FiniteField::zero() const { return FieldElement(this, {}); }

FieldElement FiniteField::one() const {
  FieldElement::Coeffs c{};
  c[0] = 1;
  return FieldElement(this, c);
}

FieldElement FiniteField::from_int(std::int64_t value) const {
  FieldElement::Coeffs c{};
  const auto p = static_cast<std::int64_t>(p_);
  c[0] = static_cast<std::uint16_t>(((value % p) + p) % p);
  return FieldElement(this, c);
}

FieldElement FiniteField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > d_) {
    throw Error(ErrorKind::DescriptorMismatch, "too many coefficients");
  }
  FieldElement::Coeffs c{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    c[i] = static_cast<std::uint16_t>(coeffs[i] % p_);
  }
  return FieldElement(this, c);
}

FieldElement FiniteField::from_code(std::uint32_t code) const {
  FieldElement::Coeffs c{};
  for (std::uint32_t i = 0; i < d_; ++i) {
    c[i] = static_cast<std::uint16_t>(code % p_);
    code /= p_;
  }
  return FieldElement(this, c);
}

FieldElement FiniteField::x() const {
  if (d_ == 1) return from_int(-static_cast<std::int64_t>(modulus_[0]));
  FieldElement::Coeffs c{};
  c[1] = 1;
  return FieldElement(this, c);
}

std::vector<FieldElement> FiniteField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(size_);
  for (std::uint32_t idx = 0; idx < size_; ++idx) {
    FieldElement::Coeffs c{};
    std::uint32_t t = idx;
    for (std::uint32_t i = d_; i-- > 0;) {
      c[i] = static_cast<std::uint16_t>(t % p_);
      t /= p_;
    }
    out.emplace_back(this, c);
  }
  return out;
}

std::uint64_t FiniteField::multiplicative_order(const FieldElement& a) const {
  if (a.is_zero()) {
    throw Error(ErrorKind::DivisionByZero, "zero has no multiplicative order");
  }
  FieldElement y = a;
  std::uint64_t order = 1;
  while (y != one()) {
    y = y * a;
    ++order;
  }
  return order;
}

FieldElement FiniteField::generator() const {
  for (const auto& a : elements()) {
    if (!a.is_zero() && multiplicative_order(a) == size_ - 1) return a;
  }
  throw Error(ErrorKind::UnsupportedSize, "no multiplicative generator");
}

FieldElement FiniteField::frobenius(const FieldElement& a) const {
  return a.pow(p_);
}

FieldElement::Coeffs FiniteField::mul_coeffs(const FieldElement::Coeffs& a,
                                            const FieldElement::Coeffs& b) const {
  std::array<std::uint64_t, 2 * kMaxFieldDegree> prod{};
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t j = 0; j < d_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    }
  }
  for (std::uint32_t k = 2 * d_ - 1; k-- > d_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    // x^k = x^(k-d) * (x^d) and x^d = -sum modulus_[i] x^i.
    for (std::uint32_t i = 0; i < d_; ++i) {
      prod[k - d_ + i] = (prod[k - d_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
  }
  FieldElement::Coeffs out{};
  for (std::uint32_t i = 0; i < d_; ++i) out[i] = static_cast<std::uint16_t>(prod[i]);
  return out;
}

FieldElement FiniteField::parse(std::string_view text) const {
  FieldElement e = parse_field_element(text);
  if (e.field_ptr() != this) {
    throw Error(ErrorKind::DescriptorMismatch,
                "element belongs to a different field");
  }
  return e;
}

std::span<const std::uint16_t> FieldElement::coeffs() const {
  return {coeffs_.data(), field_->d()};
}

std::uint32_t FieldElement::code() const {
  std::uint32_t code = 0;
  for (std::uint32_t i = field_->d(); i-- > 0;) code = code * field_->p() + coeffs_[i];
  return code;
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](std::uint16_t c) { return c == 0; });
}

namespace {

void check_same(const FieldElement& a, const FieldElement& b) {
  if (a.field_ptr() != b.field_ptr() || a.field_ptr() == nullptr) {
    throw Error(ErrorKind::DescriptorMismatch,
                "operands belong to different fields");
  }
}

}  // namespace

FieldElement FieldElement::operator+(const FieldElement& other) const {
  check_same(*this, other);
  Coeffs c{};
  const std::uint32_t p = field_->p();
  for (std::uint32_t i = 0; i < field_->d(); ++i) {
    c[i] = static_cast<std::uint16_t>((coeffs_[i] + other.coeffs_[i]) % p);
  }
  return {field_, c};
}

FieldElement FieldElement::operator-() const {
  Coeffs c{};
  const std::uint32_t p = field_->p();
  for (std::uint32_t i = 0; i < field_->d(); ++i) {
    c[i] = static_cast<std::uint16_t>((p - coeffs_[i]) % p);
  }
  return {field_, c};
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
  check_same(*this, other);
  return *this + (-other);
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  check_same(*this, other);
  return {field_, field_->mul_coeffs(coeffs_, other.coeffs_)};
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return pow(static_cast<std::int64_t>(field_->size()) - 2);
}

FieldElement FieldElement::pow(std::int64_t exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result = field_->one();
  FieldElement base = *this;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool FieldElement::operator==(const FieldElement& other) const {
  return field_ == other.field_ && coeffs_ == other.coeffs_;
}

std::string FieldElement::to_string() const {
  std::ostringstream out;
  out << field_->p() << '^' << field_->d() << ":[";
  for (std::uint32_t i = 0; i < field_->d(); ++i) {
    if (i) out << ',';
    out << coeffs_[i];
  }
  out << ']';
  return out.str();
}

FieldElement parse_field_element(std::string_view text) {
  auto fail = [&](std::size_t pos, const std::string& why) -> Error {
    return Error(ErrorKind::ParseError, "field element '" + std::string(text) +
                                            "' at position " + std::to_string(pos) +
                                            ": " + why);
  };
  std::size_t pos = 0;
  auto read_uint = [&](std::uint32_t& out) {
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc()) throw fail(pos, "expected integer");
    pos += static_cast<std::size_t>(ptr - begin);
  };
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c) {
      throw fail(pos, std::string("expected '") + c + "'");
    }
    ++pos;
  };
  std::uint32_t p = 0, d = 0;
  read_uint(p);
  expect('^');
  read_uint(d);
  expect(':');
  expect('[');
  FieldPtr field = FiniteField::create(p, d);
  std::vector<std::uint32_t> coeffs;
  while (pos < text.size() && text[pos] != ']') {
    if (!coeffs.empty()) expect(',');
    std::uint32_t c = 0;
    read_uint(c);
    if (c >= p) throw fail(pos, "coefficient out of range");
    coeffs.push_back(c);
  }
  expect(']');
  if (pos != text.size()) throw fail(pos, "trailing characters");
  if (coeffs.size() != d) throw fail(pos, "expected exactly d coefficients");
  return field->from_coeffs(coeffs);
}

}  // namespace wittgroup
