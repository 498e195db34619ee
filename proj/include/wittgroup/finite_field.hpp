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

#ifndef WITTGROUP_FINITE_FIELD_HPP_
#define WITTGROUP_FINITE_FIELD_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wittgroup {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

inline constexpr std::uint32_t kMaxFieldDegree = 8;
inline constexpr std::uint32_t kMaxFieldSize = 512;

bool is_prime(std::uint64_t n);

// An element of GF(p^d) stored as its polynomial coefficients (ascending
// degree) modulo the field's canonical modulus.
class FieldElement {
 public:
  using Coeffs = std::array<std::uint16_t, kMaxFieldDegree>;

  FieldElement() = default;
  FieldElement(const FiniteField* field, const Coeffs& coeffs)
      : field_(field), coeffs_(coeffs) {}

  const FiniteField& field() const { return *field_; }
  const FiniteField* field_ptr() const { return field_; }
  std::span<const std::uint16_t> coeffs() const;

  // Base-p integer with c0 as the least significant digit.
  std::uint32_t code() const;
  bool is_zero() const;

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement inverse() const;
  FieldElement pow(std::int64_t exponent) const;

  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  const FiniteField* field_ = nullptr;
  Coeffs coeffs_{};
};

// GF(p^d) = GF(p)[x]/(f) with f the lexicographically least monic
// irreducible of degree d (coefficients compared from the constant term up).
// Descriptors are interned: equal (p, d) yield the same object.
class FiniteField {
 public:
  static FieldPtr create(std::uint32_t p, std::uint32_t d);

  std::uint32_t p() const { return p_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t size() const { return size_; }
  // Monic modulus, d + 1 coefficients, ascending degree.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t value) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  FieldElement from_code(std::uint32_t code) const;
  // Class of x.
  FieldElement x() const;

  // All p^d elements, zero first, lexicographic on (c0, c1, ...).
  std::vector<FieldElement> elements() const;
  // First element in enumeration order of multiplicative order p^d - 1.
  FieldElement generator() const;
  std::uint64_t multiplicative_order(const FieldElement& a) const;

  FieldElement frobenius(const FieldElement& a) const;

  FieldElement parse(std::string_view text) const;

  FiniteField(std::uint32_t p, std::uint32_t d,
              std::vector<std::uint32_t> modulus);

 private:
  friend class FieldElement;

  FieldElement::Coeffs mul_coeffs(const FieldElement::Coeffs& a,
                                  const FieldElement::Coeffs& b) const;

  std::uint32_t p_;
  std::uint32_t d_;
  std::uint32_t size_;
  std::vector<std::uint32_t> modulus_;
};

// Lexicographically least monic irreducible polynomial of degree d over
// GF(p), found by exhaustive trial division.
std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t d);
bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p);

// Parses "p^d:[c0,c1,...]" creating the field on the fly.
FieldElement parse_field_element(std::string_view text);

}  // namespace wittgroup

#endif  // WITTGROUP_FINITE_FIELD_HPP_
