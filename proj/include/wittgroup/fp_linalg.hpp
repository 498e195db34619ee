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

#ifndef WITTGROUP_FP_LINALG_HPP_
#define WITTGROUP_FP_LINALG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace wittgroup {

using FpVector = std::vector<std::uint32_t>;

// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  static FpMatrix identity(std::uint32_t p, std::size_t n);
  static FpMatrix from_columns(std::uint32_t p, std::size_t rows,
                               const std::vector<FpVector>& columns);

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  FpVector column(std::size_t c) const;

  FpVector apply(std::span<const std::uint32_t> v) const;
  FpMatrix operator*(const FpMatrix& other) const;
  FpMatrix operator+(const FpMatrix& other) const;
  FpMatrix operator-(const FpMatrix& other) const;
  FpMatrix transpose() const;
  // Throws DivisionByZero when singular.
  FpMatrix inverse() const;
  std::size_t rank() const;
  bool is_identity() const;
  bool is_zero() const;

  bool operator==(const FpMatrix& other) const = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

// Incrementally maintained row echelon basis over F_p. Each stored row has
// its pivot as leading entry (normalized to 1) and zeros in the pivot
// columns of rows stored before it, so reduction is a single left-to-right
// sweep. For p = 2 rows are bit-packed.
//
// Rows may carry `tag_cols` extra trailing columns that take part in the
// arithmetic but never hold pivots; they record linear combinations.
class Echelon {
 public:
  Echelon(std::uint32_t p, std::size_t cols, std::size_t tag_cols = 0);

  std::uint32_t p() const { return p_; }
  std::size_t cols() const { return cols_; }
  std::size_t tag_cols() const { return tags_; }
  std::size_t rank() const { return pivots_.size(); }

  // Inserts v (with optional tag); returns false when v reduces to zero in
  // the pivot part.
  bool insert(std::span<const std::uint32_t> v, std::span<const std::uint32_t> tag = {});
  // Inserts the rows in order with the same outcome as repeated insert();
  // reduction against the current basis runs in parallel when `parallel`.
  std::size_t insert_batch(const std::vector<FpVector>& rows, bool parallel);

  bool contains(std::span<const std::uint32_t> v) const;
  // Reduced form of v: the pivot part followed by the tag part.
  FpVector reduce(std::span<const std::uint32_t> v,
                  std::span<const std::uint32_t> tag = {}) const;
  // When v lies in the span of the inserted rows, the combination of their
  // tags realising v; requires tag_cols() > 0.
  std::optional<FpVector> express(std::span<const std::uint32_t> v) const;

  const std::vector<std::size_t>& pivots() const { return pivots_; }
  // Stored rows, pivot part only, in insertion order.
  std::vector<FpVector> basis() const;
  // Reduced row echelon basis of the span, sorted by pivot; a canonical
  // description of the subspace.
  std::vector<FpVector> reduced_basis() const;
  // Basis of {x : r . x = 0 for every stored row r}.
  std::vector<FpVector> nullspace() const;

 private:
  using Word = std::uint64_t;

  std::size_t width() const { return cols_ + tags_; }
  void reduce_packed(Word* v) const;
  void reduce_dense(std::uint32_t* v) const;
  void pack(std::span<const std::uint32_t> v, std::span<const std::uint32_t> tag,
            Word* out) const;
  void load(std::span<const std::uint32_t> v, std::span<const std::uint32_t> tag,
            std::uint32_t* out) const;
  FpVector unpack_row(std::size_t r, bool with_tags) const;
  bool store_reduced_packed(const Word* v);
  bool store_reduced_dense(std::uint32_t* v);

  std::uint32_t p_;
  std::size_t cols_;
  std::size_t tags_;
  std::size_t words_ = 0;  // packed words per row (p = 2)
  std::vector<Word> packed_;
  std::vector<std::uint32_t> dense_;
  std::vector<std::int32_t> pivot_row_;  // column -> stored row or -1
  std::vector<std::size_t> pivots_;      // stored row -> pivot column
};

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);

// Basis of the right kernel of a matrix given by its rows.
std::vector<FpVector> nullspace(std::uint32_t p, std::size_t cols,
                                const std::vector<FpVector>& rows);
// Canonical (reduced echelon) basis of the span of the vectors.
std::vector<FpVector> canonical_basis(std::uint32_t p, std::size_t cols,
                                      const std::vector<FpVector>& vectors);
// Basis of span(a) intersected with span(b).
std::vector<FpVector> intersect_spans(std::uint32_t p, std::size_t cols,
                                      const std::vector<FpVector>& a,
                                      const std::vector<FpVector>& b);
// Some x with A x = b, A given by columns.
std::optional<FpVector> solve_columns(std::uint32_t p, std::size_t rows,
                                      const std::vector<FpVector>& columns,
                                      std::span<const std::uint32_t> b);

}  // namespace wittgroup

#endif  // WITTGROUP_FP_LINALG_HPP_
