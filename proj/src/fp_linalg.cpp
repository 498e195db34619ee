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

#include "wittgroup/fp_linalg.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "wittgroup/errors.hpp"

namespace wittgroup {

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
  // Extended Euclid on signed integers.
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  return static_cast<std::uint32_t>(((s0 % p) + p) % p);
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_columns(std::uint32_t p, std::size_t rows,
                                const std::vector<FpVector>& columns) {
  FpMatrix m(p, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r] % p;
  }
  return m;
}

FpVector FpMatrix::column(std::size_t c) const {
  FpVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

FpVector FpMatrix::apply(std::span<const std::uint32_t> v) const {
  FpVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const std::uint32_t* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t{row[c]} * v[c];
    out[r] = static_cast<std::uint32_t>(acc % p_);
  }
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
  FpMatrix out(p_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        out.at(r, c) = static_cast<std::uint32_t>((out.at(r, c) + a * other.at(k, c)) % p_);
      }
    }
  }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& other) const {
  FpMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + other.data_[i]) % p_;
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& other) const {
  FpMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = (data_[i] + p_ - other.data_[i]) % p_;
  }
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

FpMatrix FpMatrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorKind::DivisionByZero, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  Echelon e(p_, n, n);
  FpVector tag(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(tag.begin(), tag.end(), 0);
    tag[r] = 1;
    if (!e.insert(row(r), tag)) throw Error(ErrorKind::DivisionByZero, "singular matrix");
  }
  // Row i of the inverse expresses e_i in terms of the rows of this matrix.
  FpMatrix out(p_, n, n);
  FpVector unit(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(unit.begin(), unit.end(), 0);
    unit[i] = 1;
    const FpVector comb = *e.express(unit);
    for (std::size_t r = 0; r < n; ++r) out.at(i, r) = comb[r];
  }
  return out;
}

std::size_t FpMatrix::rank() const {
  Echelon e(p_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) e.insert(row(r));
  return e.rank();
}

bool FpMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at(r, c) != (r == c ? 1u : 0u)) return false;
    }
  }
  return true;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t x) { return x == 0; });
}

// ----------------------------------------------------------------- Echelon

Echelon::Echelon(std::uint32_t p, std::size_t cols, std::size_t tag_cols)
    : p_(p), cols_(cols), tags_(tag_cols), pivot_row_(cols, -1) {
  if (p_ == 2) words_ = (width() + 63) / 64;
}

void Echelon::pack(std::span<const std::uint32_t> v, std::span<const std::uint32_t> tag,
                   Word* out) const {
  std::fill(out, out + words_, Word{0});
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] & 1u) out[c >> 6] |= Word{1} << (c & 63);
  }
  for (std::size_t t = 0; t < tag.size() && t < tags_; ++t) {
    const std::size_t c = cols_ + t;
    if (tag[t] & 1u) out[c >> 6] |= Word{1} << (c & 63);
  }
}

void Echelon::load(std::span<const std::uint32_t> v, std::span<const std::uint32_t> tag,
                   std::uint32_t* out) const {
  std::fill(out, out + width(), 0u);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = v[c] % p_;
  for (std::size_t t = 0; t < tag.size() && t < tags_; ++t) out[cols_ + t] = tag[t] % p_;
}

void Echelon::reduce_packed(Word* v) const {
  const std::size_t pivot_words = (cols_ + 63) / 64;
  for (std::size_t w = 0; w < pivot_words; ++w) {
    Word mask = ~Word{0};
    if ((w + 1) * 64 > cols_) mask = (Word{1} << (cols_ - w * 64)) - 1;
    Word bits = v[w] & mask;
    while (bits != 0) {
      const int b = std::countr_zero(bits);
      const std::int32_t r = pivot_row_[w * 64 + b];
      if (r >= 0) {
        const Word* row = packed_.data() + static_cast<std::size_t>(r) * words_;
        for (std::size_t i = w; i < words_; ++i) v[i] ^= row[i];
      }
      const Word above = b == 63 ? Word{0} : (~Word{0} << (b + 1));
      bits = v[w] & mask & above;
    }
  }
}

void Echelon::reduce_dense(std::uint32_t* v) const {
  const std::size_t wdt = width();
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] == 0) continue;
    const std::int32_t r = pivot_row_[c];
    if (r < 0) continue;
    const std::uint64_t f = p_ - v[c];
    const std::uint32_t* row = dense_.data() + static_cast<std::size_t>(r) * wdt;
    for (std::size_t j = c; j < wdt; ++j) {
      if (row[j] != 0) v[j] = static_cast<std::uint32_t>((v[j] + f * row[j]) % p_);
    }
  }
}

bool Echelon::store_reduced_packed(const Word* v) {
  for (std::size_t w = 0; w * 64 < cols_; ++w) {
    Word mask = ~Word{0};
    if ((w + 1) * 64 > cols_) mask = (Word{1} << (cols_ - w * 64)) - 1;
    const Word bits = v[w] & mask;
    if (bits == 0) continue;
    const std::size_t c = w * 64 + std::countr_zero(bits);
    pivot_row_[c] = static_cast<std::int32_t>(pivots_.size());
    pivots_.push_back(c);
    packed_.insert(packed_.end(), v, v + words_);
    return true;
  }
  return false;
}

bool Echelon::store_reduced_dense(std::uint32_t* v) {
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] == 0) continue;
    const std::uint64_t inv = fp_inverse(v[c], p_);
    for (std::size_t j = c; j < width(); ++j) {
      v[j] = static_cast<std::uint32_t>((v[j] * inv) % p_);
    }
    pivot_row_[c] = static_cast<std::int32_t>(pivots_.size());
    pivots_.push_back(c);
    dense_.insert(dense_.end(), v, v + width());
    return true;
  }
  return false;
}

bool Echelon::insert(std::span<const std::uint32_t> v, std::span<const std::uint32_t> tag) {
  if (p_ == 2) {
    std::vector<Word> buf(words_);
    pack(v, tag, buf.data());
    reduce_packed(buf.data());
    return store_reduced_packed(buf.data());
  }
  std::vector<std::uint32_t> buf(width());
  load(v, tag, buf.data());
  reduce_dense(buf.data());
  return store_reduced_dense(buf.data());
}

std::size_t Echelon::insert_batch(const std::vector<FpVector>& rows, bool parallel) {
  constexpr std::size_t kChunk = 2048;
  std::size_t inserted = 0;
  for (std::size_t start = 0; start < rows.size(); start += kChunk) {
    const std::size_t count = std::min(kChunk, rows.size() - start);
    if (p_ == 2) {
      std::vector<Word> buf(count * words_);
      const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
      for (std::int64_t i = 0; i < n; ++i) {
        Word* v = buf.data() + static_cast<std::size_t>(i) * words_;
        pack(rows[start + static_cast<std::size_t>(i)], {}, v);
        reduce_packed(v);
      }
      for (std::size_t i = 0; i < count; ++i) {
        Word* v = buf.data() + i * words_;
        reduce_packed(v);
        inserted += store_reduced_packed(v) ? 1 : 0;
      }
    } else {
      const std::size_t wdt = width();
      std::vector<std::uint32_t> buf(count * wdt);
      const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
      for (std::int64_t i = 0; i < n; ++i) {
        std::uint32_t* v = buf.data() + static_cast<std::size_t>(i) * wdt;
        load(rows[start + static_cast<std::size_t>(i)], {}, v);
        reduce_dense(v);
      }
      for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t* v = buf.data() + i * wdt;
        reduce_dense(v);
        inserted += store_reduced_dense(v) ? 1 : 0;
      }
    }
  }
  return inserted;
}

FpVector Echelon::reduce(std::span<const std::uint32_t> v,
                         std::span<const std::uint32_t> tag) const {
  FpVector out(width(), 0);
  if (p_ == 2) {
    std::vector<Word> buf(words_);
    pack(v, tag, buf.data());
    reduce_packed(buf.data());
    for (std::size_t c = 0; c < width(); ++c) out[c] = (buf[c >> 6] >> (c & 63)) & 1u;
  } else {
    load(v, tag, out.data());
    reduce_dense(out.data());
  }
  return out;
}

bool Echelon::contains(std::span<const std::uint32_t> v) const {
  const FpVector r = reduce(v);
  return std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(cols_),
                     [](std::uint32_t x) { return x == 0; });
}

std::optional<FpVector> Echelon::express(std::span<const std::uint32_t> v) const {
  const FpVector r = reduce(v);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (r[c] != 0) return std::nullopt;
  }
  FpVector out(tags_);
  for (std::size_t t = 0; t < tags_; ++t) out[t] = (p_ - r[cols_ + t]) % p_;
  return out;
}

FpVector Echelon::unpack_row(std::size_t r, bool with_tags) const {
  const std::size_t len = with_tags ? width() : cols_;
  FpVector out(len);
  if (p_ == 2) {
    const Word* row = packed_.data() + r * words_;
    for (std::size_t c = 0; c < len; ++c) out[c] = (row[c >> 6] >> (c & 63)) & 1u;
  } else {
    const std::uint32_t* row = dense_.data() + r * width();
    std::copy(row, row + len, out.begin());
  }
  return out;
}

std::vector<FpVector> Echelon::basis() const {
  std::vector<FpVector> out;
  out.reserve(rank());
  for (std::size_t r = 0; r < rank(); ++r) out.push_back(unpack_row(r, false));
  return out;
}

std::vector<FpVector> Echelon::nullspace() const {
  const std::size_t rk = rank();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivots_) is_pivot[c] = true;
  std::vector<FpVector> out;

  if (p_ == 2) {
    // Reduced echelon form on packed rows, pivot part only.
    const std::size_t wc = (cols_ + 63) / 64;
    std::vector<Word> rows(rk * wc);
    for (std::size_t r = 0; r < rk; ++r) {
      std::copy_n(packed_.data() + r * words_, wc, rows.data() + r * wc);
      if (cols_ % 64 != 0) rows[r * wc + wc - 1] &= (Word{1} << (cols_ % 64)) - 1;
    }
    // Later rows are already clear in earlier pivot columns; clearing in
    // reverse insertion order leaves every pivot column a unit vector.
    for (std::size_t i = rk; i-- > 0;) {
      const std::size_t c = pivots_[i];
      const Word* ri = rows.data() + i * wc;
      for (std::size_t j = 0; j < i; ++j) {
        Word* rj = rows.data() + j * wc;
        if ((rj[c >> 6] >> (c & 63)) & 1u) {
          for (std::size_t w = c >> 6; w < wc; ++w) rj[w] ^= ri[w];
        }
      }
    }
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      FpVector x(cols_, 0);
      x[f] = 1;
      for (std::size_t i = 0; i < rk; ++i) {
        if ((rows[i * wc + (f >> 6)] >> (f & 63)) & 1u) x[pivots_[i]] = 1;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

  std::vector<FpVector> rows;
  rows.reserve(rk);
  for (std::size_t r = 0; r < rk; ++r) rows.push_back(unpack_row(r, false));
  for (std::size_t i = rk; i-- > 0;) {
    const std::size_t c = pivots_[i];
    for (std::size_t j = 0; j < i; ++j) {
      const std::uint64_t f = rows[j][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < cols_; ++k) {
        rows[j][k] = static_cast<std::uint32_t>((rows[j][k] + (p_ - f) * rows[i][k]) % p_);
      }
    }
  }
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    FpVector x(cols_, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < rk; ++i) x[pivots_[i]] = (p_ - rows[i][f]) % p_;
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<FpVector> Echelon::reduced_basis() const {
  const std::size_t rk = rank();
  std::vector<FpVector> rows;
  rows.reserve(rk);
  for (std::size_t r = 0; r < rk; ++r) rows.push_back(unpack_row(r, false));
  for (std::size_t i = rk; i-- > 0;) {
    const std::size_t c = pivots_[i];
    for (std::size_t j = 0; j < i; ++j) {
      const std::uint64_t f = rows[j][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < cols_; ++k) {
        rows[j][k] = static_cast<std::uint32_t>((rows[j][k] + (p_ - f) * rows[i][k]) % p_);
      }
    }
  }
  std::vector<std::size_t> order(rk);
  for (std::size_t i = 0; i < rk; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<FpVector> out;
  out.reserve(rk);
  for (std::size_t i : order) out.push_back(std::move(rows[i]));
  return out;
}

std::vector<FpVector> canonical_basis(std::uint32_t p, std::size_t cols,
                                      const std::vector<FpVector>& vectors) {
  Echelon e(p, cols);
  for (const auto& v : vectors) e.insert(v);
  return e.reduced_basis();
}

std::vector<FpVector> intersect_spans(std::uint32_t p, std::size_t cols,
                                      const std::vector<FpVector>& a,
                                      const std::vector<FpVector>& b) {
  // Kernel of [a | b] as a map from coefficient pairs; each kernel vector
  // (x, y) gives sum x_i a_i = -sum y_j b_j in the intersection.
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::vector<FpVector> rows(cols, FpVector(na + nb, 0));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < na; ++i) rows[c][i] = a[i][c];
    for (std::size_t j = 0; j < nb; ++j) rows[c][na + j] = b[j][c];
  }
  std::vector<FpVector> meet;
  for (const auto& k : nullspace(p, na + nb, rows)) {
    FpVector v(cols, 0);
    for (std::size_t i = 0; i < na; ++i) {
      if (k[i] == 0) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        v[c] = static_cast<std::uint32_t>((v[c] + std::uint64_t{k[i]} * a[i][c]) % p);
      }
    }
    meet.push_back(std::move(v));
  }
  return canonical_basis(p, cols, meet);
}

std::vector<FpVector> nullspace(std::uint32_t p, std::size_t cols,
                                const std::vector<FpVector>& rows) {
  Echelon e(p, cols);
  e.insert_batch(rows, false);
  return e.nullspace();
}

std::optional<FpVector> solve_columns(std::uint32_t p, std::size_t rows,
                                      const std::vector<FpVector>& columns,
                                      std::span<const std::uint32_t> b) {
  Echelon e(p, rows, columns.size());
  FpVector tag(columns.size(), 0);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    tag[j] = 1;
    e.insert(columns[j], tag);
    tag[j] = 0;
  }
  return e.express(b);
}

}  // namespace wittgroup
