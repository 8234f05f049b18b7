#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "qgrass/matrix.hpp"

namespace qgrass {

namespace detail {

// Packed row layout, chosen so unsigned comparison of row words equals
// lexicographic comparison of the serialized digit string:
//   q == 2 : column c at bit 63-c          (n <= 64)
//   q >  2 : column c at bits [4*(15-c),+4) (n <= 16)
struct RowArith {
  const Field* f;
  int n;
  bool binary;

  explicit RowArith(const Field& field, int n_) : f(&field), n(n_), binary(field.q() == 2) {}

  static int max_cols(int q) { return q == 2 ? 64 : 16; }

  uint8_t get(uint64_t row, int c) const {
    return binary ? static_cast<uint8_t>((row >> (63 - c)) & 1)
                  : static_cast<uint8_t>((row >> (4 * (15 - c))) & 0xF);
  }
  uint64_t set(uint64_t row, int c, uint8_t v) const {
    if (binary) {
      uint64_t bit = 1ull << (63 - c);
      return (row & ~bit) | (v ? bit : 0ull);
    }
    int sh = 4 * (15 - c);
    return (row & ~(0xFull << sh)) | (static_cast<uint64_t>(v) << sh);
  }
  // Column of the leading nonzero entry, or n if the row is zero.
  int lead(uint64_t row) const {
    if (row == 0) return n;
    int bits = std::countl_zero(row);
    return binary ? bits : bits / 4;
  }
  // r + c*s entrywise.
  uint64_t add_scaled(uint64_t r, uint64_t s, uint8_t c) const {
    if (c == 0) return r;
    if (binary) return r ^ s;
    uint64_t out = r;
    while (s) {
      int bits = std::countl_zero(s) / 4;
      int sh = 4 * (15 - bits);
      uint8_t sv = static_cast<uint8_t>((s >> sh) & 0xF);
      uint8_t rv = static_cast<uint8_t>((out >> sh) & 0xF);
      uint8_t nv = f->add(rv, f->mul(c, sv));
      out = (out & ~(0xFull << sh)) | (static_cast<uint64_t>(nv) << sh);
      s &= ~(0xFull << sh);
    }
    return out;
  }
  uint64_t scale(uint64_t r, uint8_t c) const {
    if (binary || c == 1) return c == 0 ? 0 : r;
    uint64_t out = 0;
    while (r) {
      int bits = std::countl_zero(r) / 4;
      int sh = 4 * (15 - bits);
      uint8_t rv = static_cast<uint8_t>((r >> sh) & 0xF);
      out |= static_cast<uint64_t>(f->mul(c, rv)) << sh;
      r &= ~(0xFull << sh);
    }
    return out;
  }
};

// Destructive rank of the given packed rows.
int rank_packed(std::span<uint64_t> rows, const RowArith& ar);

// In-place reduction to canonical RREF (zero rows dropped, rows ordered by
// pivot column). Returns pivot columns.
std::vector<int> rref_packed(std::vector<uint64_t>& rows, const RowArith& ar);

}  // namespace detail

using PackedRows = boost::container::small_vector<uint64_t, 4>;

// A k-dimensional subspace of GF(q)^n held as its canonical reduced
// row echelon basis. Canonical-form uniqueness makes equality, ordering and
// hashing plain word comparisons; the global total order used everywhere is
// lexicographic on the serialized basis (identical to word order by the
// packing above). Immutable after construction.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(const Field& f, int n);
  static Subspace full(const Field& f, int n);
  // Canonicalize arbitrary spanning rows (dependent rows allowed).
  static Subspace from_matrix(const MatrixGF& rows);
  static Subspace from_packed(const Field& f, int n, std::vector<uint64_t> rows);
  // Coordinate subspace spanned by the given standard basis vectors.
  static Subspace span_std(const Field& f, int n, const std::vector<int>& cols);
  // Rows already in canonical RREF (hot path; validated by a cheap check).
  static Subspace from_canonical(const Field& f, int n, PackedRows rows);

  const Field& field() const { return *field_; }
  int q() const { return field_->q(); }
  int n() const { return n_; }
  int k() const { return static_cast<int>(rows_.size()); }
  uint64_t row_word(int r) const { return rows_[r]; }
  const PackedRows& rows() const { return rows_; }
  uint8_t entry(int r, int c) const { return detail::RowArith(*field_, n_).get(rows_[r], c); }
  std::vector<int> pivots() const;
  MatrixGF basis_matrix() const;

  // "10010|01001" row digit strings joined by '|'; k = 0 gives "".
  std::string to_string() const;
  // Strict: rows must already be canonical RREF, else ParseError.
  static Subspace parse(const Field& f, int n, std::string_view text);

  bool operator==(const Subspace& o) const {
    return field_->q() == o.field_->q() && n_ == o.n_ && rows_ == o.rows_;
  }
  bool operator<(const Subspace& o) const {
    if (field_->q() != o.field_->q()) return field_->q() < o.field_->q();
    if (n_ != o.n_) return n_ < o.n_;
    if (rows_.size() != o.rows_.size()) return rows_.size() < o.rows_.size();
    return std::lexicographical_compare(rows_.begin(), rows_.end(), o.rows_.begin(), o.rows_.end());
  }

 private:
  const Field* field_ = nullptr;
  uint8_t n_ = 0;
  PackedRows rows_;
};

// Free-function spelling of the canonicalizer.
inline Subspace subspace_canon(const MatrixGF& rows) { return Subspace::from_matrix(rows); }

// Smallest subspace containing both; dim = rank of the stacked bases.
Subspace join(const Subspace& a, const Subspace& b);
// Intersection subspace (Zassenhaus), satisfying the modular dimension law.
Subspace meet(const Subspace& a, const Subspace& b);
// dim(a) + dim(b) - rank(stacked bases); no basis materialization.
int dim_meet(const Subspace& a, const Subspace& b);
// b <= a as sets of vectors.
bool contains(const Subspace& a, const Subspace& b);
// Interpret coords (a subspace of F^{dim a}) as coefficient rows w.r.t. a's
// basis and return the corresponding subspace of a's ambient space.
Subspace lift_through(const Subspace& a, const Subspace& coords);

}  // namespace qgrass
