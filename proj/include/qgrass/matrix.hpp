#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "qgrass/field.hpp"

namespace qgrass {

// Dense row-major matrix over GF(q). The workhorse for user-facing input and
// for the small change-of-basis computations; hot loops use the packed row
// representation in subspace.hpp instead.
struct MatrixGF {
  const Field* field = nullptr;
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> a;  // rows*cols entries, each < q

  MatrixGF() = default;
  MatrixGF(const Field& f, int r, int c) : field(&f), rows(r), cols(c), a(r * c, 0) {}

  uint8_t& at(int r, int c) { return a[r * cols + c]; }
  uint8_t at(int r, int c) const { return a[r * cols + c]; }

  static MatrixGF identity(const Field& f, int n);
  // Entries as digit strings, one per row, e.g. {"120", "011"}.
  static MatrixGF from_rows(const Field& f, std::initializer_list<std::string> rows);
  static MatrixGF from_rows(const Field& f, const std::vector<std::string>& rows);

  bool operator==(const MatrixGF& o) const {
    return field->q() == o.field->q() && rows == o.rows && cols == o.cols && a == o.a;
  }
};

struct RrefResult {
  MatrixGF r;
  int rank = 0;
  std::vector<int> pivots;
};

// Reduced row echelon form by Gaussian elimination: unit pivots, pivot
// columns cleared above and below, pivot columns strictly increasing.
RrefResult rref(const MatrixGF& m);

MatrixGF mat_mul(const MatrixGF& a, const MatrixGF& b);

// Inverse of a square matrix; throws PreconditionViolation if singular.
MatrixGF inverse(const MatrixGF& m);

}  // namespace qgrass
