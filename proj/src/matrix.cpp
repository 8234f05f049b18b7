#include "qgrass/matrix.hpp"

namespace qgrass {

MatrixGF MatrixGF::identity(const Field& f, int n) {
  MatrixGF m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatrixGF MatrixGF::from_rows(const Field& f, const std::vector<std::string>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  MatrixGF m(f, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw Error(ErrorCode::ParseError, "ragged matrix rows");
    for (int j = 0; j < c; ++j) {
      int v = Field::digit_value(rows[i][j]);
      if (v < 0 || v >= f.q()) throw Error(ErrorCode::ParseError, "bad matrix digit");
      m.at(i, j) = static_cast<uint8_t>(v);
    }
  }
  return m;
}

MatrixGF MatrixGF::from_rows(const Field& f, std::initializer_list<std::string> rows) {
  return from_rows(f, std::vector<std::string>(rows));
}

RrefResult rref(const MatrixGF& m) {
  const Field& f = *m.field;
  RrefResult res;
  res.r = m;
  MatrixGF& r = res.r;
  int row = 0;
  for (int col = 0; col < r.cols && row < r.rows; ++col) {
    int piv = -1;
    for (int i = row; i < r.rows; ++i)
      if (r.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < r.cols; ++j) std::swap(r.at(piv, j), r.at(row, j));
    uint8_t inv = f.inv(r.at(row, col));
    for (int j = 0; j < r.cols; ++j) r.at(row, j) = f.mul(r.at(row, j), inv);
    for (int i = 0; i < r.rows; ++i) {
      if (i == row) continue;
      uint8_t c = r.at(i, col);
      if (c == 0) continue;
      for (int j = 0; j < r.cols; ++j)
        r.at(i, j) = f.sub(r.at(i, j), f.mul(c, r.at(row, j)));
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

MatrixGF mat_mul(const MatrixGF& a, const MatrixGF& b) {
  if (a.cols != b.rows || a.field->q() != b.field->q())
    throw Error(ErrorCode::PreconditionViolation, "mat_mul shape mismatch");
  const Field& f = *a.field;
  MatrixGF c(f, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int l = 0; l < a.cols; ++l) {
      uint8_t v = a.at(i, l);
      if (v == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = f.add(c.at(i, j), f.mul(v, b.at(l, j)));
    }
  return c;
}

MatrixGF inverse(const MatrixGF& m) {
  if (m.rows != m.cols) throw Error(ErrorCode::PreconditionViolation, "inverse of non-square");
  const Field& f = *m.field;
  int n = m.rows;
  MatrixGF aug(f, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivots.back() >= n)
    throw Error(ErrorCode::PreconditionViolation, "matrix is singular");
  MatrixGF inv(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = rr.r.at(i, n + j);
  return inv;
}

}  // namespace qgrass
