#include "qgrass/subspace.hpp"

#include <array>

namespace qgrass {

namespace detail {

int rank_packed(std::span<uint64_t> rows, const RowArith& ar) {
  std::array<uint64_t, 64> piv{};
  std::array<bool, 64> has{};
  int rank = 0;
  for (uint64_t r : rows) {
    while (r) {
      int c = ar.lead(r);
      if (has[c]) {
        r = ar.add_scaled(r, piv[c], ar.f->neg(ar.get(r, c)));
      } else {
        has[c] = true;
        piv[c] = ar.scale(r, ar.f->inv(ar.get(r, c)));
        ++rank;
        break;
      }
    }
  }
  return rank;
}

std::vector<int> rref_packed(std::vector<uint64_t>& rows, const RowArith& ar) {
  std::array<uint64_t, 64> piv{};
  std::array<bool, 64> has{};
  for (uint64_t r : rows) {
    while (r) {
      int c = ar.lead(r);
      if (has[c]) {
        r = ar.add_scaled(r, piv[c], ar.f->neg(ar.get(r, c)));
      } else {
        has[c] = true;
        piv[c] = ar.scale(r, ar.f->inv(ar.get(r, c)));
        break;
      }
    }
  }
  std::vector<int> cols;
  for (int c = 0; c < ar.n; ++c)
    if (has[c]) cols.push_back(c);
  // clear pivot columns in the rows whose own pivot lies further left
  for (size_t idx = 0; idx < cols.size(); ++idx) {
    int c = cols[idx];
    for (size_t other = 0; other < idx; ++other) {
      int oc = cols[other];
      uint8_t d = ar.get(piv[oc], c);
      if (d) piv[oc] = ar.add_scaled(piv[oc], piv[c], ar.f->neg(d));
    }
  }
  rows.clear();
  for (int c : cols) rows.push_back(piv[c]);
  return cols;
}

}  // namespace detail

namespace {

void check_shape(const Field& f, int n) {
  if (n < 0 || n > detail::RowArith::max_cols(f.q()))
    throw Error(ErrorCode::TooLarge,
                "ambient dimension " + std::to_string(n) + " exceeds packed row capacity for q=" +
                    std::to_string(f.q()));
}

bool is_canonical(const Field& f, int n, const PackedRows& rows) {
  detail::RowArith ar(f, n);
  int prev = -1;
  for (size_t r = 0; r < rows.size(); ++r) {
    int c = ar.lead(rows[r]);
    if (c >= n || c <= prev) return false;
    if (ar.get(rows[r], c) != 1) return false;
    for (size_t r2 = 0; r2 < rows.size(); ++r2)
      if (r2 != r && ar.get(rows[r2], c) != 0) return false;
    prev = c;
  }
  return true;
}

}  // namespace

Subspace Subspace::zero(const Field& f, int n) {
  check_shape(f, n);
  Subspace s;
  s.field_ = &f;
  s.n_ = static_cast<uint8_t>(n);
  return s;
}

Subspace Subspace::full(const Field& f, int n) {
  std::vector<int> cols(n);
  for (int i = 0; i < n; ++i) cols[i] = i;
  return span_std(f, n, cols);
}

Subspace Subspace::span_std(const Field& f, int n, const std::vector<int>& cols) {
  check_shape(f, n);
  detail::RowArith ar(f, n);
  PackedRows rows;
  int prev = -1;
  for (int c : cols) {
    QGRASS_CHECK(c > prev && c < n, "span_std columns must be ascending and in range");
    rows.push_back(ar.set(0, c, 1));
    prev = c;
  }
  Subspace s;
  s.field_ = &f;
  s.n_ = static_cast<uint8_t>(n);
  s.rows_ = std::move(rows);
  return s;
}

Subspace Subspace::from_packed(const Field& f, int n, std::vector<uint64_t> rows) {
  check_shape(f, n);
  detail::RowArith ar(f, n);
  detail::rref_packed(rows, ar);
  Subspace s;
  s.field_ = &f;
  s.n_ = static_cast<uint8_t>(n);
  s.rows_.assign(rows.begin(), rows.end());
  return s;
}

Subspace Subspace::from_matrix(const MatrixGF& m) {
  check_shape(*m.field, m.cols);
  detail::RowArith ar(*m.field, m.cols);
  std::vector<uint64_t> rows(m.rows, 0);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) rows[r] = ar.set(rows[r], c, m.at(r, c));
  return from_packed(*m.field, m.cols, std::move(rows));
}

Subspace Subspace::from_canonical(const Field& f, int n, PackedRows rows) {
  check_shape(f, n);
  QGRASS_CHECK(is_canonical(f, n, rows), "rows are not canonical RREF");
  Subspace s;
  s.field_ = &f;
  s.n_ = static_cast<uint8_t>(n);
  s.rows_ = std::move(rows);
  return s;
}

std::vector<int> Subspace::pivots() const {
  detail::RowArith ar(*field_, n_);
  std::vector<int> p;
  p.reserve(rows_.size());
  for (uint64_t r : rows_) p.push_back(ar.lead(r));
  return p;
}

MatrixGF Subspace::basis_matrix() const {
  MatrixGF m(*field_, k(), n_);
  for (int r = 0; r < k(); ++r)
    for (int c = 0; c < n_; ++c) m.at(r, c) = entry(r, c);
  return m;
}

std::string Subspace::to_string() const {
  std::string out;
  for (int r = 0; r < k(); ++r) {
    if (r) out += '|';
    for (int c = 0; c < n_; ++c) out += Field::digit(entry(r, c));
  }
  return out;
}

Subspace Subspace::parse(const Field& f, int n, std::string_view text) {
  check_shape(f, n);
  detail::RowArith ar(f, n);
  PackedRows rows;
  if (!text.empty()) {
    size_t pos = 0;
    while (true) {
      size_t bar = text.find('|', pos);
      std::string_view tok = text.substr(pos, bar == std::string_view::npos ? bar : bar - pos);
      if (static_cast<int>(tok.size()) != n)
        throw Error(ErrorCode::ParseError, "subspace row has wrong length");
      uint64_t row = 0;
      for (int c = 0; c < n; ++c) {
        int v = Field::digit_value(tok[c]);
        if (v < 0 || v >= f.q()) throw Error(ErrorCode::ParseError, "bad subspace digit");
        row = ar.set(row, c, static_cast<uint8_t>(v));
      }
      rows.push_back(row);
      if (bar == std::string_view::npos) break;
      pos = bar + 1;
    }
  }
  if (!is_canonical(f, n, rows))
    throw Error(ErrorCode::ParseError, "subspace rows are not canonical RREF");
  Subspace s;
  s.field_ = &f;
  s.n_ = static_cast<uint8_t>(n);
  s.rows_ = std::move(rows);
  return s;
}

namespace {

void check_ambient(const Subspace& a, const Subspace& b) {
  if (a.q() != b.q() || a.n() != b.n())
    throw Error(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
}

}  // namespace

Subspace join(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  std::vector<uint64_t> rows;
  rows.reserve(a.k() + b.k());
  rows.insert(rows.end(), a.rows().begin(), a.rows().end());
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::from_packed(a.field(), a.n(), std::move(rows));
}

int dim_meet(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  std::array<uint64_t, 128> buf;
  int m = 0;
  for (uint64_t r : a.rows()) buf[m++] = r;
  for (uint64_t r : b.rows()) buf[m++] = r;
  detail::RowArith ar(a.field(), a.n());
  int rank = detail::rank_packed(std::span<uint64_t>(buf.data(), m), ar);
  return a.k() + b.k() - rank;
}

// Zassenhaus: reduce [A|A; B|0]; rows whose left half vanishes carry a basis
// of the intersection in their right half.
Subspace meet(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  const Field& f = a.field();
  const int n = a.n();
  MatrixGF m(f, a.k() + b.k(), 2 * n);
  for (int r = 0; r < a.k(); ++r)
    for (int c = 0; c < n; ++c) {
      m.at(r, c) = a.entry(r, c);
      m.at(r, n + c) = a.entry(r, c);
    }
  for (int r = 0; r < b.k(); ++r)
    for (int c = 0; c < n; ++c) m.at(a.k() + r, c) = b.entry(r, c);
  RrefResult rr = rref(m);
  detail::RowArith ar(f, n);
  std::vector<uint64_t> packed;
  for (int r = 0; r < rr.rank; ++r) {
    bool left_zero = true;
    for (int c = 0; c < n && left_zero; ++c) left_zero = rr.r.at(r, c) == 0;
    if (!left_zero) continue;
    uint64_t row = 0;
    for (int c = 0; c < n; ++c) row = ar.set(row, c, rr.r.at(r, n + c));
    packed.push_back(row);
  }
  return Subspace::from_packed(f, n, std::move(packed));
}

bool contains(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  return dim_meet(a, b) == b.k();
}

Subspace lift_through(const Subspace& a, const Subspace& coords) {
  QGRASS_CHECK(coords.n() == a.k() && coords.q() == a.q(), "lift_through coordinate shape");
  detail::RowArith ar_a(a.field(), a.n());
  detail::RowArith ar_c(a.field(), a.k());
  std::vector<uint64_t> rows;
  rows.reserve(coords.k());
  for (int r = 0; r < coords.k(); ++r) {
    uint64_t out = 0;
    for (int j = 0; j < a.k(); ++j) {
      uint8_t d = ar_c.get(coords.row_word(r), j);
      if (d) out = ar_a.add_scaled(out, a.row_word(j), d);
    }
    rows.push_back(out);
  }
  return Subspace::from_packed(a.field(), a.n(), std::move(rows));
}

}  // namespace qgrass
