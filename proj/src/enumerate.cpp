#include "qgrass/enumerate.hpp"

#include <algorithm>
#include <cmath>

namespace qgrass {

std::size_t& max_enumeration() {
  static std::size_t cap = 8'000'000;
  return cap;
}

namespace {

using detail::RowArith;

void check_vector_guard(const Field& f, int n) {
  // q^n <= 2^24
  double bits = n * std::log2(static_cast<double>(f.q()));
  if (bits > 24.0 + 1e-9)
    throw Error(ErrorCode::TooLarge, "ambient space guard n*log2(q) <= 24 exceeded");
}

void check_count_guard(const QInt& count) {
  if (count > QInt(static_cast<unsigned long long>(max_enumeration())))
    throw Error(ErrorCode::TooLarge,
                "enumeration of " + count.str() + " subspaces exceeds max_enumeration()");
}

// Every r x m RREF matrix whose pivot columns all lie in [0, pivot_limit).
// Pattern loop: choose pivot columns ascending, then run an odometer over the
// free cells (row i, col c) with c > pivot[i], c not a pivot column.
void rref_patterns(const Field& f, int r, int m, int pivot_limit,
                   const std::function<void(const PackedRows&)>& visit) {
  QGRASS_CHECK(r >= 0 && m >= 0 && pivot_limit <= m, "rref_patterns shape");
  if (r == 0) {
    visit(PackedRows{});
    return;
  }
  if (r > pivot_limit) return;
  RowArith ar(f, m);
  std::vector<int> piv(r);
  for (int i = 0; i < r; ++i) piv[i] = i;
  const int q = f.q();
  while (true) {
    // free cells for this pivot pattern
    std::vector<bool> is_piv(m, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < r; ++i)
      for (int c = piv[i] + 1; c < m; ++c)
        if (!is_piv[c]) cells.emplace_back(i, c);

    PackedRows rows(r, 0);
    for (int i = 0; i < r; ++i) rows[i] = ar.set(0, piv[i], 1);
    std::vector<uint8_t> digits(cells.size(), 0);
    while (true) {
      visit(rows);
      size_t pos = 0;
      for (; pos < cells.size(); ++pos) {
        uint8_t d = static_cast<uint8_t>((digits[pos] + 1) % q);
        digits[pos] = d;
        rows[cells[pos].first] = ar.set(rows[cells[pos].first], cells[pos].second, d);
        if (d != 0) break;
      }
      if (pos == cells.size()) break;
    }

    // next pivot combination within [0, pivot_limit)
    int i = r - 1;
    while (i >= 0 && piv[i] == pivot_limit - r + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
}

// Coordinates of the quotient space V/S: reduce a vector by S's rows, then
// read the digits at S's non-pivot columns.
struct QuotientMap {
  const Field* f;
  int n, m;
  const Subspace* s;
  std::vector<int> spiv;   // pivot columns of s
  std::vector<int> npiv;   // non-pivot columns, ascending (quotient coordinates)
  RowArith ar_v, ar_q;

  explicit QuotientMap(const Subspace& sub)
      : f(&sub.field()),
        n(sub.n()),
        m(sub.n() - sub.k()),
        s(&sub),
        spiv(sub.pivots()),
        ar_v(sub.field(), sub.n()),
        ar_q(sub.field(), sub.n() - sub.k()) {
    std::vector<bool> is_piv(n, false);
    for (int c : spiv) is_piv[c] = true;
    for (int c = 0; c < n; ++c)
      if (!is_piv[c]) npiv.push_back(c);
  }

  uint64_t reduce(uint64_t v) const {
    for (int i = 0; i < s->k(); ++i) {
      uint8_t d = ar_v.get(v, spiv[i]);
      if (d) v = ar_v.add_scaled(v, s->row_word(i), f->neg(d));
    }
    return v;
  }
  uint64_t to_coords(uint64_t reduced) const {
    uint64_t out = 0;
    for (int j = 0; j < m; ++j) out = ar_q.set(out, j, ar_v.get(reduced, npiv[j]));
    return out;
  }
  uint64_t lift(uint64_t coords) const {
    uint64_t out = 0;
    for (int j = 0; j < m; ++j) out = ar_v.set(out, npiv[j], ar_q.get(coords, j));
    return out;
  }
};

// Coordinates inside a subspace a: for v in a, the coefficients w.r.t. a's
// RREF basis are v's digits at a's pivot columns.
struct SubCoords {
  const Subspace* a;
  std::vector<int> apiv;
  RowArith ar_v, ar_a;

  explicit SubCoords(const Subspace& sub)
      : a(&sub), apiv(sub.pivots()), ar_v(sub.field(), sub.n()), ar_a(sub.field(), sub.k()) {}

  uint64_t to_coords(uint64_t v) const {
    uint64_t out = 0;
    for (int j = 0; j < a->k(); ++j) out = ar_a.set(out, j, ar_v.get(v, apiv[j]));
    return out;
  }
  uint64_t lift(uint64_t coords) const {
    uint64_t out = 0;
    for (int j = 0; j < a->k(); ++j) {
      uint8_t d = ar_a.get(coords, j);
      if (d) out = ar_v.add_scaled(out, a->row_word(j), d);
    }
    return out;
  }
};

// All b-subspaces B with s0 <= B and B /\ w = s0, for s0 <= w. Works in
// V/s0: pick quotient subspaces meeting the image of w trivially, which after
// a change of basis putting that image in the last coordinates is exactly
// "all pivots inside the first m - w columns".
void extensions_avoiding(const Subspace& s0, const Subspace& w, int b,
                         const std::function<void(Subspace&&)>& visit) {
  const Field& f = s0.field();
  const int n = s0.n();
  const int r = b - s0.k();
  if (r < 0) return;
  if (r == 0) {
    Subspace copy = s0;
    visit(std::move(copy));
    return;
  }
  QuotientMap qm(s0);
  const int m = qm.m;

  std::vector<uint64_t> wbar_rows;
  for (int i = 0; i < w.k(); ++i) wbar_rows.push_back(qm.to_coords(qm.reduce(w.row_word(i))));
  Subspace wbar = Subspace::from_packed(f, m, std::move(wbar_rows));
  const int wd = wbar.k();
  QGRASS_CHECK(wd == w.k() - s0.k(), "quotient image dimension");
  if (r > m - wd) return;

  // change of basis: complement standard vectors first, then wbar's basis
  RowArith ar_q(f, m);
  std::vector<uint64_t> basis;
  std::vector<bool> is_piv(m, false);
  for (int c : wbar.pivots()) is_piv[c] = true;
  for (int c = 0; c < m; ++c)
    if (!is_piv[c]) basis.push_back(ar_q.set(0, c, 1));
  for (int i = 0; i < wd; ++i) basis.push_back(wbar.row_word(i));
  QGRASS_CHECK(static_cast<int>(basis.size()) == m, "change of basis row count");

  rref_patterns(f, r, m, m - wd, [&](const PackedRows& upat) {
    std::vector<uint64_t> brows;
    brows.reserve(s0.k() + r);
    brows.insert(brows.end(), s0.rows().begin(), s0.rows().end());
    for (uint64_t urow : upat) {
      // map through the basis, then lift the quotient vector to V
      uint64_t mapped = 0;
      for (int j = 0; j < m; ++j) {
        uint8_t d = ar_q.get(urow, j);
        if (d) mapped = ar_q.add_scaled(mapped, basis[j], d);
      }
      brows.push_back(qm.lift(mapped));
    }
    Subspace bsub = Subspace::from_packed(f, n, std::move(brows));
    QGRASS_CHECK(bsub.k() == b, "extension dimension");
    visit(std::move(bsub));
  });
}

}  // namespace

SubspaceStream enumerate_k_subspaces(const Field& f, int n, int k) {
  if (k < 0 || k > n)
    throw Error(ErrorCode::PreconditionViolation, "enumerate_k_subspaces requires 0 <= k <= n");
  check_vector_guard(f, n);
  check_count_guard(gauss_binom(n, k, f.q()));
  std::vector<Subspace> items;
  rref_patterns(f, k, n, n,
                [&](const PackedRows& rows) { items.push_back(Subspace::from_canonical(f, n, rows)); });
  std::sort(items.begin(), items.end());
  QGRASS_CHECK(QInt(items.size()) == gauss_binom(n, k, f.q()), "Grassmannian count");
  return SubspaceStream(std::move(items));
}

void visit_superspaces(const Subspace& c, int k, const std::function<void(Subspace&&)>& visit) {
  if (k < c.k()) throw Error(ErrorCode::DimensionOrder, "superspace dimension below dim(C)");
  if (k > c.n())
    throw Error(ErrorCode::PreconditionViolation, "superspace dimension exceeds ambient");
  check_vector_guard(c.field(), c.n());
  check_count_guard(gauss_binom(c.n() - c.k(), k - c.k(), c.q()));
  extensions_avoiding(c, c, k, visit);
}

SubspaceStream enumerate_superspaces(const Subspace& c, int k) {
  std::vector<Subspace> items;
  visit_superspaces(c, k, [&](Subspace&& s) { items.push_back(std::move(s)); });
  std::sort(items.begin(), items.end());
  QGRASS_CHECK(QInt(items.size()) == gauss_binom(c.n() - c.k(), k - c.k(), c.q()),
               "superspace count");
  return SubspaceStream(std::move(items));
}

void visit_profile(const Subspace& a, const Subspace& c, int b, int i,
                   const std::function<void(Subspace&&)>& visit) {
  if (a.q() != c.q() || a.n() != c.n())
    throw Error(ErrorCode::AmbientMismatch, "profile arguments in different ambient spaces");
  check_vector_guard(a.field(), a.n());
  const long n = a.n(), ad = a.k(), bp = c.k();
  const long ip = dim_meet(c, a);
  QInt expected;
  try {
    expected = profile_count(n, ad, b, bp, i, ip, a.q());
  } catch (const Error& e) {
    throw Error(ErrorCode::ProfileInfeasible, e.what());
  }
  check_count_guard(expected);

  // Layer 1: D = B /\ a runs over the i-dim superspaces of c /\ a inside a.
  // Layer 2: B extends c + D avoiding a beyond D.
  Subspace ca = meet(c, a);
  SubCoords coords(a);
  std::vector<uint64_t> ca_rows;
  for (int r = 0; r < ca.k(); ++r) ca_rows.push_back(coords.to_coords(ca.row_word(r)));
  Subspace ca_in_a = Subspace::from_packed(a.field(), a.k(), std::move(ca_rows));
  QGRASS_CHECK(ca_in_a.k() == ca.k(), "subspace coordinate rank");

  extensions_avoiding(ca_in_a, ca_in_a, static_cast<int>(i), [&](Subspace&& dd) {
    std::vector<uint64_t> drows;
    drows.reserve(c.k() + dd.k());
    drows.insert(drows.end(), c.rows().begin(), c.rows().end());
    for (int r = 0; r < dd.k(); ++r) drows.push_back(coords.lift(dd.row_word(r)));
    Subspace s0 = Subspace::from_packed(a.field(), a.n(), std::move(drows));
    QGRASS_CHECK(s0.k() == bp + i - ip, "profile base dimension");
    Subspace w = join(a, s0);
    extensions_avoiding(s0, w, b, visit);
  });
}

SubspaceStream enumerate_profile(const Subspace& a, const Subspace& c, int b, int i) {
  std::vector<Subspace> items;
  visit_profile(a, c, b, i, [&](Subspace&& s) { items.push_back(std::move(s)); });
  std::sort(items.begin(), items.end());
  const long ip = dim_meet(c, a);
  QGRASS_CHECK(QInt(items.size()) == profile_count(a.n(), a.k(), b, c.k(), i, ip, a.q()),
               "profile count");
  return SubspaceStream(std::move(items));
}

}  // namespace qgrass
