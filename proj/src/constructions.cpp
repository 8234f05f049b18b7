#include "qgrass/constructions.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace qgrass {

Family build_star(const Subspace& e, int k) {
  if (e.k() < 1 || e.k() > k)
    throw Error(ErrorCode::PreconditionViolation, "build_star requires 1 <= dim(E) <= k");
  std::vector<Subspace> members;
  visit_superspaces(e, k, [&](Subspace&& s) { members.push_back(std::move(s)); });
  return Family(e.field(), e.n(), k, std::move(members));
}

Family build_H(const Subspace& u1, const Subspace& u2, const Subspace& e) {
  auto fail = [](const std::string& clause) {
    throw Error(ErrorCode::PreconditionViolation, "build_H: " + clause);
  };
  if (u1.q() != u2.q() || u1.n() != u2.n() || u1.q() != e.q() || u1.n() != e.n())
    fail("arguments share no common ambient space");
  const int k = u1.k(), t = e.k(), n = u1.n();
  if (u2.k() != k) fail("dim(U2) != dim(U1)");
  if (t < 1) fail("dim(E) < 1");
  if (k < t + 1) fail("k < t+1");
  if (!contains(u1, e)) fail("E is not contained in U1");
  Subspace w = meet(u1, u2);
  if (w.k() != t - 1) fail("dim(U1 /\\ U2) != t-1");
  if (!contains(e, w)) fail("U1 /\\ U2 is not contained in E");
  if (n < 2 * k - t + 1) fail("n < 2k-t+1");

  QInt total = h_value(n, k, t, u1.q());
  if (total > QInt(static_cast<unsigned long long>(max_enumeration())))
    throw Error(ErrorCode::TooLarge, "H family of " + total.str() + " members exceeds cap");

  std::vector<Subspace> members;
  members.reserve(static_cast<std::size_t>(total));
  // dim(F /\ U2) = i stratum by stratum; i = k is infeasible (U2 misses E).
  for (int i = t; i <= k - 1; ++i)
    visit_profile(u2, e, k, i, [&](Subspace&& s) { members.push_back(std::move(s)); });
  members.push_back(u1);
  members.push_back(u2);
  return Family(u1.field(), n, k, std::move(members));
}

Family build_G(const Subspace& u1, const Subspace& u2, const Subspace& u3, const Subspace& u4) {
  auto fail = [](const std::string& clause) {
    throw Error(ErrorCode::PreconditionViolation, "build_G: " + clause);
  };
  const Subspace* us[4] = {&u1, &u2, &u3, &u4};
  for (const Subspace* u : us)
    if (u->q() != u1.q() || u->n() != u1.n()) fail("arguments share no common ambient space");
  const int kk = u1.k(), t = kk - 1, n = u1.n();
  if (t < 1) fail("dim(U_i) < 2");
  for (const Subspace* u : us)
    if (u->k() != kk) fail("members must all have dimension t+1");
  Subspace w12 = meet(u1, u2), w34 = meet(u3, u4);
  if (w12.k() != t - 1) fail("dim(U1 /\\ U2) != t-1");
  if (!(w12 == w34)) fail("U1 /\\ U2 != U3 /\\ U4");
  if (dim_meet(u1, u3) != t) fail("dim(U1 /\\ U3) != t");
  if (dim_meet(u1, u4) != t) fail("dim(U1 /\\ U4) != t");
  if (dim_meet(u2, u3) != t) fail("dim(U2 /\\ U3) != t");
  if (dim_meet(u2, u4) != t) fail("dim(U2 /\\ U4) != t");
  if (n < t + 3) fail("n < t+3");

  Subspace d1 = join(meet(u3, u1), meet(u4, u2));
  Subspace d2 = join(meet(u4, u1), meet(u3, u2));
  QGRASS_CHECK(d1.k() == t + 1 && d2.k() == t + 1, "derived G members must have dimension t+1");
  Family fam(u1.field(), n, kk, {u1, u2, u3, u4, d1, d2});
  QGRASS_CHECK(fam.size() == 6, "G must have exactly six members");
  return fam;
}

Subspace canonical_star_center(const Field& f, int n, int t) {
  std::vector<int> cols(t);
  for (int i = 0; i < t; ++i) cols[i] = i;
  return Subspace::span_std(f, n, cols);
}

HInputs canonical_H_inputs(const Field& f, int n, int k, int t) {
  if (!(t >= 1 && k >= t + 1 && n >= 2 * k - t + 1))
    throw Error(ErrorCode::PreconditionViolation, "canonical_H_inputs needs t>=1, k>=t+1, n>=2k-t+1");
  std::vector<int> c1, c2, ce;
  for (int i = 0; i < k; ++i) c1.push_back(i);
  for (int i = 0; i < t; ++i) ce.push_back(i);
  for (int i = 0; i < t - 1; ++i) c2.push_back(i);
  for (int i = k; i <= 2 * k - t; ++i) c2.push_back(i);
  return {Subspace::span_std(f, n, c1), Subspace::span_std(f, n, c2), Subspace::span_std(f, n, ce)};
}

GInputs canonical_G_inputs(const Field& f, int n, int t) {
  if (!(t >= 1 && n >= t + 3))
    throw Error(ErrorCode::PreconditionViolation, "canonical_G_inputs needs t>=1, n>=t+3");
  std::vector<int> w;
  for (int i = 0; i < t - 1; ++i) w.push_back(i);
  auto with = [&](int a, int b) {
    std::vector<int> cols = w;
    cols.push_back(a);
    cols.push_back(b);
    std::sort(cols.begin(), cols.end());
    return Subspace::span_std(f, n, cols);
  };
  return {with(t - 1, t), with(t + 1, t + 2), with(t - 1, t + 1), with(t, t + 2)};
}

const char* form_name(FormTag tag) {
  switch (tag) {
    case FormTag::Star: return "Star";
    case FormTag::HForm: return "HForm";
    case FormTag::GForm: return "GForm";
    case FormTag::Other: return "Other";
  }
  return "?";
}

nlohmann::ordered_json Recognition::to_json() const {
  nlohmann::ordered_json o;
  o["form"] = form_name(tag);
  auto arr = nlohmann::ordered_json::array();
  for (const Subspace& s : witnesses) arr.push_back(s.to_string());
  o["witnesses"] = arr;
  return o;
}

Recognition recognize(const Family& fam, int t) {
  if (fam.size() > 1000000) throw Error(ErrorCode::TooLarge, "recognize capped at 10^6 members");
  if (fam.size() == 0) return {};

  Subspace common = fam[0];
  for (std::size_t i = 1; i < fam.size() && common.k() >= t; ++i) common = meet(common, fam[i]);
  if (common.k() >= t) return {FormTag::Star, {common}};

  auto [cm, fc] = classify(fam, t);
  const int n = fam.n(), k = fam.k();

  // H reproduces only families of exactly h_value members.
  bool h_possible = k >= t + 1 && n >= 2 * k - t + 1 &&
                    QInt(fam.size()) == h_value(n, k, t, fam.q());
  if (h_possible) {
    for (auto [i, j] : fc.bad_pairs) {
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        const Subspace &cu1 = fam[a], &cu2 = fam[b];
        Subspace x = meet(cu1, cu2);
        if (x.k() != t - 1) continue;
        // candidate centers: t-dim superspaces of U1 /\ U2 inside U1
        for (const Subspace& e : enumerate_profile(cu1, x, t, t)) {
          try {
            if (build_H(cu1, cu2, e) == fam) return {FormTag::HForm, {cu1, cu2, e}};
          } catch (const Error&) {
          }
        }
      }
    }
  }

  if (fam.size() == 6 && k == t + 1) {
    for (auto [i1, i2] : fc.bad_pairs)
      for (auto [i3, i4] : fc.bad_pairs) {
        std::vector<int> ids = {i1, i2, i3, i4};
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) continue;
        try {
          if (build_G(fam[i1], fam[i2], fam[i3], fam[i4]) == fam)
            return {FormTag::GForm, {fam[i1], fam[i2], fam[i3], fam[i4]}};
        } catch (const Error&) {
        }
      }
  }
  return {};
}

bool rigidity_check(const Subspace& u1, const Subspace& u2, const Subspace& u3, int x1, int x2,
                    int x3) {
  auto fail = [](const std::string& clause) {
    throw Error(ErrorCode::HypothesisViolation, "rigidity_check: " + clause);
  };
  if (x1 < 0 || x2 < 0 || x3 < 0) fail("x1, x2, x3 must be non-negative");
  if (dim_meet(u3, u1) < x1) fail("dim(U3 /\\ U1) >= x1 violated");
  if (dim_meet(u3, u2) < x2) fail("dim(U3 /\\ U2) >= x2 violated");
  if (dim_meet(u1, u2) > x3) fail("dim(U1 /\\ U2) <= x3 violated");
  if (x1 + x2 - x3 != u3.k()) fail("x1 + x2 - x3 = dim(U3) violated");

  Subspace m31 = meet(u3, u1), m32 = meet(u3, u2), m12 = meet(u1, u2);
  return m31.k() == x1 && m32.k() == x2 && m12.k() == x3 && contains(u3, m12) &&
         join(m31, m32) == u3;
}

bool modular_check(const Subspace& u1, const Subspace& u2, const Subspace& u3, const Subspace& u4) {
  auto fail = [](const std::string& clause) {
    throw Error(ErrorCode::HypothesisViolation, "modular_check: " + clause);
  };
  Subspace m12 = meet(u1, u2);
  for (const Subspace* uj : {&u3, &u4}) {
    if (!contains(*uj, m12)) fail("U1 /\\ U2 <= Uj violated");
    if (!(join(meet(*uj, u1), meet(*uj, u2)) == *uj)) fail("Uj = Uj /\\ U1 + Uj /\\ U2 violated");
  }
  Subspace m34 = meet(u3, u4);
  return join(meet(m34, u1), meet(m34, u2)) == m34;
}

// --------------------------------------------------------------------------
// samplers

namespace {

long rand_below(std::mt19937_64& rng, long m) { return m <= 1 ? 0 : static_cast<long>(rng() % m); }

uint64_t random_vector(std::mt19937_64& rng, const detail::RowArith& ar) {
  uint64_t v = 0;
  for (int c = 0; c < ar.n; ++c)
    v = ar.set(v, c, static_cast<uint8_t>(rand_below(rng, ar.f->q())));
  return v;
}

Subspace random_subspace(std::mt19937_64& rng, const Field& f, int n, int d) {
  detail::RowArith ar(f, n);
  for (;;) {
    std::vector<uint64_t> rows;
    for (int i = 0; i < d; ++i) rows.push_back(random_vector(rng, ar));
    Subspace s = Subspace::from_packed(f, n, std::move(rows));
    if (s.k() == d) return s;
  }
}

// Random d-dim subspace with base <= s <= top (base must lie inside top).
Subspace random_between(std::mt19937_64& rng, const Subspace& top, const Subspace& base, int d) {
  detail::RowArith ar_c(top.field(), top.k());
  for (;;) {
    std::vector<uint64_t> extra;
    for (int i = 0; i < d - base.k(); ++i) extra.push_back(random_vector(rng, ar_c));
    Subspace coords_sub = Subspace::from_packed(top.field(), top.k(), std::move(extra));
    Subspace s = join(base, lift_through(top, coords_sub));
    if (s.k() == d) return s;
  }
}

}  // namespace

RigidityInstance sample_rigidity_instance(std::mt19937_64& rng, const Field& f, int n) {
  for (;;) {
    int d3 = static_cast<int>(rand_below(rng, n + 1));
    int x1 = static_cast<int>(rand_below(rng, d3 + 1));
    int x2 = d3 - x1 + static_cast<int>(rand_below(rng, x1 + 1));
    int x3 = x1 + x2 - d3;
    Subspace u3 = random_subspace(rng, f, n, d3);
    Subspace zero = Subspace::zero(f, n);
    Subspace a = random_between(rng, u3, zero, x1);
    Subspace b = random_between(rng, u3, zero, x2);
    if (!(join(a, b) == u3)) continue;  // need A + B = U3 so dim(A /\ B) = x3
    int r1 = static_cast<int>(rand_below(rng, 3));
    int r2 = static_cast<int>(rand_below(rng, 3));
    Subspace u1 = join(a, random_subspace(rng, f, n, r1));
    Subspace u2 = join(b, random_subspace(rng, f, n, r2));
    if (dim_meet(u1, u2) != x3) continue;
    if (dim_meet(u3, u1) < x1 || dim_meet(u3, u2) < x2) continue;  // cannot happen; belt
    return {std::move(u1), std::move(u2), std::move(u3), x1, x2, x3};
  }
}

ModularInstance sample_modular_instance(std::mt19937_64& rng, const Field& f, int n) {
  int d1 = 1 + static_cast<int>(rand_below(rng, n));
  int d2 = 1 + static_cast<int>(rand_below(rng, n));
  Subspace u1 = random_subspace(rng, f, n, d1);
  Subspace u2 = random_subspace(rng, f, n, d2);
  Subspace w = meet(u1, u2);
  auto part = [&]() {
    int da = w.k() + static_cast<int>(rand_below(rng, u1.k() - w.k() + 1));
    int db = static_cast<int>(rand_below(rng, u2.k() + 1));
    Subspace aj = random_between(rng, u1, w, da);
    Subspace bj = random_between(rng, u2, Subspace::zero(f, n), db);
    return join(aj, bj);
  };
  Subspace u3 = part(), u4 = part();
  return {std::move(u1), std::move(u2), std::move(u3), std::move(u4)};
}

}  // namespace qgrass
