#include <doctest.h>

#include <algorithm>

#include "qgrass/enumerate.hpp"

using namespace qgrass;

namespace {

// filtering oracle, deliberately naive: walk the whole Grassmannian
std::vector<Subspace> filter_superspaces(const Subspace& c, int k) {
  std::vector<Subspace> out;
  for (const Subspace& s : enumerate_k_subspaces(c.field(), c.n(), k))
    if (contains(s, c)) out.push_back(s);
  return out;
}

std::vector<Subspace> filter_profile(const Subspace& a, const Subspace& c, int b, int i) {
  std::vector<Subspace> out;
  for (const Subspace& s : enumerate_k_subspaces(a.field(), a.n(), b))
    if (contains(s, c) && dim_meet(s, a) == i) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("Grassmannian counts and order") {
  const Field& f2 = Field::of(2);
  SubspaceStream s41 = enumerate_k_subspaces(f2, 4, 1);
  CHECK(s41.size() == 15);
  SubspaceStream s42 = enumerate_k_subspaces(f2, 4, 2);
  CHECK(s42.size() == 35);
  CHECK(enumerate_k_subspaces(f2, 5, 2).size() == 155);

  // strictly ascending in the serialized order, no duplicates
  for (size_t i = 1; i < s42.size(); ++i) {
    CHECK(s42[i - 1] < s42[i]);
    CHECK(s42[i - 1].to_string() < s42[i].to_string());
  }
  // restartable: a second enumeration is identical
  SubspaceStream again = enumerate_k_subspaces(f2, 4, 2);
  CHECK(again.items() == s42.items());

  CHECK(enumerate_k_subspaces(f2, 4, 0).size() == 1);
  CHECK(enumerate_k_subspaces(f2, 4, 4).size() == 1);
}

TEST_CASE("superspaces") {
  const Field& f2 = Field::of(2);
  Subspace c = Subspace::span_std(f2, 4, {0});
  SubspaceStream sup = enumerate_superspaces(c, 2);
  CHECK(sup.size() == 7);  // [3 1]_2
  auto oracle = filter_superspaces(c, 2);
  CHECK(sup.items() == oracle);

  // full space: the only superspace of itself
  Subspace full = Subspace::full(f2, 4);
  SubspaceStream self = enumerate_superspaces(full, 4);
  CHECK(self.size() == 1);
  CHECK(self[0] == full);

  // zero subspace: superspaces are the whole Grassmannian
  Subspace zero = Subspace::zero(f2, 4);
  CHECK(enumerate_superspaces(zero, 2).items() == enumerate_k_subspaces(f2, 4, 2).items());

  CHECK_THROWS_AS(enumerate_superspaces(Subspace::span_std(f2, 4, {0, 1}), 1), Error);
  try {
    enumerate_superspaces(Subspace::span_std(f2, 4, {0, 1}), 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionOrder);
  }
}

TEST_CASE("profile examples") {
  const Field& f2 = Field::of(2);
  Subspace a = Subspace::span_std(f2, 4, {0, 1});
  Subspace zero = Subspace::zero(f2, 4);

  SubspaceStream p = enumerate_profile(a, zero, 2, 1);
  CHECK(p.size() == 18);
  CHECK(p.items() == filter_profile(a, zero, 2, 1));

  SubspaceStream exact = enumerate_profile(a, zero, 2, 2);
  CHECK(exact.size() == 1);
  CHECK(exact[0] == a);

  SubspaceStream self = enumerate_profile(a, a, 2, 2);
  CHECK(self.size() == 1);
  CHECK(self[0] == a);

  CHECK_THROWS_AS(enumerate_profile(a, zero, 4, 1), Error);  // b-i > n-a
  try {
    enumerate_profile(a, zero, 4, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProfileInfeasible);
  }
}

TEST_CASE("profile equals the filtering oracle exhaustively at n = 4") {
  for (int q : {2, 3}) {
    const Field& f = Field::of(q);
    const int n = 4;
    for (int adim = 0; adim <= n; ++adim) {
      // representative A: the span of the first adim coordinates
      std::vector<int> acols(adim);
      for (int i = 0; i < adim; ++i) acols[i] = i;
      Subspace a = Subspace::span_std(f, n, acols);
      for (int ip = 0; ip <= adim; ++ip)
        for (int dprime = 0; dprime + adim <= n; ++dprime) {
          // representative C: ip columns inside A, dprime outside
          std::vector<int> ccols;
          for (int i = 0; i < ip; ++i) ccols.push_back(i);
          for (int i = 0; i < dprime; ++i) ccols.push_back(adim + i);
          Subspace c = Subspace::span_std(f, n, ccols);
          REQUIRE(dim_meet(c, a) == ip);
          for (int i = ip; i <= adim; ++i)
            for (int d = dprime; d <= n - adim; ++d) {
              int b = i + d;
              SubspaceStream got = enumerate_profile(a, c, b, i);
              CHECK(QInt(got.size()) == profile_count(n, adim, b, c.k(), i, ip, q));
              CHECK(got.items() == filter_profile(a, c, b, i));
            }
        }
    }
  }
}

TEST_CASE("enumeration guards") {
  const Field& f2 = Field::of(2);
  CHECK_THROWS_AS(enumerate_k_subspaces(f2, 25, 2), Error);  // q^n guard
  const Field& f5 = Field::of(5);
  CHECK_THROWS_AS(enumerate_k_subspaces(f5, 11, 2), Error);

  std::size_t saved = max_enumeration();
  max_enumeration() = 100;
  CHECK_THROWS_AS(enumerate_k_subspaces(f2, 5, 2), Error);  // 155 > 100
  max_enumeration() = saved;
  CHECK(enumerate_k_subspaces(f2, 5, 2).size() == 155);
}
