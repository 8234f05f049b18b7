#include <doctest.h>

#include <sstream>

#include "qgrass/constructions.hpp"

using namespace qgrass;

TEST_CASE("family construction normalizes") {
  const Field& f2 = Field::of(2);
  Subspace a = Subspace::span_std(f2, 4, {0, 1});
  Subspace b = Subspace::span_std(f2, 4, {2, 3});
  Family fam(f2, 4, 2, {b, a, b});
  CHECK(fam.size() == 2);
  CHECK(fam[0] < fam[1]);
  CHECK(fam.contains(a));

  CHECK_THROWS_AS(Family(f2, 4, 2, {Subspace::span_std(f2, 4, {0})}), Error);
  CHECK_THROWS_AS(Family(f2, 4, 2, {Subspace::span_std(f2, 5, {0, 1})}), Error);
}

TEST_CASE("family file round trip and strictness") {
  const Field& f2 = Field::of(2);
  Family fam = build_star(Subspace::span_std(f2, 5, {0}), 2);
  std::ostringstream os;
  fam.write(os);
  std::istringstream is(os.str());
  Family back = Family::read(is);
  CHECK(back == fam);

  std::istringstream bad_header("n=4 k=2\n1000|0100\n");
  CHECK_THROWS_AS(Family::read(bad_header), Error);
  std::istringstream unsorted("q=2 n=4 k=2\n1000|0100\n0100|0010\n");
  CHECK_THROWS_AS(Family::read(unsorted), Error);
  std::istringstream dup("q=2 n=4 k=2\n1000|0100\n1000|0100\n");
  CHECK_THROWS_AS(Family::read(dup), Error);
  std::istringstream noncanon("q=2 n=4 k=2\n1100|0110\n");
  CHECK_THROWS_AS(Family::read(noncanon), Error);
  std::istringstream wrongdim("q=2 n=4 k=2\n1000\n");
  CHECK_THROWS_AS(Family::read(wrongdim), Error);

  // zero-dimensional members serialize as one empty line
  Family zero(f2, 4, 0, {Subspace::zero(f2, 4)});
  std::ostringstream zs;
  zero.write(zs);
  CHECK(zs.str() == "q=2 n=4 k=0\n\n");
  std::istringstream zin(zs.str());
  CHECK(Family::read(zin) == zero);
}

TEST_CASE("classify") {
  const Field& f2 = Field::of(2);

  Family star = build_star(Subspace::span_std(f2, 5, {0, 1}), 3);
  auto [cm1, fc1] = classify(star, 2);
  CHECK(fc1.verdict == Verdict::TIntersecting);
  CHECK(fc1.bad_pairs.empty());
  CHECK(cm1.max_degree == 0);

  HInputs hi = canonical_H_inputs(f2, 7, 3, 2);
  Family h = build_H(hi.u1, hi.u2, hi.e);
  auto [cm2, fc2] = classify(h, 2);
  CHECK(fc2.verdict == Verdict::AlmostOnly);
  CHECK(fc2.bad_pairs.size() == 1);
  auto [i, j] = fc2.bad_pairs[0];
  CHECK(((h[i] == hi.u1 && h[j] == hi.u2) || (h[i] == hi.u2 && h[j] == hi.u1)));

  // three pairwise-disjoint planes: every member has two bad partners at t=1
  Family disjoint(f2, 6, 2,
                  {Subspace::span_std(f2, 6, {0, 1}), Subspace::span_std(f2, 6, {2, 3}),
                   Subspace::span_std(f2, 6, {4, 5})});
  auto [cm3, fc3] = classify(disjoint, 1);
  CHECK(fc3.verdict == Verdict::NotAlmost);
  CHECK(cm3.max_degree == 2);

  // empty family is vacuously t-intersecting
  Family empty(f2, 4, 2, {});
  CHECK(classify(empty, 1).second.verdict == Verdict::TIntersecting);
}

TEST_CASE("is_t_cover") {
  const Field& f2 = Field::of(2);
  HInputs hi = canonical_H_inputs(f2, 7, 3, 2);
  Family h = build_H(hi.u1, hi.u2, hi.e);
  CHECK(is_t_cover(Subspace::full(f2, 7), h, 2));
  // the center E misses U2 (their meet is the (t-1)-dim U1 /\ U2)
  CHECK_FALSE(is_t_cover(hi.e, h, 2));

  Family star = build_star(hi.e, 3);
  CHECK(is_t_cover(hi.e, star, 2));
}

TEST_CASE("tau") {
  const Field& f2 = Field::of(2);

  Subspace e = Subspace::span_std(f2, 5, {0});
  Family star = build_star(e, 2);
  TauResult tr = tau(star, 1);
  CHECK(tr.tau == 1);
  CHECK(std::find(tr.min_covers.begin(), tr.min_covers.end(), e) != tr.min_covers.end());

  // single-member family: all t-subspaces of the member cover it
  Subspace u = Subspace::span_std(f2, 5, {0, 1, 2});
  Family single(f2, 5, 3, {u});
  TauResult ts = tau(single, 2);
  CHECK(ts.tau == 2);
  CHECK(QInt(ts.min_covers.size()) == gauss_binom(3, 2, 2));
  for (const Subspace& w : ts.min_covers) CHECK(contains(u, w));

  HInputs hi = canonical_H_inputs(f2, 7, 3, 2);
  Family h = build_H(hi.u1, hi.u2, hi.e);
  CHECK(tau(h, 2).tau == 3);  // t + 1

  Family empty(f2, 4, 2, {});
  CHECK_THROWS_AS(tau(empty, 1), Error);
}
