#include <doctest.h>

#include <algorithm>
#include <array>

#include <nlohmann/json.hpp>

#include "qgrass/verify.hpp"

using namespace qgrass;

namespace {

SearchProblem desk(int q, int n, int k, int t, SearchMode mode,
                   Anchoring anchor = Anchoring::None) {
  SearchProblem pb;
  pb.q = q;
  pb.n = n;
  pb.k = k;
  pb.t = t;
  pb.mode = mode;
  pb.anchoring = anchor;
  return pb;
}

// Exhaustive reference search: plain canonical subset enumeration with
// incremental feasibility and no bounds, no forcing, no cover tracking.
// Only usable on tiny Grassmannians; exists to cross-check the engine.
struct Brute {
  const std::vector<Subspace>& verts;
  int t;
  SearchMode mode;
  std::vector<std::vector<bool>> confl;
  std::vector<int> cur, degree;
  int best = 0;
  std::vector<std::vector<int>> maxima;

  Brute(const std::vector<Subspace>& v, int t_, SearchMode m) : verts(v), t(t_), mode(m) {
    const int n = static_cast<int>(v.size());
    confl.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (dim_meet(v[i], v[j]) < t) confl[i][j] = confl[j][i] = true;
    degree.assign(n, 0);
  }

  bool has_pair() const {
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j)
        if (confl[cur[i]][cur[j]]) return true;
    return false;
  }

  void record() {
    if (mode == SearchMode::AlmostNotIntersecting && !has_pair()) return;
    int sz = static_cast<int>(cur.size());
    if (sz > best) {
      best = sz;
      maxima.clear();
    }
    if (sz == best) maxima.push_back(cur);
  }

  void run(int from) {
    record();
    for (int x = from; x < static_cast<int>(verts.size()); ++x) {
      std::vector<int> hit;
      for (int m : cur)
        if (confl[m][x]) hit.push_back(m);
      bool ok;
      if (mode == SearchMode::Intersecting) {
        ok = hit.empty();
      } else {
        ok = hit.empty() || (hit.size() == 1 && degree[hit[0]] == 0);
      }
      if (!ok) continue;
      for (int m : hit) ++degree[m];
      degree[x] = static_cast<int>(hit.size());
      cur.push_back(x);
      run(x + 1);
      cur.pop_back();
      for (int m : hit) --degree[m];
      degree[x] = 0;
    }
  }
};

void check_against_brute(int q, int n, int k, int t, SearchMode mode) {
  SubspaceStream verts = enumerate_k_subspaces(Field::of(q), n, k);
  Brute brute(verts.items(), t, mode);
  brute.run(0);
  std::sort(brute.maxima.begin(), brute.maxima.end());

  SearchResult res = solve(desk(q, n, k, t, mode));
  REQUIRE(res.proof_complete);
  CHECK(res.optimum == brute.best);
  REQUIRE(res.maximum_families.size() == brute.maxima.size());
  for (size_t i = 0; i < brute.maxima.size(); ++i) {
    std::vector<Subspace> members;
    for (int v : brute.maxima[i]) members.push_back(verts[v]);
    CHECK(res.maximum_families[i] == Family(Field::of(q), n, k, std::move(members)));
  }
}

}  // namespace

TEST_CASE("engine agrees with the exhaustive reference search") {
  // lines of GF(2)^4 pairwise meet trivially: optimum 1 / 2 / 2 by hand
  check_against_brute(2, 4, 1, 1, SearchMode::Intersecting);
  check_against_brute(2, 4, 1, 1, SearchMode::Almost);
  check_against_brute(2, 4, 1, 1, SearchMode::AlmostNotIntersecting);
  // planes of GF(2)^4 at t = 1: a nontrivial dense instance
  check_against_brute(2, 4, 2, 1, SearchMode::Intersecting);
  check_against_brute(2, 4, 2, 1, SearchMode::Almost);
  check_against_brute(2, 4, 2, 1, SearchMode::AlmostNotIntersecting);
  // t = k: all distinct members conflict
  check_against_brute(2, 4, 2, 2, SearchMode::Almost);
  // q = 3 coverage
  check_against_brute(3, 3, 1, 1, SearchMode::Almost);
  check_against_brute(3, 4, 2, 1, SearchMode::Intersecting);
}

TEST_CASE("degenerate optima at t = k are pairs") {
  SearchResult res = solve(desk(2, 4, 2, 2, SearchMode::Almost));
  CHECK(res.optimum == 2);
  SearchResult res1 = solve(desk(2, 4, 1, 1, SearchMode::Intersecting));
  CHECK(res1.optimum == 1);
  CHECK(res1.maximum_families.size() == 15);
}

TEST_CASE("intersecting optimum at (2,5,2,1) is the star bound") {
  SearchResult res = solve(desk(2, 5, 2, 1, SearchMode::Intersecting));
  CHECK(res.optimum == 15);
  CHECK(res.proof_complete);
  CHECK(res.maximum_families.size() == 31);  // one star per 1-subspace
  for (const Family& fam : res.maximum_families) {
    CHECK(classify(fam, 1).second.verdict == Verdict::TIntersecting);
    CHECK(recognize(fam, 1).tag == FormTag::Star);
  }
  CHECK(res.cover_cap_violations == 0);
}

TEST_CASE("almost optimum at (2,5,2,1): stars again") {
  SearchResult res = solve(desk(2, 5, 2, 1, SearchMode::Almost));
  CHECK(res.optimum == 15);
  CHECK(res.proof_complete);
  CHECK(res.maximum_families.size() == 31);
  for (const Family& fam : res.maximum_families)
    CHECK(recognize(fam, 1).tag == FormTag::Star);
  CHECK(res.cover_cap_violations == 0);
}

TEST_CASE("almost-not-intersecting at (2,5,3,2), anchored") {
  SearchResult res = solve(desk(2, 5, 3, 2, SearchMode::AlmostNotIntersecting,
                                Anchoring::FixBadPair));
  CHECK(res.optimum == 6);
  CHECK(res.proof_complete);
  REQUIRE(res.anchor.has_value());
  CHECK(dim_meet(res.anchor->first, res.anchor->second) == 1);
  CHECK(res.maximum_families.size() > 0);
  for (const Family& fam : res.maximum_families) {
    CHECK(fam.size() == 6);
    CHECK(fam.contains(res.anchor->first));
    CHECK(fam.contains(res.anchor->second));
    auto [cm, fc] = classify(fam, 2);
    CHECK(fc.verdict == Verdict::AlmostOnly);
    CHECK(fc.bad_pairs.size() == 3);  // perfect matching
    CHECK(recognize(fam, 2).tag == FormTag::GForm);
  }
  CHECK(res.cover_cap_violations == 0);
}

TEST_CASE("anchored and unanchored optima agree at (2,5,3,2)") {
  SearchResult anchored = solve(desk(2, 5, 3, 2, SearchMode::AlmostNotIntersecting,
                                     Anchoring::FixBadPair));
  SearchResult full = solve(desk(2, 5, 3, 2, SearchMode::AlmostNotIntersecting));
  CHECK(anchored.optimum == full.optimum);
  CHECK(full.proof_complete);
  // the anchored maxima are exactly the global maxima through the pair
  for (const Family& fam : anchored.maximum_families)
    CHECK(std::find(full.maximum_families.begin(), full.maximum_families.end(), fam) !=
          full.maximum_families.end());
}

TEST_CASE("monotonicity: almost >= intersecting") {
  for (auto [q, n, k, t] : std::vector<std::array<int, 4>>{{2, 5, 2, 1}, {2, 5, 3, 2}}) {
    SearchResult a = solve(desk(q, n, k, t, SearchMode::Almost));
    SearchResult i = solve(desk(q, n, k, t, SearchMode::Intersecting));
    CHECK(a.optimum >= i.optimum);
  }
}

TEST_CASE("soundness: every emitted family passes classify in mode") {
  SearchResult res = solve(desk(2, 5, 3, 2, SearchMode::Almost));
  CHECK(res.proof_complete);
  for (const Family& fam : res.maximum_families) {
    auto v = classify(fam, 2).second.verdict;
    CHECK((v == Verdict::TIntersecting || v == Verdict::AlmostOnly));
  }
}

TEST_CASE("determinism across thread counts") {
  SearchProblem pb = desk(2, 5, 2, 1, SearchMode::Almost);
  pb.limits.threads = 1;
  SearchResult r1 = solve(pb);
  pb.limits.threads = 2;
  SearchResult r2 = solve(pb);
  pb.limits.threads = 8;
  SearchResult r8 = solve(pb);
  CHECK(r1.optimum == r2.optimum);
  CHECK(r1.optimum == r8.optimum);
  CHECK(r1.proof_complete == r2.proof_complete);
  CHECK(r1.maximum_families == r2.maximum_families);
  CHECK(r1.maximum_families == r8.maximum_families);
}

TEST_CASE("warm start does not change the answer") {
  SearchResult cold = solve(desk(2, 5, 2, 1, SearchMode::Almost));
  SearchResult warm = solve(desk(2, 5, 2, 1, SearchMode::Almost), 15);
  CHECK(cold.optimum == warm.optimum);
  CHECK(cold.maximum_families == warm.maximum_families);
}

TEST_CASE("node budget exhaustion is reported, not hidden") {
  SearchProblem pb = desk(2, 5, 2, 1, SearchMode::Almost);
  pb.limits.max_nodes = 50;
  SearchResult res = solve(pb);
  CHECK_FALSE(res.proof_complete);
}

TEST_CASE("vertex guard yields an immediate budget-exhausted result") {
  SearchProblem pb = desk(2, 5, 2, 1, SearchMode::Almost);
  pb.limits.max_vertices = 10;  // Grassmannian has 155
  SearchResult res = solve(pb, 15);
  CHECK_FALSE(res.proof_complete);
  CHECK(res.optimum == 15);  // best-so-far from the seed
  CHECK(res.nodes_expanded == 0);
}

TEST_CASE("fixed members restrict the search") {
  const Field& f2 = Field::of(2);
  Subspace u0 = Subspace::span_std(f2, 5, {0, 1});
  SearchResult res = solve_with_fixed(desk(2, 5, 2, 1, SearchMode::Almost), {u0}, 15);
  CHECK(res.proof_complete);
  CHECK(res.optimum == 15);
  for (const Family& fam : res.maximum_families) CHECK(fam.contains(u0));

  // almost-not with a non-conflicting fixed pair is rejected
  Subspace u1 = Subspace::span_std(f2, 5, {0, 2});
  CHECK_THROWS_AS(
      solve_with_fixed(desk(2, 5, 2, 1, SearchMode::AlmostNotIntersecting), {u0, u1}, 0), Error);
}

TEST_CASE("minimum covers of maximal families are t-intersecting (spot check)") {
  // the maxima at (2,5,3,2) have covering number <= k; their cover sets must
  // pairwise meet in dimension >= t
  SearchResult res = solve(desk(2, 5, 3, 2, SearchMode::AlmostNotIntersecting,
                                Anchoring::FixBadPair));
  CHECK(res.proof_complete);
  for (const Family& fam : res.maximum_families) {
    TauResult tr = tau(fam, 2);
    if (tr.tau > fam.k()) continue;
    for (size_t i = 0; i < tr.min_covers.size(); ++i)
      for (size_t j = i + 1; j < tr.min_covers.size(); ++j)
        CHECK(dim_meet(tr.min_covers[i], tr.min_covers[j]) >= 2);
  }
}

TEST_CASE("verdict: main theorem desk instances") {
  VerdictReport rep = verify_theorem_main(2, 5, 2, 1);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.ran_search);
  CHECK(rep.predicted_size == 15);
  CHECK(rep.found_size == 15);
  CHECK(rep.proof_complete);
  CHECK(rep.structures_match);
  CHECK(rep.forms_found == std::vector<std::string>{"Star"});
  CHECK(rep.cover_cap_violations == 0);

  VerdictReport rep3 = verify_theorem_main(3, 5, 2, 1);
  CHECK(rep3.predicted_size == 40);
  CHECK(rep3.found_size == 40);
  CHECK(rep3.structures_match);

  // n = 2k violates the threshold; without the advisory flag nothing runs
  VerdictReport bad = verify_theorem_main(2, 4, 2, 1);
  CHECK_FALSE(bad.hypothesis_ok);
  CHECK_FALSE(bad.ran_search);
}

TEST_CASE("verdict: main theorem fallback under a tight node budget") {
  SearchLimits lim;
  lim.max_nodes = 3000;  // the unanchored run needs ~22k nodes, the anchored one ~1k
  VerdictReport rep = verify_theorem_main(2, 5, 2, 1, lim);
  CHECK(rep.used_fallback);
  CHECK(rep.proof_complete);
  CHECK(rep.found_size == 15);
  CHECK(rep.structures_match);
  // anchored maxima: exactly the stars through the 1-subspaces of the anchor
  CHECK(rep.maxima_count == 3);
  for (const Family& fam : rep.maxima) CHECK(recognize(fam, 1).tag == FormTag::Star);
}

TEST_CASE("verdict: nontrivial theorem desk instances") {
  VerdictReport rep = verify_theorem_nontrivial(2, 5, 3, 2);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.predicted_size == 6);
  CHECK(rep.found_size == 6);
  CHECK(rep.proof_complete);
  CHECK(rep.structures_match);
  CHECK(rep.forms_found == std::vector<std::string>{"GForm"});

  // at (k,q) = (t+1,3) both forms are admissible and both in fact occur
  VerdictReport rep3 = verify_theorem_nontrivial(3, 5, 3, 2);
  CHECK(rep3.predicted_size == 6);
  CHECK(rep3.found_size == 6);
  CHECK(rep3.structures_match);
  CHECK(rep3.forms_found == std::vector<std::string>{"GForm", "HForm"});
}

TEST_CASE("verdict JSON excludes schedule-dependent counters") {
  VerdictReport rep = verify_theorem_nontrivial(2, 5, 3, 2);
  auto j = rep.to_json();
  CHECK(j.count("nodes_expanded") == 0);
  CHECK(j["found_size"] == 6);
  CHECK(j["theorem"] == "nontrivial");
}
