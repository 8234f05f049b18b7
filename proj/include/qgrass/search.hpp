#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "qgrass/constructions.hpp"

namespace qgrass {

// Feasibility predicates over families of k-subspaces:
//   Intersecting          every pair meets in dimension >= t
//   Almost                every member has at most one partner meeting it
//                         in dimension < t (conflict degree <= 1)
//   AlmostNotIntersecting Almost, with at least one conflicting pair
enum class SearchMode { Intersecting, Almost, AlmostNotIntersecting };

// FixBadPair pins U1 = <e_1..e_k> and U2 = the lexicographically least
// k-subspace with dim(U1 /\ U2) = t-1. Sound for the optimum because the
// ambient linear group is transitive on ordered subspace pairs with
// prescribed intersection dimension; validated against the unanchored search
// at desk scale rather than proved in code.
enum class Anchoring { None, FixBadPair };

const char* mode_name(SearchMode m);
std::optional<SearchMode> mode_from_name(const std::string& name);

struct SearchLimits {
  uint64_t max_nodes = 1'000'000'000;
  double max_seconds = 1800.0;
  std::size_t max_vertices = 65536;  // adjacency-matrix guard
  int threads = 0;                   // 0 = available parallelism
};

struct SearchProblem {
  int q = 2, n = 0, k = 0, t = 1;
  SearchMode mode = SearchMode::Almost;
  Anchoring anchoring = Anchoring::None;
  SearchLimits limits;
  std::string cache_dir;  // empty disables the Grassmannian/conflict cache
};

struct SearchResult {
  int optimum = 0;
  // Canonical and deduplicated; under FixBadPair these are the maxima
  // through the anchored pair (equal in size to the global optimum).
  std::vector<Family> maximum_families;
  bool proof_complete = false;
  uint64_t nodes_expanded = 0;  // schedule-dependent; everything else is not

  // Runtime invariant: every feasible family encountered with no k-dim
  // t-cover must obey |F| <= C(2k-2t+2, k-t+1).
  uint64_t cover_cap_checks = 0;
  uint64_t cover_cap_violations = 0;

  std::optional<std::pair<Subspace, Subspace>> anchor;

  // Deterministic fields only unless include_counters.
  nlohmann::ordered_json to_json(bool include_counters = true) const;
};

// Exact branch-and-bound over the canonical subspace order. Deterministic
// optimum / maxima / proof_complete for any thread count.
SearchResult solve(const SearchProblem& problem);

// Warm start with a known-feasible size (from an explicit construction);
// never loosens the search, only strengthens initial pruning.
SearchResult solve(const SearchProblem& problem, int seed_size);

// Search restricted to supersets of the given members (used by FixBadPair
// and by the single-member fallback anchor of the theorem verdicts).
SearchResult solve_with_fixed(const SearchProblem& problem, const std::vector<Subspace>& fixed,
                              int seed_size);

}  // namespace qgrass
