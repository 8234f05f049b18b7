#pragma once

#include "qgrass/search.hpp"

namespace qgrass {

// MainMax: the maximum almost-t-intersecting families are exactly the stars
// through a t-subspace, of size [n-t, k-t]_q, for k >= t+1 and
// n >= 2k+1+d_{2,q}(1-d_{k,t+1}).
// NontrivialMax: among almost-t-intersecting families that are not
// t-intersecting (t >= 2, k >= t+1, n >= 2k+t+d_{2,q}+d_{k,t+1}(1-2t-d_{2,q}))
// the maxima are H families of size h(n,k,t) when (k,q) != (t+1,2), and
// G families of size 6 when (k,q) is (t+1,2) or (t+1,3).
enum class TheoremId { MainMax, NontrivialMax };

const char* theorem_name(TheoremId id);

struct VerdictReport {
  TheoremId theorem = TheoremId::MainMax;
  long q = 0, n = 0, k = 0, t = 0;

  bool hypothesis_ok = true;
  std::string hypothesis_note;  // which threshold failed, when advisory
  bool ran_search = false;

  QInt predicted_size;
  long found_size = 0;
  bool proof_complete = false;
  bool structures_match = false;
  std::vector<std::string> forms_found;  // sorted unique recognition tags
  std::size_t maxima_count = 0;
  bool used_fallback = false;  // MainMax: anchored-member completion proof
  std::string details;

  std::vector<Family> maxima;  // for family-file output; not serialized

  // Schedule-dependent (excluded from JSON so verdicts compare bytewise
  // across thread counts).
  uint64_t nodes_expanded = 0;
  uint64_t cover_cap_checks = 0;
  uint64_t cover_cap_violations = 0;

  nlohmann::ordered_json to_json() const;
};

// Runs the almost-mode search and checks size and star structure of every
// maximum family. When params violate the hypotheses the report returns
// advisory-flagged; the search still runs only if run_advisory.
VerdictReport verify_theorem_main(long q, long n, long k, long t, const SearchLimits& limits = {},
                                  const std::string& cache_dir = "", bool run_advisory = false);

// Runs the bad-pair-anchored almost-not-intersecting search and checks size
// and the H/G case split.
VerdictReport verify_theorem_nontrivial(long q, long n, long k, long t,
                                        const SearchLimits& limits = {},
                                        const std::string& cache_dir = "",
                                        bool run_advisory = false);

}  // namespace qgrass
