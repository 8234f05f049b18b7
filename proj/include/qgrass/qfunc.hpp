#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qgrass/error.hpp"
#include "qgrass/qint.hpp"

namespace qgrass {

// Gaussian binomial coefficient [n k]_q: the number of k-dimensional
// subspaces of an n-dimensional space over GF(q). Defined as 0 when k < 0 or
// k > n. Computed as the interleaved product
//   prod_{i=1..k} (q^{n-k+i} - 1) / (q^i - 1)
// multiplying before dividing at each index, where every division is exact.
QInt gauss_binom(long n, long k, long q);

// f(n,k,t,x) = [x t][k-t+1 1]^{x-t}[n-x k-x] + [x t] * sum_{i=0}^{x-t-1} [k-t+1 1]^i
QInt f_value(long n, long k, long t, long x, long q);

// g(n,k,t,x) = [x-t 1][n-t-1 k-t-1]
//            + q^{x-t}[k-x+1 1][k-t+1 1][n-t-2 k-t-2]
//            + q^{x-t}[k-x+1 1]
//            + q^{x-t+1}[t 1][k-t 1][n-x k-x]
//            + 2
QInt g_value(long n, long k, long t, long x, long q);

// h(n,k,t) = [n-t k-t] - q^{(k-t+1)(k-t)}[n-k-1 k-t] + 2
// (the size of the H construction; equals q+3 when k = t+1).
QInt h_value(long n, long k, long t, long q);

// Number of b-subspaces B with C <= B and dim(B /\ A) = i, where dim A = a,
// dim C = b', dim(C /\ A) = i':
//   q^{(a-i)((b-i)-(b'-i'))} [n-a-(b'-i') choose (b-i)-(b'-i')] [a-i' choose i-i']
// Requires 0 <= i' <= i <= a and 0 <= b'-i' <= b-i <= n-a; throws
// HypothesisViolation naming the failed inequality otherwise.
QInt profile_count(long n, long a, long b, long bp, long i, long ip, long q);

// ---------------------------------------------------------------------------
// Inequality checks
// ---------------------------------------------------------------------------

enum class LemmaId { L21i, L21ii, L21iii, L21iv, L22i, L22ii, L23, L24, L26 };

const char* lemma_name(LemmaId id);
std::optional<LemmaId> lemma_from_name(const std::string& name);

// Parameter tuple; -1 marks "not applicable" for the lemma at hand.
struct LemmaParams {
  long n = -1, k = -1, t = -1, x = -1, i = -1, j = -1, q = -1;

  auto tie() const { return std::tie(n, k, t, x, i, j, q); }
  bool operator<(const LemmaParams& o) const { return tie() < o.tie(); }
  bool operator==(const LemmaParams& o) const { return tie() == o.tie(); }
};

struct CheckReport {
  LemmaId lemma;
  LemmaParams params;
  bool holds = false;
  // True when params sit outside the lemma's stated hypotheses; the check is
  // still evaluated but carries no claim.
  bool advisory = false;
  Ratio lhs, rhs;
  std::string witness;  // set when !holds: which comparison failed

  nlohmann::ordered_json to_json() const;  // one object per report (JSONL-friendly)
};

// Evaluates the named inequality at params with exact cross-multiplied
// comparisons. Out-of-hypothesis params yield an advisory report.
CheckReport check_inequality(LemmaId id, const LemmaParams& params);

// Grid sweep ranges; defaults mirror the certificate region the acceptance
// suite pins down.
struct LemmaGrid {
  std::vector<long> qs = {2, 3, 4, 5};
  long n_max = 40;   // L21*/L22*
  long t_max = 4;    // L23/L24
  long span_k = 0;   // extra k beyond the per-lemma default maximum
  long span_n = 0;   // extra n beyond the per-lemma default maximum
};

// Runs the lemma's grid, visiting every in-hypothesis report in parameter
// tuple order. Streaming: the L21iv grid alone has millions of checks.
void sweep_lemma(LemmaId id, const LemmaGrid& grid,
                 const std::function<void(const CheckReport&)>& visit);

// Materialized convenience wrapper; only sensible for the small grids.
std::vector<CheckReport> sweep_lemma(LemmaId id, const LemmaGrid& grid = {});

}  // namespace qgrass
