#include "qgrass/verify.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include <nlohmann/json.hpp>

namespace qgrass {

const char* theorem_name(TheoremId id) {
  return id == TheoremId::MainMax ? "main" : "nontrivial";
}

namespace {

long delta(long a, long b) { return a == b ? 1 : 0; }

int size_as_seed(const QInt& v) {
  QGRASS_CHECK(v <= QInt(INT_MAX / 2), "construction size exceeds search range");
  return static_cast<int>(v);
}

void absorb_counters(VerdictReport& rep, const SearchResult& res) {
  rep.nodes_expanded += res.nodes_expanded;
  rep.cover_cap_checks += res.cover_cap_checks;
  rep.cover_cap_violations += res.cover_cap_violations;
}

// Recognize every maximum family; returns the sorted set of form tags.
std::vector<std::string> recognize_all(const std::vector<Family>& maxima, int t) {
  std::set<std::string> forms;
  for (const Family& fam : maxima) forms.insert(form_name(recognize(fam, t).tag));
  return {forms.begin(), forms.end()};
}

}  // namespace

VerdictReport verify_theorem_main(long q, long n, long k, long t, const SearchLimits& limits,
                                  const std::string& cache_dir, bool run_advisory) {
  VerdictReport rep;
  rep.theorem = TheoremId::MainMax;
  rep.q = q;
  rep.n = n;
  rep.k = k;
  rep.t = t;

  if (!(t >= 1 && k >= t + 1)) {
    rep.hypothesis_ok = false;
    rep.hypothesis_note = "requires k >= t+1 >= 2";
  } else if (n < 2 * k + 1 + delta(2, q) * (1 - delta(k, t + 1))) {
    rep.hypothesis_ok = false;
    rep.hypothesis_note = "requires n >= 2k+1+d_{2,q}(1-d_{k,t+1})";
  }
  if (!rep.hypothesis_ok && !run_advisory) return rep;
  if (!(t >= 1 && k >= t + 1 && k <= n)) return rep;  // not even evaluable

  rep.predicted_size = gauss_binom(n - t, k - t, q);
  const Field& f = Field::of(static_cast<int>(q));

  // The star through the canonical t-subspace realizes the predicted size.
  Family star = build_star(canonical_star_center(f, static_cast<int>(n), static_cast<int>(t)),
                           static_cast<int>(k));
  QGRASS_CHECK(QInt(star.size()) == rep.predicted_size, "star size disagrees with [n-t k-t]");
  QGRASS_CHECK(classify(star, static_cast<int>(t)).second.verdict == Verdict::TIntersecting,
               "star must be t-intersecting");

  SearchProblem pb;
  pb.q = static_cast<int>(q);
  pb.n = static_cast<int>(n);
  pb.k = static_cast<int>(k);
  pb.t = static_cast<int>(t);
  pb.mode = SearchMode::Almost;
  pb.anchoring = Anchoring::None;
  pb.limits = limits;
  pb.cache_dir = cache_dir;

  const int seed = size_as_seed(rep.predicted_size);
  SearchResult res = solve(pb, seed);
  rep.ran_search = true;
  absorb_counters(rep, res);

  if (!res.proof_complete) {
    // Documented fallback: (a) the star is feasible at the predicted size
    // (checked above); (b) an anchored run pinning one member to the
    // canonical k-subspace decides whether anything larger exists. Sound
    // because every family has some member, and the ambient linear group
    // moves any single k-subspace to the canonical one.
    rep.used_fallback = true;
    std::vector<int> cols(k);
    for (int i = 0; i < k; ++i) cols[i] = static_cast<int>(i);
    Subspace u0 = Subspace::span_std(f, static_cast<int>(n), cols);
    SearchResult res2 = solve_with_fixed(pb, {u0}, seed);
    absorb_counters(rep, res2);
    rep.details = "anchored-member fallback";
    res = std::move(res2);
  }

  rep.proof_complete = res.proof_complete;
  rep.found_size = res.optimum;
  rep.maxima = std::move(res.maximum_families);
  rep.maxima_count = rep.maxima.size();
  rep.forms_found = recognize_all(rep.maxima, static_cast<int>(t));
  rep.structures_match = rep.proof_complete && QInt(rep.found_size) == rep.predicted_size &&
                         !rep.maxima.empty() &&
                         rep.forms_found == std::vector<std::string>{"Star"};
  return rep;
}

VerdictReport verify_theorem_nontrivial(long q, long n, long k, long t, const SearchLimits& limits,
                                        const std::string& cache_dir, bool run_advisory) {
  VerdictReport rep;
  rep.theorem = TheoremId::NontrivialMax;
  rep.q = q;
  rep.n = n;
  rep.k = k;
  rep.t = t;

  if (!(t >= 2 && k >= t + 1)) {
    rep.hypothesis_ok = false;
    rep.hypothesis_note = "requires k >= t+1 >= 3";
  } else if (n < 2 * k + t + delta(2, q) + delta(k, t + 1) * (1 - 2 * t - delta(2, q))) {
    rep.hypothesis_ok = false;
    rep.hypothesis_note = "requires n >= 2k+t+d_{2,q}+d_{k,t+1}(1-2t-d_{2,q})";
  }
  if (!rep.hypothesis_ok && !run_advisory) return rep;
  if (!(t >= 1 && k >= t + 1 && n >= 2 * k - t + 1)) return rep;

  const Field& f = Field::of(static_cast<int>(q));
  const bool g_case = k == t + 1 && (q == 2 || q == 3);
  const bool h_case = !(k == t + 1 && q == 2);

  QInt predicted = 0;
  int seed = 0;
  if (h_case) {
    predicted = std::max(predicted, h_value(n, k, t, q));
    HInputs hi = canonical_H_inputs(f, static_cast<int>(n), static_cast<int>(k),
                                    static_cast<int>(t));
    Family h = build_H(hi.u1, hi.u2, hi.e);
    QGRASS_CHECK(QInt(h.size()) == h_value(n, k, t, q), "H size disagrees with h_value");
    seed = std::max(seed, size_as_seed(QInt(h.size())));
  }
  if (g_case) {
    predicted = std::max(predicted, QInt(6));
    GInputs gi = canonical_G_inputs(f, static_cast<int>(n), static_cast<int>(t));
    Family g = build_G(gi.u1, gi.u2, gi.u3, gi.u4);
    QGRASS_CHECK(g.size() == 6, "G must have six members");
    seed = std::max(seed, 6);
  }
  if (k == t + 1 && q == 2) {
    // the H construction still exists here, it is just never maximal
    HInputs hi = canonical_H_inputs(f, static_cast<int>(n), static_cast<int>(k),
                                    static_cast<int>(t));
    seed = std::max(seed, size_as_seed(QInt(build_H(hi.u1, hi.u2, hi.e).size())));
  }
  rep.predicted_size = predicted;

  std::vector<std::string> allowed;
  if (h_case) allowed.push_back("HForm");
  if (g_case) allowed.push_back("GForm");
  std::sort(allowed.begin(), allowed.end());

  SearchProblem pb;
  pb.q = static_cast<int>(q);
  pb.n = static_cast<int>(n);
  pb.k = static_cast<int>(k);
  pb.t = static_cast<int>(t);
  pb.mode = SearchMode::AlmostNotIntersecting;
  pb.anchoring = Anchoring::FixBadPair;
  pb.limits = limits;
  pb.cache_dir = cache_dir;

  SearchResult res = solve(pb, seed);
  rep.ran_search = true;
  absorb_counters(rep, res);

  rep.proof_complete = res.proof_complete;
  rep.found_size = res.optimum;
  rep.maxima = std::move(res.maximum_families);
  rep.maxima_count = rep.maxima.size();
  rep.forms_found = recognize_all(rep.maxima, static_cast<int>(t));
  bool forms_ok = !rep.forms_found.empty() &&
                  std::includes(allowed.begin(), allowed.end(), rep.forms_found.begin(),
                                rep.forms_found.end());
  rep.structures_match =
      rep.proof_complete && QInt(rep.found_size) == rep.predicted_size && forms_ok;
  return rep;
}

nlohmann::ordered_json VerdictReport::to_json() const {
  nlohmann::ordered_json o;
  o["theorem"] = theorem_name(theorem);
  o["params"] = {{"q", q}, {"n", n}, {"k", k}, {"t", t}};
  if (!hypothesis_ok) {
    o["advisory"] = true;
    o["hypothesis_note"] = hypothesis_note;
  }
  o["ran_search"] = ran_search;
  if (!ran_search) return o;
  o["predicted_size"] = predicted_size.str();
  o["found_size"] = found_size;
  o["proof_complete"] = proof_complete;
  o["structures_match"] = structures_match;
  o["forms_found"] = forms_found;
  o["maxima_count"] = maxima_count;
  if (used_fallback) o["used_fallback"] = true;
  if (!details.empty()) o["details"] = details;
  return o;
}

}  // namespace qgrass
