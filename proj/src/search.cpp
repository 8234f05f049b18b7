#include "qgrass/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "qgrass/cache.hpp"

namespace qgrass {

const char* mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::Intersecting: return "intersecting";
    case SearchMode::Almost: return "almost";
    case SearchMode::AlmostNotIntersecting: return "almost-not-intersecting";
  }
  return "?";
}

std::optional<SearchMode> mode_from_name(const std::string& name) {
  if (name == "intersecting") return SearchMode::Intersecting;
  if (name == "almost") return SearchMode::Almost;
  if (name == "almost-not-intersecting" || name == "almost-not")
    return SearchMode::AlmostNotIntersecting;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

// Branch and bound over a fixed, lexicographically ordered vertex list with a
// packed conflict matrix. Vertices are admissible extensions tracked in two
// bitsets:
//   P0  candidates with no conflict against the current family
//   P1  candidates whose single conflict is an unpaired current member
// Canonical subset enumeration adds candidates in increasing index order, so
// every family is visited exactly once per anchored run.
class Engine {
 public:
  Engine(SearchMode mode, int t, std::vector<Subspace> verts, const SearchLimits& limits,
         const std::string& cache_dir, const std::string& conf_key)
      : mode_(mode), t_(t), verts_(std::move(verts)), limits_(limits) {
    V_ = static_cast<int>(verts_.size());
    W_ = (V_ + 63) / 64;
    build_conflicts(cache_dir, conf_key);
    build_cliques();
    const int k = V_ ? verts_[0].k() : 0;
    cap_value_ = binom_cap(k, t_);
    deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(limits_.max_seconds));
    best_.store(0);
  }

  const std::vector<Subspace>& verts() const { return verts_; }
  int vertex_index(const Subspace& s) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), s);
    QGRASS_CHECK(it != verts_.end() && *it == s, "fixed member missing from vertex set");
    return static_cast<int>(it - verts_.begin());
  }
  bool conflict(int i, int j) const { return (conf_row(i)[j >> 6] >> (j & 63)) & 1; }

  void seed_best(int s) {
    int cur = best_.load();
    while (s > cur && !best_.compare_exchange_weak(cur, s)) {
    }
  }

  // Explore all feasible supersets of `fixed`. May be called repeatedly (the
  // unanchored almost-not mode anchors at every conflicting pair in turn);
  // best/results accumulate across calls.
  void run(const std::vector<int>& fixed, int threads);

  int best() const { return best_.load(); }
  bool exhausted() const { return exhausted_.load(); }
  uint64_t nodes() const { return nodes_.load(); }
  uint64_t cap_checks() const { return cap_checks_.load(); }
  uint64_t cap_violations() const { return cap_violations_.load(); }

  // Sorted, deduplicated member-index lists of size == best().
  std::vector<std::vector<int>> maxima() {
    std::vector<std::vector<int>> out;
    auto it = results_.find(best_.load());
    if (it != results_.end()) out = it->second;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  struct Ctx {
    std::vector<uint64_t> arena;  // per depth: P0 | P1 | survivors | S mask
    std::vector<std::vector<int>> cands;
    std::vector<int> stack;
    std::vector<int> fixed;
    uint64_t local_nodes = 0;
    int unpaired = 0;
  };

  static long long binom_cap(int k, int t) {
    if (k < t) return -1;
    long a = 2 * (k - t) + 2, b = k - t + 1;
    QInt c = 1;
    for (long i = 0; i < b; ++i) {
      c *= (a - i);
      c /= (i + 1);
    }
    return c > QInt(1) << 62 ? -1 : static_cast<long long>(c);
  }

  const uint64_t* conf_row(int v) const { return conflict_.data() + static_cast<size_t>(v) * W_; }
  const uint64_t* comp_row(int v) const { return compat_.data() + static_cast<size_t>(v) * W_; }

  void build_conflicts(const std::string& cache_dir, const std::string& conf_key) {
    conflict_.assign(static_cast<size_t>(V_) * W_, 0);
    bool loaded = false;
    if (!conf_key.empty()) {
      if (auto words = cache_load_words(cache_dir, conf_key)) {
        if (words->size() == conflict_.size()) {
          conflict_ = std::move(*words);
          loaded = true;
        }
      }
    }
    if (!loaded) {
      for (int i = 0; i < V_; ++i)
        for (int j = i + 1; j < V_; ++j)
          if (dim_meet(verts_[i], verts_[j]) < t_) {
            conflict_[static_cast<size_t>(i) * W_ + (j >> 6)] |= 1ull << (j & 63);
            conflict_[static_cast<size_t>(j) * W_ + (i >> 6)] |= 1ull << (i & 63);
          }
      if (!conf_key.empty()) cache_store_words(cache_dir, conf_key, conflict_);
    }
    // compat = complement with the self bit on, masked to V bits
    compat_.assign(conflict_.size(), 0);
    for (int v = 0; v < V_; ++v) {
      for (int w = 0; w < W_; ++w) compat_[static_cast<size_t>(v) * W_ + w] = ~conf_row(v)[w];
      if (V_ & 63) compat_[static_cast<size_t>(v) * W_ + W_ - 1] &= (1ull << (V_ & 63)) - 1;
      compat_[static_cast<size_t>(v) * W_ + (v >> 6)] |= 1ull << (v & 63);
    }
  }

  // Greedy clique cover of the conflict graph. A feasible family holds at
  // most one vertex per clique in Intersecting mode and two in the almost
  // modes, which gives the cheap counting bound used below.
  void build_cliques() {
    std::vector<uint64_t> unassigned(W_, 0);
    for (int v = 0; v < V_; ++v) unassigned[v >> 6] |= 1ull << (v & 63);
    std::vector<uint64_t> common(W_);
    for (int v = 0; v < V_; ++v) {
      if (!((unassigned[v >> 6] >> (v & 63)) & 1)) continue;
      unassigned[v >> 6] &= ~(1ull << (v & 63));
      std::vector<uint64_t> mask(W_, 0);
      mask[v >> 6] |= 1ull << (v & 63);
      for (int w = 0; w < W_; ++w) common[w] = conf_row(v)[w] & unassigned[w];
      for (;;) {
        int u = first_bit(common.data());
        if (u < 0) break;
        mask[u >> 6] |= 1ull << (u & 63);
        unassigned[u >> 6] &= ~(1ull << (u & 63));
        for (int w = 0; w < W_; ++w) common[w] &= conf_row(u)[w];
      }
      cliques_.push_back(std::move(mask));
    }
  }

  int first_bit(const uint64_t* words) const {
    for (int w = 0; w < W_; ++w)
      if (words[w]) return w * 64 + std::countr_zero(words[w]);
    return -1;
  }
  static int popcount(const uint64_t* words, int W) {
    int c = 0;
    for (int w = 0; w < W; ++w) c += std::popcount(words[w]);
    return c;
  }

  uint64_t* frame(Ctx& ctx, int depth, int slot) {
    size_t need = (static_cast<size_t>(depth) + 1) * 4 * W_;
    if (ctx.arena.size() < need) ctx.arena.resize(need + 16 * W_);
    return ctx.arena.data() + (static_cast<size_t>(depth) * 4 + slot) * W_;
  }

  void budget_tick(Ctx& ctx) {
    if ((++ctx.local_nodes & 1023) == 0) {
      uint64_t total = nodes_.fetch_add(1024) + 1024;
      if (total > limits_.max_nodes || Clock::now() > deadline_) exhausted_.store(true);
    }
  }

  void record(Ctx& ctx, int sz) {
    int cur = best_.load(std::memory_order_relaxed);
    if (sz < cur) return;
    while (sz > cur && !best_.compare_exchange_weak(cur, sz)) {
    }
    std::lock_guard<std::mutex> lock(results_mtx_);
    if (sz < best_.load()) return;
    std::vector<int> fam = ctx.fixed;
    fam.insert(fam.end(), ctx.stack.begin(), ctx.stack.end());
    std::sort(fam.begin(), fam.end());
    results_[sz].push_back(std::move(fam));
    while (!results_.empty() && results_.begin()->first < best_.load())
      results_.erase(results_.begin());
  }

  // Child admissibility update for adding x. In Intersecting mode the
  // conflicting candidates simply drop out; in the almost modes a P0
  // candidate conflicting x becomes pairable (P1) while P1 candidates
  // conflicting x, or conflicting x's newly paired partner, drop out.
  void make_child(Ctx& ctx, int depth, int x, bool from_p1) {
    uint64_t* cP0 = frame(ctx, depth + 1, 0);
    uint64_t* cP1 = frame(ctx, depth + 1, 1);
    uint64_t* cSV = frame(ctx, depth + 1, 2);
    uint64_t* cSM = frame(ctx, depth + 1, 3);
    const uint64_t* P0 = frame(ctx, depth, 0);
    const uint64_t* P1 = frame(ctx, depth, 1);
    const uint64_t* SV = frame(ctx, depth, 2);
    const uint64_t* SM = frame(ctx, depth, 3);

    const uint64_t* nx = conf_row(x);
    const uint64_t* nm = nullptr;
    if (from_p1) {
      int partner = -1;
      for (int w = 0; w < W_ && partner < 0; ++w) {
        uint64_t hit = nx[w] & SM[w];
        if (hit) partner = w * 64 + std::countr_zero(hit);
      }
      QGRASS_CHECK(partner >= 0, "P1 candidate without a partner");
      nm = conf_row(partner);
    }
    for (int w = 0; w < W_; ++w) {
      uint64_t gt = 0;
      if (w > (x >> 6)) gt = ~0ull;
      else if (w == (x >> 6) && (x & 63) < 63) gt = ~((2ull << (x & 63)) - 1);
      cP0[w] = (P0[w] & ~nx[w]) & gt;
      if (mode_ == SearchMode::Intersecting) {
        cP1[w] = 0;
      } else if (from_p1) {
        cP1[w] = (P1[w] & ~nx[w] & ~nm[w]) & gt;
      } else {
        cP1[w] = ((P1[w] & ~nx[w]) | (P0[w] & nx[w])) & gt;
      }
      cSV[w] = SV[w] & comp_row(x)[w];
      cSM[w] = SM[w] | (w == (x >> 6) ? 1ull << (x & 63) : 0ull);
    }
  }

  // Upper bound on how many candidates can still join.
  int cc_bound(const uint64_t* P0, const uint64_t* P1, int unpaired) {
    const int limit = mode_ == SearchMode::Intersecting ? 1 : 2;
    int bound_b = popcount(P0, W_);
    if (mode_ != SearchMode::Intersecting) {
      int p1 = popcount(P1, W_);
      bound_b += std::min(p1, unpaired);
    }
    int bound_a = 0;
    for (const auto& q : cliques_) {
      int c = 0;
      for (int w = 0; w < W_; ++w) {
        uint64_t m = q[w] & (P0[w] | P1[w]);
        c += std::popcount(m);
        if (c >= limit) break;
      }
      bound_a += std::min(c, limit);
      if (bound_a >= bound_b) return bound_b;
    }
    return std::min(bound_a, bound_b);
  }

  void rec(Ctx& ctx, int depth);

  void run_sequential(Ctx& ctx) { rec(ctx, 0); }

  SearchMode mode_;
  int t_;
  std::vector<Subspace> verts_;
  SearchLimits limits_;
  int V_ = 0, W_ = 0;
  std::vector<uint64_t> conflict_, compat_;
  std::vector<std::vector<uint64_t>> cliques_;
  long long cap_value_ = -1;
  Clock::time_point deadline_;

  std::atomic<int> best_{0};
  std::atomic<bool> exhausted_{false};
  std::atomic<uint64_t> nodes_{0};
  std::atomic<uint64_t> cap_checks_{0};
  std::atomic<uint64_t> cap_violations_{0};
  std::mutex results_mtx_;
  std::map<int, std::vector<std::vector<int>>> results_;
};

void Engine::rec(Ctx& ctx, int depth) {
  if (exhausted_.load(std::memory_order_relaxed)) return;
  budget_tick(ctx);

  uint64_t* P0 = frame(ctx, depth, 0);
  uint64_t* P1 = frame(ctx, depth, 1);
  uint64_t* SV = frame(ctx, depth, 2);
  uint64_t* SM = frame(ctx, depth, 3);

  // Forced inclusion: a candidate with no conflict anywhere in P0|P1 (and
  // none with the family) belongs to every maximal extension, so add it
  // outright. One pass suffices: forced vertices conflict with nothing in P.
  int forced_here = 0;
  for (int w = 0; w < W_; ++w) {
    uint64_t cand = P0[w];
    while (cand) {
      int x = w * 64 + std::countr_zero(cand);
      cand &= cand - 1;
      const uint64_t* cr = conf_row(x);
      bool clean = true;
      for (int w2 = 0; w2 < W_ && clean; ++w2)
        if (cr[w2] & (P0[w2] | P1[w2])) clean = false;
      if (clean) {
        P0[x >> 6] &= ~(1ull << (x & 63));
        SM[x >> 6] |= 1ull << (x & 63);
        for (int w2 = 0; w2 < W_; ++w2) SV[w2] &= comp_row(x)[w2];
        ctx.stack.push_back(x);
        ++ctx.unpaired;
        ++forced_here;
        cand &= P0[w];  // refresh the word we are scanning
      }
    }
  }

  const int sz = static_cast<int>(ctx.fixed.size() + ctx.stack.size());
  record(ctx, sz);

  bool covered = false;
  for (int w = 0; w < W_ && !covered; ++w) covered = SV[w] != 0;
  if (!covered && V_ > 0) {
    cap_checks_.fetch_add(1, std::memory_order_relaxed);
    if (cap_value_ >= 0 && sz > cap_value_) cap_violations_.fetch_add(1, std::memory_order_relaxed);
  }

  // ctx.cands is preallocated to V_+2 in run(), so this reference stays
  // valid across the recursive calls below
  std::vector<int>& cand = ctx.cands[depth];
  cand.clear();
  for (int w = 0; w < W_; ++w) {
    uint64_t m = P0[w] | P1[w];
    while (m) {
      cand.push_back(w * 64 + std::countr_zero(m));
      m &= m - 1;
    }
  }

  if (!cand.empty()) {
    const int b = best_.load(std::memory_order_relaxed);
    if (sz + static_cast<int>(cand.size()) >= b && sz + cc_bound(P0, P1, ctx.unpaired) >= b) {
      const int m = static_cast<int>(cand.size());
      for (int idx = 0; idx < m; ++idx) {
        if (exhausted_.load(std::memory_order_relaxed)) break;
        if (sz + (m - idx) < best_.load(std::memory_order_relaxed)) break;
        const int x = cand[idx];
        // frame() inside make_child may resize the arena, so P1 is re-read
        // through frame() rather than kept as a raw pointer
        const bool from_p1 = (frame(ctx, depth, 1)[x >> 6] >> (x & 63)) & 1;
        make_child(ctx, depth, x, from_p1);
        ctx.stack.push_back(x);
        ctx.unpaired += from_p1 ? -1 : 1;
        rec(ctx, depth + 1);
        ctx.unpaired -= from_p1 ? -1 : 1;
        ctx.stack.pop_back();
      }
    }
  }

  for (int i = 0; i < forced_here; ++i) {
    ctx.stack.pop_back();
    --ctx.unpaired;
  }
}

// Shared by run(): initial admissibility of every vertex against the fixed
// members, root frame setup, and the top-level task split across threads.
void Engine::run(const std::vector<int>& fixed, int threads) {
  // conflict counts of fixed members among themselves
  std::vector<int> fixed_conf(fixed.size(), 0);
  for (size_t i = 0; i < fixed.size(); ++i)
    for (size_t j = i + 1; j < fixed.size(); ++j)
      if (conflict(fixed[i], fixed[j])) {
        ++fixed_conf[i];
        ++fixed_conf[j];
      }
  for (size_t i = 0; i < fixed.size(); ++i) {
    int limit = mode_ == SearchMode::Intersecting ? 0 : 1;
    if (fixed_conf[i] > limit)
      throw Error(ErrorCode::PreconditionViolation, "fixed members are not feasible for the mode");
  }

  auto setup_root = [&](Ctx& ctx) {
    ctx.fixed = fixed;
    ctx.stack.clear();
    ctx.unpaired = 0;
    if (ctx.cands.size() < static_cast<size_t>(V_) + 2) ctx.cands.resize(V_ + 2);
    uint64_t* P0 = frame(ctx, 0, 0);
    uint64_t* P1 = frame(ctx, 0, 1);
    uint64_t* SV = frame(ctx, 0, 2);
    uint64_t* SM = frame(ctx, 0, 3);
    std::fill(P0, P0 + 4 * W_, 0ull);
    for (int w = 0; w < W_; ++w) SV[w] = ~0ull;
    if (V_ & 63) SV[W_ - 1] = (1ull << (V_ & 63)) - 1;
    for (int v : fixed) SM[v >> 6] |= 1ull << (v & 63);
    for (size_t i = 0; i < fixed.size(); ++i) {
      if (fixed_conf[i] == 0) ++ctx.unpaired;
      for (int w = 0; w < W_; ++w) SV[w] &= comp_row(fixed[i])[w];
    }
    for (int v = 0; v < V_; ++v) {
      if ((SM[v >> 6] >> (v & 63)) & 1) continue;
      int cnt = 0, partner = -1;
      for (size_t i = 0; i < fixed.size() && cnt <= 1; ++i)
        if (conflict(v, fixed[i])) {
          ++cnt;
          partner = static_cast<int>(i);
        }
      if (cnt == 0) {
        P0[v >> 6] |= 1ull << (v & 63);
      } else if (cnt == 1 && mode_ != SearchMode::Intersecting && fixed_conf[partner] == 0) {
        P1[v >> 6] |= 1ull << (v & 63);
      }
    }
  };

  if (threads <= 1) {
    Ctx ctx;
    setup_root(ctx);
    run_sequential(ctx);
    nodes_.fetch_add(ctx.local_nodes & 1023);
    return;
  }

  // Parallel: split the root candidate loop. Each worker replays the root
  // frame, then dives into its assigned first branch. Root-level forcing is
  // skipped here (it is only a pruning device; each subtree repeats it), and
  // the shared best bound only shrinks subtrees, so the recorded maxima are
  // schedule independent.
  Ctx root;
  setup_root(root);
  budget_tick(root);
  uint64_t* P0 = frame(root, 0, 0);
  uint64_t* P1 = frame(root, 0, 1);

  std::vector<int> cand;
  for (int w = 0; w < W_; ++w) {
    uint64_t m = P0[w] | P1[w];
    while (m) {
      cand.push_back(w * 64 + std::countr_zero(m));
      m &= m - 1;
    }
  }
  record(root, static_cast<int>(root.fixed.size()));

  std::atomic<int> next{0};
  auto worker = [&]() {
    Ctx ctx;
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= static_cast<int>(cand.size())) break;
      if (exhausted_.load()) break;
      setup_root(ctx);
      const int x = cand[idx];
      const int sz0 = static_cast<int>(ctx.fixed.size());
      if (sz0 + static_cast<int>(cand.size()) - idx < best_.load()) continue;
      const bool from_p1 = (frame(ctx, 0, 1)[x >> 6] >> (x & 63)) & 1;
      make_child(ctx, 0, x, from_p1);
      ctx.stack.push_back(x);
      ctx.unpaired += from_p1 ? -1 : 1;
      rec(ctx, 1);
      ctx.stack.pop_back();
      ctx.unpaired -= from_p1 ? -1 : 1;
      nodes_.fetch_add(ctx.local_nodes & 1023);
      ctx.local_nodes = 0;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------

std::vector<Subspace> canonical_bad_pair(const Field& f, int n, int k, int t) {
  std::vector<int> cols(k);
  for (int i = 0; i < k; ++i) cols[i] = i;
  Subspace u1 = Subspace::span_std(f, n, cols);
  // lexicographically least partner with meet dimension t-1, without
  // materializing the whole stratum
  std::optional<Subspace> least;
  visit_profile(u1, Subspace::zero(f, n), k, t - 1, [&](Subspace&& s) {
    if (!least || s < *least) least = std::move(s);
  });
  QGRASS_CHECK(least.has_value(), "no subspace meets the anchor in dimension t-1");
  return {u1, *least};
}

SearchResult immediate_exhausted(const SearchProblem& pb, int seed) {
  (void)pb;
  SearchResult res;
  res.optimum = seed;
  res.proof_complete = false;
  res.nodes_expanded = 0;
  return res;
}

// Beyond a mutually conflicting fixed pair, every further member of an
// almost family must be compatible with both, so the candidate set shrinks
// from the whole Grassmannian to the two-sided compatibility stratum.
bool mode_allows_restriction(SearchMode mode, const std::vector<Subspace>& fixed, int t) {
  return mode != SearchMode::Intersecting && fixed.size() == 2 &&
         dim_meet(fixed[0], fixed[1]) < t;
}

std::vector<Subspace> restricted_vertices(const Field& f, const SearchProblem& pb,
                                          const std::vector<Subspace>& fixed) {
  const Subspace &u1 = fixed[0], &u2 = fixed[1];
  std::vector<Subspace> verts = {u1, u2};
  Subspace zero = Subspace::zero(f, pb.n);
  const int ilo = std::max(pb.t, 2 * pb.k - pb.n);
  for (int i = ilo; i <= pb.k; ++i)
    visit_profile(u1, zero, pb.k, i, [&](Subspace&& s) {
      if (dim_meet(s, u2) >= pb.t && !(s == u1)) verts.push_back(std::move(s));
    });
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

SearchResult solve_impl(const SearchProblem& pb, std::vector<Subspace> fixed, int seed) {
  if (!(1 <= pb.t && pb.t <= pb.k && pb.k <= pb.n))
    throw Error(ErrorCode::PreconditionViolation, "search requires 1 <= t <= k <= n");
  const Field& f = Field::of(pb.q);
  if (pb.anchoring == Anchoring::FixBadPair) {
    if (pb.mode != SearchMode::AlmostNotIntersecting)
      throw Error(ErrorCode::PreconditionViolation,
                  "FixBadPair anchoring applies to the almost-not-intersecting mode");
    QGRASS_CHECK(fixed.empty(), "FixBadPair with explicit fixed members");
    fixed = canonical_bad_pair(f, pb.n, pb.k, pb.t);
  }

  int threads = pb.limits.threads > 0 ? pb.limits.threads
                                      : std::max(1u, std::thread::hardware_concurrency());

  const QInt total = gauss_binom(pb.n, pb.k, pb.q);
  std::vector<Subspace> verts;
  std::string conf_key;
  if (total <= QInt(static_cast<unsigned long long>(pb.limits.max_vertices))) {
    verts = std::move(load_or_enumerate_grassmannian(pb.cache_dir, f, pb.n, pb.k)).take();
    conf_key = "conf-v1-q" + std::to_string(pb.q) + "-n" + std::to_string(pb.n) + "-k" +
               std::to_string(pb.k) + "-t" + std::to_string(pb.t);
  } else if (mode_allows_restriction(pb.mode, fixed, pb.t)) {
    // Candidates beyond a mutually conflicting fixed pair must be compatible
    // with both, which is a far smaller set than the whole Grassmannian.
    verts = restricted_vertices(f, pb, fixed);
    if (verts.size() > pb.limits.max_vertices) return immediate_exhausted(pb, seed);
  } else {
    return immediate_exhausted(pb, seed);
  }

  Engine eng(pb.mode, pb.t, std::move(verts), pb.limits, pb.cache_dir, conf_key);
  eng.seed_best(seed);

  std::vector<int> fixed_idx;
  for (const Subspace& s : fixed) fixed_idx.push_back(eng.vertex_index(s));
  std::sort(fixed_idx.begin(), fixed_idx.end());

  if (pb.mode == SearchMode::AlmostNotIntersecting && !fixed_idx.empty()) {
    bool has_pair = false;
    for (size_t i = 0; i < fixed_idx.size() && !has_pair; ++i)
      for (size_t j = i + 1; j < fixed_idx.size() && !has_pair; ++j)
        has_pair = eng.conflict(fixed_idx[i], fixed_idx[j]);
    if (!has_pair)
      throw Error(ErrorCode::PreconditionViolation,
                  "almost-not-intersecting search needs a conflicting pair among fixed members");
  }

  if (pb.mode == SearchMode::AlmostNotIntersecting && pb.anchoring == Anchoring::None &&
      fixed.empty()) {
    // Anchor at every conflicting pair in turn; every family with a bad pair
    // is a superset of at least one anchor, so the union is exhaustive.
    // Parallelism goes across the pair anchors, each run itself sequential.
    std::vector<std::pair<int, int>> pairs;
    const int v = static_cast<int>(eng.verts().size());
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j)
        if (eng.conflict(i, j)) pairs.emplace_back(i, j);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t idx = next.fetch_add(1);
        if (idx >= pairs.size() || eng.exhausted()) break;
        eng.run({pairs[idx].first, pairs[idx].second}, 1);
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
  } else {
    eng.run(fixed_idx, threads);
  }

  SearchResult res;
  res.optimum = eng.best();
  res.proof_complete = !eng.exhausted();
  res.nodes_expanded = eng.nodes();
  res.cover_cap_checks = eng.cap_checks();
  res.cover_cap_violations = eng.cap_violations();
  if (pb.anchoring == Anchoring::FixBadPair) res.anchor = {fixed[0], fixed[1]};
  for (const auto& idxs : eng.maxima()) {
    std::vector<Subspace> members;
    members.reserve(idxs.size());
    for (int v : idxs) members.push_back(eng.verts()[v]);
    res.maximum_families.emplace_back(f, pb.n, pb.k, std::move(members));
  }
  std::sort(res.maximum_families.begin(), res.maximum_families.end());
  return res;
}

}  // namespace

SearchResult solve(const SearchProblem& problem) { return solve_impl(problem, {}, 0); }

SearchResult solve(const SearchProblem& problem, int seed_size) {
  return solve_impl(problem, {}, seed_size);
}

SearchResult solve_with_fixed(const SearchProblem& problem, const std::vector<Subspace>& fixed,
                              int seed_size) {
  return solve_impl(problem, fixed, seed_size);
}

nlohmann::ordered_json SearchResult::to_json(bool include_counters) const {
  nlohmann::ordered_json o;
  o["optimum"] = optimum;
  o["proof_complete"] = proof_complete;
  o["maxima_count"] = maximum_families.size();
  auto fams = nlohmann::ordered_json::array();
  for (const Family& fam : maximum_families) {
    auto members = nlohmann::ordered_json::array();
    for (const Subspace& s : fam) members.push_back(s.to_string());
    fams.push_back(members);
  }
  o["maximum_families"] = fams;
  if (anchor) o["anchor"] = {anchor->first.to_string(), anchor->second.to_string()};
  if (include_counters) {
    o["nodes_expanded"] = nodes_expanded;
    o["cover_cap_checks"] = cover_cap_checks;
    o["cover_cap_violations"] = cover_cap_violations;
  }
  return o;
}

}  // namespace qgrass
