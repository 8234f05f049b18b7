#include "qgrass/qfunc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include <nlohmann/json.hpp>

namespace qgrass {

namespace {

QInt gauss_binom_uncached(long n, long k, long q) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;  // [n k] = [n n-k]
  QInt r = 1;
  QInt qn = qpow(q, n - k);  // runs through q^{n-k+i}
  QInt qi = 1;               // runs through q^i
  for (long i = 1; i <= k; ++i) {
    qn *= q;
    qi *= q;
    r *= qn - 1;
    QInt d = qi - 1;
    QGRASS_CHECK(r % d == 0, "gauss_binom interleaved division not exact");
    r /= d;
  }
  return r;
}

}  // namespace

QInt gauss_binom(long n, long k, long q) {
  if (q < 2) throw Error(ErrorCode::PreconditionViolation, "gauss_binom requires q >= 2");
  if (k < 0 || k > n) return 0;
  thread_local std::map<std::tuple<long, long, long>, QInt> memo;
  auto key = std::make_tuple(n, k, q);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  QInt v = gauss_binom_uncached(n, k, q);
  if (memo.size() > 200000) memo.clear();
  return memo.emplace(key, std::move(v)).first->second;
}

QInt f_value(long n, long k, long t, long x, long q) {
  if (!(t >= 1 && t <= x && x <= k && k <= n))
    throw Error(ErrorCode::PreconditionViolation, "f_value requires 1 <= t <= x <= k <= n");
  QInt base = gauss_binom(k - t + 1, 1, q);
  QInt geo = 0, p = 1;
  for (long i = 0; i <= x - t - 1; ++i) {  // empty when x == t
    geo += p;
    p *= base;
  }
  return gauss_binom(x, t, q) * qpow(base, x - t) * gauss_binom(n - x, k - x, q) +
         gauss_binom(x, t, q) * geo;
}

QInt g_value(long n, long k, long t, long x, long q) {
  if (!(t >= 1 && t <= x && x <= k && k <= n))
    throw Error(ErrorCode::PreconditionViolation, "g_value requires 1 <= t <= x <= k <= n");
  return gauss_binom(x - t, 1, q) * gauss_binom(n - t - 1, k - t - 1, q) +
         qpow(q, x - t) * gauss_binom(k - x + 1, 1, q) * gauss_binom(k - t + 1, 1, q) *
             gauss_binom(n - t - 2, k - t - 2, q) +
         qpow(q, x - t) * gauss_binom(k - x + 1, 1, q) +
         qpow(q, x - t + 1) * gauss_binom(t, 1, q) * gauss_binom(k - t, 1, q) *
             gauss_binom(n - x, k - x, q) +
         2;
}

QInt h_value(long n, long k, long t, long q) {
  if (!(t >= 1 && k >= t + 1 && n >= 2 * k - t + 1))
    throw Error(ErrorCode::PreconditionViolation, "h_value requires t >= 1, k >= t+1, n >= 2k-t+1");
  return gauss_binom(n - t, k - t, q) -
         qpow(q, (k - t + 1) * (k - t)) * gauss_binom(n - k - 1, k - t, q) + 2;
}

QInt profile_count(long n, long a, long b, long bp, long i, long ip, long q) {
  auto fail = [](const std::string& which) {
    throw Error(ErrorCode::HypothesisViolation, "profile_count: " + which);
  };
  if (!(0 <= ip)) fail("0 <= i' violated");
  if (!(ip <= i)) fail("i' <= i violated");
  if (!(i <= a)) fail("i <= a violated");
  if (!(0 <= bp - ip)) fail("0 <= b'-i' violated");
  if (!(bp - ip <= b - i)) fail("b'-i' <= b-i violated");
  if (!(b - i <= n - a)) fail("b-i <= n-a violated");
  return qpow(q, (a - i) * ((b - i) - (bp - ip))) *
         gauss_binom(n - a - (bp - ip), (b - i) - (bp - ip), q) * gauss_binom(a - ip, i - ip, q);
}

// ---------------------------------------------------------------------------

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::L21i: return "L21i";
    case LemmaId::L21ii: return "L21ii";
    case LemmaId::L21iii: return "L21iii";
    case LemmaId::L21iv: return "L21iv";
    case LemmaId::L22i: return "L22i";
    case LemmaId::L22ii: return "L22ii";
    case LemmaId::L23: return "L23";
    case LemmaId::L24: return "L24";
    case LemmaId::L26: return "L26";
  }
  return "?";
}

std::optional<LemmaId> lemma_from_name(const std::string& name) {
  for (LemmaId id : {LemmaId::L21i, LemmaId::L21ii, LemmaId::L21iii, LemmaId::L21iv, LemmaId::L22i,
                     LemmaId::L22ii, LemmaId::L23, LemmaId::L24, LemmaId::L26})
    if (name == lemma_name(id)) return id;
  return std::nullopt;
}

namespace {

struct Cmp {
  Ratio lhs, rhs;
  char rel;  // '<', '>', 'l' (<=)
  const char* label;

  bool ok() const {
    int c = ratio_cmp(lhs, rhs);
    switch (rel) {
      case '<': return c < 0;
      case '>': return c > 0;
      default: return c <= 0;
    }
  }
};

long delta(long a, long b) { return a == b ? 1 : 0; }

CheckReport finish(LemmaId id, const LemmaParams& p, bool in_hypothesis, std::vector<Cmp> cmps) {
  CheckReport rep;
  rep.lemma = id;
  rep.params = p;
  rep.advisory = !in_hypothesis;
  rep.holds = true;
  rep.lhs = cmps.front().lhs;
  rep.rhs = cmps.front().rhs;
  for (const Cmp& c : cmps) {
    if (!c.ok()) {
      rep.holds = false;
      rep.lhs = c.lhs;
      rep.rhs = c.rhs;
      rep.witness = c.label;
      break;
    }
  }
  return rep;
}

}  // namespace

CheckReport check_inequality(LemmaId id, const LemmaParams& p) {
  const long n = p.n, k = p.k, t = p.t, x = p.x, i = p.i, j = p.j, q = p.q;
  if (q < 2) throw Error(ErrorCode::PreconditionViolation, "check_inequality requires q >= 2");
  switch (id) {
    case LemmaId::L21i: {
      if (!(n >= 1 && k >= 1))
        throw Error(ErrorCode::PreconditionViolation, "L21i needs n, k >= 1");
      bool hyp = k < n;
      QInt mid = qpow(q, n) - 1, den = qpow(q, k) - 1;
      return finish(id, p, hyp,
                    {{{qpow(q, n - k) * den}, {mid}, '<', "lower"},
                     {{mid}, {qpow(q, n - k + 1) * den}, '<', "upper"}});
    }
    case LemmaId::L21ii: {
      if (!(n >= 1 && k >= 1))
        throw Error(ErrorCode::PreconditionViolation, "L21ii needs n, k >= 1");
      bool hyp = k < n;
      QInt gb = gauss_binom(n, k, q);
      return finish(id, p, hyp,
                    {{{qpow(q, k * (n - k))}, {gb}, '<', "lower"},
                     {{gb}, {qpow(q, k * (n - k + 1))}, '<', "upper"}});
    }
    case LemmaId::L21iii: {
      if (n < 1) throw Error(ErrorCode::PreconditionViolation, "L21iii needs n >= 1");
      bool hyp = q >= 3;
      return finish(id, p, hyp, {{{gauss_binom(n, 1, q)}, {3 * qpow(q, n - 1), 2}, 'l', "bound"}});
    }
    case LemmaId::L21iv: {
      if (!(n >= 1 && k >= 1 && t >= 1 && i >= 1 && j >= 1))
        throw Error(ErrorCode::PreconditionViolation, "L21iv needs positive n,k,t,i,j");
      bool hyp = k >= t && n >= 2 * k - t + 1 && i <= j && k < n;
      return finish(id, p, hyp,
                    {{{qpow(gauss_binom(k - t + 1, 1, q), j - i) * gauss_binom(n - j, k - j, q)},
                      {gauss_binom(n - i, k - i, q)},
                      'l',
                      "bound"}});
    }
    case LemmaId::L22i: {
      bool hyp = 0 <= k && k <= n && q >= 2;
      return finish(id, p, hyp,
                    {{{gauss_binom(n, k, q)}, {7 * qpow(q, k * (n - k)), 2}, 'l', "bound"}});
    }
    case LemmaId::L22ii: {
      bool hyp = 0 <= k && k <= n && q >= 3;
      return finish(id, p, hyp,
                    {{{gauss_binom(n, k, q)}, {2 * qpow(q, k * (n - k))}, 'l', "bound"}});
    }
    case LemmaId::L23: {
      bool hyp = k >= t + 2 && n >= 2 * k + 1 + delta(2, q) && t + 1 <= x && x <= k - 1;
      return finish(id, p, hyp,
                    {{{f_value(n, k, t, x, q)}, {f_value(n, k, t, x + 1, q)}, '>', "decrease"}});
    }
    case LemmaId::L24: {
      bool hyp = k >= t + 3 && n >= 2 * k + 1 + delta(2, q) && t + 2 <= x && x <= k - 1;
      return finish(id, p, hyp,
                    {{{g_value(n, k, t, x, q)}, {g_value(n, k, t, x + 1, q)}, '<', "increase"}});
    }
    case LemmaId::L26: {
      bool hyp = t >= 2 && k >= t + 2 && n >= 2 * k + t + delta(2, q);
      return finish(id, p, hyp,
                    {{{h_value(n, k, t, q)},
                      {47 * gauss_binom(k - t + 1, 1, q) * gauss_binom(n - t - 1, k - t - 1, q), 48},
                      '>',
                      "bound"}});
    }
  }
  throw Error(ErrorCode::PreconditionViolation, "unknown lemma id");
}

// Sweeps emit in parameter-tuple order (n, k, t, x, i, j, q); loop nesting
// below matches that order so the big grids need no buffering or sorting.
void sweep_lemma(LemmaId id, const LemmaGrid& grid,
                 const std::function<void(const CheckReport&)>& visit) {
  std::vector<long> qs = grid.qs;
  std::sort(qs.begin(), qs.end());
  auto emit = [&](const LemmaParams& p) { visit(check_inequality(id, p)); };

  switch (id) {
    case LemmaId::L21i:
    case LemmaId::L21ii:
      for (long n = 2; n <= grid.n_max; ++n)
        for (long k = 1; k < n; ++k)
          for (long q : qs) emit({.n = n, .k = k, .q = q});
      break;
    case LemmaId::L21iii:
      for (long n = 1; n <= grid.n_max; ++n)
        for (long q : qs)
          if (q >= 3) emit({.n = n, .q = q});
      break;
    case LemmaId::L21iv:
      for (long n = 2; n <= grid.n_max; ++n)
        for (long k = 1; k < n; ++k)
          for (long t = std::max<long>(1, 2 * k - n + 1); t <= k; ++t)
            for (long i = 1; i <= k; ++i)
              for (long j = i; j <= k; ++j)
                for (long q : qs) emit({.n = n, .k = k, .t = t, .i = i, .j = j, .q = q});
      break;
    case LemmaId::L22i:
    case LemmaId::L22ii:
      for (long n = 0; n <= grid.n_max; ++n)
        for (long k = 0; k <= n; ++k)
          for (long q : qs)
            if (id == LemmaId::L22i || q >= 3) emit({.n = n, .k = k, .q = q});
      break;
    case LemmaId::L23:
    case LemmaId::L24: {
      const long klo = id == LemmaId::L23 ? 2 : 3;  // k - t minimum
      const long khi = klo + 3 + grid.span_k;
      const long xlo = id == LemmaId::L23 ? 1 : 2;  // x - t minimum
      std::vector<LemmaParams> ps;
      for (long t = 1; t <= grid.t_max; ++t)
        for (long k = t + klo; k <= t + khi; ++k)
          for (long q : qs)
            for (long n = 2 * k + 1 + delta(2, q); n <= 2 * k + 8 + grid.span_n; ++n)
              for (long x = t + xlo; x <= k - 1; ++x)
                ps.push_back({.n = n, .k = k, .t = t, .x = x, .q = q});
      std::sort(ps.begin(), ps.end());
      for (const auto& p : ps) emit(p);
      break;
    }
    case LemmaId::L26: {
      std::vector<LemmaParams> ps;
      for (long t = 2; t <= std::max<long>(2, grid.t_max); ++t)
        for (long k = t + 2; k <= t + 4 + grid.span_k; ++k)
          for (long q : qs)
            for (long n = 2 * k + t + delta(2, q); n <= 2 * k + t + 6 + grid.span_n; ++n)
              ps.push_back({.n = n, .k = k, .t = t, .q = q});
      std::sort(ps.begin(), ps.end());
      for (const auto& p : ps) emit(p);
      break;
    }
  }
}

std::vector<CheckReport> sweep_lemma(LemmaId id, const LemmaGrid& grid) {
  std::vector<CheckReport> out;
  sweep_lemma(id, grid, [&](const CheckReport& r) { out.push_back(r); });
  return out;
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json pj;
  if (params.n >= 0) pj["n"] = params.n;
  if (params.k >= 0) pj["k"] = params.k;
  if (params.t >= 0) pj["t"] = params.t;
  if (params.x >= 0) pj["x"] = params.x;
  if (params.i >= 0) pj["i"] = params.i;
  if (params.j >= 0) pj["j"] = params.j;
  if (params.q >= 0) pj["q"] = params.q;
  nlohmann::ordered_json o;
  o["lemma"] = lemma_name(lemma);
  o["params"] = pj;
  o["holds"] = holds;
  o["lhs"] = lhs.str();
  o["rhs"] = rhs.str();
  if (advisory) o["advisory"] = true;
  if (!witness.empty()) o["witness"] = witness;
  return o;
}

}  // namespace qgrass

