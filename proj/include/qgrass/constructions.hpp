#pragma once

#include <optional>
#include <random>

#include <nlohmann/json_fwd.hpp>

#include "qgrass/family.hpp"

namespace qgrass {

// All k-superspaces of e; the trivial extremal family through e.
Family build_star(const Subspace& e, int k);

// H(u1, u2, e) = { F : e <= F, dim(F /\ u2) >= t } u { u1, u2 }, where
// t = dim e, e <= u1, and u1 /\ u2 is a hyperplane of e. Almost
// t-intersecting with the single bad pair (u1, u2); its size is h_value.
Family build_H(const Subspace& u1, const Subspace& u2, const Subspace& e);

// G(u1..u4): six (t+1)-subspaces with u1 /\ u2 = u3 /\ u4 of dimension t-1,
// the cross intersections of dimension t, plus the two mixed sums
// u3 /\ u1 + u4 /\ u2 and u4 /\ u1 + u3 /\ u2.
Family build_G(const Subspace& u1, const Subspace& u2, const Subspace& u3, const Subspace& u4);

// Canonical witnesses over standard basis vectors (deterministic inputs for
// the CLI and the search verdicts).
Subspace canonical_star_center(const Field& f, int n, int t);
struct HInputs {
  Subspace u1, u2, e;
};
HInputs canonical_H_inputs(const Field& f, int n, int k, int t);
struct GInputs {
  Subspace u1, u2, u3, u4;
};
GInputs canonical_G_inputs(const Field& f, int n, int t);

// ---------------------------------------------------------------------------

enum class FormTag { Star, HForm, GForm, Other };

const char* form_name(FormTag tag);

struct Recognition {
  FormTag tag = FormTag::Other;
  std::vector<Subspace> witnesses;  // Star: {e}; HForm: {u1,u2,e}; GForm: {u1..u4}

  nlohmann::ordered_json to_json() const;
};

// Verbatim-form recognition: Star when the meet of all members has dimension
// >= t; else HForm / GForm when some witness choice rebuilds the family
// exactly. Guarded to families of at most 10^6 members.
Recognition recognize(const Family& fam, int t);

// ---------------------------------------------------------------------------

// Exact check of the rigidity implication: under
//   dim(u3 /\ u1) >= x1, dim(u3 /\ u2) >= x2, dim(u1 /\ u2) <= x3,
//   x1 + x2 - x3 = dim u3
// all five conclusions must hold (the three dimensions are forced exact,
// u1 /\ u2 <= u3, and u3 = u3 /\ u1 + u3 /\ u2). Throws HypothesisViolation
// when the premises fail.
bool rigidity_check(const Subspace& u1, const Subspace& u2, const Subspace& u3, int x1, int x2,
                    int x3);

// Exact check of the modular decomposition: if u1 /\ u2 <= uj and
// uj = uj /\ u1 + uj /\ u2 for j in {3,4}, then
// u3 /\ u4 = u3 /\ u4 /\ u1 + u3 /\ u4 /\ u2.
bool modular_check(const Subspace& u1, const Subspace& u2, const Subspace& u3, const Subspace& u4);

// Seeded samplers producing hypothesis-satisfying instances (constructive
// with light rejection; identical output for identical seeds on every
// platform since only raw mt19937_64 draws are used).
struct RigidityInstance {
  Subspace u1, u2, u3;
  int x1, x2, x3;
};
RigidityInstance sample_rigidity_instance(std::mt19937_64& rng, const Field& f, int n);

struct ModularInstance {
  Subspace u1, u2, u3, u4;
};
ModularInstance sample_modular_instance(std::mt19937_64& rng, const Field& f, int n);

}  // namespace qgrass
