#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qgrass/qfunc.hpp"
#include "qgrass/subspace.hpp"

namespace qgrass {

// Materialization cap for any single enumeration (streams, covers, search
// vertex sets). Mutable process-wide knob; raise it before asking for a
// bigger Grassmannian.
std::size_t& max_enumeration();

// A deterministic, restartable sequence of subspaces in the global
// lexicographic order of their canonical basis serialization. Materialized:
// every producer below is guarded by count, so iteration, restart and
// prefix-range splitting are plain vector views.
class SubspaceStream {
 public:
  SubspaceStream() = default;
  explicit SubspaceStream(std::vector<Subspace> items) : items_(std::move(items)) {}

  std::size_t size() const { return items_.size(); }
  const Subspace& operator[](std::size_t i) const { return items_[i]; }
  std::vector<Subspace>::const_iterator begin() const { return items_.begin(); }
  std::vector<Subspace>::const_iterator end() const { return items_.end(); }
  const std::vector<Subspace>& items() const { return items_; }
  std::vector<Subspace> take() && { return std::move(items_); }

 private:
  std::vector<Subspace> items_;
};

// All k-subspaces of GF(q)^n, built directly from RREF patterns (pivot
// column choice plus free entries), never from vector subsets.
// Guard: q^n <= 2^24; count <= max_enumeration().
SubspaceStream enumerate_k_subspaces(const Field& f, int n, int k);

// All k-subspaces containing c; count = [n - dim c, k - dim c]_q.
SubspaceStream enumerate_superspaces(const Subspace& c, int k);

// All b-subspaces B with c <= B and dim(B /\ a) = i (the profile of
// profile_count). Constructive: extends c by rows chosen inside a and in a
// complement layer per the RREF pattern; never filters the Grassmannian.
SubspaceStream enumerate_profile(const Subspace& a, const Subspace& c, int b, int i);

// Visitor forms, for callers assembling large families without an
// intermediate stream. Emission order is deterministic but not sorted.
void visit_superspaces(const Subspace& c, int k, const std::function<void(Subspace&&)>& visit);
void visit_profile(const Subspace& a, const Subspace& c, int b, int i,
                   const std::function<void(Subspace&&)>& visit);

}  // namespace qgrass
