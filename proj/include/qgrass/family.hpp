#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "qgrass/enumerate.hpp"

namespace qgrass {

// A finite, deduplicated set of equal-dimension subspaces of a common
// ambient space, kept in the global lexicographic order. Immutable.
class Family {
 public:
  Family(const Field& f, int n, int k, std::vector<Subspace> members);

  const Field& field() const { return *field_; }
  int q() const { return field_->q(); }
  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return members_.size(); }
  const Subspace& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Subspace>& members() const { return members_; }
  std::vector<Subspace>::const_iterator begin() const { return members_.begin(); }
  std::vector<Subspace>::const_iterator end() const { return members_.end(); }
  bool contains(const Subspace& s) const;

  bool operator==(const Family& o) const {
    return q() == o.q() && n_ == o.n_ && k_ == o.k_ && members_ == o.members_;
  }
  bool operator<(const Family& o) const { return members_ < o.members_; }

  // Family file: header "q=<q> n=<n> k=<k>", then one subspace per line in
  // lexicographic order. Reading is strict (canonical rows, sorted, no dups).
  void write(std::ostream& os) const;
  static Family read(std::istream& is);

 private:
  const Field* field_;
  int n_, k_;
  std::vector<Subspace> members_;
};

// conflicts[i] lists the members meeting member i in dimension < t,
// ascending; symmetric and irreflexive by construction.
struct ConflictMap {
  std::vector<std::vector<int>> conflicts;
  int max_degree = 0;
};

enum class Verdict { TIntersecting, AlmostOnly, NotAlmost };

const char* verdict_name(Verdict v);

struct FamilyClass {
  Verdict verdict = Verdict::TIntersecting;
  std::vector<std::pair<int, int>> bad_pairs;  // (i, j) with i < j, ascending
};

// Full pairwise dim_meet scan. Empty families are vacuously t-intersecting.
std::pair<ConflictMap, FamilyClass> classify(const Family& fam, int t);

// True iff dim(w /\ F) >= t for every member F.
bool is_t_cover(const Subspace& w, const Family& fam, int t);

struct TauResult {
  int tau = 0;
  std::vector<Subspace> min_covers;  // all covers of dimension tau, sorted
};

// Minimum dimension of a t-cover together with all minimum covers. The
// candidate sweep runs in dimension order t, t+1, ... and is confined to
// subspaces of the join S of all members: dim(W /\ F) = dim((W /\ S) /\ F)
// for F <= S, so no cover outside S can do better.
TauResult tau(const Family& fam, int t);

}  // namespace qgrass
