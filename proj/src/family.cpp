#include "qgrass/family.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace qgrass {

Family::Family(const Field& f, int n, int k, std::vector<Subspace> members)
    : field_(&f), n_(n), k_(k), members_(std::move(members)) {
  for (const Subspace& s : members_) {
    if (s.q() != f.q() || s.n() != n)
      throw Error(ErrorCode::AmbientMismatch, "family member in wrong ambient space");
    if (s.k() != k)
      throw Error(ErrorCode::PreconditionViolation, "family member of wrong dimension");
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Family::contains(const Subspace& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

void Family::write(std::ostream& os) const {
  os << "q=" << q() << " n=" << n_ << " k=" << k_ << "\n";
  for (const Subspace& s : members_) os << s.to_string() << "\n";
}

Family Family::read(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::ParseError, "missing family header");
  int q = 0, n = -1, k = -1;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("q=", 0) == 0) q = std::stoi(tok.substr(2));
      else if (tok.rfind("n=", 0) == 0) n = std::stoi(tok.substr(2));
      else if (tok.rfind("k=", 0) == 0) k = std::stoi(tok.substr(2));
      else throw Error(ErrorCode::ParseError, "unexpected token in family header: " + tok);
    }
  }
  if (q < 2 || n < 0 || k < 0) throw Error(ErrorCode::ParseError, "incomplete family header");
  const Field& f = Field::of(q);
  std::vector<Subspace> members;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() && k != 0) continue;  // tolerate trailing blank lines
    Subspace s = Subspace::parse(f, n, line);
    if (s.k() != k) throw Error(ErrorCode::ParseError, "family member of wrong dimension");
    if (!members.empty() && !(members.back() < s))
      throw Error(ErrorCode::ParseError, "family file must be sorted and duplicate-free");
    members.push_back(std::move(s));
    if (k == 0) break;  // a zero-dimensional member is a single empty line
  }
  return Family(f, n, k, std::move(members));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::TIntersecting: return "TIntersecting";
    case Verdict::AlmostOnly: return "AlmostOnly";
    case Verdict::NotAlmost: return "NotAlmost";
  }
  return "?";
}

std::pair<ConflictMap, FamilyClass> classify(const Family& fam, int t) {
  if (t < 1 || t > fam.k())
    throw Error(ErrorCode::PreconditionViolation, "classify requires 1 <= t <= k");
  const int m = static_cast<int>(fam.size());
  ConflictMap cm;
  cm.conflicts.resize(m);
  FamilyClass fc;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (dim_meet(fam[i], fam[j]) < t) {
        cm.conflicts[i].push_back(j);
        cm.conflicts[j].push_back(i);
        fc.bad_pairs.emplace_back(i, j);
      }
  for (const auto& c : cm.conflicts) cm.max_degree = std::max(cm.max_degree, static_cast<int>(c.size()));
  fc.verdict = cm.max_degree == 0   ? Verdict::TIntersecting
               : cm.max_degree == 1 ? Verdict::AlmostOnly
                                    : Verdict::NotAlmost;
  return {std::move(cm), std::move(fc)};
}

bool is_t_cover(const Subspace& w, const Family& fam, int t) {
  for (const Subspace& s : fam)
    if (dim_meet(w, s) < t) return false;
  return true;
}

TauResult tau(const Family& fam, int t) {
  if (fam.size() == 0)
    throw Error(ErrorCode::PreconditionViolation, "tau is undefined on an empty family");
  if (t < 1 || t > fam.k())
    throw Error(ErrorCode::PreconditionViolation, "tau requires 1 <= t <= k");

  Subspace s = fam[0];
  for (std::size_t i = 1; i < fam.size(); ++i) s = join(s, fam[i]);

  for (int d = t; d <= s.k(); ++d) {
    TauResult res;
    res.tau = d;
    for (const Subspace& cand : enumerate_k_subspaces(fam.field(), s.k(), d)) {
      Subspace w = lift_through(s, cand);
      if (is_t_cover(w, fam, t)) res.min_covers.push_back(std::move(w));
    }
    if (!res.min_covers.empty()) {
      std::sort(res.min_covers.begin(), res.min_covers.end());
      return res;
    }
  }
  QGRASS_CHECK(false, "join of members must itself be a cover");
  return {};
}

}  // namespace qgrass
