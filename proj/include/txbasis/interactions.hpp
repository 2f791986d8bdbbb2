#pragma once

// Bounded transaction interactions and the coverage requirements built on
// them: every length-k sequence over the tuple set U (repetition allowed),
// times every terminal-compatible choice of basis path per slot.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "txbasis/basis.hpp"
#include "txbasis/model.hpp"

namespace txbasis {

enum class Outcome { Success, Revert };

inline const char* to_string(Outcome o) { return o == Outcome::Success ? "success" : "revert"; }
inline Outcome parse_outcome(const std::string& s) {
  if (s == "success") return Outcome::Success;
  if (s == "revert") return Outcome::Revert;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}
inline Terminal terminal_for(Outcome o) { return o == Outcome::Success ? Terminal::Exit : Terminal::Revert; }

struct TxTuple {
  std::string account;
  std::string contract;
  std::string function;
  Outcome outcome = Outcome::Success;

  std::string qualified() const { return contract + "." + function; }
  std::string to_string() const {
    return account + "." + contract + "." + function + "." + txbasis::to_string(outcome);
  }
  bool operator==(const TxTuple&) const = default;
};

/// A tuple of U with the indices of its terminal-compatible basis paths.
struct TupleEntry {
  TxTuple tuple;
  std::vector<int> paths;
};

struct CoverageRequirement {
  std::vector<int> tuples;  // indices into U
  std::vector<int> paths;   // per slot: index into that function's basis set
};

struct RequirementSet {
  int k = 0;
  std::vector<TupleEntry> u;
  std::vector<CoverageRequirement> requirements;

  std::string id(const CoverageRequirement& r) const {
    std::string out;
    for (size_t i = 0; i < r.tuples.size(); ++i) {
      if (i) out += " > ";
      out += u[r.tuples[i]].tuple.to_string() + "#" + std::to_string(r.paths[i]);
    }
    return out;
  }
};

/// Basis sets keyed by qualified function name.
class BasisLibrary {
 public:
  BasisLibrary() = default;
  explicit BasisLibrary(std::vector<BasisPathSet> sets) {
    for (auto& s : sets) add(std::move(s));
  }
  void add(BasisPathSet s) {
    std::string key = s.function;
    sets_[key] = std::move(s);
  }
  const BasisPathSet* find(const std::string& qualified) const {
    auto it = sets_.find(qualified);
    return it == sets_.end() ? nullptr : &it->second;
  }
  const BasisPathSet& at(const std::string& qualified) const {
    const BasisPathSet* s = find(qualified);
    if (!s) throw GraphError("no basis set for '" + qualified + "'");
    return *s;
  }
  const std::map<std::string, BasisPathSet>& sets() const { return sets_; }

 private:
  std::map<std::string, BasisPathSet> sets_;
};

inline BasisLibrary build_basis_library(const Tcfg& g, const SearchBudget& budget = {}) {
  return BasisLibrary(generate_all_wtpbs(g, budget));
}

/// U in account, contract, function (declaration order), outcome order;
/// only outcomes with a matching-terminal basis path are kept.
inline std::vector<TupleEntry> enumerate_tuples(const DappModel& model, const BasisLibrary& bases) {
  std::vector<TupleEntry> u;
  for (const auto& a : model.accounts) {
    for (const auto& c : model.contracts) {
      for (const auto& f : c.state_changing) {
        const BasisPathSet& b = bases.at(c.name + "." + f.name);
        for (Outcome o : {Outcome::Success, Outcome::Revert}) {
          TupleEntry e{{a.name, c.name, f.name, o}, {}};
          for (size_t i = 0; i < b.paths.size(); ++i)
            if (b.paths[i].terminal == terminal_for(o)) e.paths.push_back(static_cast<int>(i));
          if (!e.paths.empty()) u.push_back(std::move(e));
        }
      }
    }
  }
  return u;
}

/// (sum of per-tuple path counts)^k. Throws on 64-bit overflow.
inline std::uint64_t count_requirements(const std::vector<TupleEntry>& u, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::uint64_t per_slot = 0;
  for (const auto& e : u) per_slot += e.paths.size();
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (per_slot != 0 && total > UINT64_MAX / per_slot) throw std::overflow_error("requirement count overflows");
    total *= per_slot;
  }
  return total;
}

/// All requirements in lexicographic (tuple sequence, path choice) order.
inline RequirementSet enumerate_requirements(std::vector<TupleEntry> u, int k, std::uint64_t limit = 50'000'000) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (count_requirements(u, k) > limit) throw std::length_error("too many requirements to enumerate");
  RequirementSet rs;
  rs.k = k;
  rs.u = std::move(u);
  if (rs.u.empty()) return rs;
  const int n = static_cast<int>(rs.u.size());
  std::vector<int> seq(k, 0);
  while (true) {
    std::vector<int> choice(k, 0);
    while (true) {
      CoverageRequirement r{seq, {}};
      for (int i = 0; i < k; ++i) r.paths.push_back(rs.u[seq[i]].paths[choice[i]]);
      rs.requirements.push_back(std::move(r));
      int i = k - 1;
      while (i >= 0 && ++choice[i] == static_cast<int>(rs.u[seq[i]].paths.size())) choice[i--] = 0;
      if (i < 0) break;
    }
    int i = k - 1;
    while (i >= 0 && ++seq[i] == n) seq[i--] = 0;
    if (i < 0) break;
  }
  return rs;
}

/// Requirement ids (see RequirementSet::id) excluded from the achievable
/// denominator, each with a free-text reason.
struct InfeasibleAnnotations {
  std::map<std::string, std::string> reasons;

  bool contains(const std::string& id) const { return reasons.count(id) > 0; }
};

}  // namespace txbasis
