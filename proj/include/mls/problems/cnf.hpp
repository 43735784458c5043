#pragma once

#include <string>
#include <vector>

#include "mls/problems/hitting_set.hpp"
#include "mls/system.hpp"

namespace mls {

struct Clause {
  ElementSet positives;
  ElementSet negatives;

  int width() const { return positives.size() + negatives.size(); }
  bool satisfied_by(ElementSet ones) const { return positives.intersects(ones) || !negatives.subset_of(ones); }
};

struct CnfStats {
  int tautologies_dropped = 0;  // clauses containing both x and -x
};

/// F_I = satisfying assignments, each identified with its set of true
/// variables. The minimal-object family is the minimal models.
struct CnfInstance {
  UniverseInfo variables;
  std::vector<Clause> clauses;  // positives and negatives disjoint
  int d = 0;                    // widest clause
  bool has_empty_clause = false;
  CnfStats stats;
};

/// DIMACS: 'c' comment lines (and '#'), "p cnf <n> <m>", then m clauses of
/// nonzero literals each terminated by 0. Clauses may span lines.
CnfInstance parse_dimacs_cnf(const std::string& text);
std::string format_dimacs_cnf(const CnfInstance& inst);

CnfInstance make_cnf(int n, std::vector<Clause> clauses);

/// Each set {e1..ej} becomes the clause (x_e1 | ... | x_ej).
CnfInstance cnf_from_hitting_set(const HittingSetInstance& hs);

/// Branches from the all-zero assignment above `base` on the positive
/// literals of an unsatisfied clause; at most d^k leaves.
ExtensionOutcome extend_min_ones_dsat(const CnfInstance& inst, ElementSet base, int budget);

/// True iff some model sets only variables inside `allowed` to 1.
bool has_model_within(const CnfInstance& inst, ElementSet allowed);

class CnfSystem final : public ImplicitSetSystem {
 public:
  explicit CnfSystem(CnfInstance inst);

  const CnfInstance& instance() const { return inst_; }

  const UniverseInfo& universe() const override { return inst_.variables; }
  SystemContract contract() const override;
  std::string kind() const override { return "min-ones-sat"; }
  bool is_member(ElementSet s) const override;
  ExtensionOutcome extend_unchecked(const ExtensionQuery& q) const override;
  bool has_slice_enumerator() const override { return true; }
  SliceCandidates slice_candidates(ElementSet base, int k) const override;
  /// Exact check: no model is a proper subset of s. Models are not closed
  /// under supersets, so the remove-one test would be wrong here.
  bool is_minimal_member(ElementSet s) const override;

 private:
  CnfInstance inst_;
};

}  // namespace mls
