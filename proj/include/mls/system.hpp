#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mls/element_set.hpp"
#include "mls/rational.hpp"

namespace mls {

enum class Decision { No, Yes };

enum class OracleMode { Strict, Permissive };

struct ExtensionQuery {
  ElementSet base;
  int budget = 0;
};

struct BranchStats {
  std::uint64_t nodes = 0;   // recursion nodes visited, root included
  std::uint64_t leaves = 0;  // nodes that did not branch further

  BranchStats& operator+=(const BranchStats& o) {
    nodes += o.nodes;
    leaves += o.leaves;
    return *this;
  }
};

/// Answer of an extension oracle. `witness` is the added set S (disjoint from
/// the query base). Permissive certifying oracles may instead return a
/// `certificate`: some member of the family, not necessarily above the base.
struct ExtensionOutcome {
  Decision decision = Decision::No;
  std::optional<ElementSet> witness;
  std::optional<ElementSet> certificate;
  BranchStats stats;

  bool yes() const { return decision == Decision::Yes; }
};

struct SystemContract {
  OracleMode mode = OracleMode::Strict;
  bool certifying = true;
  std::optional<Rational> uniformity_constant;
  Rational extension_base = 2;

  /// Throws Error(InvalidParams) when extension_base <= 1 or a strict oracle
  /// claims to be non-certifying.
  void validate() const;
};

/// Leaves of a slice branching tree that reached a family member with
/// exactly the requested number of added elements. May contain duplicates
/// and non-minimal sets; the enumerate module filters them.
struct SliceCandidates {
  std::vector<ElementSet> sets;
  BranchStats stats;
};

/// An implicit set system (U_I, F_I) over a universe of at most 64 elements.
/// Implementations are immutable after construction and all queries are
/// const, so one instance may be queried from several threads at once.
class ImplicitSetSystem {
 public:
  virtual ~ImplicitSetSystem() = default;

  virtual const UniverseInfo& universe() const = 0;
  virtual SystemContract contract() const = 0;
  virtual std::string kind() const = 0;

  int n() const { return universe().n; }

  /// S in F_I.
  virtual bool is_member(ElementSet s) const = 0;

  /// Callers go through extend(), which validates the query first.
  virtual ExtensionOutcome extend_unchecked(const ExtensionQuery& q) const = 0;

  ExtensionOutcome extend(const ExtensionQuery& q) const;

  /// Superset-closed decision: "some solution of size <= k" is monotone in k.
  virtual bool declares_monotone() const { return true; }

  virtual bool has_slice_enumerator() const { return false; }
  /// Depth-k branching leaves above `base`; only called when
  /// has_slice_enumerator() is true.
  virtual SliceCandidates slice_candidates(ElementSet base, int k) const;
  /// Member with no proper subset in F_I.
  virtual bool is_minimal_member(ElementSet s) const;
};

/// Throws Error(InvalidParams) for a base outside the universe or a negative
/// budget, Error(BudgetExceedsUniverse) when budget > n - |base|.
void validate_query(const UniverseInfo& u, const ExtensionQuery& q);

std::string to_string(Decision d);

}  // namespace mls
