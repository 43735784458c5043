#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mls/system.hpp"

namespace mls {

struct HittingSetInstance {
  UniverseInfo universe;
  std::vector<ElementSet> sets;  // nonempty, within the universe
  int d = 0;                     // largest set cardinality
  std::optional<int> cap_k;      // F_I only holds hitting sets of size <= cap_k
};

/// Text format: optional '#' comment lines, a header "p hs <n> <m>", then m
/// lines of 1-based element indices separated by whitespace.
HittingSetInstance parse_hitting_set(const std::string& text);
std::string format_hitting_set(const HittingSetInstance& inst);

/// Validates and computes d; throws on empty or out-of-range sets.
HittingSetInstance make_hitting_set(int n, std::vector<ElementSet> sets, std::optional<int> cap_k = std::nullopt);

/// Branches on an unhit set with the fewest elements; at most d^k leaves.
ExtensionOutcome extend_hitting_set(const HittingSetInstance& inst, ElementSet base, int budget);

class HittingSetSystem final : public ImplicitSetSystem {
 public:
  explicit HittingSetSystem(HittingSetInstance inst);

  const HittingSetInstance& instance() const { return inst_; }

  const UniverseInfo& universe() const override { return inst_.universe; }
  SystemContract contract() const override;
  std::string kind() const override { return "hitting-set"; }
  bool is_member(ElementSet s) const override;
  ExtensionOutcome extend_unchecked(const ExtensionQuery& q) const override;
  bool has_slice_enumerator() const override { return true; }
  SliceCandidates slice_candidates(ElementSet base, int k) const override;

 private:
  HittingSetInstance inst_;
};

}  // namespace mls
