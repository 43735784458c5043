#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "mls/system.hpp"

namespace mls {

/// Turns a strict system into a permissive one. Whenever the strict oracle
/// says no but F_I is nonempty, the adapter may still say yes; which queries
/// get the gratuitous yes is a fixed pseudo-random function of (base, budget,
/// salt). A certifying adapter attaches a member of F_I to those answers, a
/// non-certifying one attaches nothing at all, not even the strict witness.
class PermissiveAdapter final : public ImplicitSetSystem {
 public:
  PermissiveAdapter(std::shared_ptr<const ImplicitSetSystem> inner, bool certifying, std::uint64_t salt = 0);

  const ImplicitSetSystem& inner() const { return *inner_; }
  /// Some member of F_I, if there is one.
  const std::optional<ElementSet>& any_member() const { return any_member_; }

  const UniverseInfo& universe() const override { return inner_->universe(); }
  SystemContract contract() const override;
  std::string kind() const override { return "permissive-" + inner_->kind(); }
  bool is_member(ElementSet s) const override { return inner_->is_member(s); }
  ExtensionOutcome extend_unchecked(const ExtensionQuery& q) const override;
  // Answers at budget k say nothing about budget k + 1.
  bool declares_monotone() const override { return false; }

 private:
  std::shared_ptr<const ImplicitSetSystem> inner_;
  bool certifying_;
  std::uint64_t salt_;
  std::optional<ElementSet> any_member_;
};

}  // namespace mls
