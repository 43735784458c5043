#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "mls/problems/generators.hpp"
#include "mls/system.hpp"

namespace mls {

enum class ProblemKind { HittingSet, Cnf, Tournament };

/// "hs", "sat" or "tour".
ProblemKind parse_problem_kind(const std::string& text);
std::string to_string(ProblemKind kind);

/// Parses an instance in the problem's text format.
std::shared_ptr<const ImplicitSetSystem> load_system(ProblemKind kind, const std::string& text);

/// Random instance of the kind used by the verification and benchmark
/// harnesses: n 3-sets, n 3-CNF clauses with positive bias 0.6, or a
/// random tournament.
std::shared_ptr<const ImplicitSetSystem> random_system(ProblemKind kind, int n, gen::Rng& rng);

/// Delegates everything but the contract's extension base, so schedules can
/// be computed for some other claimed oracle running time.
class ContractOverride final : public ImplicitSetSystem {
 public:
  ContractOverride(std::shared_ptr<const ImplicitSetSystem> inner, Rational extension_base);

  const UniverseInfo& universe() const override { return inner_->universe(); }
  SystemContract contract() const override;
  std::string kind() const override { return inner_->kind(); }
  bool is_member(ElementSet s) const override { return inner_->is_member(s); }
  ExtensionOutcome extend_unchecked(const ExtensionQuery& q) const override { return inner_->extend_unchecked(q); }
  bool declares_monotone() const override { return inner_->declares_monotone(); }
  bool has_slice_enumerator() const override { return inner_->has_slice_enumerator(); }
  SliceCandidates slice_candidates(ElementSet base, int k) const override { return inner_->slice_candidates(base, k); }
  bool is_minimal_member(ElementSet s) const override { return inner_->is_minimal_member(s); }

 private:
  std::shared_ptr<const ImplicitSetSystem> inner_;
  Rational base_;
};

}  // namespace mls
