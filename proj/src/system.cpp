#include "mls/system.hpp"

#include "mls/error.hpp"

namespace mls {

void SystemContract::validate() const {
  if (extension_base <= 1) throw Error(ErrorCode::InvalidParams, "extension base must exceed 1, got " + to_string(extension_base));
  if (mode == OracleMode::Strict && !certifying)
    throw Error(ErrorCode::InvalidParams, "a strict oracle is always certifying");
}

void validate_query(const UniverseInfo& u, const ExtensionQuery& q) {
  if (!u.within(q.base)) throw Error(ErrorCode::InvalidParams, "base set outside the universe");
  if (q.budget < 0) throw Error(ErrorCode::InvalidParams, "negative budget");
  if (q.budget > u.n - q.base.size())
    throw Error(ErrorCode::BudgetExceedsUniverse, "budget " + std::to_string(q.budget) + " exceeds " +
                                                      std::to_string(u.n - q.base.size()) + " free elements");
}

ExtensionOutcome ImplicitSetSystem::extend(const ExtensionQuery& q) const {
  validate_query(universe(), q);
  return extend_unchecked(q);
}

SliceCandidates ImplicitSetSystem::slice_candidates(ElementSet, int) const {
  throw Error(ErrorCode::NotUniform, kind() + " has no slice enumerator");
}

bool ImplicitSetSystem::is_minimal_member(ElementSet s) const {
  // Remove-one test; exact for superset-closed families. Backends whose
  // families are not superset-closed override this.
  if (!is_member(s)) return false;
  bool minimal = true;
  s.for_each([&](int e) {
    if (minimal && is_member(s - ElementSet::singleton(e))) minimal = false;
  });
  return minimal;
}

std::string to_string(Decision d) { return d == Decision::Yes ? "yes" : "no"; }

}  // namespace mls
