#include "mls/permissive.hpp"

#include "mls/sampling.hpp"

namespace mls {

PermissiveAdapter::PermissiveAdapter(std::shared_ptr<const ImplicitSetSystem> inner, bool certifying, std::uint64_t salt)
    : inner_(std::move(inner)), certifying_(certifying), salt_(salt) {
  auto full = inner_->extend({ElementSet{}, inner_->n()});
  if (full.yes() && full.witness) any_member_ = *full.witness;
}

SystemContract PermissiveAdapter::contract() const {
  SystemContract c = inner_->contract();
  c.mode = OracleMode::Permissive;
  c.certifying = certifying_;
  return c;
}

ExtensionOutcome PermissiveAdapter::extend_unchecked(const ExtensionQuery& q) const {
  ExtensionOutcome out = inner_->extend_unchecked(q);
  if (!out.yes() && any_member_) {
    const std::uint64_t h = mix64(salt_ ^ mix64(q.base.bits() ^ mix64(static_cast<std::uint64_t>(q.budget))));
    if (h & 1U) {
      out.decision = Decision::Yes;
      out.certificate = *any_member_;
    }
  }
  if (!certifying_) {
    out.witness.reset();
    out.certificate.reset();
  }
  return out;
}

}  // namespace mls
