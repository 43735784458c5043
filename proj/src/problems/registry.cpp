#include "mls/problems/registry.hpp"

#include "mls/error.hpp"
#include "mls/problems/cnf.hpp"
#include "mls/problems/hitting_set.hpp"
#include "mls/problems/tournament.hpp"

namespace mls {

ProblemKind parse_problem_kind(const std::string& text) {
  if (text == "hs") return ProblemKind::HittingSet;
  if (text == "sat") return ProblemKind::Cnf;
  if (text == "tour") return ProblemKind::Tournament;
  throw Error(ErrorCode::InvalidParams, "unknown problem '" + text + "' (expected hs, sat or tour)");
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::HittingSet: return "hs";
    case ProblemKind::Cnf: return "sat";
    case ProblemKind::Tournament: return "tour";
  }
  return "unknown";
}

std::shared_ptr<const ImplicitSetSystem> load_system(ProblemKind kind, const std::string& text) {
  switch (kind) {
    case ProblemKind::HittingSet: return std::make_shared<HittingSetSystem>(parse_hitting_set(text));
    case ProblemKind::Cnf: return std::make_shared<CnfSystem>(parse_dimacs_cnf(text));
    case ProblemKind::Tournament: return std::make_shared<TournamentSystem>(parse_tournament(text));
  }
  throw Error(ErrorCode::InvalidParams, "unknown problem kind");
}

std::shared_ptr<const ImplicitSetSystem> random_system(ProblemKind kind, int n, gen::Rng& rng) {
  switch (kind) {
    case ProblemKind::HittingSet: return std::make_shared<HittingSetSystem>(gen::random_uniform_hitting_set(n, n, 3, rng));
    case ProblemKind::Cnf: return std::make_shared<CnfSystem>(gen::random_cnf(n, n, 3, 0.6, rng));
    case ProblemKind::Tournament: return std::make_shared<TournamentSystem>(gen::random_tournament(n, rng));
  }
  throw Error(ErrorCode::InvalidParams, "unknown problem kind");
}

ContractOverride::ContractOverride(std::shared_ptr<const ImplicitSetSystem> inner, Rational extension_base)
    : inner_(std::move(inner)), base_(std::move(extension_base)) {
  contract().validate();
}

SystemContract ContractOverride::contract() const {
  SystemContract c = inner_->contract();
  c.extension_base = base_;
  return c;
}

}  // namespace mls
