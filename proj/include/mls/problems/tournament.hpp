#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mls/system.hpp"

namespace mls {

/// out[u] holds every v that u beats. Exactly one of u->v, v->u for u != v.
struct TournamentInstance {
  UniverseInfo vertices;
  std::vector<ElementSet> out;

  bool beats(int u, int v) const { return out[static_cast<std::size_t>(u)].contains(v); }
};

/// "p tour <n>" then n(n-1)/2 lines "u v" (1-based) meaning u beats v.
TournamentInstance parse_tournament(const std::string& text);
std::string format_tournament(const TournamentInstance& inst);

/// Throws IncompleteTournament / DuplicateArc / InvalidParams on a matrix
/// that is not a tournament.
TournamentInstance make_tournament(int n, std::vector<ElementSet> out);

/// First directed triangle (in lexicographic vertex-triple order) among the
/// vertices not in `removed`.
std::optional<std::array<int, 3>> find_triangle(const TournamentInstance& inst, ElementSet removed);

/// Branches on the three vertices of a directed triangle; at most 3^k leaves.
ExtensionOutcome extend_tournament_fvs(const TournamentInstance& inst, ElementSet base, int budget);

class TournamentSystem final : public ImplicitSetSystem {
 public:
  explicit TournamentSystem(TournamentInstance inst);

  const TournamentInstance& instance() const { return inst_; }

  const UniverseInfo& universe() const override { return inst_.vertices; }
  SystemContract contract() const override;
  std::string kind() const override { return "tournament-fvs"; }
  /// T - s is acyclic, i.e. has no directed triangle.
  bool is_member(ElementSet s) const override;
  ExtensionOutcome extend_unchecked(const ExtensionQuery& q) const override;
  bool has_slice_enumerator() const override { return true; }
  SliceCandidates slice_candidates(ElementSet base, int k) const override;

 private:
  TournamentInstance inst_;
};

}  // namespace mls
