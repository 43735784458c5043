#include "mls/problems/tournament.hpp"

#include <sstream>

#include "text_lines.hpp"

namespace mls {

namespace {

struct TriangleSearch {
  const TournamentInstance& inst;
  BranchStats stats;
  ElementSet found;

  bool find(ElementSet removed, int budget) {
    ++stats.nodes;
    auto tri = find_triangle(inst, removed);
    if (!tri) {
      ++stats.leaves;
      found = removed;
      return true;
    }
    if (budget == 0) {
      ++stats.leaves;
      return false;
    }
    for (int v : *tri)
      if (find(removed | ElementSet::singleton(v), budget - 1)) return true;
    return false;
  }

  void collect(ElementSet removed, int remaining, std::vector<ElementSet>& out) {
    ++stats.nodes;
    auto tri = find_triangle(inst, removed);
    if (!tri) {
      ++stats.leaves;
      if (remaining == 0) out.push_back(removed);
      return;
    }
    if (remaining == 0) {
      ++stats.leaves;
      return;
    }
    for (int v : *tri) collect(removed | ElementSet::singleton(v), remaining - 1, out);
  }
};

}  // namespace

TournamentInstance make_tournament(int n, std::vector<ElementSet> out) {
  TournamentInstance inst;
  inst.vertices = UniverseInfo(n);
  if (out.size() != static_cast<std::size_t>(n)) throw Error(ErrorCode::InvalidParams, "orientation matrix size mismatch");
  for (int u = 0; u < n; ++u) {
    ElementSet row = out[static_cast<std::size_t>(u)];
    if (!inst.vertices.within(row)) throw Error(ErrorCode::ElementOutOfRange, "arc to a vertex outside the universe");
    if (row.contains(u)) throw Error(ErrorCode::InvalidParams, "self loop at vertex " + std::to_string(u + 1));
    for (int v = u + 1; v < n; ++v) {
      bool uv = row.contains(v);
      bool vu = out[static_cast<std::size_t>(v)].contains(u);
      if (uv && vu) throw Error(ErrorCode::DuplicateArc, "both arcs between " + std::to_string(u + 1) + " and " + std::to_string(v + 1));
      if (!uv && !vu) throw Error(ErrorCode::IncompleteTournament, "no arc between " + std::to_string(u + 1) + " and " + std::to_string(v + 1));
    }
  }
  inst.out = std::move(out);
  return inst;
}

TournamentInstance parse_tournament(const std::string& text) {
  auto lines = detail::tokenize_lines(text, "#");
  if (lines.empty()) throw ParseFailure(ErrorCode::ParseError, 0, "missing 'p tour' header");
  auto header = detail::parse_header(lines[0], "tour", 1);
  int n = detail::checked_universe(header[0], lines[0].number);
  std::vector<ElementSet> out(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens.size() != 2) throw ParseFailure(ErrorCode::ParseError, line.number, "expected 'u v'");
    long long u = detail::parse_int(line.tokens[0], line.number);
    long long v = detail::parse_int(line.tokens[1], line.number);
    for (long long x : {u, v})
      if (x < 1 || x > n)
        throw ParseFailure(ErrorCode::ElementOutOfRange, line.number, "vertex " + std::to_string(x) + " outside 1.." + std::to_string(n));
    if (u == v) throw ParseFailure(ErrorCode::ParseError, line.number, "self loop");
    int a = static_cast<int>(u - 1), b = static_cast<int>(v - 1);
    if (out[static_cast<std::size_t>(a)].contains(b) || out[static_cast<std::size_t>(b)].contains(a))
      throw ParseFailure(ErrorCode::DuplicateArc, line.number, "pair " + line.tokens[0] + " " + line.tokens[1] + " listed twice");
    out[static_cast<std::size_t>(a)].insert(b);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!out[static_cast<std::size_t>(a)].contains(b) && !out[static_cast<std::size_t>(b)].contains(a))
        throw ParseFailure(ErrorCode::IncompleteTournament, lines.back().number,
                           "missing pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
  return make_tournament(n, std::move(out));
}

std::string format_tournament(const TournamentInstance& inst) {
  std::ostringstream out;
  int n = inst.vertices.n;
  out << "p tour " << n << '\n';
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (inst.beats(u, v)) out << u + 1 << ' ' << v + 1 << '\n';
      else out << v + 1 << ' ' << u + 1 << '\n';
    }
  return out.str();
}

std::optional<std::array<int, 3>> find_triangle(const TournamentInstance& inst, ElementSet removed) {
  const int n = inst.vertices.n;
  const ElementSet alive = inst.vertices.all() - removed;
  for (int u = 0; u < n; ++u) {
    if (!alive.contains(u)) continue;
    const ElementSet out_u = inst.out[static_cast<std::size_t>(u)];
    for (int v = u + 1; v < n; ++v) {
      if (!alive.contains(v)) continue;
      const ElementSet out_v = inst.out[static_cast<std::size_t>(v)];
      // Third vertex w > v closing a cycle through u and v.
      ElementSet closing = out_u.contains(v) ? (out_v - out_u) : (out_u - out_v);
      closing &= alive;
      closing -= ElementSet::full(v + 1);
      closing.erase(u);
      if (!closing.empty()) return std::array<int, 3>{u, v, closing.lowest()};
    }
  }
  return std::nullopt;
}

ExtensionOutcome extend_tournament_fvs(const TournamentInstance& inst, ElementSet base, int budget) {
  ExtensionOutcome out;
  TriangleSearch search{inst, {}, {}};
  if (search.find(base, budget)) {
    out.decision = Decision::Yes;
    out.witness = search.found - base;
  }
  out.stats = search.stats;
  return out;
}

TournamentSystem::TournamentSystem(TournamentInstance inst) : inst_(std::move(inst)) {}

SystemContract TournamentSystem::contract() const {
  SystemContract c;
  c.extension_base = 3;
  c.uniformity_constant = Rational(3);
  return c;
}

bool TournamentSystem::is_member(ElementSet s) const { return !find_triangle(inst_, s).has_value(); }

ExtensionOutcome TournamentSystem::extend_unchecked(const ExtensionQuery& q) const {
  return extend_tournament_fvs(inst_, q.base, q.budget);
}

SliceCandidates TournamentSystem::slice_candidates(ElementSet base, int k) const {
  SliceCandidates out;
  TriangleSearch search{inst_, {}, {}};
  search.collect(base, k, out.sets);
  for (ElementSet& s : out.sets) s -= base;
  out.stats = search.stats;
  return out;
}

}  // namespace mls
