#include "mls/problems/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "text_lines.hpp"

namespace mls {

namespace {

struct CnfSearch {
  const std::vector<Clause>& clauses;
  ElementSet allowed;  // variables that may still be flipped to 1
  BranchStats stats;
  ElementSet found;

  // Unsatisfied clause with the fewest flippable positives. Sets `dead` when
  // some unsatisfied clause has none.
  std::optional<ElementSet> pick(ElementSet ones, bool& dead) const {
    dead = false;
    std::optional<ElementSet> best;
    for (const Clause& c : clauses) {
      if (c.satisfied_by(ones)) continue;
      ElementSet cand = c.positives & allowed;
      cand -= ones;
      if (cand.empty()) {
        dead = true;
        return std::nullopt;
      }
      if (!best || cand.size() < best->size()) best = cand;
    }
    return best;
  }

  bool find(ElementSet ones, int budget) {
    ++stats.nodes;
    bool dead = false;
    auto cand = pick(ones, dead);
    if (!dead && !cand) {
      ++stats.leaves;
      found = ones;
      return true;
    }
    if (dead || budget == 0) {
      ++stats.leaves;
      return false;
    }
    bool ok = false;
    cand->for_each([&](int v) {
      if (!ok) ok = find(ones | ElementSet::singleton(v), budget - 1);
    });
    return ok;
  }

  void collect(ElementSet ones, int remaining, std::vector<ElementSet>& out) {
    ++stats.nodes;
    bool dead = false;
    auto cand = pick(ones, dead);
    if (!dead && !cand) {
      ++stats.leaves;
      if (remaining == 0) out.push_back(ones);
      return;
    }
    if (dead || remaining == 0) {
      ++stats.leaves;
      return;
    }
    cand->for_each([&](int v) { collect(ones | ElementSet::singleton(v), remaining - 1, out); });
  }
};

}  // namespace

CnfInstance make_cnf(int n, std::vector<Clause> clauses) {
  CnfInstance inst;
  inst.variables = UniverseInfo(n);
  for (Clause& c : clauses) {
    if (!inst.variables.within(c.positives | c.negatives))
      throw Error(ErrorCode::ElementOutOfRange, "clause mentions a variable outside the universe");
    if (c.positives.intersects(c.negatives)) {
      ++inst.stats.tautologies_dropped;
      continue;
    }
    if (c.width() == 0) inst.has_empty_clause = true;
    inst.d = std::max(inst.d, c.width());
    inst.clauses.push_back(c);
  }
  return inst;
}

CnfInstance parse_dimacs_cnf(const std::string& text) {
  auto lines = detail::tokenize_lines(text, "c#%");
  if (lines.empty()) throw ParseFailure(ErrorCode::ParseError, 0, "missing 'p cnf' header");
  auto header = detail::parse_header(lines[0], "cnf", 2);
  int n = detail::checked_universe(header[0], lines[0].number);
  if (header[1] < 0) throw ParseFailure(ErrorCode::ParseError, lines[0].number, "negative clause count");
  auto m = static_cast<std::size_t>(header[1]);

  std::vector<Clause> clauses;
  Clause current;
  bool open = false;
  std::size_t last_line = lines[0].number;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    last_line = lines[i].number;
    for (const auto& tok : lines[i].tokens) {
      long long lit = detail::parse_int(tok, lines[i].number);
      if (lit == 0) {
        clauses.push_back(current);
        current = {};
        open = false;
        continue;
      }
      long long v = std::llabs(lit);
      if (v > n)
        throw ParseFailure(ErrorCode::ElementOutOfRange, lines[i].number,
                           "variable " + std::to_string(v) + " outside 1.." + std::to_string(n));
      (lit > 0 ? current.positives : current.negatives).insert(static_cast<int>(v - 1));
      open = true;
    }
  }
  if (open) throw ParseFailure(ErrorCode::ParseError, last_line, "clause not terminated by 0");
  if (clauses.size() != m)
    throw ParseFailure(ErrorCode::ParseError, last_line,
                       "header declares " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()));
  return make_cnf(n, std::move(clauses));
}

std::string format_dimacs_cnf(const CnfInstance& inst) {
  std::ostringstream out;
  std::size_t m = inst.clauses.size();
  out << "p cnf " << inst.variables.n << ' ' << m << '\n';
  for (const Clause& c : inst.clauses) {
    c.positives.for_each([&](int v) { out << v + 1 << ' '; });
    c.negatives.for_each([&](int v) { out << '-' << v + 1 << ' '; });
    out << "0\n";
  }
  return out.str();
}

CnfInstance cnf_from_hitting_set(const HittingSetInstance& hs) {
  std::vector<Clause> clauses;
  clauses.reserve(hs.sets.size());
  for (ElementSet s : hs.sets) clauses.push_back({s, {}});
  return make_cnf(hs.universe.n, std::move(clauses));
}

ExtensionOutcome extend_min_ones_dsat(const CnfInstance& inst, ElementSet base, int budget) {
  ExtensionOutcome out;
  if (inst.has_empty_clause) {
    out.stats = {1, 1};
    return out;
  }
  CnfSearch search{inst.clauses, inst.variables.all() - base, {}, {}};
  if (search.find(base, budget)) {
    out.decision = Decision::Yes;
    out.witness = search.found - base;
  }
  out.stats = search.stats;
  return out;
}

bool has_model_within(const CnfInstance& inst, ElementSet allowed) {
  if (inst.has_empty_clause) return false;
  CnfSearch search{inst.clauses, allowed, {}, {}};
  return search.find(ElementSet{}, allowed.size());
}

CnfSystem::CnfSystem(CnfInstance inst) : inst_(std::move(inst)) {}

SystemContract CnfSystem::contract() const {
  SystemContract c;
  int base = std::max(inst_.d, 2);
  c.extension_base = base;
  c.uniformity_constant = Rational(base);
  return c;
}

bool CnfSystem::is_member(ElementSet s) const {
  if (inst_.has_empty_clause) return false;
  return std::all_of(inst_.clauses.begin(), inst_.clauses.end(), [&](const Clause& c) { return c.satisfied_by(s); });
}

ExtensionOutcome CnfSystem::extend_unchecked(const ExtensionQuery& q) const {
  return extend_min_ones_dsat(inst_, q.base, q.budget);
}

SliceCandidates CnfSystem::slice_candidates(ElementSet base, int k) const {
  SliceCandidates out;
  if (inst_.has_empty_clause) return out;
  CnfSearch search{inst_.clauses, inst_.variables.all() - base, {}, {}};
  search.collect(base, k, out.sets);
  for (ElementSet& s : out.sets) s -= base;
  out.stats = search.stats;
  return out;
}

bool CnfSystem::is_minimal_member(ElementSet s) const {
  if (!is_member(s)) return false;
  bool minimal = true;
  s.for_each([&](int v) {
    if (minimal && has_model_within(inst_, s - ElementSet::singleton(v))) minimal = false;
  });
  return minimal;
}

}  // namespace mls
