#include "mls/problems/hitting_set.hpp"

#include <algorithm>
#include <sstream>

#include "text_lines.hpp"

namespace mls {

namespace {

struct HsSearch {
  const std::vector<ElementSet>& sets;
  BranchStats stats;

  // Smallest unhit set, or nullopt when `chosen` hits everything.
  std::optional<ElementSet> pick_unhit(ElementSet chosen) const {
    std::optional<ElementSet> best;
    for (ElementSet s : sets) {
      if (s.intersects(chosen)) continue;
      if (!best || s.size() < best->size()) best = s;
    }
    return best;
  }

  bool find(ElementSet chosen, int budget) {
    ++stats.nodes;
    auto unhit = pick_unhit(chosen);
    if (!unhit) {
      ++stats.leaves;
      found = chosen;
      return true;
    }
    if (budget == 0) {
      ++stats.leaves;
      return false;
    }
    bool ok = false;
    unhit->for_each([&](int e) {
      if (!ok) ok = find(chosen | ElementSet::singleton(e), budget - 1);
    });
    return ok;
  }

  void collect(ElementSet chosen, int remaining, std::vector<ElementSet>& out) {
    ++stats.nodes;
    auto unhit = pick_unhit(chosen);
    if (!unhit) {
      ++stats.leaves;
      if (remaining == 0) out.push_back(chosen);
      return;
    }
    if (remaining == 0) {
      ++stats.leaves;
      return;
    }
    unhit->for_each([&](int e) { collect(chosen | ElementSet::singleton(e), remaining - 1, out); });
  }

  ElementSet found;
};

int effective_budget(const HittingSetInstance& inst, ElementSet base, int budget) {
  if (!inst.cap_k) return budget;
  return std::min(budget, *inst.cap_k - base.size());
}

}  // namespace

HittingSetInstance make_hitting_set(int n, std::vector<ElementSet> sets, std::optional<int> cap_k) {
  HittingSetInstance inst;
  inst.universe = UniverseInfo(n);
  for (ElementSet s : sets) {
    if (s.empty()) throw Error(ErrorCode::InvalidParams, "empty constraint set");
    if (!inst.universe.within(s)) throw Error(ErrorCode::ElementOutOfRange, "constraint set outside the universe");
    inst.d = std::max(inst.d, s.size());
  }
  if (cap_k && *cap_k < 0) throw Error(ErrorCode::InvalidParams, "negative cap_k");
  inst.sets = std::move(sets);
  inst.cap_k = cap_k;
  return inst;
}

HittingSetInstance parse_hitting_set(const std::string& text) {
  auto lines = detail::tokenize_lines(text, "#");
  if (lines.empty()) throw ParseFailure(ErrorCode::ParseError, 0, "missing 'p hs' header");
  auto header = detail::parse_header(lines[0], "hs", 2);
  int n = detail::checked_universe(header[0], lines[0].number);
  if (header[1] < 0) throw ParseFailure(ErrorCode::ParseError, lines[0].number, "negative set count");
  auto m = static_cast<std::size_t>(header[1]);
  if (lines.size() - 1 != m)
    throw ParseFailure(ErrorCode::ParseError, lines.back().number,
                       "header declares " + std::to_string(m) + " sets, found " + std::to_string(lines.size() - 1));
  std::vector<ElementSet> sets;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    ElementSet s;
    for (const auto& tok : lines[i].tokens) {
      long long e = detail::parse_int(tok, lines[i].number);
      if (e < 1 || e > n)
        throw ParseFailure(ErrorCode::ElementOutOfRange, lines[i].number,
                           "element " + tok + " outside 1.." + std::to_string(n));
      s.insert(static_cast<int>(e - 1));
    }
    sets.push_back(s);
  }
  return make_hitting_set(n, std::move(sets));
}

std::string format_hitting_set(const HittingSetInstance& inst) {
  std::ostringstream out;
  out << "p hs " << inst.universe.n << ' ' << inst.sets.size() << '\n';
  for (ElementSet s : inst.sets) {
    bool first = true;
    s.for_each([&](int e) {
      out << (first ? "" : " ") << e + 1;
      first = false;
    });
    out << '\n';
  }
  return out.str();
}

ExtensionOutcome extend_hitting_set(const HittingSetInstance& inst, ElementSet base, int budget) {
  ExtensionOutcome out;
  int b = effective_budget(inst, base, budget);
  if (b < 0) return out;
  HsSearch search{inst.sets, {}, {}};
  if (search.find(base, b)) {
    out.decision = Decision::Yes;
    out.witness = search.found - base;
  }
  out.stats = search.stats;
  return out;
}

HittingSetSystem::HittingSetSystem(HittingSetInstance inst) : inst_(std::move(inst)) {}

SystemContract HittingSetSystem::contract() const {
  SystemContract c;
  int base = std::max(inst_.d, 2);
  c.extension_base = base;
  c.uniformity_constant = Rational(base);
  return c;
}

bool HittingSetSystem::is_member(ElementSet s) const {
  if (inst_.cap_k && s.size() > *inst_.cap_k) return false;
  return std::all_of(inst_.sets.begin(), inst_.sets.end(), [&](ElementSet c) { return c.intersects(s); });
}

ExtensionOutcome HittingSetSystem::extend_unchecked(const ExtensionQuery& q) const {
  return extend_hitting_set(inst_, q.base, q.budget);
}

SliceCandidates HittingSetSystem::slice_candidates(ElementSet base, int k) const {
  SliceCandidates out;
  if (inst_.cap_k && base.size() + k > *inst_.cap_k) return out;
  HsSearch search{inst_.sets, {}, {}};
  search.collect(base, k, out.sets);
  for (ElementSet& s : out.sets) s -= base;
  out.stats = search.stats;
  return out;
}

}  // namespace mls
