#include "ecii/induce.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <thread>

#include "ecii/enrich.hpp"
#include "ecii/oracle.hpp"

namespace ecii {

const FillSets::RoleFills* FillSets::find_role(RoleId role) const {
  for (const auto& rf : roles)
    if (rf.role == role) return &rf;
  return nullptr;
}

std::span<const IndividualId> FillSets::fillers_of(IndividualId individual, RoleId role) const {
  for (const auto& ef : examples) {
    if (ef.individual != individual) continue;
    for (const auto& [r, fillers] : ef.fills)
      if (r == role) return fillers;
    return {};
  }
  return {};
}

FillSets compute_fill_sets(const ExampleSet& examples) {
  FillSets fs;
  std::map<RoleId, FillSets::RoleFills> pooled;

  auto add_side = [&](const std::vector<Example>& side, bool positive) {
    for (const auto& ex : side) {
      FillSets::ExampleFills ef;
      ef.individual = ex.individual;
      ef.positive = positive;
      std::map<RoleId, std::vector<IndividualId>> by_role;
      for (const auto& st : ex.local_abox) {
        const auto* rel = std::get_if<RoleAssertion>(&st);
        if (rel && rel->subject == ex.individual) by_role[rel->role].push_back(rel->object);
      }
      for (auto& [role, fillers] : by_role) {
        std::sort(fillers.begin(), fillers.end());
        fillers.erase(std::unique(fillers.begin(), fillers.end()), fillers.end());
        auto& rf = pooled[role];
        rf.role = role;
        auto& bucket = positive ? rf.pos : rf.neg;
        bucket.insert(bucket.end(), fillers.begin(), fillers.end());
        ef.fills.emplace_back(role, std::move(fillers));
      }
      fs.examples.push_back(std::move(ef));
    }
  };
  add_side(examples.positives(), true);
  add_side(examples.negatives(), false);

  for (auto& [role, rf] : pooled) {
    auto dedupe = [](std::vector<IndividualId>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(rf.pos);
    dedupe(rf.neg);
    rf.all = rf.pos;
    rf.all.insert(rf.all.end(), rf.neg.begin(), rf.neg.end());
    dedupe(rf.all);
    fs.roles.push_back(std::move(rf));
  }
  return fs;
}

std::vector<IndividualId> inverse_fillers(RoleId role, std::span<const IndividualId> x,
                                          const ExampleSet& examples) {
  std::set<IndividualId> targets(x.begin(), x.end());
  std::vector<IndividualId> out;
  for (const auto* side : {&examples.positives(), &examples.negatives()}) {
    for (const auto& ex : *side) {
      for (const auto& st : ex.local_abox) {
        const auto* rel = std::get_if<RoleAssertion>(&st);
        if (rel && rel->subject == ex.individual && rel->role == role &&
            targets.contains(rel->object)) {
          out.push_back(ex.individual);
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DynamicBitset extension_horn(const HornClause& h, const Materialization& m) {
  DynamicBitset down = m.extension(h.head);
  for (ConceptId d : h.neg) down.subtract(m.extension(d));
  return down;
}

DynamicBitset extension_candidate_class(const CandidateClass& c, const Materialization& m) {
  DynamicBitset acc(m.individual_count());
  for (const auto& h : c.clauses) acc |= extension_horn(h, m);
  return acc;
}

DynamicBitset extension_solution(const SolutionCandidate& s, const Materialization& m,
                                 const FillSets& fills) {
  DynamicBitset acc = m.extension(s.top);
  for (const auto& [role, cls] : s.restrictions) {
    if (!fills.find_role(role)) throw SemanticError("solution restriction uses a role absent from the examples");
    DynamicBitset down = extension_candidate_class(cls, m);
    DynamicBitset inv(m.individual_count());
    for (const auto& ef : fills.examples) {
      for (IndividualId filler : fills.fillers_of(ef.individual, role)) {
        auto idx = m.index_of(filler);
        if (idx && down.test(*idx)) {
          inv.set(*m.index_of(ef.individual));
          break;
        }
      }
    }
    acc &= inv;
  }
  return acc;
}

Accuracy alpha1(const HornClause& h, RoleId role, const FillSets& fills,
                const Materialization& m) {
  const auto* rf = fills.find_role(role);
  if (!rf || rf->all.empty())
    throw SemanticError("alpha1 needs a role with at least one filler in the examples");
  DynamicBitset down = extension_horn(h, m);
  DynamicBitset pos = m.make_individual_set(rf->pos);
  DynamicBitset neg = m.make_individual_set(rf->neg);
  std::int64_t num = static_cast<std::int64_t>(DynamicBitset::count_and(down, pos)) +
                     static_cast<std::int64_t>(neg.count()) -
                     static_cast<std::int64_t>(DynamicBitset::count_and(down, neg));
  std::int64_t den = static_cast<std::int64_t>(m.make_individual_set(rf->all).count());
  return Accuracy{num, den};
}

Accuracy alpha2(const SolutionCandidate& s, const ExampleSet& examples, const Materialization& m,
                const FillSets& fills) {
  DynamicBitset down = extension_solution(s, m, fills);
  DynamicBitset pos = m.make_individual_set(examples.positive_individuals());
  DynamicBitset neg = m.make_individual_set(examples.negative_individuals());
  std::int64_t num = static_cast<std::int64_t>(DynamicBitset::count_and(down, pos)) +
                     static_cast<std::int64_t>(neg.count()) -
                     static_cast<std::int64_t>(DynamicBitset::count_and(down, neg));
  return Accuracy{num, static_cast<std::int64_t>(pos.count() + neg.count())};
}

bool is_approximate_solution(const SolutionCandidate& s, const ExampleSet& examples,
                             const Materialization& m, const FillSets& fills) {
  DynamicBitset down = extension_solution(s, m, fills);
  DynamicBitset pos = m.make_individual_set(examples.positive_individuals());
  DynamicBitset neg = m.make_individual_set(examples.negative_individuals());
  return pos.subset_of(down) && !neg.intersects(down);
}

std::vector<ConceptId> common_types(const ExampleSet& examples, const Materialization& m) {
  DynamicBitset pos_types(m.concept_count()), neg_types(m.concept_count());
  for (const auto& ex : examples.positives())
    for (ConceptId c : m.types(ex.individual)) pos_types.set(c.value);
  for (const auto& ex : examples.negatives())
    for (ConceptId c : m.types(ex.individual)) neg_types.set(c.value);
  pos_types &= neg_types;
  std::vector<ConceptId> out;
  pos_types.for_each_set([&](std::size_t c) { out.push_back(ConceptId{static_cast<std::uint32_t>(c)}); });
  return out;
}

namespace {

void neg_combinations(std::span<const ConceptId> negs, std::size_t first, int remaining,
                      std::vector<ConceptId>& picked, ConceptId head,
                      std::vector<HornClause>& out) {
  out.push_back(HornClause{head, picked});
  if (remaining == 0) return;
  for (std::size_t i = first; i < negs.size(); ++i) {
    picked.push_back(negs[i]);
    neg_combinations(negs, i + 1, remaining - 1, picked, head, out);
    picked.pop_back();
  }
}

}  // namespace

std::vector<HornClause> horn_space(std::span<const ConceptId> pool, int k1) {
  std::vector<HornClause> out;
  if (k1 < 1) return out;
  for (ConceptId head : pool) {
    std::vector<ConceptId> negs;
    for (ConceptId c : pool)
      if (c != head && c != kThing) negs.push_back(c);
    std::vector<ConceptId> picked;
    neg_combinations(negs, 0, k1 - 1, picked, head, out);
  }
  return out;
}

std::uint64_t horn_space_size(std::size_t pool_size, int k1) {
  if (k1 < 1 || pool_size == 0) return 0;
  std::uint64_t total = 0;
  std::uint64_t choose = 1;  // C(pool_size - 1, j)
  for (int j = 0; j < k1; ++j) {
    if (j > 0) {
      if (static_cast<std::size_t>(j) > pool_size - 1) break;
      choose = choose * (pool_size - static_cast<std::size_t>(j)) / static_cast<std::uint64_t>(j);
    }
    total += pool_size * choose;
  }
  return total;
}

bool StageContext::filtered_out(ConceptId c) const {
  if (cfg.keep_common_types) return false;
  return std::binary_search(common.begin(), common.end(), c);
}

StageContext make_stage_context(const KnowledgeBase& kb_prime, const ExampleSet& examples,
                                const JobConfig& cfg, const Materialization& m,
                                const FillSets& fills) {
  StageContext ctx{kb_prime, examples, cfg, m, fills, {}, {}, {}, {}, {}, {}, {}, {}};
  ctx.common = common_types(examples, m);
  ctx.pos_mask = m.make_individual_set(examples.positive_individuals());
  ctx.neg_mask = m.make_individual_set(examples.negative_individuals());
  ctx.example_mask = ctx.pos_mask | ctx.neg_mask;
  for (const auto& rf : fills.roles) {
    ctx.role_pos.push_back(m.make_individual_set(rf.pos));
    ctx.role_neg.push_back(m.make_individual_set(rf.neg));
    ctx.role_all.push_back(m.make_individual_set(rf.all));
    std::vector<DynamicBitset> per_example;
    per_example.reserve(fills.examples.size());
    for (const auto& ef : fills.examples)
      per_example.push_back(m.make_individual_set(fills.fillers_of(ef.individual, rf.role)));
    ctx.example_fillers.push_back(std::move(per_example));
  }
  return ctx;
}

namespace {

struct SelKey {
  Accuracy acc;
  int length;
  std::string text;
};

struct SelKeyLess {
  bool operator()(const SelKey& a, const SelKey& b) const {
    if (!(a.acc == b.acc)) return b.acc < a.acc;  // higher accuracy first
    if (a.length != b.length) return a.length < b.length;
    return a.text < b.text;
  }
};

/// Bounded best-k selection over the (accuracy desc, length asc, text asc)
/// total order. Text is only rendered for candidates that can still make the
/// cut; equal full keys keep the first-enumerated item.
template <typename T>
class TopSelector {
 public:
  explicit TopSelector(std::size_t limit) : limit_(limit) {}

  template <typename RenderFn, typename MakeFn>
  void push(const Accuracy& acc, int length, RenderFn&& render, MakeFn&& make) {
    if (limit_ == 0) return;
    if (entries_.size() == limit_) {
      const SelKey& worst = std::prev(entries_.end())->first;
      if (acc < worst.acc || (acc == worst.acc && length > worst.length)) return;
    }
    entries_.emplace(SelKey{acc, length, render()}, make());
    if (entries_.size() > limit_) entries_.erase(std::prev(entries_.end()));
  }

  std::vector<std::pair<SelKey, T>> take() {
    std::vector<std::pair<SelKey, T>> out;
    out.reserve(entries_.size());
    for (auto& [key, item] : entries_) out.emplace_back(key, std::move(item));
    entries_.clear();
    return out;
  }

 private:
  std::size_t limit_;
  std::map<SelKey, T, SelKeyLess> entries_;
};

std::size_t role_index(const StageContext& ctx, RoleId role) {
  for (std::size_t i = 0; i < ctx.fills.roles.size(); ++i)
    if (ctx.fills.roles[i].role == role) return i;
  throw SemanticError("role does not occur in the examples");
}

int lowered_length(const HornClause& h) {
  if (h.neg.empty()) return 1;
  return (h.head == kThing ? 0 : 1) + static_cast<int>(h.neg.size());
}

int lowered_length(const CandidateClass& c) {
  int n = 0;
  for (const auto& h : c.clauses) n += lowered_length(h);
  return n;
}

}  // namespace

std::vector<HornClause> stage1_horn_clauses(RoleId role, const StageContext& ctx,
                                            std::vector<std::string>* warnings) {
  const std::size_t ri = role_index(ctx, role);
  const DynamicBitset& rall = ctx.role_all[ri];
  const DynamicBitset& rpos = ctx.role_pos[ri];
  const DynamicBitset& rneg = ctx.role_neg[ri];
  const std::int64_t den = static_cast<std::int64_t>(rall.count());
  const std::int64_t neg_total = static_cast<std::int64_t>(rneg.count());

  std::vector<ConceptId> pool;
  for (std::uint32_t c = 0; c < ctx.kb.concept_count(); ++c) {
    ConceptId id{c};
    if (!ctx.m.extension(id).intersects(rall)) continue;
    if (ctx.filtered_out(id)) continue;
    pool.push_back(id);
  }
  if (pool.empty()) {
    if (warnings)
      warnings->push_back("role " + ctx.kb.role_name(role) +
                          " dropped: no admissible concepts cover its fillers");
    return {};
  }

  // restrict pool extensions to R̄ once; (A\B)∩R̄ = (A∩R̄)\(B∩R̄)
  std::vector<DynamicBitset> restricted(ctx.kb.concept_count());
  for (ConceptId c : pool) restricted[c.value] = ctx.m.extension(c) & rall;

  TopSelector<HornClause> selector(static_cast<std::size_t>(std::max(ctx.cfg.k4, 0)));
  for (const HornClause& h : horn_space(pool, ctx.cfg.k1)) {
    DynamicBitset down = restricted[h.head.value];
    for (ConceptId d : h.neg) down.subtract(restricted[d.value]);
    std::int64_t num = static_cast<std::int64_t>(DynamicBitset::count_and(down, rpos)) + neg_total -
                       static_cast<std::int64_t>(DynamicBitset::count_and(down, rneg));
    selector.push(
        Accuracy{num, den}, h.length(),
        [&] { return render_expression(to_expression(h, ctx.kb), ctx.kb); }, [&] { return h; });
  }

  std::vector<HornClause> out;
  for (auto& [key, h] : selector.take()) out.push_back(std::move(h));
  return out;
}

std::vector<CandidateClass> stage2_candidate_classes(RoleId role,
                                                     std::span<const HornClause> horn_clauses,
                                                     const StageContext& ctx) {
  if (horn_clauses.empty()) return {};
  const std::size_t ri = role_index(ctx, role);
  const DynamicBitset& rall = ctx.role_all[ri];
  const DynamicBitset& rpos = ctx.role_pos[ri];
  const DynamicBitset& rneg = ctx.role_neg[ri];
  const std::int64_t den = static_cast<std::int64_t>(rall.count());
  const std::int64_t neg_total = static_cast<std::int64_t>(rneg.count());

  std::vector<DynamicBitset> clause_ext;
  clause_ext.reserve(horn_clauses.size());
  for (const auto& h : horn_clauses) clause_ext.push_back(extension_horn(h, ctx.m) & rall);

  TopSelector<CandidateClass> selector(static_cast<std::size_t>(std::max(ctx.cfg.k5, 0)));
  std::vector<std::size_t> picked;

  auto score_subset = [&](const DynamicBitset& down) {
    std::int64_t num = static_cast<std::int64_t>(DynamicBitset::count_and(down, rpos)) + neg_total -
                       static_cast<std::int64_t>(DynamicBitset::count_and(down, rneg));
    return Accuracy{num, den};
  };

  auto recurse = [&](auto&& self, std::size_t first, const DynamicBitset& down, int length) -> void {
    if (!picked.empty()) {
      std::vector<HornClause> clauses;
      clauses.reserve(picked.size());
      for (std::size_t i : picked) clauses.push_back(horn_clauses[i]);
      CandidateClass cc = make_candidate_class(std::move(clauses));
      selector.push(
          score_subset(down), length,
          [&] { return render_expression(to_expression(cc, ctx.kb), ctx.kb); },
          [&] { return cc; });
    }
    if (picked.size() >= static_cast<std::size_t>(std::max(ctx.cfg.k2, 0))) return;
    for (std::size_t i = first; i < horn_clauses.size(); ++i) {
      picked.push_back(i);
      self(self, i + 1, down | clause_ext[i], length + horn_clauses[i].length());
      picked.pop_back();
    }
  };
  recurse(recurse, 0, DynamicBitset(ctx.m.individual_count()), 0);

  std::vector<CandidateClass> out;
  for (auto& [key, cc] : selector.take()) out.push_back(std::move(cc));
  return out;
}

namespace {

struct RoleChoice {
  RoleId role;
  std::vector<CandidateClass> classes;
  std::vector<DynamicBitset> inverse;  // per class: R⁻(↓C) over example individuals
  std::vector<int> lengths;            // per class: lowered length
};

using ScoredForm = std::variant<SolutionCandidate, CandidateClass>;

}  // namespace

std::vector<ScoredSolution> stage3_solutions(
    const StageContext& ctx,
    std::span<const std::pair<RoleId, std::vector<CandidateClass>>> per_role_candidates,
    const InductionHooks& hooks, std::vector<std::string>* warnings) {
  const std::int64_t neg_total = static_cast<std::int64_t>(ctx.neg_mask.count());
  const std::int64_t den =
      static_cast<std::int64_t>(ctx.pos_mask.count()) + neg_total;

  std::vector<ConceptId> tops;
  for (std::uint32_t c = 0; c < ctx.kb.concept_count(); ++c)
    if (!ctx.filtered_out(ConceptId{c})) tops.push_back(ConceptId{c});

  std::vector<RoleChoice> choices;
  for (const auto& [role, classes] : per_role_candidates) {
    if (classes.empty()) continue;
    RoleChoice rc;
    rc.role = role;
    rc.classes = classes;
    const std::size_t ri = role_index(ctx, role);
    for (const auto& cc : classes) {
      DynamicBitset down = extension_candidate_class(cc, ctx.m);
      DynamicBitset inv(ctx.m.individual_count());
      for (std::size_t e = 0; e < ctx.fills.examples.size(); ++e) {
        if (ctx.example_fillers[ri][e].intersects(down))
          inv.set(*ctx.m.index_of(ctx.fills.examples[e].individual));
      }
      rc.inverse.push_back(std::move(inv));
      rc.lengths.push_back(lowered_length(cc));
    }
    choices.push_back(std::move(rc));
  }

  if (tops.empty() && choices.empty()) {
    if (warnings) warnings->push_back("stage3: no admissible tops and no role candidates");
    return {};
  }

  TopSelector<ScoredSolution> selector(static_cast<std::size_t>(std::max(ctx.cfg.max_solutions, 0)));

  // one combination of role restrictions (possibly none), crossed with tops
  std::vector<std::pair<std::size_t, std::size_t>> combo;  // (choice idx, class idx)
  auto score_combo = [&]() {
    DynamicBitset pos = ctx.pos_mask;
    DynamicBitset neg = ctx.neg_mask;
    int combo_length = 0;
    for (auto [ci, ki] : combo) {
      pos &= choices[ci].inverse[ki];
      neg &= choices[ci].inverse[ki];
      combo_length += choices[ci].lengths[ki];
    }
    auto build = [&](ConceptId top) {
      std::vector<std::pair<RoleId, CandidateClass>> restrictions;
      restrictions.reserve(combo.size());
      for (auto [ci, ki] : combo) restrictions.emplace_back(choices[ci].role, choices[ci].classes[ki]);
      return make_solution_candidate(top, std::move(restrictions));
    };
    for (ConceptId top : tops) {
      const DynamicBitset& ext = ctx.m.extension(top);
      std::int64_t num = static_cast<std::int64_t>(DynamicBitset::count_and(pos, ext)) + neg_total -
                         static_cast<std::int64_t>(DynamicBitset::count_and(neg, ext));
      Accuracy acc{num, den};
      int length = ((top != kThing || combo.empty()) ? 1 : 0) + combo_length;
      if (hooks.on_candidate) hooks.on_candidate(ScoredForm{build(top)}, acc);
      selector.push(
          acc, length,
          [&] {
            return render_expression(to_expression(build(top), ctx.kb), ctx.kb);
          },
          [&] {
            SolutionCandidate cand = build(top);
            ExprPtr expr = to_expression(cand, ctx.kb);
            return ScoredSolution{ScoredForm{std::move(cand)}, std::move(expr), acc, length, {}};
          });
    }
  };

  auto enumerate = [&](auto&& self, std::size_t first) -> void {
    score_combo();
    if (combo.size() >= static_cast<std::size_t>(std::max(ctx.cfg.k3, 0))) return;
    for (std::size_t ci = first; ci < choices.size(); ++ci) {
      for (std::size_t ki = 0; ki < choices[ci].classes.size(); ++ki) {
        combo.emplace_back(ci, ki);
        self(self, ci + 1);
        combo.pop_back();
      }
    }
  };
  enumerate(enumerate, 0);

  // Roleless problems cannot express disjunctive separators through the
  // top-and-restrictions shape; admit top-level candidate classes built the
  // stage one/two way but scored against the examples themselves.
  if (ctx.fills.roles.empty()) {
    std::vector<ConceptId> pool;
    for (std::uint32_t c = 0; c < ctx.kb.concept_count(); ++c) {
      ConceptId id{c};
      if (!ctx.m.extension(id).intersects(ctx.example_mask)) continue;
      if (ctx.filtered_out(id)) continue;
      pool.push_back(id);
    }
    auto score_ext = [&](const DynamicBitset& down) {
      std::int64_t num = static_cast<std::int64_t>(DynamicBitset::count_and(down, ctx.pos_mask)) +
                         neg_total -
                         static_cast<std::int64_t>(DynamicBitset::count_and(down, ctx.neg_mask));
      return Accuracy{num, den};
    };

    TopSelector<HornClause> horn_sel(static_cast<std::size_t>(std::max(ctx.cfg.k4, 0)));
    for (const HornClause& h : horn_space(pool, ctx.cfg.k1)) {
      DynamicBitset down = extension_horn(h, ctx.m);
      horn_sel.push(
          score_ext(down), h.length(),
          [&] { return render_expression(to_expression(h, ctx.kb), ctx.kb); }, [&] { return h; });
    }
    std::vector<HornClause> horns;
    for (auto& [key, h] : horn_sel.take()) horns.push_back(std::move(h));

    std::vector<DynamicBitset> clause_ext;
    for (const auto& h : horns) clause_ext.push_back(extension_horn(h, ctx.m));

    TopSelector<CandidateClass> cc_sel(static_cast<std::size_t>(std::max(ctx.cfg.k5, 0)));
    std::vector<std::size_t> picked;
    auto recurse = [&](auto&& self, std::size_t first, const DynamicBitset& down, int length) -> void {
      if (!picked.empty()) {
        std::vector<HornClause> clauses;
        for (std::size_t i : picked) clauses.push_back(horns[i]);
        CandidateClass cc = make_candidate_class(std::move(clauses));
        cc_sel.push(
            score_ext(down), length,
            [&] { return render_expression(to_expression(cc, ctx.kb), ctx.kb); },
            [&] { return cc; });
      }
      if (picked.size() >= static_cast<std::size_t>(std::max(ctx.cfg.k2, 0))) return;
      for (std::size_t i = first; i < horns.size(); ++i) {
        picked.push_back(i);
        self(self, i + 1, down | clause_ext[i], length + horns[i].length());
        picked.pop_back();
      }
    };
    recurse(recurse, 0, DynamicBitset(ctx.m.individual_count()), 0);

    for (auto& [key, cc] : cc_sel.take()) {
      Accuracy acc = score_ext(extension_candidate_class(cc, ctx.m));
      int length = lowered_length(cc);
      if (hooks.on_candidate) hooks.on_candidate(ScoredForm{cc}, acc);
      selector.push(
          acc, length,
          [&] { return render_expression(to_expression(cc, ctx.kb), ctx.kb); },
          [&] {
            ExprPtr expr = to_expression(cc, ctx.kb);
            return ScoredSolution{ScoredForm{cc}, std::move(expr), acc, length, {}};
          });
    }
  }

  std::vector<ScoredSolution> out;
  for (auto& [key, sol] : selector.take()) out.push_back(std::move(sol));
  if (out.empty() && warnings) warnings->push_back("stage3: no candidates scored");
  return out;
}

ResultReport run_induction(const KnowledgeBase& kb, const ExampleSet& examples,
                           const JobConfig& cfg, const RunOptions& opts) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - from).count();
  };
  const auto run_start = clock::now();

  ResultReport report;
  report.kb_hash = kb_content_hash(kb);
  report.times.parse_ms = opts.parse_ms;

  InvocationCounter local{opts.preloaded ? 1 : 0};
  InvocationCounter& counter = opts.counter ? *opts.counter : local;

  // step 1: enrichment
  auto t = clock::now();
  EnumerationResult enumerated = enumerate_expressions(kb, cfg.n1, cfg.n2, opts.enumeration_cap);
  if (enumerated.truncated)
    report.warnings.push_back("enrichment truncated at " + std::to_string(opts.enumeration_cap) +
                              " expressions");
  KnowledgeBase kb_prime = enrich_kb(kb, enumerated.exprs, &report.warnings);
  report.times.enrich_ms = ms_since(t);

  // step 2: one materialization
  t = clock::now();
  Materialization m;
  if (opts.preloaded) {
    m = *opts.preloaded;
    apply_fresh_definitions(m, kb_prime);
  } else {
    auto relevant = examples.mentioned_individuals();
    m = materialize(kb_prime, relevant, counter);
  }
  report.times.materialize_ms = ms_since(t);

  // step 3: fill sets and the three stages
  t = clock::now();
  FillSets fills = compute_fill_sets(examples);
  StageContext ctx = make_stage_context(kb_prime, examples, cfg, m, fills);

  std::vector<std::pair<RoleId, std::vector<CandidateClass>>> per_role(fills.roles.size());
  std::vector<std::vector<std::string>> role_warnings(fills.roles.size());
  auto run_role = [&](std::size_t i) {
    RoleId role = fills.roles[i].role;
    auto horns = stage1_horn_clauses(role, ctx, &role_warnings[i]);
    per_role[i] = {role, stage2_candidate_classes(role, horns, ctx)};
  };
  unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  if (threads > 1 && fills.roles.size() > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(fills.roles.size()));
    for (unsigned w = 0; w < count; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < fills.roles.size(); i = next.fetch_add(1))
          run_role(i);
      });
    for (auto& th : workers) th.join();
  } else {
    for (std::size_t i = 0; i < fills.roles.size(); ++i) run_role(i);
  }
  for (auto& ws : role_warnings)
    report.warnings.insert(report.warnings.end(), ws.begin(), ws.end());

  std::vector<ScoredSolution> solutions =
      stage3_solutions(ctx, per_role, opts.hooks, &report.warnings);

  if (cfg.compute_alpha3) {
    for (auto& sol : solutions) {
      ExprPtr expanded = expand_fresh(sol.expr, kb_prime);
      sol.alpha3 = alpha3(*expanded, examples, kb);
    }
  }
  report.times.induce_ms = ms_since(t);

  int rank = 1;
  for (const auto& sol : solutions) {
    ResultRow row;
    row.rank = rank++;
    row.alpha2 = sol.alpha2;
    // the length column is the ranking key: the candidate-form length, with
    // enrichment names counting one atomic each; the text is the expansion
    row.length = sol.length;
    row.expression = render_expression(expand_fresh(sol.expr, kb_prime), kb_prime);
    row.alpha3 = sol.alpha3;
    report.rows.push_back(std::move(row));
  }

  report.materializer_invocations = counter.count;
  report.times.total_ms = opts.parse_ms + ms_since(run_start);
  return report;
}

}  // namespace ecii
