#include "ecii/materialize.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ecii/io.hpp"

namespace ecii {

std::optional<std::size_t> Materialization::index_of(IndividualId ind) const {
  if (!ind.valid() || ind.value >= ind_to_index_.size()) return std::nullopt;
  std::uint32_t idx = ind_to_index_[ind.value];
  if (idx == UINT32_MAX) return std::nullopt;
  return idx;
}

const DynamicBitset& Materialization::extension(ConceptId b) const {
  if (!b.valid() || b.value >= extensions_.size())
    throw SemanticError("extension lookup for undeclared concept");
  return extensions_[b.value];
}

std::span<const ConceptId> Materialization::types(IndividualId ind) const {
  auto idx = index_of(ind);
  if (!idx) throw SemanticError("individual not covered by the materialization");
  return types_[*idx];
}

bool Materialization::member(IndividualId ind, ConceptId b) const {
  auto idx = index_of(ind);
  return idx && extension(b).test(*idx);
}

std::vector<IndividualId> Materialization::extension_individuals(ConceptId b) const {
  std::vector<IndividualId> out;
  extension(b).for_each_set([&](std::size_t i) { out.push_back(index_to_ind_[i]); });
  std::sort(out.begin(), out.end());
  return out;
}

DynamicBitset Materialization::make_individual_set(std::span<const IndividualId> inds) const {
  DynamicBitset bs(individual_count());
  for (IndividualId ind : inds)
    if (auto idx = index_of(ind)) bs.set(*idx);
  return bs;
}

void Materialization::rebuild_types() {
  types_.assign(individual_count(), {});
  for (std::uint32_t c = 0; c < extensions_.size(); ++c)
    extensions_[c].for_each_set([&](std::size_t i) { types_[i].push_back(ConceptId{c}); });
}

namespace {

/// Dense-index successor lists, one per role.
struct RoleEdges {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_role;  // (subject, object)

  RoleEdges(const KnowledgeBase& kb, const Materialization& m) : by_role(kb.role_count()) {
    for (const auto& r : kb.role_assertions()) {
      auto s = m.index_of(r.subject);
      auto o = m.index_of(r.object);
      if (s && o) by_role[r.role.value].emplace_back(*s, *o);
    }
  }
};

/// Set-wise structural evaluation of a definition body against the current
/// extensions: conjunction intersects, ∃R.C takes the pre-image of C's
/// evaluation along R.
DynamicBitset eval_definition(const Expr& e, const std::vector<DynamicBitset>& ext,
                              const RoleEdges& edges, std::size_t n) {
  switch (e.kind) {
    case ExprKind::Atomic:
      return ext[e.atom.value];
    case ExprKind::Conj: {
      DynamicBitset acc = eval_definition(*e.kids.front(), ext, edges, n);
      for (std::size_t i = 1; i < e.kids.size(); ++i)
        acc &= eval_definition(*e.kids[i], ext, edges, n);
      return acc;
    }
    case ExprKind::Exists: {
      DynamicBitset filler = eval_definition(*e.kids.front(), ext, edges, n);
      DynamicBitset out(n);
      for (const auto& [s, o] : edges.by_role[e.role.value])
        if (filler.test(o)) out.set(s);
      return out;
    }
    default:
      throw SemanticError("definition outside the and/some fragment");
  }
}

}  // namespace

Materialization materialize(const KnowledgeBase& kb, std::span<const IndividualId> relevant,
                            InvocationCounter& counter) {
  ++counter.count;

  Materialization m;
  // covered set: the relevant individuals plus forward role-reachability
  std::set<IndividualId> covered;
  if (relevant.empty()) {
    for (std::uint32_t i = 0; i < kb.individual_count(); ++i) covered.insert(IndividualId{i});
  } else {
    std::vector<std::vector<IndividualId>> successors(kb.individual_count());
    for (const auto& r : kb.role_assertions()) successors[r.subject.value].push_back(r.object);
    std::deque<IndividualId> queue(relevant.begin(), relevant.end());
    for (IndividualId ind : queue) kb.check_individual(ind);
    while (!queue.empty()) {
      IndividualId ind = queue.front();
      queue.pop_front();
      if (!covered.insert(ind).second) continue;
      for (IndividualId next : successors[ind.value])
        if (!covered.contains(next)) queue.push_back(next);
    }
  }

  m.index_to_ind_.assign(covered.begin(), covered.end());
  m.ind_to_index_.assign(kb.individual_count(), UINT32_MAX);
  for (std::uint32_t i = 0; i < m.index_to_ind_.size(); ++i)
    m.ind_to_index_[m.index_to_ind_[i].value] = i;

  const std::size_t n = m.index_to_ind_.size();
  m.extensions_.assign(kb.concept_count(), DynamicBitset(n));

  // R1
  for (std::size_t i = 0; i < n; ++i) m.extensions_[kThing.value].set(i);
  for (const auto& t : kb.type_assertions())
    if (auto idx = m.index_of(t.ind)) m.extensions_[t.cls.value].set(*idx);

  RoleEdges edges(kb, m);

  // R2/R3 to fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& ax : kb.subsumptions()) {
      if (!m.extensions_[ax.sub.value].subset_of(m.extensions_[ax.sup.value])) {
        m.extensions_[ax.sup.value] |= m.extensions_[ax.sub.value];
        changed = true;
      }
    }
    for (const auto& ax : kb.equivalences()) {
      DynamicBitset holds = eval_definition(*ax.rhs, m.extensions_, edges, n);
      if (!holds.subset_of(m.extensions_[ax.lhs.value])) {
        m.extensions_[ax.lhs.value] |= holds;
        changed = true;
      }
    }
  }

  m.rebuild_types();
  return m;
}

std::string dump_materialization(const Materialization& m, const KnowledgeBase& kb) {
  std::string out = "# ecii-mat v1\n";
  char buf[17];
  std::uint64_t h = kb_content_hash(kb);
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  out += std::string("# kb.fnv1a=") + buf + "\n";
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < m.individual_count(); ++i) {
    IndividualId ind = m.individual_at(i);
    for (ConceptId c : m.types(ind)) {
      if (c == kThing) continue;  // implied
      lines.push_back("type " + kb.individual_name(ind) + " " + kb.concept_name(c));
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::optional<std::uint64_t> dump_kb_hash(std::string_view text) {
  std::size_t pos = text.find("# kb.fnv1a=");
  if (pos == std::string_view::npos) return std::nullopt;
  std::size_t start = pos + 11;
  std::size_t end = text.find('\n', start);
  std::string hex(text.substr(start, end == std::string_view::npos ? end : end - start));
  try {
    return std::stoull(hex, nullptr, 16);
  } catch (...) {
    return std::nullopt;
  }
}

Materialization load_materialization(std::string_view text, const KnowledgeBase& kb,
                                     InvocationCounter& counter,
                                     std::vector<std::string>* warnings) {
  ++counter.count;

  Materialization m;
  m.index_to_ind_.clear();
  for (std::uint32_t i = 0; i < kb.individual_count(); ++i)
    m.index_to_ind_.push_back(IndividualId{i});
  m.ind_to_index_.resize(kb.individual_count());
  for (std::uint32_t i = 0; i < kb.individual_count(); ++i) m.ind_to_index_[i] = i;

  const std::size_t n = m.index_to_ind_.size();
  m.extensions_.assign(kb.concept_count(), DynamicBitset(n));
  for (std::size_t i = 0; i < n; ++i) m.extensions_[kThing.value].set(i);

  int line_no = 0;
  std::size_t start = 0;
  bool saw_magic = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (raw.starts_with("# ecii-mat")) saw_magic = true;
    if (raw.empty() || raw.front() == '#') continue;

    std::string line(raw);
    std::string word, ind_name, cls_name;
    std::size_t sp1 = line.find(' ');
    std::size_t sp2 = line.rfind(' ');
    if (sp1 == std::string::npos || sp2 == sp1)
      throw ParseError(line_no, "expected: type <ind> <concept>");
    word = line.substr(0, sp1);
    ind_name = line.substr(sp1 + 1, sp2 - sp1 - 1);
    cls_name = line.substr(sp2 + 1);
    if (word != "type") throw ParseError(line_no, "expected a 'type' row");
    IndividualId ind = kb.individual_or_throw(ind_name);
    ConceptId cls = kb.concept_or_throw(cls_name);
    m.extensions_[cls.value].set(*m.index_of(ind));
  }
  if (!saw_magic) throw ParseError("not a materialization dump (missing '# ecii-mat v1')");

  if (warnings) {
    std::size_t missing_asserted = 0;
    for (const auto& t : kb.type_assertions())
      if (!m.extensions_[t.cls.value].test(*m.index_of(t.ind))) ++missing_asserted;
    if (missing_asserted > 0)
      warnings->push_back("table not closed under asserted types: " +
                          std::to_string(missing_asserted) + " missing membership(s)");
    std::size_t open_subs = 0;
    for (const auto& ax : kb.subsumptions())
      if (!m.extensions_[ax.sub.value].subset_of(m.extensions_[ax.sup.value])) ++open_subs;
    if (open_subs > 0)
      warnings->push_back("table not closed under subsumption for " + std::to_string(open_subs) +
                          " axiom(s)");
  }

  m.rebuild_types();
  return m;
}

void apply_fresh_definitions(Materialization& m, const KnowledgeBase& kb_prime) {
  const std::size_t n = m.individual_count();
  m.extensions_.resize(kb_prime.concept_count(), DynamicBitset(n));
  RoleEdges edges(kb_prime, m);
  for (const auto& ax : kb_prime.equivalences()) {
    if (!kb_prime.is_fresh(ax.lhs)) continue;
    // fresh definitions range over declared atomics only: one pass suffices
    m.extensions_[ax.lhs.value] |= eval_definition(*ax.rhs, m.extensions_, edges, n);
  }
  m.rebuild_types();
}

}  // namespace ecii
