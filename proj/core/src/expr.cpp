#include "ecii/expr.hpp"

#include <algorithm>
#include <utility>

namespace ecii {

namespace {

ExprPtr make_node(ExprKind kind, ConceptId atom, RoleId role, std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->atom = atom;
  e->role = role;
  e->kids = std::move(kids);
  return e;
}

/// Flatten nested nodes of `kind`, dedupe structurally, sort by rendered
/// text, collapse to the single child when only one remains.
ExprPtr make_nary(ExprKind kind, std::vector<ExprPtr> kids, const KnowledgeBase& kb) {
  std::vector<ExprPtr> flat;
  flat.reserve(kids.size());
  for (auto& k : kids) {
    if (k->kind == kind) {
      for (const auto& inner : k->kids) flat.push_back(inner);
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) throw SemanticError("empty connective");

  std::vector<std::pair<std::string, ExprPtr>> keyed;
  keyed.reserve(flat.size());
  for (auto& k : flat) keyed.emplace_back(render_expression(*k, kb), std::move(k));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());

  if (keyed.size() == 1) return keyed.front().second;
  std::vector<ExprPtr> out;
  out.reserve(keyed.size());
  for (auto& [_, e] : keyed) out.push_back(std::move(e));
  return make_node(kind, {}, {}, std::move(out));
}

}  // namespace

ExprPtr Expr::atomic(ConceptId id) { return make_node(ExprKind::Atomic, id, {}, {}); }

ExprPtr Expr::conj(std::vector<ExprPtr> kids, const KnowledgeBase& kb) {
  return make_nary(ExprKind::Conj, std::move(kids), kb);
}

ExprPtr Expr::disj(std::vector<ExprPtr> kids, const KnowledgeBase& kb) {
  return make_nary(ExprKind::Disj, std::move(kids), kb);
}

ExprPtr Expr::neg(ExprPtr kid) { return make_node(ExprKind::Neg, {}, {}, {std::move(kid)}); }

ExprPtr Expr::exists(RoleId role, ExprPtr kid) {
  return make_node(ExprKind::Exists, {}, role, {std::move(kid)});
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Atomic:
      return a.atom == b.atom;
    case ExprKind::Exists:
      if (a.role != b.role) return false;
      break;
    default:
      break;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!expr_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

ExprPtr canonicalize(const ExprPtr& e, const KnowledgeBase& kb) {
  switch (e->kind) {
    case ExprKind::Atomic:
      kb.check_concept(e->atom);
      return e;
    case ExprKind::Neg:
      return Expr::neg(canonicalize(e->kids.front(), kb));
    case ExprKind::Exists:
      kb.check_role(e->role);
      return Expr::exists(e->role, canonicalize(e->kids.front(), kb));
    case ExprKind::Conj:
    case ExprKind::Disj: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(canonicalize(k, kb));
      return e->kind == ExprKind::Conj ? Expr::conj(std::move(kids), kb)
                                       : Expr::disj(std::move(kids), kb);
    }
  }
  throw SemanticError("unknown expression kind");
}

int expr_length(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Atomic:
      return 1;
    default: {
      int n = 0;
      for (const auto& k : e.kids) n += expr_length(*k);
      return n;
    }
  }
}

namespace {

void render_into(const Expr& e, const KnowledgeBase& kb, std::string& out);

void render_child(const Expr& child, const KnowledgeBase& kb, std::string& out) {
  if (child.kind == ExprKind::Atomic) {
    render_into(child, kb, out);
  } else {
    out += '(';
    render_into(child, kb, out);
    out += ')';
  }
}

void render_into(const Expr& e, const KnowledgeBase& kb, std::string& out) {
  switch (e.kind) {
    case ExprKind::Atomic:
      out += kb.concept_name(e.atom);
      return;
    case ExprKind::Neg:
      out += "not ";
      render_child(*e.kids.front(), kb, out);
      return;
    case ExprKind::Exists:
      out += kb.role_name(e.role);
      out += " some ";
      render_child(*e.kids.front(), kb, out);
      return;
    case ExprKind::Conj:
    case ExprKind::Disj: {
      const char* sep = e.kind == ExprKind::Conj ? " and " : " or ";
      bool first = true;
      for (const auto& k : e.kids) {
        if (!first) out += sep;
        first = false;
        render_child(*k, kb, out);
      }
      return;
    }
  }
}

}  // namespace

std::string render_expression(const Expr& e, const KnowledgeBase& kb) {
  std::string out;
  render_into(e, kb, out);
  return out;
}

int count_conj_occurrences(const Expr& e) {
  int n = e.kind == ExprKind::Conj ? static_cast<int>(e.kids.size()) - 1 : 0;
  for (const auto& k : e.kids) n += count_conj_occurrences(*k);
  return n;
}

int count_exists_occurrences(const Expr& e) {
  int n = e.kind == ExprKind::Exists ? 1 : 0;
  for (const auto& k : e.kids) n += count_exists_occurrences(*k);
  return n;
}

bool within_definition_grammar(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Atomic:
      return true;
    case ExprKind::Conj:
    case ExprKind::Exists:
      return std::all_of(e.kids.begin(), e.kids.end(),
                         [](const ExprPtr& k) { return within_definition_grammar(*k); });
    default:
      return false;
  }
}

ExprPtr expand_fresh(const ExprPtr& e, const KnowledgeBase& kb) {
  switch (e->kind) {
    case ExprKind::Atomic:
      if (kb.is_fresh(e->atom)) {
        const EquivAxiom* def = kb.definition_of(e->atom);
        if (def) return def->rhs;  // definitions contain declared names only
      }
      return e;
    case ExprKind::Neg:
      return Expr::neg(expand_fresh(e->kids.front(), kb));
    case ExprKind::Exists:
      return Expr::exists(e->role, expand_fresh(e->kids.front(), kb));
    case ExprKind::Conj:
    case ExprKind::Disj: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(expand_fresh(k, kb));
      return e->kind == ExprKind::Conj ? Expr::conj(std::move(kids), kb)
                                       : Expr::disj(std::move(kids), kb);
    }
  }
  throw SemanticError("unknown expression kind");
}

}  // namespace ecii
