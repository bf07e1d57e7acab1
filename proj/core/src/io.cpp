#include "ecii/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace ecii {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string_view strip_comment(std::string_view line) {
  std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
    line.remove_suffix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  return line;
}

/// Whitespace-separated words; parentheses are their own tokens.
std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else if (c == '(' || c == ')') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
      tokens.push_back(std::string(1, c));
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

/// s-expr ::= name | (and e e ...) | (some role e)
ExprPtr parse_sexpr(const std::vector<std::string>& tokens, std::size_t& pos,
                    const KnowledgeBase& kb, int line) {
  if (pos >= tokens.size()) throw ParseError(line, "unexpected end of expression");
  const std::string& tok = tokens[pos];
  if (tok == ")") throw ParseError(line, "unexpected ')'");
  if (tok != "(") {
    ++pos;
    return Expr::atomic(kb.concept_or_throw(tok));
  }
  ++pos;  // consume '('
  if (pos >= tokens.size()) throw ParseError(line, "unterminated '('");
  const std::string& op = tokens[pos++];
  if (op == "and") {
    std::vector<ExprPtr> kids;
    while (pos < tokens.size() && tokens[pos] != ")")
      kids.push_back(parse_sexpr(tokens, pos, kb, line));
    if (pos >= tokens.size()) throw ParseError(line, "unterminated '(and'");
    ++pos;  // consume ')'
    if (kids.size() < 2) throw ParseError(line, "'and' needs at least two operands");
    return Expr::conj(std::move(kids), kb);
  }
  if (op == "some") {
    if (pos >= tokens.size() || tokens[pos] == "(" || tokens[pos] == ")")
      throw ParseError(line, "'some' needs a role name");
    RoleId role = kb.role_or_throw(tokens[pos++]);
    ExprPtr filler = parse_sexpr(tokens, pos, kb, line);
    if (pos >= tokens.size() || tokens[pos] != ")") throw ParseError(line, "unterminated '(some'");
    ++pos;
    return Expr::exists(role, std::move(filler));
  }
  throw ParseError(line, "unknown operator '" + op + "' (expected and/some)");
}

std::string sexpr_text(const Expr& e, const KnowledgeBase& kb) {
  switch (e.kind) {
    case ExprKind::Atomic:
      return kb.concept_name(e.atom);
    case ExprKind::Conj: {
      std::string out = "(and";
      for (const auto& k : e.kids) out += " " + sexpr_text(*k, kb);
      return out + ")";
    }
    case ExprKind::Exists:
      return "(some " + kb.role_name(e.role) + " " + sexpr_text(*e.kids.front(), kb) + ")";
    default:
      throw SemanticError("expression outside the and/some fragment");
  }
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
  KnowledgeBase kb;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line = static_cast<int>(i + 1);
    std::string_view body = strip_comment(lines[i]);
    if (body.empty()) continue;
    auto tokens = tokenize(body);
    const std::string& kw = tokens[0];
    try {
      if (kw == "concept") {
        if (tokens.size() != 2) throw ParseError(line, "expected: concept <name>");
        kb.declare_concept(tokens[1]);
      } else if (kw == "role") {
        if (tokens.size() != 2) throw ParseError(line, "expected: role <name>");
        kb.declare_role(tokens[1]);
      } else if (kw == "ind") {
        if (tokens.size() != 2) throw ParseError(line, "expected: ind <name>");
        kb.declare_individual(tokens[1]);
      } else if (kw == "sub") {
        if (tokens.size() != 3) throw ParseError(line, "expected: sub <A> <B>");
        kb.add_subsumption(kb.concept_or_throw(tokens[1]), kb.concept_or_throw(tokens[2]));
      } else if (kw == "equiv") {
        if (tokens.size() < 3) throw ParseError(line, "expected: equiv <A> <expr>");
        ConceptId lhs = kb.concept_or_throw(tokens[1]);
        std::size_t pos = 2;
        ExprPtr rhs = parse_sexpr(tokens, pos, kb, line);
        if (pos != tokens.size()) throw ParseError(line, "trailing tokens after expression");
        kb.add_equivalence(lhs, std::move(rhs));
      } else if (kw == "type") {
        if (tokens.size() != 3) throw ParseError(line, "expected: type <ind> <concept>");
        kb.add_type(kb.individual_or_throw(tokens[1]), kb.concept_or_throw(tokens[2]));
      } else if (kw == "rel") {
        if (tokens.size() != 4) throw ParseError(line, "expected: rel <ind> <role> <ind>");
        kb.add_relation(kb.individual_or_throw(tokens[1]), kb.role_or_throw(tokens[2]),
                        kb.individual_or_throw(tokens[3]));
      } else {
        throw ParseError(line, "unknown statement '" + kw + "'");
      }
    } catch (const SemanticError& e) {
      throw SemanticError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  return kb;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::vector<std::string> decls, subs, equivs, types, rels;

  for (std::uint32_t c = 0; c < kb.concept_count(); ++c)
    if (ConceptId id{c}; id != kThing) decls.push_back("concept " + kb.concept_name(id));
  std::sort(decls.begin(), decls.end());
  std::string out;
  for (auto& l : decls) out += l + "\n";

  std::vector<std::string> roles;
  for (std::uint32_t r = 0; r < kb.role_count(); ++r) roles.push_back("role " + kb.role_name(RoleId{r}));
  std::sort(roles.begin(), roles.end());
  for (auto& l : roles) out += l + "\n";

  std::vector<std::string> inds;
  for (std::uint32_t i = 0; i < kb.individual_count(); ++i)
    inds.push_back("ind " + kb.individual_name(IndividualId{i}));
  std::sort(inds.begin(), inds.end());
  for (auto& l : inds) out += l + "\n";

  for (const auto& ax : kb.subsumptions())
    subs.push_back("sub " + kb.concept_name(ax.sub) + " " + kb.concept_name(ax.sup));
  std::sort(subs.begin(), subs.end());
  for (auto& l : subs) out += l + "\n";

  for (const auto& ax : kb.equivalences())
    equivs.push_back("equiv " + kb.concept_name(ax.lhs) + " " + sexpr_text(*ax.rhs, kb));
  std::sort(equivs.begin(), equivs.end());
  for (auto& l : equivs) out += l + "\n";

  for (const auto& t : kb.type_assertions())
    types.push_back("type " + kb.individual_name(t.ind) + " " + kb.concept_name(t.cls));
  std::sort(types.begin(), types.end());
  for (auto& l : types) out += l + "\n";

  for (const auto& r : kb.role_assertions())
    rels.push_back("rel " + kb.individual_name(r.subject) + " " + kb.role_name(r.role) + " " +
                   kb.individual_name(r.object));
  std::sort(rels.begin(), rels.end());
  for (auto& l : rels) out += l + "\n";

  return out;
}

bool kb_structurally_equal(const KnowledgeBase& a, const KnowledgeBase& b) {
  return serialize_kb(a) == serialize_kb(b);
}

std::uint64_t kb_content_hash(const KnowledgeBase& kb) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize_kb(kb)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

int parse_natural(const std::string& value, const std::string& key, int line) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || out < 0)
    throw ParseError(line, "value of '" + key + "' must be a natural number, got '" + value + "'");
  return out;
}

bool parse_bool(const std::string& value, const std::string& key, int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ParseError(line, "value of '" + key + "' must be true or false, got '" + value + "'");
}

std::vector<std::string> parse_name_set(const std::string& value, const std::string& key,
                                        int line) {
  std::string body = value;
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw ParseError(line, "value of '" + key + "' must be a set: { a, b }");
  body = body.substr(1, body.size() - 2);
  std::vector<std::string> names;
  std::string cur;
  for (char c : body + ",") {
    if (c == ',') {
      std::string trimmed;
      for (char d : cur)
        if (d != ' ' && d != '\t') trimmed += d;
      if (!trimmed.empty()) names.push_back(trimmed);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return names;
}

}  // namespace

JobConfig parse_config(std::string_view text) {
  JobConfig cfg;
  bool saw_kb = false, saw_pos = false, saw_neg = false;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line = static_cast<int>(i + 1);
    std::string_view body = strip_comment(lines[i]);
    if (body.empty()) continue;
    std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return std::string(s);
    };
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "missing key");

    if (key == "kb") {
      cfg.kb_path = value;
      saw_kb = true;
    } else if (key == "positives") {
      cfg.positives = parse_name_set(value, key, line);
      saw_pos = true;
    } else if (key == "negatives") {
      cfg.negatives = parse_name_set(value, key, line);
      saw_neg = true;
    } else if (key == "n1") {
      cfg.n1 = parse_natural(value, key, line);
    } else if (key == "n2") {
      cfg.n2 = parse_natural(value, key, line);
    } else if (key == "k1") {
      cfg.k1 = parse_natural(value, key, line);
      if (cfg.k1 == 0)
        throw ParseError(line, "k1 must be at least 1 (a Horn clause needs a head)");
    } else if (key == "k2") {
      cfg.k2 = parse_natural(value, key, line);
    } else if (key == "k3") {
      cfg.k3 = parse_natural(value, key, line);
    } else if (key == "k4") {
      cfg.k4 = parse_natural(value, key, line);
    } else if (key == "k5") {
      cfg.k5 = parse_natural(value, key, line);
    } else if (key == "keepCommonTypes") {
      cfg.keep_common_types = parse_bool(value, key, line);
    } else if (key == "maxSolutions") {
      cfg.max_solutions = parse_natural(value, key, line);
      if (cfg.max_solutions < 1) throw ParseError(line, "maxSolutions must be at least 1");
    } else if (key == "computeAlpha3") {
      cfg.compute_alpha3 = parse_bool(value, key, line);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  if (!saw_kb) throw ParseError("missing required key 'kb'");
  if (!saw_pos) throw ParseError("missing required key 'positives'");
  if (!saw_neg) throw ParseError("missing required key 'negatives'");
  if (cfg.positives.empty()) throw ParseError("empty positive example set");
  if (cfg.negatives.empty()) throw ParseError("empty negative example set");
  return cfg;
}

namespace {

/// Surface grammar, loosest-binding first:
///   expr    := conj ('or' conj)*
///   conj    := unary ('and' unary)*
///   unary   := 'not' unary | role 'some' unary | name | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::vector<std::string> tokens, const KnowledgeBase& kb)
      : tokens_(std::move(tokens)), kb_(kb) {}

  ExprPtr parse() {
    ExprPtr e = parse_or();
    if (pos_ != tokens_.size())
      throw ParseError("trailing tokens after expression: '" + tokens_[pos_] + "'");
    return e;
  }

 private:
  ExprPtr parse_or() {
    std::vector<ExprPtr> parts{parse_and()};
    while (peek() == "or") {
      ++pos_;
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts.front() : Expr::disj(std::move(parts), kb_);
  }

  ExprPtr parse_and() {
    std::vector<ExprPtr> parts{parse_unary()};
    while (peek() == "and") {
      ++pos_;
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? parts.front() : Expr::conj(std::move(parts), kb_);
  }

  ExprPtr parse_unary() {
    std::string tok = peek();
    if (tok.empty()) throw ParseError("unexpected end of expression");
    if (tok == "not") {
      ++pos_;
      return Expr::neg(parse_unary());
    }
    if (tok == "(") {
      ++pos_;
      ExprPtr inner = parse_or();
      if (peek() != ")") throw ParseError("missing ')'");
      ++pos_;
      return inner;
    }
    if (tok == ")" || tok == "and" || tok == "or" || tok == "some")
      throw ParseError("unexpected token '" + tok + "'");
    ++pos_;
    if (peek() == "some") {
      ++pos_;
      RoleId role = kb_.role_or_throw(tok);
      return Expr::exists(role, parse_unary());
    }
    return Expr::atomic(kb_.concept_or_throw(tok));
  }

  std::string peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : std::string(); }

  std::vector<std::string> tokens_;
  const KnowledgeBase& kb_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view text, const KnowledgeBase& kb) {
  auto tokens = tokenize(strip_comment(text));
  if (tokens.empty()) throw ParseError("empty expression");
  return ExpressionParser(std::move(tokens), kb).parse();
}

std::string format_accuracy(const Accuracy& a) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", a.value());
  std::string s = buf;
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Accuracy accuracy_from_text(const std::string& text, int line) {
  // exact rational reconstruction of the decimal rendering
  std::size_t dot = text.find('.');
  std::string digits;
  std::int64_t den = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == dot) continue;
    if (text[i] < '0' || text[i] > '9')
      throw ParseError(line, "bad accuracy value '" + text + "'");
    digits += text[i];
    if (dot != std::string::npos && i > dot) den *= 10;
  }
  if (digits.empty() || digits.size() > 18)
    throw ParseError(line, "bad accuracy value '" + text + "'");
  return Accuracy{std::stoll(digits), den};
}

}  // namespace

std::string write_report(const ResultReport& report) {
  std::string out = "# ecii-results v1\n";
  out += "# kb.fnv1a=" + hex64(report.kb_hash) + "\n";
  out += "# time.parse=" + std::to_string(report.times.parse_ms) + "\n";
  out += "# time.enrich=" + std::to_string(report.times.enrich_ms) + "\n";
  out += "# time.materialize=" + std::to_string(report.times.materialize_ms) + "\n";
  out += "# time.induce=" + std::to_string(report.times.induce_ms) + "\n";
  out += "# time.total=" + std::to_string(report.times.total_ms) + "\n";
  out += "# materializer.invocations=" + std::to_string(report.materializer_invocations) + "\n";
  for (const auto& w : report.warnings) out += "# warning=" + w + "\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.rank) + "\t" + format_accuracy(row.alpha2) + "\t" +
           std::to_string(row.length) + "\t" + row.expression;
    if (row.alpha3) out += "\t" + format_accuracy(*row.alpha3);
    out += "\n";
  }
  return out;
}

ResultReport read_report(std::string_view text) {
  ResultReport report;
  auto lines = split_lines(text);
  bool saw_magic = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line = static_cast<int>(i + 1);
    std::string_view raw = lines[i];
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (raw.empty()) continue;
    if (raw.front() == '#') {
      std::string meta(raw.substr(1));
      while (!meta.empty() && meta.front() == ' ') meta.erase(meta.begin());
      try {
        if (meta == "ecii-results v1") {
          saw_magic = true;
        } else if (meta.starts_with("kb.fnv1a=")) {
          report.kb_hash = std::stoull(meta.substr(9), nullptr, 16);
        } else if (meta.starts_with("time.")) {
          std::size_t eq = meta.find('=');
          if (eq == std::string::npos) throw ParseError(line, "bad timing line");
          std::int64_t ms = std::stoll(meta.substr(eq + 1));
          std::string phase = meta.substr(5, eq - 5);
          if (phase == "parse") report.times.parse_ms = ms;
          else if (phase == "enrich") report.times.enrich_ms = ms;
          else if (phase == "materialize") report.times.materialize_ms = ms;
          else if (phase == "induce") report.times.induce_ms = ms;
          else if (phase == "total") report.times.total_ms = ms;
        } else if (meta.starts_with("materializer.invocations=")) {
          report.materializer_invocations = std::stoi(meta.substr(25));
        } else if (meta.starts_with("warning=")) {
          report.warnings.push_back(meta.substr(8));
        }
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError(line, "bad metadata line '" + meta + "'");
      }
      continue;
    }
    // data row
    std::vector<std::string> cols;
    std::size_t start = 0;
    std::string row_text(raw);
    while (true) {
      std::size_t tab = row_text.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(row_text.substr(start));
        break;
      }
      cols.push_back(row_text.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() != 4 && cols.size() != 5)
      throw ParseError(line, "expected 4 or 5 tab-separated columns");
    ResultRow row;
    row.rank = parse_natural(cols[0], "rank", line);
    row.alpha2 = accuracy_from_text(cols[1], line);
    row.length = parse_natural(cols[2], "length", line);
    row.expression = cols[3];
    if (cols.size() == 5) row.alpha3 = accuracy_from_text(cols[4], line);
    report.rows.push_back(std::move(row));
  }
  if (!saw_magic) throw ParseError("not an ecii results file (missing '# ecii-results v1')");
  return report;
}

}  // namespace ecii
