#include "bdi/rules.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "bdi/vocab.hpp"

namespace bdi {

RuleError::RuleError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string_view to_string(ActionKind k) {
  switch (k) {
    case ActionKind::AssertState: return "assert";
    case ActionKind::Modify: return "modify";
    case ActionKind::Suppress: return "suppress";
    case ActionKind::Link: return "link";
    case ActionKind::Justify: return "justify";
    case ActionKind::Emit: return "emit";
    case ActionKind::DefinePlan: return "define_plan";
  }
  return "?";
}

std::vector<std::string> Rule::bound_variables() const {
  std::vector<std::string> out = variables(head);
  for (const auto& c : conditions) {
    if (c.kind != Condition::Kind::Triple || c.negated) continue;
    for (auto& v : variables(c.pattern))
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

namespace {

enum class Tok { LParen, RParen, Comma, Semi, Slash, Arrow, Amp, Dot, Keyword, Var, IriRef, Name, String, End };

struct Token {
  Tok kind;
  std::string text;
  std::string lang;      // String
  std::string datatype;  // String: raw datatype name
  std::size_t line, col;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' || c == '.' || c == '%' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      Token t{Tok::End, "", "", "", line_, col_};
      if (i_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = s_[i_];
      switch (c) {
        case '(': t.kind = Tok::LParen; adv(); break;
        case ')': t.kind = Tok::RParen; adv(); break;
        case ',': t.kind = Tok::Comma; adv(); break;
        case ';': t.kind = Tok::Semi; adv(); break;
        case '/': t.kind = Tok::Slash; adv(); break;
        case '&': t.kind = Tok::Amp; adv(); break;
        case '.': t.kind = Tok::Dot; adv(); break;
        case '>':
          adv();
          if (peek() != '>') fail("expected '>>'");
          adv();
          t.kind = Tok::Arrow;
          break;
        case '@':
          adv();
          t.kind = Tok::Keyword;
          t.text = word();
          if (t.text.empty()) fail("expected a keyword after '@'");
          break;
        case '?':
          adv();
          t.kind = Tok::Var;
          t.text = word();
          if (t.text.empty()) fail("expected a variable name after '?'");
          break;
        case '<': {
          adv();
          t.kind = Tok::IriRef;
          while (peek() != '>') {
            if (i_ >= s_.size() || peek() == '\n') fail("unterminated IRI");
            t.text += peek();
            adv();
          }
          adv();
          break;
        }
        case '"':
          t.kind = Tok::String;
          t.text = string_body();
          if (peek() == '@') {
            adv();
            t.lang = word();
            if (t.lang.empty()) fail("expected a language tag");
          } else if (peek() == '^' && peek(1) == '^') {
            adv();
            adv();
            if (peek() == '<') {
              adv();
              while (peek() != '>') {
                if (i_ >= s_.size()) fail("unterminated IRI");
                t.datatype += peek();
                adv();
              }
              adv();
              t.datatype = "<" + t.datatype + ">";
            } else {
              t.datatype = name();
            }
          }
          break;
        default:
          if (name_char(c) || c == '+') {
            t.kind = Tok::Name;
            t.text = name();
          } else {
            fail(std::string("unexpected character '") + c + "'");
          }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw RuleError(msg, line_, col_); }
  char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
  void adv() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        adv();
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') adv();
      } else {
        break;
      }
    }
  }
  std::string word() {
    std::string w;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-') {
      w += peek();
      adv();
    }
    return w;
  }
  std::string name() {
    std::string w;
    if (peek() == '+' || peek() == '-') {
      w += peek();
      adv();
    }
    while (name_char(peek())) {
      // A trailing '.' terminates the stanza rather than extending the name.
      if (peek() == '.' && !name_char(peek(1))) break;
      w += peek();
      adv();
    }
    return w;
  }
  std::string string_body() {
    adv();
    std::string out;
    while (true) {
      if (i_ >= s_.size() || peek() == '\n') fail("unterminated string");
      const char c = peek();
      adv();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      const char e = peek();
      adv();
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1, col_ = 1;
};

bool is_integer(const std::string& s) {
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  return i < s.size() && std::all_of(s.begin() + static_cast<long>(i), s.end(), [](unsigned char c) {
           return std::isdigit(c);
         });
}

bool is_decimal(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos || dot + 1 == s.size()) return false;
  const std::string whole = s.substr(0, dot);
  const std::string frac = s.substr(dot + 1);
  return (whole.empty() || whole == "+" || whole == "-" || is_integer(whole)) && is_integer(frac) &&
         frac[0] != '+' && frac[0] != '-';
}

class RuleParser {
 public:
  RuleParser(std::vector<Token> toks, PrefixMap prefixes) : t_(std::move(toks)) { out_.prefixes = std::move(prefixes); }

  RuleSet run() {
    std::set<std::string> ids;
    std::size_t position = 0;
    while (cur().kind != Tok::End) {
      if ((cur().kind == Tok::Keyword && cur().text == "prefix") || (cur().kind == Tok::Name && cur().text == "PREFIX")) {
        prefix_decl();
        continue;
      }
      Rule r = rule();
      ++position;
      if (r.id.empty()) r.id = "r" + std::to_string(position);
      if (!ids.insert(r.id).second) throw RuleError("duplicate rule id '" + r.id + "'", r.line, 1);
      out_.rules.push_back(std::move(r));
    }
    return std::move(out_);
  }

 private:
  const Token& cur() const { return t_[k_]; }
  const Token& next() { return t_[k_++]; }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw RuleError(msg, at.line, at.col); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, cur()); }
  const Token& expect(Tok kind, const char* what) {
    if (cur().kind != kind) fail(std::string("expected ") + what);
    return next();
  }
  bool accept(Tok kind) {
    if (cur().kind != kind) return false;
    ++k_;
    return true;
  }

  void prefix_decl() {
    const bool sparql = cur().kind == Tok::Name;
    next();
    const Token& name = expect(Tok::Name, "a prefix name");
    if (name.text.empty() || name.text.back() != ':') fail("prefix name must end with ':'", name);
    const Token& iri = expect(Tok::IriRef, "a namespace IRI");
    if (!Iri::is_valid(iri.text)) fail("malformed IRI <" + iri.text + ">", iri);
    out_.prefixes[name.text.substr(0, name.text.size() - 1)] = iri.text;
    if (!sparql) expect(Tok::Dot, "'.' after @prefix");
  }

  Rule rule() {
    Rule r;
    r.line = cur().line;
    while (cur().kind == Tok::Keyword) {
      const Token kw = next();
      if (kw.text == "id") {
        const Token& name = expect(Tok::Name, "a rule id");
        r.id = name.text;
      } else if (kw.text == "priority") {
        const Token& n = expect(Tok::Name, "an integer priority");
        if (!is_integer(n.text)) fail("priority must be an integer", n);
        try {
          r.priority = std::stoi(n.text);
        } catch (const std::out_of_range&) {
          fail("priority out of range", n);
        }
      } else {
        fail("unknown annotation '@" + kw.text + "'", kw);
      }
    }
    if (cur().kind == Tok::Name && cur().text == "not") fail("the head of a rule cannot be negated");
    r.head = pattern();
    if (accept(Tok::Slash)) {
      do {
        r.conditions.push_back(condition());
      } while (accept(Tok::Amp));
    }
    expect(Tok::Arrow, "'>>'");
    do {
      r.tail.push_back(action());
    } while (accept(Tok::Semi));
    expect(Tok::Dot, "'.' ending the rule");
    check_range(r);
    return r;
  }

  Condition condition() {
    Condition c;
    if (cur().kind == Tok::Name && cur().text == "not") {
      next();
      const Token& open = expect(Tok::LParen, "'(' after not");
      if (cur().kind == Tok::LParen ||
          (cur().kind == Tok::Name && (cur().text == "not" || cur().text == "valid_at"))) {
        c = condition();
        if (c.negated) fail("nested not()");
      } else {
        // not(?s p ?o) is shorthand for not((?s p ?o))
        c.pattern = triple_body(open);
      }
      c.negated = true;
      c.pattern.negated = true;
      expect(Tok::RParen, "')' closing not(");
      return c;
    }
    if (cur().kind == Tok::Name && cur().text == "valid_at") {
      next();
      c.kind = Condition::Kind::ValidAt;
      expect(Tok::LParen, "'(' after valid_at");
      c.entity = term();
      expect(Tok::Comma, "','");
      if (cur().kind == Tok::Name && cur().text == "NOW") {
        next();
      } else {
        c.instant = term();
      }
      expect(Tok::RParen, "')'");
      return c;
    }
    c.pattern = pattern();
    return c;
  }

  Pattern pattern() {
    const Token& open = expect(Tok::LParen, "'(' starting a triple pattern");
    Pattern p = triple_body(open);
    expect(Tok::RParen, "')' closing the triple pattern");
    return p;
  }

  Pattern triple_body(const Token& open) {
    Pattern p;
    p.subject = term();
    p.predicate = term();
    p.object = term();
    if (const auto* s = std::get_if<Term>(&p.subject); s && is_literal(*s)) fail("literal in subject position", open);
    if (const auto* pr = std::get_if<Term>(&p.predicate); pr && !is_iri(*pr))
      fail("predicate must be an IRI or a variable", open);
    if (is_variable(p.predicate) && !(is_variable(p.subject) && is_variable(p.object)))
      fail("a variable predicate is only allowed in the full wildcard (?s ?p ?o)", open);
    return p;
  }

  PatternTerm term() {
    const Token& tok = cur();
    switch (tok.kind) {
      case Tok::Var: next(); return Variable{tok.text};
      case Tok::IriRef:
        next();
        if (!Iri::is_valid(tok.text)) fail("malformed IRI <" + tok.text + ">", tok);
        return Term(Iri(tok.text));
      case Tok::String: {
        next();
        if (!tok.lang.empty()) return Term(Literal::lang(tok.text, tok.lang));
        if (!tok.datatype.empty()) {
          auto dt = expand_name(tok.datatype, out_.prefixes);
          if (!dt) fail("cannot resolve datatype " + tok.datatype, tok);
          if (*dt == vocab::lang_string()) fail("rdf:langString needs a language tag", tok);
          return Term(Literal(tok.text, *dt));
        }
        return Term(Literal::plain(tok.text));
      }
      case Tok::Name: {
        next();
        if (tok.text == "a") return Term(vocab::type());
        if (tok.text == "true" || tok.text == "false") return Term(Literal(tok.text, vocab::xsd("boolean")));
        if (is_integer(tok.text)) return Term(Literal(tok.text, vocab::xsd("integer")));
        if (is_decimal(tok.text)) return Term(Literal(tok.text, vocab::xsd("decimal")));
        if (tok.text.find(':') == std::string::npos) fail("expected a term, found '" + tok.text + "'", tok);
        auto iri = expand_name(tok.text, out_.prefixes);
        if (!iri) fail("undefined prefix in '" + tok.text + "'", tok);
        return Term(*iri);
      }
      default: fail("expected a term");
    }
  }

  Action action() {
    const Token& name = expect(Tok::Name, "an action name");
    Action a;
    a.line = name.line;
    const std::string& n = name.text;
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (a.args.size() < lo || a.args.size() > hi)
        fail(n + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                 " argument(s)",
             name);
    };
    bool bindable = true;
    expect(Tok::LParen, "'(' after the action name");

    if (n == "link") {
      const Token& rel = expect(Tok::Name, "motivates, supports or fulfils");
      auto r = link_relation_from(rel.text);
      if (!r) fail("unknown link relation '" + rel.text + "'", rel);
      a.kind = ActionKind::Link;
      a.relation = *r;
      while (accept(Tok::Comma)) a.args.push_back(term());
      arity(2, 2);
      bindable = false;
    } else if (n == "justify") {
      a.kind = ActionKind::Justify;
      while (true) {
        if (cur().kind == Tok::String && t_[k_ + 1].kind == Tok::RParen) {
          if (!cur().lang.empty() || !cur().datatype.empty()) fail("justification text is a plain string");
          a.text = next().text;
          break;
        }
        a.args.push_back(term());
        if (!accept(Tok::Comma)) fail("justify ends with its text string");
      }
      if (a.args.empty()) fail("justify needs at least one target", name);
    } else {
      if (cur().kind != Tok::RParen) {
        do {
          a.args.push_back(term());
        } while (accept(Tok::Comma));
      }
      if (n == "assert_belief" || n == "assert_desire" || n == "assert_intention") {
        a.kind = ActionKind::AssertState;
        a.state_kind = n == "assert_belief" ? StateKind::Belief
                       : n == "assert_desire" ? StateKind::Desire
                                              : StateKind::Intention;
        arity(1, 2);
      } else if (n == "modify") {
        a.kind = ActionKind::Modify;
        arity(1, 2);
      } else if (n == "suppress") {
        a.kind = ActionKind::Suppress;
        arity(1, 1);
        bindable = false;
      } else if (n == "emit") {
        a.kind = ActionKind::Emit;
        arity(3, 3);
        bindable = false;
        if (const auto* s = std::get_if<Term>(&a.args[0]); s && is_literal(*s)) fail("emit: literal subject", name);
        if (const auto* p = std::get_if<Term>(&a.args[1]); p && !is_iri(*p)) fail("emit: predicate must be an IRI", name);
      } else if (n == "define_plan") {
        a.kind = ActionKind::DefinePlan;
        if (a.args.size() < 2) fail("define_plan takes an intention, a goal and tasks", name);
      } else {
        fail("unknown action '" + n + "'", name);
      }
    }
    expect(Tok::RParen, "')' closing the action");

    if (cur().kind == Tok::Name && cur().text == "as") {
      const Token& as = next();
      if (!bindable) fail(n + " does not produce a value to bind", as);
      a.bind_as = expect(Tok::Var, "a variable after 'as'").text;
    }
    return a;
  }

  void check_range(const Rule& r) {
    auto bound_list = r.bound_variables();
    std::set<std::string> bound(bound_list.begin(), bound_list.end());
    auto need = [&](const PatternTerm& t, std::size_t line, const char* where) {
      if (const auto* v = as_variable(t); v && !bound.count(v->name))
        throw RuleError("unbound variable ?" + v->name + " in " + where + " of rule '" + r.id + "'", line, 1);
    };
    for (const auto& c : r.conditions) {
      if (c.kind != Condition::Kind::ValidAt) continue;
      need(c.entity, r.line, "valid_at");
      if (c.instant) need(*c.instant, r.line, "valid_at");
    }
    for (const auto& a : r.tail) {
      for (const auto& arg : a.args) need(arg, a.line, "the tail");
      for (std::size_t i = a.text.find('?'); i != std::string::npos; i = a.text.find('?', i + 1)) {
        std::size_t j = i + 1;
        while (j < a.text.size() && (std::isalnum(static_cast<unsigned char>(a.text[j])) || a.text[j] == '_')) ++j;
        if (j == i + 1) continue;
        need(Variable{a.text.substr(i + 1, j - i - 1)}, a.line, "the justification text");
      }
      if (a.bind_as) {
        if (!bound.insert(*a.bind_as).second)
          throw RuleError("?" + *a.bind_as + " is already bound in rule '" + r.id + "'", a.line, 1);
      }
    }
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
  RuleSet out_;
};

}  // namespace

RuleSet parse_rules(std::string_view text, const PrefixMap& prefixes) {
  return RuleParser(Lexer(text).run(), prefixes).run();
}

RuleSet read_rules_file(const std::string& path, const PrefixMap& prefixes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str(), prefixes);
}

}  // namespace bdi
