#include "bdi/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "bdi/vocab.hpp"

namespace bdi {

TurtleError::TurtleError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool pn_chars_base(char c) { return std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80; }
bool pn_chars(char c) {
  return pn_chars_base(c) || c == '_' || c == '-' || std::isdigit(static_cast<unsigned char>(c));
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Graph parse() {
    skip_ws();
    while (!at_end()) {
      if (peek() == '@') {
        directive_at();
      } else if (keyword_ahead("PREFIX")) {
        directive_sparql();
      } else if (keyword_ahead("BASE") || keyword_ahead("@base")) {
        fail("base IRIs are not supported");
      } else {
        triples();
        expect('.');
      }
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw TurtleError(msg, line_, col_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
    if (peek() != c) fail(std::string("expected '") + c + "' but found '" + peek() + "'");
    get();
  }

  bool keyword_ahead(std::string_view kw) const {
    if (text_.substr(pos_, kw.size()).size() != kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != std::toupper(static_cast<unsigned char>(kw[i])))
        return false;
    }
    const char after = peek(kw.size());
    return after == '\0' || std::isspace(static_cast<unsigned char>(after));
  }

  void directive_at() {
    get();  // '@'
    std::string word;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) word += get();
    if (word == "base") fail("base IRIs are not supported");
    if (word != "prefix") fail("unknown directive '@" + word + "'");
    prefix_body();
    expect('.');
  }

  void directive_sparql() {
    for (int i = 0; i < 6; ++i) get();
    prefix_body();
  }

  void prefix_body() {
    skip_ws();
    std::string name;
    while (!at_end() && (pn_chars(peek()) || peek() == '.')) name += get();
    if (!name.empty() && name.back() == '.') fail("prefix name may not end with '.'");
    if (peek() != ':') fail("expected ':' after prefix name");
    get();
    skip_ws();
    graph_.prefixes()[name] = iriref().str();
  }

  Iri iriref() {
    if (peek() != '<') fail("expected '<'");
    get();
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      const char c = get();
      if (c == '>') break;
      if (c == '\\') {
        value += unicode_escape();
        continue;
      }
      value += c;
    }
    if (!Iri::is_valid(value)) fail("malformed IRI <" + value + ">");
    return Iri(std::move(value));
  }

  std::string unicode_escape() {
    const char kind = at_end() ? '\0' : get();
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("invalid escape in IRI");
    return hex_codepoint(digits);
  }

  std::string hex_codepoint(std::size_t digits) {
    std::string hex;
    for (std::size_t i = 0; i < digits; ++i) {
      if (at_end() || !std::isxdigit(static_cast<unsigned char>(peek()))) fail("bad unicode escape");
      hex += get();
    }
    std::string out;
    append_utf8(out, std::stoul(hex, nullptr, 16));
    return out;
  }

  Iri prefixed_name() {
    const std::size_t line = line_, col = col_;
    std::string prefix;
    while (!at_end() && (pn_chars(peek()) || peek() == '.')) prefix += get();
    if (peek() != ':') fail("expected prefixed name");
    get();
    std::string local;
    while (!at_end()) {
      const char c = peek();
      if (pn_chars(c) || c == ':' || c == '.' || c == '%') {
        local += c;
        get();
      } else if (c == '\\' && pos_ + 1 < text_.size()) {
        get();
        local += get();
      } else {
        break;
      }
    }
    // A trailing '.' terminates the statement rather than belonging to the name.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --col_;
    }
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end()) throw TurtleError("undefined prefix '" + prefix + ":'", line, col);
    std::string full = it->second + local;
    if (!Iri::is_valid(full)) throw TurtleError("malformed IRI " + full, line, col);
    return Iri(std::move(full));
  }

  Iri iri() {
    skip_ws();
    if (peek() == '<') return iriref();
    return prefixed_name();
  }

  Term subject() {
    skip_ws();
    if (peek() == '_' && peek(1) == ':') return blank();
    if (peek() == '[' || peek() == '(') fail("blank node property lists and collections are not supported");
    if (peek() == '"' || peek() == '\'') fail("literal in subject position");
    return iri();
  }

  Term blank() {
    get();
    get();
    std::string id;
    while (!at_end() && (pn_chars(peek()) || peek() == '.')) id += get();
    while (!id.empty() && id.back() == '.') {
      id.pop_back();
      --pos_;
      --col_;
    }
    if (id.empty()) fail("empty blank node label");
    return BlankNode{std::move(id)};
  }

  Iri verb() {
    skip_ws();
    if (peek() == 'a') {
      const char after = peek(1);
      if (after == '\0' || std::isspace(static_cast<unsigned char>(after)) || after == '<' || after == '"') {
        get();
        return vocab::type();
      }
    }
    return iri();
  }

  std::string string_body() {
    const char q = get();
    const bool long_form = peek() == q && peek(1) == q;
    if (long_form) {
      get();
      get();
    }
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      if (long_form) {
        if (peek() == q && peek(1) == q && peek(2) == q) {
          get();
          get();
          get();
          break;
        }
      } else if (peek() == q) {
        get();
        break;
      } else if (peek() == '\n') {
        fail("newline in short string literal");
      }
      const char c = get();
      if (c != '\\') {
        value += c;
        continue;
      }
      if (at_end()) fail("unterminated escape");
      const char e = get();
      switch (e) {
        case 't': value += '\t'; break;
        case 'n': value += '\n'; break;
        case 'r': value += '\r'; break;
        case 'b': value += '\b'; break;
        case 'f': value += '\f'; break;
        case '"': value += '"'; break;
        case '\'': value += '\''; break;
        case '\\': value += '\\'; break;
        case 'u': value += hex_codepoint(4); break;
        case 'U': value += hex_codepoint(8); break;
        default: fail(std::string("invalid escape '\\") + e + "'");
      }
    }
    return value;
  }

  Term literal() {
    std::string lexical = string_body();
    if (peek() == '@') {
      get();
      std::string tag;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) tag += get();
      if (tag.empty()) fail("empty language tag");
      return Literal::lang(std::move(lexical), std::move(tag));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      Iri dt = iri();
      if (dt == vocab::lang_string()) fail("rdf:langString requires a language tag");
      return Literal(std::move(lexical), std::move(dt));
    }
    return Literal::plain(std::move(lexical));
  }

  Term number() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += get();
    bool dot = false, exp = false;
    while (!at_end()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex += get();
      } else if (c == '.' && !dot && !exp && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        dot = true;
        lex += get();
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        lex += get();
        if (peek() == '+' || peek() == '-') lex += get();
      } else {
        break;
      }
    }
    if (lex.empty() || lex == "+" || lex == "-") fail("malformed number");
    const char* dt = exp ? "double" : dot ? "decimal" : "integer";
    return Literal(std::move(lex), vocab::xsd(dt));
  }

  Term object() {
    skip_ws();
    const char c = peek();
    if (c == '"' || c == '\'') return literal();
    if (c == '_' && peek(1) == ':') return blank();
    if (c == '[' || c == '(') fail("blank node property lists and collections are not supported");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))
      return number();
    if (keyword_token("true")) return Literal("true", vocab::xsd("boolean"));
    if (keyword_token("false")) return Literal("false", vocab::xsd("boolean"));
    return iri();
  }

  bool keyword_token(std::string_view kw) {
    if (text_.substr(pos_, kw.size()) != kw) return false;
    const char after = peek(kw.size());
    if (pn_chars(after) || after == ':') return false;
    for (std::size_t i = 0; i < kw.size(); ++i) get();
    return true;
  }

  void triples() {
    Term s = subject();
    while (true) {
      Iri p = verb();
      while (true) {
        Term o = object();
        graph_.insert(Triple(s, p, std::move(o)));
        skip_ws();
        if (peek() != ',') break;
        get();
      }
      skip_ws();
      if (peek() != ';') break;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      // Trailing ';' before the terminating '.'
      if (peek() == '.') break;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Graph graph_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return Parser(text).parse(); }

std::string serialize_turtle(const Graph& graph) {
  PrefixMap prefixes = vocab::standard_prefixes();
  for (const auto& [k, v] : graph.prefixes()) prefixes[k] = v;

  std::ostringstream out;
  for (const auto& [k, v] : prefixes) out << "@prefix " << k << ": <" << v << "> .\n";

  // Group by subject; the SPO set is already sorted by subject then predicate.
  const auto& triples = graph.triples();
  auto it = triples.begin();
  while (it != triples.end()) {
    const Term& subject = it->subject;
    std::map<Iri, std::vector<const Term*>> by_pred;
    std::vector<const Term*> types;
    for (; it != triples.end() && it->subject == subject; ++it) {
      if (it->predicate == vocab::type())
        types.push_back(&it->object);
      else
        by_pred[it->predicate].push_back(&it->object);
    }
    out << "\n" << compact(subject, prefixes);
    bool first = true;
    auto emit = [&](const std::string& verb, const std::vector<const Term*>& objects) {
      out << (first ? " " : " ;\n    ") << verb << " ";
      first = false;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        if (i) out << ", ";
        out << compact(*objects[i], prefixes);
      }
    };
    if (!types.empty()) emit("a", types);
    for (const auto& [p, objects] : by_pred) emit(compact(p, prefixes), objects);
    out << " .\n";
  }
  return out.str();
}

Graph read_turtle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_turtle(buf.str());
}

namespace vocab {

const PrefixMap& standard_prefixes() {
  static const PrefixMap m = {
      {"bdi", std::string(kBdiNs)}, {"owl", std::string(kOwlNs)},   {"rdf", std::string(kRdfNs)},
      {"rdfs", std::string(kRdfsNs)}, {"xsd", std::string(kXsdNs)},
  };
  return m;
}

}  // namespace vocab

}  // namespace bdi
