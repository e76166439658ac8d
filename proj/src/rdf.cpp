#include "bdi/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "bdi/vocab.hpp"

namespace bdi {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (static_cast<unsigned char>(c) >= 0x80);
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == ':';
}

// Local part safe to write as pfx:local and re-read unchanged.
bool safe_local(std::string_view s) {
  if (s.empty()) return true;
  const char first = s.front();
  if (!(is_name_start(first) || std::isdigit(static_cast<unsigned char>(first)) || first == ':')) return false;
  if (s.back() == '.') return false;
  return std::all_of(s.begin(), s.end(), is_name_char);
}

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) throw std::invalid_argument("malformed IRI: '" + value_ + "'");
}

bool Iri::is_valid(std::string_view s) {
  if (s.empty()) return false;
  if (std::any_of(s.begin(), s.end(), is_space)) return false;
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = s[i];
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')) return false;
  }
  return s.find_first_of("<>\"{}|^`\\") == std::string_view::npos;
}

std::string_view Iri::local_name() const {
  const auto pos = value_.find_last_of("#/:");
  if (pos == std::string::npos) return value_;
  return std::string_view(value_).substr(pos + 1);
}

Literal::Literal(std::string lexical, Iri datatype) : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {
  if (datatype_ == vocab::lang_string()) throw std::invalid_argument("language-string literal requires a tag");
}

Literal Literal::plain(std::string lexical) { return Literal(std::move(lexical), vocab::xsd_string()); }

Literal Literal::lang(std::string lexical, std::string language) {
  if (language.empty()) throw std::invalid_argument("empty language tag");
  Literal l;
  l.lexical_ = std::move(lexical);
  l.datatype_ = vocab::lang_string();
  std::transform(language.begin(), language.end(), language.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  l.language_ = std::move(language);
  return l;
}

const Iri* as_iri(const Term& t) { return std::get_if<Iri>(&t); }
const Literal* as_literal(const Term& t) { return std::get_if<Literal>(&t); }

std::string to_ntriples(const Term& t) {
  if (const auto* i = as_iri(t)) return "<" + i->str() + ">";
  if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->id;
  const auto& l = std::get<Literal>(t);
  std::string out = "\"" + escape_literal(l.lexical()) + "\"";
  if (!l.language().empty()) return out + "@" + l.language();
  if (l.datatype() == vocab::xsd_string()) return out;
  return out + "^^<" + l.datatype().str() + ">";
}

Triple::Triple(Term s, Iri p, Term o) : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (is_literal(subject)) throw std::invalid_argument("literal in subject position");
}

std::string to_ntriples(const Triple& t) {
  return to_ntriples(t.subject) + " <" + t.predicate.str() + "> " + to_ntriples(t.object) + " .";
}

bool Graph::insert(const Triple& t) {
  if (t.predicate.empty()) throw std::invalid_argument("empty predicate");
  if (!spo_.insert(t).second) return false;
  pos_.emplace(Term(t.predicate), t.object, t.subject);
  osp_.emplace(t.object, t.subject, Term(t.predicate));
  return true;
}

bool Graph::erase(const Triple& t) {
  if (spo_.erase(t) == 0) return false;
  pos_.erase(Key(Term(t.predicate), t.object, t.subject));
  osp_.erase(Key(t.object, t.subject, Term(t.predicate)));
  return true;
}

void Graph::insert_all(const Graph& other) {
  for (const auto& t : other) insert(t);
}

std::vector<Triple> Graph::match(const TriplePattern& p) const {
  std::vector<Triple> out;
  if (p.subject && is_literal(*p.subject)) return out;
  const bool s = p.subject.has_value(), pr = p.predicate.has_value(), o = p.object.has_value();

  if (s && pr && o) {
    Triple t(*p.subject, *p.predicate, *p.object);
    if (contains(t)) out.push_back(std::move(t));
    return out;
  }
  if (s) {
    // SPO prefix scan on subject (and predicate, if bound).
    auto it = spo_.lower_bound(Triple{*p.subject, pr ? *p.predicate : Iri{}, Term{Iri{}}});
    for (; it != spo_.end() && it->subject == *p.subject; ++it) {
      if (pr && it->predicate != *p.predicate) break;
      if (o && it->object != *p.object) continue;
      out.push_back(*it);
    }
    return out;
  }
  if (pr) {
    const Term pt(*p.predicate);
    auto it = pos_.lower_bound(Key(pt, o ? *p.object : Term{Iri{}}, Term{Iri{}}));
    for (; it != pos_.end() && std::get<0>(*it) == pt; ++it) {
      if (o && std::get<1>(*it) != *p.object) break;
      out.emplace_back(std::get<2>(*it), *p.predicate, std::get<1>(*it));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (o) {
    auto it = osp_.lower_bound(Key(*p.object, Term{Iri{}}, Term{Iri{}}));
    for (; it != osp_.end() && std::get<0>(*it) == *p.object; ++it)
      out.emplace_back(std::get<1>(*it), std::get<Iri>(std::get<2>(*it)), std::get<0>(*it));
    std::sort(out.begin(), out.end());
    return out;
  }
  out.assign(spo_.begin(), spo_.end());
  return out;
}

std::vector<Term> Graph::objects(const Term& s, const Iri& p) const {
  std::vector<Term> out;
  for (auto& t : match(s, p, std::nullopt)) out.push_back(std::move(t.object));
  return out;
}

std::vector<Term> Graph::subjects(const Iri& p, const Term& o) const {
  std::vector<Term> out;
  for (auto& t : match(std::nullopt, p, o)) out.push_back(std::move(t.subject));
  return out;
}

bool Graph::indexes_consistent() const {
  if (pos_.size() != spo_.size() || osp_.size() != spo_.size()) return false;
  for (const auto& t : spo_) {
    if (!pos_.count(Key(Term(t.predicate), t.object, t.subject))) return false;
    if (!osp_.count(Key(t.object, t.subject, Term(t.predicate)))) return false;
  }
  return true;
}

std::optional<Iri> expand_name(std::string_view text, const PrefixMap& prefixes) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    auto inner = text.substr(1, text.size() - 2);
    if (!Iri::is_valid(inner)) return std::nullopt;
    return Iri(std::string(inner));
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto it = prefixes.find(std::string(text.substr(0, colon)));
  if (it == prefixes.end()) return std::nullopt;
  std::string full = it->second + std::string(text.substr(colon + 1));
  if (!Iri::is_valid(full)) return std::nullopt;
  return Iri(std::move(full));
}

std::string compact(const Iri& iri, const PrefixMap& prefixes) {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [pfx, ns] : prefixes) {
    if (ns.empty() || !iri.str().starts_with(ns)) continue;
    // Longest namespace wins; the map is ordered, so ties keep the smallest prefix.
    if (ns.size() > best_len && safe_local(std::string_view(iri.str()).substr(ns.size()))) {
      best_prefix = &pfx;
      best_len = ns.size();
    }
  }
  if (best_prefix) return *best_prefix + ":" + iri.str().substr(best_len);
  return "<" + iri.str() + ">";
}

std::string compact(const Term& t, const PrefixMap& prefixes) {
  if (const auto* i = as_iri(t)) return compact(*i, prefixes);
  if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->id;
  const auto& l = std::get<Literal>(t);
  std::string out = "\"" + escape_literal(l.lexical()) + "\"";
  if (!l.language().empty()) return out + "@" + l.language();
  if (l.datatype() == vocab::xsd_string()) return out;
  return out + "^^" + compact(l.datatype(), prefixes);
}

}  // namespace bdi
