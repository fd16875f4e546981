// Copyright 2026 The litgraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "litgraph/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "litgraph/error.hpp"
#include "litgraph/unicode.hpp"
#include "litgraph/vocabulary.hpp"

namespace litgraph::rdf {

namespace {

constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";
constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";

bool IsPnChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool IsSimpleLocal(std::string_view local) {
  if (local.empty() || local.front() == '-') return false;
  return std::all_of(local.begin(), local.end(), IsPnChar);
}

bool IsIntegerLexical(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool IsDecimalLexical(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  auto dot = s.find('.');
  if (dot == std::string_view::npos || dot + 1 == s.size()) return false;
  auto digits = [](std::string_view d) {
    return std::all_of(d.begin(), d.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  return digits(s.substr(0, dot)) && digits(s.substr(dot + 1));
}

// Shared scanner for both parsers. Tracks the line for error messages.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool LookingAt(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  char Get() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  std::size_t line() const { return line_; }

  [[noreturn]] void Fail(std::string_view what) const {
    throw Error(ErrorCode::kParse, fmt::format("line {}: {}", line_, what));
  }

  void Expect(char c) {
    if (AtEnd() || Peek() != c) Fail(fmt::format("expected '{}'", c));
    Get();
  }

  // Skips spaces and tabs; newlines and comments too unless line_mode.
  void SkipSpace(bool line_mode) {
    while (!AtEnd()) {
      char c = Peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        Get();
      } else if (!line_mode && c == '\n') {
        Get();
      } else if (!line_mode && c == '#') {
        while (!AtEnd() && Peek() != '\n') Get();
      } else {
        break;
      }
    }
  }

  std::string ReadIriRef() {
    Expect('<');
    std::string out;
    while (true) {
      if (AtEnd() || Peek() == '\n') Fail("unterminated IRI");
      char c = Get();
      if (c == '>') break;
      if (c == '\\') {
        out += ReadUnicodeEscape();
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  std::string ReadBlankLabel() {
    if (!LookingAt("_:")) Fail("expected blank node");
    Get();
    Get();
    std::string out;
    while (!AtEnd() && (IsPnChar(Peek()) || Peek() == '.')) out.push_back(Get());
    while (!out.empty() && out.back() == '.') {  // statement terminator, not label
      out.pop_back();
      --pos_;
    }
    if (out.empty()) Fail("empty blank node label");
    return out;
  }

  std::string ReadQuoted() {
    char quote = Peek();
    bool long_form = LookingAt(std::string(3, quote));
    std::size_t skip = long_form ? 3 : 1;
    for (std::size_t i = 0; i < skip; ++i) Get();
    std::string out;
    while (true) {
      if (AtEnd()) Fail("unterminated string");
      if (long_form) {
        if (LookingAt(std::string(3, quote)) && Peek(3) != quote) {
          Get(); Get(); Get();
          break;
        }
      } else if (Peek() == quote) {
        Get();
        break;
      } else if (Peek() == '\n') {
        Fail("newline in string");
      }
      char c = Get();
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (AtEnd()) Fail("dangling escape");
      switch (Peek()) {
        case 'n': Get(); out.push_back('\n'); break;
        case 'r': Get(); out.push_back('\r'); break;
        case 't': Get(); out.push_back('\t'); break;
        case 'b': Get(); out.push_back('\b'); break;
        case 'f': Get(); out.push_back('\f'); break;
        case '"': Get(); out.push_back('"'); break;
        case '\'': Get(); out.push_back('\''); break;
        case '\\': Get(); out.push_back('\\'); break;
        case 'u':
        case 'U': out += ReadUnicodeEscape(); break;
        default: Fail("bad escape");
      }
    }
    return out;
  }

  std::string ReadLangTag() {
    Expect('@');
    std::string out;
    while (!AtEnd() && (std::isalnum(static_cast<unsigned char>(Peek())) || Peek() == '-')) {
      out.push_back(Get());
    }
    if (out.empty()) Fail("empty language tag");
    return out;
  }

 private:
  // Positioned on 'u' or 'U' (after the backslash).
  std::string ReadUnicodeEscape() {
    char kind = Get();
    std::size_t n = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (n == 0) Fail("bad escape");
    std::string hex;
    for (std::size_t i = 0; i < n; ++i) {
      if (AtEnd() || !std::isxdigit(static_cast<unsigned char>(Peek()))) Fail("bad \\u escape");
      hex.push_back(Get());
    }
    char32_t cp = static_cast<char32_t>(std::stoul(hex, nullptr, 16));
    return EncodeUtf8(std::u32string(1, cp));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

Triple MakeTriple(Scanner& sc, Term s, Term p, Term o) {
  if (s.is_literal()) sc.Fail("literal in subject position");
  if (!p.is_iri()) sc.Fail("predicate must be an IRI");
  return Triple{std::move(s), std::move(p), std::move(o)};
}

Term MakeIri(Scanner& sc, std::string value) {
  if (!Iri::IsValid(value)) sc.Fail(fmt::format("invalid IRI <{}>", value));
  return Term::FromIri(std::move(value));
}

Term MakeBlank(Scanner& sc, std::string label) {
  try {
    return Term::Blank(std::move(label));
  } catch (const Error& e) {
    sc.Fail(e.what());
  }
}

// --- N-Triples -----------------------------------------------------------------

Term ReadNtTerm(Scanner& sc) {
  char c = sc.Peek();
  if (c == '<') return MakeIri(sc, sc.ReadIriRef());
  if (c == '_') return MakeBlank(sc, sc.ReadBlankLabel());
  if (c == '"') {
    std::string value = sc.ReadQuoted();
    if (sc.Peek() == '@') return Term::LangString(std::move(value), sc.ReadLangTag());
    if (sc.LookingAt("^^")) {
      sc.Get();
      sc.Get();
      std::string dt = sc.ReadIriRef();
      if (!Iri::IsValid(dt)) sc.Fail("invalid datatype IRI");
      return Term::Typed(std::move(value), std::move(dt));
    }
    return Term::String(std::move(value));
  }
  sc.Fail("expected term");
}

// --- Turtle --------------------------------------------------------------------

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : sc_(text) {}

  std::vector<Triple> Parse() {
    while (true) {
      sc_.SkipSpace(false);
      if (sc_.AtEnd()) break;
      if (sc_.Peek() == '@' || LookingAtKeyword("PREFIX") || LookingAtKeyword("BASE")) {
        Directive();
      } else {
        Statement();
      }
    }
    return std::move(out_);
  }

 private:
  bool LookingAtKeyword(std::string_view kw) const {
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(sc_.Peek(i))) != kw[i]) return false;
    }
    char after = sc_.Peek(kw.size());
    return after == ' ' || after == '\t' || after == '<' || after == '\n';
  }

  std::string Word() {
    std::string w;
    while (!sc_.AtEnd() && (IsPnChar(sc_.Peek()) || sc_.Peek() == '@')) w.push_back(sc_.Get());
    return w;
  }

  void Directive() {
    bool at = sc_.Peek() == '@';
    std::string kw = Word();
    for (auto& c : kw) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (at) kw.erase(0, 1);
    sc_.SkipSpace(false);
    if (kw == "prefix") {
      std::string prefix;
      while (!sc_.AtEnd() && sc_.Peek() != ':') {
        if (!IsPnChar(sc_.Peek()) && sc_.Peek() != '.') sc_.Fail("bad prefix name");
        prefix.push_back(sc_.Get());
      }
      sc_.Expect(':');
      sc_.SkipSpace(false);
      prefixes_[prefix] = Resolve(sc_.ReadIriRef());
    } else if (kw == "base") {
      base_ = Resolve(sc_.ReadIriRef());
    } else {
      sc_.Fail(fmt::format("unknown directive '{}'", kw));
    }
    if (at) {
      sc_.SkipSpace(false);
      sc_.Expect('.');
    }
  }

  std::string Resolve(std::string iri) const {
    if (iri.find(':') == std::string::npos && !base_.empty()) return base_ + iri;
    return iri;
  }

  Term IriOrPrefixed() {
    if (sc_.Peek() == '<') return MakeIri(sc_, Resolve(sc_.ReadIriRef()));
    std::string prefix;
    while (!sc_.AtEnd() && sc_.Peek() != ':' && (IsPnChar(sc_.Peek()) || sc_.Peek() == '.')) {
      prefix.push_back(sc_.Get());
    }
    if (sc_.Peek() != ':') sc_.Fail(fmt::format("expected prefixed name, got '{}'", prefix));
    sc_.Get();
    std::string local;
    while (!sc_.AtEnd()) {
      char c = sc_.Peek();
      if (IsPnChar(c) || c == ':' || c == '%') {
        local.push_back(sc_.Get());
      } else if (c == '.' && (IsPnChar(sc_.Peek(1)) || sc_.Peek(1) == ':' || sc_.Peek(1) == '%')) {
        local.push_back(sc_.Get());
      } else if (c == '\\') {
        sc_.Get();
        if (sc_.AtEnd()) sc_.Fail("dangling escape");
        local.push_back(sc_.Get());
      } else {
        break;
      }
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) sc_.Fail(fmt::format("undeclared prefix '{}:'", prefix));
    return MakeIri(sc_, it->second + local);
  }

  Term Subject() {
    char c = sc_.Peek();
    if (c == '[' || c == '(') sc_.Fail("blank node property lists and collections are not supported");
    if (c == '_' && sc_.Peek(1) == ':') return MakeBlank(sc_, sc_.ReadBlankLabel());
    return IriOrPrefixed();
  }

  Term Verb() {
    if (sc_.Peek() == 'a') {
      char next = sc_.Peek(1);
      if (next == ' ' || next == '\t' || next == '\n' || next == '<' || next == '"') {
        sc_.Get();
        return Term::FromIri(std::string(kRdfType));
      }
    }
    return IriOrPrefixed();
  }

  Term Object() {
    char c = sc_.Peek();
    if (c == '[' || c == '(') sc_.Fail("blank node property lists and collections are not supported");
    if (c == '_' && sc_.Peek(1) == ':') return MakeBlank(sc_, sc_.ReadBlankLabel());
    if (c == '"' || c == '\'') {
      std::string value = sc_.ReadQuoted();
      if (sc_.Peek() == '@') return Term::LangString(std::move(value), sc_.ReadLangTag());
      if (sc_.LookingAt("^^")) {
        sc_.Get();
        sc_.Get();
        Term dt = IriOrPrefixed();
        return Term::Typed(std::move(value), dt.value());
      }
      return Term::String(std::move(value));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(sc_.Peek(1))))) {
      return Numeric();
    }
    if (sc_.LookingAt("true") && !IsPnChar(sc_.Peek(4)) && sc_.Peek(4) != ':') {
      for (int i = 0; i < 4; ++i) sc_.Get();
      return Term::Typed("true", std::string(kXsdBoolean));
    }
    if (sc_.LookingAt("false") && !IsPnChar(sc_.Peek(5)) && sc_.Peek(5) != ':') {
      for (int i = 0; i < 5; ++i) sc_.Get();
      return Term::Typed("false", std::string(kXsdBoolean));
    }
    return IriOrPrefixed();
  }

  Term Numeric() {
    std::string lex;
    if (sc_.Peek() == '-' || sc_.Peek() == '+') lex.push_back(sc_.Get());
    bool dot = false, exp = false;
    auto digit = [&](std::size_t ahead) { return std::isdigit(static_cast<unsigned char>(sc_.Peek(ahead))) != 0; };
    while (!sc_.AtEnd()) {
      char c = sc_.Peek();
      if (digit(0)) {
        lex.push_back(sc_.Get());
      } else if (c == '.' && !dot && !exp && digit(1)) {
        dot = true;
        lex.push_back(sc_.Get());
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        lex.push_back(sc_.Get());
        if (sc_.Peek() == '-' || sc_.Peek() == '+') lex.push_back(sc_.Get());
      } else {
        break;
      }
    }
    if (lex.empty() || lex == "-" || lex == "+") sc_.Fail("bad numeric literal");
    if (lex.front() == '+') lex.erase(0, 1);
    if (exp) return Term::Typed(lex, std::string(kXsdDouble));
    if (dot) return Term::Typed(lex, std::string(xsd::kDecimal));
    return Term::Typed(lex, std::string(xsd::kInteger));
  }

  void Statement() {
    Term subject = Subject();
    while (true) {
      sc_.SkipSpace(false);
      Term predicate = Verb();
      while (true) {
        sc_.SkipSpace(false);
        Term object = Object();
        out_.push_back(MakeTriple(sc_, subject, predicate, std::move(object)));
        sc_.SkipSpace(false);
        if (sc_.Peek() != ',') break;
        sc_.Get();
      }
      if (sc_.Peek() != ';') break;
      while (sc_.Peek() == ';') {
        sc_.Get();
        sc_.SkipSpace(false);
      }
      if (sc_.Peek() == '.') break;
    }
    sc_.SkipSpace(false);
    sc_.Expect('.');
  }

  Scanner sc_;
  std::map<std::string, std::string> prefixes_;
  std::string base_;
  std::vector<Triple> out_;
};

// Prefix table used by the Turtle writer, longest namespace first so the most
// specific prefix wins.
std::vector<std::pair<std::string, std::string>> WriterPrefixes(const std::string& namespace_base) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [prefix, ns] : Vocabulary::Default().prefixes()) out.emplace_back(prefix, ns);
  if (std::none_of(out.begin(), out.end(), [](const auto& p) { return p.first == "xsd"; })) {
    out.emplace_back("xsd", std::string(kXsdNs));
  }
  if (!namespace_base.empty() &&
      std::none_of(out.begin(), out.end(), [](const auto& p) { return p.first == "lg"; })) {
    out.emplace_back("lg", namespace_base);
  }
  return out;
}

std::string TurtleIri(const std::string& iri,
                      const std::vector<std::pair<std::string, std::string>>& prefixes) {
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& p : prefixes) {
    if (iri.starts_with(p.second) && IsSimpleLocal(std::string_view(iri).substr(p.second.size())) &&
        (!best || p.second.size() > best->second.size())) {
      best = &p;
    }
  }
  if (best) return best->first + ":" + iri.substr(best->second.size());
  return "<" + iri + ">";
}

std::string TurtleTerm(const Term& term,
                       const std::vector<std::pair<std::string, std::string>>& prefixes) {
  if (term.is_iri()) return TurtleIri(term.value(), prefixes);
  if (term.is_blank()) return "_:" + term.value();
  switch (term.literal_type()) {
    case LiteralType::kInteger:
      if (IsIntegerLexical(term.value())) return term.value();
      break;
    case LiteralType::kDecimal:
      if (IsDecimalLexical(term.value())) return term.value();
      break;
    case LiteralType::kString:
      return "\"" + EscapeLiteral(term.value()) + "\"";
    case LiteralType::kLangString:
      return "\"" + EscapeLiteral(term.value()) + "\"@" + term.lang();
    case LiteralType::kOther:
      break;
  }
  return "\"" + EscapeLiteral(term.value()) + "\"^^" + TurtleIri(term.datatype(), prefixes);
}

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<Format> ParseFormat(std::string_view name) {
  if (name == "nt" || name == "ntriples" || name == "n-triples") return Format::kNTriples;
  if (name == "ttl" || name == "turtle") return Format::kTurtle;
  return std::nullopt;
}

std::string EscapeLiteral(std::string_view value) {
  std::string nt = Term::String(std::string(value)).ToNTriples();
  // Strip the surrounding quotes and the datatype suffix.
  return nt.substr(1, nt.rfind("\"^^") - 1);
}

void WriteNTriples(std::ostream& out, std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end(), CanonicalLess);
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  for (const auto& t : triples) out << t.ToNTriples() << '\n';
}

void WriteTurtle(std::ostream& out, std::vector<Triple> triples, const std::string& namespace_base) {
  std::sort(triples.begin(), triples.end(), CanonicalLess);
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  const auto prefixes = WriterPrefixes(namespace_base);
  for (const auto& [prefix, ns] : prefixes) out << "@prefix " << prefix << ": <" << ns << "> .\n";

  std::size_t i = 0;
  while (i < triples.size()) {
    out << '\n' << TurtleTerm(triples[i].subject, prefixes);
    const Term& subject = triples[i].subject;
    bool first_predicate = true;
    while (i < triples.size() && triples[i].subject == subject) {
      const Term& predicate = triples[i].predicate;
      out << (first_predicate ? " " : " ;\n    ");
      first_predicate = false;
      out << (predicate.value() == kRdfType ? std::string("a") : TurtleTerm(predicate, prefixes));
      bool first_object = true;
      while (i < triples.size() && triples[i].subject == subject && triples[i].predicate == predicate) {
        out << (first_object ? " " : ", ") << TurtleTerm(triples[i].object, prefixes);
        first_object = false;
        ++i;
      }
    }
    out << " .\n";
  }
}

std::vector<Triple> ParseNTriples(std::string_view text) {
  std::vector<Triple> out;
  Scanner sc(text);
  while (!sc.AtEnd()) {
    sc.SkipSpace(true);
    if (sc.AtEnd()) break;
    if (sc.Peek() == '\n') {
      sc.Get();
      continue;
    }
    if (sc.Peek() == '#') {
      while (!sc.AtEnd() && sc.Peek() != '\n') sc.Get();
      continue;
    }
    Term s = ReadNtTerm(sc);
    sc.SkipSpace(true);
    Term p = ReadNtTerm(sc);
    sc.SkipSpace(true);
    Term o = ReadNtTerm(sc);
    sc.SkipSpace(true);
    sc.Expect('.');
    sc.SkipSpace(true);
    if (sc.Peek() == '#') {
      while (!sc.AtEnd() && sc.Peek() != '\n') sc.Get();
    }
    if (!sc.AtEnd() && sc.Peek() != '\n') sc.Fail("trailing content after '.'");
    out.push_back(MakeTriple(sc, std::move(s), std::move(p), std::move(o)));
  }
  return out;
}

std::vector<Triple> ParseTurtle(std::string_view text) { return TurtleParser(text).Parse(); }

std::vector<Triple> ReadFile(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  return ReadFile(path, ext == ".ttl" ? Format::kTurtle : Format::kNTriples);
}

std::vector<Triple> ReadFile(const std::filesystem::path& path, Format format) {
  std::string text = Slurp(path);
  try {
    return format == Format::kTurtle ? ParseTurtle(text) : ParseNTriples(text);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

void Export(const store::GraphStore& store, std::ostream& out, const ExportOptions& options) {
  std::vector<Triple> triples = store.Triples();
  if (!options.include_derived) {
    const auto& vocab = Vocabulary::Default();
    std::erase_if(triples, [&](const Triple& t) { return vocab.IsDerivedPredicate(t.predicate.value()); });
  }
  if (options.format == Format::kTurtle) {
    WriteTurtle(out, std::move(triples), options.namespace_base);
  } else {
    WriteNTriples(out, std::move(triples));
  }
}

void ExportFile(const store::GraphStore& store, const std::filesystem::path& path,
                const ExportOptions& options) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  Export(store, out, options);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("write failed for {}", path.string()));
}

std::unique_ptr<store::GraphStore> LoadStore(const std::filesystem::path& path) {
  auto store = std::make_unique<store::GraphStore>();
  store->InsertAll(ReadFile(path));
  return store;
}

}  // namespace litgraph::rdf
