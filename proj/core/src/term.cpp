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

#include "litgraph/term.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

#include <fmt/format.h>

#include "litgraph/error.hpp"

namespace litgraph {

Term Term::FromIri(std::string iri) {
  return FromIri(Iri(std::move(iri)));
}

Term Term::Blank(std::string label) {
  if (label.empty()) throw Error(ErrorCode::kInvalidArgument, "empty blank node label");
  for (char c : label) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("bad blank node label '{}'", label));
    }
  }
  if (label.back() == '.') {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("bad blank node label '{}'", label));
  }
  return Term(TermKind::kBlank, std::move(label), {}, {});
}

Term Term::String(std::string value) {
  return Term(TermKind::kLiteral, std::move(value), std::string(xsd::kString), {});
}

Term Term::LangString(std::string value, std::string lang) {
  if (lang.empty()) return String(std::move(value));
  for (auto& c : lang) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return Term(TermKind::kLiteral, std::move(value), std::string(xsd::kLangString), std::move(lang));
}

Term Term::Integer(long long value) {
  return Term(TermKind::kLiteral, std::to_string(value), std::string(xsd::kInteger), {});
}

Term Term::Decimal(double value) {
  return Term(TermKind::kLiteral, FormatDecimal(value), std::string(xsd::kDecimal), {});
}

Term Term::Typed(std::string lexical, std::string datatype) {
  if (datatype == xsd::kLangString) {
    throw Error(ErrorCode::kInvalidArgument, "rdf:langString requires a language tag");
  }
  Iri checked(datatype);
  return Term(TermKind::kLiteral, std::move(lexical), checked.str(), {});
}

LiteralType Term::literal_type() const {
  if (!is_literal()) return LiteralType::kOther;
  if (datatype_ == xsd::kString) return LiteralType::kString;
  if (datatype_ == xsd::kLangString) return LiteralType::kLangString;
  if (datatype_ == xsd::kInteger) return LiteralType::kInteger;
  if (datatype_ == xsd::kDecimal) return LiteralType::kDecimal;
  return LiteralType::kOther;
}

long long Term::AsInteger() const {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(value_.data(), value_.data() + value_.size(), out);
  if (ec != std::errc() || ptr != value_.data() + value_.size()) {
    throw Error(ErrorCode::kParse, fmt::format("not an integer literal: '{}'", value_));
  }
  return out;
}

double Term::AsDouble() const {
  double out = 0;
  auto [ptr, ec] = std::from_chars(value_.data(), value_.data() + value_.size(), out);
  if (ec != std::errc() || ptr != value_.data() + value_.size()) {
    throw Error(ErrorCode::kParse, fmt::format("not a numeric literal: '{}'", value_));
  }
  return out;
}

namespace {

void AppendEscaped(std::string& out, std::string_view value) {
  for (char c : value) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
          out += fmt::format("\\u{:04X}", static_cast<unsigned>(static_cast<unsigned char>(c)));
        } else {
          out.push_back(c);
        }
    }
  }
}

}  // namespace

std::string Term::ToNTriples() const {
  std::string out;
  switch (kind_) {
    case TermKind::kIri:
      out.reserve(value_.size() + 2);
      out.push_back('<');
      out += value_;
      out.push_back('>');
      break;
    case TermKind::kBlank:
      out = "_:" + value_;
      break;
    case TermKind::kLiteral:
      out.push_back('"');
      AppendEscaped(out, value_);
      out.push_back('"');
      if (datatype_ == xsd::kLangString) {
        out += "@" + lang_;
      } else {
        out += "^^<" + datatype_ + ">";
      }
      break;
  }
  return out;
}

std::string Triple::ToNTriples() const {
  return subject.ToNTriples() + " " + predicate.ToNTriples() + " " + object.ToNTriples() + " .";
}

bool CanonicalLess(const Triple& a, const Triple& b) {
  if (a.subject != b.subject) return a.subject.ToNTriples() < b.subject.ToNTriples();
  if (a.predicate != b.predicate) return a.predicate.ToNTriples() < b.predicate.ToNTriples();
  return a.object.ToNTriples() < b.object.ToNTriples();
}

std::string FormatDecimal(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "decimal literal must be finite");
  }
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::fixed);
  if (ec != std::errc()) throw Error(ErrorCode::kInvalidArgument, "decimal out of range");
  std::string out(buffer, ptr);
  if (out.find('.') == std::string::npos) out += ".0";
  if (out == "-0.0") out = "0.0";
  return out;
}

}  // namespace litgraph

std::size_t std::hash<litgraph::Term>::operator()(const litgraph::Term& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value());
  h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<std::string>{}(t.lang()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(t.kind()) * 0x100000001b3ULL;
  return h;
}
