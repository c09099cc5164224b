#pragma once

// Attribute-value record format shared by lexicon, morpheme, paradigm and
// config files.  A record is an ordered list of (name, value) pairs; a value
// is an atom, a parenthesized list of atoms, a nested record, or a list of
// records.  Lists of atoms are enclosed in parentheses, records in curly
// brackets; atoms are bare tokens or double-quoted strings.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace morels {

class Record;

enum class ValueKind { Atom, AtomList, Rec, RecList };

class Value {
public:
  Value() : kind_(ValueKind::Atom) {}

  static Value atom(std::string a);
  static Value atom_list(std::vector<std::string> atoms);
  static Value rec(Record r);
  // A list of exactly one record normalizes to a plain Rec, so that a Rec is
  // never confused with a one-element RecList after parsing.
  static Value rec_list(std::vector<Record> recs);

  ValueKind kind() const { return kind_; }
  bool is_atom() const { return kind_ == ValueKind::Atom; }
  bool is_atom_list() const { return kind_ == ValueKind::AtomList; }
  bool is_rec() const { return kind_ == ValueKind::Rec; }
  bool is_rec_list() const { return kind_ == ValueKind::RecList; }

  const std::string& as_atom() const { return atom_; }
  const std::vector<std::string>& as_atom_list() const { return atoms_; }
  const Record& as_rec() const { return *recs_.front(); }
  // Records of this value: one for Rec, all for RecList, none otherwise.
  std::vector<const Record*> records() const;

  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }

private:
  ValueKind kind_;
  std::string atom_;
  std::vector<std::string> atoms_;
  // shared_ptr keeps Value copyable while Record is still incomplete here.
  std::vector<std::shared_ptr<const Record>> recs_;
};

class Record {
public:
  using Attr = std::pair<std::string, Value>;

  Record() = default;

  void add(std::string name, Value v);
  // Appends rec under `name`; if the attribute already holds record values
  // the new record is aggregated into a RecList at the existing position.
  void add_record(const std::string& name, Record rec);

  const std::vector<Attr>& attrs() const { return attrs_; }
  bool empty() const { return attrs_.empty(); }
  std::size_t size() const { return attrs_.size(); }

  bool has(std::string_view name) const;
  // First value bound to name, or nullptr.
  const Value* find(std::string_view name) const;
  // All values bound to name, in order; RecList values flatten into their
  // member records.
  std::vector<const Value*> get_all(std::string_view name) const;
  // Convenience: atom value of the first binding, or empty optional.
  std::optional<std::string> atom(std::string_view name) const;
  // Convenience: record values of every binding, flattened.
  std::vector<const Record*> records(std::string_view name) const;

  void set(const std::string& name, Value v);
  bool remove(std::string_view name);

  bool operator==(const Record& other) const;
  bool operator!=(const Record& other) const { return !(*this == other); }

private:
  std::vector<Attr> attrs_;
};

enum class ParseErrorKind { UnbalancedDelimiter, UnterminatedString, EmptyAttributeName };

struct ParseError : std::runtime_error {
  ParseError(ParseErrorKind k, std::size_t line, std::size_t col, const std::string& what)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        kind(k),
        line(line),
        col(col) {}

  ParseErrorKind kind;
  std::size_t line;
  std::size_t col;
};

// ---------------------------------------------------------------------------
// Value / Record implementation

inline Value Value::atom(std::string a) {
  Value v;
  v.kind_ = ValueKind::Atom;
  v.atom_ = std::move(a);
  return v;
}

inline Value Value::atom_list(std::vector<std::string> atoms) {
  Value v;
  v.kind_ = ValueKind::AtomList;
  v.atoms_ = std::move(atoms);
  return v;
}

inline Value Value::rec(Record r) {
  Value v;
  v.kind_ = ValueKind::Rec;
  v.recs_.push_back(std::make_shared<const Record>(std::move(r)));
  return v;
}

inline Value Value::rec_list(std::vector<Record> recs) {
  Value v;
  if (recs.size() == 1) {
    v.kind_ = ValueKind::Rec;
    v.recs_.push_back(std::make_shared<const Record>(std::move(recs.front())));
    return v;
  }
  v.kind_ = ValueKind::RecList;
  for (auto& r : recs) v.recs_.push_back(std::make_shared<const Record>(std::move(r)));
  return v;
}

inline std::vector<const Record*> Value::records() const {
  std::vector<const Record*> out;
  out.reserve(recs_.size());
  for (const auto& r : recs_) out.push_back(r.get());
  return out;
}

inline bool Value::operator==(const Value& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case ValueKind::Atom:
      return atom_ == other.atom_;
    case ValueKind::AtomList:
      return atoms_ == other.atoms_;
    case ValueKind::Rec:
    case ValueKind::RecList: {
      if (recs_.size() != other.recs_.size()) return false;
      for (std::size_t i = 0; i < recs_.size(); ++i)
        if (!(*recs_[i] == *other.recs_[i])) return false;
      return true;
    }
  }
  return false;
}

inline void Record::add(std::string name, Value v) {
  attrs_.emplace_back(std::move(name), std::move(v));
}

inline void Record::add_record(const std::string& name, Record rec) {
  for (auto& [n, v] : attrs_) {
    if (n == name && (v.is_rec() || v.is_rec_list())) {
      std::vector<Record> merged;
      for (const Record* r : v.records()) merged.push_back(*r);
      merged.push_back(std::move(rec));
      v = Value::rec_list(std::move(merged));
      return;
    }
  }
  attrs_.emplace_back(name, Value::rec(std::move(rec)));
}

inline bool Record::has(std::string_view name) const { return find(name) != nullptr; }

inline const Value* Record::find(std::string_view name) const {
  for (const auto& [n, v] : attrs_)
    if (n == name) return &v;
  return nullptr;
}

inline std::vector<const Value*> Record::get_all(std::string_view name) const {
  std::vector<const Value*> out;
  for (const auto& [n, v] : attrs_)
    if (n == name) out.push_back(&v);
  return out;
}

inline std::optional<std::string> Record::atom(std::string_view name) const {
  const Value* v = find(name);
  if (v && v->is_atom()) return v->as_atom();
  return std::nullopt;
}

inline std::vector<const Record*> Record::records(std::string_view name) const {
  std::vector<const Record*> out;
  for (const auto& [n, v] : attrs_) {
    if (n != name) continue;
    for (const Record* r : v.records()) out.push_back(r);
  }
  return out;
}

inline void Record::set(const std::string& name, Value v) {
  for (auto& [n, val] : attrs_) {
    if (n == name) {
      val = std::move(v);
      return;
    }
  }
  attrs_.emplace_back(name, std::move(v));
}

inline bool Record::remove(std::string_view name) {
  bool removed = false;
  for (std::size_t i = attrs_.size(); i-- > 0;) {
    if (attrs_[i].first == name) {
      attrs_.erase(attrs_.begin() + static_cast<std::ptrdiff_t>(i));
      removed = true;
    }
  }
  return removed;
}

inline bool Record::operator==(const Record& other) const { return attrs_ == other.attrs_; }

// ---------------------------------------------------------------------------
// Parser

namespace detail {

struct Token {
  enum Kind { LBrace, RBrace, LParen, RParen, Atom, End };
  Kind kind = End;
  std::string text;
  bool quoted = false;
  std::size_t line = 1;
  std::size_t col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Token::End;
      return t;
    }
    char c = text_[pos_];
    switch (c) {
      case '{': advance(); t.kind = Token::LBrace; return t;
      case '}': advance(); t.kind = Token::RBrace; return t;
      case '(': advance(); t.kind = Token::LParen; return t;
      case ')': advance(); t.kind = Token::RParen; return t;
      case '"': return quoted_atom(t);
      default: return bare_atom(t);
    }
  }

  Token peek() {
    std::size_t p = pos_, l = line_, c = col_;
    Token t = next();
    pos_ = p;
    line_ = l;
    col_ = c;
    return t;
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token quoted_atom(Token t) {
    t.kind = Token::Atom;
    t.quoted = true;
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size())
        throw ParseError(ParseErrorKind::UnterminatedString, t.line, t.col,
                         "unterminated string");
      char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size())
          throw ParseError(ParseErrorKind::UnterminatedString, t.line, t.col,
                           "unterminated string");
        char esc = text_[pos_];
        if (esc == '"' || esc == '\\') {
          out.push_back(esc);
          advance();
          continue;
        }
        out.push_back('\\');
        continue;
      }
      out.push_back(c);
      advance();
    }
    t.text = std::move(out);
    return t;
  }

  Token bare_atom(Token t) {
    t.kind = Token::Atom;
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '{' || c == '}' ||
          c == '(' || c == ')' || c == '"')
        break;
      out.push_back(c);
      advance();
    }
    t.text = std::move(out);
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Record parse_one() {
    Token t = lex_.next();
    if (t.kind != Token::LBrace)
      throw ParseError(ParseErrorKind::UnbalancedDelimiter, t.line, t.col,
                       "expected '{' to open record");
    Record r = record_body(t);
    Token end = lex_.next();
    if (end.kind != Token::End)
      throw ParseError(ParseErrorKind::UnbalancedDelimiter, end.line, end.col,
                       "trailing content after record");
    return r;
  }

  std::vector<Record> parse_stream() {
    std::vector<Record> out;
    while (true) {
      Token t = lex_.next();
      if (t.kind == Token::End) return out;
      if (t.kind != Token::LBrace)
        throw ParseError(ParseErrorKind::UnbalancedDelimiter, t.line, t.col,
                         "expected '{' to open record");
      out.push_back(record_body(t));
    }
  }

private:
  // Consumes attributes until the matching '}'.  `open` is the opening brace
  // token, used for error positions on premature end of input.
  Record record_body(const Token& open) {
    Record r;
    while (true) {
      Token t = lex_.next();
      if (t.kind == Token::RBrace) return r;
      if (t.kind == Token::End)
        throw ParseError(ParseErrorKind::UnbalancedDelimiter, open.line, open.col,
                         "record is never closed");
      if (t.kind != Token::Atom)
        throw ParseError(ParseErrorKind::UnbalancedDelimiter, t.line, t.col,
                         "expected attribute name");
      if (t.text.empty())
        throw ParseError(ParseErrorKind::EmptyAttributeName, t.line, t.col,
                         "empty attribute name");
      std::string name = t.text;
      parse_value(r, name);
    }
  }

  void parse_value(Record& r, const std::string& name) {
    Token t = lex_.next();
    switch (t.kind) {
      case Token::Atom:
        r.add(name, Value::atom(t.text));
        return;
      case Token::LParen: {
        std::vector<std::string> atoms;
        while (true) {
          Token a = lex_.next();
          if (a.kind == Token::RParen) break;
          if (a.kind != Token::Atom)
            throw ParseError(ParseErrorKind::UnbalancedDelimiter, a.line, a.col,
                             "atom list may contain only atoms");
          atoms.push_back(a.text);
        }
        r.add(name, Value::atom_list(std::move(atoms)));
        return;
      }
      case Token::LBrace: {
        // An attribute may be followed by several records in a row; they
        // form one RecList value.
        std::vector<Record> recs;
        recs.push_back(record_body(t));
        while (lex_.peek().kind == Token::LBrace) {
          Token o = lex_.next();
          recs.push_back(record_body(o));
        }
        if (recs.size() == 1) {
          r.add_record(name, std::move(recs.front()));
        } else {
          for (auto& rec : recs) r.add_record(name, std::move(rec));
        }
        return;
      }
      default:
        throw ParseError(ParseErrorKind::UnbalancedDelimiter, t.line, t.col,
                         "expected a value after attribute name");
    }
  }

  Lexer lex_;
};

inline bool atom_needs_quotes(const std::string& a) {
  if (a.empty()) return true;
  for (char c : a)
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '{' || c == '}' ||
        c == '(' || c == ')' || c == '"' || c == '\\')
      return true;
  return false;
}

inline void write_atom(std::string& out, const std::string& a) {
  if (!atom_needs_quotes(a)) {
    out += a;
    return;
  }
  out += '"';
  for (char c : a) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

inline void write_record(std::string& out, const Record& r, int indent);

inline void write_value(std::string& out, const Value& v, int indent) {
  switch (v.kind()) {
    case ValueKind::Atom:
      write_atom(out, v.as_atom());
      break;
    case ValueKind::AtomList: {
      out += '(';
      bool first = true;
      for (const auto& a : v.as_atom_list()) {
        if (!first) out += ' ';
        first = false;
        write_atom(out, a);
      }
      out += ')';
      break;
    }
    case ValueKind::Rec:
      write_record(out, v.as_rec(), indent);
      break;
    case ValueKind::RecList: {
      bool first = true;
      for (const Record* rec : v.records()) {
        if (!first) {
          out += '\n';
          out.append(static_cast<std::size_t>(indent + 2), ' ');
        }
        first = false;
        write_record(out, *rec, indent + 2);
      }
      break;
    }
  }
}

inline void write_record(std::string& out, const Record& r, int indent) {
  out += '{';
  for (const auto& [name, value] : r.attrs()) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent + 2), ' ');
    write_atom(out, name);
    out += ' ';
    write_value(out, value, indent + 2);
  }
  out += '\n';
  out.append(static_cast<std::size_t>(indent), ' ');
  out += '}';
}

}  // namespace detail

// Parses exactly one record; anything besides whitespace or comments after it
// is an error.
inline Record parse_record(std::string_view text) {
  detail::Parser p(text);
  return p.parse_one();
}

// Parses a whole file of top-level records.
inline std::vector<Record> parse_records(std::string_view text) {
  detail::Parser p(text);
  return p.parse_stream();
}

// Canonical text: two-space indentation per nesting level, one attribute per
// line, atoms quoted only when they contain whitespace or delimiters.
inline std::string serialize_record(const Record& r) {
  std::string out;
  detail::write_record(out, r, 0);
  return out;
}

inline std::string serialize_records(const std::vector<Record>& recs) {
  std::string out;
  for (const auto& r : recs) {
    out += serialize_record(r);
    out += "\n\n";
  }
  return out;
}

}  // namespace morels
