#include "pbelint/dsl.hpp"

#include <cctype>
#include <charconv>

namespace pbelint::dsl {

namespace {

using CharTest = bool (*)(char);

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(char c) { return is_lower(c) || is_upper(c); }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_space(char c) { return c == ' '; }
bool is_underscore(char c) { return c == '_'; }
bool is_hyphen(char c) { return c == '-'; }
bool is_dot(char c) { return c == '.'; }

struct Element {
  CharTest test;
  bool repeat;  // '+' quantifier
};

struct AtomSpec {
  std::string_view text;
  std::array<Element, 2> elements;
  std::size_t count;
};

// Adjacent elements of a compound use disjoint classes, so a greedy scan
// without backtracking yields the same match as a backtracking regex engine.
constexpr std::array<AtomSpec, 11> kSpecs = {{
    {"[0-9]+", {{{is_digit, true}}}, 1},
    {"[a-z]+", {{{is_lower, true}}}, 1},
    {"[A-Z]+", {{{is_upper, true}}}, 1},
    {"[A-Za-z]+", {{{is_alpha, true}}}, 1},
    {"[A-Za-z0-9]+", {{{is_alnum, true}}}, 1},
    {"[ ]+", {{{is_space, true}}}, 1},
    {"[_]+", {{{is_underscore, true}}}, 1},
    {"[-]+", {{{is_hyphen, true}}}, 1},
    {"[.]+", {{{is_dot, true}}}, 1},
    {"[A-Z]+[_]", {{{is_upper, true}, {is_underscore, false}}}, 2},
    {"[a-z]+[ ]+", {{{is_lower, true}, {is_space, true}}}, 2},
}};

const AtomSpec& spec(RegexAtom atom) { return kSpecs[static_cast<std::size_t>(atom)]; }

// Length of the match anchored at `at`, or 0.
std::size_t match_at(const AtomSpec& s, std::string_view text, std::size_t at) {
  std::size_t pos = at;
  for (std::size_t e = 0; e < s.count; ++e) {
    const Element& el = s.elements[e];
    if (pos >= text.size() || !el.test(text[pos])) return 0;
    ++pos;
    if (el.repeat) {
      while (pos < text.size() && el.test(text[pos])) ++pos;
    }
  }
  return pos - at;
}

std::string_view case_name(CaseType c) {
  switch (c) {
    case CaseType::None: return "None";
    case CaseType::Upper: return "Upper";
    case CaseType::Lower: return "Lower";
  }
  return "None";
}

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

bool needs_quotes(char sep) {
  return sep == ' ' || sep == ',' || sep == '(' || sep == ')' || sep == '\'' || sep == '\\' ||
         !std::isgraph(static_cast<unsigned char>(sep));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program parse_program() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return Program(std::move(e));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool try_consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!try_consume(token)) fail("expected '" + std::string(token) + "'");
  }

  // Optional "name:" keyword label in front of an argument.
  void label(std::string_view name) {
    skip_ws();
    std::size_t save = pos_;
    if (try_consume(name) && try_consume(":")) return;
    pos_ = save;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      pos_ = start;
      fail("expected integer");
    }
    return value;
  }

  std::string string_literal() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '\'') fail("expected quoted string");
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      char c = text_[pos_++];
      if (c == '\'') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        c = text_[pos_++];
      }
      out += c;
    }
    return out;
  }

  Position parse_position() {
    std::size_t start = (skip_ws(), pos_);
    std::string name = identifier();
    expect("(");
    Position p;
    if (name == "CPos") {
      p = CPos{integer()};
    } else if (name == "RelPos") {
      std::size_t at = (skip_ws(), pos_);
      std::string regex = string_literal();
      auto atom = regex_from_text(regex);
      if (!atom) throw SyntaxError(at, "regex '" + regex + "' is not in the vocabulary");
      expect(",");
      at = (skip_ws(), pos_);
      std::string side = string_literal();
      RelPos rp;
      rp.regex = *atom;
      if (side == "-0") {
        rp.side = Side::Left;
      } else if (side == "+0") {
        rp.side = Side::Right;
      } else {
        throw SyntaxError(at, "RelPos side must be '-0' or '+0'");
      }
      expect(",");
      at = (skip_ws(), pos_);
      rp.occurrence = integer();
      if (rp.occurrence < 0) throw SyntaxError(at, "RelPos occurrence must be >= 0");
      p = rp;
    } else {
      throw SyntaxError(start, "unknown position '" + name + "'");
    }
    expect(")");
    return p;
  }

  Expr parse_expr() {
    std::size_t start = (skip_ws(), pos_);
    std::string name = identifier();
    expect("(");
    if (name == "ConstStr") {
      std::size_t at = (skip_ws(), pos_);
      std::string s = string_literal();
      if (s.empty()) throw SyntaxError(at, "ConstStr must be non-empty");
      expect(")");
      return ConstStr{std::move(s)};
    }
    if (name == "SubStr") {
      SubStr sub;
      label("y1");
      sub.y1 = parse_position();
      expect(",");
      label("y2");
      sub.y2 = parse_position();
      if (try_consume(",")) {
        label("case_type");
        std::size_t at = (skip_ws(), pos_);
        std::string c = identifier();
        if (c == "None") {
          sub.case_type = CaseType::None;
        } else if (c == "Upper") {
          sub.case_type = CaseType::Upper;
        } else if (c == "Lower") {
          sub.case_type = CaseType::Lower;
        } else {
          throw SyntaxError(at, "case_type must be None, Upper or Lower");
        }
      }
      expect(")");
      return sub;
    }
    if (name == "Split") {
      Split split;
      label("sep");
      skip_ws();
      std::size_t at = pos_;
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        std::string sep = string_literal();
        if (sep.size() != 1) throw SyntaxError(at, "separator must be a single character");
        split.sep = sep[0];
      } else {
        if (pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == ')') fail("expected separator");
        split.sep = text_[pos_++];
      }
      expect(",");
      label("index");
      at = (skip_ws(), pos_);
      split.index = integer();
      if (split.index < 0) throw SyntaxError(at, "Split index must be >= 0");
      expect(")");
      return split;
    }
    if (name == "Concat") {
      Concat concat;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') fail("Concat needs at least 2 parts");
      do {
        std::size_t at = (skip_ws(), pos_);
        Expr part = parse_expr();
        if (std::holds_alternative<Concat>(part)) throw SyntaxError(at, "nested Concat");
        std::visit(
            [&](auto&& v) {
              if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, Concat>) concat.parts.emplace_back(v);
            },
            part);
      } while (try_consume(","));
      if (concat.parts.size() < kMinConcatParts) fail("Concat needs at least 2 parts");
      if (concat.parts.size() > kMaxConcatParts) fail("Concat takes at most 4 parts");
      expect(")");
      return concat;
    }
    throw SyntaxError(start, "unknown expression '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view regex_text(RegexAtom atom) { return spec(atom).text; }

std::optional<RegexAtom> regex_from_text(std::string_view text) {
  for (RegexAtom atom : kAllRegexAtoms) {
    if (spec(atom).text == text) return atom;
  }
  return std::nullopt;
}

std::vector<Match> find_matches(RegexAtom atom, std::string_view text) {
  const AtomSpec& s = spec(atom);
  std::vector<Match> matches;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = match_at(s, text, pos);
    if (len == 0) {
      ++pos;
      continue;
    }
    matches.push_back({pos, pos + len});
    pos += len;
  }
  return matches;
}

std::size_t node_count(const Atom& atom) {
  return std::holds_alternative<SubStr>(atom) ? 3 : 1;
}

std::size_t node_count(const Expr& expr) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Concat>) {
          std::size_t n = 1;
          for (const Atom& part : v.parts) n += node_count(part);
          return n;
        } else {
          return node_count(Atom(v));
        }
      },
      expr);
}

namespace {
Expr to_expr(const Atom& atom) {
  return std::visit([](const auto& v) -> Expr { return v; }, atom);
}
}  // namespace

Program::Program(Expr root) : root_(std::move(root)), size_(node_count(root_)) {}
Program::Program(const Atom& atom) : Program(to_expr(atom)) {}

Result<std::size_t> resolve_position(const Position& p, std::string_view input) {
  const auto len = static_cast<long long>(input.size());
  if (const auto* c = std::get_if<CPos>(&p)) {
    long long idx = c->k > 0 ? c->k : len + c->k;
    if (idx < 0 || idx > len) {
      return Result<std::size_t>::failure("CPos(" + std::to_string(c->k) + ") outside input of length " + std::to_string(len));
    }
    return static_cast<std::size_t>(idx);
  }
  const auto& r = std::get<RelPos>(p);
  auto matches = find_matches(r.regex, input);
  if (r.occurrence < 0 || static_cast<std::size_t>(r.occurrence) >= matches.size()) {
    return Result<std::size_t>::failure("RelPos: fewer than " + std::to_string(r.occurrence + 1) + " matches of " + std::string(regex_text(r.regex)));
  }
  const Match& m = matches[static_cast<std::size_t>(r.occurrence)];
  return r.side == Side::Left ? m.begin : m.end;
}

Result<std::string> split_field(std::string_view input, char sep, int index) {
  if (index < 0) return Result<std::string>::failure("negative Split index");
  std::size_t start = 0;
  for (int field = 0; field < index; ++field) {
    auto next = input.find(sep, start);
    if (next == std::string_view::npos) {
      return Result<std::string>::failure("Split index " + std::to_string(index) + " out of range");
    }
    start = next + 1;
  }
  auto end = input.find(sep, start);
  return std::string(input.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
}

std::string apply_case(std::string text, CaseType c) {
  if (c == CaseType::Upper) {
    for (char& ch : text) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  } else if (c == CaseType::Lower) {
    for (char& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return text;
}

Result<std::string> eval(const Atom& atom, std::string_view input) {
  using R = Result<std::string>;
  if (const auto* c = std::get_if<ConstStr>(&atom)) return c->s;
  if (const auto* s = std::get_if<Split>(&atom)) return split_field(input, s->sep, s->index);
  const auto& sub = std::get<SubStr>(atom);
  auto a = resolve_position(sub.y1, input);
  if (!a) return R::propagate(a);
  auto b = resolve_position(sub.y2, input);
  if (!b) return R::propagate(b);
  if (*a >= *b) return R::failure("SubStr: empty slice [" + std::to_string(*a) + ", " + std::to_string(*b) + ")");
  return apply_case(std::string(input.substr(*a, *b - *a)), sub.case_type);
}

Result<std::string> eval(const Expr& expr, std::string_view input) {
  if (const auto* concat = std::get_if<Concat>(&expr)) {
    std::string out;
    for (const Atom& part : concat->parts) {
      auto piece = eval(part, input);
      if (!piece) return piece;
      out += *piece;
    }
    return out;
  }
  return std::visit(
      [&](const auto& v) -> Result<std::string> {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Concat>) {
          return Result<std::string>::failure("unreachable");
        } else {
          return eval(Atom(v), input);
        }
      },
      expr);
}

Result<std::string> eval(const Program& prog, std::string_view input) { return eval(prog.root(), input); }

SyntaxError::SyntaxError(std::size_t offset, const std::string& what)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

Program parse(std::string_view text) { return Parser(text).parse_program(); }

std::string print(const Position& p) {
  if (const auto* c = std::get_if<CPos>(&p)) return "CPos(" + std::to_string(c->k) + ")";
  const auto& r = std::get<RelPos>(p);
  return "RelPos(" + quote(regex_text(r.regex)) + ", " + (r.side == Side::Left ? "'-0'" : "'+0'") +
         ", " + std::to_string(r.occurrence) + ")";
}

std::string print(const Atom& atom) {
  if (const auto* c = std::get_if<ConstStr>(&atom)) return "ConstStr(" + quote(c->s) + ")";
  if (const auto* s = std::get_if<Split>(&atom)) {
    std::string sep = needs_quotes(s->sep) ? quote(std::string(1, s->sep)) : std::string(1, s->sep);
    return "Split(sep: " + sep + ", index: " + std::to_string(s->index) + ")";
  }
  const auto& sub = std::get<SubStr>(atom);
  return "SubStr(y1: " + print(sub.y1) + ", y2: " + print(sub.y2) + ", case_type: " +
         std::string(case_name(sub.case_type)) + ")";
}

std::string print(const Expr& expr) {
  if (const auto* concat = std::get_if<Concat>(&expr)) {
    std::string out = "Concat(";
    for (std::size_t i = 0; i < concat->parts.size(); ++i) {
      if (i) out += ", ";
      out += print(concat->parts[i]);
    }
    return out + ")";
  }
  return std::visit(
      [](const auto& v) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Concat>) {
          return {};
        } else {
          return print(Atom(v));
        }
      },
      expr);
}

std::string print(const Program& prog) { return print(prog.root()); }

}  // namespace pbelint::dsl
