#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pbelint::dsl {

/// Value-or-error result of evaluation. Errors are ordinary values here: a
/// program that fails on an input is simply inconsistent with it.
template <typename T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  static Result failure(std::string message) { return Result(Error{std::move(message)}); }

  bool ok() const { return state_.index() == 0; }
  explicit operator bool() const { return ok(); }
  const T& value() const& { return std::get<0>(state_); }
  T&& value() && { return std::get<0>(std::move(state_)); }
  const T& operator*() const& { return value(); }
  const std::string& error() const { return std::get<1>(state_).message; }

  template <typename U>
  static Result propagate(const Result<U>& other) { return failure(other.error()); }

 private:
  struct Error {
    std::string message;
  };
  explicit Result(Error e) : state_(std::move(e)) {}
  std::variant<T, Error> state_;
};

/// Closed vocabulary of regex tokens usable by RelPos.
enum class RegexAtom {
  Digits,        // [0-9]+
  Lower,         // [a-z]+
  Upper,         // [A-Z]+
  Alpha,         // [A-Za-z]+
  Alnum,         // [A-Za-z0-9]+
  Spaces,        // [ ]+
  Underscores,   // [_]+
  Hyphens,       // [-]+
  Dots,          // [.]+
  UpperThenUnderscore,  // [A-Z]+[_]
  LowerThenSpaces,      // [a-z]+[ ]+
};

inline constexpr std::array<RegexAtom, 11> kAllRegexAtoms = {
    RegexAtom::Digits,      RegexAtom::Lower,  RegexAtom::Upper,
    RegexAtom::Alpha,       RegexAtom::Alnum,  RegexAtom::Spaces,
    RegexAtom::Underscores, RegexAtom::Hyphens, RegexAtom::Dots,
    RegexAtom::UpperThenUnderscore, RegexAtom::LowerThenSpaces};

std::string_view regex_text(RegexAtom atom);
std::optional<RegexAtom> regex_from_text(std::string_view text);

struct Match {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Match&) const = default;
};

/// Non-overlapping leftmost-longest matches, scanning left to right.
std::vector<Match> find_matches(RegexAtom atom, std::string_view text);

enum class Side { Left, Right };  // printed as '-0' / '+0'
enum class CaseType { None, Upper, Lower };

struct CPos {
  int k = 0;  // 0 is the end of the string; negative counts from the end
  bool operator==(const CPos&) const = default;
};

struct RelPos {
  RegexAtom regex = RegexAtom::Digits;
  Side side = Side::Left;
  int occurrence = 0;
  bool operator==(const RelPos&) const = default;
};

using Position = std::variant<CPos, RelPos>;

struct ConstStr {
  std::string s;
  bool operator==(const ConstStr&) const = default;
};

struct SubStr {
  Position y1;
  Position y2;
  CaseType case_type = CaseType::None;
  bool operator==(const SubStr&) const = default;
};

struct Split {
  char sep = '_';
  int index = 0;
  bool operator==(const Split&) const = default;
};

/// Anything that may appear as a Concat part.
using Atom = std::variant<ConstStr, SubStr, Split>;

struct Concat {
  std::vector<Atom> parts;  // 2..4 parts
  bool operator==(const Concat&) const = default;
};

using Expr = std::variant<ConstStr, SubStr, Split, Concat>;

inline constexpr std::size_t kMinConcatParts = 2;
inline constexpr std::size_t kMaxConcatParts = 4;

std::size_t node_count(const Atom& atom);
std::size_t node_count(const Expr& expr);

class Program {
 public:
  explicit Program(Expr root);
  explicit Program(const Atom& atom);

  const Expr& root() const { return root_; }
  std::size_t size() const { return size_; }

  bool operator==(const Program& other) const { return root_ == other.root_; }

 private:
  Expr root_;
  std::size_t size_;
};

Result<std::size_t> resolve_position(const Position& p, std::string_view input);
/// Field `index` of `input` split on `sep`; empty fields are kept.
Result<std::string> split_field(std::string_view input, char sep, int index);
std::string apply_case(std::string text, CaseType c);

Result<std::string> eval(const Atom& atom, std::string_view input);
Result<std::string> eval(const Expr& expr, std::string_view input);
Result<std::string> eval(const Program& prog, std::string_view input);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Program parse(std::string_view text);

std::string print(const Position& p);
std::string print(const Atom& atom);
std::string print(const Expr& expr);
std::string print(const Program& prog);

}  // namespace pbelint::dsl
