#include <random>

#include "doctest.h"
#include "pbelint/dsl.hpp"

using namespace pbelint::dsl;

namespace {

std::size_t resolve(const Position& p, std::string_view in) {
  auto r = resolve_position(p, in);
  REQUIRE(r.ok());
  return *r;
}

std::string run(std::string_view program, std::string_view in) {
  auto r = eval(parse(program), in);
  REQUIRE_MESSAGE(r.ok(), r.error());
  return *r;
}

Position random_position(std::mt19937_64& rng) {
  if (rng() % 2) return CPos{static_cast<int>(rng() % 21) - 10};
  return RelPos{kAllRegexAtoms[rng() % kAllRegexAtoms.size()], rng() % 2 ? Side::Left : Side::Right,
                static_cast<int>(rng() % 4)};
}

Atom random_atom(std::mt19937_64& rng) {
  static const std::string chars = "aZ0 _-,()'\\/#.:";
  switch (rng() % 3) {
    case 0: {
      std::string s(1 + rng() % 4, 'x');
      for (char& c : s) c = chars[rng() % chars.size()];
      return ConstStr{s};
    }
    case 1:
      return Split{chars[rng() % chars.size()], static_cast<int>(rng() % 5)};
    default:
      return SubStr{random_position(rng), random_position(rng), static_cast<CaseType>(rng() % 3)};
  }
}

Expr random_expr(std::mt19937_64& rng) {
  if (rng() % 3 == 0) {
    Atom a = random_atom(rng);
    return std::visit([](const auto& v) -> Expr { return v; }, a);
  }
  Concat c;
  const std::size_t n = kMinConcatParts + rng() % (kMaxConcatParts - kMinConcatParts + 1);
  for (std::size_t i = 0; i < n; ++i) c.parts.push_back(random_atom(rng));
  return c;
}

}  // namespace

TEST_CASE("regex vocabulary") {
  for (RegexAtom a : kAllRegexAtoms) CHECK(regex_from_text(regex_text(a)) == a);
  CHECK_FALSE(regex_from_text("[0-9]*").has_value());
  CHECK(find_matches(RegexAtom::Digits, "A1B-123-A2BD") == std::vector<Match>{{1, 2}, {4, 7}, {9, 10}});
  CHECK(find_matches(RegexAtom::UpperThenUnderscore, "AB_CD_12") == std::vector<Match>{{0, 3}, {3, 6}});
  CHECK(find_matches(RegexAtom::LowerThenSpaces, "Mohan  Kumar") == std::vector<Match>{{1, 7}});
  CHECK(find_matches(RegexAtom::Alnum, "a1-b2") == std::vector<Match>{{0, 2}, {3, 5}});
  CHECK(find_matches(RegexAtom::Underscores, "abc").empty());
}

TEST_CASE("resolve_position") {
  CHECK(resolve(RelPos{RegexAtom::Underscores, Side::Right, 0}, "AB_CD_123") == 3);
  CHECK(resolve(CPos{0}, "Mohan Kumar") == 11);
  CHECK(resolve(RelPos{RegexAtom::Digits, Side::Left, 1}, "A1B-123-A2BD") == 4);
  CHECK(resolve(CPos{-3}, "AB_CD_123") == 6);
  CHECK(resolve(CPos{-4}, "AB_CD_123") == 5);
  CHECK(resolve(CPos{9}, "AB_CD_123") == 9);
  CHECK_FALSE(resolve_position(CPos{10}, "AB_CD_123").ok());
  CHECK_FALSE(resolve_position(CPos{-10}, "AB_CD_123").ok());
  CHECK_FALSE(resolve_position(RelPos{RegexAtom::Digits, Side::Left, 3}, "A1B-123-A2BD").ok());
}

TEST_CASE("evaluation of reference programs") {
  CHECK(run("Concat(Split(sep: _, index: 1), Split(sep: _, index: 2))", "AB_CD_123") == "CD123");
  CHECK(run("Concat(SubStr(y1: RelPos('[_]+', '+0', 0), y2: CPos(-4), case_type: None), SubStr(y1:CPos(-3), y2:CPos(0)))",
            "AB_CD_123") == "CD123");
  CHECK(run("SubStr(y1: CPos(6), y2: CPos(0), case_type: None)", "Mohan Kumar") == "Kumar");
  CHECK(run("SubStr(y1: RelPos('[a-z]+[ ]+', '+0', 0), y2: CPos(0), case_type: None)", "Merve Williams") == "Williams");
  CHECK(run("Concat(Split(sep: -, index: 0),ConstStr('/11'))", "19-11-1995") == "19/11");
  CHECK(run("Concat(Split(sep: -, index: 0),ConstStr('/'),Split(sep: -, index: 1))", "10-11-2012") == "10/11");
  CHECK(run("SubStr(y1: RelPos('[0-9]+', '-0', 1), y2: RelPos('[0-9]+', '+0', 1), case_type: None)", "A1B-123-A2BD") == "123");
  CHECK(run("SubStr(y1: CPos(8), y2: CPos(9), case_type: None)", "Y 2 ECN 2") == "2");
  CHECK(run("ConstStr('x')", "anything") == "x");
  CHECK(run("SubStr(CPos(1), CPos(3), Upper)", "abcd") == "BC");
  CHECK(run("SubStr(CPos(1), CPos(3), Lower)", "ABCD") == "bc");
}

TEST_CASE("evaluation errors") {
  CHECK_FALSE(eval(parse("SubStr(y1: CPos(3), y2: CPos(3), case_type: None)"), "abcdef").ok());
  CHECK_FALSE(eval(parse("SubStr(y1: CPos(4), y2: CPos(2), case_type: None)"), "abcdef").ok());
  CHECK_FALSE(eval(parse("Split(sep: _, index: 2)"), "a_b").ok());
  CHECK_FALSE(eval(parse("Concat(ConstStr('a'), Split(sep: _, index: 5))"), "a_b").ok());
  // Empty fields are kept.
  auto r = eval(parse("Split(sep: _, index: 1)"), "a__b");
  REQUIRE(r.ok());
  CHECK(*r == "");
  CHECK(*eval(parse("Split(sep: _, index: 2)"), "a__b") == "b");
}

TEST_CASE("program size") {
  CHECK(parse("ConstStr('a')").size() == 1);
  CHECK(parse("Split(sep: _, index: 0)").size() == 1);
  CHECK(parse("SubStr(CPos(1), CPos(0))").size() == 3);
  CHECK(parse("Concat(Split(sep: _, index: 1), Split(sep: _, index: 2))").size() == 3);
  CHECK(parse("Concat(SubStr(CPos(1), CPos(2)), ConstStr('a'))").size() == 5);
}

TEST_CASE("parse and print") {
  const std::string row2 = "SubStr(y1: CPos(6), y2: CPos(0), case_type: None)";
  CHECK(print(parse(row2)) == row2);
  CHECK(print(parse("Split(sep: ' ', index: 1)")) == "Split(sep: ' ', index: 1)");
  CHECK(print(parse("Concat(ConstStr('a'),ConstStr('b'))")) == "Concat(ConstStr('a'), ConstStr('b'))");

  CHECK_THROWS_AS(parse("Concat()"), SyntaxError);
  CHECK_THROWS_AS(parse("Concat(ConstStr('a'))"), SyntaxError);
  CHECK_THROWS_AS(parse("Concat(ConstStr('a'), ConstStr('b'), ConstStr('c'), ConstStr('d'), ConstStr('e'))"), SyntaxError);
  CHECK_THROWS_AS(parse("Concat(ConstStr('a'), Concat(ConstStr('b'), ConstStr('c')))"), SyntaxError);
  CHECK_THROWS_AS(parse("ConstStr('')"), SyntaxError);
  CHECK_THROWS_AS(parse("SubStr(RelPos('[0-9]*', '-0', 0), CPos(0))"), SyntaxError);
  CHECK_THROWS_AS(parse("SubStr(RelPos('[0-9]+', '+1', 0), CPos(0))"), SyntaxError);
  CHECK_THROWS_AS(parse("SubStr(CPos(1), CPos(0)) x"), SyntaxError);
  try {
    parse("SubStr(y1: Bogus(1), y2: CPos(0))");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 11);
  }
}

TEST_CASE("random programs survive print then parse") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5000; ++trial) {
    const Program p(random_expr(rng));
    const std::string text = print(p);
    const Program back = parse(text);
    REQUIRE_MESSAGE(back == p, text);
    CHECK(print(back) == text);
    CHECK(back.size() == p.size());
  }
}

TEST_CASE("concat is the concatenation of its parts") {
  std::mt19937_64 rng(4);
  const std::vector<std::string> inputs{"AB_CD_123", "Mohan Kumar", "19-11-1995", "a.b.c", "x y_z-1"};
  int checked = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    Concat c;
    const std::size_t n = 2 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) c.parts.push_back(random_atom(rng));
    for (const auto& in : inputs) {
      std::string expected;
      bool ok = true;
      for (const Atom& a : c.parts) {
        auto r = eval(a, in);
        if (!r) {
          ok = false;
          break;
        }
        expected += *r;
      }
      auto whole = eval(Expr(c), in);
      CHECK(whole.ok() == ok);
      if (ok) {
        CHECK(*whole == expected);
        ++checked;
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("Split agrees with separator-bounded SubStr") {
  std::mt19937_64 rng(8);
  const std::vector<std::pair<char, RegexAtom>> seps{
      {'_', RegexAtom::Underscores}, {'-', RegexAtom::Hyphens}, {'.', RegexAtom::Dots}, {' ', RegexAtom::Spaces}};
  for (int trial = 0; trial < 2000; ++trial) {
    const auto [sep, atom] = seps[rng() % seps.size()];
    // Non-empty fields so that each separator is its own regex match.
    const std::size_t fields = 2 + rng() % 4;
    std::string in;
    for (std::size_t f = 0; f < fields; ++f) {
      if (f) in += sep;
      in += std::string(1 + rng() % 3, "abc12"[rng() % 5]);
    }
    const int len = static_cast<int>(in.size());
    for (int i = 0; i < static_cast<int>(fields); ++i) {
      Position lo = i == 0 ? Position{CPos{-len}} : Position{RelPos{atom, Side::Right, i - 1}};
      Position hi = i + 1 == static_cast<int>(fields) ? Position{CPos{0}} : Position{RelPos{atom, Side::Left, i}};
      auto a = eval(Atom{Split{sep, i}}, in);
      auto b = eval(Atom{SubStr{lo, hi, CaseType::None}}, in);
      REQUIRE(a.ok());
      REQUIRE(b.ok());
      CHECK(*a == *b);
    }
  }
}
