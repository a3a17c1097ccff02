#include "doctest.h"
#include "pbelint/metrics.hpp"

using namespace pbelint;

namespace {

DatasetRecord gold(const std::string& id, bool similar) {
  PropertyLabels l;
  l.similar_length = similar;
  return {Example{id, {{"a", "a"}, {"b", "b"}}}, l};
}

PredictionRecord pred(const std::string& id, bool similar) {
  PropertyLabels l;
  l.similar_length = similar;
  return {id, l};
}

}  // namespace

TEST_CASE("hand-derived confusion example") {
  // gold 1,0,1,0 against pred 1,0,0,0: tp=1 tn=2 fn=1.
  std::vector<DatasetRecord> g{gold("a", true), gold("b", false), gold("c", true), gold("d", false)};
  std::vector<PredictionRecord> p{pred("d", false), pred("c", false), pred("b", false), pred("a", true)};
  const auto s = score(g, p)[0];
  CHECK(s.confusion == Confusion{1, 0, 2, 1});
  CHECK(s.accuracy == doctest::Approx(0.75));
  CHECK(s.pf1 == doctest::Approx(2.0 / 3.0));
  CHECK(s.nf1 == doctest::Approx(0.8));
}

TEST_CASE("score_confusion formulas") {
  auto s = score_confusion({3, 1, 4, 2});
  CHECK(s.accuracy == doctest::Approx(0.7));
  CHECK(s.pf1 == doctest::Approx(6.0 / 9.0));
  CHECK(s.nf1 == doctest::Approx(8.0 / 11.0));

  // No positives anywhere.
  s = score_confusion({0, 0, 5, 0});
  CHECK(s.pf1 == 0.0);
  CHECK(s.nf1 == 1.0);
  CHECK(s.accuracy == 1.0);
}

TEST_CASE("swapping classes swaps pf1 and nf1") {
  for (std::size_t tp = 0; tp < 4; ++tp) {
    for (std::size_t fp = 0; fp < 4; ++fp) {
      for (std::size_t tn = 0; tn < 4; ++tn) {
        for (std::size_t fn = 0; fn < 4; ++fn) {
          const auto a = score_confusion({tp, fp, tn, fn});
          const auto b = score_confusion({tn, fn, tp, fp});
          CHECK(a.pf1 == doctest::Approx(b.nf1));
          CHECK(a.nf1 == doctest::Approx(b.pf1));
          CHECK(a.accuracy == doctest::Approx(b.accuracy));
          CHECK(a.pf1 >= 0.0);
          CHECK(a.pf1 <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("perfect predictions") {
  std::vector<DatasetRecord> g{gold("a", true), gold("b", false)};
  std::vector<PredictionRecord> p{pred("a", true), pred("b", false)};
  const auto s = score(g, p)[0];
  CHECK(s.pf1 == 1.0);
  CHECK(s.nf1 == 1.0);
  CHECK(s.accuracy == 1.0);
}

TEST_CASE("join errors") {
  std::vector<DatasetRecord> g{gold("a", true), gold("b", false)};
  CHECK_THROWS_AS(score(g, {pred("a", true)}), MetricsError);
  CHECK_THROWS_AS(score(g, {pred("a", true), pred("b", true), pred("b", true)}), MetricsError);
  CHECK_THROWS_AS(score(g, {pred("a", true), pred("b", true), pred("z", true)}), MetricsError);
  CHECK_THROWS_AS(score({}, {}), MetricsError);
  DatasetRecord unlabeled{Example{"u", {{"a", "a"}, {"b", "b"}}}, std::nullopt};
  CHECK_THROWS_AS(score({unlabeled}, {pred("u", true)}), MetricsError);
}

TEST_CASE("scores json") {
  std::vector<DatasetRecord> g{gold("a", true)};
  const auto text = format_scores(score(g, {pred("a", true)}));
  CHECK(text.rfind("{\"similar_length\":{\"pf1\":1.0,\"nf1\":0.0,\"accuracy\":1.0,\"confusion\":{\"tp\":1,", 0) == 0);
  CHECK(text.find("\"repeating\"") != std::string::npos);
}
