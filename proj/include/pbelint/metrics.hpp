#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbelint/annotations.hpp"

namespace pbelint {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  bool operator==(const Confusion&) const = default;
};

/// Per-property scores. F1 with a zero denominator is 0.
struct PropertyScore {
  double pf1 = 0.0;
  double nf1 = 0.0;
  double accuracy = 0.0;
  Confusion confusion;
};

PropertyScore score_confusion(const Confusion& c);

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Scores = std::array<PropertyScore, 5>;  // indexed by Property

/// Joins predictions to gold records on id. Every gold record must be labelled
/// and have exactly one prediction; predictions for unknown ids are rejected.
Scores score(const std::vector<DatasetRecord>& gold, const std::vector<PredictionRecord>& pred);

std::string format_scores(const Scores& scores);

}  // namespace pbelint
