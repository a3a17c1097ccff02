#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbelint/annotations.hpp"
#include "pbelint/dsl.hpp"

namespace pbelint {

struct SynthesisConfig {
  std::size_t max_size = 7;
  std::size_t max_concat = dsl::kMaxConcatParts;
  /// Bound on |k| for CPos(k); defaults to the longest input.
  std::optional<int> cpos_range;
  /// RelPos occurrences tried are 0 .. occurrence_max - 1.
  int occurrence_max = 3;
  /// Split separators; defaults to every special character present in all inputs.
  std::optional<std::string> separators;
  /// Refuse to materialize more programs than this.
  std::size_t max_programs = 2'000'000;
};

class SynthesisLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Separators used when the config leaves them unset.
std::string default_separators(const Example& e);

/// Every program within the config bounds that reproduces all outputs of `e`,
/// deduplicated by printed form and ranked by (size, ConstStr count, text).
std::vector<dsl::Program> synthesize(const Example& e, const SynthesisConfig& cfg = {});

bool check_consistency(const dsl::Program& prog, const Example& e);

/// Ordering used by synthesize.
bool rank_less(const dsl::Program& a, const dsl::Program& b);
std::size_t const_count(const dsl::Program& p);

struct UnseenOutcome {
  std::string input;
  /// Distinct output -> indices into DivergenceReport::consistent_programs.
  std::map<std::string, std::vector<std::size_t>> outputs;
  std::vector<std::size_t> failed;

  std::size_t intent_count() const { return outputs.size(); }
};

struct DivergenceReport {
  std::vector<dsl::Program> consistent_programs;
  std::vector<UnseenOutcome> per_input;
};

DivergenceReport divergence(std::vector<dsl::Program> programs, const std::vector<std::string>& unseen);

}  // namespace pbelint
