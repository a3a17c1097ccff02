#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbelint/annotations.hpp"

namespace pbelint {

/// Character classes generated text may use.
struct Charset {
  bool upper = true;
  bool lower = true;
  bool digits = true;
  bool specials = true;

  bool allows(char c) const;
};

/// Delimiters used to glue segments into inputs (filtered by the charset).
inline constexpr std::string_view kDelimiterPool = "#@_-. ";

/// Examples per property in the reference corpus: 100002 samples in groups of 3.
inline constexpr std::size_t kReferenceSamples = 100002;
inline constexpr std::size_t kReferenceExamplesPerProperty = kReferenceSamples / 3;

struct GenConfig {
  /// Target property held fixed in positive mode.
  Property property = Property::SimilarLength;
  /// Negative mode: emit records whose `negative_of` label is false, or whose
  /// five labels are all false when `negative_of` is unset.
  bool negative = false;
  std::optional<Property> negative_of;

  std::size_t examples = 1;
  std::size_t samples_per_example = 3;
  std::size_t segment_len_min = 2;
  std::size_t segment_len_max = 9;
  std::size_t max_segments = 4;
  std::uint64_t seed = 0;
  Charset charset;
  /// Attempts allowed per example before the generator declares a stall.
  std::size_t max_attempts = 1000;
  /// 0 picks worker_count().
  std::size_t threads = 0;
};

/// Name used for the generation target in ids and the CLI ("negative" in negative mode).
std::string target_name(const GenConfig& cfg);

struct GenStats {
  std::size_t produced = 0;
  std::size_t rejected = 0;
  std::array<double, 5> positive_rate{};  // indexed by Property
};

std::string format_stats(const GenStats& stats);

class GenerationStall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument when the config is out of range.
void validate(const GenConfig& cfg);

/// Oracle-labelled records for the configured target. Deterministic in the
/// config: the same seed gives the same records regardless of thread count.
std::pair<std::vector<DatasetRecord>, GenStats> generate(const GenConfig& cfg);

/// generate() in negative mode.
std::vector<DatasetRecord> generate_negative(GenConfig cfg);

}  // namespace pbelint
