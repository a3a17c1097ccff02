#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pbelint/annotations.hpp"

namespace pbelint {

enum class SegmentKind { InputDerived, Constant };

/// A piece of an output string, traced to the input or kept as a literal.
struct Segment {
  std::string text;
  SegmentKind kind = SegmentKind::Constant;
  std::size_t begin = 0;  // span within the output, [begin, end)
  std::size_t end = 0;
  /// Start positions of `text` in the input, ascending.
  std::vector<std::size_t> occurrences;

  bool operator==(const Segment&) const = default;
};

struct SegmentAlignment {
  std::vector<std::vector<Segment>> per_sample;
  std::size_t k = 0;  // common segment count, 0 when unaligned
  bool aligned = false;
  std::string diagnostic;  // why alignment failed; empty when aligned
};

/// Every start position of `needle` in `haystack`, overlapping matches included.
std::vector<std::size_t> find_all(std::string_view haystack, std::string_view needle);

/// Greedy left-to-right decomposition of `output` against `input`: the longest
/// prefix present in `input` becomes an input-derived segment; a maximal run of
/// characters absent from `input` becomes one constant segment.
std::vector<Segment> segment_output(std::string_view input, std::string_view output);

SegmentAlignment align_example(const Example& e);

}  // namespace pbelint
