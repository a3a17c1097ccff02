#include "pbelint/alignment.hpp"

namespace pbelint {

std::vector<std::size_t> find_all(std::string_view haystack, std::string_view needle) {
  std::vector<std::size_t> hits;
  if (needle.empty() || needle.size() > haystack.size()) return hits;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    hits.push_back(pos);
  }
  return hits;
}

std::vector<Segment> segment_output(std::string_view input, std::string_view output) {
  std::vector<Segment> segments;
  std::size_t pos = 0;
  while (pos < output.size()) {
    // A prefix occurring in the input implies all its shorter prefixes do, so
    // extend until the first miss.
    std::size_t len = 0;
    while (pos + len < output.size() &&
           input.find(output.substr(pos, len + 1)) != std::string_view::npos) {
      ++len;
    }
    Segment seg;
    seg.begin = pos;
    if (len > 0) {
      seg.kind = SegmentKind::InputDerived;
      seg.end = pos + len;
    } else {
      std::size_t end = pos;
      while (end < output.size() && input.find(output[end]) == std::string_view::npos) ++end;
      seg.kind = SegmentKind::Constant;
      seg.end = end;
    }
    seg.text = std::string(output.substr(seg.begin, seg.end - seg.begin));
    seg.occurrences = find_all(input, seg.text);
    pos = seg.end;
    segments.push_back(std::move(seg));
  }
  return segments;
}

SegmentAlignment align_example(const Example& e) {
  SegmentAlignment a;
  for (const Sample& s : e.samples) a.per_sample.push_back(segment_output(s.input, s.output));
  if (a.per_sample.empty()) {
    a.diagnostic = "unalignable: example has no samples";
    return a;
  }

  const std::size_t k = a.per_sample.front().size();
  for (std::size_t i = 1; i < a.per_sample.size(); ++i) {
    if (a.per_sample[i].size() != k) {
      a.diagnostic = "unalignable: sample 0 has " + std::to_string(k) + " segments, sample " +
                     std::to_string(i) + " has " + std::to_string(a.per_sample[i].size());
      return a;
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    const Segment& first = a.per_sample.front()[j];
    for (std::size_t i = 1; i < a.per_sample.size(); ++i) {
      const Segment& seg = a.per_sample[i][j];
      if (seg.kind != first.kind) {
        a.diagnostic = "unalignable: segment " + std::to_string(j) +
                       " is input-derived in some samples and constant in others";
        return a;
      }
      if (seg.kind == SegmentKind::Constant && seg.text != first.text) {
        a.diagnostic = "unalignable: constant segment " + std::to_string(j) +
                       " differs across samples";
        return a;
      }
    }
  }
  a.k = k;
  a.aligned = true;
  return a;
}

}  // namespace pbelint
