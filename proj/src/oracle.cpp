// Ground-truth labelling. Deliberately naive: its own substring search, its own
// greedy segmentation and alignment check, and a full walk over every tuple of
// per-sample occurrence choices with no early exit.

#include <set>

#include "pbelint/detectors.hpp"

namespace pbelint {

namespace {

constexpr std::size_t kMaxTuples = 20'000'000;

struct OracleSegment {
  std::string text;
  bool derived = false;
  std::vector<std::size_t> starts;
};

bool occurs_at(const std::string& hay, std::size_t at, const std::string& needle) {
  if (at + needle.size() > hay.size()) return false;
  for (std::size_t k = 0; k < needle.size(); ++k) {
    if (hay[at + k] != needle[k]) return false;
  }
  return true;
}

std::vector<std::size_t> naive_occurrences(const std::string& hay, const std::string& needle) {
  std::vector<std::size_t> out;
  if (needle.empty()) return out;
  for (std::size_t at = 0; at < hay.size(); ++at) {
    if (occurs_at(hay, at, needle)) out.push_back(at);
  }
  return out;
}

std::vector<OracleSegment> segment(const std::string& input, const std::string& output) {
  std::vector<OracleSegment> segs;
  std::size_t pos = 0;
  while (pos < output.size()) {
    std::size_t best = 0;
    for (std::size_t len = output.size() - pos; len >= 1; --len) {
      if (!naive_occurrences(input, output.substr(pos, len)).empty()) {
        best = len;
        break;
      }
    }
    OracleSegment seg;
    if (best > 0) {
      seg.derived = true;
      seg.text = output.substr(pos, best);
    } else {
      std::size_t end = pos;
      while (end < output.size() &&
             naive_occurrences(input, std::string(1, output[end])).empty()) {
        ++end;
      }
      seg.text = output.substr(pos, end - pos);
    }
    seg.starts = naive_occurrences(input, seg.text);
    pos += seg.text.size();
    segs.push_back(std::move(seg));
  }
  return segs;
}

int class_id(char c) {
  if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) return 0;
  if (c >= '0' && c <= '9') return 1;
  if (c >= 0x20 && c <= 0x7e) return 2;
  return -1;
}

int single_class(const std::string& s) {
  int cls = class_id(s[0]);
  for (char c : s) {
    if (class_id(c) != cls) return -1;
  }
  return cls;
}

}  // namespace

PropertyLabels oracle_detect_all(const Example& e) {
  for (const Sample& s : e.samples) {
    if (s.input.size() > kOracleMaxInput || s.output.size() > kOracleMaxOutput) {
      throw OracleScaleError("oracle refuses example \"" + e.id + "\": inputs must be <= 64 and outputs <= 32 characters");
    }
  }

  PropertyLabels labels;
  const std::size_t l = e.samples.size();
  if (l == 0) return labels;

  std::vector<std::vector<OracleSegment>> segs;
  for (const Sample& s : e.samples) segs.push_back(segment(s.input, s.output));

  const std::size_t k = segs[0].size();
  for (const auto& row : segs) {
    if (row.size() != k) return labels;
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < l; ++i) {
      if (segs[i][j].derived != segs[0][j].derived) return labels;
      if (!segs[0][j].derived && segs[i][j].text != segs[0][j].text) return labels;
    }
  }

  for (std::size_t j = 0; j < k; ++j) {
    const bool all_derived = segs[0][j].derived;

    std::size_t tuples = 1;
    for (std::size_t i = 0; i < l; ++i) {
      tuples *= segs[i][j].starts.size();
      if (tuples > kMaxTuples) throw OracleScaleError("oracle refuses example \"" + e.id + "\": too many occurrence tuples");
    }

    // Odometer over every occurrence tuple (choice[i] indexes segs[i][j].starts).
    std::vector<std::size_t> choice(l, 0);
    for (std::size_t t = 0; t < tuples; ++t) {
      bool same_len = true, same_start = true, same_end = true, same_text = true, same_class = true;
      const int cls0 = single_class(segs[0][j].text);
      for (std::size_t i = 0; i < l; ++i) {
        const OracleSegment& s = segs[i][j];
        const OracleSegment& s0 = segs[0][j];
        const std::size_t start = s.starts[choice[i]];
        const std::size_t start0 = s0.starts[choice[0]];
        same_len = same_len && s.text.size() == s0.text.size();
        same_start = same_start && start == start0;
        same_end = same_end && start + s.text.size() == start0 + s0.text.size();
        same_text = same_text && s.text == s0.text;
        same_class = same_class && cls0 >= 0 && single_class(s.text) == cls0;
      }
      if (all_derived) {
        labels.similar_length = labels.similar_length || same_len;
        labels.exact_position = labels.exact_position || same_start || same_end;
        labels.token_type = labels.token_type || same_class;
      }
      labels.exact_match = labels.exact_match || same_text;

      for (std::size_t i = 0; i < l; ++i) {
        if (++choice[i] < segs[i][j].starts.size()) break;
        choice[i] = 0;
      }
    }

    // Repeating: every sample must offer a pair of distinct occurrences.
    if (all_derived) {
      bool every_sample = true;
      for (std::size_t i = 0; i < l; ++i) {
        std::set<std::pair<std::size_t, std::size_t>> distinct_pairs;
        const auto& starts = segs[i][j].starts;
        for (std::size_t p : starts) {
          for (std::size_t q : starts) {
            if (p != q) distinct_pairs.emplace(p, q);
          }
        }
        every_sample = every_sample && !distinct_pairs.empty();
      }
      labels.repeating = labels.repeating || every_sample;
    }
  }
  return labels;
}

}  // namespace pbelint
