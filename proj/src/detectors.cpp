#include "pbelint/detectors.hpp"

#include <algorithm>
#include <iterator>

namespace pbelint {

namespace {

bool derived(const SegmentAlignment& a, std::size_t j) {
  return a.per_sample.front()[j].kind == SegmentKind::InputDerived;
}

Witness make_witness(const SegmentAlignment& a, Property p, std::size_t j) {
  Witness w;
  w.property = p;
  w.segment_index = j;
  for (const auto& segs : a.per_sample) {
    w.texts.push_back(segs[j].text);
    w.positions.push_back(segs[j].occurrences);
  }
  return w;
}

Detection found(Witness w) { return {true, std::move(w)}; }

std::vector<std::size_t> intersect(const std::vector<std::size_t>& x,
                                   const std::vector<std::size_t>& y) {
  std::vector<std::size_t> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::string_view token_class_name(TokenClass c) {
  switch (c) {
    case TokenClass::Alphabet: return "alphabet";
    case TokenClass::Numeric: return "numeric";
    case TokenClass::Special: return "special";
  }
  return "?";
}

std::optional<TokenClass> char_class(char c) {
  if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) return TokenClass::Alphabet;
  if (c >= '0' && c <= '9') return TokenClass::Numeric;
  if (is_printable(c)) return TokenClass::Special;
  return std::nullopt;
}

std::optional<TokenClass> token_class_of(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto cls = char_class(text.front());
  for (char c : text) {
    if (char_class(c) != cls) return std::nullopt;
  }
  return cls;
}

Detection detect_similar_length(const SegmentAlignment& a) {
  if (!a.aligned) return {};
  for (std::size_t j = 0; j < a.k; ++j) {
    if (!derived(a, j)) continue;
    const std::size_t len = a.per_sample.front()[j].text.size();
    bool same = std::all_of(a.per_sample.begin(), a.per_sample.end(),
                            [&](const auto& segs) { return segs[j].text.size() == len; });
    if (same) return found(make_witness(a, Property::SimilarLength, j));
  }
  return {};
}

Detection detect_exact_position(const SegmentAlignment& a) {
  if (!a.aligned) return {};
  for (std::size_t j = 0; j < a.k; ++j) {
    if (!derived(a, j)) continue;

    auto common_starts = a.per_sample.front()[j].occurrences;
    std::vector<std::size_t> common_ends;
    for (std::size_t p : common_starts) common_ends.push_back(p + a.per_sample.front()[j].text.size());
    for (std::size_t i = 1; i < a.per_sample.size(); ++i) {
      const Segment& seg = a.per_sample[i][j];
      common_starts = intersect(common_starts, seg.occurrences);
      std::vector<std::size_t> ends;
      for (std::size_t p : seg.occurrences) ends.push_back(p + seg.text.size());
      common_ends = intersect(common_ends, ends);
    }

    if (common_starts.empty() && common_ends.empty()) continue;
    Witness w = make_witness(a, Property::ExactPosition, j);
    w.anchor = common_starts.empty() ? Witness::Anchor::End : Witness::Anchor::Start;
    for (std::size_t i = 0; i < a.per_sample.size(); ++i) {
      const std::size_t chosen = w.anchor == Witness::Anchor::Start
                                     ? common_starts.front()
                                     : common_ends.front() - w.texts[i].size();
      w.positions[i] = {chosen};
    }
    return found(std::move(w));
  }
  return {};
}

Detection detect_exact_match(const SegmentAlignment& a) {
  if (!a.aligned) return {};
  for (std::size_t j = 0; j < a.k; ++j) {
    const std::string& text = a.per_sample.front()[j].text;
    bool match = std::all_of(a.per_sample.begin(), a.per_sample.end(), [&](const auto& segs) {
      return segs[j].text == text && !segs[j].occurrences.empty();
    });
    if (match) return found(make_witness(a, Property::ExactMatch, j));
  }
  return {};
}

Detection detect_token_type(const SegmentAlignment& a) {
  if (!a.aligned) return {};
  for (std::size_t j = 0; j < a.k; ++j) {
    if (!derived(a, j)) continue;
    auto cls = token_class_of(a.per_sample.front()[j].text);
    if (!cls) continue;
    bool same = std::all_of(a.per_sample.begin(), a.per_sample.end(),
                            [&](const auto& segs) { return token_class_of(segs[j].text) == cls; });
    if (same) {
      Witness w = make_witness(a, Property::TokenType, j);
      w.token_class = cls;
      return found(std::move(w));
    }
  }
  return {};
}

Detection detect_repeating(const SegmentAlignment& a) {
  if (!a.aligned) return {};
  for (std::size_t j = 0; j < a.k; ++j) {
    if (!derived(a, j)) continue;
    bool repeats = std::all_of(a.per_sample.begin(), a.per_sample.end(),
                               [&](const auto& segs) { return segs[j].occurrences.size() >= 2; });
    if (repeats) return found(make_witness(a, Property::Repeating, j));
  }
  return {};
}

AmbiguityReport detect_all(const Example& e) {
  AmbiguityReport report;
  const SegmentAlignment a = align_example(e);
  if (!a.aligned) {
    report.diagnostics.push_back(a.diagnostic);
    return report;
  }
  const std::pair<Property, Detection> results[] = {
      {Property::SimilarLength, detect_similar_length(a)},
      {Property::ExactPosition, detect_exact_position(a)},
      {Property::ExactMatch, detect_exact_match(a)},
      {Property::TokenType, detect_token_type(a)},
      {Property::Repeating, detect_repeating(a)},
  };
  for (const auto& [property, detection] : results) {
    report.labels[property] = detection.found;
    if (detection.witness) report.witnesses.push_back(*detection.witness);
  }
  return report;
}

bool verify_witness(const Example& e, const Witness& w) {
  const std::size_t l = e.samples.size();
  if (w.texts.size() != l || w.positions.size() != l || l == 0) return false;
  for (std::size_t i = 0; i < l; ++i) {
    const std::string& text = w.texts[i];
    if (text.empty() || e.samples[i].output.find(text) == std::string::npos) return false;
    for (std::size_t p : w.positions[i]) {
      if (p + text.size() > e.samples[i].input.size() ||
          e.samples[i].input.compare(p, text.size(), text) != 0) {
        return false;
      }
    }
    if (w.positions[i].empty()) return false;
  }

  switch (w.property) {
    case Property::SimilarLength:
      return std::all_of(w.texts.begin(), w.texts.end(),
                         [&](const auto& t) { return t.size() == w.texts.front().size(); });
    case Property::ExactPosition:
    {
      auto anchor_of = [&](std::size_t i) {
        return w.positions[i][0] + (w.anchor == Witness::Anchor::End ? w.texts[i].size() : 0);
      };
      for (std::size_t i = 0; i < l; ++i) {
        if (w.positions[i].size() != 1 || anchor_of(i) != anchor_of(0)) return false;
      }
      return true;
    }
    case Property::ExactMatch:
      return std::all_of(w.texts.begin(), w.texts.end(),
                         [&](const auto& t) { return t == w.texts.front(); });
    case Property::TokenType:
      return w.token_class && std::all_of(w.texts.begin(), w.texts.end(), [&](const auto& t) {
               return token_class_of(t) == w.token_class;
             });
    case Property::Repeating:
      return std::all_of(w.positions.begin(), w.positions.end(), [](const auto& ps) {
        std::vector<std::size_t> sorted = ps;
        std::sort(sorted.begin(), sorted.end());
        return std::unique(sorted.begin(), sorted.end()) - sorted.begin() >= 2;
      });
  }
  return false;
}

}  // namespace pbelint
