#include "pbelint/datagen.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pbelint/detectors.hpp"
#include "pbelint/parallel.hpp"

namespace pbelint {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable draws on top of mt19937_64 (the standard distributions are not
// reproducible across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::size_t range(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  char pick(std::string_view chars) { return chars[below(chars.size())]; }

  std::string text(std::string_view chars, std::size_t len) {
    std::string out;
    for (std::size_t k = 0; k < len; ++k) out += pick(chars);
    return out;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[below(k)]);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::string_view kUpper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
constexpr std::string_view kLower = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kDigits = "0123456789";
constexpr std::size_t kFillerMax = 3;

struct Alphabets {
  std::string letters;
  std::string digits;
  std::string alnum;
  std::string specials;
  std::string delimiters;
  std::string segment;  // segment and filler characters
};

Alphabets make_alphabets(const Charset& cs) {
  Alphabets a;
  if (cs.upper) a.letters += kUpper;
  if (cs.lower) a.letters += kLower;
  if (cs.digits) a.digits = kDigits;
  a.alnum = a.letters + a.digits;
  for (char c = 0x20; c <= 0x7e; ++c) {
    if (cs.specials && char_class(c) == TokenClass::Special) a.specials += c;
  }
  for (char c : kDelimiterPool) {
    if (cs.allows(c)) a.delimiters += c;
  }
  a.segment = a.alnum.empty() ? a.specials : a.alnum;
  return a;
}

// Builds one candidate example; nullopt when it cannot fit the oracle bounds.
class ExampleBuilder {
 public:
  ExampleBuilder(const GenConfig& cfg, const Alphabets& alpha, Rng& rng)
      : cfg_(cfg), alpha_(alpha), rng_(rng), l_(cfg.samples_per_example) {}

  std::optional<Example> build() {
    std::size_t k = rng_.range(1, cfg_.max_segments);
    const bool positive = !cfg_.negative;
    const Property target = cfg_.property;
    target_ = (positive && target != Property::ExactPosition) ? rng_.range(0, k - 1) : 0;

    segments_.assign(k, std::vector<std::string>(l_));
    for (std::size_t j = 0; j < k; ++j) {
      if (!positive) {
        varied_segment(j);
      } else if (j == target_) {
        target_segment(j, target);
      } else {
        for (auto& s : segments_[j]) s = random_segment(rng_.range(cfg_.segment_len_min, cfg_.segment_len_max));
      }
    }

    delims_.clear();
    for (std::size_t j = 0; j < k; ++j) delims_.push_back(delimiter());
    joiners_.clear();
    for (std::size_t j = 0; j < k; ++j) joiners_.push_back(delimiter());
    fixed_front_ = rng_.range(0, kFillerMax);
    mids_.assign(l_, 0);
    for (auto& m : mids_) m = rng_.range(0, kFillerMax);

    while (true) {
      Example e;
      bool fits = true;
      for (std::size_t i = 0; i < l_; ++i) {
        Sample s = assemble(i);
        fits = fits && s.input.size() <= kOracleMaxInput && s.output.size() <= kOracleMaxOutput;
        e.samples.push_back(std::move(s));
      }
      if (fits) return e;
      if (!drop_segment()) return std::nullopt;
    }
  }

 private:
  std::string delimiter() {
    return alpha_.delimiters.empty() ? std::string() : std::string(1, rng_.pick(alpha_.delimiters));
  }

  std::string random_segment(std::size_t len) { return rng_.text(alpha_.segment, len); }

  std::string filler(std::size_t len) { return rng_.text(alpha_.segment, len); }

  void target_segment(std::size_t j, Property target) {
    auto& segs = segments_[j];
    switch (target) {
      case Property::SimilarLength: {
        const std::size_t len = rng_.range(cfg_.segment_len_min, cfg_.segment_len_max);
        for (auto& s : segs) s = random_segment(len);
        break;
      }
      case Property::ExactMatch: {
        const std::string text = random_segment(rng_.range(cfg_.segment_len_min, cfg_.segment_len_max));
        for (auto& s : segs) s = text;
        break;
      }
      case Property::TokenType: {
        std::vector<std::string_view> classes;
        if (!alpha_.letters.empty()) classes.push_back(alpha_.letters);
        if (!alpha_.digits.empty()) classes.push_back(alpha_.digits);
        if (classes.empty()) classes.push_back(alpha_.specials);
        const std::string_view cls = classes[rng_.below(classes.size())];
        for (auto& s : segs) s = rng_.text(cls, rng_.range(cfg_.segment_len_min, cfg_.segment_len_max));
        break;
      }
      case Property::ExactPosition:
      case Property::Repeating:
        for (auto& s : segs) s = random_segment(rng_.range(cfg_.segment_len_min, cfg_.segment_len_max));
        break;
    }
  }

  // Distinct lengths per sample where the range allows, and both letters and
  // digits in every segment of length >= 2.
  void varied_segment(std::size_t j) {
    std::vector<std::size_t> lengths;
    for (std::size_t len = cfg_.segment_len_min; len <= cfg_.segment_len_max; ++len) lengths.push_back(len);
    rng_.shuffle(lengths);
    for (std::size_t i = 0; i < l_; ++i) {
      std::string s = random_segment(lengths[i % lengths.size()]);
      if (s.size() >= 2 && !alpha_.letters.empty() && !alpha_.digits.empty()) {
        const std::size_t a = rng_.below(s.size());
        std::size_t b = rng_.below(s.size() - 1);
        if (b >= a) ++b;
        s[a] = rng_.pick(alpha_.letters);
        s[b] = rng_.pick(alpha_.digits);
      }
      segments_[j][i] = std::move(s);
    }
  }

  Sample assemble(std::size_t i) {
    Sample s;
    const bool repeating = !cfg_.negative && cfg_.property == Property::Repeating;
    const bool fixed_start = !cfg_.negative && cfg_.property == Property::ExactPosition;
    for (std::size_t j = 0; j < segments_.size(); ++j) {
      const std::string& seg = segments_[j][i];
      const std::string& d = delims_[j];
      if (j > 0) s.input += joiners_[j];
      const std::size_t front = (fixed_start && j == target_) ? fixed_front_ : rng_.range(0, kFillerMax);
      s.input += filler(front) + d + seg + d;
      if (repeating && j == target_) s.input += filler(mids_[i]) + d + seg + d;
      s.input += filler(rng_.range(0, kFillerMax));
      s.output += seg;
    }
    return s;
  }

  bool drop_segment() {
    if (segments_.size() <= 1) return false;
    std::size_t victim = segments_.size() - 1;
    if (victim == target_) --victim;
    segments_.erase(segments_.begin() + static_cast<std::ptrdiff_t>(victim));
    delims_.erase(delims_.begin() + static_cast<std::ptrdiff_t>(victim));
    joiners_.erase(joiners_.begin() + static_cast<std::ptrdiff_t>(victim));
    if (victim < target_) --target_;
    return true;
  }

  const GenConfig& cfg_;
  const Alphabets& alpha_;
  Rng& rng_;
  std::size_t l_;
  std::size_t target_ = 0;
  std::vector<std::vector<std::string>> segments_;  // [segment][sample]
  std::vector<std::string> delims_;
  std::vector<std::string> joiners_;
  std::size_t fixed_front_ = 0;
  std::vector<std::size_t> mids_;
};

bool accepted(const GenConfig& cfg, const PropertyLabels& labels) {
  if (!cfg.negative) return labels[cfg.property];
  if (cfg.negative_of) return !labels[*cfg.negative_of];
  return !labels.any();
}

}  // namespace

bool Charset::allows(char c) const {
  switch (char_class(c).value_or(TokenClass::Special)) {
    case TokenClass::Alphabet: return (c >= 'A' && c <= 'Z') ? upper : lower;
    case TokenClass::Numeric: return digits;
    case TokenClass::Special: return specials && is_printable(c);
  }
  return false;
}

std::string target_name(const GenConfig& cfg) {
  if (!cfg.negative) return std::string(property_key(cfg.property));
  if (cfg.negative_of) return "negative_" + std::string(property_key(*cfg.negative_of));
  return "negative";
}

std::string format_stats(const GenStats& stats) {
  nlohmann::ordered_json j;
  j["produced"] = stats.produced;
  j["rejected"] = stats.rejected;
  nlohmann::ordered_json rates = nlohmann::ordered_json::object();
  for (Property p : kAllProperties) rates[std::string(property_key(p))] = stats.positive_rate[static_cast<std::size_t>(p)];
  j["positive_rate"] = rates;
  return j.dump();
}

void validate(const GenConfig& cfg) {
  if (cfg.examples < 1) throw std::invalid_argument("example count must be >= 1");
  if (cfg.samples_per_example < 2) throw std::invalid_argument("samples per example must be >= 2");
  if (cfg.segment_len_min < 1 || cfg.segment_len_max > 32 || cfg.segment_len_min > cfg.segment_len_max) {
    throw std::invalid_argument("segment length range must lie within [1, 32]");
  }
  if (cfg.max_segments < 1) throw std::invalid_argument("max segments must be >= 1");
  if (cfg.max_attempts < 1) throw std::invalid_argument("max attempts must be >= 1");
  const Charset& cs = cfg.charset;
  if (!cs.upper && !cs.lower && !cs.digits && !cs.specials) throw std::invalid_argument("empty charset");
}

std::pair<std::vector<DatasetRecord>, GenStats> generate(const GenConfig& cfg) {
  validate(cfg);
  const Alphabets alpha = make_alphabets(cfg.charset);
  const std::string name = target_name(cfg);

  std::vector<DatasetRecord> records(cfg.examples);
  std::vector<std::size_t> rejections(cfg.examples, 0);

  parallel_for(
      cfg.examples,
      [&](std::size_t index) {
        Rng rng(splitmix64(cfg.seed ^ splitmix64(index)));
        for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
          auto example = ExampleBuilder(cfg, alpha, rng).build();
          if (example) {
            PropertyLabels labels = oracle_detect_all(*example);
            if (accepted(cfg, labels)) {
              char id[32];
              std::snprintf(id, sizeof id, "-%06zu", index);
              example->id = name + id;
              records[index] = {std::move(*example), labels};
              return;
            }
          }
          ++rejections[index];
        }
        throw GenerationStall("generation stalled: " + std::to_string(cfg.max_attempts) +
                              " consecutive rejections for target " + name);
      },
      cfg.threads ? cfg.threads : worker_count());

  GenStats stats;
  stats.produced = records.size();
  for (std::size_t r : rejections) stats.rejected += r;
  const double attempts = static_cast<double>(stats.produced + stats.rejected);
  if (static_cast<double>(stats.rejected) / attempts > 0.99) {
    throw GenerationStall("generation stalled: rejection rate above 99% for target " + name);
  }
  for (const DatasetRecord& rec : records) {
    for (Property p : kAllProperties) {
      if ((*rec.labels)[p]) stats.positive_rate[static_cast<std::size_t>(p)] += 1.0;
    }
  }
  for (double& rate : stats.positive_rate) rate /= static_cast<double>(stats.produced);
  return {std::move(records), stats};
}

std::vector<DatasetRecord> generate_negative(GenConfig cfg) {
  cfg.negative = true;
  return generate(cfg).first;
}

}  // namespace pbelint
