#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pbelint/alignment.hpp"
#include "pbelint/annotations.hpp"

namespace pbelint {

enum class TokenClass { Alphabet, Numeric, Special };

std::string_view token_class_name(TokenClass c);
/// Class of a single printable character; nullopt outside printable ASCII.
std::optional<TokenClass> char_class(char c);
/// The class shared by every character of `text`, if there is one.
std::optional<TokenClass> token_class_of(std::string_view text);

/// Segment texts and input positions justifying one positive verdict.
struct Witness {
  Property property = Property::SimilarLength;
  std::size_t segment_index = 0;
  std::vector<std::string> texts;
  /// Per sample. For exact_position this is the single chosen start position.
  std::vector<std::vector<std::size_t>> positions;
  /// exact_position only: whether the chosen starts or ends coincide.
  enum class Anchor { Start, End } anchor = Anchor::Start;
  /// token_type only.
  std::optional<TokenClass> token_class;
};

struct Detection {
  bool found = false;
  std::optional<Witness> witness;
};

struct AmbiguityReport {
  PropertyLabels labels;
  std::vector<Witness> witnesses;
  std::vector<std::string> diagnostics;
};

Detection detect_similar_length(const SegmentAlignment& a);
Detection detect_exact_position(const SegmentAlignment& a);
Detection detect_exact_match(const SegmentAlignment& a);
Detection detect_token_type(const SegmentAlignment& a);
Detection detect_repeating(const SegmentAlignment& a);

AmbiguityReport detect_all(const Example& e);

/// Re-checks a witness against the raw example, without the alignment.
bool verify_witness(const Example& e, const Witness& w);

class OracleScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleMaxInput = 64;
inline constexpr std::size_t kOracleMaxOutput = 32;

/// Reference labels by exhaustive enumeration of every per-sample choice of
/// occurrence positions. Refuses inputs above 64 or outputs above 32 chars.
PropertyLabels oracle_detect_all(const Example& e);

}  // namespace pbelint
