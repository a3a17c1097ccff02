#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbelint {

/// One input/output pair.
struct Sample {
  std::string input;
  std::string output;

  bool operator==(const Sample&) const = default;
};

/// A group of samples that together express one transformation.
struct Example {
  std::string id;
  std::vector<Sample> samples;

  bool operator==(const Example&) const = default;
};

enum class Property { SimilarLength, ExactPosition, ExactMatch, TokenType, Repeating };

inline constexpr std::array<Property, 5> kAllProperties = {
    Property::SimilarLength, Property::ExactPosition, Property::ExactMatch,
    Property::TokenType, Property::Repeating};

/// JSON key of a property, e.g. "similar_length".
std::string_view property_key(Property p);
/// Inverse of property_key; nullopt for unknown names.
std::optional<Property> property_from_key(std::string_view key);

struct PropertyLabels {
  bool similar_length = false;
  bool exact_position = false;
  bool exact_match = false;
  bool token_type = false;
  bool repeating = false;

  bool& operator[](Property p);
  bool operator[](Property p) const;
  bool any() const;

  bool operator==(const PropertyLabels&) const = default;
};

struct DatasetRecord {
  Example example;
  std::optional<PropertyLabels> labels;

  bool operator==(const DatasetRecord&) const = default;
};

struct PredictionRecord {
  std::string id;
  PropertyLabels pred;

  bool operator==(const PredictionRecord&) const = default;
};

struct ValidationIssue {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
};

/// Thrown for malformed files. `line` is 1-based, 0 when not line specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Printable ASCII: letters, digits, specials and space.
bool is_printable(char c);

/// Every violated invariant of `e`. Characters outside printable ASCII are
/// reported as warnings; everything else is an error.
std::vector<ValidationIssue> validate_example(const Example& e);

/// True when none of the issues is an error.
bool only_warnings(const std::vector<ValidationIssue>& issues);

std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path);
std::vector<DatasetRecord> parse_dataset(std::string_view text);
void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& path);
/// Serialized form of one record without the trailing newline.
std::string format_record(const DatasetRecord& record);

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);
std::vector<PredictionRecord> parse_predictions(std::string_view text);
void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path);
std::string format_prediction(const PredictionRecord& record);

}  // namespace pbelint
