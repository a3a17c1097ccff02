#include "pbelint/annotations.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pbelint {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 5> kKeys = {"similar_length", "exact_position",
                                                   "exact_match", "token_type", "repeating"};

ordered_json labels_to_json(const PropertyLabels& labels) {
  ordered_json j = ordered_json::object();
  for (Property p : kAllProperties) j[std::string(property_key(p))] = labels[p];
  return j;
}

PropertyLabels labels_from_json(const ordered_json& j, std::size_t line) {
  if (!j.is_object()) throw ParseError(line, "labels must be an object or null");
  PropertyLabels labels;
  for (Property p : kAllProperties) {
    auto it = j.find(std::string(property_key(p)));
    if (it == j.end() || !it->is_boolean()) {
      throw ParseError(line, "missing or non-boolean label \"" + std::string(property_key(p)) + "\"");
    }
    labels[p] = it->get<bool>();
  }
  return labels;
}

std::vector<std::string> string_array(const ordered_json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(line, std::string("missing \"") + key + "\"");
  if (!it->is_array()) throw ParseError(line, std::string("\"") + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError(line, std::string("\"") + key + "\" must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

// Calls fn(line_number, line) for every non-blank line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(line_no, line);
  }
}

ordered_json parse_object(std::string_view line, std::size_t line_no) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_no, e.what());
  }
  if (!j.is_object()) throw ParseError(line_no, "record must be a JSON object");
  return j;
}

std::string read_id(const ordered_json& j, std::size_t line_no) {
  auto it = j.find("id");
  if (it == j.end() || !it->is_string()) throw ParseError(line_no, "missing string \"id\"");
  return it->get<std::string>();
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string_view property_key(Property p) { return kKeys[static_cast<std::size_t>(p)]; }

std::optional<Property> property_from_key(std::string_view key) {
  for (Property p : kAllProperties) {
    if (property_key(p) == key) return p;
  }
  return std::nullopt;
}

bool& PropertyLabels::operator[](Property p) {
  switch (p) {
    case Property::SimilarLength: return similar_length;
    case Property::ExactPosition: return exact_position;
    case Property::ExactMatch: return exact_match;
    case Property::TokenType: return token_type;
    case Property::Repeating: return repeating;
  }
  throw std::logic_error("bad property");
}

bool PropertyLabels::operator[](Property p) const {
  return const_cast<PropertyLabels&>(*this)[p];
}

bool PropertyLabels::any() const {
  return similar_length || exact_position || exact_match || token_type || repeating;
}

bool is_printable(char c) { return c >= 0x20 && c <= 0x7e; }

std::vector<ValidationIssue> validate_example(const Example& e) {
  using S = ValidationIssue::Severity;
  std::vector<ValidationIssue> issues;
  if (e.id.empty()) issues.push_back({S::Error, "empty id"});
  if (e.samples.size() < 2) issues.push_back({S::Error, "need at least 2 samples"});
  for (std::size_t i = 0; i < e.samples.size(); ++i) {
    const Sample& s = e.samples[i];
    const std::string where = " in sample " + std::to_string(i);
    if (s.input.empty()) issues.push_back({S::Error, "empty input" + where});
    if (s.output.empty()) issues.push_back({S::Error, "empty output" + where});
    for (const std::string* text : {&s.input, &s.output}) {
      for (char c : *text) {
        if (!is_printable(c)) {
          issues.push_back({S::Warning, "non-printable character" + where});
          break;
        }
      }
    }
  }
  return issues;
}

bool only_warnings(const std::vector<ValidationIssue>& issues) {
  for (const auto& issue : issues) {
    if (issue.severity == ValidationIssue::Severity::Error) return false;
  }
  return true;
}

std::vector<DatasetRecord> parse_dataset(std::string_view text) {
  std::vector<DatasetRecord> records;
  std::set<std::string> seen;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    ordered_json j = parse_object(line, line_no);
    DatasetRecord rec;
    rec.example.id = read_id(j, line_no);
    auto inputs = string_array(j, "inputs", line_no);
    auto outputs = string_array(j, "outputs", line_no);
    if (inputs.size() != outputs.size()) {
      throw ParseError(line_no, "\"inputs\" and \"outputs\" differ in length");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      rec.example.samples.push_back({std::move(inputs[i]), std::move(outputs[i])});
    }
    if (auto it = j.find("labels"); it != j.end() && !it->is_null()) {
      rec.labels = labels_from_json(*it, line_no);
    }
    if (!seen.insert(rec.example.id).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate id \"" +
                            rec.example.id + "\"");
    }
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_file(path));
}

std::string format_record(const DatasetRecord& record) {
  ordered_json j;
  j["id"] = record.example.id;
  j["inputs"] = ordered_json::array();
  j["outputs"] = ordered_json::array();
  for (const Sample& s : record.example.samples) {
    j["inputs"].push_back(s.input);
    j["outputs"].push_back(s.output);
  }
  j["labels"] = record.labels ? labels_to_json(*record.labels) : ordered_json(nullptr);
  return j.dump();
}

void write_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& path) {
  std::set<std::string> seen;
  std::string text;
  for (const DatasetRecord& rec : records) {
    auto issues = validate_example(rec.example);
    if (!issues.empty()) {
      throw ValidationError("record \"" + rec.example.id + "\": " + issues.front().message);
    }
    if (!seen.insert(rec.example.id).second) {
      throw ValidationError("duplicate id \"" + rec.example.id + "\"");
    }
    text += format_record(rec);
    text += '\n';
  }
  write_file(path, text);
}

std::vector<PredictionRecord> parse_predictions(std::string_view text) {
  std::vector<PredictionRecord> records;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    ordered_json j = parse_object(line, line_no);
    PredictionRecord rec;
    rec.id = read_id(j, line_no);
    auto it = j.find("pred");
    if (it == j.end()) throw ParseError(line_no, "missing \"pred\"");
    rec.pred = labels_from_json(*it, line_no);
    records.push_back(std::move(rec));
  });
  return records;
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  return parse_predictions(read_file(path));
}

std::string format_prediction(const PredictionRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["pred"] = labels_to_json(record.pred);
  return j.dump();
}

void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path) {
  std::string text;
  for (const auto& rec : records) {
    text += format_prediction(rec);
    text += '\n';
  }
  write_file(path, text);
}

}  // namespace pbelint
