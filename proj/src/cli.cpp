#include "pbelint/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbelint/annotations.hpp"
#include "pbelint/datagen.hpp"
#include "pbelint/metrics.hpp"
#include "pbelint/parallel.hpp"
#include "pbelint/synthesizer.hpp"

namespace pbelint::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Failures attributable to the user's files or flags (exit code 1).
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string quoted_list(const std::vector<std::string>& texts) {
  std::string out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i) out += ", ";
    out += '"' + texts[i] + '"';
  }
  return out;
}

std::string position_list(const std::vector<std::vector<std::size_t>>& positions) {
  std::string out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) out += ", ";
    out += "{";
    for (std::size_t k = 0; k < positions[i].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(positions[i][k]);
    }
    out += "}";
  }
  return out;
}

std::string explain(const Witness& w) {
  const std::string seg = "segment " + std::to_string(w.segment_index) + " (" + quoted_list(w.texts) + ")";
  switch (w.property) {
    case Property::SimilarLength:
      return seg + " has " + std::to_string(w.texts.front().size()) +
             " characters in every output. A program may cut a fixed-width slice of that many "
             "characters, or cut at a delimiter or pattern; the samples cannot tell which.";
    case Property::ExactPosition:
      return seg + (w.anchor == Witness::Anchor::Start ? " starts" : " ends") +
             " at the same input position in every sample (starts " + position_list(w.positions) +
             "). A constant position and a pattern-based position both fit; add a sample where "
             "the value moves.";
    case Property::ExactMatch:
      return seg + " is identical in every output and also appears in every input. It could "
             "be a constant string or a value copied out of the input.";
    case Property::TokenType:
      return seg + " is always " + std::string(token_class_name(*w.token_class)) +
             ". A program may extract that token class only, or everything at that place "
             "regardless of type; add a sample with a mixed value to disambiguate.";
    case Property::Repeating:
      return seg + " occurs at several places in every input (" + position_list(w.positions) +
             "). It is unclear which occurrence the value should come from.";
  }
  return seg;
}

void require_valid(const std::vector<DatasetRecord>& records, std::ostream& err) {
  bool ok = true;
  for (const DatasetRecord& rec : records) {
    for (const ValidationIssue& issue : validate_example(rec.example)) {
      if (issue.severity != ValidationIssue::Severity::Error) continue;
      err << "error: example \"" << rec.example.id << "\": " << issue.message << "\n";
      ok = false;
    }
  }
  if (!ok) throw UserError("invalid examples");
}

int cmd_lint(const std::string& path, const std::string& format, const std::string& predict_file,
             std::ostream& out, std::ostream& err) {
  const auto records = read_dataset(path);
  require_valid(records, err);

  std::vector<AmbiguityReport> reports(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    reports[i] = detect_all(records[i].example);
    for (const ValidationIssue& issue : validate_example(records[i].example)) {
      reports[i].diagnostics.push_back("warning: " + issue.message);
    }
  });

  for (std::size_t i = 0; i < records.size(); ++i) {
    if (format == "text") {
      out << render_report_text(records[i].example, reports[i]);
    } else {
      out << format_report(records[i].example.id, reports[i]) << "\n";
    }
  }

  if (!predict_file.empty()) {
    std::vector<PredictionRecord> preds;
    for (std::size_t i = 0; i < records.size(); ++i) preds.push_back({records[i].example.id, reports[i].labels});
    write_predictions(preds, predict_file);
  }
  return kOk;
}

std::vector<std::string> read_unseen(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

int cmd_synth(const std::string& path, const std::string& unseen_path, std::size_t max_size,
              std::ostream& out, std::ostream& err) {
  const auto records = read_dataset(path);
  bool ok = true;
  for (const DatasetRecord& rec : records) {
    for (const ValidationIssue& issue : validate_example(rec.example)) {
      // A single sample is enough to synthesize from.
      if (issue.severity != ValidationIssue::Severity::Error || rec.example.samples.size() < 2) continue;
      err << "error: example \"" << rec.example.id << "\": " << issue.message << "\n";
      ok = false;
    }
    if (rec.example.samples.empty()) {
      err << "error: example \"" << rec.example.id << "\" has no samples\n";
      ok = false;
    }
  }
  if (!ok) throw UserError("invalid examples");
  const auto unseen = read_unseen(unseen_path);

  SynthesisConfig cfg;
  cfg.max_size = max_size;
  std::vector<DivergenceReport> reports(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    reports[i] = divergence(synthesize(records[i].example, cfg), unseen);
  });

  for (std::size_t i = 0; i < records.size(); ++i) {
    const DivergenceReport& r = reports[i];
    std::vector<std::string> texts;
    for (const auto& p : r.consistent_programs) texts.push_back(dsl::print(p));

    ordered_json j;
    j["id"] = records[i].example.id;
    j["programs"] = ordered_json::array();
    for (std::size_t p = 0; p < texts.size(); ++p) {
      j["programs"].push_back({{"text", texts[p]}, {"size", r.consistent_programs[p].size()}});
    }
    j["divergence"] = ordered_json::object();
    j["intent_count"] = ordered_json::object();
    j["failed"] = ordered_json::object();
    for (const UnseenOutcome& u : r.per_input) {
      ordered_json groups = ordered_json::object();
      for (const auto& [output, idx] : u.outputs) {
        ordered_json progs = ordered_json::array();
        for (std::size_t p : idx) progs.push_back(texts[p]);
        groups[output] = std::move(progs);
      }
      j["divergence"][u.input] = std::move(groups);
      j["intent_count"][u.input] = u.intent_count();
      j["failed"][u.input] = u.failed.size();
    }
    out << j.dump() << "\n";
  }
  return kOk;
}

int cmd_gen(const std::string& property, const std::string& negative_of, long long count,
            std::uint64_t seed, std::size_t samples, const std::string& out_path, std::ostream& err) {
  GenConfig cfg;
  if (property == "negative") {
    cfg.negative = true;
    if (!negative_of.empty()) {
      auto p = property_from_key(negative_of);
      if (!p) throw UserError("unknown property \"" + negative_of + "\"");
      cfg.negative_of = p;
    }
  } else {
    auto p = property_from_key(property);
    if (!p) throw UserError("unknown property \"" + property + "\"");
    if (!negative_of.empty()) throw UserError("--negative-of requires --property negative");
    cfg.property = *p;
  }
  if (count < 1) throw UserError("--count must be >= 1");
  cfg.examples = static_cast<std::size_t>(count);
  cfg.seed = seed;
  cfg.samples_per_example = samples;
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw UserError(e.what());
  }

  auto [records, stats] = generate(cfg);
  write_dataset(records, out_path);
  err << format_stats(stats) << "\n";
  return kOk;
}

int cmd_eval(const std::string& gold_path, const std::string& pred_path, std::ostream& out) {
  const auto gold = read_dataset(gold_path);
  const auto pred = read_predictions(pred_path);
  out << format_scores(score(gold, pred)) << "\n";
  return kOk;
}

}  // namespace

std::string format_report(const std::string& id, const AmbiguityReport& report) {
  ordered_json j;
  j["id"] = id;
  ordered_json labels = ordered_json::object();
  for (Property p : kAllProperties) labels[std::string(property_key(p))] = report.labels[p];
  j["labels"] = labels;
  j["witnesses"] = ordered_json::array();
  for (const Witness& w : report.witnesses) {
    ordered_json wj;
    wj["property"] = property_key(w.property);
    wj["segment_index"] = w.segment_index;
    wj["texts"] = w.texts;
    wj["positions"] = w.positions;
    if (w.property == Property::ExactPosition) {
      wj["anchor"] = w.anchor == Witness::Anchor::Start ? "start" : "end";
    }
    if (w.token_class) wj["token_class"] = token_class_name(*w.token_class);
    j["witnesses"].push_back(std::move(wj));
  }
  j["diagnostics"] = report.diagnostics;
  return j.dump();
}

std::string render_report_text(const Example& e, const AmbiguityReport& report) {
  std::ostringstream os;
  os << "example " << e.id << ": ";
  if (report.witnesses.empty()) {
    os << "no ambiguity detected\n";
  } else {
    os << report.witnesses.size() << (report.witnesses.size() == 1 ? " ambiguity\n" : " ambiguities\n");
  }
  for (const Witness& w : report.witnesses) {
    os << "  " << property_key(w.property) << ": " << explain(w) << "\n";
  }
  for (const std::string& d : report.diagnostics) os << "  note: " << d << "\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect multi-intent ambiguity in input/output examples", "pbelint"};
  app.require_subcommand(1);

  std::string lint_path, format = "json", predict_file;
  auto* lint = app.add_subcommand("lint", "Report ambiguity properties of each example");
  lint->add_option("file", lint_path, "Dataset JSONL")->required();
  lint->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  lint->add_option("--predict-file", predict_file, "Also write verdicts as a prediction file");

  std::string synth_path, unseen_path;
  std::size_t max_size = SynthesisConfig{}.max_size;
  auto* synth = app.add_subcommand("synth", "Enumerate consistent programs and their outputs on unseen inputs");
  synth->add_option("file", synth_path, "Dataset JSONL")->required();
  synth->add_option("--unseen", unseen_path, "Unseen inputs, one per line")->required();
  synth->add_option("--max-size", max_size, "Program size bound (AST nodes)")->check(CLI::PositiveNumber);

  std::string property, negative_of, out_path;
  long long count = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 3;
  auto* gen = app.add_subcommand("gen", "Generate an oracle-labelled dataset");
  gen->add_option("--property", property, "Target property, or 'negative'")->required();
  gen->add_option("--negative-of", negative_of, "With 'negative': only require this property to be false");
  gen->add_option("--count", count, "Number of examples")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--samples", samples, "Samples per example")->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "Output JSONL path")->required();

  std::string gold_path, pred_path;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold labels");
  eval->add_option("--gold", gold_path, "Gold dataset JSONL")->required();
  eval->add_option("--pred", pred_path, "Prediction JSONL")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUserError;
  }

  try {
    if (*lint) return cmd_lint(lint_path, format, predict_file, out, err);
    if (*synth) return cmd_synth(synth_path, unseen_path, max_size, out, err);
    if (*gen) return cmd_gen(property, negative_of, count, seed, samples, out_path, err);
    if (*eval) return cmd_eval(gold_path, pred_path, out);
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const MetricsError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace pbelint::cli
