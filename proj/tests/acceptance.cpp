// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pbelint/cli.hpp"
#include "pbelint/datagen.hpp"
#include "pbelint/detectors.hpp"
#include "pbelint/metrics.hpp"
#include "pbelint/synthesizer.hpp"
#include "random_examples.hpp"

using namespace pbelint;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pbelint_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "pbelint");
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

const json* witness(const json& report, const std::string& property) {
  for (const auto& w : report["witnesses"]) {
    if (w["property"] == property) return &w;
  }
  return nullptr;
}

Check reference_rows() {
  Check c;
  const fs::path path = workdir() / "rows.jsonl";
  std::ofstream(path)
      << R"({"id":"row1","inputs":["AB_CD_123","BDG_SJKL_535"],"outputs":["CD123","SJKL535"],"labels":null}
{"id":"row2","inputs":["Mohan Kumar","Merve Williams"],"outputs":["Kumar","Williams"],"labels":null}
{"id":"row3","inputs":["19-11-1995","10-11-2012"],"outputs":["19/11","10/11"],"labels":null}
{"id":"row4","inputs":["A1B-123-A2BD","1A-53-GGAK"],"outputs":["123BD","53AK"],"labels":null}
{"id":"row5","inputs":["K 1 TFR 1","Y 2 ECN 2"],"outputs":["1","2"],"labels":null}
)";
  std::string out;
  c.expect(cli({"lint", path.string()}, &out) == 0, "lint exit code");
  const auto reports = json_lines(out);
  c.expect(reports.size() == 5, "expected five reports");
  if (!c.ok) return c;

  struct Row {
    std::string property;
    json texts;
    json positions;  // null when not checked
  };
  const Row rows[] = {
      {"similar_length", {"123", "535"}, nullptr},
      {"exact_position", {"Kumar", "Williams"}, json::parse("[[6],[6]]")},
      {"exact_match", {"11", "11"}, nullptr},
      {"token_type", {"123", "53"}, nullptr},
      {"repeating", {"1", "2"}, json::parse("[[2,8],[2,8]]")},
  };
  for (int i = 0; i < 5; ++i) {
    const auto& rep = reports[i];
    c.expect(rep["labels"][rows[i].property] == true, "row " + std::to_string(i + 1) + " not flagged");
    const json* w = witness(rep, rows[i].property);
    c.expect(w != nullptr, "row " + std::to_string(i + 1) + " missing witness");
    if (!w) continue;
    c.expect((*w)["texts"] == rows[i].texts, "row " + std::to_string(i + 1) + " witness texts " + (*w)["texts"].dump());
    if (!rows[i].positions.is_null()) {
      c.expect((*w)["positions"] == rows[i].positions, "row " + std::to_string(i + 1) + " positions " + (*w)["positions"].dump());
    }
  }
  return c;
}

Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(20240501);
  for (int i = 0; i < 500; ++i) {
    const Example e = testing::random_example(rng, 3, 20, 10);
    if (!(detect_all(e).labels == oracle_detect_all(e))) {
      c.expect(false, "disagreement on example " + std::to_string(i) + ": " + format_record({e, std::nullopt}));
    }
  }
  return c;
}

Check generator_soundness() {
  Check c;
  for (Property p : kAllProperties) {
    GenConfig cfg;
    cfg.property = p;
    cfg.examples = 1000;
    cfg.seed = 1234;
    auto [records, stats] = generate(cfg);
    c.expect(records.size() == 1000, "wrong record count");
    for (const auto& r : records) {
      c.expect(r.labels && (*r.labels)[p], std::string(property_key(p)) + " record without target label: " + r.example.id);
      c.expect(oracle_detect_all(r.example) == *r.labels, "stored labels differ from oracle: " + r.example.id);
      c.expect(!r.labels->exact_match || r.labels->similar_length, "implication broken: " + r.example.id);
    }
  }
  return c;
}

std::set<std::string> outputs_on(const Example& e, const std::string& unseen) {
  SynthesisConfig cfg;
  cfg.max_size = 7;
  const auto report = divergence(synthesize(e, cfg), {unseen});
  std::set<std::string> outs;
  for (const auto& [o, idx] : report.per_input[0].outputs) outs.insert(o);
  return outs;
}

Check case_study() {
  Check c;
  Example ex1{"ex1", {{"ABCD_12", "12"}, {"BDJ_535", "535"}, {"GE_443", "443"}}};
  auto outs = outputs_on(ex1, "B_DS2345");
  c.expect(outs.count("2345") && outs.count("DS2345"), "example 1 lacks both intents");
  ex1.samples.push_back({"AK_B121", "B121"});
  outs = outputs_on(ex1, "B_DS2345");
  c.expect(outs == std::set<std::string>{"DS2345"}, "example 1 not resolved by the fourth pair");

  Example ex6{"ex6", {{"07-07-1999", "07-99"}, {"02-02-1955", "02-55"}, {"10-10-2002", "10-02"}}};
  outs = outputs_on(ex6, "09-07-1995");
  c.expect(outs.count("09-95") && outs.count("07-95"), "example 6 lacks both intents");
  ex6.samples.push_back({"10-11-2002", "11-02"});
  outs = outputs_on(ex6, "09-07-1995");
  c.expect(outs == std::set<std::string>{"07-95"}, "example 6 not resolved by the fourth pair");
  return c;
}

Check pipeline() {
  Check c;
  const fs::path gold = workdir() / "gold.jsonl";
  std::ofstream merged(gold);
  std::vector<std::pair<std::string, std::string>> targets;
  for (Property p : kAllProperties) targets.emplace_back(std::string(property_key(p)), "");
  targets.emplace_back("negative", "");
  for (Property p : kAllProperties) targets.emplace_back("negative", std::string(property_key(p)));
  int part = 0;
  for (const auto& [property, negative_of] : targets) {
    const fs::path piece = workdir() / ("part" + std::to_string(part++) + ".jsonl");
    std::vector<std::string> args{"gen", "--property", property, "--count", "200", "--seed", "77", "--out", piece.string()};
    if (!negative_of.empty()) {
      args.push_back("--negative-of");
      args.push_back(negative_of);
    }
    c.expect(cli(args) == 0, "gen failed for " + property + " " + negative_of);
    // Ids repeat across negative targets; keep them unique in the merged file.
    for (auto rec : read_dataset(piece)) {
      rec.example.id = std::to_string(part) + ":" + rec.example.id;
      merged << format_record(rec) << "\n";
    }
  }
  merged.close();

  const fs::path pred = workdir() / "pred.jsonl";
  c.expect(cli({"lint", gold.string(), "--predict-file", pred.string()}) == 0, "lint failed");
  std::string out;
  c.expect(cli({"eval", "--gold", gold.string(), "--pred", pred.string()}, &out) == 0, "eval failed");
  if (!c.ok) return c;
  const json scores = json::parse(out);
  for (Property p : kAllProperties) {
    const auto& s = scores[std::string(property_key(p))];
    for (const char* m : {"pf1", "nf1", "accuracy"}) {
      c.expect(s[m].get<double>() == 1.0, std::string(property_key(p)) + " " + m + " = " + s[m].dump());
    }
  }
  return c;
}

Check metrics_example() {
  Check c;
  auto labels = [](bool v) {
    PropertyLabels l;
    for (Property p : kAllProperties) l[p] = v;
    return l;
  };
  const bool gold_bits[] = {true, false, true, false};
  const bool pred_bits[] = {true, false, false, false};
  std::vector<DatasetRecord> gold;
  std::vector<PredictionRecord> pred;
  for (int i = 0; i < 4; ++i) {
    const std::string id = "m" + std::to_string(i);
    gold.push_back({Example{id, {{"a", "a"}, {"b", "b"}}}, labels(gold_bits[i])});
    pred.push_back({id, labels(pred_bits[i])});
  }
  for (const auto& s : score(gold, pred)) {
    c.expect(std::abs(s.accuracy - 0.75) <= 1e-9, "accuracy " + std::to_string(s.accuracy));
    c.expect(std::abs(s.pf1 - 0.667) <= 0.001, "pf1 " + std::to_string(s.pf1));
    c.expect(std::abs(s.nf1 - 0.8) <= 0.001, "nf1 " + std::to_string(s.nf1));
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Check()> run;
  };
  const Criterion criteria[] = {
      {"reference rows lint", 1.0, reference_rows},
      {"oracle equivalence (500 examples)", 60.0, oracle_equivalence},
      {"generator soundness (1000 per property)", 120.0, generator_soundness},
      {"case-study divergence", 300.0, case_study},
      {"pipeline closure gen/lint/eval", 120.0, pipeline},
      {"metrics hand example", 1.0, metrics_example},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = crit.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.ok && secs > crit.budget_s) c.expect(false, "over time budget");
    failures += !c.ok;
    std::cout << (c.ok ? "PASS " : "FAIL ") << crit.name << " (" << secs << " s, budget " << crit.budget_s << " s)";
    if (!c.ok) std::cout << ": " << c.why;
    std::cout << std::endl;
  }
  return failures ? 1 : 0;
}
