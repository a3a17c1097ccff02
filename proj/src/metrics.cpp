#include "pbelint/metrics.hpp"

#include <unordered_map>

#include "json.hpp"

namespace pbelint {

namespace {

double f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

PropertyScore score_confusion(const Confusion& c) {
  PropertyScore s;
  s.confusion = c;
  const std::size_t total = c.tp + c.fp + c.tn + c.fn;
  s.accuracy = total == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
  s.pf1 = f1(c.tp, c.fp, c.fn);
  // Negative class as the positive one: tn plays tp, fn plays fp.
  s.nf1 = f1(c.tn, c.fn, c.fp);
  return s;
}

Scores score(const std::vector<DatasetRecord>& gold, const std::vector<PredictionRecord>& pred) {
  std::unordered_map<std::string, const PropertyLabels*> by_id;
  for (const PredictionRecord& p : pred) {
    if (!by_id.emplace(p.id, &p.pred).second) throw MetricsError("duplicate prediction id \"" + p.id + "\"");
  }
  if (gold.empty()) throw MetricsError("nothing to score: gold set is empty");

  std::array<Confusion, 5> confusion{};
  std::size_t joined = 0;
  for (const DatasetRecord& g : gold) {
    if (!g.labels) throw MetricsError("gold record \"" + g.example.id + "\" has no labels");
    auto it = by_id.find(g.example.id);
    if (it == by_id.end()) throw MetricsError("missing prediction for id \"" + g.example.id + "\"");
    ++joined;
    for (Property p : kAllProperties) {
      const bool truth = (*g.labels)[p];
      const bool guess = (*it->second)[p];
      Confusion& c = confusion[static_cast<std::size_t>(p)];
      if (truth && guess) ++c.tp;
      else if (!truth && guess) ++c.fp;
      else if (!truth && !guess) ++c.tn;
      else ++c.fn;
    }
  }
  if (joined != by_id.size()) throw MetricsError("predictions reference ids absent from the gold set");

  Scores scores;
  for (std::size_t k = 0; k < scores.size(); ++k) scores[k] = score_confusion(confusion[k]);
  return scores;
}

std::string format_scores(const Scores& scores) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (Property p : kAllProperties) {
    const PropertyScore& s = scores[static_cast<std::size_t>(p)];
    nlohmann::ordered_json entry;
    entry["pf1"] = s.pf1;
    entry["nf1"] = s.nf1;
    entry["accuracy"] = s.accuracy;
    entry["confusion"] = {{"tp", s.confusion.tp}, {"fp", s.confusion.fp},
                          {"tn", s.confusion.tn}, {"fn", s.confusion.fn}};
    out[std::string(property_key(p))] = entry;
  }
  return out.dump();
}

}  // namespace pbelint
