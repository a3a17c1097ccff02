#include "pbelint/synthesizer.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

#include "pbelint/detectors.hpp"

namespace pbelint {

namespace {

using dsl::Atom;
using dsl::Position;

// Positions that resolve to the same index on every training input.
struct PositionClass {
  std::vector<std::size_t> values;
  std::vector<Position> members;
};

// Atoms that produce the same output on every training input.
struct AtomClass {
  enum class Kind { SubStr, Split } kind = Kind::SubStr;
  std::vector<std::string> outputs;
  std::size_t begin_class = 0;
  std::size_t end_class = 0;
  dsl::CaseType case_type = dsl::CaseType::None;
  dsl::Split split;
  std::size_t size = 1;
};

// One Concat slot of a solution: an atom class, or a ConstStr literal.
struct Part {
  std::optional<std::size_t> atom_class;
  std::string literal;
};

class Search {
 public:
  Search(const Example& e, const SynthesisConfig& cfg) : e_(e), cfg_(cfg) {
    build_position_classes();
    build_atom_classes();
  }

  std::vector<dsl::Program> run() {
    std::vector<std::size_t> offsets(e_.samples.size(), 0);
    std::vector<Part> parts;
    dfs(offsets, parts, 0);

    std::set<std::string> seen;
    std::vector<Ranked> ranked;
    ranked.reserve(expanded_);
    for (const auto& solution : solutions_) expand(solution, ranked, seen);
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      return std::tie(a.size, a.consts, a.text) < std::tie(b.size, b.consts, b.text);
    });
    std::vector<dsl::Program> programs;
    programs.reserve(ranked.size());
    for (Ranked& r : ranked) programs.push_back(std::move(r.program));
    return programs;
  }

 private:
  void build_position_classes() {
    std::size_t longest = 0;
    for (const Sample& s : e_.samples) longest = std::max(longest, s.input.size());
    const int range = cfg_.cpos_range.value_or(static_cast<int>(longest));

    std::vector<Position> candidates;
    for (int k = -range; k <= range; ++k) candidates.emplace_back(dsl::CPos{k});
    for (dsl::RegexAtom atom : dsl::kAllRegexAtoms) {
      for (dsl::Side side : {dsl::Side::Left, dsl::Side::Right}) {
        for (int occ = 0; occ < cfg_.occurrence_max; ++occ) {
          candidates.emplace_back(dsl::RelPos{atom, side, occ});
        }
      }
    }

    std::map<std::vector<std::size_t>, std::size_t> index;
    for (const Position& p : candidates) {
      std::vector<std::size_t> values;
      for (const Sample& s : e_.samples) {
        auto r = dsl::resolve_position(p, s.input);
        if (!r) break;
        values.push_back(*r);
      }
      if (values.size() != e_.samples.size()) continue;
      auto [it, inserted] = index.emplace(values, position_classes_.size());
      if (inserted) position_classes_.push_back({values, {}});
      position_classes_[it->second].members.push_back(p);
    }
  }

  void add_atom_class(AtomClass c) {
    by_first_output_[c.outputs.front()].push_back(atom_classes_.size());
    atom_classes_.push_back(std::move(c));
  }

  void build_atom_classes() {
    const std::size_t l = e_.samples.size();
    for (std::size_t a = 0; a < position_classes_.size(); ++a) {
      for (std::size_t b = 0; b < position_classes_.size(); ++b) {
        const auto& va = position_classes_[a].values;
        const auto& vb = position_classes_[b].values;
        bool nonempty = true;
        for (std::size_t i = 0; i < l; ++i) nonempty = nonempty && va[i] < vb[i];
        if (!nonempty) continue;
        for (auto c : {dsl::CaseType::None, dsl::CaseType::Upper, dsl::CaseType::Lower}) {
          AtomClass cls;
          cls.kind = AtomClass::Kind::SubStr;
          cls.begin_class = a;
          cls.end_class = b;
          cls.case_type = c;
          cls.size = 3;
          for (std::size_t i = 0; i < l; ++i) {
            cls.outputs.push_back(dsl::apply_case(e_.samples[i].input.substr(va[i], vb[i] - va[i]), c));
          }
          add_atom_class(std::move(cls));
        }
      }
    }

    const std::string seps = cfg_.separators.value_or(default_separators(e_));
    for (char sep : seps) {
      for (int index = 0;; ++index) {
        AtomClass cls;
        cls.kind = AtomClass::Kind::Split;
        cls.split = dsl::Split{sep, index};
        for (const Sample& s : e_.samples) {
          auto field = dsl::split_field(s.input, sep, index);
          if (!field) break;
          cls.outputs.push_back(*field);
        }
        if (cls.outputs.size() != l) break;
        add_atom_class(std::move(cls));
      }
    }
  }

  bool matches_at(const std::vector<std::string>& outs, const std::vector<std::size_t>& offsets) const {
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (offsets[i] + outs[i].size() > e_.samples[i].output.size()) return false;
      if (e_.samples[i].output.compare(offsets[i], outs[i].size(), outs[i]) != 0) return false;
    }
    return true;
  }

  static std::size_t total_size(std::size_t atoms_size, std::size_t part_count) {
    return atoms_size + (part_count >= 2 ? 1 : 0);
  }

  void dfs(std::vector<std::size_t>& offsets, std::vector<Part>& parts, std::size_t atoms_size) {
    const std::size_t l = e_.samples.size();
    bool done = true;
    for (std::size_t i = 0; i < l; ++i) done = done && offsets[i] == e_.samples[i].output.size();
    if (done && !parts.empty()) record(parts);
    if (parts.size() >= std::min(cfg_.max_concat, dsl::kMaxConcatParts)) return;

    const std::string& out0 = e_.samples[0].output;
    auto try_part = [&](Part part, const std::vector<std::string>& outs, std::size_t size) {
      if (total_size(atoms_size + size, parts.size() + 1) > cfg_.max_size) return;
      std::vector<std::size_t> saved = offsets;
      for (std::size_t i = 0; i < l; ++i) offsets[i] += outs[i].size();
      parts.push_back(std::move(part));
      dfs(offsets, parts, atoms_size + size);
      parts.pop_back();
      offsets = std::move(saved);
    };

    for (std::size_t len = 0; offsets[0] + len <= out0.size(); ++len) {
      const std::string piece = out0.substr(offsets[0], len);
      if (auto it = by_first_output_.find(piece); it != by_first_output_.end()) {
        for (std::size_t id : it->second) {
          if (matches_at(atom_classes_[id].outputs, offsets)) {
            try_part(Part{id, {}}, atom_classes_[id].outputs, atom_classes_[id].size);
          }
        }
      }
      if (len == 0) continue;
      std::vector<std::string> literal(l, piece);
      if (matches_at(literal, offsets)) try_part(Part{std::nullopt, piece}, literal, 1);
    }
  }

  std::size_t member_count(const Part& part) const {
    if (!part.atom_class) return 1;
    const AtomClass& c = atom_classes_[*part.atom_class];
    if (c.kind == AtomClass::Kind::Split) return 1;
    return position_classes_[c.begin_class].members.size() * position_classes_[c.end_class].members.size();
  }

  void record(const std::vector<Part>& parts) {
    std::size_t count = 1;
    for (const Part& p : parts) count *= member_count(p);
    expanded_ += count;
    if (expanded_ > cfg_.max_programs) {
      throw SynthesisLimitError("more than " + std::to_string(cfg_.max_programs) +
                                " consistent programs for example \"" + e_.id + "\"");
    }
    solutions_.push_back(parts);
  }

  std::vector<Atom> members(const Part& part) const {
    if (!part.atom_class) return {dsl::ConstStr{part.literal}};
    const AtomClass& c = atom_classes_[*part.atom_class];
    if (c.kind == AtomClass::Kind::Split) return {c.split};
    std::vector<Atom> out;
    for (const Position& y1 : position_classes_[c.begin_class].members) {
      for (const Position& y2 : position_classes_[c.end_class].members) {
        out.emplace_back(dsl::SubStr{y1, y2, c.case_type});
      }
    }
    return out;
  }

  struct Ranked {
    std::size_t size;
    std::size_t consts;
    std::string text;
    dsl::Program program;
  };

  void expand(const std::vector<Part>& solution, std::vector<Ranked>& ranked,
              std::set<std::string>& seen) const {
    std::vector<std::vector<Atom>> choices;
    for (const Part& p : solution) choices.push_back(members(p));

    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      std::optional<dsl::Program> prog;
      if (choices.size() == 1) {
        prog.emplace(choices[0][pick[0]]);
      } else {
        dsl::Concat concat;
        for (std::size_t k = 0; k < choices.size(); ++k) concat.parts.push_back(choices[k][pick[k]]);
        prog.emplace(dsl::Expr(std::move(concat)));
      }
      std::string text = dsl::print(*prog);
      if (seen.insert(text).second) {
        const std::size_t size = prog->size(), consts = const_count(*prog);
        ranked.push_back({size, consts, std::move(text), std::move(*prog)});
      }

      std::size_t k = 0;
      for (; k < choices.size(); ++k) {
        if (++pick[k] < choices[k].size()) break;
        pick[k] = 0;
      }
      if (k == choices.size()) break;
    }
  }

  const Example& e_;
  const SynthesisConfig& cfg_;
  std::vector<PositionClass> position_classes_;
  std::vector<AtomClass> atom_classes_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_output_;
  std::vector<std::vector<Part>> solutions_;
  std::size_t expanded_ = 0;
};

}  // namespace

std::string default_separators(const Example& e) {
  std::string seps;
  for (char c = 0x20; c <= 0x7e; ++c) {
    if (char_class(c) != TokenClass::Special) continue;
    bool everywhere = !e.samples.empty() && std::all_of(e.samples.begin(), e.samples.end(), [&](const Sample& s) {
      return s.input.find(c) != std::string::npos;
    });
    if (everywhere) seps += c;
  }
  return seps;
}

std::size_t const_count(const dsl::Program& p) {
  if (std::holds_alternative<dsl::ConstStr>(p.root())) return 1;
  if (const auto* concat = std::get_if<dsl::Concat>(&p.root())) {
    return static_cast<std::size_t>(std::count_if(concat->parts.begin(), concat->parts.end(), [](const Atom& a) {
      return std::holds_alternative<dsl::ConstStr>(a);
    }));
  }
  return 0;
}

bool rank_less(const dsl::Program& a, const dsl::Program& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const std::size_t ca = const_count(a), cb = const_count(b);
  if (ca != cb) return ca < cb;
  return dsl::print(a) < dsl::print(b);
}

std::vector<dsl::Program> synthesize(const Example& e, const SynthesisConfig& cfg) {
  if (e.samples.empty()) return {};
  for (const Sample& s : e.samples) {
    if (s.output.empty()) return {};
  }
  return Search(e, cfg).run();
}

bool check_consistency(const dsl::Program& prog, const Example& e) {
  return std::all_of(e.samples.begin(), e.samples.end(), [&](const Sample& s) {
    auto out = dsl::eval(prog, s.input);
    return out && *out == s.output;
  });
}

DivergenceReport divergence(std::vector<dsl::Program> programs, const std::vector<std::string>& unseen) {
  DivergenceReport report;
  report.consistent_programs = std::move(programs);
  for (const std::string& input : unseen) {
    UnseenOutcome outcome;
    outcome.input = input;
    for (std::size_t p = 0; p < report.consistent_programs.size(); ++p) {
      auto out = dsl::eval(report.consistent_programs[p], input);
      if (out) {
        outcome.outputs[*out].push_back(p);
      } else {
        outcome.failed.push_back(p);
      }
    }
    report.per_input.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace pbelint
