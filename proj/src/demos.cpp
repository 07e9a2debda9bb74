#include "safegen/demos.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "safegen/set_spec.hpp"

namespace safegen {

namespace {

const std::vector<std::pair<std::string, std::string>>& builtins() {
  static const std::vector<std::pair<std::string, std::string>> table{
      {"km_demo", R"scn({
  "version": 1,
  "name": "km_demo",
  "game": "LG",
  "collections": {"true": {"list": ["I", "O", "E", "Q(-1)", "Y(0)"]}},
  "K": "O",
  "adversary": {"kind": "positive"},
  "learner": {"kind": "km"},
  "horizon": 300,
  "window": 50
}
)scn"},
      {"sg_inf", R"scn({
  "version": 1,
  "name": "sg_inf",
  "game": "SGInf",
  "collections": {"true": {"list": ["I", "O", "Q(-1)"]}, "harm": {"list": ["E", "Y(0)"]}},
  "K": "O",
  "H": "E",
  "adversary": {"kind": "fair"},
  "learner": {"kind": "sg_inf", "promise": true},
  "horizon": 300,
  "window": 50
}
)scn"},
      {"naive_identify", R"scn({
  "version": 1,
  "name": "naive_identify",
  "game": "LI",
  "collections": {"true": {"list": ["I", "O"]}},
  "K": "O",
  "adversary": {"kind": "positive"},
  "learner": {"kind": "naive_identify"},
  "horizon": 300,
  "window": 50
}
)scn"},
      {"reduction", R"scn({
  "version": 1,
  "name": "reduction",
  "game": "LI",
  "collections": {"true": {"list": ["I", "O"]}},
  "K": "O",
  "adversary": {"kind": "positive"},
  "learner": {"kind": "identify_from_sg", "subroutine": "reference"},
  "horizon": 300,
  "window": 50
}
)scn"},
      {"thm3_1_eager", R"scn({
  "version": 1,
  "name": "thm3_1_eager",
  "game": "SI",
  "collections": {"family": "id_impossibility", "prefix_len": 2000},
  "K": "adaptive",
  "H": "adaptive",
  "adversary": {"kind": "phased_id"},
  "learner": {"kind": "eager_si"},
  "horizon": 2000,
  "window": 50
}
)scn"},
      {"thm3_1_stubborn", R"scn({
  "version": 1,
  "name": "thm3_1_stubborn",
  "game": "SI",
  "collections": {"family": "id_impossibility", "prefix_len": 2000},
  "K": "adaptive",
  "H": "adaptive",
  "adversary": {"kind": "phased_id"},
  "learner": {"kind": "stubborn_si"},
  "horizon": 2000,
  "window": 50
}
)scn"},
      {"thm4_2", R"scn({
  "version": 1,
  "name": "thm4_2",
  "game": "SG",
  "collections": {"family": "pstar", "prefix_len": 2000},
  "K": "adaptive",
  "H": "adaptive",
  "adversary": {"kind": "diagonal"},
  "learner": {"kind": "km"},
  "horizon": 2000,
  "window": 50
}
)scn"},
      {"telltale_bottom", R"scn({
  "version": 1,
  "name": "telltale_bottom",
  "game": "SG",
  "collections": {
    "true": {"list": ["I", "O", "E"], "telltales": {"1": [0, 1], "2": [1], "3": [0]}},
    "harm": {"list": ["I", "E"], "telltales": {"1": [0, 1], "2": [0]}}
  },
  "K": "E",
  "H": "I",
  "adversary": {"kind": "fair"},
  "learner": {"kind": "telltale_oracle"},
  "horizon": 200,
  "window": 50
}
)scn"},
      {"conservative_fails", R"scn({
  "version": 1,
  "name": "conservative_fails",
  "game": "SG",
  "collections": {"true": {"list": ["I", "E"]}, "harm": {"list": ["E", "I"]}},
  "K": "I",
  "H": "E",
  "adversary": {"kind": "fair"},
  "learner": {"kind": "sg_inf", "promise": false},
  "horizon": 100,
  "window": 20
}
)scn"},
  };
  return table;
}

std::string note(const StepRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.notes) {
    if (k == key) return v;
  }
  return {};
}

DemoReport demo_thm3_1() {
  std::ostringstream os;
  const Game eager = run_scenario(builtin_scenario("thm3_1_eager"));
  const Game stubborn = run_scenario(builtin_scenario("thm3_1_stubborn"));
  const auto& adv = dynamic_cast<const PhasedIdAdversary&>(*eager.adversary);

  bool breaks = true;
  for (std::size_t l = 1; l <= adv.injections().size(); ++l) {
    const Element x = adv.injections()[l - 1];
    const auto a = static_cast<std::int64_t>(l);
    breaks = breaks && x == -a && !lang::y_family(a - 1).member(x) && lang::y_family(a).member(x) &&
             set_union(lang::negatives(), lang::even_nonnegative()).member(x);
  }
  const auto& ev = eager.result.verdict;
  const auto& sv = stubborn.result.verdict;
  const bool stubborn_pair = stubborn.result.final_pair.k == lang::integers() &&
                             stubborn.result.final_pair.h == lang::y_family(0);

  os << "thm3-1: phased adversary vs safe identifiers, horizon " << ev.horizon << "\n";
  os << "  eager learner:    phase transitions " << ev.phase_transitions << ", injections";
  for (std::size_t i = 0; i < std::min<std::size_t>(adv.injections().size(), 8); ++i) {
    os << ' ' << adv.injections()[i];
  }
  if (adv.injections().size() > 8) os << " ...";
  os << "\n  each injection (-l,0) lies in Y(-l) and N|E but not Y(-(l-1)): "
     << (breaks ? "yes" : "no") << "\n";
  os << "  stubborn learner: correct steps " << sv.total_correct << " of " << sv.horizon
     << ", committed pair (" << describe(stubborn.result.final_pair.k) << ", "
     << describe(stubborn.result.final_pair.h) << ")\n";
  return {os.str(), ev.phase_transitions >= 5 && breaks && sv.total_correct == 0 && stubborn_pair};
}

DemoReport demo_thm4_2() {
  std::ostringstream os;
  const Game g = run_scenario(builtin_scenario("thm4_2"));
  const auto& adv = dynamic_cast<const DiagonalAdversary&>(*g.adversary);
  const auto& trace = g.result.trace;
  const auto& top_k = g.instance.true_side->at(1);
  const auto& top_h = g.instance.harm_side->at(1);

  // First step at which each element appeared under each label.
  std::map<Element, std::size_t> first_pos;
  std::map<Element, std::size_t> first_neg;
  for (const auto& r : trace.steps) {
    auto& m = r.example.label == Label::True ? first_pos : first_neg;
    m.emplace(r.example.element, r.t);
  }
  auto covered = [&](const EventuallyPeriodicSet& top, const std::map<Element, std::size_t>& seen,
                     std::uint64_t cursor, std::size_t by) {
    for (std::uint64_t r = 1; r <= cursor; ++r) {
      const Element x = universe_elem(UniverseIndex{r});
      if (!top.member(x)) continue;
      const auto it = seen.find(x);
      if (it == seen.end() || it->second > by) return false;
    }
    return true;
  };
  bool ledger = true;
  std::size_t boundary_wrong = 0;
  for (const auto& b : adv.boundaries()) {
    ledger = ledger && b.k_queue == 0 && b.h_queue == 0 &&
             covered(top_k, first_pos, b.k_cursor, b.step) &&
             covered(top_h, first_neg, b.h_cursor, b.step);
    const auto& rec = trace.steps[b.detection_step - 1];
    RevealedSet s;
    for (std::size_t i = 0; i < b.detection_step; ++i) s.add(trace.steps[i].example);
    if (!rec.output.is_bottom() &&
        !score_step(GameKind::SG, rec.output, top_k, top_h, s, nullptr)) {
      ++boundary_wrong;
    }
  }
  const std::size_t n = adv.boundaries().size();
  os << "thm4-2: diagonal adversary vs KM-style generator, horizon " << trace.steps.size() << "\n";
  os << "  phase transitions " << g.result.verdict.phase_transitions << "\n";
  os << "  skipped elements flushed at every boundary: " << (ledger ? "yes" : "no") << "\n";
  os << "  boundary outputs incorrect against the limit pair (" << describe(top_k) << ", "
     << describe(top_h) << "): " << boundary_wrong << " of " << n << "\n";
  return {os.str(), g.result.verdict.phase_transitions >= 3 && ledger && boundary_wrong == n};
}

DemoReport demo_sg_inf() {
  std::ostringstream os;
  const Game g = run_scenario(builtin_scenario("sg_inf"));
  const auto& v = g.result.verdict;
  os << "sg-inf: smallest-true / largest-harm generator, K = O, H = E\n";
  if (v.converged) {
    os << "  converged at step " << *v.convergence_step << " of " << v.horizon << "\n";
  } else {
    os << "  not converged: " << v.correct_in_final_window << " of the final " << v.window
       << " steps correct\n";
  }
  return {os.str(), v.converged && *v.convergence_step <= 250};
}

DemoReport demo_reduction() {
  std::ostringstream os;
  const Game naive = run_scenario(builtin_scenario("naive_identify"));
  const Game red = run_scenario(builtin_scenario("reduction"));
  const auto& nv = naive.result.verdict;
  const auto& rv = red.result.verdict;
  const auto last = red.result.trace.steps.back().output;
  os << "reduction: identification of K = O in [I, O]\n";
  os << "  naive consistent:    final-window correct " << nv.correct_in_final_window << "/"
     << nv.window << "\n";
  os << "  identify-from-SG:    final-window correct " << rv.correct_in_final_window << "/"
     << rv.window << ", last guess index " << last.value;
  if (rv.converged) os << ", converged at step " << *rv.convergence_step;
  os << "\n";
  return {os.str(), nv.correct_in_final_window == 0 && rv.converged && last == LearnerOutput::index(2)};
}

DemoReport demo_conservative_fails() {
  std::ostringstream os;
  const Game g = run_scenario(builtin_scenario("conservative_fails"));
  const auto& trace = g.result.trace;
  const auto truth = set_difference(*g.instance.k, *g.instance.h).cardinality();
  std::size_t count = 0;
  std::size_t first = 0;
  for (const auto& r : trace.steps) {
    if (note(r, "kc_minus_hc") == "Empty" && truth.is_infinite()) {
      if (count++ == 0) first = r.t;
    }
  }
  os << "conservative-fails: K = I, H = E, no infinite-difference promise\n";
  os << "  K\\H is " << truth.to_string() << "\n";
  os << "  steps where the chosen K_c\\H_c is Empty: " << count;
  if (count) os << " (first at step " << first << ")";
  os << "\n  final-window correct " << g.result.verdict.correct_in_final_window << "/"
     << g.result.verdict.window << "\n";
  return {os.str(), count >= 1};
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> out;
  for (const auto& [n, _] : builtins()) out.push_back(n);
  return out;
}

const std::string& builtin_scenario_text(std::string_view name) {
  for (const auto& [n, text] : builtins()) {
    if (n == name) return text;
  }
  throw ScenarioError("unknown built-in scenario '" + std::string(name) + "'");
}

ScenarioSpec builtin_scenario(std::string_view name) {
  return *parse_scenario_text(builtin_scenario_text(name), ".").scenario;
}

std::vector<std::string> demo_names() {
  return {"thm3-1", "thm4-2", "sg-inf", "reduction", "conservative-fails"};
}

DemoReport run_demo(std::string_view name) {
  if (name == "thm3-1") return demo_thm3_1();
  if (name == "thm4-2") return demo_thm4_2();
  if (name == "sg-inf") return demo_sg_inf();
  if (name == "reduction") return demo_reduction();
  if (name == "conservative-fails") return demo_conservative_fails();
  throw ScenarioError("unknown demo '" + std::string(name) + "'");
}

}  // namespace safegen
