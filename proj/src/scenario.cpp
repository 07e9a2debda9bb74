#include "safegen/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <array>
#include <sstream>

#include "json.hpp"
#include "safegen/set_spec.hpp"

namespace safegen {

using json = nlohmann::json;

namespace {

constexpr std::string_view kAdaptive = "adaptive";

void only_keys(const json& j, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!j.is_object()) throw ScenarioError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ScenarioError(where + ": unknown field '" + key + "'");
    }
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ScenarioError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return std::nullopt;
  return get<T>(j, key, where);
}

void check_version(const json& j, const std::string& where) {
  const int v = get<int>(j, "version", where);
  if (v != kScenarioVersion) {
    throw ScenarioError(where + ": unsupported version " + std::to_string(v));
  }
}

CollectionConfig parse_collection(const json& j, const std::string& where) {
  only_keys(j, {"list", "telltales"}, where);
  CollectionConfig c;
  c.specs = get<std::vector<std::string>>(j, "list", where);
  if (c.specs.empty()) throw ScenarioError(where + ": empty list");
  if (j.contains("telltales")) {
    const auto& tt = j["telltales"];
    if (!tt.is_object()) throw ScenarioError(where + ".telltales: expected an object");
    for (const auto& [key, val] : tt.items()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(key, &used);
        if (used != key.size() || idx == 0) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ScenarioError(where + ".telltales: key '" + key + "' is not a positive index");
      }
      try {
        c.telltales[idx] = val.get<std::vector<Element>>();
      } catch (const json::exception&) {
        throw ScenarioError(where + ".telltales." + key + ": expected a list of integers");
      }
    }
  }
  return c;
}

LearnerConfig parse_learner(const json& j, const std::string& where) {
  only_keys(j, {"kind", "mode", "promise", "m_slack", "subroutine", "K", "H"}, where);
  LearnerConfig l;
  l.kind = get<std::string>(j, "kind", where);
  if (auto mode = get_opt<std::string>(j, "mode", where)) {
    if (*mode == "strict") {
      l.mode = SgMode::Strict;
    } else if (*mode == "relaxed") {
      l.mode = SgMode::Relaxed;
    } else {
      throw ScenarioError(where + ": mode must be 'strict' or 'relaxed'");
    }
  }
  l.promise = get_opt<bool>(j, "promise", where).value_or(true);
  l.m_slack = get_opt<std::uint64_t>(j, "m_slack", where).value_or(0);
  l.subroutine = get_opt<std::string>(j, "subroutine", where).value_or("reference");
  l.k = get_opt<std::string>(j, "K", where);
  l.h = get_opt<std::string>(j, "H", where);
  return l;
}

ScenarioSpec parse_spec(const json& j, const std::string& where) {
  only_keys(j, {"version", "name", "game", "collections", "K", "H", "adversary", "learner",
                "horizon", "window"},
            where);
  check_version(j, where);
  ScenarioSpec s;
  s.name = get<std::string>(j, "name", where);
  const std::string w = where + " (" + s.name + ")";
  const auto game = parse_game(get<std::string>(j, "game", w));
  if (!game) throw ScenarioError(w + ": unknown game '" + j["game"].get<std::string>() + "'");
  s.game = *game;

  const json& colls = j.contains("collections") ? j["collections"] : json();
  if (colls.is_null()) throw ScenarioError(w + ": missing field 'collections'");
  if (colls.contains("family")) {
    only_keys(colls, {"family", "prefix_len"}, w + ".collections");
    s.family = get<std::string>(colls, "family", w);
    s.prefix_len = get_opt<std::size_t>(colls, "prefix_len", w).value_or(0);
  } else {
    only_keys(colls, {"true", "harm"}, w + ".collections");
    if (!colls.contains("true")) throw ScenarioError(w + ".collections: missing 'true'");
    s.true_side = parse_collection(colls["true"], w + ".collections.true");
    if (colls.contains("harm")) s.harm_side = parse_collection(colls["harm"], w + ".collections.harm");
  }

  s.k = get_opt<std::string>(j, "K", w);
  s.h = get_opt<std::string>(j, "H", w);
  const json& adv = j.contains("adversary") ? j["adversary"] : json();
  if (adv.is_null()) throw ScenarioError(w + ": missing field 'adversary'");
  only_keys(adv, {"kind"}, w + ".adversary");
  s.adversary = get<std::string>(adv, "kind", w + ".adversary");
  if (!j.contains("learner")) throw ScenarioError(w + ": missing field 'learner'");
  s.learner = parse_learner(j["learner"], w + ".learner");
  s.horizon = get<std::size_t>(j, "horizon", w);
  s.window = get<std::size_t>(j, "window", w);
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ScenarioError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

EventuallyPeriodicSet parse_field(const std::string& text, const std::string& where) {
  try {
    return parse_set_spec(text);
  } catch (const SetSpecError& e) {
    throw ScenarioError(where + ": " + e.what() + " in '" + text + "'");
  }
}

std::shared_ptr<const LanguageCollection> build_collection(const std::string& name,
                                                           const CollectionConfig& c) {
  std::vector<EventuallyPeriodicSet> langs;
  for (std::size_t i = 0; i < c.specs.size(); ++i) {
    langs.push_back(parse_field(c.specs[i], name + "[" + std::to_string(i + 1) + "]"));
  }
  auto coll = LanguageCollection::from_list(name, std::move(langs));
  try {
    if (!c.telltales.empty()) coll.set_telltales(c.telltales);
  } catch (const CollectionError& e) {
    throw ScenarioError(e.what());
  }
  return std::make_shared<const LanguageCollection>(std::move(coll));
}

bool index_learner(const std::string& kind) {
  return kind == "identify_from_sg" || kind == "naive_identify" || kind == "eager_si" ||
         kind == "stubborn_si";
}

bool needs_harm(const std::string& kind) {
  return kind == "sg_inf" || kind == "telltale_oracle" || kind == "eager_si";
}

constexpr std::array<std::string_view, 9> kLearners{
    "km",          "sg_inf",         "telltale_oracle", "reference",  "always_bottom",
    "identify_from_sg", "naive_identify", "eager_si", "stubborn_si"};

}  // namespace

ScenarioFile parse_scenario_text(const std::string& text, const std::filesystem::path& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  }
  ScenarioFile out;
  if (j.is_object() && j.contains("battery")) {
    only_keys(j, {"version", "name", "battery"}, "battery");
    check_version(j, "battery");
    Battery b;
    b.name = get<std::string>(j, "name", "battery");
    if (!j["battery"].is_array() || j["battery"].empty()) {
      throw ScenarioError("battery: 'battery' must be a non-empty list");
    }
    for (const auto& entry : j["battery"]) {
      if (entry.is_string()) {
        b.scenarios.push_back(load_scenario(base / entry.get<std::string>()));
      } else {
        b.scenarios.push_back(parse_spec(entry, "battery entry"));
      }
    }
    out.battery = std::move(b);
  } else {
    out.scenario = parse_spec(j, "scenario");
  }
  return out;
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) {
  return parse_scenario_text(read_file(path), path.parent_path());
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  auto f = load_scenario_file(path);
  if (!f.scenario) throw ScenarioError(path.string() + ": expected a single scenario, found a battery");
  return std::move(*f.scenario);
}

void apply_overrides(ScenarioSpec& spec, std::optional<std::size_t> horizon,
                     std::optional<std::size_t> window) {
  if (horizon) spec.horizon = *horizon;
  if (window) spec.window = *window;
}

Instance resolve(const ScenarioSpec& spec) {
  const std::string w = "scenario '" + spec.name + "'";
  if (spec.horizon == 0) throw ScenarioError(w + ": horizon must be positive");
  if (spec.window == 0 || spec.window >= spec.horizon) {
    throw ScenarioError(w + ": window must satisfy 1 <= window < horizon");
  }
  const auto& lk = spec.learner.kind;
  if (std::find(kLearners.begin(), kLearners.end(), lk) == kLearners.end()) {
    throw ScenarioError(w + ": unknown learner '" + lk + "'");
  }
  if (index_learner(lk) == is_generation(spec.game)) {
    throw ScenarioError(w + ": learner '" + lk + "' does not play " + game_name(spec.game));
  }

  Instance inst;
  const std::size_t prefix = spec.prefix_len ? spec.prefix_len : spec.horizon;
  if (spec.family) {
    CollectionPair p;
    if (*spec.family == "id_impossibility") {
      p = id_impossibility_collections(prefix);
    } else if (*spec.family == "pstar") {
      p = pstar_collections(prefix);
    } else {
      throw ScenarioError(w + ": unknown collection family '" + *spec.family + "'");
    }
    inst.true_side = p.true_side;
    inst.harm_side = p.harm_side;
  } else {
    inst.true_side = build_collection("true", *spec.true_side);
    if (spec.harm_side) inst.harm_side = build_collection("harm", *spec.harm_side);
  }
  try {
    inst.true_side->require_infinite_members();
    if (inst.harm_side) inst.harm_side->require_infinite_members();
  } catch (const CollectionError& e) {
    throw ScenarioError(w + ": " + e.what());
  }
  if (needs_harm(lk) && !inst.harm_side) {
    throw ScenarioError(w + ": learner '" + lk + "' needs a harm collection");
  }
  if (lk == "telltale_oracle" &&
      (!inst.true_side->has_telltales() || !inst.harm_side->has_telltales())) {
    throw ScenarioError(w + ": learner 'telltale_oracle' needs telltales on both collections");
  }

  const bool adaptive = spec.adversary == "phased_id" || spec.adversary == "diagonal";
  auto pair_field = [&](const std::optional<std::string>& f, const char* key)
      -> std::optional<EventuallyPeriodicSet> {
    if (!f) return std::nullopt;
    if (*f == kAdaptive) {
      if (!adaptive) throw ScenarioError(w + ": " + key + " is 'adaptive' but the adversary is not");
      return std::nullopt;
    }
    if (adaptive) throw ScenarioError(w + ": adaptive adversaries choose " + key + " themselves");
    return parse_field(*f, w + "." + key);
  };
  inst.k = pair_field(spec.k, "K");
  inst.h = pair_field(spec.h, "H");

  if (spec.adversary == "positive") {
    if (!inst.k) throw ScenarioError(w + ": adversary 'positive' needs K");
    if (inst.h) throw ScenarioError(w + ": adversary 'positive' takes no H");
    if (!inst.k->cardinality().is_infinite()) throw ScenarioError(w + ": K must be infinite");
  } else if (spec.adversary == "fair") {
    if (!inst.k || !inst.h) throw ScenarioError(w + ": adversary 'fair' needs K and H");
    if (!inst.k->cardinality().is_infinite() || !inst.h->cardinality().is_infinite()) {
      throw ScenarioError(w + ": K and H must be infinite");
    }
  } else if (spec.adversary == "phased_id") {
    if (spec.family != "id_impossibility" || spec.game != GameKind::SI) {
      throw ScenarioError(w + ": adversary 'phased_id' plays SI on the id_impossibility family");
    }
  } else if (spec.adversary == "diagonal") {
    if (!inst.harm_side || !is_generation(spec.game)) {
      throw ScenarioError(w + ": adversary 'diagonal' plays a generation game on two collections");
    }
  } else {
    throw ScenarioError(w + ": unknown adversary '" + spec.adversary + "'");
  }

  if (spec.game == GameKind::SGInf) {
    if (!inst.harm_side) throw ScenarioError(w + ": SGInf needs a harm collection");
    if (auto why = validate_infinite_differences(*inst.true_side, *inst.harm_side)) {
      throw ScenarioError(w + ": infinite-difference promise fails: " + *why);
    }
  }
  if (lk == "reference" && adaptive && !(spec.learner.k && spec.learner.h)) {
    throw ScenarioError(w + ": learner 'reference' needs an explicit K and H hypothesis");
  }
  if (lk == "identify_from_sg" && spec.learner.subroutine != "reference" &&
      spec.learner.subroutine != "reference_relaxed") {
    throw ScenarioError(w + ": unknown subroutine '" + spec.learner.subroutine + "'");
  }
  return inst;
}

std::unique_ptr<Adversary> make_adversary(const ScenarioSpec& spec, const Instance& inst) {
  if (spec.adversary == "positive") return std::make_unique<PositiveStream>(*inst.k);
  if (spec.adversary == "fair") return std::make_unique<FairInterleaver>(*inst.k, *inst.h);
  if (spec.adversary == "phased_id") return std::make_unique<PhasedIdAdversary>(inst.true_side);
  try {
    return std::make_unique<DiagonalAdversary>(inst.true_side, inst.harm_side);
  } catch (const CollectionError& e) {
    throw ScenarioError("scenario '" + spec.name + "': " + e.what());
  }
}

std::unique_ptr<Learner> make_learner(const ScenarioSpec& spec, const Instance& inst) {
  const auto& l = spec.learner;
  if (l.kind == "km") return std::make_unique<KmGenerator>(inst.true_side, l.m_slack);
  if (l.kind == "sg_inf") {
    return std::make_unique<SgInfGenerator>(inst.true_side, inst.harm_side,
                                            l.promise ? Exhaustion::Throw : Exhaustion::Bottom,
                                            l.mode, l.m_slack);
  }
  if (l.kind == "telltale_oracle") {
    return std::make_unique<TelltaleOracleSafeGenerator>(inst.true_side, inst.harm_side, l.mode);
  }
  if (l.kind == "reference") {
    const std::string w = "scenario '" + spec.name + "'.learner";
    auto k = l.k ? parse_field(*l.k, w + ".K") : *inst.k;
    auto h = l.h ? parse_field(*l.h, w + ".H") : inst.h.value_or(EventuallyPeriodicSet{});
    return std::make_unique<ReferenceLearner>(std::move(k), std::move(h), l.mode);
  }
  if (l.kind == "always_bottom") return std::make_unique<AlwaysBottom>();
  if (l.kind == "identify_from_sg") {
    const auto mode = l.subroutine == "reference_relaxed" ? SgMode::Relaxed : SgMode::Strict;
    return std::make_unique<IdentifierFromSg>(inst.true_side, std::make_shared<ReferenceSg>(mode));
  }
  if (l.kind == "naive_identify" || l.kind == "stubborn_si") {
    return std::make_unique<NaiveIdentifier>(inst.true_side);
  }
  return std::make_unique<EagerSafeIdentifier>(inst.true_side, inst.harm_side);
}

Game run_scenario(const ScenarioSpec& spec) {
  Game g;
  g.instance = resolve(spec);
  g.adversary = make_adversary(spec, g.instance);
  g.learner = make_learner(spec, g.instance);
  PlayOptions opt;
  opt.game = spec.game;
  opt.horizon = spec.horizon;
  opt.window = spec.window;
  opt.scenario = spec.name;
  opt.score_collection = g.instance.true_side.get();
  g.result = play(*g.adversary, *g.learner, opt);
  return g;
}

Rescore replay(const Trace& trace, const ScenarioSpec& spec) {
  const Instance inst = resolve(spec);
  if (trace.header.game != spec.game) {
    throw ScenarioError("trace game " + std::string(game_name(trace.header.game)) +
                        " does not match scenario game " + game_name(spec.game));
  }
  auto lookup = [&](const std::string& text) -> EventuallyPeriodicSet {
    for (const auto& [prefix, coll] : {std::pair{std::string("true["), inst.true_side},
                                       std::pair{std::string("harm["), inst.harm_side}}) {
      if (text.rfind(prefix, 0) == 0 && text.back() == ']' && coll) {
        return coll->at(std::stoul(text.substr(prefix.size(), text.size() - prefix.size() - 1)));
      }
    }
    return parse_field(text, "trace pair");
  };
  auto pair_for = [&](const StepRecord& r) -> LanguagePair {
    if (r.k_spec && r.h_spec) return {lookup(*r.k_spec), lookup(*r.h_spec)};
    if (!inst.k) throw ScenarioError("trace step " + std::to_string(r.t) + " has no scoring pair");
    return {*inst.k, inst.h.value_or(EventuallyPeriodicSet{})};
  };
  const LanguageCollection* coll = inst.true_side.get();
  std::optional<std::size_t> target;
  if (!trace.steps.empty()) target = target_index(spec.game, coll, pair_for(trace.steps.back()));
  return rescore(trace, coll, pair_for, spec.window, target);
}

}  // namespace safegen
