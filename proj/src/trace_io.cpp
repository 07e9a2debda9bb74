#include "safegen/trace_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace safegen {

using json = nlohmann::ordered_json;

namespace {

json header_json(const TraceHeader& h) {
  json j;
  j["record"] = "header";
  j["schema_version"] = h.schema_version;
  j["scenario"] = h.scenario;
  j["game"] = game_name(h.game);
  j["horizon"] = h.horizon;
  j["window"] = h.window;
  j["limit_k"] = h.limit_k ? json(*h.limit_k) : json(nullptr);
  j["limit_h"] = h.limit_h ? json(*h.limit_h) : json(nullptr);
  return j;
}

json step_json(const StepRecord& r) {
  json j;
  j["t"] = r.t;
  j["element"] = r.example.element;
  j["label"] = r.example.label == Label::True ? 1 : 0;
  j["injected"] = r.injected;
  j["output_kind"] = kind_name(r.output.kind);
  j["output_value"] = r.output.is_bottom() ? json(nullptr) : json(r.output.value);
  j["correct"] = r.correct;
  j["phase"] = r.phase;
  if (r.k_spec) j["k"] = *r.k_spec;
  if (r.h_spec) j["h"] = *r.h_spec;
  if (!r.notes.empty()) {
    json n = json::object();
    for (const auto& [k, v] : r.notes) n[k] = v;
    j["notes"] = n;
  }
  return j;
}

LearnerOutput::Kind parse_kind(const std::string& s) {
  if (s == "generate") return LearnerOutput::Kind::Generate;
  if (s == "bottom") return LearnerOutput::Kind::Bottom;
  if (s == "index") return LearnerOutput::Kind::Index;
  throw TraceFormatError("unknown output_kind '" + s + "'");
}

}  // namespace

void write_trace(std::ostream& os, const Trace& trace) {
  os << header_json(trace.header).dump() << '\n';
  for (const auto& r : trace.steps) os << step_json(r).dump() << '\n';
}

Trace read_trace(std::istream& is) {
  Trace trace;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("record", "") != "header") throw TraceFormatError("missing header record");
        const int version = j.at("schema_version").get<int>();
        if (version != kTraceSchemaVersion) {
          throw TraceFormatError("unsupported schema_version " + std::to_string(version));
        }
        auto& h = trace.header;
        h.scenario = j.at("scenario").get<std::string>();
        const auto game = parse_game(j.at("game").get<std::string>());
        if (!game) throw TraceFormatError("unknown game");
        h.game = *game;
        h.horizon = j.at("horizon").get<std::size_t>();
        h.window = j.at("window").get<std::size_t>();
        if (!j.at("limit_k").is_null()) h.limit_k = j.at("limit_k").get<std::string>();
        if (!j.at("limit_h").is_null()) h.limit_h = j.at("limit_h").get<std::string>();
        have_header = true;
        continue;
      }
      StepRecord r;
      r.t = j.at("t").get<std::size_t>();
      r.example.element = j.at("element").get<Element>();
      r.example.label = j.at("label").get<int>() == 1 ? Label::True : Label::Harm;
      r.injected = j.at("injected").get<bool>();
      r.output.kind = parse_kind(j.at("output_kind").get<std::string>());
      r.output.value = j.at("output_value").is_null() ? 0 : j.at("output_value").get<std::int64_t>();
      r.correct = j.at("correct").get<bool>();
      r.phase = j.at("phase").get<std::size_t>();
      if (j.contains("k")) r.k_spec = j["k"].get<std::string>();
      if (j.contains("h")) r.h_spec = j["h"].get<std::string>();
      if (j.contains("notes")) {
        for (const auto& [k, v] : j["notes"].items()) r.notes.emplace_back(k, v.get<std::string>());
      }
      trace.steps.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw TraceFormatError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw TraceFormatError("empty trace");
  return trace;
}

std::string verdict_json(const Verdict& v, const std::string& scenario) {
  json j;
  j["schema_version"] = kTraceSchemaVersion;
  j["scenario"] = scenario;
  j["converged"] = v.converged;
  j["convergence_step"] = v.convergence_step ? json(*v.convergence_step) : json(nullptr);
  j["correct_in_final_window"] = v.correct_in_final_window;
  j["window"] = v.window;
  j["horizon"] = v.horizon;
  j["phase_transitions"] = v.phase_transitions;
  j["target_index"] = v.target_index ? json(*v.target_index) : json(nullptr);
  j["total_correct"] = v.total_correct;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << content;
}

}  // namespace safegen
