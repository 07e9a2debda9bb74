// JSON Lines traces and JSON verdicts (schema version 1).
//
// Trace: one header object, then one object per step:
//   {"record":"header","schema_version":1,"scenario":..,"game":..,
//    "horizon":..,"window":..,"limit_k":..,"limit_h":..}
//   {"t":..,"element":..,"label":0|1,"injected":..,"output_kind":..,
//    "output_value":..|null,"correct":..,"phase":..[,"k":..,"h":..][,"notes":{..}]}
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "safegen/arena.hpp"

namespace safegen {

inline constexpr int kTraceSchemaVersion = 1;

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_trace(std::ostream& os, const Trace& trace);
Trace read_trace(std::istream& is);

std::string verdict_json(const Verdict& v, const std::string& scenario);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace safegen
