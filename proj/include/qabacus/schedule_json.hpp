// Copyright 2026 The qabacus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/*
 * schedule_json.hpp: the pulse schedule document.
 *
 *   {"omega": w, "pulses": [
 *     {"type": "sigma", "mu": m, "nu": n, "half_periods": k},
 *     {"type": "wall", "theta_plus": a, "theta_minus": b,
 *      "v_plus": p, "v_minus": q, "half_periods": k},
 *     {"type": "free", "half_periods": k}]}
 *
 * Numbers are written with 17 significant digits, so emit -> parse -> emit
 * reproduces the text byte for byte.
 */

#pragma once

#include <json.hpp>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>

#include "qabacus/evolve.hpp"
#include "qabacus/format.hpp"

namespace qabacus {

/// Malformed schedule document.
class ScheduleFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string emit_schedule(const PulseSchedule& s) {
  std::string out = "{\n  \"omega\": " + format_double(s.omega) + ",\n  \"pulses\": [";
  for (std::size_t i = 0; i < s.pulses.size(); ++i) {
    const auto& p = s.pulses[i];
    out += i == 0 ? "\n    {" : ",\n    {";
    if (const auto* sp = std::get_if<SigmaPulse>(&p.kind)) {
      out += "\"type\": \"sigma\", \"mu\": " + format_double(sp->mu) + ", \"nu\": " + format_double(sp->nu);
    } else if (const auto* w = std::get_if<WallPulse>(&p.kind)) {
      out += "\"type\": \"wall\", \"theta_plus\": " + format_double(w->theta_plus) +
             ", \"theta_minus\": " + format_double(w->theta_minus) + ", \"v_plus\": " + format_double(w->v_plus) +
             ", \"v_minus\": " + format_double(w->v_minus);
    } else {
      out += "\"type\": \"free\"";
    }
    out += ", \"half_periods\": " + std::to_string(p.half_periods) + "}";
  }
  out += s.pulses.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

namespace detail {

inline double json_number(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw ScheduleFormatError(std::string("missing field \"") + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ScheduleFormatError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

inline void json_only_keys(const nlohmann::json& obj, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw ScheduleFormatError("unknown field \"" + k + "\"");
  }
}

}  // namespace detail

inline PulseSchedule parse_schedule(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScheduleFormatError(std::string("schedule is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScheduleFormatError("schedule must be a JSON object");
  detail::json_only_keys(doc, {"omega", "pulses"});
  PulseSchedule s;
  s.omega = detail::json_number(doc, "omega");
  if (!doc.contains("pulses") || !doc.at("pulses").is_array()) {
    throw ScheduleFormatError("field \"pulses\" must be an array");
  }
  for (const auto& item : doc.at("pulses")) {
    if (!item.is_object() || !item.contains("type") || !item.at("type").is_string()) {
      throw ScheduleFormatError("each pulse needs a string \"type\"");
    }
    if (!item.contains("half_periods") || !item.at("half_periods").is_number_integer()) {
      throw ScheduleFormatError("field \"half_periods\" must be an integer");
    }
    const auto k = item.at("half_periods").get<std::int64_t>();
    const auto type = item.at("type").get<std::string>();
    if (type == "sigma") {
      detail::json_only_keys(item, {"type", "mu", "nu", "half_periods"});
      s.pulses.push_back(Pulse::sigma(detail::json_number(item, "mu"), detail::json_number(item, "nu"), k));
    } else if (type == "wall") {
      detail::json_only_keys(item, {"type", "theta_plus", "theta_minus", "v_plus", "v_minus", "half_periods"});
      s.pulses.push_back(Pulse::wall(detail::json_number(item, "theta_plus"), detail::json_number(item, "theta_minus"),
                                     detail::json_number(item, "v_plus"), detail::json_number(item, "v_minus"), k));
    } else if (type == "free") {
      detail::json_only_keys(item, {"type", "half_periods"});
      s.pulses.push_back(Pulse::free(k));
    } else {
      throw ScheduleFormatError("unknown pulse type \"" + type + "\"");
    }
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ScheduleFormatError(e.what());
  }
  return s;
}

}  // namespace qabacus
