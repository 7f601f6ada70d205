#ifndef WALDSCHMIDT_TRACE_JSON_HPP
#define WALDSCHMIDT_TRACE_JSON_HPP

#include <waldschmidt/plane_system.hpp>
#include <waldschmidt/space_system.hpp>

#include <json.hpp>

namespace waldschmidt {

inline nlohmann::ordered_json to_json(const PlaneSystem& sys) {
  nlohmann::ordered_json mults = nlohmann::ordered_json::array();
  for (const auto& m : sys.compacted().mults) mults.push_back({{"value", m.value.str()}, {"count", m.count}});
  return {{"degree", sys.degree.str()}, {"mults", mults}};
}

inline nlohmann::ordered_json to_json(const TResult& r) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& step : r.trace.steps) {
    nlohmann::ordered_json j = to_json(step.system);
    j["k"] = step.k ? nlohmann::ordered_json(step.k->str()) : nlohmann::ordered_json(nullptr);
    j["move"] = to_string(step.move);
    steps.push_back(std::move(j));
  }
  return {{"steps", steps}, {"t0", r.t0.str()}};
}

inline nlohmann::ordered_json to_json(const SpaceSystem& sys) {
  nlohmann::ordered_json q_list = nlohmann::ordered_json::array();
  for (const auto& q : sys.specialized) q_list.push_back(q.str());
  return {{"delta", sys.delta.str()}, {"specialized", q_list}, {"p", sys.p}};
}

inline nlohmann::ordered_json to_json(const LResult& r) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& step : r.trace) {
    nlohmann::ordered_json j = to_json(step.system);
    j["t0"] = step.t0 ? nlohmann::ordered_json(step.t0->str()) : nlohmann::ordered_json(nullptr);
    j["move"] = to_string(step.move);
    steps.push_back(std::move(j));
  }
  return {{"steps", steps}, {"answer", r.yes ? "yes" : "no"}};
}

}  // namespace waldschmidt

#endif  // WALDSCHMIDT_TRACE_JSON_HPP
