#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include <fmt/format.h>

#include "abm/sim.hpp"

namespace abm {

using nlohmann::json;

RunConfig RunConfig::defaults(ModelKind model) {
  RunConfig c;
  c.model = model;
  switch (model) {
    case ModelKind::cross_herding:
      c.steps = 100000;
      c.dt = 0.01;
      c.price_rule = {.gamma = 0.05, .sigma0 = 0.05, .delta = 0.3, .drift = {}, .diffusion = {}};
      break;
    case ModelKind::fw_two_agent:
      c.steps = 10000;
      c.dt = 1.0;
      c.price_rule = {.gamma = 1.0, .sigma0 = 0.01, .delta = 0.0, .drift = {}, .diffusion = {}};
      c.fw = {.a = {0.2, {}}, .b = {0.5, {}}, .noise_std = 0.01};
      break;
    case ModelKind::custom:
      c.steps = 10000;
      c.dt = 1.0;
      c.price_rule = {.gamma = 1.0, .sigma0 = 0.01, .delta = 0.0, .drift = {}, .diffusion = {}};
      c.fundamentalist.a = 0.5;
      c.chartist.b = 0.5;
      break;
  }
  c.burn_in = c.steps / 10;
  return c;
}

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::ConfigError, fmt::format("{}: {}", path, message));
}

void check_schedule(const Schedule& schedule, const std::string& path, std::int64_t steps,
                    bool positive) {
  if (!schedule.per_step.empty() && static_cast<std::int64_t>(schedule.per_step.size()) < steps) {
    config_error(path, fmt::format("per-step sequence has {} entries, need >= steps ({})",
                                   schedule.per_step.size(), steps));
  }
  auto bad = [&](double v) { return !std::isfinite(v) || (positive ? !(v > 0.0) : !(v >= 0.0)); };
  if (schedule.per_step.empty() ? bad(schedule.constant)
                                 : std::any_of(schedule.per_step.begin(), schedule.per_step.end(), bad)) {
    config_error(path, positive ? "must be finite and > 0" : "must be finite and >= 0");
  }
}

}  // namespace

void RunConfig::validate() const {
  if (steps < 1) config_error("steps", "must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) config_error("dt", "must be finite and > 0");
  if (burn_in < 0) config_error("burn_in", "must be >= 0");
  if (burn_in >= steps) config_error("burn_in", fmt::format("must be < steps ({})", steps));
  if (!std::isfinite(initial_log_price) || std::abs(initial_log_price) > kLogPriceLimit) {
    config_error("initial_log_price", "must be finite with |value| <= 700");
  }
  price_rule.validate();
  if (!fundamentalist.log_fundamental.per_step.empty() &&
      static_cast<std::int64_t>(fundamentalist.log_fundamental.per_step.size()) < steps) {
    config_error("fundamentalist.log_fundamental", "per-step sequence shorter than steps");
  }
  switch (model) {
    case ModelKind::fw_two_agent:
      check_schedule(fw.a, "fw.a", steps, false);
      check_schedule(fw.b, "fw.b", steps, false);
      if (!(fw.noise_std >= 0.0)) config_error("fw.noise_std", "must be >= 0");
      break;
    case ModelKind::custom:
      if (!(fundamentalist.a > 0.0)) config_error("fundamentalist.a", "must be > 0");
      if (!(chartist.b > 0.0)) config_error("chartist.b", "must be > 0");
      if (population.fundamentalists + population.chartists == 0) {
        config_error("population", "needs at least one agent");
      }
      break;
    case ModelKind::cross_herding:
      if (herding.agents < 1) config_error("herding.agents", "must be >= 1");
      if (!(herding.threshold_min > 0.0)) config_error("herding.threshold_min", "must be > 0");
      if (!(herding.threshold_max >= herding.threshold_min)) {
        config_error("herding.threshold_max", "must be >= threshold_min");
      }
      if (herding.band_enabled) {
        if (!(herding.band_min > 0.0)) config_error("herding.inaction_band.min", "must be > 0");
        if (!(herding.band_max >= herding.band_min)) {
          config_error("herding.inaction_band.max", "must be >= min");
        }
      }
      break;
  }
}

namespace {

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void reject_unknown(const json& object, const std::string& path, std::initializer_list<const char*> known) {
  if (!object.is_object()) config_error(path.empty() ? "<root>" : path, "must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      config_error(join(path, key), "unknown field");
    }
  }
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) config_error(path, "must be a number");
  return v.get<double>();
}

template <typename Int>
Int get_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) config_error(path, "must be an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (!v.is_number_unsigned()) config_error(path, "must be a non-negative integer");
  }
  return v.get<Int>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) config_error(path, "must be a boolean");
  return v.get<bool>();
}

Schedule get_schedule(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), {}};
  if (!v.is_array()) config_error(path, "must be a number or an array of numbers");
  Schedule s;
  for (std::size_t i = 0; i < v.size(); ++i) s.per_step.push_back(get_number(v[i], fmt::format("{}[{}]", path, i)));
  if (s.per_step.empty()) config_error(path, "per-step sequence is empty");
  return s;
}

ModelKind parse_model(const json& v) {
  if (!v.is_string()) config_error("model", "must be a string");
  const auto name = v.get<std::string>();
  if (name == "fw_two_agent") return ModelKind::fw_two_agent;
  if (name == "cross_herding") return ModelKind::cross_herding;
  if (name == "custom") return ModelKind::custom;
  config_error("model", fmt::format("unknown model '{}' (fw_two_agent, cross_herding, custom)", name));
}

json schedule_json(const Schedule& s) {
  return s.per_step.empty() ? json(s.constant) : json(s.per_step);
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  reject_unknown(doc, "",
                 {"model", "steps", "dt", "seed", "initial_log_price", "burn_in", "price_rule",
                  "fundamentalist", "chartist", "fw", "population", "herding", "record_positions"});
  RunConfig c = RunConfig::defaults(doc.contains("model") ? parse_model(doc["model"]) : ModelKind::cross_herding);
  if (doc.contains("steps")) c.steps = get_integer<std::int64_t>(doc["steps"], "steps");
  c.burn_in = doc.contains("burn_in") ? get_integer<std::int64_t>(doc["burn_in"], "burn_in") : c.steps / 10;
  if (doc.contains("dt")) c.dt = get_number(doc["dt"], "dt");
  if (doc.contains("seed")) c.seed = get_integer<std::uint64_t>(doc["seed"], "seed");
  if (doc.contains("initial_log_price")) c.initial_log_price = get_number(doc["initial_log_price"], "initial_log_price");
  if (doc.contains("record_positions")) c.record_positions = get_bool(doc["record_positions"], "record_positions");

  if (doc.contains("price_rule")) {
    const auto& p = doc["price_rule"];
    reject_unknown(p, "price_rule", {"gamma", "sigma0", "delta"});
    if (p.contains("gamma")) c.price_rule.gamma = get_number(p["gamma"], "price_rule.gamma");
    if (p.contains("sigma0")) c.price_rule.sigma0 = get_number(p["sigma0"], "price_rule.sigma0");
    if (p.contains("delta")) c.price_rule.delta = get_number(p["delta"], "price_rule.delta");
  }
  if (doc.contains("fundamentalist")) {
    const auto& f = doc["fundamentalist"];
    reject_unknown(f, "fundamentalist", {"a", "log_fundamental"});
    if (f.contains("a")) c.fundamentalist.a = get_number(f["a"], "fundamentalist.a");
    if (f.contains("log_fundamental")) {
      c.fundamentalist.log_fundamental = get_schedule(f["log_fundamental"], "fundamentalist.log_fundamental");
    }
  }
  if (doc.contains("chartist")) {
    const auto& ch = doc["chartist"];
    reject_unknown(ch, "chartist", {"b"});
    if (ch.contains("b")) c.chartist.b = get_number(ch["b"], "chartist.b");
  }
  if (doc.contains("fw")) {
    const auto& w = doc["fw"];
    reject_unknown(w, "fw", {"a", "b", "noise_std"});
    if (w.contains("a")) c.fw.a = get_schedule(w["a"], "fw.a");
    if (w.contains("b")) c.fw.b = get_schedule(w["b"], "fw.b");
    if (w.contains("noise_std")) c.fw.noise_std = get_number(w["noise_std"], "fw.noise_std");
  }
  if (doc.contains("population")) {
    const auto& p = doc["population"];
    reject_unknown(p, "population", {"fundamentalists", "chartists"});
    if (p.contains("fundamentalists")) {
      c.population.fundamentalists = get_integer<std::size_t>(p["fundamentalists"], "population.fundamentalists");
    }
    if (p.contains("chartists")) c.population.chartists = get_integer<std::size_t>(p["chartists"], "population.chartists");
  }
  if (doc.contains("herding")) {
    const auto& h = doc["herding"];
    reject_unknown(h, "herding", {"agents", "threshold_min", "threshold_max", "inaction_band"});
    if (h.contains("agents")) c.herding.agents = get_integer<std::size_t>(h["agents"], "herding.agents");
    if (h.contains("threshold_min")) c.herding.threshold_min = get_number(h["threshold_min"], "herding.threshold_min");
    if (h.contains("threshold_max")) c.herding.threshold_max = get_number(h["threshold_max"], "herding.threshold_max");
    if (h.contains("inaction_band")) {
      const auto& b = h["inaction_band"];
      reject_unknown(b, "herding.inaction_band", {"enabled", "min", "max"});
      if (b.contains("enabled")) c.herding.band_enabled = get_bool(b["enabled"], "herding.inaction_band.enabled");
      if (b.contains("min")) c.herding.band_min = get_number(b["min"], "herding.inaction_band.min");
      if (b.contains("max")) c.herding.band_max = get_number(b["max"], "herding.inaction_band.max");
    }
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open config '{}'", path));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
  return parse_run_config(doc);
}

json to_json(const RunConfig& c) {
  return {
      {"model", std::string(to_string(c.model))},
      {"steps", c.steps},
      {"dt", c.dt},
      {"seed", c.seed},
      {"initial_log_price", c.initial_log_price},
      {"burn_in", c.burn_in},
      {"price_rule", {{"gamma", c.price_rule.gamma}, {"sigma0", c.price_rule.sigma0}, {"delta", c.price_rule.delta}}},
      {"fundamentalist", {{"a", c.fundamentalist.a}, {"log_fundamental", schedule_json(c.fundamentalist.log_fundamental)}}},
      {"chartist", {{"b", c.chartist.b}}},
      {"fw", {{"a", schedule_json(c.fw.a)}, {"b", schedule_json(c.fw.b)}, {"noise_std", c.fw.noise_std}}},
      {"population", {{"fundamentalists", c.population.fundamentalists}, {"chartists", c.population.chartists}}},
      {"herding",
       {{"agents", c.herding.agents},
        {"threshold_min", c.herding.threshold_min},
        {"threshold_max", c.herding.threshold_max},
        {"inaction_band",
         {{"enabled", c.herding.band_enabled}, {"min", c.herding.band_min}, {"max", c.herding.band_max}}}}},
      {"record_positions", c.record_positions},
  };
}

}  // namespace abm
