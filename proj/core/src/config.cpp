#include "jsmreg/config.hpp"

#include <sstream>
#include <stdexcept>

namespace jsmreg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + v);
  }
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty() || (line.front() == '[' && line.back() == ']')) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    }
    out[key] = value;
  }
  return out;
}

void apply_setting(RegistrationConfig& cfg, const std::string& key,
                   const std::string& value) {
  if (key == "measure") cfg.measure = parse_measure(value);
  else if (key == "interpolation") cfg.interpolation = parse_interpolation(value);
  else if (key == "bins") cfg.bins = to_int(key, value);
  else if (key == "levels") cfg.pyramid_levels = to_int(key, value);
  else if (key == "jsm_recompute") cfg.jsm_recompute_interval = to_int(key, value);
  else if (key == "saliency_threshold") cfg.saliency_threshold = to_double(key, value);
  else if (key == "cosine") {
    if (value == "abs") cfg.cosine_policy = CosinePolicy::kAbsolute;
    else if (value == "clamp") cfg.cosine_policy = CosinePolicy::kClampNegative;
    else throw std::invalid_argument("config: cosine must be abs or clamp");
  } else if (key == "max_evals") cfg.optimizer.max_evaluations = to_int(key, value);
  else if (key == "min_step") cfg.optimizer.min_step = to_double(key, value);
  else if (key == "step_tx") cfg.optimizer.initial_step[0] = to_double(key, value);
  else if (key == "step_ty") cfg.optimizer.initial_step[1] = to_double(key, value);
  else if (key == "step_beta") cfg.optimizer.initial_step[2] = to_double(key, value);
  else if (key == "min_bins") cfg.min_bins = to_int(key, value);
  else if (key == "rsv_lookup") {
    if (value == "nearest") cfg.rsv_lookup = RsvLookup::kNearest;
    else if (value == "bilinear") cfg.rsv_lookup = RsvLookup::kBilinearWeight;
    else throw std::invalid_argument("config: rsv_lookup must be nearest or bilinear");
  } else if (key == "min_overlap") cfg.min_overlap_fraction = to_double(key, value);
  else throw std::invalid_argument("config: unknown key " + key);
}

RegistrationConfig config_from_text(const std::string& text, RegistrationConfig base) {
  for (const auto& [k, v] : parse_key_values(text)) apply_setting(base, k, v);
  base.validate();
  return base;
}

}  // namespace jsmreg
