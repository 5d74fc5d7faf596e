#pragma once

#include <map>
#include <string>

#include "jsmreg/registration.hpp"

namespace jsmreg {

/// Parses "key = value" lines; blank lines and '#' comments are skipped and
/// an optional [section] header is ignored. Quotes around values are
/// stripped. Throws std::invalid_argument on a malformed line.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Applies one setting. Keys: measure, interpolation, bins, levels,
/// jsm_recompute, saliency_threshold, cosine (abs|clamp), max_evals,
/// min_step, step_tx, step_ty, step_beta, min_bins, rsv_lookup
/// (nearest|bilinear), min_overlap.
/// Throws std::invalid_argument for unknown keys or bad values.
void apply_setting(RegistrationConfig& cfg, const std::string& key,
                   const std::string& value);

RegistrationConfig config_from_text(const std::string& text,
                                    RegistrationConfig base = {});

}  // namespace jsmreg
