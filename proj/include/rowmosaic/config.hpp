#pragma once

#include <string>

#include "rowmosaic/types.hpp"

namespace rowmosaic {

// Checks every invariant and returns the validated config. Unset fields are
// already the documented defaults via PipelineConfig's initializers. Throws
// Error(config) naming the first violated field and its value.
PipelineConfig validate_config(const PipelineConfig& raw);

// Flat "key: value" text config ('#' starts a comment). Keys mirror the
// PipelineConfig field names, nested ones with dots
// (e.g. motion.scale_bounds.min). Unknown keys are an error.
PipelineConfig parse_config_file(const std::string& path);
PipelineConfig parse_config_text(const std::string& text);

std::string config_to_text(const PipelineConfig& cfg);

}  // namespace rowmosaic
