#pragma once

#include <string>

#include "banditlab/experiment.hpp"
#include "banditlab/shift_demo.hpp"

// JSON (de)serialization for the CLI-facing configs and fitted parameters.
// Unknown keys are rejected so typos in config files fail loudly.

namespace banditlab {

SimConfig sim_config_from_json(const std::string& text);
ExperimentConfig experiment_config_from_json(const std::string& text);
ShiftDemoConfig shift_demo_config_from_json(const std::string& text);

std::string param_vector_to_json(const ParamVector& beta);
ParamVector param_vector_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace banditlab
