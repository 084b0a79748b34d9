#pragma once

#include <string>
#include <string_view>

#include "mpsched/linear_model.hpp"

namespace mpsched {

// Writes the model in algebraic LP text format: objective, constraints,
// a bounds line for every column (insertion order), and a binary-variable
// section. Numbers use shortest round-trip formatting, so parsing the text
// reproduces the model exactly and export(parse(export(m))) == export(m).
std::string export_lp_text(const LinearModel& model);

// Parses LP text produced by export_lp_text (and common hand-written LP
// files with one entity per line). Throws std::invalid_argument on
// malformed input.
LinearModel parse_lp_text(std::string_view text);

}  // namespace mpsched
