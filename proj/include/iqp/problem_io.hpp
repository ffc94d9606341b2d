#pragma once

#include <filesystem>
#include <string>

#include "iqp/model.hpp"

namespace iqp {

// Problem files are JSON objects:
//   {"n": int, "m": int, "Q": [[..]], "q": [..], "A": [[..]], "b": [..], "x0": [..]}
// Doubles are written in shortest round-trip form, so load(save(p)) == p bit-exactly.

std::string problem_to_json(const Instance& inst);

/// Throws ParseError with line/column or field context, DimensionMismatch on
/// inconsistent sizes.
Instance problem_from_json(const std::string& text);

void save_problem(const std::filesystem::path& path, const Instance& inst);
Instance load_problem(const std::filesystem::path& path);

}  // namespace iqp
