#pragma once

#include <string>

#include "qcomm/lie_algebra.hpp"

namespace qcomm {

/// Algebra files:
///   {"name": ..., "basis": [...], "parameters": [...],
///    "brackets": [{"pair": ["H", "E"], "value": "2*E"}, ...],
///    "weights": {"H": 0, ...}}
/// Bracket values are linear in the generators plus a scalar unit term.
AlgebraPtr algebra_from_json(const std::string& text);
std::string algebra_to_json(const LieAlgebra& a);

/// A path to an algebra file, or a builder id such as "s3" or "r3".
AlgebraPtr load_algebra(const std::string& spec);

std::string read_text_file(const std::string& path);

}  // namespace qcomm
