#pragma once

#include "homflow/lie_algebra.hpp"
#include "homflow/torus_cohomology.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace homflow::io {

using nlohmann::json;

/// Lie algebra input document:
/// { "dim": n, "basis": [labels], "brackets": [ {"i": int, "j": int,
///   "coeffs": ["p/q", ...] } ] }
/// with i < j required (0-based) and omitted pairs meaning zero brackets.
lie::LieAlgebra lie_algebra_from_json(const json& doc);
lie::LieAlgebra load_lie_algebra(const std::string& path);
json lie_algebra_to_json(const lie::LieAlgebra& alg);

/// Fourier data: JSON list of { "k": [ints], "re": "p/q", "im": "p/q" }.
torus::FourierFunction fourier_from_json(const json& doc);
torus::FourierFunction load_fourier(const std::string& path);
json fourier_to_json(const torus::FourierFunction& f);

/// Targets file: { "targets": [ ["p/q", "p/q"], ... ] }.
std::vector<std::array<Rat, 2>> targets_from_json(const json& doc);
std::vector<std::array<Rat, 2>> load_targets(const std::string& path);

json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace homflow::io
