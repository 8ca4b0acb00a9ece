#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fcub/ifs.hpp"
#include "fcub/measure.hpp"

namespace fcub {

/// One system description as it appears in a config file. Top-level JSON
/// keys: name, dimension, maps (array of {A, b}, A row-major), measure
/// ({"type":"weights","values":[...]} or {"type":"hausdorff"}), optional box
/// ({"lo":[...],"hi":[...]}), optional diameter.
struct FractalConfig {
  std::string name;
  int dimension = 0;
  std::vector<std::pair<Matrix, Vector>> maps;
  std::optional<Vector> measure_weights;  // absent = Hausdorff choice
  std::optional<std::pair<Vector, Vector>> box;
  std::optional<double> diameter;

  static FractalConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// A validated system ready for computation. The box is corner-validated; the
/// diameter is the config override or the chaos-sample estimate (default
/// sample of 1e5 points, seed 42).
struct FractalSystem {
  std::string name;
  Ifs ifs;
  MeasureSpec measure;
  BoundingBox box;
  double diameter = 0.0;
};

FractalSystem realize(const FractalConfig& config);

/// Parses and validates a JSON config text in one step.
FractalSystem parse_config(const std::string& text);

/// Built-in systems: cantor, cantor-dust, vicsek (optionally "vicsek:<theta>"
/// with theta a number or "pi/4"), sierpinski-fat. koch-snowflake and
/// barnsley-fern carry map coefficients from outside sources and require
/// allow_external.
FractalConfig gallery(const std::string& name, bool allow_external = false);

std::vector<std::string> gallery_names();

}  // namespace fcub
