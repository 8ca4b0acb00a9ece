#include "fcub/config.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "fcub/errors.hpp"

namespace fcub {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError("config: " + path + ": " + message);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Vector vector_at(const json& j, const std::string& path, int expected_size) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (expected_size >= 0 && static_cast<int>(j.size()) != expected_size) {
    std::ostringstream os;
    os << "expected " << expected_size << " entries, got " << j.size();
    fail(path, os.str());
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[i] = number_at(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix_at(const json& j, const std::string& path, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    fail(path, "expected " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const Vector row = vector_at(j[r], path + "[" + std::to_string(r) + "]", n);
    m.row(r) = row.transpose();
  }
  return m;
}

}  // namespace

FractalConfig FractalConfig::from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "dimension" && key != "maps" && key != "measure" &&
        key != "box" && key != "diameter") {
      fail(key, "unknown key (expected name, dimension, maps, measure, box, diameter)");
    }
  }
  FractalConfig config;

  if (!j.contains("name") || !j["name"].is_string()) fail("name", "expected a string");
  config.name = j["name"].get<std::string>();

  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
    fail("dimension", "expected an integer");
  }
  config.dimension = j["dimension"].get<int>();
  if (config.dimension < 1) fail("dimension", "must be >= 1");

  if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].size() < 2) {
    fail("maps", "expected an array of at least two maps");
  }
  for (std::size_t i = 0; i < j["maps"].size(); ++i) {
    const std::string path = "maps[" + std::to_string(i) + "]";
    const json& jm = j["maps"][i];
    if (!jm.is_object() || !jm.contains("A") || !jm.contains("b")) {
      fail(path, "expected an object with keys A and b");
    }
    config.maps.emplace_back(matrix_at(jm["A"], path + ".A", config.dimension),
                             vector_at(jm["b"], path + ".b", config.dimension));
  }

  if (!j.contains("measure") || !j["measure"].is_object() ||
      !j["measure"].contains("type")) {
    fail("measure", "expected an object with a type");
  }
  const std::string type = j["measure"]["type"].get<std::string>();
  if (type == "weights") {
    if (!j["measure"].contains("values")) fail("measure.values", "missing");
    config.measure_weights = vector_at(j["measure"]["values"], "measure.values",
                                       static_cast<int>(config.maps.size()));
  } else if (type == "hausdorff") {
    config.measure_weights.reset();
  } else {
    fail("measure.type", "expected \"weights\" or \"hausdorff\"");
  }

  if (j.contains("box")) {
    if (!j["box"].is_object() || !j["box"].contains("lo") || !j["box"].contains("hi")) {
      fail("box", "expected an object with keys lo and hi");
    }
    config.box = {vector_at(j["box"]["lo"], "box.lo", config.dimension),
                  vector_at(j["box"]["hi"], "box.hi", config.dimension)};
  }
  if (j.contains("diameter")) {
    config.diameter = number_at(j["diameter"], "diameter");
    if (!(*config.diameter > 0.0)) fail("diameter", "must be positive");
  }
  return config;
}

json FractalConfig::to_json() const {
  json j;
  j["name"] = name;
  j["dimension"] = dimension;
  j["maps"] = json::array();
  for (const auto& [a, b] : maps) {
    json rows = json::array();
    for (int r = 0; r < dimension; ++r) {
      json row = json::array();
      for (int c = 0; c < dimension; ++c) row.push_back(a(r, c));
      rows.push_back(std::move(row));
    }
    json jb = json::array();
    for (int i = 0; i < dimension; ++i) jb.push_back(b[i]);
    j["maps"].push_back({{"A", std::move(rows)}, {"b", std::move(jb)}});
  }
  if (measure_weights.has_value()) {
    json values = json::array();
    for (int i = 0; i < measure_weights->size(); ++i) {
      values.push_back((*measure_weights)[i]);
    }
    j["measure"] = {{"type", "weights"}, {"values", std::move(values)}};
  } else {
    j["measure"] = {{"type", "hausdorff"}};
  }
  if (box.has_value()) {
    json lo = json::array(), hi = json::array();
    for (int i = 0; i < dimension; ++i) {
      lo.push_back(box->first[i]);
      hi.push_back(box->second[i]);
    }
    j["box"] = {{"lo", std::move(lo)}, {"hi", std::move(hi)}};
  }
  if (diameter.has_value()) j["diameter"] = *diameter;
  return j;
}

FractalSystem realize(const FractalConfig& config) {
  std::vector<AffineMap> maps;
  for (std::size_t i = 0; i < config.maps.size(); ++i) {
    try {
      maps.emplace_back(config.maps[i].first, config.maps[i].second);
    } catch (const ValidationError& err) {
      throw ValidationError("config: maps[" + std::to_string(i) + "]: " + err.what());
    }
  }
  Ifs ifs(std::move(maps));

  MeasureSpec measure = config.measure_weights.has_value()
                            ? MeasureSpec::from_weights(*config.measure_weights)
                            : hausdorff_weights(ifs);

  BoundingBox box = [&] {
    if (config.box.has_value()) {
      BoundingBox given(config.box->first, config.box->second);
      if (!maps_into(ifs, given)) {
        throw ValidationError(
            "config: box: a mapped corner falls outside the box (S_l(box) not "
            "contained in box)");
      }
      return given;
    }
    return bounding_box(ifs);
  }();

  const double diameter = config.diameter.has_value()
                              ? *config.diameter
                              : attractor_diameter(ifs, measure.weights());
  return FractalSystem{config.name, std::move(ifs), std::move(measure),
                       std::move(box), diameter};
}

FractalSystem parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("config: invalid JSON: ") + err.what());
  }
  return realize(FractalConfig::from_json(j));
}

}  // namespace fcub
