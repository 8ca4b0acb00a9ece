#include <cmath>
#include <numbers>
#include <sstream>

#include "fcub/config.hpp"
#include "fcub/errors.hpp"

namespace fcub {

namespace {

Matrix rotation(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Matrix scalar1d(double value) {
  Matrix m(1, 1);
  m << value;
  return m;
}

Vector vec1(double x) {
  Vector v(1);
  v << x;
  return v;
}

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

FractalConfig cantor_config() {
  FractalConfig c;
  c.name = "cantor";
  c.dimension = 1;
  const double rho = 1.0 / 3.0;
  c.maps.emplace_back(scalar1d(rho), vec1(0.0));
  c.maps.emplace_back(scalar1d(rho), vec1(1.0 - rho));
  c.box = {vec1(0.0), vec1(1.0)};
  return c;  // Hausdorff measure: (1/2, 1/2)
}

FractalConfig cantor_dust_config() {
  FractalConfig c;
  c.name = "cantor-dust";
  c.dimension = 2;
  const double rho = 1.0 / 3.0;
  const Matrix a = rho * Matrix::Identity(2, 2);
  for (const Vector& corner :
       {vec2(1.0, 1.0), vec2(1.0, -1.0), vec2(-1.0, 1.0), vec2(-1.0, -1.0)}) {
    c.maps.emplace_back(a, (1.0 - rho) * corner);
  }
  c.box = {vec2(-1.0, -1.0), vec2(1.0, 1.0)};
  return c;  // Hausdorff measure: 1/4 each
}

FractalConfig vicsek_config(double theta) {
  FractalConfig c;
  std::ostringstream name;
  name << "vicsek:" << theta;
  c.name = name.str();
  c.dimension = 2;
  const double rho = 1.0 / 3.0;
  // The central map is rho * R_theta. A pure rotation would not contract, so
  // the rotation is scaled like the corner maps; see the README note.
  c.maps.emplace_back(rho * rotation(theta), vec2(0.0, 0.0));
  for (const Vector& corner :
       {vec2(1.0, 1.0), vec2(1.0, -1.0), vec2(-1.0, 1.0), vec2(-1.0, -1.0)}) {
    c.maps.emplace_back(rho * Matrix::Identity(2, 2), (1.0 - rho) * corner);
  }
  Vector mu(5);
  mu.setConstant(0.2);
  c.measure_weights = mu;
  c.box = {vec2(-1.0, -1.0), vec2(1.0, 1.0)};
  return c;
}

FractalConfig sierpinski_fat_config() {
  FractalConfig c;
  c.name = "sierpinski-fat";
  c.dimension = 2;
  const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
  const double height = std::sqrt(3.0) / 2.0;
  for (const Vector& vertex : {vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(0.5, height)}) {
    c.maps.emplace_back(rho * Matrix::Identity(2, 2), (1.0 - rho) * vertex);
  }
  Vector mu(3);
  mu.setConstant(1.0 / 3.0);
  c.measure_weights = mu;
  c.box = {vec2(0.0, 0.0), vec2(1.0, height)};
  return c;
}

// Map coefficients after Gibbs, Hewett & Moiola (2023), Fig. 3: one central
// copy scaled by 1/sqrt(3) and rotated by 30 degrees, six copies scaled by
// 1/3 at the snowflake tips. Hausdorff dimension 2, so
// mu_l = rho_l^2 = (1/3, 1/9 x 6).
FractalConfig koch_snowflake_config() {
  FractalConfig c;
  c.name = "koch-snowflake";
  c.dimension = 2;
  c.maps.emplace_back((1.0 / std::sqrt(3.0)) * rotation(std::numbers::pi / 6.0),
                      vec2(0.0, 0.0));
  for (int k = 0; k < 6; ++k) {
    const double angle = k * std::numbers::pi / 3.0;
    c.maps.emplace_back((1.0 / 3.0) * Matrix::Identity(2, 2),
                        (2.0 / 3.0) * vec2(std::cos(angle), std::sin(angle)));
  }
  Vector mu(7);
  mu[0] = 1.0 / 3.0;
  for (int k = 1; k <= 6; ++k) mu[k] = 1.0 / 9.0;
  c.measure_weights = mu;
  return c;
}

// Map coefficients and weights from Barnsley, "Fractals Everywhere",
// Table 3.8.3 (the classic fern).
FractalConfig barnsley_fern_config() {
  FractalConfig c;
  c.name = "barnsley-fern";
  c.dimension = 2;
  Matrix a1(2, 2), a2(2, 2), a3(2, 2), a4(2, 2);
  a1 << 0.0, 0.0, 0.0, 0.16;
  a2 << 0.85, 0.04, -0.04, 0.85;
  a3 << 0.2, -0.26, 0.23, 0.22;
  a4 << -0.15, 0.28, 0.26, 0.24;
  c.maps.emplace_back(a1, vec2(0.0, 0.0));
  c.maps.emplace_back(a2, vec2(0.0, 1.6));
  c.maps.emplace_back(a3, vec2(0.0, 1.6));
  c.maps.emplace_back(a4, vec2(0.0, 0.44));
  Vector mu(4);
  mu << 0.01, 0.85, 0.07, 0.07;
  c.measure_weights = mu;
  return c;
}

bool parse_theta(const std::string& text, double& theta) {
  if (text == "pi/4") {
    theta = std::numbers::pi / 4.0;
    return true;
  }
  if (text == "pi/2") {
    theta = std::numbers::pi / 2.0;
    return true;
  }
  std::istringstream is(text);
  is >> theta;
  return static_cast<bool>(is) && is.eof();
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"cantor",         "cantor-dust",    "vicsek",        "vicsek:<theta>",
          "sierpinski-fat", "koch-snowflake", "barnsley-fern"};
}

FractalConfig gallery(const std::string& name, bool allow_external) {
  if (name == "cantor") return cantor_config();
  if (name == "cantor-dust") return cantor_dust_config();
  if (name == "vicsek") return vicsek_config(0.0);
  if (name.rfind("vicsek:", 0) == 0) {
    double theta = 0.0;
    if (!parse_theta(name.substr(7), theta)) {
      throw ValidationError("gallery: could not parse angle in \"" + name + "\"");
    }
    return vicsek_config(theta);
  }
  if (name == "sierpinski-fat") return sierpinski_fat_config();
  if (name == "koch-snowflake" || name == "barnsley-fern") {
    if (!allow_external) {
      throw ValidationError(
          "gallery: " + name +
          " uses map coefficients from outside sources; pass --external-constants "
          "to enable it");
    }
    return name == "koch-snowflake" ? koch_snowflake_config() : barnsley_fern_config();
  }
  std::ostringstream os;
  os << "gallery: unknown system \"" << name << "\"; available:";
  for (const std::string& known : gallery_names()) os << " " << known;
  throw ValidationError(os.str());
}

}  // namespace fcub
