#include "fcub/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fcub/errors.hpp"

namespace fcub {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CubatureRule rule_of_degree(const FractalSystem& system, int degree) {
  return build_rule(system.ifs, system.measure,
                    TensorGrid::chebyshev(system.box, degree));
}

}  // namespace

ReferenceResult reference_value(const FractalSystem& system, const Integrand& f,
                                const ReferenceConfig& config) {
  const CubatureRule rule = rule_of_degree(system, config.order);
  // Anchor the default just below a power of rho_max: halving an arbitrary h
  // often leaves the mesh unchanged (the refinement depth only moves when h
  // crosses a contraction-product breakpoint).
  const double rho = system.ifs.rho_max();
  const double h0 = config.h_coarse > 0.0
                        ? config.h_coarse
                        : 0.999 * rho * rho * rho * system.diameter;
  double h1 = h0 / config.ratio;
  const Mesh coarse = build_mesh(system.ifs, system.measure, h0, system.diameter);
  Mesh fine = build_mesh(system.ifs, system.measure, h1, system.diameter);
  for (int retry = 0; retry < 4 && fine.size() == coarse.size(); ++retry) {
    h1 /= config.ratio;
    fine = build_mesh(system.ifs, system.measure, h1, system.diameter);
  }
  const std::complex<double> v0 = h_integrate(rule, coarse, system.ifs, f);
  const std::complex<double> v1 = h_integrate(rule, fine, system.ifs, f);

  ReferenceResult out;
  out.value = v1;
  out.error_proxy = std::abs(v1 - v0);
  out.h_fine = h1;
  out.words = fine.size();
  if (!(out.error_proxy <= config.tolerance * (1.0 + std::abs(v1)))) {
    std::ostringstream os;
    os << "reference_value: two-mesh error proxy " << out.error_proxy
       << " exceeds tolerance at h = " << h1
       << "; use a smaller h or a smoother integrand";
    throw NumericalError(os.str());
  }
  return out;
}

ExperimentResult converge_p(const FractalSystem& system, const Integrand& f,
                            const std::vector<int>& degrees,
                            std::optional<std::complex<double>> reference) {
  if (degrees.empty()) {
    throw ValidationError("converge_p: empty degree list");
  }
  for (std::size_t i = 1; i < degrees.size(); ++i) {
    if (degrees[i] <= degrees[i - 1]) {
      throw ValidationError("converge_p: degrees must be strictly ascending");
    }
  }
  const std::complex<double> ref =
      reference.has_value() ? *reference : reference_value(system, f).value;

  ExperimentResult result;
  result.system = system.name;
  result.integrand = f.name;
  for (int degree : degrees) {
    const auto start = std::chrono::steady_clock::now();
    const CubatureRule rule = rule_of_degree(system, degree);
    const std::complex<double> value = apply_rule(rule, f);
    ExperimentRow row;
    row.param = degree;
    row.m = static_cast<std::size_t>(rule.size());
    row.value = value;
    row.abs_err = std::abs(value - ref);
    row.rel_err = row.abs_err / std::max(std::abs(ref), 1e-300);
    row.weight_l1 = rule.weight_l1();
    row.runtime_s = seconds_since(start);
    result.rows.push_back(row);
  }
  return result;
}

ExperimentResult converge_h(const FractalSystem& system, const Integrand& f,
                            int rule_order, const std::vector<double>& h_list,
                            std::optional<std::complex<double>> reference) {
  if (h_list.empty()) {
    throw ValidationError("converge_h: empty h list");
  }
  for (std::size_t i = 1; i < h_list.size(); ++i) {
    if (h_list[i] >= h_list[i - 1]) {
      throw ValidationError("converge_h: h values must be strictly descending");
    }
  }
  const std::complex<double> ref =
      reference.has_value() ? *reference : reference_value(system, f).value;
  const CubatureRule rule = rule_of_degree(system, rule_order);

  ExperimentResult result;
  result.system = system.name;
  result.integrand = f.name;
  for (double h : h_list) {
    const auto start = std::chrono::steady_clock::now();
    const Mesh mesh = build_mesh(system.ifs, system.measure, h, system.diameter);
    const std::complex<double> value = h_integrate(rule, mesh, system.ifs, f);
    ExperimentRow row;
    row.param = h;
    row.m = mesh.size();
    row.value = value;
    row.abs_err = std::abs(value - ref);
    row.rel_err = row.abs_err / std::max(std::abs(ref), 1e-300);
    row.weight_l1 = rule.weight_l1();
    row.runtime_s = seconds_since(start);
    if (!result.rows.empty()) {
      const ExperimentRow& prev = result.rows.back();
      if (prev.abs_err > 0.0 && row.abs_err > 0.0) {
        row.eoc = std::log(prev.abs_err / row.abs_err) / std::log(prev.param / h);
      }
    }
    result.rows.push_back(row);
  }
  return result;
}

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void emit_csv(const ExperimentResult& result, std::ostream& out) {
  out << "param,M_or_words,value_re,value_im,abs_err,rel_err,weight_l1,eoc,runtime_s\n";
  for (const ExperimentRow& row : result.rows) {
    out << format_double(row.param) << "," << row.m << ","
        << format_double(row.value.real()) << "," << format_double(row.value.imag())
        << "," << format_double(row.abs_err) << "," << format_double(row.rel_err)
        << "," << format_double(row.weight_l1) << ","
        << (row.eoc.has_value() ? format_double(*row.eoc) : std::string()) << ","
        << format_double(row.runtime_s) << "\n";
  }
}

void emit_plot_json(const ExperimentResult& result, std::ostream& out) {
  using nlohmann::json;
  json j;
  j["system"] = result.system;
  j["integrand"] = result.integrand;
  const char* keys[] = {"param",   "M_or_words", "value_re", "value_im", "abs_err",
                        "rel_err", "weight_l1",  "eoc",      "runtime_s"};
  for (const char* key : keys) j[key] = json::array();
  for (const ExperimentRow& row : result.rows) {
    j["param"].push_back(row.param);
    j["M_or_words"].push_back(row.m);
    j["value_re"].push_back(row.value.real());
    j["value_im"].push_back(row.value.imag());
    j["abs_err"].push_back(row.abs_err);
    j["rel_err"].push_back(row.rel_err);
    j["weight_l1"].push_back(row.weight_l1);
    if (row.eoc.has_value()) {
      j["eoc"].push_back(*row.eoc);
    } else {
      j["eoc"].push_back(nullptr);
    }
    j["runtime_s"].push_back(row.runtime_s);
  }
  out << j.dump(2) << "\n";
}

}  // namespace

void emit(const ExperimentResult& result, EmitFormat format, std::ostream& out) {
  if (format == EmitFormat::csv) {
    emit_csv(result, out);
  } else {
    emit_plot_json(result, out);
  }
}

void emit(const ExperimentResult& result, EmitFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("emit: cannot open " + path + " for writing");
  }
  emit(result, format, out);
  out.flush();
  if (!out) {
    throw IoError("emit: write failed for " + path);
  }
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("fit_line: needs two same-length samples at least");
  }
  const double count = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = count * sxx - sx * sx;
  LineFit fit;
  fit.slope = (count * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / count;
  double err = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double predicted = fit.intercept + fit.slope * x[i];
    err += (y[i] - predicted) * (y[i] - predicted);
    norm += y[i] * y[i];
  }
  fit.relative_residual = norm > 0.0 ? std::sqrt(err / norm) : 0.0;
  return fit;
}

}  // namespace fcub
