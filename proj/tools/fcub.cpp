// Command-line front end: gallery systems, moment tables, cubature rules,
// word meshes, single integrals and convergence sweeps.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fcub/errors.hpp"
#include "fcub/experiment.hpp"
#include "fcub/moments.hpp"

namespace {

using namespace fcub;

std::string format17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

struct SystemOptions {
  std::string config_path;
  std::string gallery_name;
  bool external_constants = false;

  void attach(CLI::App* sub) {
    auto* config = sub->add_option("--config", config_path,
                                   "JSON system description (see README for the schema)");
    auto* from_gallery =
        sub->add_option("--gallery", gallery_name, "built-in system name");
    config->excludes(from_gallery);
    sub->add_flag("--external-constants", external_constants,
                  "enable gallery systems whose map coefficients come from "
                  "outside sources");
  }

  FractalSystem load() const {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open " + config_path);
      std::ostringstream text;
      text << in.rdbuf();
      return parse_config(text.str());
    }
    if (!gallery_name.empty()) {
      return realize(gallery(gallery_name, external_constants));
    }
    throw ValidationError("one of --config or --gallery is required");
  }
};

Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    double value = 0.0;
    if (!(is >> value)) throw ValidationError("cannot parse number \"" + item + "\"");
    values.push_back(value);
  }
  Vector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i];
  return out;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

Integrand make_integrand(const FractalSystem& system, double kappa,
                         const std::string& x0_text) {
  Vector x0 = x0_text.empty() ? default_source_point(system.ifs.dim())
                              : parse_vector(x0_text);
  if (x0.size() != system.ifs.dim()) {
    throw ValidationError("--x0 must have one coordinate per dimension");
  }
  return helmholtz_integrand(kappa, std::move(x0));
}

EmitFormat parse_format(const std::string& text) {
  if (text == "csv") return EmitFormat::csv;
  if (text == "json") return EmitFormat::plot_json;
  throw ValidationError("--format must be csv or json");
}

void run_gallery(const std::string& name, bool external, const std::string& out_path) {
  if (name.empty()) {
    for (const std::string& entry : gallery_names()) std::cout << entry << "\n";
    return;
  }
  const nlohmann::json j = gallery(name, external).to_json();
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    auto out = open_output(out_path);
    out << j.dump(2) << "\n";
    finish_output(out, out_path);
  }
}

void run_sample(const FractalSystem& system, int count, std::uint64_t seed,
                const std::string& out_path) {
  const auto points = chaos_sample(system.ifs, system.measure.weights(), count, seed);
  auto out = open_output(out_path);
  for (int axis = 0; axis < system.ifs.dim(); ++axis) {
    out << (axis > 0 ? "," : "") << "x" << axis + 1;
  }
  out << "\n";
  for (const Vector& p : points) {
    for (int axis = 0; axis < p.size(); ++axis) {
      out << (axis > 0 ? "," : "") << format17(p[axis]);
    }
    out << "\n";
  }
  finish_output(out, out_path);
  std::cout << "wrote " << points.size() << " points to " << out_path << "\n";
}

void run_moments(const FractalSystem& system, int degree, const std::string& out_path) {
  const MomentTable table = compute_moments(system.ifs, system.measure, degree);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    out = &file;
  }
  for (int axis = 0; axis < system.ifs.dim(); ++axis) {
    *out << "alpha" << axis + 1 << ",";
  }
  *out << "degree,value,residual\n";
  for (const auto& [alpha, value] : table.values()) {
    const int d = alpha.total_degree();
    for (int axis = 0; axis < alpha.dim(); ++axis) {
      *out << alpha.exponents[axis] << ",";
    }
    *out << d << "," << format17(value) << ","
         << format17(d == 0 ? 0.0 : table.residuals()[d - 1]) << "\n";
  }
  if (!out_path.empty()) {
    finish_output(file, out_path);
    std::cout << "wrote " << table.values().size() << " moments to " << out_path << "\n";
  }
}

void run_weights(const FractalSystem& system, int degree, const std::string& out_path,
                 const std::string& diag_path) {
  const TensorGrid grid = TensorGrid::chebyshev(system.box, degree);
  const CubatureRule rule = build_rule(system.ifs, system.measure, grid);
  {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
      file = open_output(out_path);
      out = &file;
    }
    for (int axis = 0; axis < system.ifs.dim(); ++axis) {
      *out << "x" << axis + 1 << ",";
    }
    *out << "weight\n";
    for (int i = 0; i < rule.size(); ++i) {
      for (int axis = 0; axis < system.ifs.dim(); ++axis) {
        *out << format17(rule.points[i][axis]) << ",";
      }
      *out << format17(rule.weights[i]) << "\n";
    }
    if (!out_path.empty()) finish_output(file, out_path);
  }
  nlohmann::json diag;
  diag["residual"] = rule.residual;
  diag["gap"] = rule.spectral_gap;
  diag["l1"] = rule.weight_l1();
  diag["points"] = rule.size();
  diag["gap_warning"] = rule.gap_warning;
  if (!diag_path.empty()) {
    auto out = open_output(diag_path);
    out << diag.dump(2) << "\n";
    finish_output(out, diag_path);
  }
  if (!out_path.empty()) {
    std::cout << "rule with " << rule.size() << " points: residual " << rule.residual
              << ", spectral gap " << rule.spectral_gap << ", |w|_1 "
              << rule.weight_l1() << "\n";
  }
  if (rule.gap_warning) {
    std::cerr << "warning: spectral gap " << rule.spectral_gap
              << " is too small to trust the eigenvector normalization\n";
  }
}

void run_mesh(const FractalSystem& system, double h, const std::string& out_path) {
  const Mesh mesh = build_mesh(system.ifs, system.measure, h, system.diameter);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    out = &file;
  }
  *out << "word,rho_m,mu_m\n";
  for (std::size_t m = 0; m < mesh.size(); ++m) {
    std::ostringstream word;
    for (std::size_t i = 0; i < mesh.words[m].letters.size(); ++i) {
      if (i > 0) word << "-";
      word << mesh.words[m].letters[i] + 1;
    }
    *out << word.str() << "," << format17(mesh.words[m].rho) << ","
         << format17(mesh.mu[m]) << "\n";
  }
  if (!out_path.empty()) {
    finish_output(file, out_path);
    std::cout << "wrote " << mesh.size() << " words (depth " << mesh.iterations
              << ") to " << out_path << "\n";
  }
}

void run_integrate(const FractalSystem& system, std::optional<int> degree,
                   std::optional<double> h, int order, double kappa,
                   const std::string& x0, const std::string& out_path) {
  const Integrand f = make_integrand(system, kappa, x0);
  std::complex<double> value;
  std::size_t points = 0;
  if (degree.has_value() == h.has_value()) {
    throw ValidationError("pass exactly one of --degree (p-version) or --h (h-version)");
  }
  if (degree.has_value()) {
    const CubatureRule rule = build_rule(system.ifs, system.measure,
                                         TensorGrid::chebyshev(system.box, *degree));
    value = apply_rule(rule, f);
    points = static_cast<std::size_t>(rule.size());
  } else {
    const CubatureRule rule = build_rule(system.ifs, system.measure,
                                         TensorGrid::chebyshev(system.box, order));
    const Mesh mesh = build_mesh(system.ifs, system.measure, *h, system.diameter);
    value = h_integrate(rule, mesh, system.ifs, f);
    points = mesh.size() * static_cast<std::size_t>(rule.size());
  }
  std::cout << f.name << " on " << system.name << ": " << format17(value.real())
            << " " << (value.imag() < 0 ? "-" : "+") << " "
            << format17(std::abs(value.imag())) << "i  (" << points
            << " evaluations)\n";
  if (!out_path.empty()) {
    auto out = open_output(out_path);
    out << "value_re,value_im,evaluations\n"
        << format17(value.real()) << "," << format17(value.imag()) << "," << points
        << "\n";
    finish_output(out, out_path);
  }
}

void emit_result(const ExperimentResult& result, const std::string& format,
                 const std::string& out_path) {
  const EmitFormat fmt = parse_format(format);
  if (out_path.empty()) {
    emit(result, fmt, std::cout);
  } else {
    emit(result, fmt, out_path);
    std::cout << "wrote " << result.rows.size() << " rows to " << out_path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Interpolatory cubature rules for invariant measures on attractors of "
      "affine iterated function systems"};
  app.require_subcommand(1);
  // --h is a real option on several subcommands, so help keeps only --help.
  app.set_help_flag("--help", "print help");
  const auto add_sub = [&app](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  SystemOptions sample_system, moments_system, weights_system, mesh_system,
      integrate_system, converge_p_system, converge_h_system;

  std::string gallery_pick, gallery_out;
  bool gallery_external = false;
  auto* cmd_gallery =
      add_sub("gallery", "list built-in systems or print one as JSON");
  cmd_gallery->add_option("name", gallery_pick, "system to print (omit to list)");
  cmd_gallery->add_option("--out", gallery_out, "write the JSON here");
  cmd_gallery->add_flag("--external-constants", gallery_external,
                        "enable systems with outside-source coefficients");

  int sample_count = 10000;
  std::uint64_t sample_seed = 42;
  std::string sample_out;
  auto* cmd_sample =
      add_sub("sample", "chaos-game points on the attractor (CSV)");
  sample_system.attach(cmd_sample);
  cmd_sample->add_option("--count", sample_count, "number of points");
  cmd_sample->add_option("--seed", sample_seed, "RNG seed");
  cmd_sample->add_option("--out", sample_out, "output CSV path")->required();

  int moments_degree = 8;
  std::string moments_out;
  auto* cmd_moments =
      add_sub("moments", "monomial moments of the invariant measure");
  moments_system.attach(cmd_moments);
  cmd_moments->add_option("--degree", moments_degree, "maximum total degree");
  cmd_moments->add_option("--out", moments_out, "output CSV path");

  int weights_degree = 8;
  std::string weights_out, weights_diag;
  auto* cmd_weights =
      add_sub("weights", "build the Q_N cubature rule on the box");
  weights_system.attach(cmd_weights);
  cmd_weights->add_option("--degree", weights_degree, "per-axis degree N");
  cmd_weights->add_option("--out", weights_out, "rule CSV (points and weights)");
  cmd_weights->add_option("--diag", weights_diag, "diagnostics JSON path");

  double mesh_h = 0.1;
  std::string mesh_out;
  auto* cmd_mesh = add_sub("mesh", "the word mesh L_h");
  mesh_system.attach(cmd_mesh);
  cmd_mesh->add_option("--h", mesh_h, "target diameter bound")->required();
  cmd_mesh->add_option("--out", mesh_out, "output CSV path");

  std::optional<int> integrate_degree;
  std::optional<double> integrate_h;
  int integrate_order = 6;
  double integrate_kappa = 5.0;
  std::string integrate_x0, integrate_out;
  auto* cmd_integrate = add_sub("integrate", "integrate the Helmholtz kernel by the p- or h-version");
  integrate_system.attach(cmd_integrate);
  cmd_integrate->add_option("--degree", integrate_degree, "p-version degree N");
  cmd_integrate->add_option("--h", integrate_h, "h-version mesh size");
  cmd_integrate->add_option("--order", integrate_order,
                            "h-version rule degree k (rule exact on P_k)");
  cmd_integrate->add_option("--kappa", integrate_kappa, "wavenumber");
  cmd_integrate->add_option("--x0", integrate_x0, "source point, comma-separated");
  cmd_integrate->add_option("--out", integrate_out, "write the value as CSV");

  std::string cp_degrees = "2:20", cp_x0, cp_out, cp_format = "csv";
  double cp_kappa = 5.0;
  auto* cmd_converge_p =
      add_sub("converge-p", "error sweep over the degree N");
  converge_p_system.attach(cmd_converge_p);
  cmd_converge_p->add_option("--degrees", cp_degrees, "range a:b or comma list");
  cmd_converge_p->add_option("--kappa", cp_kappa, "wavenumber");
  cmd_converge_p->add_option("--x0", cp_x0, "source point, comma-separated");
  cmd_converge_p->add_option("--out", cp_out, "output path (default stdout)");
  cmd_converge_p->add_option("--format", cp_format, "csv or json");

  int ch_order = 2;
  std::string ch_list, ch_x0, ch_out, ch_format = "csv";
  double ch_kappa = 5.0;
  auto* cmd_converge_h =
      add_sub("converge-h", "error sweep over the mesh size h");
  converge_h_system.attach(cmd_converge_h);
  cmd_converge_h->add_option("--order", ch_order, "rule degree k (exact on P_k)");
  cmd_converge_h->add_option("--h", ch_list, "descending comma list of h values")
      ->required();
  cmd_converge_h->add_option("--kappa", ch_kappa, "wavenumber");
  cmd_converge_h->add_option("--x0", ch_x0, "source point, comma-separated");
  cmd_converge_h->add_option("--out", ch_out, "output path (default stdout)");
  cmd_converge_h->add_option("--format", ch_format, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  try {
    if (cmd_gallery->parsed()) {
      run_gallery(gallery_pick, gallery_external, gallery_out);
    } else if (cmd_sample->parsed()) {
      run_sample(sample_system.load(), sample_count, sample_seed, sample_out);
    } else if (cmd_moments->parsed()) {
      run_moments(moments_system.load(), moments_degree, moments_out);
    } else if (cmd_weights->parsed()) {
      run_weights(weights_system.load(), weights_degree, weights_out, weights_diag);
    } else if (cmd_mesh->parsed()) {
      run_mesh(mesh_system.load(), mesh_h, mesh_out);
    } else if (cmd_integrate->parsed()) {
      run_integrate(integrate_system.load(), integrate_degree, integrate_h,
                    integrate_order, integrate_kappa, integrate_x0, integrate_out);
    } else if (cmd_converge_p->parsed()) {
      const FractalSystem system = converge_p_system.load();
      const Integrand f = make_integrand(system, cp_kappa, cp_x0);
      emit_result(converge_p(system, f, parse_degrees(cp_degrees)), cp_format, cp_out);
    } else if (cmd_converge_h->parsed()) {
      const FractalSystem system = converge_h_system.load();
      const Integrand f = make_integrand(system, ch_kappa, ch_x0);
      std::vector<double> h_values;
      const Vector parsed = parse_vector(ch_list);
      for (int i = 0; i < parsed.size(); ++i) h_values.push_back(parsed[i]);
      emit_result(converge_h(system, f, ch_order, h_values), ch_format, ch_out);
    }
  } catch (const ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 3;
  } catch (const IoError& err) {
    std::cerr << "i/o error: " << err.what() << "\n";
    return 4;
  } catch (const std::exception& err) {
    std::cerr << "unexpected error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
