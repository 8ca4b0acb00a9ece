#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fcub/config.hpp"
#include "fcub/cubature.hpp"
#include "fcub/integrands.hpp"

namespace fcub {

struct ExperimentRow {
  double param = 0.0;           // degree N or mesh size h
  std::size_t m = 0;            // rule points or mesh words
  std::complex<double> value{0.0, 0.0};
  double abs_err = 0.0;         // against the reference value
  double rel_err = 0.0;
  double weight_l1 = 0.0;
  std::optional<double> eoc;    // order estimate between consecutive rows
  double runtime_s = 0.0;
};

struct ExperimentResult {
  std::string system;
  std::string integrand;
  std::vector<ExperimentRow> rows;
};

struct ReferenceConfig {
  int order = 14;           // rule exact on P_14, so the mesh error is O(h^15)
  double h_coarse = 0.0;    // <= 0 picks diameter / 4
  double ratio = 2.0;
  double tolerance = 1e-10; // on the two-mesh difference, relative to the value
};

struct ReferenceResult {
  std::complex<double> value{0.0, 0.0};
  double error_proxy = 0.0;  // |coarse - fine|
  double h_fine = 0.0;
  std::size_t words = 0;     // fine-mesh size
};

/// Two-mesh reference: the composite rule of order h^15 at h and h/ratio; the
/// finer value is returned and the difference reported as the error proxy.
/// Fails when the proxy exceeds tolerance * (1 + |value|).
ReferenceResult reference_value(const FractalSystem& system, const Integrand& f,
                                const ReferenceConfig& config = {});

/// One rule per degree in the ascending list; errors against the reference
/// (computed here unless supplied).
ExperimentResult converge_p(const FractalSystem& system, const Integrand& f,
                            const std::vector<int>& degrees,
                            std::optional<std::complex<double>> reference = {});

/// Composite rule exact on P_k swept over the descending h list, with the
/// estimated order between consecutive rows.
ExperimentResult converge_h(const FractalSystem& system, const Integrand& f,
                            int rule_order, const std::vector<double>& h_list,
                            std::optional<std::complex<double>> reference = {});

enum class EmitFormat { csv, plot_json };

/// CSV columns: param, m_or_words, value_re, value_im, abs_err, rel_err,
/// weight_l1, eoc, runtime_s; 17 significant digits so doubles round-trip.
/// The plot JSON holds the same columns as arrays keyed by name.
void emit(const ExperimentResult& result, EmitFormat format, std::ostream& out);
void emit(const ExperimentResult& result, EmitFormat format, const std::string& path);

/// Least-squares fit y ~ a + b * g(x); returns {a, b, relative residual}.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double relative_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fcub
