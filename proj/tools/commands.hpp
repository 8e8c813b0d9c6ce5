#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "output.hpp"
#include "qgs/bounds.hpp"

namespace qgs::cli {

struct Options {
  std::string graph;
  std::string sampling;
  std::string cover;
  std::string format = "json";
  std::string output;

  double lambda_max = 100.0;
  double step = 0.0;
  double gamma = -1.0;
  double rho = -1.0;
  double h = 1.0;
  double lambda = 0.0;
  double t = 1.0;
  double T = 1.0;
  double length = 1.0;
  double density = 0.5;
  int k = 2;
  int grid = 200;
  int max_order = 40;
  int samples = 2000;
  int terms = 5;
  int modes = 4;
  int depth = 3;
  std::uint64_t seed = 20240917;
  std::vector<std::string> dirichlet;
  std::vector<int> mode_list;
  std::string coefficients;
  std::string set;
  std::string function;
  bool with_functions = false;
  ObservabilityConstants constants;

  std::size_t audit_graphs = 100;
  std::size_t audit_trials = 100;
  double audit_lambda_max = 200.0;
  bool audit_classify = true;
};

Result run_spectrum(const Options& o);
Result run_torsion(const Options& o);

Result run_sampling_verify(const Options& o);
Result run_sampling_gamma(const Options& o);
Result run_sampling_rho(const Options& o);
Result run_sampling_gaps(const Options& o);

Result run_bound_thm21(const Options& o);
Result run_bound_thm26(const Options& o);
Result run_bound_cor72(const Options& o);
Result run_bound_trace(const Options& o);
Result run_bound_observability(const Options& o);
Result run_bound_torsion(const Options& o);

Result run_verify_ratio(const Options& o);
Result run_verify_derivative(const Options& o);
Result run_verify_classify(const Options& o);
Result run_verify_kovrijkine(const Options& o);
Result run_verify_local(const Options& o);
Result run_verify_optimality(const Options& o);
Result run_verify_observability(const Options& o);
Result run_verify_trace_ineq(const Options& o);
Result run_verify_lasso(const Options& o);

Result run_audit(const Options& o);

}  // namespace qgs::cli
