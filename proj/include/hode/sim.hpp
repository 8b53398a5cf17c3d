#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hode/ode_model.hpp"
#include "hode/rk_solver.hpp"
#include "hode/rksb.hpp"
#include "hode/rktb.hpp"
#include "hode/ts.hpp"

namespace hode {

struct StudyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularInformation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SplineMethodSettings {
  int m = 5;
  int kn = 3;
  int draws = 1000;
  TwoStepOptions options;
};

// Full study configuration. r_n = 0 means "use n grid points"; r_truth = 0
// means 16 times the effective r_n.
struct SimConfig {
  std::string model_name = "vdp";
  std::vector<double> theta0{1.0};
  double sigma0 = 0.1;
  int n = 100;
  int replications = 200;
  double level = 0.95;
  int r_n = 0;
  int r_truth = 0;
  std::uint64_t seed = 20260809;
  int workers = 0;  // 0 -> hardware concurrency
  bool with_rksb = true, with_rktb = true, with_ts = true, with_nls = true;
  RksbConfig rksb;
  SplineMethodSettings rktb{5, 3, 1000, {}};
  SplineMethodSettings ts{7, 2, 1000, {}};
  int nls_starts = 8;
};

int effective_r_n(const SimConfig& config);
int effective_r_truth(const SimConfig& config);

// The simulation-study configuration for sample size 100 or 500: theta0 = 1,
// sigma0 = 0.1, theta prior N(6,16), sigma^2 prior IG(99,1), r_n = n,
// RKTB m=5 with kn 3/4, TS m=7 with kn 2/3, desk-scale replication counts.
SimConfig table2_preset(int n);

struct Dataset {
  std::vector<double> x, y;
  std::shared_ptr<const GridSolution> truth;
};

// x_i ~ Uniform(0,1), y_i = truth(x_i) + N(0, sigma0^2), on the stream
// (seed, replication_index): all covariates are drawn first, then the noise.
// Passing a cached fine-grid truth avoids re-solving it per replication.
Dataset generate_dataset(const SimConfig& config, int replication_index,
                         std::shared_ptr<const GridSolution> cached_truth = nullptr);

struct MethodStats {
  std::string method;
  double coverage = 0.0;      // percent
  double coverage_se = 0.0;   // percentage points
  double mean_length = 0.0;
  double length_se = 0.0;
  int replications_used = 0;
  int failures = 0;
  int discarded_draws = 0;
  int multistart_disagreements = 0;
  int mixing_failures = 0;
  double wall_seconds = 0.0;
};

struct CoverageReport {
  std::vector<MethodStats> methods;
  int replications = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

// Binomial coverage aggregation: coverage = 100 p_hat with
// se = 100 sqrt(p_hat (1-p_hat) / R); length_se is the sample sd over
// replications divided by sqrt(R).
MethodStats aggregate_method(const std::string& name, const std::vector<int>& covered,
                             const std::vector<double>& lengths);

CoverageReport run_study(const SimConfig& config);

void write_report_csv(const CoverageReport& report, const std::string& path);
void write_report_json(const CoverageReport& report, const std::string& path);

// Limiting information matrix V and the theta block sigma_*^2 V^{-1} of the
// posterior covariance in the well-specified case.
struct AsymptoticBenchmark {
  Eigen::MatrixXd V_theta0;
  Eigen::MatrixXd sigma_theta_block;
  double sigma2_star = 0.0;

  // 2 * 1.96 * sqrt(block_jj / n): the large-n 95% interval length.
  double predicted_interval_length(int n, int coord = 0) const;
};

AsymptoticBenchmark asymptotic_benchmark(const OdeSystem& system,
                                         std::span<const double> theta0, double sigma0,
                                         const std::function<double(double)>& g_density,
                                         int r_n, const QuadratureRule& quad);

}  // namespace hode
