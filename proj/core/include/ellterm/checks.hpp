#pragma once

#include <string>
#include <vector>

#include "ellterm/elliptic.hpp"
#include "ellterm/gamma_afe.hpp"

namespace ellterm::checks {

// AFE evaluation against the direct series over fundamental |D| < d_limit,
// for each balance parameter X; the result must not depend on X.
struct AfeDirectRow {
  long long D = 0;
  double X = 1;
  double afe = 0;
  double direct = 0;
  double diff = 0;
};

struct AfeDirectReport {
  std::vector<AfeDirectRow> rows;
  double max_diff = 0;
  long long argmax_D = 0;
  double argmax_X = 1;
  double tol = 0;
  bool pass = false;
};

AfeDirectReport afe_direct_sweep(double s = 1.0, long long d_limit = 200,
                                 std::vector<double> X_values = {0.25, 1.0, 4.0},
                                 double tol = 1e-6, int parallelism = 1);

// Direct series, class-number-formula, and AFE values of L(1, chi_D) for
// every fundamental D in (d_min, d_max); all pairs must agree.
struct RouteClosureRow {
  long long D = 0;
  double direct = 0;
  double cnf = 0;
  double afe = 0;
  double max_pair_diff = 0;
};

struct RouteClosureReport {
  std::vector<RouteClosureRow> rows;
  double max_diff = 0;
  long long argmax_D = 0;
  double tol = 0;
  bool pass = false;
};

RouteClosureReport route_closure(long long d_min = -300, long long d_max = 100,
                                 double tol = 1e-5, int parallelism = 1);

// V_1 decay for both quadratic gamma shapes: weighted sup on [1, 50], the
// value at y = 50, and the flatness V_1 -> 1 as y -> 0.
struct DecayShapeResult {
  std::string shape;
  afe::DecayReport report;
  double v_at_50 = 0;
  double small_y_dev = 0;  // |V_1(1e-3) - 1|
  bool pass = false;
};

struct DecaySuiteReport {
  std::vector<DecayShapeResult> shapes;
  int m = 0;
  double v_tol = 0;
  double small_tol = 0;
  bool pass = false;
};

DecaySuiteReport decay_suite(int m = 4, double v_tol = 1e-6, double small_tol = 1e-2);

// |Gamma(sigma + it)| against the Stirling modulus with the stated relative
// error budget 2/|t|.
struct StirlingRow {
  double sigma = 0;
  double t = 0;
  double exact = 0;
  double approx = 0;
  double rel_err = 0;
  double bound = 0;
  bool ok = false;
};

struct StirlingReport {
  std::vector<StirlingRow> rows;
  double max_ratio = 0;  // rel_err / bound
  bool pass = false;
};

StirlingReport stirling_sweep(std::vector<double> sigmas = {0.5, 1.0, 2.0, 3.0},
                              double t_min = 10, double t_max = 100,
                              int points_per_sigma = 100);

// The finite L-function sum identity over a family of elliptic classes.
struct LfunSumRow {
  long long m = 0;
  int sign = 1;
  long long p = 2;
  int k = 1;
  long long delta = 0;
  double lhs = 0;
  double rhs = 0;
  double diff = 0;
  bool pass = false;
};

struct LfunSumSweep {
  std::vector<LfunSumRow> rows;
  double max_diff = 0;
  double tol = 0;
  bool pass = false;
};

LfunSumSweep lfun_sum_sweep(std::vector<long long> ps = {2, 3, 5}, int k_max = 3,
                            long long m_max = 30, double tol = 1e-4,
                            int parallelism = 1);

// Exact GL(3) orbital values: integral and positive across the sweep, plus
// two pinned spot values.
struct KottwitzRow {
  long long p = 2;
  int n = 1;
  std::string variant;
  std::string value;  // exact decimal (rational p/q if not integral)
  bool integral = false;
  bool positive = false;
};

struct KottwitzReport {
  std::vector<KottwitzRow> rows;
  bool spots_ok = false;
  bool pass = false;
};

KottwitzReport kottwitz_sweep(long long p_max = 50, int n_max = 6);

// Randomized residue-split reorderings; the two evaluations are the same
// finite sum, so they must match to float reassociation.
struct SplitRow {
  long long ell = 1;
  long long f = 1;
  long long p = 2;
  int k = 1;
  int sign = 1;
  long long M = 0;
  double direct = 0;
  double grouped = 0;
  double diff = 0;
  long long residues = 0;
};

struct SplitReport {
  std::vector<SplitRow> rows;
  unsigned seed = 0;
  double max_diff = 0;
  double tol = 0;
  bool pass = false;
};

SplitReport split_sweep(int count = 50, unsigned seed = 12345, double tol = 1e-12);

// Smoothing probes at singular points of the discriminant maps: gaussian
// cutoffs must flatten every quotient; the under-decaying power cutoff is a
// negative control whose one-sided quotients must blow up.
struct SmoothCase {
  int degree = 2;
  long long fixed = 1;
  std::vector<double> point;
  double beta = 0;
  double alpha = 0.5;
  std::string cutoff;
  double margin = 0;  // decay_order * alpha - beta - 1
  bool negative_control = false;
  double f_at_step = 0;
  double max_first = 0;
  bool pass = false;
};

struct SmoothReport {
  std::vector<SmoothCase> cases;
  double step = 0;
  double tol_positive = 0;
  double tol_negative = 0;
  bool pass = false;
};

SmoothReport smooth_suite(double step = 1e-5, double tol_positive = 1e-6,
                          double tol_negative = 1e-2);

}  // namespace ellterm::checks
