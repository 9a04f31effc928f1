#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ellterm::afe {

using cplx = std::complex<double>;

// Thrown when a gamma evaluation lands exactly on a pole (arguments at
// non-positive integers with positive exponent).
class gamma_pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Lanczos evaluation of Gamma(z), reflection used for Re z < 0.5.
// Relative error stays below 1e-12 for Re z in [-4, 10], |Im z| <= 100.
cplx gamma_complex(cplx z);

// Archimedean shape of a completed L-function:
//   gamma(s) = pi^(-d s (r1+r2)/2) * Gamma(s/2)^a * Gamma((s+1)/2)^b,
//   a = d_plus + d r2,  b = d_minus + d r2.
struct GammaShape {
  int d = 1;
  int d_plus = 0;
  int d_minus = 0;
  int r1 = 1;
  int r2 = 0;

  int a() const { return d_plus + d * r2; }
  int b() const { return d_minus + d * r2; }
  // Per-place eigenvalue counts add up to d per real place; the worked cubic
  // shape below does not satisfy this, so it is advisory, not enforced.
  bool real_place_consistent() const { return d_plus + d_minus == d * r1; }

  void validate() const;
};

GammaShape odd_quadratic_shape();   // d=1, d+=0, d-=1, r1=1, r2=0
GammaShape even_quadratic_shape();  // d=1, d+=1, d-=0, r1=1, r2=0
GammaShape cubic_galois_shape();    // d=2, d+=2, d-=0, r1=3, r2=0

// gamma(s) for the shape; throws gamma_pole_error when s/2 (a > 0) or
// (s+1)/2 (b > 0) is a non-positive integer.
cplx gamma_factor(const GammaShape& shape, cplx s);

// Leading Stirling modulus sqrt(2 pi) |t|^(sigma - 1/2) exp(-pi |t| / 2).
double stirling_gamma(double sigma, double t);

struct AFEConfig {
  double sigma0 = 3.0;       // contour abscissa, must stay > 0
  double T = 0;              // truncation height; 0 = choose from the decay rate
  double panel_width = 0.5;  // quadrature panel width on [0, T]
  int gl_points = 24;        // Gauss-Legendre nodes per panel
  double log_y_max = 10;     // |log y| the node layout is sized for
  double series_tol = 1e-12; // coefficient-sum stopping threshold
  long long n_max = 1000000; // hard cap on coefficient-sum length
  double X = 1.0;            // AFE balance parameter
  double eps_rho = 1.0;      // root number (real-character default)
  std::function<cplx(cplx)> G;  // test function on the contour; null means 1
};

// One vertical-contour Mellin kernel with y-independent data precomputed:
//   eval(y) = (1/2 pi i) Int_{(sigma0)} y^(-u) G(u) g(u) du
// where g(u) = gamma(s+u, shape)/gamma(s, shape) / u   (normalized, V_s)
// or    g(u) = gamma(1-s+u, shape) / u                 (combined, second term).
// The combined form keeps the second AFE term finite even where gamma(1-s)
// has a pole, since the epsilon-factor's gamma(1-s) cancels against the
// normalization of V_{1-s} before anything is evaluated.
class CutoffKernel {
 public:
  struct Eval {
    double value = 0;
    double trunc = 0;  // truncation estimate for the discarded |t| > T tail
    double noise = 0;  // roundoff estimate for the node sum
  };

  static CutoffKernel make_v(const GammaShape& shape, double s, const AFEConfig& cfg = {});
  static CutoffKernel make_combined(const GammaShape& shape, double s, const AFEConfig& cfg = {});

  Eval eval(double y) const;
  double tmax() const { return tmax_; }
  double sigma0() const { return sigma0_; }

 private:
  CutoffKernel() = default;
  static CutoffKernel build(const GammaShape& shape, double s, bool combined,
                            const AFEConfig& cfg);

  double sigma0_ = 3;
  double tmax_ = 0;
  std::vector<double> t_;
  std::vector<cplx> gv_;
  double tail_coef_ = 0;
  double abs_sum_ = 0;
};

// V_s(y) with error estimates; builds a kernel per call, so sweeps over many
// y should construct a CutoffKernel once instead.
CutoffKernel::Eval cutoff_V(const GammaShape& shape, double s, double y,
                            const AFEConfig& cfg = {});

struct DecayPoint {
  double y = 0;
  double v = 0;
  double weighted = 0;  // |v| * y^m
  double noise = 0;
};

struct DecayReport {
  int m = 0;
  double sup_weighted = 0;
  double argmax_y = 0;
  bool finite = false;
  bool tail_decreasing = false;  // past the peak, up to the roundoff floor
  std::vector<DecayPoint> points;
};

DecayReport decay_check(const GammaShape& shape, double s, int m,
                        const std::vector<double>& y_grid, const AFEConfig& cfg = {});

struct AFEResult {
  double value = 0;
  double error = 0;  // truncation + tail + roundoff estimates, summed
  long long terms_first = 0;
  long long terms_second = 0;
  bool truncated = false;  // n_max hit before the stopping rule
};

using CoefficientFn = std::function<double(long long)>;

// Second AFE term by the combined kernel:
//   eps_rho q^(1/2-s) / gamma(s) * sum_n lambda(n) n^(s-1) K(n X / sqrt q).
AFEResult afe_second_term(const GammaShape& shape, double s, long long q,
                          const CoefficientFn& lambda, const AFEConfig& cfg = {});

// Reference form eps(s) sum_n lambda(n) n^(s-1) V_{1-s}(n X / sqrt q); throws
// gamma_pole_error where gamma(1-s) poles. Kept for cross-checks only.
AFEResult afe_second_term_reference(const GammaShape& shape, double s, long long q,
                                    const CoefficientFn& lambda, const AFEConfig& cfg = {});

// Full approximate functional equation at real s in (0, 1]:
//   sum_n lambda(n) n^-s V_s(n/(X sqrt q)) + second term as above.
AFEResult afe_evaluate(const GammaShape& shape, double s, long long q,
                       const CoefficientFn& lambda, const AFEConfig& cfg = {});

// L(s, chi_D) for a fundamental discriminant D via the AFE; shape picked by
// the sign of D, lambda(n) = kronecker(D, n), q = |D|.
AFEResult afe_quadratic(long long D, double s, const AFEConfig& cfg = {});

}  // namespace ellterm::afe
