#pragma once

#include <functional>
#include <vector>

namespace ellterm::smooth {

// Discriminant of the degree-n integer characteristic polynomial as a
// function of the free coefficients, with the constant coefficient pinned:
//   n = 2: x -> x^2 - 4 a2            (one variable, the trace)
//   n = 3: (x1, x2) -> 18 a3 x1 x2 - 4 a3 x1^3 + x1^2 x2^2 - 4 x2^3 - 27 a3^2
class DiscMap {
 public:
  static DiscMap gl2(long long a2);
  static DiscMap gl3(long long a3);

  int degree() const { return n_; }
  int arity() const { return n_ - 1; }
  long long fixed_coeff() const { return an_; }

  double operator()(const std::vector<double>& x) const;
  std::vector<double> gradient(const std::vector<double>& x) const;
  long long eval_integer(const std::vector<long long>& x) const;  // exact

 private:
  DiscMap(int n, long long an) : n_(n), an_(an) {}
  int n_;
  long long an_;
};

// Cutoff profile phi with its polynomial decay order at +infinity: exact for
// the power profile, +infinity for the gaussian.
struct SmoothingCutoff {
  std::function<double(double)> phi;
  double decay_order = 0;
};

SmoothingCutoff gaussian_cutoff();        // exp(-x^2)
SmoothingCutoff power_cutoff(double M);   // (1 + |x|)^{-M}, exact order M

// f(x) = |D(x)|^{-beta} phi(|D(x)|^{-alpha}), extended by 0 across D = 0.
// Smooth extension needs decay_order * alpha - beta - 1 > 0; a spec violating
// it must say so explicitly (negative controls).
struct SmoothProbeSpec {
  DiscMap map;
  double beta = 0;
  double alpha = 0.5;
  SmoothingCutoff phi;
  bool allow_condition_violation = false;

  double condition_margin() const { return phi.decay_order * alpha - beta - 1.0; }
  void validate() const;
};

double probe_f(const SmoothProbeSpec& spec, const std::vector<double>& x);

struct RayDecay {
  std::vector<double> direction;
  std::vector<double> h;       // descending scales
  std::vector<double> value;   // f along point + h * direction
  bool monotone = false;       // nonincreasing as h shrinks
  double final_value = 0;
};

struct ValueDecayReport {
  std::vector<RayDecay> rays;
  bool all_monotone = false;
  double max_final = 0;
};

// Samples f along axis and diagonal rays out of `point` at the given scales
// (default 1e-1 .. 1e-6).
ValueDecayReport probe_value_decay(const SmoothProbeSpec& spec,
                                   const std::vector<double>& point,
                                   std::vector<double> scales = {});

// Finite-difference quotients at `point` with f(point) anchored to its
// defining value (0 on the singular set). Central differences alone can
// cancel across a sign-symmetric singularity, so the one-sided quotients are
// part of the probe; richardson combines central steps h and h/2.
struct DerivativeProbe {
  double h = 0;
  std::vector<double> central;
  std::vector<double> forward;
  std::vector<double> backward;
  std::vector<double> richardson;
  std::vector<double> second;   // only when order >= 2
  double mixed = 0;             // only when order >= 2 and arity = 2
  double max_first = 0;         // max |.| over first-order quotients
  double max_all = 0;
};

std::vector<DerivativeProbe> probe_derivatives(const SmoothProbeSpec& spec,
                                               const std::vector<double>& point,
                                               int order = 1,
                                               std::vector<double> steps = {});

}  // namespace ellterm::smooth
