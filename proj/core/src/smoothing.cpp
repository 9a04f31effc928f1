#include "ellterm/smoothing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ellterm::smooth {
namespace {

void check_arity(const DiscMap& map, std::size_t got) {
  if (got != static_cast<std::size_t>(map.arity()))
    throw std::invalid_argument("point arity does not match the map");
}

}  // namespace

DiscMap DiscMap::gl2(long long a2) { return DiscMap(2, a2); }

DiscMap DiscMap::gl3(long long a3) {
  if (a3 == 0) throw std::invalid_argument("constant coefficient must be nonzero");
  return DiscMap(3, a3);
}

double DiscMap::operator()(const std::vector<double>& x) const {
  check_arity(*this, x.size());
  double an = static_cast<double>(an_);
  if (n_ == 2) return x[0] * x[0] - 4.0 * an;
  double x1 = x[0], x2 = x[1];
  return 18.0 * an * x1 * x2 - 4.0 * an * x1 * x1 * x1 + x1 * x1 * x2 * x2 -
         4.0 * x2 * x2 * x2 - 27.0 * an * an;
}

std::vector<double> DiscMap::gradient(const std::vector<double>& x) const {
  check_arity(*this, x.size());
  double an = static_cast<double>(an_);
  if (n_ == 2) return {2.0 * x[0]};
  double x1 = x[0], x2 = x[1];
  return {18.0 * an * x2 - 12.0 * an * x1 * x1 + 2.0 * x1 * x2 * x2,
          18.0 * an * x1 + 2.0 * x1 * x1 * x2 - 12.0 * x2 * x2};
}

long long DiscMap::eval_integer(const std::vector<long long>& x) const {
  check_arity(*this, x.size());
  __int128 an = an_;
  __int128 d;
  if (n_ == 2) {
    __int128 x0 = x[0];
    d = x0 * x0 - 4 * an;
  } else {
    __int128 x1 = x[0], x2 = x[1];
    d = 18 * an * x1 * x2 - 4 * an * x1 * x1 * x1 + x1 * x1 * x2 * x2 -
        4 * x2 * x2 * x2 - 27 * an * an;
  }
  if (d > std::numeric_limits<long long>::max() || d < std::numeric_limits<long long>::min())
    throw std::overflow_error("discriminant overflows");
  return static_cast<long long>(d);
}

SmoothingCutoff gaussian_cutoff() {
  return {[](double x) { return std::exp(-x * x); },
          std::numeric_limits<double>::infinity()};
}

SmoothingCutoff power_cutoff(double M) {
  if (!(M > 0)) throw std::invalid_argument("decay order must be positive");
  return {[M](double x) { return std::pow(1.0 + std::fabs(x), -M); }, M};
}

void SmoothProbeSpec::validate() const {
  if (!(beta >= 0)) throw std::invalid_argument("beta must be >= 0");
  if (!(alpha > 0) || !(alpha <= 1)) throw std::invalid_argument("alpha must be in (0, 1]");
  if (!phi.phi) throw std::invalid_argument("cutoff profile not set");
  if (!(condition_margin() > 0) && !allow_condition_violation)
    throw std::invalid_argument(
        "decay condition violated: order * alpha - beta - 1 <= 0 "
        "(set allow_condition_violation for a negative control)");
}

double probe_f(const SmoothProbeSpec& spec, const std::vector<double>& x) {
  double d = std::fabs(spec.map(x));
  if (d == 0) return 0.0;
  return std::pow(d, -spec.beta) * spec.phi.phi(std::pow(d, -spec.alpha));
}

ValueDecayReport probe_value_decay(const SmoothProbeSpec& spec,
                                   const std::vector<double>& point,
                                   std::vector<double> scales) {
  spec.validate();
  check_arity(spec.map, point.size());
  if (scales.empty()) scales = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

  std::vector<std::vector<double>> dirs;
  if (spec.map.arity() == 1) {
    dirs = {{1.0}, {-1.0}};
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    dirs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {r, r}, {r, -r}, {-r, r}, {-r, -r}};
  }

  ValueDecayReport rep;
  rep.all_monotone = true;
  for (const auto& dir : dirs) {
    RayDecay ray;
    ray.direction = dir;
    ray.monotone = true;
    for (double h : scales) {
      std::vector<double> x = point;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += h * dir[i];
      double v = probe_f(spec, x);
      if (!ray.value.empty() && v > ray.value.back() * (1 + 1e-12) + 1e-300)
        ray.monotone = false;
      ray.h.push_back(h);
      ray.value.push_back(v);
    }
    ray.final_value = ray.value.back();
    rep.all_monotone = rep.all_monotone && ray.monotone;
    rep.max_final = std::max(rep.max_final, ray.final_value);
    rep.rays.push_back(std::move(ray));
  }
  return rep;
}

std::vector<DerivativeProbe> probe_derivatives(const SmoothProbeSpec& spec,
                                               const std::vector<double>& point,
                                               int order, std::vector<double> steps) {
  spec.validate();
  check_arity(spec.map, point.size());
  if (order < 1 || order > 2) throw std::invalid_argument("order must be 1 or 2");
  if (steps.empty()) steps = {1e-2, 1e-3, 1e-4, 1e-5};

  const std::size_t dim = point.size();
  const double f0 = probe_f(spec, point);
  auto at = [&](std::size_t i, double h, std::size_t j = 0, double h2 = 0) {
    std::vector<double> x = point;
    x[i] += h;
    if (h2 != 0) x[j] += h2;
    return probe_f(spec, x);
  };

  std::vector<DerivativeProbe> out;
  for (double h : steps) {
    DerivativeProbe pr;
    pr.h = h;
    for (std::size_t i = 0; i < dim; ++i) {
      double fp = at(i, h), fm = at(i, -h);
      double fp2 = at(i, h / 2), fm2 = at(i, -h / 2);
      double c = (fp - fm) / (2 * h);
      double c2 = (fp2 - fm2) / h;
      pr.central.push_back(c);
      pr.forward.push_back((fp - f0) / h);
      pr.backward.push_back((f0 - fm) / h);
      pr.richardson.push_back((4 * c2 - c) / 3);
      if (order >= 2) pr.second.push_back((fp - 2 * f0 + fm) / (h * h));
    }
    if (order >= 2 && dim == 2)
      pr.mixed = (at(0, h, 1, h) - at(0, h, 1, -h) - at(0, -h, 1, h) + at(0, -h, 1, -h)) /
                 (4 * h * h);
    for (std::size_t i = 0; i < dim; ++i) {
      double m = std::max(std::max(std::fabs(pr.central[i]), std::fabs(pr.richardson[i])),
                          std::max(std::fabs(pr.forward[i]), std::fabs(pr.backward[i])));
      pr.max_first = std::max(pr.max_first, m);
    }
    pr.max_all = pr.max_first;
    for (double s : pr.second) pr.max_all = std::max(pr.max_all, std::fabs(s));
    if (order >= 2 && dim == 2) pr.max_all = std::max(pr.max_all, std::fabs(pr.mixed));
    out.push_back(std::move(pr));
  }
  return out;
}

}  // namespace ellterm::smooth
