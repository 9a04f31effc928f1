#include "ellterm/gamma_afe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ellterm/arith.hpp"

namespace ellterm::afe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.22e-16;

bool nonpositive_integer(cplx z) {
  return z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real());
}

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
// Good to ~1e-14 relative over the tested strip.
const double kLanczosG = 607.0 / 128.0;
const double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

cplx gamma_positive_half(cplx z) {
  // valid for Re z >= 0.5
  cplx w = z - 1.0;
  cplx acc = kLanczos[0];
  for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (w + static_cast<double>(k));
  cplx t = w + kLanczosG + 0.5;
  return std::sqrt(2 * kPi) * std::pow(t, w + 0.5) * std::exp(-t) * acc;
}

// n-point Gauss-Legendre rule on [-1, 1], by Newton on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0);
  w.assign(static_cast<std::size_t>(n), 0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1 - z * z) * pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
}

}  // namespace

cplx gamma_complex(cplx z) {
  if (nonpositive_integer(z)) throw gamma_pole_error("gamma_complex: pole at non-positive integer");
  if (z.real() >= 0.5) return gamma_positive_half(z);
  // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
  return kPi / (std::sin(kPi * z) * gamma_positive_half(1.0 - z));
}

void GammaShape::validate() const {
  if (d < 1 || d_plus < 0 || d_minus < 0 || r1 < 0 || r2 < 0 || r1 + r2 < 1)
    throw std::invalid_argument("GammaShape: invalid field values");
}

GammaShape odd_quadratic_shape() { return {1, 0, 1, 1, 0}; }
GammaShape even_quadratic_shape() { return {1, 1, 0, 1, 0}; }
GammaShape cubic_galois_shape() { return {2, 2, 0, 3, 0}; }

cplx gamma_factor(const GammaShape& shape, cplx s) {
  shape.validate();
  const int a = shape.a(), b = shape.b();
  if (a > 0 && nonpositive_integer(s / 2.0))
    throw gamma_pole_error("gamma_factor: Gamma(s/2) pole");
  if (b > 0 && nonpositive_integer((s + 1.0) / 2.0))
    throw gamma_pole_error("gamma_factor: Gamma((s+1)/2) pole");
  double c = 0.5 * shape.d * (shape.r1 + shape.r2);
  cplx res = std::exp(-c * s * std::log(kPi));
  if (a > 0) {
    cplx g = gamma_complex(s / 2.0);
    for (int i = 0; i < a; ++i) res *= g;
  }
  if (b > 0) {
    cplx g = gamma_complex((s + 1.0) / 2.0);
    for (int i = 0; i < b; ++i) res *= g;
  }
  return res;
}

double stirling_gamma(double sigma, double t) {
  if (t == 0) throw std::invalid_argument("stirling_gamma: t must be nonzero");
  double at = std::fabs(t);
  return std::sqrt(2 * kPi) * std::pow(at, sigma - 0.5) * std::exp(-kPi * at / 2);
}

CutoffKernel CutoffKernel::build(const GammaShape& shape, double s, bool combined,
                                 const AFEConfig& cfg) {
  shape.validate();
  if (!(cfg.sigma0 > 0)) throw std::invalid_argument("CutoffKernel: sigma0 must be > 0");
  if (!(cfg.panel_width > 0) || cfg.gl_points < 4)
    throw std::invalid_argument("CutoffKernel: bad quadrature parameters");
  const int ab = shape.a() + shape.b();
  if (ab < 1) throw std::invalid_argument("CutoffKernel: shape has no archimedean decay");

  const double shift = combined ? 1.0 - s : s;  // gamma evaluated at shift + u
  const cplx norm = combined ? cplx(1.0) : gamma_factor(shape, s);
  auto integrand = [&](cplx u) -> cplx {
    cplx g = gamma_factor(shape, shift + u) / (norm * u);
    if (cfg.G) g *= cfg.G(u);
    return g;
  };

  // Pick T so the |t| > T tail stays irrelevant across the design y-range.
  double T = cfg.T;
  const double tail_factor = 8.0 / (ab * kPi * kPi);
  if (T <= 0) {
    const double target = 1e-11 * std::exp(-cfg.sigma0 * cfg.log_y_max);
    for (T = 8; T < 240; T += 4) {
      if (std::abs(integrand(cplx(cfg.sigma0, T))) * tail_factor <= target) break;
    }
  }
  const int panels = std::max(1, static_cast<int>(std::ceil(T / cfg.panel_width)));
  T = panels * cfg.panel_width;

  std::vector<double> gx, gw;
  gauss_legendre(cfg.gl_points, gx, gw);

  CutoffKernel k;
  k.sigma0_ = cfg.sigma0;
  k.tmax_ = T;
  k.t_.reserve(static_cast<std::size_t>(panels) * gx.size());
  k.gv_.reserve(k.t_.capacity());
  const double half = cfg.panel_width / 2;
  for (int p = 0; p < panels; ++p) {
    const double mid = p * cfg.panel_width + half;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double t = mid + half * gx[i];
      const cplx gv = integrand(cplx(cfg.sigma0, t)) * (gw[i] * half);
      k.t_.push_back(t);
      k.gv_.push_back(gv);
      k.abs_sum_ += std::abs(gv);
    }
  }
  k.tail_coef_ = std::abs(integrand(cplx(cfg.sigma0, T))) * tail_factor;
  return k;
}

CutoffKernel CutoffKernel::make_v(const GammaShape& shape, double s, const AFEConfig& cfg) {
  return build(shape, s, false, cfg);
}

CutoffKernel CutoffKernel::make_combined(const GammaShape& shape, double s,
                                         const AFEConfig& cfg) {
  return build(shape, s, true, cfg);
}

CutoffKernel::Eval CutoffKernel::eval(double y) const {
  if (!(y > 0)) throw std::invalid_argument("CutoffKernel::eval: y must be positive");
  const double L = std::log(y);
  double sum = 0, comp = 0;  // compensated summation
  for (std::size_t j = 0; j < t_.size(); ++j) {
    const double ph = t_[j] * L;
    const double term = std::cos(ph) * gv_[j].real() + std::sin(ph) * gv_[j].imag();
    const double a = term - comp;
    const double b = sum + a;
    comp = (b - sum) - a;
    sum = b;
  }
  const double ypow = std::pow(y, -sigma0_);
  Eval e;
  e.value = sum * ypow / kPi;
  e.trunc = tail_coef_ * ypow;
  e.noise = 4 * kEps * abs_sum_ * ypow / kPi;
  return e;
}

CutoffKernel::Eval cutoff_V(const GammaShape& shape, double s, double y, const AFEConfig& cfg) {
  return CutoffKernel::make_v(shape, s, cfg).eval(y);
}

DecayReport decay_check(const GammaShape& shape, double s, int m,
                        const std::vector<double>& y_grid, const AFEConfig& cfg) {
  auto kernel = CutoffKernel::make_v(shape, s, cfg);
  std::vector<double> grid = y_grid;
  std::sort(grid.begin(), grid.end());

  DecayReport rep;
  rep.m = m;
  rep.finite = true;
  std::size_t argmax = 0;
  for (double y : grid) {
    auto e = kernel.eval(y);
    DecayPoint pt;
    pt.y = y;
    pt.v = e.value;
    pt.weighted = std::fabs(e.value) * std::pow(y, m);
    pt.noise = e.noise * std::pow(y, m);
    if (!std::isfinite(pt.v)) rep.finite = false;
    if (pt.weighted > rep.sup_weighted) {
      rep.sup_weighted = pt.weighted;
      rep.argmax_y = y;
      argmax = rep.points.size();
    }
    rep.points.push_back(pt);
  }
  rep.tail_decreasing = true;
  for (std::size_t i = argmax; i + 1 < rep.points.size(); ++i) {
    const auto& nxt = rep.points[i + 1];
    // an increase only counts against monotonicity when it clears the
    // roundoff floor of the quadrature
    if (nxt.weighted > rep.points[i].weighted && nxt.weighted > 20 * nxt.noise)
      rep.tail_decreasing = false;
  }
  return rep;
}

namespace {

struct SumOutcome {
  double acc = 0;
  double err = 0;
  long long terms = 0;
  bool truncated = false;
};

// Shared stopping rule: stop once the kernel value is below tol at two
// consecutive y >= 1 samples; the superpolynomial kernel decay makes the
// remaining tail comparable to the last retained term.
template <typename YFn, typename WFn>
SumOutcome coefficient_sum(const CutoffKernel& kernel, const CoefficientFn& lambda,
                           const AFEConfig& cfg, YFn y_of, WFn weight_of) {
  SumOutcome out;
  double maxlam = 0;
  int small_streak = 0;
  long long n = 1;
  for (; n <= cfg.n_max; ++n) {
    const double y = y_of(n);
    const auto e = kernel.eval(y);
    const double lam = lambda(n);
    const double w = weight_of(n);
    maxlam = std::max(maxlam, std::fabs(lam));
    out.acc += lam * w * e.value;
    out.err += (e.trunc + e.noise) * std::fabs(lam) * std::fabs(w);
    if (y >= 1.0 && std::fabs(e.value) <= cfg.series_tol) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
  }
  out.terms = std::min(n, cfg.n_max);
  if (n > cfg.n_max) out.truncated = true;
  out.err += cfg.series_tol * std::max(1.0, maxlam) * static_cast<double>(out.terms);
  return out;
}

AFEResult second_term_impl(const GammaShape& shape, double s, long long q,
                           const CoefficientFn& lambda, const AFEConfig& cfg, bool combined) {
  if (q < 1) throw std::invalid_argument("afe_second_term: conductor must be >= 1");
  const double sq = std::sqrt(static_cast<double>(q));
  double pref;
  CutoffKernel kernel = combined ? CutoffKernel::make_combined(shape, s, cfg)
                                 : CutoffKernel::make_v(shape, 1.0 - s, cfg);
  if (combined) {
    pref = cfg.eps_rho * std::pow(static_cast<double>(q), 0.5 - s) /
           gamma_factor(shape, s).real();
  } else {
    // eps(s) = eps_rho q^(1/2-s) gamma(1-s)/gamma(s); pole propagates by design
    pref = cfg.eps_rho * std::pow(static_cast<double>(q), 0.5 - s) *
           (gamma_factor(shape, 1.0 - s) / gamma_factor(shape, s)).real();
  }
  auto out = coefficient_sum(
      kernel, lambda, cfg, [&](long long n) { return n * cfg.X / sq; },
      [&](long long n) { return std::pow(static_cast<double>(n), s - 1.0); });
  AFEResult r;
  r.value = pref * out.acc;
  r.error = std::fabs(pref) * out.err;
  r.terms_second = out.terms;
  r.truncated = out.truncated;
  return r;
}

}  // namespace

AFEResult afe_second_term(const GammaShape& shape, double s, long long q,
                          const CoefficientFn& lambda, const AFEConfig& cfg) {
  return second_term_impl(shape, s, q, lambda, cfg, true);
}

AFEResult afe_second_term_reference(const GammaShape& shape, double s, long long q,
                                    const CoefficientFn& lambda, const AFEConfig& cfg) {
  return second_term_impl(shape, s, q, lambda, cfg, false);
}

AFEResult afe_evaluate(const GammaShape& shape, double s, long long q,
                       const CoefficientFn& lambda, const AFEConfig& cfg) {
  if (!(s > 0 && s <= 1)) throw std::invalid_argument("afe_evaluate: s must lie in (0, 1]");
  if (q < 1) throw std::invalid_argument("afe_evaluate: conductor must be >= 1");
  if (!(cfg.X > 0)) throw std::invalid_argument("afe_evaluate: X must be positive");
  const double sq = std::sqrt(static_cast<double>(q));
  auto vk = CutoffKernel::make_v(shape, s, cfg);
  auto first = coefficient_sum(
      vk, lambda, cfg, [&](long long n) { return n / (cfg.X * sq); },
      [&](long long n) { return std::pow(static_cast<double>(n), -s); });
  AFEResult second = afe_second_term(shape, s, q, lambda, cfg);

  AFEResult r;
  r.value = first.acc + second.value;
  r.error = first.err + second.error + 1e-14 * (1 + std::fabs(first.acc));
  r.terms_first = first.terms;
  r.terms_second = second.terms_second;
  r.truncated = first.truncated || second.truncated;
  return r;
}

AFEResult afe_quadratic(long long D, double s, const AFEConfig& cfg) {
  if (!arith::is_fundamental_discriminant(D))
    throw std::invalid_argument("afe_quadratic: D must be a fundamental discriminant");
  const GammaShape shape = D < 0 ? odd_quadratic_shape() : even_quadratic_shape();
  const long long q = D < 0 ? -D : D;
  return afe_evaluate(shape, s, q, [D](long long n) {
    return static_cast<double>(arith::kronecker(D, n));
  }, cfg);
}

}  // namespace ellterm::afe
