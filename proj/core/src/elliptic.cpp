#include "ellterm/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace ellterm::elliptic {
namespace {

void require_prime(long long p) {
  if (p < 2) throw std::invalid_argument("p must be a prime");
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("p must be a prime: " + std::to_string(p));
}

long long delta_of(long long m, long long det) {
  __int128 d = static_cast<__int128>(m) * m - 4 * static_cast<__int128>(det);
  if (d > std::numeric_limits<long long>::max() || d < std::numeric_limits<long long>::min())
    throw std::overflow_error("discriminant overflows");
  return static_cast<long long>(d);
}

// Memoizing wrapper shared by the route factories; safe under concurrent use.
LRoute memoized(std::function<lfun::LValue(long long)> eval) {
  struct Cache {
    std::mutex mu;
    std::map<long long, lfun::LValue> values;
  };
  auto cache = std::make_shared<Cache>();
  return [cache, eval = std::move(eval)](long long d) {
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->values.find(d);
      if (it != cache->values.end()) return it->second;
    }
    lfun::LValue v = eval(d);
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->values.emplace(d, v);
    return v;
  };
}

lfun::LValue l_at_one(long long d) {
  lfun::QuadraticCharacter chi(d);
  return lfun::l_value_direct(chi, 1.0, lfun::default_series_length(chi.period()));
}

}  // namespace

EllipticClassGL2 make_class(long long m, int sign, long long p, int k) {
  require_prime(p);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  EllipticClassGL2 cls;
  cls.m = m;
  cls.sign = sign;
  cls.p = p;
  cls.k = k;
  cls.det = sign * arith::checked_pow(p, k);
  cls.delta = delta_of(m, cls.det);
  if (cls.delta == 0) throw std::invalid_argument("delta = 0: central element, not elliptic");
  cls.decomp = arith::decompose_discriminant(cls.delta);
  return cls;
}

std::vector<EllipticClassGL2> enumerate_elliptic(long long p, int k, long long M,
                                                 bool include_squares) {
  require_prime(p);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (M < 0) throw std::invalid_argument("M must be >= 0");
  std::vector<EllipticClassGL2> out;
  long long pk = arith::checked_pow(p, k);
  for (long long m = -M; m <= M; ++m) {
    for (int sign : {1, -1}) {
      long long delta = delta_of(m, sign * pk);
      if (delta == 0) continue;
      auto decomp = arith::decompose_discriminant(delta);
      if (decomp.square && !include_squares) continue;
      EllipticClassGL2 cls;
      cls.m = m;
      cls.sign = sign;
      cls.p = p;
      cls.k = k;
      cls.det = sign * pk;
      cls.delta = delta;
      cls.decomp = decomp;
      out.push_back(std::move(cls));
    }
  }
  return out;
}

mpq_class padic_orbital_product(const EllipticClassGL2& cls) {
  mpq_class total = 0;
  for (long long f : arith::divisors(cls.decomp.s)) {
    mpq_class term(static_cast<long>(f));
    for (const auto& [q, e] : arith::factorize(f)) {
      (void)e;
      int chi = arith::kronecker(cls.decomp.fund, q);
      term *= mpq_class(static_cast<long>(q - chi), static_cast<long>(q));
    }
    total += term;
  }
  total.canonicalize();
  return total;
}

LRoute direct_route() {
  return memoized([](long long d) { return l_at_one(d); });
}

LRoute cnf_route() {
  return memoized([](long long d) {
    return lfun::l_value_cnf(lfun::class_data(d));
  });
}

LRoute afe_route(afe::AFEConfig cfg) {
  return memoized([cfg](long long d) {
    auto r = afe::afe_quadratic(d, 1.0, cfg);
    return lfun::LValue{r.value, r.error};
  });
}

Volume volume(const EllipticClassGL2& cls, const LRoute& route) {
  if (cls.square_delta())
    throw std::invalid_argument("square delta has no finite volume: the L-value has a pole");
  lfun::LValue l = route(cls.field_disc());
  double root = std::sqrt(static_cast<double>(std::llabs(cls.field_disc())));
  return Volume{root * l.value, root * l.error};
}

LfunSumReport verify_lfun_sum(const EllipticClassGL2& cls, double tol) {
  if (cls.square_delta())
    throw std::invalid_argument("lfun-sum identity needs nonsquare delta");
  LfunSumReport rep;
  rep.cls = cls;

  long long delta = cls.delta;
  long long abs_delta = std::llabs(delta);
  for (long long f = 1; f * f <= abs_delta; ++f) {
    if (delta % (f * f) != 0) continue;
    long long t = delta / (f * f);
    long long r = ((t % 4) + 4) % 4;
    if (r > 1) continue;
    lfun::LValue lm = lfun::l_modified(t, 1.0, lfun::default_series_length(std::llabs(t)));
    rep.lhs += lm.value / static_cast<double>(f);
    rep.err_bound += lm.error / static_cast<double>(f);
    rep.f_used.push_back(f);
  }

  lfun::LValue l = l_at_one(cls.field_disc());
  mpq_class padic = padic_orbital_product(cls);
  double padic_d = padic.get_d();
  double s = static_cast<double>(cls.s_gamma());
  rep.rhs = l.value * padic_d / s;
  rep.err_bound += l.error * std::fabs(padic_d) / s;

  rep.diff = std::fabs(rep.lhs - rep.rhs);
  rep.printed_form_ratio = std::sqrt(static_cast<double>(abs_delta));
  rep.pass = rep.diff <= tol;
  return rep;
}

ThetaModel bump_theta(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
  ThetaModel t;
  t.support_radius = radius;
  t.weight = [radius](double x) {
    double u = x / radius;
    if (std::fabs(u) >= 1) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
  return t;
}

ThetaModel gaussian_theta(double width) {
  if (!(width > 0)) throw std::invalid_argument("width must be positive");
  ThetaModel t;
  t.support_radius = std::numeric_limits<double>::infinity();
  t.weight = [width](double x) {
    double u = x / width;
    return std::exp(-u * u);
  };
  return t;
}

EllipticSumGL2 elliptic_sum_gl2(long long p, int k, const ThetaModel& theta,
                                const LRoute& route, long long M, bool include_squares) {
  EllipticSumGL2 out;
  double phalf = std::pow(static_cast<double>(p), 0.5 * k);
  for (auto& cls : enumerate_elliptic(p, k, M, include_squares)) {
    EllipticTermGL2 row;
    row.theta_x = static_cast<double>(cls.m) / (2.0 * phalf);
    row.theta_w = theta.weight(row.theta_x);
    row.padic = padic_orbital_product(cls);
    if (cls.square_delta()) {
      row.volume = std::numeric_limits<double>::quiet_NaN();
      row.term = 0;
    } else {
      lfun::LValue l = route(cls.field_disc());
      double root = std::sqrt(static_cast<double>(std::llabs(cls.field_disc())));
      row.volume = root * l.value;
      double scale = row.theta_w * row.padic.get_d() / static_cast<double>(cls.s_gamma());
      row.term = l.value * scale;
      out.error += l.error * std::fabs(scale);
    }
    out.total += row.term;
    row.cls = std::move(cls);
    out.rows.push_back(std::move(row));
  }
  return out;
}

SplitCheck residue_split_check(long long ell, long long f, long long p, int k, int sign,
                               const std::function<double(long long)>& weight, long long M,
                               bool include_squares) {
  require_prime(p);
  if (ell < 1 || f < 1) throw std::invalid_argument("ell and f must be >= 1");
  if (k < 1 || M < 0) throw std::invalid_argument("k must be >= 1 and M >= 0");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");

  long long det = sign * arith::checked_pow(p, k);
  long long f2 = f * f;
  long long mod = 4 * ell * f2;

  // Condition and symbol depend only on m mod 4*ell*f^2: f^2 | delta and
  // delta/f^2 mod 4 shift by multiples of 4, and the symbol's argument by
  // multiples of 4*ell. Square delta is the one non-class condition, so with
  // include_squares = false those m are dropped from both sides pointwise.
  auto admit = [&](long long m) {
    long long delta = delta_of(m, det);
    if (delta % f2 != 0) return false;
    long long t = delta / f2;
    if ((((t % 4) + 4) % 4) > 1) return false;
    if (!include_squares && delta >= 0 &&
        (delta == 0 || arith::is_perfect_square(delta)))
      return false;
    return true;
  };

  SplitCheck out;
  std::vector<double> inner(static_cast<std::size_t>(mod), 0.0);
  for (long long m = -M; m <= M; ++m) {
    if (!admit(m)) continue;
    long long t = delta_of(m, det) / f2;
    out.direct += arith::kronecker(t, ell) * weight(m);
    long long a = ((m % mod) + mod) % mod;
    inner[static_cast<std::size_t>(a)] += weight(m);
  }
  for (long long a = 0; a < mod; ++a) {
    long long delta = delta_of(a, det);
    if (delta % f2 != 0) continue;
    long long t = delta / f2;
    if ((((t % 4) + 4) % 4) > 1) continue;
    int symbol = arith::kronecker(t, ell);
    if (symbol == 0) continue;
    ++out.residues_used;
    out.grouped += symbol * inner[static_cast<std::size_t>(a)];
  }
  out.diff = std::fabs(out.direct - out.grouped);
  return out;
}

mpq_class kottwitz_gl3(long long p, int n, KottwitzVariant v) {
  require_prime(p);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  mpz_class P(static_cast<long>(p));
  auto pw = [&](long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
  };
  mpz_class quad = P * P + P + 1;
  mpz_class num;
  switch (v) {
    case KottwitzVariant::unramified:
      num = pw(3 * n + 1) * (P + 1) * quad - 3 * pw(2 * n) * quad + 3;
      break;
    case KottwitzVariant::ramified_val1:
    case KottwitzVariant::ramified_val2: {
      long val = (v == KottwitzVariant::ramified_val1) ? 1 : 2;
      num = pw(3 * n + 1) * (P + 1) * pw(1 + val) -
            pw(2 * n) * (P * P + (P + 1) * pw(2 * val)) + 1;
      break;
    }
  }
  mpz_class den = (P - 1) * (P - 1) * (P + 1);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace ellterm::elliptic
