#pragma once

#include <gmpxx.h>

#include <functional>
#include <vector>

#include "ellterm/arith.hpp"
#include "ellterm/gamma_afe.hpp"
#include "ellterm/lfunctions.hpp"

namespace ellterm::elliptic {

// Elliptic conjugacy class data for GL(2): trace m, determinant sign * p^k,
// delta = m^2 - 4 sign p^k split as s_gamma^2 * D_E with D_E fundamental.
struct EllipticClassGL2 {
  long long m = 0;
  int sign = 1;
  long long p = 2;
  int k = 1;
  long long det = 0;
  long long delta = 0;
  arith::DiscriminantDecomposition decomp;

  long long s_gamma() const { return decomp.s; }
  long long field_disc() const { return decomp.fund; }
  bool square_delta() const { return decomp.square; }
};

// Validates p prime, k >= 1, sign in {-1, +1}; throws on delta = 0 (central,
// not regular). Square delta is allowed here and flagged in decomp.
EllipticClassGL2 make_class(long long m, int sign, long long p, int k);

// All classes with |m| <= M, ascending m with sign +1 before -1. Square
// delta (non-elliptic) is skipped unless include_squares; delta = 0 always.
std::vector<EllipticClassGL2> enumerate_elliptic(long long p, int k, long long M,
                                                 bool include_squares = false);

// sum_{f | s_gamma} f prod_{q | f, q prime} (1 - chi_{D_E}(q)/q), exact.
mpq_class padic_orbital_product(const EllipticClassGL2& cls);

// L(1, chi_D) provider for a fundamental discriminant; lets callers pick the
// evaluation route (direct series, class number formula, AFE).
using LRoute = std::function<lfun::LValue(long long)>;

LRoute direct_route();                       // memoized direct series
LRoute cnf_route();                          // memoized class number formula
LRoute afe_route(afe::AFEConfig cfg = {});   // memoized AFE

struct Volume {
  double value = 0;
  double error = 0;
};

// sqrt|D_E| * L(1, chi_{D_E}); rejects square delta (the L-value degenerates
// to a pole there).
Volume volume(const EllipticClassGL2& cls, const LRoute& route);

// Both sides of the finite identity
//   sum'_{f : f^2 | delta, delta/f^2 = 0,1 (4)} (1/f) L(1, chi_{delta/f^2})
//     = (1/s_gamma) L(1, chi_{D_E}) sum_{f | s_gamma} f prod_{q|f}(1 - chi_{D_E}(q)/q).
// printed_form_ratio records sqrt|delta|, the factor separating this
// normalization from the same identity written with the volume folded in.
struct LfunSumReport {
  EllipticClassGL2 cls;
  double lhs = 0;
  double rhs = 0;
  double diff = 0;
  double err_bound = 0;  // summed rigorous bounds of the L-value evaluations
  double printed_form_ratio = 0;
  std::vector<long long> f_used;
  bool pass = false;
};

LfunSumReport verify_lfun_sum(const EllipticClassGL2& cls, double tol);

// Archimedean weight model: a callable of x = m / (2 p^{k/2}) with a declared
// singularity exponent and support radius.
struct ThetaModel {
  std::function<double(double)> weight;
  double beta = 0;
  double support_radius = 1;
};

ThetaModel bump_theta(double radius = 1);     // C^inf, compact support, value 1 at 0
ThetaModel gaussian_theta(double width = 1);  // unbounded support

struct EllipticTermGL2 {
  EllipticClassGL2 cls;
  double theta_x = 0;
  double theta_w = 0;
  mpq_class padic;
  double volume = 0;  // NaN for square delta
  double term = 0;    // (1/s) L(1, chi_{D_E}) theta padic; 0 for square delta
};

struct EllipticSumGL2 {
  std::vector<EllipticTermGL2> rows;
  double total = 0;
  double error = 0;
};

// Weighted sum over classes with |m| <= M. Square-delta rows (only present
// with include_squares) carry their exact arithmetic data but no volume term;
// reweighting them into a finite contribution is the residue-split path.
EllipticSumGL2 elliptic_sum_gl2(long long p, int k, const ThetaModel& theta,
                                const LRoute& route, long long M,
                                bool include_squares = false);

// The inner m-sum of the split form, computed directly and grouped by
// residues a mod 4 ell f^2 with the symbol (delta(a)/f^2 / ell) factored out.
// The two are the same finite sum reordered, so they agree to reassociation.
struct SplitCheck {
  double direct = 0;
  double grouped = 0;
  double diff = 0;
  long long residues_used = 0;  // admitted classes a with nonzero symbol
};

SplitCheck residue_split_check(long long ell, long long f, long long p, int k, int sign,
                               const std::function<double(long long)>& weight, long long M,
                               bool include_squares = true);

enum class KottwitzVariant { unramified, ramified_val1, ramified_val2 };

// Closed-form GL(3) orbital integral values, evaluated exactly as rationals.
// The closed form is integral at p = 2 and for ramified_val1 at every prime,
// but produces non-integral values at odd p for the other two variants; the
// verification suite reports this rather than renormalizing.
mpq_class kottwitz_gl3(long long p, int n, KottwitzVariant v);

}  // namespace ellterm::elliptic
