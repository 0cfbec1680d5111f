#include "ckgeom/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace ckgeom {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOnAbsoluteTol = 1e-13;

struct FormValues {
  Complex oxx, oyy, oxy;
  Complex disc;  // oxy^2 - oxx*oyy, computed cancellation-free
};

// Omega values with points at unit max-modulus so tolerances are scale-free.
// The discriminant uses the adjugate identity
//   oxy^2 - oxx oyy = -(x ^ y)^T adj(C) (x ^ y),
// which stays accurate where the raw difference of products cancels.
FormValues form_values(const Mat3d& unit_coeffs, const Mat3d& adj, const Vec3c& x,
                       const Vec3c& y) {
  Vec3c xn = proj_normalized(x);
  Vec3c yn = proj_normalized(y);
  Mat3c cmc = unit_coeffs.cast<Complex>();
  FormValues f;
  f.oxx = (xn.transpose() * cmc * xn)(0, 0);
  f.oyy = (yn.transpose() * cmc * yn)(0, 0);
  f.oxy = (xn.transpose() * cmc * yn)(0, 0);
  Vec3c u = xn.cross(yn);
  f.disc = -(u.transpose() * adj.cast<Complex>() * u)(0, 0);
  return f;
}

std::optional<double> best_candidate(std::initializer_list<Complex> cands) {
  std::optional<double> best;
  for (Complex v : cands) {
    double d;
    if (!detail::near_real_nonneg(v, &d)) continue;
    if (!best || d < *best) best = d;
  }
  return best;
}

double log_form_core(const FormValues& f, Complex cconst, Errc fail) {
  Complex s = std::sqrt(f.disc);
  if (std::abs(f.oxy) <= 1e-14 * std::max(1.0, std::abs(s))) {
    // Conjugate pair: the ratio is -1, half a full turn of the measure.
    return std::abs(cconst) * kPi;
  }
  Complex w = s / f.oxy;
  Complex t = std::atanh(w);  // (1/2) Log((1+w)/(1-w))
  auto best = best_candidate({2.0 * cconst * t, -2.0 * cconst * t});
  if (!best) raise(fail, "no real branch of the measure");
  return *best;
}

FormValues admissible_values(const detail::MeasureContext& ctx, const Vec3c& x, const Vec3c& y) {
  FormValues f = form_values(ctx.conic, ctx.adj, x, y);
  if (ctx.real_absolute) {
    double vxx = f.oxx.real();
    double vyy = f.oyy.real();
    if (std::abs(vxx) <= kOnAbsoluteTol || std::abs(vyy) <= kOnAbsoluteTol)
      raise(Errc::OnAbsolute, "point lies on the fundamental conic");
    if (vxx > 0 || vyy > 0)
      raise(Errc::PointNotAdmissible, "point lies outside the fundamental conic");
  }
  return f;
}

void require_real(const HomPoint& p) {
  if (!p.is_real()) throw std::invalid_argument("distance forms take real points");
}

}  // namespace

namespace detail {

bool near_real_nonneg(Complex v, double* out) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  if (std::abs(v.imag()) > 1e-8 * (1.0 + std::abs(v))) return false;
  if (v.real() < -1e-12) return false;
  *out = std::max(v.real(), 0.0);
  return true;
}

MeasureContext make_context(const Conic& c) {
  ConicClass cls = classify_conic(c);
  bool real_absolute;
  if (cls == ConicClass::RealNondegenerate) {
    real_absolute = true;
  } else if (cls == ConicClass::ImaginaryNondegenerate) {
    real_absolute = false;
  } else {
    raise(Errc::DegenerateConic, "distance forms need a nondegenerate conic");
  }

  // Orient so that a real absolute has signature (2,1) (interior form < 0)
  // and an imaginary one is positive definite.
  Eigen::SelfAdjointEigenSolver<Mat3d> es(c.m);
  int pos = (es.eigenvalues().array() > 0).count();
  double sigma = (pos >= 2) ? 1.0 : -1.0;

  MeasureContext ctx;
  ctx.conic = sigma * c.m / c.scale();
  ctx.adj = adjugate(ctx.conic);
  ctx.real_absolute = real_absolute;
  return ctx;
}

double log_distance(const MeasureContext& ctx, Complex c, const Vec3c& x, const Vec3c& y) {
  FormValues f = admissible_values(ctx, x, y);
  return log_form_core(f, c, Errc::PointNotAdmissible);
}

double arccos_distance(const MeasureContext& ctx, Complex c, const Vec3c& x, const Vec3c& y) {
  FormValues f = admissible_values(ctx, x, y);
  Complex root = std::sqrt(f.oxx * f.oyy);
  Complex w = f.oxy / root;
  const Complex i(0.0, 1.0);
  Complex t1 = std::acos(w);
  Complex t2 = std::acos(-w);
  Complex t3 = std::acos(i * w);
  Complex t4 = std::acos(-i * w);
  auto best = best_candidate({2.0 * i * c * t1, -2.0 * i * c * t1, 2.0 * i * c * t2,
                              -2.0 * i * c * t2, 2.0 * i * c * t3, -2.0 * i * c * t3,
                              2.0 * i * c * t4, -2.0 * i * c * t4});
  if (!best) raise(Errc::PointNotAdmissible, "no real branch of the arccos form");
  return *best;
}

double arcsin_distance(const MeasureContext& ctx, Complex c, const Vec3c& x, const Vec3c& y) {
  FormValues f = admissible_values(ctx, x, y);
  Complex root = std::sqrt(f.oxx * f.oyy);
  Complex w = std::sqrt(f.disc) / root;
  const Complex i(0.0, 1.0);
  Complex t1 = std::asin(w);
  Complex t2 = std::asin(i * w);
  auto best = best_candidate(
      {2.0 * i * c * t1, -2.0 * i * c * t1, 2.0 * i * c * t2, -2.0 * i * c * t2});
  if (!best) raise(Errc::PointNotAdmissible, "no real branch of the arcsin form");
  return *best;
}

}  // namespace detail

MeasureConstants::MeasureConstants(Complex point_constant, Complex angle_constant)
    : c(point_constant), c_prime(angle_constant) {
  if (std::abs(c) == 0.0 || std::abs(c_prime) == 0.0)
    throw std::invalid_argument("MeasureConstants: constants must be nonzero");
}

ParabolicScale::ParabolicScale(double s) : scale(s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("ParabolicScale: scale must be positive");
}

OmegaValues omega_form(const Conic& c, const HomPoint& x, const HomPoint& y) {
  Mat3c cm = c.m.cast<Complex>();
  OmegaValues o;
  o.omega_xx = (x.v.transpose() * cm * x.v)(0, 0);
  o.omega_yy = (y.v.transpose() * cm * y.v)(0, 0);
  o.omega_xy = (x.v.transpose() * cm * y.v)(0, 0);
  return o;
}

double distance_log_form(const Conic& c, const MeasureConstants& k, const HomPoint& x,
                         const HomPoint& y) {
  require_real(x);
  require_real(y);
  return detail::log_distance(detail::make_context(c), k.c, x.v, y.v);
}

double distance_arccos_form(const Conic& c, const MeasureConstants& k, const HomPoint& x,
                            const HomPoint& y) {
  require_real(x);
  require_real(y);
  return detail::arccos_distance(detail::make_context(c), k.c, x.v, y.v);
}

double distance_arcsin_form(const Conic& c, const MeasureConstants& k, const HomPoint& x,
                            const HomPoint& y) {
  require_real(x);
  require_real(y);
  return detail::arcsin_distance(detail::make_context(c), k.c, x.v, y.v);
}

double angle_measure(const DualConic& d, const MeasureConstants& k, const HomLine& u,
                     const HomLine& v) {
  if (!u.is_real() || !v.is_real())
    throw std::invalid_argument("angle_measure takes real lines");
  if (projectively_equal(u, v)) return 0.0;
  Mat3d unit = d.m / d.scale();
  FormValues f = form_values(unit, adjugate(unit), u.v, v.v);
  if (std::abs(f.oxx) <= kOnAbsoluteTol || std::abs(f.oyy) <= kOnAbsoluteTol)
    raise(Errc::DegenerateDual, "line is self-conjugate for the dual form");
  return log_form_core(f, k.c_prime, Errc::DegenerateDual);
}

double parabolic_distance(const ParabolicScale& s, const HomPoint& x, const HomPoint& y) {
  Vec2d ax = x.affine_coords();
  Vec2d ay = y.affine_coords();
  return s.scale * (ax - ay).norm();
}

double subdivision_measure(double lambda, double z, double z1, long n) {
  if (!(lambda > 0.0) || std::abs(lambda - 1.0) < 1e-15 || !std::isfinite(lambda))
    raise(Errc::InvalidLambda, "lambda must be positive and != 1");
  if (!(z > 0.0) || !(z1 > 0.0) || n < 1)
    raise(Errc::InvalidLambda, "points must be positive, n >= 1");

  double ratio = z / z1;
  if (ratio == 1.0) return 0.0;

  // Largest k with lambda^(k/n) <= ratio, located purely by multiplicative
  // comparisons. Mirror so the base exceeds 1; this preserves the value of
  // floor(n log_lambda ratio).
  const double slack = 1.0 + 1e-13;
  double base = lambda;
  double target = ratio;
  if (base < 1.0) {
    base = 1.0 / base;
    target = 1.0 / target;
  }
  auto step_le = [&](long k) {
    return std::pow(base, static_cast<double>(k) / static_cast<double>(n)) <= target * slack;
  };

  long k;
  if (step_le(0)) {
    long hi = 1;
    while (step_le(hi)) {
      hi *= 2;
      if (hi > (1L << 52)) raise(Errc::InvalidLambda, "measure out of range");
    }
    long lo = hi / 2;  // step_le(lo) holds, step_le(hi) fails
    while (hi - lo > 1) {
      long mid = lo + (hi - lo) / 2;
      (step_le(mid) ? lo : hi) = mid;
    }
    k = lo;
  } else {
    long hi = -1;
    while (!step_le(hi)) {
      hi *= 2;
      if (hi < -(1L << 52)) raise(Errc::InvalidLambda, "measure out of range");
    }
    long lo = hi / 2;  // step_le(hi) holds, step_le(lo) fails
    while (lo - hi > 1) {
      long mid = hi + (lo - hi) / 2;
      (step_le(mid) ? hi : lo) = mid;
    }
    k = hi;
  }

  return static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace ckgeom
