#pragma once

#include "ckgeom/projective.hpp"

namespace ckgeom {

/// The pair of scaling constants of a projective measure: c for point
/// distances, c' for angles. Both nonzero; real over a real fundamental
/// conic, purely imaginary over an imaginary one.
struct MeasureConstants {
  Complex c;
  Complex c_prime;

  MeasureConstants(Complex point_constant, Complex angle_constant);
};

/// Values of the fundamental bilinear form at a pair of points.
struct OmegaValues {
  Complex omega_xx;
  Complex omega_yy;
  Complex omega_xy;
};

/// Constant factor of the degenerate (parabolic) distance.
struct ParabolicScale {
  double scale;
  explicit ParabolicScale(double s);
};

OmegaValues omega_form(const Conic& c, const HomPoint& x, const HomPoint& y);

/// Distance c * log((O_xy + sqrt(O_xy^2 - O_xx O_yy)) / (O_xy - sqrt(...))),
/// evaluated on the principal branch; returns the nonnegative real candidate.
double distance_log_form(const Conic& c, const MeasureConstants& k, const HomPoint& x,
                         const HomPoint& y);

/// Distance 2ic * arccos(O_xy / sqrt(O_xx O_yy)); equal to the log form on
/// the common domain.
double distance_arccos_form(const Conic& c, const MeasureConstants& k, const HomPoint& x,
                            const HomPoint& y);

/// Distance 2ic * arcsin(sqrt(O_xy^2 - O_xx O_yy) / sqrt(O_xx O_yy)).
double distance_arcsin_form(const Conic& c, const MeasureConstants& k, const HomPoint& x,
                            const HomPoint& y);

/// Angle between two real lines from the dual form, reduced to [0, pi]
/// (pencil total pi when c' = i/2).
double angle_measure(const DualConic& d, const MeasureConstants& k, const HomLine& u,
                     const HomLine& v);

/// Scaled Euclidean distance of the affine representatives.
double parabolic_distance(const ParabolicScale& s, const HomPoint& x, const HomPoint& y);

/// Measure assigned to (z1, z) on the model line with fundamental points
/// {0, inf} by counting n-th subdivision steps of the map z -> lambda z.
/// Converges to log(z/z1)/log(lambda) with error below 1/n.
double subdivision_measure(double lambda, double z, double z1, long n);

namespace detail {

/// Precomputed, sign-normalized conic data. Lets callers with a fixed
/// fundamental conic skip the per-call classification.
struct MeasureContext {
  Mat3d conic;  // sigma * coeffs / max|coeffs|; interior <=> form < 0
  Mat3d adj;    // adjugate of the normalized matrix
  bool real_absolute;
};

MeasureContext make_context(const Conic& c);

double log_distance(const MeasureContext& ctx, Complex c, const Vec3c& x, const Vec3c& y);
double arccos_distance(const MeasureContext& ctx, Complex c, const Vec3c& x, const Vec3c& y);
double arcsin_distance(const MeasureContext& ctx, Complex c, const Vec3c& x, const Vec3c& y);

bool near_real_nonneg(Complex v, double* out);

}  // namespace detail

}  // namespace ckgeom
