#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "ckgeom/errors.hpp"

namespace ckgeom {

using Complex = std::complex<double>;
using Vec2d = Eigen::Vector2d;
using Vec3d = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Mat3d = Eigen::Matrix3d;
using Mat3c = Eigen::Matrix3cd;

/// Point of the complex projective plane in homogeneous coordinates.
/// Coordinates are defined up to a nonzero complex factor; the all-zero
/// triple is rejected at construction.
struct HomPoint {
  Vec3c v;

  explicit HomPoint(const Vec3c& coords);
  HomPoint(Complex x1, Complex x2, Complex x3);

  /// Finite real point (x, y) as (x, y, 1).
  static HomPoint affine(double x, double y);

  /// Representative scaled so the coordinate of largest modulus equals 1.
  /// Makes tolerance checks scale-free and realifies projectively real points.
  HomPoint normalized() const;

  bool is_real(double tol = 1e-9) const;

  /// Affine chart coordinates (x1/x3, x2/x3) of a real finite point.
  Vec2d affine_coords() const;
};

/// Line of the projective plane in homogeneous line coordinates, with the
/// incidence pairing <u, x> = u1 x1 + u2 x2 + u3 x3.
struct HomLine {
  Vec3c v;

  explicit HomLine(const Vec3c& coords);
  HomLine(Complex u1, Complex u2, Complex u3);

  HomLine normalized() const;
  bool is_real(double tol = 1e-9) const;
};

/// Invertible 3x3 complex matrix acting on the projective plane.
struct Collineation {
  Mat3c m;

  explicit Collineation(const Mat3c& matrix);

  static Collineation identity();
  Collineation inverse() const;
  bool is_real(double tol = 1e-12) const;
};

/// Symmetric real 3x3 coefficient matrix of a point conic
/// sum a_ij x_i x_j = 0.
struct Conic {
  Mat3d m;

  explicit Conic(const Mat3d& coeffs);

  static Conic unit_circle();       // diag(1, 1, -1)
  static Conic imaginary_circle();  // diag(1, 1, 1)

  double scale() const;  // largest |coefficient|
};

/// Symmetric real 3x3 coefficient matrix of a conic in line coordinates.
/// For a nondegenerate point conic this is (proportional to) the adjugate.
struct DualConic {
  Mat3d m;

  explicit DualConic(const Mat3d& coeffs);
  double scale() const;
};

enum class ConicClass {
  RealNondegenerate,       // rank 3, signature (2,1)
  ImaginaryNondegenerate,  // rank 3, signature (3,0)
  DegeneratePointPair,     // rank 2, definite: conjugate point pair in dual form
  DegenerateLinePair,      // rank 2, indefinite: two real lines
  DoubleLine,              // rank 1
};

enum class PointPosition { Interior, OnConic, Exterior };

Vec3c proj_normalized(const Vec3c& v);

/// Coordinates (alpha, beta) of z = alpha b0 + beta b1 on the line spanned by
/// b0, b1, scaled to unit max-modulus.
Eigen::Vector2cd line_basis_coords(const Vec3c& b0, const Vec3c& b1, const Vec3c& z);

bool projectively_equal(const Vec3c& a, const Vec3c& b, double tol = 1e-12);
bool projectively_equal(const HomPoint& p, const HomPoint& q, double tol = 1e-12);
bool projectively_equal(const HomLine& l, const HomLine& m, double tol = 1e-12);

/// Adjugate (transposed cofactor matrix); well defined for singular input.
Mat3d adjugate(const Mat3d& m);

/// Cross ratio CR(x,y;a,b) = ((x-a)(y-b)) / ((x-b)(y-a)) of four collinear
/// points, evaluated through 2x2 determinants in a common affine
/// parametrization of the carrier line. Convention: CR(z, z'; 0, inf) = z/z'.
Complex cross_ratio(const HomPoint& x, const HomPoint& y, const HomPoint& a,
                    const HomPoint& b);

/// Cross ratio of four concurrent lines (dual pencil coordinates).
Complex cross_ratio(const HomLine& x, const HomLine& y, const HomLine& a,
                    const HomLine& b);

HomLine line_through(const HomPoint& p, const HomPoint& q);
HomPoint meet(const HomLine& l, const HomLine& m);

bool incident(const HomLine& l, const HomPoint& p, double tol = 1e-10);

ConicClass classify_conic(const Conic& c);
bool conic_nondegenerate(const Conic& c);

/// Polar line of a point (coeffs * p) with respect to a nondegenerate conic.
HomLine polar(const Conic& c, const HomPoint& p);
/// Pole of a line (adjugate * u); inverse of polar up to scale.
HomPoint pole(const Conic& c, const HomLine& u);

/// Bilinear form value x^T C y (no conjugation).
Complex conic_form(const Conic& c, const Vec3c& x, const Vec3c& y);
Complex dual_form(const DualConic& d, const Vec3c& u, const Vec3c& v);

/// The two (possibly complex, possibly coincident) intersection points of the
/// line through p and q with the conic, as roots of the restricted quadratic.
std::pair<HomPoint, HomPoint> line_conic_intersection(const Conic& c,
                                                      const HomPoint& p,
                                                      const HomPoint& q);

PointPosition point_position(const Conic& c, const HomPoint& p);

/// The two tangent lines to the conic through p: real distinct, complex
/// conjugate or coincident according to Exterior / Interior / OnConic.
std::pair<HomLine, HomLine> tangents_from_point(const Conic& c, const HomPoint& p);

HomPoint apply(const Collineation& g, const HomPoint& p);
/// Lines transform by the inverse transpose.
HomLine apply(const Collineation& g, const HomLine& u);
/// Conics transform by congruence with the inverse matrix; requires a real
/// collineation.
Conic apply(const Collineation& g, const Conic& c);

DualConic dual_of(const Conic& c);

}  // namespace ckgeom
