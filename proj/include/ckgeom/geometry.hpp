#pragma once

#include <array>
#include <utility>

#include "ckgeom/measure.hpp"
#include "ckgeom/projective.hpp"

namespace ckgeom {

enum class GeometryKind { Hyperbolic, Elliptic, Parabolic };

const char* geometry_kind_name(GeometryKind k);

/// A fundamental conic bundled with measure constants: the unit on which all
/// distances and angles are evaluated.
///
/// Canonical instances: unit-circle absolute with c = 1/2 (curvature -1),
/// imaginary circle with c = i/2 (curvature +1), and the circular-point pair
/// for the parabolic case. Immutable after construction.
class CKGeometry {
 public:
  static CKGeometry hyperbolic();
  static CKGeometry elliptic();
  static CKGeometry euclidean(double scale = 1.0);

  /// Geometry over an arbitrary nondegenerate conic; kind derived from the
  /// conic class, constants validated against it.
  static CKGeometry custom(const Conic& conic, const MeasureConstants& constants);

  GeometryKind kind() const { return kind_; }
  const Conic& conic() const { return conic_; }
  const DualConic& dual() const { return dual_; }
  const MeasureConstants& constants() const { return constants_; }
  double parabolic_scale() const { return scale_.scale; }

  /// The conjugate point pair carried by the parabolic absolute.
  std::pair<HomPoint, HomPoint> circular_points() const;

  /// Sign that orients the conic to signature (2,1) / positive definite.
  double conic_sign() const { return sigma_; }
  /// Adjugate of the dual matrix (used for stable dual discriminants).
  const Mat3d& dual_adjugate() const { return dual_adj_; }

 private:
  CKGeometry(GeometryKind kind, Conic conic, DualConic dual, MeasureConstants constants,
             ParabolicScale scale);

  GeometryKind kind_;
  Conic conic_;
  DualConic dual_;
  MeasureConstants constants_;
  ParabolicScale scale_;
  double sigma_;
  Mat3d dual_adj_;
};

/// Geodesic between two admissible points together with the intersections of
/// its carrier line with the absolute (complex for an imaginary absolute).
struct GeodesicSegment {
  const CKGeometry* geometry;
  HomPoint start;
  HomPoint end;
  HomPoint chord_start;  // ideal / absolute element on the start side
  HomPoint chord_end;
};

bool point_admissible(const CKGeometry& g, const HomPoint& p);

double dist(const CKGeometry& g, const HomPoint& x, const HomPoint& y);

/// Unoriented angle between two lines meeting in an admissible point,
/// in [0, pi]; zero iff the lines coincide.
double angle(const CKGeometry& g, const HomLine& u, const HomLine& v);

/// Interior angle at `at` between the rays toward `to1` and `to2`, full
/// range [0, pi]. Representatives are canonicalized internally.
double vertex_angle(const CKGeometry& g, const HomPoint& at, const HomPoint& to1,
                    const HomPoint& to2);

GeodesicSegment make_geodesic(const CKGeometry& g, const HomPoint& x, const HomPoint& y);

/// Constant-speed point along the segment: dist(start, result) = t * length.
HomPoint geodesic_point(const GeodesicSegment& seg, double t);

/// True iff m maps the absolute to itself (congruence proportional to the
/// conic; for the parabolic case, additionally fixes the circular pair).
bool is_isometry(const CKGeometry& g, const Collineation& m);

/// Elliptic polarity check: (distance between points, angle between their
/// polar lines); the two agree when c = c'.
std::pair<double, double> dual_distance_check(const CKGeometry& g, const HomPoint& x,
                                              const HomPoint& y);

double triangle_angle_sum(const CKGeometry& g, const HomPoint& a, const HomPoint& b,
                          const HomPoint& c);

/// Residuals of the law of cosines transferred from the sphere (sides
/// rescaled by the measure constant), one per vertex.
struct TrigResiduals {
  std::array<double, 3> per_vertex;
  double max() const;
};

TrigResiduals trig_check(const CKGeometry& g, const HomPoint& a, const HomPoint& b,
                         const HomPoint& c);

/// The two lines through p meeting l on the absolute (hyperbolic only).
std::pair<HomLine, HomLine> parallels_through_point(const CKGeometry& g, const HomLine& l,
                                                    const HomPoint& p);

/// Hyperbolic translation along the x-axis by distance t and rotation about
/// the origin: standard isometries used in tests and tiling.
Collineation hyperbolic_x_translation(double t);
Collineation rotation_about_origin(double theta);

/// Reflection across a line: harmonic homology with center at the pole.
Collineation reflection_in_line(const CKGeometry& g, const HomLine& axis);

}  // namespace ckgeom
