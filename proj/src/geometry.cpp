#include "ckgeom/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ckgeom {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The primary context cache lives outside CKGeometry so the public type stays
// copyable without exposing measure internals.
detail::MeasureContext context_for(const CKGeometry& g) {
  detail::MeasureContext ctx;
  ctx.conic = g.conic_sign() * g.conic().m / g.conic().scale();
  ctx.adj = adjugate(ctx.conic);
  ctx.real_absolute = (g.kind() == GeometryKind::Hyperbolic);
  return ctx;
}

Vec3d real_rep(const HomPoint& p) {
  Vec3c n = proj_normalized(p.v);
  if (n.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("expected a real point");
  return n.real();
}

Vec3d real_rep(const HomLine& l) {
  Vec3c n = proj_normalized(l.v);
  if (n.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("expected a real line");
  return n.real();
}

// Affine representative (third coordinate 1) where possible, else the
// unit-normalized one. Keeps ray orientations consistent across vertices.
Vec3d canonical_rep(const Vec3d& r) {
  if (std::abs(r[2]) > 1e-12) return r / r[2];
  return r;
}

double bilinear(const Mat3d& m, const Vec3d& a, const Vec3d& b) {
  return a.dot(m * b);
}

}  // namespace

const char* geometry_kind_name(GeometryKind k) {
  switch (k) {
    case GeometryKind::Hyperbolic: return "hyperbolic";
    case GeometryKind::Elliptic: return "elliptic";
    case GeometryKind::Parabolic: return "parabolic";
  }
  return "unknown";
}

CKGeometry::CKGeometry(GeometryKind kind, Conic conic, DualConic dual, MeasureConstants constants,
                       ParabolicScale scale)
    : kind_(kind), conic_(conic), dual_(dual), constants_(constants), scale_(scale) {
  Eigen::SelfAdjointEigenSolver<Mat3d> es(conic_.m);
  int pos = (es.eigenvalues().array() > 0).count();
  sigma_ = (pos >= 2) ? 1.0 : -1.0;
  Mat3d unit = dual_.m / dual_.scale();
  dual_adj_ = adjugate(unit);
}

CKGeometry CKGeometry::hyperbolic() {
  Conic c = Conic::unit_circle();
  return CKGeometry(GeometryKind::Hyperbolic, c, dual_of(c),
                    MeasureConstants(Complex(0.5, 0.0), Complex(0.0, 0.5)), ParabolicScale(1.0));
}

CKGeometry CKGeometry::elliptic() {
  Conic c = Conic::imaginary_circle();
  return CKGeometry(GeometryKind::Elliptic, c, dual_of(c),
                    MeasureConstants(Complex(0.0, 0.5), Complex(0.0, 0.5)), ParabolicScale(1.0));
}

CKGeometry CKGeometry::euclidean(double scale) {
  // Point conic: the doubled line at infinity; absolute in line coordinates:
  // the circular points (1, +-i, 0).
  Mat3d conic = Mat3d::Zero();
  conic(2, 2) = 1.0;
  Mat3d dual = Mat3d::Zero();
  dual(0, 0) = 1.0;
  dual(1, 1) = 1.0;
  return CKGeometry(GeometryKind::Parabolic, Conic(conic), DualConic(dual),
                    MeasureConstants(Complex(1.0, 0.0), Complex(0.0, 0.5)),
                    ParabolicScale(scale));
}

CKGeometry CKGeometry::custom(const Conic& conic, const MeasureConstants& constants) {
  ConicClass cls = classify_conic(conic);
  GeometryKind kind;
  if (cls == ConicClass::RealNondegenerate) {
    kind = GeometryKind::Hyperbolic;
    if (std::abs(constants.c.imag()) > 1e-12 * std::abs(constants.c))
      throw std::invalid_argument("real fundamental conic needs a real point constant");
  } else if (cls == ConicClass::ImaginaryNondegenerate) {
    kind = GeometryKind::Elliptic;
    if (std::abs(constants.c.real()) > 1e-12 * std::abs(constants.c))
      throw std::invalid_argument("imaginary fundamental conic needs an imaginary point constant");
  } else {
    raise(Errc::DegenerateConic, "custom geometries need a nondegenerate conic");
  }
  return CKGeometry(kind, conic, dual_of(conic), constants, ParabolicScale(1.0));
}

std::pair<HomPoint, HomPoint> CKGeometry::circular_points() const {
  if (kind_ != GeometryKind::Parabolic) raise(Errc::WrongKind, "no circular points on this kind");
  return {HomPoint(Complex(1.0), Complex(0.0, 1.0), Complex(0.0)),
          HomPoint(Complex(1.0), Complex(0.0, -1.0), Complex(0.0))};
}

bool point_admissible(const CKGeometry& g, const HomPoint& p) {
  if (!p.is_real()) return false;
  switch (g.kind()) {
    case GeometryKind::Hyperbolic:
      return point_position(g.conic(), p) == PointPosition::Interior;
    case GeometryKind::Elliptic:
      return true;
    case GeometryKind::Parabolic: {
      Vec3c n = proj_normalized(p.v);
      return std::abs(n[2]) > 1e-12;
    }
  }
  return false;
}

double dist(const CKGeometry& g, const HomPoint& x, const HomPoint& y) {
  if (!x.is_real() || !y.is_real()) throw std::invalid_argument("dist takes real points");
  if (g.kind() == GeometryKind::Parabolic)
    return parabolic_distance(ParabolicScale(g.parabolic_scale()), x, y);
  detail::MeasureContext ctx = context_for(g);
  return detail::log_distance(ctx, g.constants().c, x.v, y.v);
}

double angle(const CKGeometry& g, const HomLine& u, const HomLine& v) {
  if (projectively_equal(u, v)) return 0.0;
  if (g.kind() == GeometryKind::Hyperbolic) {
    HomPoint m = meet(u, v);
    if (m.is_real() && point_position(g.conic(), m) == PointPosition::Exterior)
      raise(Errc::PointNotAdmissible, "lines meet outside the absolute");
  }
  return angle_measure(g.dual(), g.constants(), u, v);
}

namespace {

double vertex_angle_reps(const CKGeometry& g, const Vec3d& at, const Vec3d& to1,
                         const Vec3d& to2) {
  Vec3d u = at.cross(to1);
  Vec3d v = at.cross(to2);
  double us = u.cwiseAbs().maxCoeff();
  double vs = v.cwiseAbs().maxCoeff();
  if (us < 1e-13 || vs < 1e-13) raise(Errc::CollinearVertices, "ray endpoints coincide");
  u /= us;
  v /= vs;
  const Mat3d& d = g.dual().m;
  double scale = g.dual().scale();
  double fuu = bilinear(d, u, u) / scale;
  double fvv = bilinear(d, v, v) / scale;
  double fuv = bilinear(d, u, v) / scale;
  if (std::abs(fuu) <= 1e-13 || std::abs(fvv) <= 1e-13)
    raise(Errc::DegenerateDual, "ray is self-conjugate for the dual form");
  double sgn = fuu > 0 ? 1.0 : -1.0;
  if (sgn * fvv <= 0.0) raise(Errc::DegenerateDual, "pencil form is not definite at the vertex");
  double cosv = sgn * fuv / std::sqrt(fuu * fvv * 1.0);
  cosv = std::clamp(cosv, -1.0, 1.0);
  return std::acos(cosv);
}

// One consistent set of representatives for a point triple: affine charts
// where available, relative signs fixed against the first point otherwise.
std::array<Vec3d, 3> canonical_triple(const CKGeometry& g, const HomPoint& a, const HomPoint& b,
                                      const HomPoint& c) {
  std::array<Vec3d, 3> r = {canonical_rep(real_rep(a)), canonical_rep(real_rep(b)),
                            canonical_rep(real_rep(c))};
  if (g.kind() == GeometryKind::Elliptic) {
    const Mat3d cm = g.conic_sign() * g.conic().m;
    for (int i = 1; i < 3; ++i) {
      if (bilinear(cm, r[0], r[i]) < 0) r[i] = -r[i];
    }
  }
  return r;
}

void require_triangle(const std::array<Vec3d, 3>& r) {
  Mat3d t;
  for (int i = 0; i < 3; ++i) t.row(i) = r[i].transpose() / r[i].cwiseAbs().maxCoeff();
  if (std::abs(t.determinant()) <= 1e-10) raise(Errc::CollinearVertices, "vertices are collinear");
}

}  // namespace

double vertex_angle(const CKGeometry& g, const HomPoint& at, const HomPoint& to1,
                    const HomPoint& to2) {
  auto r = canonical_triple(g, at, to1, to2);
  return vertex_angle_reps(g, r[0], r[1], r[2]);
}

GeodesicSegment make_geodesic(const CKGeometry& g, const HomPoint& x, const HomPoint& y) {
  if (!point_admissible(g, x) || !point_admissible(g, y))
    raise(Errc::PointNotAdmissible, "geodesic endpoints must be admissible");
  if (projectively_equal(x, y)) raise(Errc::CoincidentPoints, "geodesic needs distinct endpoints");

  if (g.kind() == GeometryKind::Parabolic) {
    HomLine carrier = line_through(x, y);
    HomPoint ideal = meet(carrier, HomLine(Complex(0), Complex(0), Complex(1)));
    return GeodesicSegment{&g, x, y, ideal, ideal};
  }

  auto [e1, e2] = line_conic_intersection(g.conic(), x, y);
  if (g.kind() == GeometryKind::Hyperbolic) {
    // Order the real chord ends so the first lies on the start side.
    Vec2d xa = x.affine_coords();
    Vec2d ya = y.affine_coords();
    Vec2d d = ya - xa;
    double s1 = (e1.affine_coords() - xa).dot(d);
    if (s1 > 0) std::swap(e1, e2);
  }
  return GeodesicSegment{&g, x, y, e1, e2};
}

HomPoint geodesic_point(const GeodesicSegment& seg, double t) {
  const CKGeometry& g = *seg.geometry;
  if (g.kind() == GeometryKind::Parabolic) {
    Vec2d a = seg.start.affine_coords();
    Vec2d b = seg.end.affine_coords();
    Vec2d p = a + t * (b - a);
    return HomPoint::affine(p[0], p[1]);
  }

  Vec3c b0 = proj_normalized(seg.chord_start.v);
  Vec3c b1 = proj_normalized(seg.chord_end.v);
  Eigen::Vector2cd cx = line_basis_coords(b0, b1, proj_normalized(seg.start.v));
  Eigen::Vector2cd cy = line_basis_coords(b0, b1, proj_normalized(seg.end.v));
  if (std::abs(cx[0]) < 1e-14 || std::abs(cy[0]) < 1e-14 || std::abs(cx[1]) < 1e-14 ||
      std::abs(cy[1]) < 1e-14)
    raise(Errc::PointNotAdmissible, "endpoint coincides with a chord end");
  Complex zx = cx[1] / cx[0];
  Complex zy = cy[1] / cy[0];
  Complex zp = zx * std::exp(t * std::log(zy / zx));
  Vec3c p = b0 + zp * b1;
  // Projectively real by construction; realify the representative.
  Vec3c n = proj_normalized(p);
  if (n.imag().cwiseAbs().maxCoeff() > 1e-8)
    raise(Errc::PointNotAdmissible, "interpolant left the real locus");
  return HomPoint(n.real().cast<Complex>().eval());
}

bool is_isometry(const CKGeometry& g, const Collineation& m) {
  if (!m.is_real(1e-9)) return false;
  Mat3d mm = m.m.real();
  Mat3d n = mm.transpose() * g.conic().m * mm;
  double denom = g.conic().m.squaredNorm();
  double lambda = (n.cwiseProduct(g.conic().m)).sum() / denom;
  double resid = (n - lambda * g.conic().m).norm();
  if (resid > 1e-9 * std::max(n.norm(), std::abs(lambda) * g.conic().m.norm())) return false;
  if (g.kind() == GeometryKind::Parabolic) {
    auto [i1, i2] = g.circular_points();
    HomPoint img = apply(m, i1);
    if (!projectively_equal(img, i1, 1e-9) && !projectively_equal(img, i2, 1e-9)) return false;
  }
  return true;
}

std::pair<double, double> dual_distance_check(const CKGeometry& g, const HomPoint& x,
                                              const HomPoint& y) {
  if (g.kind() != GeometryKind::Elliptic)
    raise(Errc::WrongKind, "polar duality check is defined for the elliptic kind");
  double d = dist(g, x, y);
  if (projectively_equal(x, y)) return {d, 0.0};
  HomLine u = polar(g.conic(), x);
  HomLine v = polar(g.conic(), y);
  double a = angle_measure(g.dual(), g.constants(), u, v);
  return {d, a};
}

double triangle_angle_sum(const CKGeometry& g, const HomPoint& a, const HomPoint& b,
                          const HomPoint& c) {
  auto r = canonical_triple(g, a, b, c);
  require_triangle(r);
  double sum = 0.0;
  sum += vertex_angle_reps(g, r[0], r[1], r[2]);
  sum += vertex_angle_reps(g, r[1], r[0], r[2]);
  sum += vertex_angle_reps(g, r[2], r[0], r[1]);
  return sum;
}

double TrigResiduals::max() const {
  return std::max({per_vertex[0], per_vertex[1], per_vertex[2]});
}

TrigResiduals trig_check(const CKGeometry& g, const HomPoint& a, const HomPoint& b,
                         const HomPoint& c) {
  auto r = canonical_triple(g, a, b, c);
  require_triangle(r);

  auto angle_at = [&](int i, int j, int k) { return vertex_angle_reps(g, r[i], r[j], r[k]); };
  std::array<double, 3> A = {angle_at(0, 1, 2), angle_at(1, 0, 2), angle_at(2, 0, 1)};

  TrigResiduals out{};
  if (g.kind() == GeometryKind::Parabolic) {
    auto at = [&](const Vec3d& v) { return Vec2d(v[0], v[1]); };
    double sa = (at(r[1]) - at(r[2])).norm() * g.parabolic_scale();
    double sb = (at(r[0]) - at(r[2])).norm() * g.parabolic_scale();
    double sc = (at(r[0]) - at(r[1])).norm() * g.parabolic_scale();
    std::array<double, 3> s = {sa, sb, sc};
    for (int i = 0; i < 3; ++i) {
      double o = s[i], p = s[(i + 1) % 3], q = s[(i + 2) % 3];
      double lhs = o * o;
      double rhs = p * p + q * q - 2 * p * q * std::cos(A[i]);
      out.per_vertex[i] = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
    }
    return out;
  }

  // Full-range side measures from the same representatives the angles use.
  const Mat3d cm = g.conic_sign() * g.conic().m / g.conic().scale();
  auto side = [&](int i, int j) {
    double fii = bilinear(cm, r[i], r[i]);
    double fjj = bilinear(cm, r[j], r[j]);
    double fij = bilinear(cm, r[i], r[j]);
    if (g.kind() == GeometryKind::Elliptic) {
      double w = std::clamp(fij / std::sqrt(fii * fjj), -1.0, 1.0);
      return std::acos(w);  // arc in units of the sphere angle
    }
    double w = std::abs(fij) / std::sqrt(fii * fjj);
    return std::acosh(std::max(w, 1.0));  // rapidity in curvature -1 units times 2c
  };
  // Sides opposite each vertex, rescaled by the measure constant.
  double k2 = 2.0 * std::abs(g.constants().c);
  std::array<double, 3> s = {side(1, 2), side(0, 2), side(0, 1)};
  // side() already returns d / (2|c|); the measure distance is k2 * s.
  (void)k2;

  for (int i = 0; i < 3; ++i) {
    double o = s[i], p = s[(i + 1) % 3], q = s[(i + 2) % 3];
    double lhs, rhs;
    if (g.kind() == GeometryKind::Elliptic) {
      lhs = std::cos(o);
      rhs = std::cos(p) * std::cos(q) + std::sin(p) * std::sin(q) * std::cos(A[i]);
    } else {
      lhs = std::cosh(o);
      rhs = std::cosh(p) * std::cosh(q) - std::sinh(p) * std::sinh(q) * std::cos(A[i]);
    }
    out.per_vertex[i] = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
  }
  return out;
}

std::pair<HomLine, HomLine> parallels_through_point(const CKGeometry& g, const HomLine& l,
                                                    const HomPoint& p) {
  if (g.kind() != GeometryKind::Hyperbolic) raise(Errc::WrongKind, "parallels need the hyperbolic kind");
  if (!point_admissible(g, p)) raise(Errc::PointNotAdmissible, "point must be interior");
  if (incident(l, p)) raise(Errc::PointOnLine, "point lies on the given line");

  // Two well-separated points on l.
  Vec3c u = proj_normalized(l.v);
  int skip = 0;
  double best = -1;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(u[i]) > best) {
      best = std::abs(u[i]);
      skip = i;
    }
  }
  HomPoint q1(Vec3c::Zero().eval()), q2(Vec3c::Zero().eval());
  int n = 0;
  for (int i = 0; i < 3 && n < 2; ++i) {
    if (i == skip) continue;
    Vec3c e = Vec3c::Zero();
    e[i] = 1.0;
    (n == 0 ? q1 : q2) = HomPoint(u.cross(e).eval());
    ++n;
  }
  auto [i1, i2] = line_conic_intersection(g.conic(), q1, q2);
  if (!i1.is_real(1e-8) || !i2.is_real(1e-8))
    raise(Errc::LineNotSecant, "line does not meet the absolute in real points");
  return {line_through(p, i1), line_through(p, i2)};
}

Collineation hyperbolic_x_translation(double t) {
  Mat3c m = Mat3c::Identity();
  m(0, 0) = std::cosh(t);
  m(0, 2) = std::sinh(t);
  m(2, 0) = std::sinh(t);
  m(2, 2) = std::cosh(t);
  return Collineation(m);
}

Collineation rotation_about_origin(double theta) {
  Mat3c m = Mat3c::Identity();
  m(0, 0) = std::cos(theta);
  m(0, 1) = -std::sin(theta);
  m(1, 0) = std::sin(theta);
  m(1, 1) = std::cos(theta);
  return Collineation(m);
}

Collineation reflection_in_line(const CKGeometry& g, const HomLine& axis) {
  Vec3d u = real_rep(axis);
  Mat3d adj = adjugate(g.conic().m);
  Vec3d s = adj * u;  // pole of the axis
  double pairing = u.dot(s);
  if (std::abs(pairing) <= 1e-13 * u.norm() * s.norm())
    raise(Errc::DegenerateDual, "axis is tangent to the absolute");
  Mat3d m = Mat3d::Identity() - 2.0 * (s * u.transpose()) / pairing;
  return Collineation(m.cast<Complex>().eval());
}

}  // namespace ckgeom
