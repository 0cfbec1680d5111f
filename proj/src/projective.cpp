#include "ckgeom/projective.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ckgeom {

namespace {

int argmax_abs(const Vec3c& v) {
  int best = 0;
  double m = std::abs(v[0]);
  for (int i = 1; i < 3; ++i) {
    double a = std::abs(v[i]);
    if (a > m) {
      m = a;
      best = i;
    }
  }
  return best;
}

double max_abs(const Vec3c& v) { return v.cwiseAbs().maxCoeff(); }

void check_not_zero(const Vec3c& v, const char* what) {
  if (max_abs(v) == 0.0) throw std::invalid_argument(std::string(what) + ": zero coordinate triple");
  if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite coordinates");
}

Mat3d symmetric_part(const Mat3d& a, const char* what) {
  double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0 || !a.allFinite())
    throw std::invalid_argument(std::string(what) + ": zero or non-finite coefficients");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument(std::string(what) + ": coefficients not symmetric");
  return 0.5 * (a + a.transpose());
}

}  // namespace

HomPoint::HomPoint(const Vec3c& coords) : v(coords) { check_not_zero(v, "HomPoint"); }
HomPoint::HomPoint(Complex x1, Complex x2, Complex x3) : HomPoint(Vec3c(x1, x2, x3)) {}

HomPoint HomPoint::affine(double x, double y) { return HomPoint(Complex(x), Complex(y), Complex(1)); }

HomPoint HomPoint::normalized() const {
  Vec3c n = proj_normalized(v);
  return HomPoint(n);
}

bool HomPoint::is_real(double tol) const {
  Vec3c n = proj_normalized(v);
  return n.imag().cwiseAbs().maxCoeff() <= tol;
}

Vec2d HomPoint::affine_coords() const {
  Vec3c n = proj_normalized(v);
  if (std::abs(n[2]) <= 1e-12) raise(Errc::PointAtInfinity, "third coordinate vanishes");
  Complex x = n[0] / n[2];
  Complex y = n[1] / n[2];
  if (std::abs(x.imag()) > 1e-9 || std::abs(y.imag()) > 1e-9)
    throw std::invalid_argument("affine_coords: point is not real");
  return Vec2d(x.real(), y.real());
}

HomLine::HomLine(const Vec3c& coords) : v(coords) { check_not_zero(v, "HomLine"); }
HomLine::HomLine(Complex u1, Complex u2, Complex u3) : HomLine(Vec3c(u1, u2, u3)) {}

HomLine HomLine::normalized() const { return HomLine(proj_normalized(v)); }

bool HomLine::is_real(double tol) const {
  Vec3c n = proj_normalized(v);
  return n.imag().cwiseAbs().maxCoeff() <= tol;
}

Collineation::Collineation(const Mat3c& matrix) : m(matrix) {
  if (!m.allFinite()) throw std::invalid_argument("Collineation: non-finite matrix");
  double norm = m.cwiseAbs().maxCoeff();
  double det = std::abs(m.determinant());
  if (det <= 1e-12 * norm * norm * norm) raise(Errc::SingularMatrix, "determinant too small");
}

Collineation Collineation::identity() { return Collineation(Mat3c::Identity()); }

Collineation Collineation::inverse() const { return Collineation(m.inverse().eval()); }

bool Collineation::is_real(double tol) const {
  return m.imag().cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

Conic::Conic(const Mat3d& coeffs) : m(symmetric_part(coeffs, "Conic")) {}

Conic Conic::unit_circle() { return Conic(Vec3d(1, 1, -1).asDiagonal().toDenseMatrix()); }
Conic Conic::imaginary_circle() { return Conic(Mat3d::Identity()); }

double Conic::scale() const { return m.cwiseAbs().maxCoeff(); }

DualConic::DualConic(const Mat3d& coeffs) : m(symmetric_part(coeffs, "DualConic")) {}

double DualConic::scale() const { return m.cwiseAbs().maxCoeff(); }

Vec3c proj_normalized(const Vec3c& v) {
  int i = argmax_abs(v);
  if (std::abs(v[i]) == 0.0) throw std::invalid_argument("proj_normalized: zero triple");
  return v / v[i];
}

bool projectively_equal(const Vec3c& a, const Vec3c& b, double tol) {
  Vec3c na = proj_normalized(a);
  Vec3c nb = proj_normalized(b);
  return na.cross(nb).cwiseAbs().maxCoeff() <= tol;
}

bool projectively_equal(const HomPoint& p, const HomPoint& q, double tol) {
  return projectively_equal(p.v, q.v, tol);
}

bool projectively_equal(const HomLine& l, const HomLine& m, double tol) {
  return projectively_equal(l.v, m.v, tol);
}

Mat3d adjugate(const Mat3d& m) {
  Mat3d a;
  a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return a;
}

// Coordinates of z in the basis (b0, b1) of its carrier line, solved through
// the best-conditioned pair of coordinate rows.
Eigen::Vector2cd line_basis_coords(const Vec3c& b0, const Vec3c& b1, const Vec3c& z) {
  int bi = 0, bj = 1;
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      double d = std::abs(b0[i] * b1[j] - b0[j] * b1[i]);
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  Complex det = b0[bi] * b1[bj] - b0[bj] * b1[bi];
  if (std::abs(det) < 1e-14) raise(Errc::DegenerateQuadruple, "carrier line basis is degenerate");
  Complex alpha = (z[bi] * b1[bj] - z[bj] * b1[bi]) / det;
  Complex beta = (b0[bi] * z[bj] - b0[bj] * z[bi]) / det;
  Eigen::Vector2cd xi(alpha, beta);
  double m = xi.cwiseAbs().maxCoeff();
  if (m == 0.0) raise(Errc::DegenerateQuadruple, "point outside carrier line span");
  int k = std::abs(xi[0]) >= std::abs(xi[1]) ? 0 : 1;
  return xi / xi[k];
}

namespace {

Complex det2(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  return a[0] * b[1] - a[1] * b[0];
}

Complex cross_ratio_impl(const Vec3c& xv, const Vec3c& yv, const Vec3c& av, const Vec3c& bv) {
  std::array<Vec3c, 4> pts = {proj_normalized(xv), proj_normalized(yv), proj_normalized(av),
                              proj_normalized(bv)};

  // Collinearity of every triple, scale-free.
  for (int skip = 0; skip < 4; ++skip) {
    Mat3c t;
    int r = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == skip) continue;
      t.row(r++) = pts[i].transpose();
    }
    if (std::abs(t.determinant()) > 1e-10) raise(Errc::NonCollinear, "quadruple is not collinear");
  }

  // Basis: the most independent pair among the four points.
  int b0 = 0, b1 = 1;
  double best = -1.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      double d = pts[i].cross(pts[j]).cwiseAbs().maxCoeff();
      if (d > best) {
        best = d;
        b0 = i;
        b1 = j;
      }
    }
  }
  if (best < 1e-14) raise(Errc::DegenerateQuadruple, "all four points coincide");

  Eigen::Vector2cd cx = line_basis_coords(pts[b0], pts[b1], pts[0]);
  Eigen::Vector2cd cy = line_basis_coords(pts[b0], pts[b1], pts[1]);
  Eigen::Vector2cd ca = line_basis_coords(pts[b0], pts[b1], pts[2]);
  Eigen::Vector2cd cb = line_basis_coords(pts[b0], pts[b1], pts[3]);

  Complex xa = det2(cx, ca);
  Complex yb = det2(cy, cb);
  Complex xb = det2(cx, cb);
  Complex ya = det2(cy, ca);
  if (std::abs(det2(ca, cb)) < 1e-14)
    raise(Errc::DegenerateQuadruple, "fundamental pair coincides");
  if (std::abs(xb) < 1e-14 || std::abs(ya) < 1e-14)
    raise(Errc::DegenerateQuadruple, "denominator determinant vanishes");
  return (xa * yb) / (xb * ya);
}

}  // namespace

Complex cross_ratio(const HomPoint& x, const HomPoint& y, const HomPoint& a, const HomPoint& b) {
  return cross_ratio_impl(x.v, y.v, a.v, b.v);
}

Complex cross_ratio(const HomLine& x, const HomLine& y, const HomLine& a, const HomLine& b) {
  return cross_ratio_impl(x.v, y.v, a.v, b.v);
}

HomLine line_through(const HomPoint& p, const HomPoint& q) {
  if (projectively_equal(p, q)) raise(Errc::CoincidentPoints, "line_through needs distinct points");
  Vec3c u = proj_normalized(p.v).cross(proj_normalized(q.v));
  return HomLine(u);
}

HomPoint meet(const HomLine& l, const HomLine& m) {
  if (projectively_equal(l, m)) raise(Errc::CoincidentLines, "meet needs distinct lines");
  Vec3c p = proj_normalized(l.v).cross(proj_normalized(m.v));
  return HomPoint(p);
}

bool incident(const HomLine& l, const HomPoint& p, double tol) {
  Vec3c u = proj_normalized(l.v);
  Vec3c x = proj_normalized(p.v);
  // Plain bilinear pairing; Eigen's dot() would conjugate.
  return std::abs((u.transpose() * x)(0, 0)) <= tol;
}

ConicClass classify_conic(const Conic& c) {
  Eigen::SelfAdjointEigenSolver<Mat3d> es(c.m);
  Vec3d ev = es.eigenvalues();
  double scale = ev.cwiseAbs().maxCoeff();
  int pos = 0, neg = 0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(ev[i]) <= 1e-10 * scale) continue;
    (ev[i] > 0 ? pos : neg)++;
  }
  int rank = pos + neg;
  if (rank == 3) {
    if (pos == 3 || neg == 3) return ConicClass::ImaginaryNondegenerate;
    return ConicClass::RealNondegenerate;
  }
  if (rank == 2) {
    // Definite rank-2 forms factor into conjugate imaginary lines; read in
    // line coordinates they are a conjugate pair of points (the parabolic
    // absolute). Indefinite forms are two real lines.
    if (pos == 2 || neg == 2) return ConicClass::DegeneratePointPair;
    return ConicClass::DegenerateLinePair;
  }
  return ConicClass::DoubleLine;
}

bool conic_nondegenerate(const Conic& c) {
  ConicClass k = classify_conic(c);
  return k == ConicClass::RealNondegenerate || k == ConicClass::ImaginaryNondegenerate;
}

HomLine polar(const Conic& c, const HomPoint& p) {
  if (!conic_nondegenerate(c)) raise(Errc::DegenerateConic, "polar needs a nondegenerate conic");
  Vec3c u = c.m.cast<Complex>() * proj_normalized(p.v);
  return HomLine(u);
}

HomPoint pole(const Conic& c, const HomLine& u) {
  if (!conic_nondegenerate(c)) raise(Errc::DegenerateConic, "pole needs a nondegenerate conic");
  Vec3c p = adjugate(c.m).cast<Complex>() * proj_normalized(u.v);
  return HomPoint(p);
}

Complex conic_form(const Conic& c, const Vec3c& x, const Vec3c& y) {
  return (x.transpose() * c.m.cast<Complex>() * y)(0, 0);
}

Complex dual_form(const DualConic& d, const Vec3c& u, const Vec3c& v) {
  return (u.transpose() * d.m.cast<Complex>() * v)(0, 0);
}

std::pair<HomPoint, HomPoint> line_conic_intersection(const Conic& c, const HomPoint& p,
                                                      const HomPoint& q) {
  if (projectively_equal(p, q)) raise(Errc::CoincidentPoints, "need two distinct points");
  Vec3c pn = proj_normalized(p.v);
  Vec3c qn = proj_normalized(q.v);
  Mat3d cm = c.m / c.scale();
  Conic cs(cm);

  // z = alpha p + beta q, restricted quadratic cc alpha^2 + 2 b alpha beta + a beta^2.
  Complex a = conic_form(cs, qn, qn);
  Complex b = conic_form(cs, pn, qn);
  Complex cc = conic_form(cs, pn, pn);

  constexpr double kEps = 1e-13;
  if (std::abs(a) <= kEps && std::abs(b) <= kEps && std::abs(cc) <= kEps)
    raise(Errc::LineOnConic, "restricted quadratic vanishes identically");

  if (std::abs(a) <= kEps && std::abs(b) <= kEps) {
    // cc alpha^2 = 0: double root at q.
    return {HomPoint(qn), HomPoint(qn)};
  }

  // Discriminant through the dual form on the joining line; algebraically
  // b^2 - a*cc but free of the catastrophic cancellation of the raw product.
  Vec3c u = pn.cross(qn);
  Complex disc = -(u.transpose() * adjugate(cm).cast<Complex>() * u)(0, 0);
  Complex s = std::sqrt(disc);
  // Root ordering that avoids cancellation in -(b + sigma s).
  Complex w = (std::real(std::conj(b) * s) >= 0.0) ? -(b + s) : -(b - s);

  Vec3c z1 = a * pn + w * qn;
  Vec3c z2 = w * pn + cc * qn;
  if (max_abs(z1) < 1e-12) z1 = qn;  // a and w both negligible: tangency at q
  if (max_abs(z2) < 1e-12) z2 = pn;
  return {HomPoint(z1), HomPoint(z2)};
}

PointPosition point_position(const Conic& c, const HomPoint& p) {
  ConicClass cls = classify_conic(c);
  if (cls != ConicClass::RealNondegenerate)
    raise(Errc::WrongConicClass, "point_position needs a real nondegenerate conic");
  if (!p.is_real()) throw std::invalid_argument("point_position: point must be real");

  // Sign-normalize to signature (2,1) so Interior <=> form < 0.
  Eigen::SelfAdjointEigenSolver<Mat3d> es(c.m);
  int pos = (es.eigenvalues().array() > 0).count();
  double sigma = (pos == 2) ? 1.0 : -1.0;

  Vec3c pn = proj_normalized(p.v);
  Mat3d cm = sigma * c.m / c.scale();
  double val = std::real((pn.transpose() * cm.cast<Complex>() * pn)(0, 0));
  double tol = 1e-10 * pn.squaredNorm();
  if (std::abs(val) <= tol) return PointPosition::OnConic;
  return val < 0 ? PointPosition::Interior : PointPosition::Exterior;
}

std::pair<HomLine, HomLine> tangents_from_point(const Conic& c, const HomPoint& p) {
  if (!conic_nondegenerate(c)) raise(Errc::DegenerateConic, "tangents need a nondegenerate conic");
  Vec3c pn = proj_normalized(p.v);
  Conic cs(c.m / c.scale());
  HomLine chord = polar(cs, HomPoint(pn));

  Complex opp = conic_form(cs, pn, pn);
  if (std::abs(opp) <= 1e-10 * pn.squaredNorm()) {
    // Self-conjugate point: the polar is the tangent, counted twice.
    return {chord, chord};
  }

  // Two well-separated points on the chord of contact.
  Vec3c u = proj_normalized(chord.v);
  int skip = argmax_abs(u);
  std::array<Vec3c, 2> base;
  int n = 0;
  for (int i = 0; i < 3 && n < 2; ++i) {
    if (i == skip) continue;
    Vec3c e = Vec3c::Zero();
    e[i] = 1.0;
    base[n++] = u.cross(e);
  }
  auto [z1, z2] = line_conic_intersection(cs, HomPoint(base[0]), HomPoint(base[1]));
  return {line_through(HomPoint(pn), z1), line_through(HomPoint(pn), z2)};
}

HomPoint apply(const Collineation& g, const HomPoint& p) { return HomPoint((g.m * p.v).eval()); }

HomLine apply(const Collineation& g, const HomLine& u) {
  Vec3c w = g.m.transpose().partialPivLu().solve(u.v);
  return HomLine(w);
}

Conic apply(const Collineation& g, const Conic& c) {
  if (!g.is_real()) throw std::invalid_argument("conic congruence needs a real collineation");
  Mat3d m = g.m.real();
  Mat3d minv = m.inverse();
  Mat3d out = minv.transpose() * c.m * minv;
  return Conic(0.5 * (out + out.transpose()));
}

DualConic dual_of(const Conic& c) {
  if (!conic_nondegenerate(c)) raise(Errc::DegenerateConic, "dual_of needs a nondegenerate conic");
  return DualConic(adjugate(c.m));
}

}  // namespace ckgeom
