#include "spherefold/geom.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "spherefold/min_norm.hpp"

namespace spherefold {

namespace {

constexpr double kPi = std::numbers::pi;

// Canonical pole representative: lexicographically larger (z, y, x) tuple.
bool is_canonical(const Vec3& u) {
  if (u.z() != 0.0) return u.z() > 0.0;
  if (u.y() != 0.0) return u.y() > 0.0;
  return u.x() >= 0.0;
}

std::vector<Eigen::VectorXd> lift(const std::vector<UnitVector>& points) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    out.push_back(p.vec());
  }
  return out;
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

UnitVector UnitVector::normalized(const Vec3& v) {
  const double n = v.norm();
  if (n < 1e-14) {
    throw DomainError("cannot normalize a near-zero vector");
  }
  if (std::abs(n - 1.0) <= 1e-13) {
    return UnitVector(v);  // already unit; keep the exact bits
  }
  return UnitVector(v / n);
}

double spherical_distance(const UnitVector& p, const UnitVector& q) {
  return std::atan2(p.vec().cross(q.vec()).norm(), p.vec().dot(q.vec()));
}

UnitVector rotate(const UnitVector& p, const UnitVector& axis, double angle) {
  const Vec3 r = Eigen::AngleAxisd(angle, axis.vec()) * p.vec();
  return UnitVector::normalized(r);
}

GreatCircle GreatCircle::from_pole(const UnitVector& pole) {
  if (is_canonical(pole.vec())) {
    return GreatCircle(pole);
  }
  return GreatCircle(pole.antipode());
}

GreatCircle GreatCircle::through(const UnitVector& a, const UnitVector& b) {
  const Vec3 n = a.vec().cross(b.vec());
  if (n.norm() < 1e-12) {
    throw DomainError("great circle through collinear points is not unique");
  }
  return from_pole(UnitVector::normalized(n));
}

bool GreatCircle::contains(const UnitVector& p) const {
  return std::abs(pole_.dot(p)) < eps_geom;
}

UnitVector dual(const GreatCircle& c) { return c.pole(); }

GreatCircle dual(const UnitVector& p) { return GreatCircle::from_pole(p); }

Arc::Arc(const UnitVector& a, const UnitVector& b) : a_(a), b_(b) {
  length_ = spherical_distance(a, b);
  if (length_ <= 1e-12) {
    throw DomainError("degenerate arc: endpoints coincide");
  }
  if (length_ >= kPi - 1e-12) {
    throw DomainError("arc is not short: endpoints antipodal or nearly so");
  }
  normal_ = UnitVector::normalized(a.vec().cross(b.vec()));
}

UnitVector Arc::point_at(double s) const {
  const Vec3 t = normal_.vec().cross(a_.vec());  // in-plane tangent at a
  return UnitVector::normalized(a_.vec() * std::cos(s) + t * std::sin(s));
}

bool Arc::contains(const UnitVector& x, double eps) const {
  return spherical_distance(a_, x) + spherical_distance(x, b_) <= length_ + eps;
}

CrossingTest circle_crosses_arc(const GreatCircle& c, const Arc& e) {
  const double da = c.pole().dot(e.a());
  const double db = c.pole().dot(e.b());
  CrossingTest out;
  out.degenerate = std::abs(da) < eps_geom || std::abs(db) < eps_geom;
  out.crosses = (da > 0.0) != (db > 0.0);
  return out;
}

namespace {

// Angular interval of an arc along its own circle: [0, length] in the frame
// (a, normal x a).
double circle_angle(const Vec3& x, const Vec3& u, const Vec3& w) {
  return std::atan2(x.dot(w), x.dot(u));
}

double wrap_pi(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

ArcContact collinear_contact(const Arc& e1, const Arc& e2) {
  constexpr double eps_ang = 1e-9;
  const Vec3 u = e1.a().vec();
  const Vec3 w = e1.normal().vec().cross(u);

  const double pa = circle_angle(e2.a().vec(), u, w);
  const double d = wrap_pi(circle_angle(e2.b().vec(), u, w) - pa);
  double lo2 = d >= 0.0 ? pa : pa + d;
  double hi2 = d >= 0.0 ? pa + d : pa;

  ArcContact best;
  double best_overlap = -2.0 * kPi;
  for (int shift = -1; shift <= 1; ++shift) {
    const double lo = lo2 + 2.0 * kPi * shift;
    const double hi = hi2 + 2.0 * kPi * shift;
    const double ov_lo = std::max(0.0, lo);
    const double ov_hi = std::min(e1.length(), hi);
    const double overlap = ov_hi - ov_lo;
    if (overlap > best_overlap) {
      best_overlap = overlap;
      if (overlap > eps_ang) {
        best.kind = ArcContact::Kind::CollinearOverlap;
        best.point = e1.point_at(0.5 * (ov_lo + ov_hi));
      } else if (overlap >= -eps_ang) {
        best.kind = ArcContact::Kind::SharedEndpoint;
        best.point = e1.point_at(std::clamp(ov_lo, 0.0, e1.length()));
      } else {
        best.kind = ArcContact::Kind::None;
        best.point.reset();
      }
    }
  }
  return best;
}

}  // namespace

ArcContact arcs_intersect(const Arc& e1, const Arc& e2) {
  constexpr double eps_pt = 1e-9;
  const Vec3 cross = e1.normal().vec().cross(e2.normal().vec());
  if (cross.norm() < 1e-9) {
    return collinear_contact(e1, e2);
  }

  const UnitVector x = UnitVector::normalized(cross);
  for (const UnitVector& cand : {x, x.antipode()}) {
    if (!e1.contains(cand, eps_pt) || !e2.contains(cand, eps_pt)) continue;
    const bool end1 = std::min(spherical_distance(cand, e1.a()),
                               spherical_distance(cand, e1.b())) <= eps_pt;
    const bool end2 = std::min(spherical_distance(cand, e2.a()),
                               spherical_distance(cand, e2.b())) <= eps_pt;
    ArcContact out;
    out.kind = (end1 && end2) ? ArcContact::Kind::SharedEndpoint : ArcContact::Kind::Proper;
    out.point = cand;
    return out;  // the antipodal candidate cannot also lie on both short arcs
  }
  return {};
}

bool point_on_circle_side(const UnitVector& q, const UnitVector& pole) {
  return q.dot(pole) > 0.0;
}

double signed_circle_distance(const UnitVector& q, const UnitVector& oriented_pole) {
  return std::asin(clamp_unit(q.dot(oriented_pole)));
}

std::optional<UnitVector> arc_circle_intersection(const Arc& e, const GreatCircle& c) {
  const Vec3 dir = e.normal().vec().cross(c.pole().vec());
  if (dir.norm() < 1e-12) {
    return e.a();  // the whole arc lies on the circle
  }
  const UnitVector x = UnitVector::normalized(dir);
  for (const UnitVector& cand : {x, x.antipode()}) {
    if (e.contains(cand, 1e-9)) return cand;
  }
  return std::nullopt;
}

double lune_area(double span) {
  if (!(span > 0.0) || !(span < kPi)) {
    throw DomainError("lune span must lie strictly between 0 and pi");
  }
  return 2.0 * span;
}

Lune::Lune(const GreatCircle& c1, const GreatCircle& c2, double span)
    : c1_(c1), c2_(c2), endpoint_a_(c1.pole()), endpoint_b_(c2.pole()), span_(span) {
  if (!(span > 0.0) || !(span < kPi)) {
    throw DomainError("lune span must lie strictly between 0 and pi");
  }
}

Lune Lune::dual_of_arc(const Arc& e) {
  Lune l(dual(e.a()), dual(e.b()), e.length());
  l.endpoint_a_ = e.a();
  l.endpoint_b_ = e.b();
  return l;
}

bool Lune::contains_pole(const UnitVector& q) const {
  return q.dot(endpoint_a_) * q.dot(endpoint_b_) < 0.0;
}

ConvexSphericalPolygon ConvexSphericalPolygon::from_vertices(std::vector<UnitVector> vertices) {
  const int m = static_cast<int>(vertices.size());
  if (m < 3) {
    throw DomainError("convex spherical polygon needs at least three vertices");
  }
  if (hemisphere_margin(vertices) <= 0.0) {
    throw DomainError("polygon vertices are not contained in an open hemisphere");
  }
  std::vector<UnitVector> poles;
  poles.reserve(m);
  for (int j = 0; j < m; ++j) {
    const UnitVector& v0 = vertices[j];
    const UnitVector& v1 = vertices[(j + 1) % m];
    const Vec3 n = v0.vec().cross(v1.vec());
    if (n.norm() < 1e-12) {
      throw DomainError("degenerate polygon edge (coincident or antipodal vertices)");
    }
    UnitVector pole = UnitVector::normalized(n);
    double mass = 0.0;
    for (const auto& v : vertices) mass += pole.dot(v);
    if (mass < 0.0) pole = pole.antipode();
    for (const auto& v : vertices) {
      if (pole.dot(v) < -1e-9) {
        throw DomainError("vertices are not in convex position");
      }
    }
    poles.push_back(pole);
  }
  return ConvexSphericalPolygon(std::move(vertices), std::move(poles));
}

std::optional<ConvexSphericalPolygon> ConvexSphericalPolygon::from_halfspaces(
    const std::vector<UnitVector>& inward_poles) {
  const auto inscribed = inscribed_circle_of_halfspaces(inward_poles);
  if (!inscribed) return std::nullopt;
  const UnitVector& center = inscribed->center;
  const int m = static_cast<int>(inward_poles.size());

  std::vector<UnitVector> verts;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Vec3 d = inward_poles[i].vec().cross(inward_poles[j].vec());
      if (d.norm() < 1e-12) continue;
      const UnitVector x = UnitVector::normalized(d);
      for (const UnitVector& cand : {x, x.antipode()}) {
        bool inside = true;
        for (const auto& u : inward_poles) {
          if (cand.dot(u) < -1e-10) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        bool duplicate = false;
        for (const auto& v : verts) {
          if (spherical_distance(v, cand) < 1e-9) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) verts.push_back(cand);
      }
    }
  }
  if (verts.size() < 2) return std::nullopt;

  // Order the cycle around the Chebyshev center.
  Vec3 ref = std::abs(center.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  const Vec3 t1 = (ref - center.vec() * center.dot(UnitVector::normalized(ref))).normalized();
  const Vec3 t2 = center.vec().cross(t1);
  std::sort(verts.begin(), verts.end(), [&](const UnitVector& a, const UnitVector& b) {
    return std::atan2(a.vec().dot(t2), a.vec().dot(t1)) <
           std::atan2(b.vec().dot(t2), b.vec().dot(t1));
  });

  std::vector<UnitVector> poles;
  if (verts.size() == 2) {
    // Digon: the bounding circles cannot be recovered from the vertex pair;
    // keep the constraints active at both vertices.
    for (const auto& u : inward_poles) {
      if (std::abs(u.dot(verts[0])) <= 1e-9 && std::abs(u.dot(verts[1])) <= 1e-9) {
        bool duplicate = false;
        for (const auto& kept : poles) {
          if (spherical_distance(kept, u) < 1e-9) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) poles.push_back(u);
      }
    }
    if (poles.size() < 2) return std::nullopt;
    poles.resize(2);
  } else {
    const int m_v = static_cast<int>(verts.size());
    for (int j = 0; j < m_v; ++j) {
      const Vec3 n = verts[j].vec().cross(verts[(j + 1) % m_v].vec());
      if (n.norm() < 1e-12) continue;
      UnitVector pole = UnitVector::normalized(n);
      if (pole.dot(center) < 0.0) pole = pole.antipode();
      poles.push_back(pole);
    }
    if (poles.size() < 3) return std::nullopt;
  }
  return ConvexSphericalPolygon(std::move(verts), std::move(poles));
}

double ConvexSphericalPolygon::area() const {
  const int m = static_cast<int>(poles_.size());
  double turn = 0.0;
  for (int j = 0; j < m; ++j) {
    turn += spherical_distance(poles_[j], poles_[(j + 1) % m]);
  }
  return 2.0 * kPi - turn;
}

bool ConvexSphericalPolygon::contains(const UnitVector& q, double eps) const {
  for (const auto& u : poles_) {
    if (q.dot(u) < -eps) return false;
  }
  return true;
}

InscribedCircle max_inscribed_circle(const ConvexSphericalPolygon& k) {
  const auto inscribed = inscribed_circle_of_halfspaces(k.edge_poles());
  if (!inscribed) {
    throw DomainError("degenerate polygon: no inscribed circle");
  }
  return *inscribed;
}

std::optional<InscribedCircle> inscribed_circle_of_halfspaces(
    const std::vector<UnitVector>& inward_poles) {
  if (inward_poles.empty()) return std::nullopt;
  const MinNormResult mn = min_norm_point(lift(inward_poles));
  if (mn.norm <= 1e-12) return std::nullopt;
  const UnitVector center = UnitVector::normalized(mn.point);
  double min_dot = 1.0;
  for (const auto& u : inward_poles) {
    min_dot = std::min(min_dot, center.dot(u));
  }
  if (min_dot <= 1e-12) return std::nullopt;
  return InscribedCircle{center, 2.0 * std::asin(clamp_unit(min_dot))};
}

double hemisphere_margin(const std::vector<UnitVector>& points, UnitVector* witness) {
  if (points.empty()) {
    throw DomainError("hemisphere_margin: empty point set");
  }
  const MinNormResult mn = min_norm_point(lift(points));
  if (witness && mn.norm > 1e-13) {
    *witness = UnitVector::normalized(mn.point);
  }
  return mn.norm;
}

}  // namespace spherefold
