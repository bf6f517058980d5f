#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <optional>
#include <vector>

#include "spherefold/errors.hpp"
#include "spherefold/tolerances.hpp"

namespace spherefold {

using Vec3 = Eigen::Vector3d;

// Point on the unit sphere. Oriented, it also serves as the pole of a great
// circle under polar duality.
class UnitVector {
 public:
  UnitVector() : v_(1, 0, 0) {}

  // Normalizing constructor; rejects near-zero input.
  static UnitVector normalized(const Vec3& v);

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  UnitVector antipode() const { return UnitVector(-v_); }
  double dot(const UnitVector& o) const { return v_.dot(o.v_); }

 private:
  explicit UnitVector(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

// Central angle between two unit vectors, in [0, pi]. atan2-based for
// stability near 0 and pi.
double spherical_distance(const UnitVector& p, const UnitVector& q);

UnitVector rotate(const UnitVector& p, const UnitVector& axis, double angle);

// Great circle represented by one of its two antipodal poles, canonicalized
// to the representative with the lexicographically larger (z, y, x) tuple so
// that duality is a function.
class GreatCircle {
 public:
  GreatCircle() : pole_(UnitVector::normalized(Vec3(0, 0, 1))) {}  // the equator
  static GreatCircle from_pole(const UnitVector& pole);
  // Circle through two non-collinear points.
  static GreatCircle through(const UnitVector& a, const UnitVector& b);

  const UnitVector& pole() const { return pole_; }
  bool contains(const UnitVector& p) const;

 private:
  explicit GreatCircle(const UnitVector& pole) : pole_(pole) {}
  UnitVector pole_;
};

UnitVector dual(const GreatCircle& c);
GreatCircle dual(const UnitVector& p);

// Geodesic arc strictly shorter than pi (the short arc between its
// endpoints). Endpoints may not coincide or be antipodal.
class Arc {
 public:
  Arc(const UnitVector& a, const UnitVector& b);

  const UnitVector& a() const { return a_; }
  const UnitVector& b() const { return b_; }
  double length() const { return length_; }
  // Unit normal a x b of the supporting plane (orientation preserved).
  const UnitVector& normal() const { return normal_; }
  GreatCircle circle() const { return GreatCircle::from_pole(normal_); }
  // Arc-length parametrization, s in [0, length].
  UnitVector point_at(double s) const;
  bool contains(const UnitVector& x, double eps = 1e-9) const;

 private:
  UnitVector a_, b_, normal_;
  double length_;
};

struct CrossingTest {
  bool crosses = false;
  // Set when either endpoint lies within eps_geom of the circle; the sign
  // test is then unreliable and callers typically resample.
  bool degenerate = false;
};

// Transversal crossing of the open arc. For a short arc the endpoint sign
// test is exact: the arc is a positive combination of its endpoints, so it
// cannot touch the circle with both endpoint signs equal.
CrossingTest circle_crosses_arc(const GreatCircle& c, const Arc& e);

struct ArcContact {
  enum class Kind {
    None,
    Proper,            // contact beyond a mutually shared endpoint
    SharedEndpoint,    // the only contact is an endpoint of both arcs
    CollinearOverlap,  // same supporting circle, overlap of positive length
  };
  Kind kind = Kind::None;
  std::optional<UnitVector> point;  // a witness contact point when touching

  bool touching() const { return kind != Kind::None; }
};

// Contact classification of two closed short arcs. Collinear overlap is
// resolved by interval arithmetic on angular parameters along the common
// circle.
ArcContact arcs_intersect(const Arc& e1, const Arc& e2);

bool point_on_circle_side(const UnitVector& q, const UnitVector& pole);

// Signed angular distance from q to the great circle with the given oriented
// pole; positive on the pole's side. Range [-pi/2, pi/2].
double signed_circle_distance(const UnitVector& q, const UnitVector& oriented_pole);

// Intersection of an arc's closed span with a great circle, if any.
std::optional<UnitVector> arc_circle_intersection(const Arc& e, const GreatCircle& c);

// Area of the lune spanned by `span` radians: exactly twice the span.
double lune_area(double span);

// Region between two great circles. dual_of_arc gives the lune whose
// interior collects the poles of all circles crossing the arc (union with
// its antipodal lune).
class Lune {
 public:
  Lune(const GreatCircle& c1, const GreatCircle& c2, double span);
  static Lune dual_of_arc(const Arc& e);

  double span() const { return span_; }
  double area() const { return 2.0 * span_; }
  const GreatCircle& boundary1() const { return c1_; }
  const GreatCircle& boundary2() const { return c2_; }
  // Membership of a pole in the open dual lune or its antipodal copy.
  bool contains_pole(const UnitVector& q) const;

 private:
  GreatCircle c1_, c2_;
  UnitVector endpoint_a_, endpoint_b_;  // generators for the membership test
  double span_;
};

// Convex spherical polygon contained in an open hemisphere. Keeps both the
// vertex cycle and the inward-oriented poles of the supporting circles, so
// digons (lunes) are representable.
class ConvexSphericalPolygon {
 public:
  // At least three vertices, in convex position, inside an open hemisphere.
  static ConvexSphericalPolygon from_vertices(std::vector<UnitVector> vertices);

  // Intersection of the hemispheres { x : <x, u_i> >= 0 }. Returns nullopt
  // when the region has empty interior.
  static std::optional<ConvexSphericalPolygon> from_halfspaces(
      const std::vector<UnitVector>& inward_poles);

  const std::vector<UnitVector>& vertices() const { return vertices_; }
  // Edge j spans vertices j -> j+1 (cyclic); pole oriented toward the interior.
  const std::vector<UnitVector>& edge_poles() const { return poles_; }

  double area() const;  // spherical excess, exact for convex input
  bool contains(const UnitVector& q, double eps = eps_geom) const;

 private:
  ConvexSphericalPolygon(std::vector<UnitVector> vertices, std::vector<UnitVector> poles)
      : vertices_(std::move(vertices)), poles_(std::move(poles)) {}
  std::vector<UnitVector> vertices_;
  std::vector<UnitVector> poles_;
};

struct InscribedCircle {
  UnitVector center;
  double diameter = 0.0;
};

// Spherical Chebyshev center: the point maximizing the minimal signed
// distance to every supporting circle. Satisfies area(K) <= 2 * diameter.
InscribedCircle max_inscribed_circle(const ConvexSphericalPolygon& k);

// Chebyshev center of an intersection of hemispheres given by inward poles.
// Returns nullopt when the region has empty interior.
std::optional<InscribedCircle> inscribed_circle_of_halfspaces(
    const std::vector<UnitVector>& inward_poles);

// max_{|w|=1} min_i <w, p_i>, the best-hemisphere margin of a point set.
// Zero when no open hemisphere contains all points. The optimal direction is
// written to `witness` when given and the margin is positive.
double hemisphere_margin(const std::vector<UnitVector>& points, UnitVector* witness = nullptr);

}  // namespace spherefold
