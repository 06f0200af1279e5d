// Planar geometry of the coverage approximation: circle intersection areas,
// range-expansion contour roots, coverage circles and region bookkeeping.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "coe/config.hpp"

namespace coe {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;

  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  /// Counter-clockwise rotation about the origin.
  Vec2 rotated(double angle) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct Circle {
  Vec2 center;
  double radius = 0.0;

  double area() const { return M_PI * radius * radius; }
  bool contains(Vec2 p) const { return (p - center).norm2() <= radius * radius; }
};

/// Crossings of the range-expansion contour with the micro's radial line,
/// measured from the macro site: 0 < p1 < ring radius < p2.
struct ContourPoints {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Areas of the three user regions inside the deployment disc, in m^2.
struct RegionAreas {
  double s_dir = 0.0;
  double s_cre = 0.0;
  double s_macro = 0.0;
  double s_tot = 0.0;

  double of(UserType t) const;
};

class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lens area of two circles. Handles disjoint, partial overlap and containment.
double two_circle_intersection_area(const Circle& c1, const Circle& c2);

/// Area of the common intersection of any number of circles. One and two
/// circles are closed form; three or more use adaptive quadrature over
/// vertical chords.
double intersection_area(std::span<const Circle> circles);

/// Area of the common intersection of `circles` restricted to the vertical
/// strip x_lo <= x <= x_hi, by adaptive Gauss-Kronrod quadrature of the chord
/// length between breakpoints.
double chord_intersection_area(std::span<const Circle> circles, double x_lo, double x_hi);

/// Triple overlap of two equal, adjacent range-expansion circles and a third
/// disc centred on their symmetry axis. The configuration is rotated so the
/// axis is vertical and the right half is integrated and doubled. Returns 0
/// when the two range-expansion circles do not meet.
double three_circle_overlap_area(const Circle& cre_a, const Circle& cre_b, const Circle& disc);

/// Roots of the biased equal-power contour on the micro's radial line.
/// Throws NoRootError if either bracket has no sign change.
ContourPoints solve_cre_contour_points(double bias_db, const ScenarioConfig& cfg);

/// Position of micro `micro_index` (angles 2*pi*i/N on the ring).
Vec2 micro_position(int micro_index, const ScenarioConfig& cfg);

Circle approximate_coverage_circle(const ContourPoints& pts, int micro_index,
                                   const ScenarioConfig& cfg);

/// Coverage approximation for one bias value. Built once and queried many
/// times by the analytic engine; all queries are const and thread-safe.
class CoverageGeometry {
 public:
  CoverageGeometry(double bias_db, const ScenarioConfig& cfg);

  double bias_db() const { return bias_db_; }
  const Circle& disc() const { return disc_; }
  const Circle& direct_circle(int micro_index) const { return direct_[micro_index]; }
  const Circle& cre_circle(int micro_index) const { return cre_[micro_index]; }
  Vec2 micro(int micro_index) const { return micros_[micro_index]; }
  int n_micro() const { return static_cast<int>(micros_.size()); }

  const RegionAreas& areas() const { return areas_; }

  /// Area of one serving BS's region of type `t`: the whole macro region, or
  /// the region of a single micro for the micro types.
  double per_bs_area(UserType t) const;

  /// Area of {points within d of the serving BS} intersected with that BS's
  /// region of type `t`.
  double area_within(UserType t, double d) const;

  /// Distance beyond which area_within(t, d) saturates.
  double max_distance(UserType t) const;

  /// Whether adjacent range-expansion circles overlap.
  bool cre_circles_overlap() const;

 private:
  double lens_far_half_within(double d) const;

  double bias_db_;
  Circle disc_;
  std::vector<Vec2> micros_;
  std::vector<Circle> direct_;
  std::vector<Circle> cre_;
  int neighbours_ = 0;  // adjacent micros sharing a lens with micro 0
  int lens_pairs_ = 0;  // distinct adjacent pairs on the ring
  double lens_area_ = 0.0;
  RegionAreas areas_;
};

RegionAreas region_areas(double bias_db, const ScenarioConfig& cfg);

/// Convenience wrapper over CoverageGeometry::area_within.
double region_cdf_area(UserType t, double bias_db, double d, const ScenarioConfig& cfg);

}  // namespace coe
