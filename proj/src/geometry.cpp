#include "coe/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace coe {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// x-coordinates of the (up to two) crossing points of two circle boundaries.
int boundary_crossings_x(const Circle& a, const Circle& b, std::array<double, 2>& xs) {
  const Vec2 delta = b.center - a.center;
  const double d = delta.norm();
  if (d == 0.0 || d > a.radius + b.radius || d < std::abs(a.radius - b.radius)) return 0;
  const double along = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
  const double half = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
  const Vec2 base = a.center + (along / d) * delta;
  const double ux = -delta.y / d;
  xs[0] = base.x + half * ux;
  xs[1] = base.x - half * ux;
  return 2;
}

double upper_arc(const Circle& c, double x) {
  const double dx = x - c.center.x;
  return c.center.y + std::sqrt(std::max(0.0, c.radius * c.radius - dx * dx));
}

double lower_arc(const Circle& c, double x) {
  const double dx = x - c.center.x;
  return c.center.y - std::sqrt(std::max(0.0, c.radius * c.radius - dx * dx));
}

double chord_length(std::span<const Circle> circles, double x) {
  double top = std::numeric_limits<double>::infinity();
  double bottom = -std::numeric_limits<double>::infinity();
  for (const auto& c : circles) {
    top = std::min(top, upper_arc(c, x));
    bottom = std::max(bottom, lower_arc(c, x));
  }
  return std::max(0.0, top - bottom);
}

}  // namespace

double RegionAreas::of(UserType t) const {
  switch (t) {
    case UserType::Macro: return s_macro;
    case UserType::DirectMicro: return s_dir;
    case UserType::CRE: return s_cre;
  }
  return 0.0;
}

double two_circle_intersection_area(const Circle& c1, const Circle& c2) {
  const Circle& big = c1.radius >= c2.radius ? c1 : c2;
  const Circle& small = c1.radius >= c2.radius ? c2 : c1;
  const double r1 = big.radius, r2 = small.radius;
  const double d = distance(big.center, small.center);

  if (d >= r1 + r2) return 0.0;
  if (d <= r1 - r2) return M_PI * r2 * r2;

  // a: distance from the big centre to the common chord; b: half chord.
  const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const double b = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  return std::acos(clamp_unit(a / r1)) * r1 * r1 - a * b +
         std::acos(clamp_unit((d - a) / r2)) * r2 * r2 - b * (d - a);
}

double chord_intersection_area(std::span<const Circle> circles, double x_lo, double x_hi) {
  if (circles.empty()) return 0.0;
  double lo = x_lo, hi = x_hi;
  for (const auto& c : circles) {
    lo = std::max(lo, c.center.x - c.radius);
    hi = std::min(hi, c.center.x + c.radius);
  }
  if (!(hi > lo)) return 0.0;

  std::vector<double> breaks{lo, hi};
  auto add_break = [&](double x) {
    if (x > lo && x < hi) breaks.push_back(x);
  };
  for (std::size_t i = 0; i < circles.size(); ++i) {
    add_break(circles[i].center.x - circles[i].radius);
    add_break(circles[i].center.x + circles[i].radius);
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      std::array<double, 2> xs{};
      const int n = boundary_crossings_x(circles[i], circles[j], xs);
      for (int k = 0; k < n; ++k) add_break(xs[k]);
    }
  }
  std::sort(breaks.begin(), breaks.end());

  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    const double width = b - a;
    if (width <= 1e-12 * std::max(1.0, std::abs(a))) continue;
    // Cosine substitution removes the square-root behaviour at arc ends.
    auto integrand = [&](double t) {
      const double x = a + 0.5 * width * (1.0 - std::cos(t));
      return chord_length(circles, x) * 0.5 * width * std::sin(t);
    };
    total += gauss_kronrod<double, 31>::integrate(integrand, 0.0, M_PI, 12, 1e-11);
  }
  return total;
}

double intersection_area(std::span<const Circle> circles) {
  if (circles.empty()) return 0.0;

  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      if (distance(circles[i].center, circles[j].center) >= circles[i].radius + circles[j].radius)
        return 0.0;

  // Drop every circle that contains another member; identical circles keep one.
  std::vector<Circle> kept;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < circles.size() && !redundant; ++j) {
      if (i == j) continue;
      const double d = distance(circles[i].center, circles[j].center);
      const bool contains_j = d + circles[j].radius <= circles[i].radius;
      const bool identical = d == 0.0 && circles[i].radius == circles[j].radius;
      redundant = contains_j && (!identical || j < i);
    }
    if (!redundant) kept.push_back(circles[i]);
  }

  if (kept.size() == 1) return kept[0].area();
  if (kept.size() == 2) return two_circle_intersection_area(kept[0], kept[1]);
  return chord_intersection_area(kept, -std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity());
}

double three_circle_overlap_area(const Circle& cre_a, const Circle& cre_b, const Circle& disc) {
  if (distance(cre_a.center, cre_b.center) >= cre_a.radius + cre_b.radius) return 0.0;

  // Frame: midpoint of the two centres at the origin, centres on the x axis,
  // so the symmetry axis of the pair is x = 0.
  const Vec2 mid = 0.5 * (cre_a.center + cre_b.center);
  const Vec2 dir = cre_b.center - cre_a.center;
  const double angle = std::atan2(dir.y, dir.x);
  auto to_frame = [&](const Circle& c) { return Circle{(c.center - mid).rotated(-angle), c.radius}; };
  const std::array<Circle, 3> framed{to_frame(cre_a), to_frame(cre_b), to_frame(disc)};

  const double scale = std::max({cre_a.radius, cre_b.radius, disc.radius});
  const bool symmetric = std::abs(framed[2].center.x) <= 1e-12 * scale &&
                         std::abs(cre_a.radius - cre_b.radius) <= 1e-12 * scale;
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (symmetric) return 2.0 * chord_intersection_area(framed, 0.0, inf);
  return chord_intersection_area(framed, -inf, inf);
}

ContourPoints solve_cre_contour_points(double bias_db, const ScenarioConfig& cfg) {
  const double ring = cfg.ring_radius;
  const double log_macro = std::log(cfg.macro_power_w());
  const double log_micro = std::log(cfg.micro_power_w()) + bias_db / 10.0 * std::log(10.0);
  // Positive where the macro wins over the biased micro.
  auto margin = [&](double x) {
    return (log_macro - cfg.alpha1 * std::log(x)) -
           (log_micro - cfg.alpha2 * std::log(std::abs(x - ring)));
  };
  auto bisect = [&](double lo, double hi, const char* which) {
    const bool lo_positive = margin(lo) > 0.0;
    if (lo_positive == (margin(hi) > 0.0))
      throw NoRootError(std::string("no sign change bracketing contour point ") + which);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if ((margin(mid) > 0.0) == lo_positive)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  constexpr double eps = 1e-6;
  return {bisect(eps, ring - eps, "p1"), bisect(ring + eps, 5.0 * ring, "p2")};
}

Vec2 micro_position(int micro_index, const ScenarioConfig& cfg) {
  const double angle = 2.0 * M_PI * micro_index / cfg.n_micro;
  return {cfg.ring_radius * std::cos(angle), cfg.ring_radius * std::sin(angle)};
}

Circle approximate_coverage_circle(const ContourPoints& pts, int micro_index,
                                   const ScenarioConfig& cfg) {
  const double angle = 2.0 * M_PI * micro_index / cfg.n_micro;
  const double rc = 0.5 * (pts.p1 + pts.p2);
  return {{rc * std::cos(angle), rc * std::sin(angle)}, 0.5 * std::abs(pts.p2 - pts.p1)};
}

CoverageGeometry::CoverageGeometry(double bias_db, const ScenarioConfig& cfg)
    : bias_db_(bias_db), disc_{{0.0, 0.0}, cfg.disc_radius} {
  const ContourPoints direct_pts = solve_cre_contour_points(0.0, cfg);
  const ContourPoints cre_pts = bias_db == 0.0 ? direct_pts : solve_cre_contour_points(bias_db, cfg);
  for (int i = 0; i < cfg.n_micro; ++i) {
    micros_.push_back(micro_position(i, cfg));
    direct_.push_back(approximate_coverage_circle(direct_pts, i, cfg));
    cre_.push_back(approximate_coverage_circle(cre_pts, i, cfg));
  }
  const int n = cfg.n_micro;
  neighbours_ = n >= 3 ? 2 : (n == 2 ? 1 : 0);
  lens_pairs_ = n >= 3 ? n : (n == 2 ? 1 : 0);
  lens_area_ = neighbours_ > 0 ? three_circle_overlap_area(cre_[0], cre_[1], disc_) : 0.0;

  const std::array<Circle, 2> dir_disc{direct_[0], disc_};
  const std::array<Circle, 2> cre_disc{cre_[0], disc_};
  areas_.s_tot = disc_.area();
  areas_.s_dir = n * intersection_area(dir_disc);
  areas_.s_cre = n * intersection_area(cre_disc) - areas_.s_dir - lens_pairs_ * lens_area_;
  if (bias_db == 0.0) areas_.s_cre = 0.0;
  areas_.s_cre = std::max(0.0, areas_.s_cre);
  areas_.s_macro = areas_.s_tot - areas_.s_dir - areas_.s_cre;
}

double CoverageGeometry::per_bs_area(UserType t) const {
  switch (t) {
    case UserType::Macro: return areas_.s_macro;
    case UserType::DirectMicro: return areas_.s_dir / n_micro();
    case UserType::CRE: return areas_.s_cre / n_micro();
  }
  return 0.0;
}

double CoverageGeometry::max_distance(UserType t) const {
  switch (t) {
    case UserType::Macro: return disc_.radius;
    case UserType::DirectMicro:
      return distance(micros_[0], direct_[0].center) + direct_[0].radius;
    case UserType::CRE: return distance(micros_[0], cre_[0].center) + cre_[0].radius;
  }
  return 0.0;
}

bool CoverageGeometry::cre_circles_overlap() const { return lens_area_ > 0.0; }

double CoverageGeometry::lens_far_half_within(double d) const {
  if (lens_area_ == 0.0) return 0.0;
  // Frame with micro 1 on the positive side of the perpendicular bisector of
  // micros 0 and 1; the lens half at x >= 0 is served by micro 1.
  const Vec2 mid = 0.5 * (micros_[0] + micros_[1]);
  const Vec2 dir = micros_[1] - micros_[0];
  const double angle = std::atan2(dir.y, dir.x);
  auto to_frame = [&](const Circle& c) { return Circle{(c.center - mid).rotated(-angle), c.radius}; };
  const std::array<Circle, 4> framed{to_frame({micros_[0], d}), to_frame(cre_[0]),
                                     to_frame(cre_[1]), to_frame(disc_)};
  return chord_intersection_area(framed, 0.0, std::numeric_limits<double>::infinity());
}

double CoverageGeometry::area_within(UserType t, double d) const {
  if (!(d > 0.0)) return 0.0;
  if (d >= max_distance(t)) return per_bs_area(t);

  const int n = n_micro();
  switch (t) {
    case UserType::Macro: {
      const Circle reach{{0.0, 0.0}, std::min(d, disc_.radius)};
      double s = reach.area() - n * two_circle_intersection_area(reach, cre_[0]);
      if (lens_area_ > 0.0) s += lens_pairs_ * three_circle_overlap_area(cre_[0], cre_[1], reach);
      return std::clamp(s, 0.0, per_bs_area(t));
    }
    case UserType::DirectMicro: {
      const std::array<Circle, 3> parts{Circle{micros_[0], d}, direct_[0], disc_};
      return std::min(intersection_area(parts), per_bs_area(t));
    }
    case UserType::CRE: {
      if (areas_.s_cre == 0.0) return 0.0;
      const std::array<Circle, 3> outer{Circle{micros_[0], d}, cre_[0], disc_};
      const std::array<Circle, 3> inner{Circle{micros_[0], d}, direct_[0], disc_};
      double s = intersection_area(outer) - intersection_area(inner);
      s -= neighbours_ * lens_far_half_within(d);
      return std::clamp(s, 0.0, per_bs_area(t));
    }
  }
  return 0.0;
}

RegionAreas region_areas(double bias_db, const ScenarioConfig& cfg) {
  return CoverageGeometry(bias_db, cfg).areas();
}

double region_cdf_area(UserType t, double bias_db, double d, const ScenarioConfig& cfg) {
  return CoverageGeometry(bias_db, cfg).area_within(t, d);
}

}  // namespace coe
