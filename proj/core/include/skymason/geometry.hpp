#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace skymason {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

constexpr double kPi = 3.14159265358979323846;

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

/// 2-D rotation of a vector by yaw.
inline Vec2 rotate2(double yaw, const Vec2& v) {
  const double c = std::cos(yaw), s = std::sin(yaw);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

/// Snap a yaw to the nearest multiple of pi/2, returned in (-pi, pi].
inline double snap_yaw_quarter(double yaw) {
  return wrap_angle(std::round(yaw / (kPi / 2.0)) * (kPi / 2.0));
}

/// Axis-aligned rectangle in the horizontal plane.
struct Rect2 {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  double width_x() const { return x1 - x0; }
  double width_y() const { return y1 - y0; }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

/// Footprint of a box of horizontal dims (len, wid) centered at (cx, cy).
/// Yaw is snapped to the nearest quarter turn; odd quarters swap the extents.
inline Rect2 footprint_rect(double cx, double cy, double len, double wid, double yaw) {
  const double q = snap_yaw_quarter(yaw);
  const bool swapped = std::abs(std::abs(q) - kPi / 2.0) < 1e-9;
  const double hx = 0.5 * (swapped ? wid : len);
  const double hy = 0.5 * (swapped ? len : wid);
  return {cx - hx, cx + hx, cy - hy, cy + hy};
}

inline Rect2 intersect(const Rect2& a, const Rect2& b) {
  Rect2 r{std::max(a.x0, b.x0), std::min(a.x1, b.x1),
          std::max(a.y0, b.y0), std::min(a.y1, b.y1)};
  if (r.empty()) return {0, 0, 0, 0};
  return r;
}

/// 3-D line segment.
struct Segment3 {
  Vec3 a;
  Vec3 b;

  Vec3 point_at(double s) const { return a + s * (b - a); }
  double length() const { return (b - a).norm(); }
};

/// Closest point parameter s in [0,1] of `p` on the segment.
inline double closest_param(const Segment3& seg, const Vec3& p) {
  const Vec3 d = seg.b - seg.a;
  const double dd = d.squaredNorm();
  if (dd <= 0.0) return 0.0;
  return std::clamp((p - seg.a).dot(d) / dd, 0.0, 1.0);
}

inline double point_segment_distance(const Vec3& p, const Segment3& seg) {
  return (p - seg.point_at(closest_param(seg, p))).norm();
}

/// Minimum distance between two segments (coarse but exact enough for
/// clearance tests: samples the closest-point map from both sides).
inline double segment_segment_distance(const Segment3& s1, const Segment3& s2) {
  const Vec3 d1 = s1.b - s1.a;
  const Vec3 d2 = s2.b - s2.a;
  const Vec3 r = s1.a - s2.a;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);

  double s = 0.0, t = 0.0;
  if (a <= 1e-12 && e <= 1e-12) {
    return r.norm();
  }
  if (a <= 1e-12) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-12) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      if (denom > 1e-12) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return (s1.point_at(s) - s2.point_at(t)).norm();
}

}  // namespace skymason
