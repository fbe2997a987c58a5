#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "mvbox/types.hpp"

namespace mvbox {

// Camera-frame depth below which a box corner makes the whole box
// non-projectable (no partial frustum clipping; the view is dropped).
inline constexpr double kZNear = 0.05;

namespace detail {

inline double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) -
         (a.y() - o.y()) * (b.x() - o.x());
}

// Monotone chain. Sorts pts in place; writes the CCW hull to out (capacity
// n + 1). Collinear interior points are dropped. Returns the hull size,
// which is < 3 for degenerate input.
inline int convex_hull_inplace(Vec2* pts, int n, Vec2* out) {
  std::sort(pts, pts + n, [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  n = static_cast<int>(std::unique(pts, pts + n,
                                   [](const Vec2& a, const Vec2& b) {
                                     return a.x() == b.x() && a.y() == b.y();
                                   }) -
                       pts);
  if (n == 1) {
    out[0] = pts[0];
    return 1;
  }
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(out[k - 2], out[k - 1], pts[i]) <= 0) --k;
    out[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross2(out[k - 2], out[k - 1], pts[i]) <= 0) --k;
    out[k++] = pts[i];
  }
  return k - 1;  // closing point repeats the first
}

inline double polygon_area(const Vec2* p, int n) {
  if (n < 3) return 0.0;
  double s = 0.0;
  for (int i = 0, j = n - 1; i < n; j = i++) {
    s += p[j].x() * p[i].y() - p[i].x() * p[j].y();
  }
  return 0.5 * s;
}

// Sutherland-Hodgman: clips CCW subject polygon by each edge of the CCW
// convex clip polygon. out and tmp need capacity ns + nc. Returns the
// vertex count of the intersection.
inline int clip_convex_inplace(const Vec2* subj, int ns, const Vec2* clip,
                               int nc, Vec2* out, Vec2* tmp) {
  if (ns < 3 || nc < 3) return 0;
  int n = ns;
  for (int i = 0; i < ns; ++i) out[i] = subj[i];
  for (int e = 0; e < nc && n >= 3; ++e) {
    const Vec2& c1 = clip[e];
    const Vec2& c2 = clip[(e + 1) % nc];
    int m = 0;
    for (int i = 0, j = n - 1; i < n; j = i++) {
      const Vec2& p = out[j];
      const Vec2& q = out[i];
      double dp = cross2(c1, c2, p);
      double dq = cross2(c1, c2, q);
      bool in_p = dp >= 0.0;
      bool in_q = dq >= 0.0;
      if (in_q) {
        if (!in_p) {
          double t = dp / (dp - dq);
          tmp[m++] = p + t * (q - p);
        }
        tmp[m++] = q;
      } else if (in_p) {
        double t = dp / (dp - dq);
        tmp[m++] = p + t * (q - p);
      }
    }
    n = m;
    for (int i = 0; i < n; ++i) out[i] = tmp[i];
  }
  return n >= 3 ? n : 0;
}

inline double iou_from_areas(double inter, double area_a, double area_b) {
  double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace detail

inline Polygon2D convex_hull(std::vector<Vec2> pts) {
  Polygon2D poly;
  if (pts.empty()) return poly;
  std::vector<Vec2> out(pts.size() + 1);
  int k = detail::convex_hull_inplace(pts.data(), static_cast<int>(pts.size()),
                                      out.data());
  poly.pts.assign(out.begin(), out.begin() + k);
  return poly;
}

inline double polygon_area(const Polygon2D& poly) {
  return detail::polygon_area(poly.pts.data(),
                              static_cast<int>(poly.pts.size()));
}

inline double hull_iou_2d(const Polygon2D& a, const Polygon2D& b) {
  if (a.degenerate() || b.degenerate()) return 0.0;
  int na = static_cast<int>(a.pts.size());
  int nb = static_cast<int>(b.pts.size());
  std::vector<Vec2> out(na + nb + 2), tmp(na + nb + 2);
  int n = detail::clip_convex_inplace(a.pts.data(), na, b.pts.data(), nb,
                                      out.data(), tmp.data());
  double inter = detail::polygon_area(out.data(), n);
  double area_a = polygon_area(a);
  double area_b = polygon_area(b);
  if (area_a <= 0.0 || area_b <= 0.0) return 0.0;
  return detail::iou_from_areas(inter, area_a, area_b);
}

// Inclusive test against a CCW convex polygon.
inline bool point_in_convex(const Polygon2D& poly, const Vec2& p,
                            double tol = 1e-9) {
  int n = static_cast<int>(poly.pts.size());
  if (n < 3) return false;
  for (int i = 0, j = n - 1; i < n; j = i++) {
    if (detail::cross2(poly.pts[j], poly.pts[i], p) < -tol) return false;
  }
  return true;
}

inline OrientedBox3D transform_box(const Pose& pose, const OrientedBox3D& b) {
  OrientedBox3D out;
  out.center = pose.apply(b.center);
  out.rotation = (pose.rotation * b.rotation).normalized();
  out.size = b.size;
  return out;
}

// Boundary inclusive, with a relative slack so corners of the box itself
// always test inside.
inline bool contains_point(const OrientedBox3D& b, const Vec3& p) {
  Vec3 local = b.rotation.conjugate() * (p - b.center);
  for (int i = 0; i < 3; ++i) {
    double h = 0.5 * b.size[i];
    if (std::abs(local[i]) > h + 1e-12 * (1.0 + h)) return false;
  }
  return true;
}

inline Aabb3 aabb_of(const OrientedBox3D& b) {
  auto cs = b.corners();
  Aabb3 box{cs[0], cs[0]};
  for (int k = 1; k < 8; ++k) {
    box.lo = box.lo.cwiseMin(cs[k]);
    box.hi = box.hi.cwiseMax(cs[k]);
  }
  return box;
}

inline Vec2 project_point(const Intrinsics& intr, const Vec3& p_cam) {
  double inv_z = 1.0 / p_cam.z();
  return {intr.fx * p_cam.x() * inv_z + intr.cx,
          intr.fy * p_cam.y() * inv_z + intr.cy};
}

// Projects the box corners through the pinhole and returns their 2D convex
// hull, or nullopt when any corner is closer than z_near. The hull is not
// clipped to the image bounds.
inline std::optional<Polygon2D> project_box_hull(const Intrinsics& intr,
                                                 const Pose& cam_from_world,
                                                 const OrientedBox3D& box_world,
                                                 double z_near = kZNear) {
  auto cs = box_world.corners();
  Vec2 pts[8];
  for (int k = 0; k < 8; ++k) {
    Vec3 c = cam_from_world.apply(cs[k]);
    if (c.z() < z_near) return std::nullopt;
    pts[k] = project_point(intr, c);
  }
  Vec2 out[9];
  int n = detail::convex_hull_inplace(pts, 8, out);
  Polygon2D poly;
  poly.pts.assign(out, out + n);
  return poly;
}

}  // namespace mvbox
