#pragma once

// Test-only reference implementations. Everything here recomputes expected
// values by a route independent of the library kernels under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mvbox/parallel.hpp"
#include "mvbox/types.hpp"

namespace oracles {

using mvbox::OrientedBox3D;
using mvbox::Vec2;
using mvbox::Vec3;

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// O(n^3) hull: a directed edge p->q is on the CCW hull iff every other
// point lies strictly to its left. Walks the successor map from the
// lowest-leftmost point. Assumes points in general position.
inline std::vector<Vec2> brute_hull(const std::vector<Vec2>& pts) {
  int n = static_cast<int>(pts.size());
  if (n < 3) return pts;
  int start = 0;
  for (int i = 1; i < n; ++i) {
    if (pts[i].y() < pts[start].y() ||
        (pts[i].y() == pts[start].y() && pts[i].x() < pts[start].x())) {
      start = i;
    }
  }
  std::vector<Vec2> hull;
  int cur = start;
  do {
    hull.push_back(pts[cur]);
    int next = -1;
    for (int q = 0; q < n; ++q) {
      if (q == cur) continue;
      bool all_left = true;
      for (int r = 0; r < n && all_left; ++r) {
        if (r == cur || r == q) continue;
        if (cross(pts[cur], pts[q], pts[r]) <= 0.0) all_left = false;
      }
      if (all_left) {
        next = q;
        break;
      }
    }
    if (next < 0) break;  // degenerate input
    cur = next;
  } while (cur != start && hull.size() <= pts.size());
  return hull;
}

inline bool point_in_convex_ccw(const std::vector<Vec2>& poly, const Vec2& p) {
  int n = static_cast<int>(poly.size());
  if (n < 3) return false;
  for (int i = 0, j = n - 1; i < n; j = i++) {
    if (cross(poly[j], poly[i], p) < 0.0) return false;
  }
  return true;
}

// Rasterization IoU over cell centers of a grid x grid lattice spanning the
// union bounding box.
inline double raster_iou_2d(const std::vector<Vec2>& a,
                            const std::vector<Vec2>& b, int grid = 1000) {
  double lox = a[0].x(), hix = lox, loy = a[0].y(), hiy = loy;
  for (const auto& poly : {a, b}) {
    for (const Vec2& p : poly) {
      lox = std::min(lox, p.x());
      hix = std::max(hix, p.x());
      loy = std::min(loy, p.y());
      hiy = std::max(hiy, p.y());
    }
  }
  double dx = (hix - lox) / grid;
  double dy = (hiy - loy) / grid;
  std::vector<std::int64_t> in_a_rows(grid, 0), in_b_rows(grid, 0),
      in_both_rows(grid, 0);
  mvbox::parallel_for(0, grid, [&](std::int64_t iy) {
    double y = loy + (iy + 0.5) * dy;
    std::int64_t na = 0, nb = 0, nboth = 0;
    for (int ix = 0; ix < grid; ++ix) {
      Vec2 p(lox + (ix + 0.5) * dx, y);
      bool ia = point_in_convex_ccw(a, p);
      bool ib = point_in_convex_ccw(b, p);
      na += ia;
      nb += ib;
      nboth += ia && ib;
    }
    in_a_rows[iy] = na;
    in_b_rows[iy] = nb;
    in_both_rows[iy] = nboth;
  });
  std::int64_t na = 0, nb = 0, nboth = 0;
  for (int i = 0; i < grid; ++i) {
    na += in_a_rows[i];
    nb += in_b_rows[i];
    nboth += in_both_rows[i];
  }
  std::int64_t uni = na + nb - nboth;
  return uni > 0 ? static_cast<double>(nboth) / static_cast<double>(uni) : 0.0;
}

// Analytic IoU for axis-aligned boxes (identity rotations assumed).
inline double aabb_iou_oracle(const Vec3& ca, const Vec3& sa, const Vec3& cb,
                              const Vec3& sb) {
  double vi = 1.0;
  for (int i = 0; i < 3; ++i) {
    double lo = std::max(ca[i] - 0.5 * sa[i], cb[i] - 0.5 * sb[i]);
    double hi = std::min(ca[i] + 0.5 * sa[i], cb[i] + 0.5 * sb[i]);
    vi *= std::max(0.0, hi - lo);
  }
  double va = sa.prod(), vb = sb.prod();
  double uni = va + vb - vi;
  return uni > 0 ? vi / uni : 0.0;
}

// Voxelization IoU: cell size is the longest side of the union AABB divided
// by base_res; only the intersection AABB is scanned. Containment tests run
// on incrementally updated box-local coordinates.
inline double voxel_iou_3d(const OrientedBox3D& a, const OrientedBox3D& b,
                           int base_res = 512) {
  auto corners_minmax = [](const OrientedBox3D& box, Vec3& lo, Vec3& hi) {
    auto cs = box.corners();
    lo = hi = cs[0];
    for (int k = 1; k < 8; ++k) {
      lo = lo.cwiseMin(cs[k]);
      hi = hi.cwiseMax(cs[k]);
    }
  };
  Vec3 alo, ahi, blo, bhi;
  corners_minmax(a, alo, ahi);
  corners_minmax(b, blo, bhi);
  Vec3 ulo = alo.cwiseMin(blo), uhi = ahi.cwiseMax(bhi);
  Vec3 ilo = alo.cwiseMax(blo), ihi = ahi.cwiseMin(bhi);
  double va = a.size.prod(), vb = b.size.prod();
  if ((ihi - ilo).minCoeff() <= 0.0) return 0.0;
  double h = (uhi - ulo).maxCoeff() / base_res;
  Eigen::Matrix3d ra = a.rotation.toRotationMatrix().transpose();
  Eigen::Matrix3d rb = b.rotation.toRotationMatrix().transpose();
  Vec3 ha = 0.5 * a.size, hb = 0.5 * b.size;
  int nx = std::max<int>(1, static_cast<int>(std::ceil((ihi.x() - ilo.x()) / h)));
  int ny = std::max<int>(1, static_cast<int>(std::ceil((ihi.y() - ilo.y()) / h)));
  int nz = std::max<int>(1, static_cast<int>(std::ceil((ihi.z() - ilo.z()) / h)));
  Vec3 step_ax = ra.col(0) * h, step_bx = rb.col(0) * h;
  std::vector<std::int64_t> counts(nz, 0);
  mvbox::parallel_for(0, nz, [&](std::int64_t iz) {
    std::int64_t cnt = 0;
    double z = ilo.z() + (iz + 0.5) * h;
    for (int iy = 0; iy < ny; ++iy) {
      double y = ilo.y() + (iy + 0.5) * h;
      Vec3 p0(ilo.x() + 0.5 * h, y, z);
      Vec3 la = ra * (p0 - a.center);
      Vec3 lb = rb * (p0 - b.center);
      for (int ix = 0; ix < nx; ++ix) {
        bool in_a = std::abs(la.x()) <= ha.x() && std::abs(la.y()) <= ha.y() &&
                    std::abs(la.z()) <= ha.z();
        bool in_b = std::abs(lb.x()) <= hb.x() && std::abs(lb.y()) <= hb.y() &&
                    std::abs(lb.z()) <= hb.z();
        cnt += in_a && in_b;
        la += step_ax;
        lb += step_bx;
      }
    }
    counts[iz] = cnt;
  });
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  double vi = static_cast<double>(total) * h * h * h;
  double uni = va + vb - vi;
  return uni > 0 ? std::min(1.0, vi / uni) : 0.0;
}

// Plain scalar pinhole projection, no library types in the math.
inline Vec2 scalar_project(double fx, double fy, double cx, double cy,
                           double x, double y, double z) {
  return {fx * x / z + cx, fy * y / z + cy};
}

}  // namespace oracles
