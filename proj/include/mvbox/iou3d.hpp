#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mvbox/geometry.hpp"
#include "mvbox/rng.hpp"
#include "mvbox/types.hpp"

namespace mvbox {

inline Vec3 sample_point_in_box(const OrientedBox3D& b, rng::Stream& s) {
  Vec3 local(0.5 * b.size.x() * s.symmetric(),
             0.5 * b.size.y() * s.symmetric(),
             0.5 * b.size.z() * s.symmetric());
  return b.rotation * local + b.center;
}

// Monte-Carlo IoU: samples n points inside each box, estimates the
// intersection volume from the two hit fractions and combines them
// symmetrically. Sampling streams are keyed by (seed, box content), so the
// result is bit-identical under argument swap and under replay.
inline double mc_iou_3d(const OrientedBox3D& a, const OrientedBox3D& b, int n,
                        std::uint64_t seed) {
  if (!aabb_of(a).overlaps(aabb_of(b))) return 0.0;
  rng::Stream sa(rng::derive(seed, box_hash(a)));
  rng::Stream sb(rng::derive(seed, box_hash(b)));
  std::int64_t in_b = 0, in_a = 0;
  for (int i = 0; i < n; ++i) {
    if (contains_point(b, sample_point_in_box(a, sa))) ++in_b;
  }
  for (int i = 0; i < n; ++i) {
    if (contains_point(a, sample_point_in_box(b, sb))) ++in_a;
  }
  double fa = static_cast<double>(in_b) / n;
  double fb = static_cast<double>(in_a) / n;
  double va = a.volume();
  double vb = b.volume();
  double vi = 0.5 * (fa * va + fb * vb);
  return detail::iou_from_areas(vi, va, vb);
}

namespace detail {

using Face = std::vector<Vec3>;  // ring, outward orientation

// Faces of an oriented box, outward CCW. Corner indexing matches
// OrientedBox3D::corners().
inline std::vector<Face> box_faces(const OrientedBox3D& b) {
  auto c = b.corners();
  static constexpr int kIdx[6][4] = {
      {1, 3, 7, 5},  // +x
      {0, 4, 6, 2},  // -x
      {2, 6, 7, 3},  // +y
      {0, 1, 5, 4},  // -y
      {4, 5, 7, 6},  // +z
      {0, 2, 3, 1},  // -z
  };
  std::vector<Face> faces(6);
  for (int f = 0; f < 6; ++f) {
    faces[f] = {c[kIdx[f][0]], c[kIdx[f][1]], c[kIdx[f][2]], c[kIdx[f][3]]};
  }
  return faces;
}

struct HalfSpace {
  Vec3 n;    // unit outward normal; inside is n.dot(x) <= d
  double d;
};

inline std::vector<HalfSpace> box_halfspaces(const OrientedBox3D& b) {
  Mat3 r = b.rotation.toRotationMatrix();
  std::vector<HalfSpace> hs;
  hs.reserve(6);
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 n = r.col(axis);
    double h = 0.5 * b.size[axis];
    hs.push_back({n, n.dot(b.center) + h});
    hs.push_back({-n, -n.dot(b.center) + h});
  }
  return hs;
}

// Clips a convex polytope (as outward faces) against one half-space, adding
// the cap face where the plane cuts. eps absorbs on-plane vertices so
// coincident faces survive untouched.
inline void clip_polytope(std::vector<Face>& faces, const HalfSpace& hs,
                          double eps) {
  std::vector<Face> kept;
  kept.reserve(faces.size() + 1);
  std::vector<Vec3> cut_pts;
  for (const Face& face : faces) {
    Face out;
    out.reserve(face.size() + 2);
    int n = static_cast<int>(face.size());
    for (int i = 0, j = n - 1; i < n; j = i++) {
      const Vec3& p = face[j];
      const Vec3& q = face[i];
      double dp = hs.n.dot(p) - hs.d;
      double dq = hs.n.dot(q) - hs.d;
      bool in_p = dp <= eps;
      bool in_q = dq <= eps;
      if (in_q) {
        if (!in_p) {
          double t = dp / (dp - dq);
          Vec3 x = p + t * (q - p);
          out.push_back(x);
          cut_pts.push_back(x);
        }
        out.push_back(q);
      } else if (in_p) {
        double t = dp / (dp - dq);
        Vec3 x = p + t * (q - p);
        out.push_back(x);
        cut_pts.push_back(x);
      }
    }
    if (out.size() >= 3) kept.push_back(std::move(out));
  }
  if (cut_pts.size() >= 3) {
    // Order the cut ring CCW as seen from outside (+n side).
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : cut_pts) centroid += p;
    centroid /= static_cast<double>(cut_pts.size());
    Vec3 e1 = hs.n.unitOrthogonal();
    Vec3 e2 = hs.n.cross(e1);
    std::vector<std::pair<double, Vec3>> ang;
    ang.reserve(cut_pts.size());
    for (const Vec3& p : cut_pts) {
      Vec3 r = p - centroid;
      ang.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), p);
    }
    std::sort(ang.begin(), ang.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Face cap;
    double merge_tol = eps * 16.0 + 1e-12;
    for (const auto& [angle, p] : ang) {
      if (!cap.empty() && (p - cap.back()).norm() < merge_tol) continue;
      cap.push_back(p);
    }
    if (cap.size() >= 2 && (cap.front() - cap.back()).norm() < merge_tol) {
      cap.pop_back();
    }
    if (cap.size() >= 3) kept.push_back(std::move(cap));
  }
  faces = std::move(kept);
}

inline double polytope_volume(const std::vector<Face>& faces) {
  double v = 0.0;
  for (const Face& f : faces) {
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      v += f[0].dot(f[i].cross(f[i + 1]));
    }
  }
  return std::abs(v) / 6.0;
}

}  // namespace detail

// Exact intersection volume of two oriented boxes: clips a's polytope
// against b's six half-spaces.
inline double exact_intersection_volume(const OrientedBox3D& a,
                                        const OrientedBox3D& b) {
  if (!aabb_of(a).overlaps(aabb_of(b))) return 0.0;
  double scale = std::max({a.size.maxCoeff(), b.size.maxCoeff(),
                           (a.center - b.center).norm(), 1.0});
  double eps = 1e-12 * scale;
  auto faces = detail::box_faces(a);
  for (const auto& hs : detail::box_halfspaces(b)) {
    detail::clip_polytope(faces, hs, eps);
    if (faces.empty()) return 0.0;
  }
  return detail::polytope_volume(faces);
}

inline double exact_iou_3d(const OrientedBox3D& a, const OrientedBox3D& b) {
  double vi = exact_intersection_volume(a, b);
  return detail::iou_from_areas(vi, a.volume(), b.volume());
}

// Axis-aligned IoU of the boxes' AABBs (evaluation mode for axis-aligned
// benchmarks).
inline double aabb_iou_3d(const OrientedBox3D& a, const OrientedBox3D& b) {
  Aabb3 ba = aabb_of(a);
  Aabb3 bb = aabb_of(b);
  Vec3 lo = ba.lo.cwiseMax(bb.lo);
  Vec3 hi = ba.hi.cwiseMin(bb.hi);
  Vec3 d = (hi - lo).cwiseMax(0.0);
  double vi = d.x() * d.y() * d.z();
  return detail::iou_from_areas(vi, ba.volume(), bb.volume());
}

}  // namespace mvbox
