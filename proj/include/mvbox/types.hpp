#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mvbox/rng.hpp"

namespace mvbox {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;  // rotations are kept unit-norm

inline Quat normalized_quat(double w, double x, double y, double z) {
  Quat q(w, x, y, z);
  q.normalize();
  return q;
}

inline Quat yaw_quat(double angle) {
  return Quat(Eigen::AngleAxisd(angle, Vec3::UnitZ()));
}

// Rigid transform p' = R p + t. The convention (world_from_cam vs
// cam_from_world) is stated wherever a Pose is stored or passed.
struct Pose {
  Quat rotation = Quat::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  Pose inverse() const {
    Quat qi = rotation.conjugate();
    return {qi, qi * (-translation)};
  }

  Pose compose(const Pose& rhs) const {  // this after rhs
    return {(rotation * rhs.rotation).normalized(),
            rotation * rhs.translation + translation};
  }

  // Optical axis (+z of the camera frame) expressed in the parent frame.
  Vec3 view_dir() const { return rotation * Vec3::UnitZ(); }

  bool valid() const {
    return translation.allFinite() && rotation.coeffs().allFinite() &&
           std::abs(rotation.norm() - 1.0) < 1e-6;
  }
};

inline double rotation_angle(const Quat& a, const Quat& b) {
  double w = std::min(1.0, std::abs(a.dot(b)));
  return 2.0 * std::acos(w);
}

struct Intrinsics {
  double fx = 0, fy = 0, cx = 0, cy = 0;
  int width = 0, height = 0;

  bool valid() const {
    return fx > 0 && fy > 0 && width > 0 && height > 0 && cx > 0 &&
           cx < width && cy > 0 && cy < height;
  }
};

struct Aabb3 {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  bool overlaps(const Aabb3& o) const {
    return (lo.array() <= o.hi.array()).all() &&
           (o.lo.array() <= hi.array()).all();
  }

  bool contains(const Vec3& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }

  double volume() const {
    Vec3 d = (hi - lo).cwiseMax(0.0);
    return d.x() * d.y() * d.z();
  }
};

// Oriented box: center, full extents (l, w, h), rotation from the box's
// local frame into its parent frame.
struct OrientedBox3D {
  Vec3 center = Vec3::Zero();
  Vec3 size = Vec3::Ones();
  Quat rotation = Quat::Identity();

  double volume() const { return size.x() * size.y() * size.z(); }

  bool valid() const {
    return center.allFinite() && size.allFinite() &&
           (size.array() > 0).all() && std::abs(rotation.norm() - 1.0) < 1e-6;
  }

  // Corner k: local offset sign per bit of k (bit 0 -> x, bit 1 -> y,
  // bit 2 -> z; set bit means +half extent).
  std::array<Vec3, 8> corners() const {
    Mat3 r = rotation.toRotationMatrix();
    Vec3 ux = r.col(0) * (0.5 * size.x());
    Vec3 uy = r.col(1) * (0.5 * size.y());
    Vec3 uz = r.col(2) * (0.5 * size.z());
    std::array<Vec3, 8> out;
    for (int k = 0; k < 8; ++k) {
      out[k] = center + (k & 1 ? ux : Vec3(-ux)) + (k & 2 ? uy : Vec3(-uy)) +
               (k & 4 ? uz : Vec3(-uz));
    }
    return out;
  }
};

// Content hash used to key per-box sampling streams.
inline std::uint64_t box_hash(const OrientedBox3D& b) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (int i = 0; i < 3; ++i) h = rng::hash_double(h, b.center[i]);
  for (int i = 0; i < 3; ++i) h = rng::hash_double(h, b.size[i]);
  h = rng::hash_double(h, b.rotation.w());
  h = rng::hash_double(h, b.rotation.x());
  h = rng::hash_double(h, b.rotation.y());
  h = rng::hash_double(h, b.rotation.z());
  return h;
}

struct Polygon2D {
  std::vector<Vec2> pts;  // CCW for hulls

  bool degenerate() const { return pts.size() < 3; }
};

}  // namespace mvbox
